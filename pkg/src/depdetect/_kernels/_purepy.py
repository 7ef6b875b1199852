"""Pure-Python versions of the prime-field kernels.

Points are ``None`` (the point at infinity) or a tuple ``(x, y)`` of
integers in ``[0, p)``. Curve coefficients are assumed already reduced.
"""


def count_points(a, b, p):
    if p == 2:
        return 3  # every element of F_2 has exactly one square root
    chi = [-1] * p
    chi[0] = 0
    for y in range(1, (p + 1) // 2):
        chi[y * y % p] = 1
    total = p + 1
    for x in range(p):
        total += chi[(x * x * x + a * x + b) % p]
    return total


def point_add(a, p, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % p == 0:
            return None
        lam = (3 * x1 * x1 + a) * pow(2 * y1, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def point_mul(a, p, n, P):
    if n < 0:
        raise ValueError("negative multiplier")
    R = None
    while n and P is not None:
        if n & 1:
            R = point_add(a, p, R, P)
        n >>= 1
        if n:
            P = point_add(a, p, P, P)
    return R


def multiples(a, p, P, k):
    out = []
    R = None
    for _ in range(k):
        out.append(R)
        R = point_add(a, p, R, P)
    return out
