# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled prime-field kernels.

Same contract as ``_purepy``; all arithmetic is done in 64-bit integers,
so the modulus must stay below 2**31.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 MAX_P = 2147483648


cdef inline i64 _mod(i64 x, i64 p) nogil:
    x %= p
    if x < 0:
        x += p
    return x


cdef inline i64 _inv(i64 a, i64 p) nogil:
    cdef i64 t = 0, nt = 1, r = p, nr = _mod(a, p), q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


cdef struct Pt:
    i64 x
    i64 y
    bint inf


cdef inline Pt _add(i64 a, i64 p, Pt P, Pt Q) nogil:
    cdef Pt R
    cdef i64 lam
    if P.inf:
        return Q
    if Q.inf:
        return P
    if P.x == Q.x:
        if (P.y + Q.y) % p == 0:
            R.inf = 1
            R.x = 0
            R.y = 0
            return R
        lam = (3 * P.x % p * P.x + a) % p * _inv(2 * P.y, p) % p
    else:
        lam = _mod(Q.y - P.y, p) * _inv(_mod(Q.x - P.x, p), p) % p
    R.inf = 0
    R.x = _mod(lam * lam - P.x - Q.x, p)
    R.y = _mod(lam * _mod(P.x - R.x, p) % p - P.y, p)
    return R


cdef inline Pt _mul(i64 a, i64 p, i64 n, Pt P) nogil:
    cdef Pt R
    R.inf = 1
    R.x = 0
    R.y = 0
    while n > 0 and not P.inf:
        if n & 1:
            R = _add(a, p, R, P)
        n >>= 1
        if n > 0:
            P = _add(a, p, P, P)
    return R


cdef inline Pt _from_py(object P):
    cdef Pt R
    if P is None:
        R.inf = 1
        R.x = 0
        R.y = 0
    else:
        R.inf = 0
        R.x = P[0]
        R.y = P[1]
    return R


cdef inline object _to_py(Pt P):
    if P.inf:
        return None
    return (P.x, P.y)


def count_points(i64 a, i64 b, i64 p):
    if p == 2:
        return 3
    if p >= MAX_P:
        raise OverflowError("modulus too large for the compiled kernel")
    cdef signed char* chi = <signed char*> malloc(p * sizeof(signed char))
    if chi == NULL:
        raise MemoryError()
    cdef i64 x, y, total
    with nogil:
        for x in range(p):
            chi[x] = -1
        chi[0] = 0
        for y in range(1, (p + 1) // 2):
            chi[y * y % p] = 1
        total = p + 1
        for x in range(p):
            total += chi[(x * x % p * x + a * x + b) % p]
    free(chi)
    return total


def point_add(i64 a, i64 p, P, Q):
    return _to_py(_add(a, p, _from_py(P), _from_py(Q)))


def point_mul(i64 a, i64 p, i64 n, P):
    if n < 0:
        raise ValueError("negative multiplier")
    return _to_py(_mul(a, p, n, _from_py(P)))


def multiples(i64 a, i64 p, P, Py_ssize_t k):
    cdef Pt base = _from_py(P)
    cdef Pt R
    cdef Py_ssize_t i
    R.inf = 1
    R.x = 0
    R.y = 0
    out = []
    for i in range(k):
        out.append(_to_py(R))
        R = _add(a, p, R, base)
    return out
