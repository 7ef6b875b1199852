"""Linear algebra in E(F_p) ~ Z/n1 x Z/n2 and over the integers.

Discrete logarithms (Pohlig-Hellman with baby-step/giant-step), the Smith
normal form, and the congruence solver behind local membership tests.
"""

from __future__ import annotations

from math import isqrt
from typing import List, Optional, Sequence, Tuple

from . import _kernels
from .errors import DecompositionFailure, DimensionMismatch
from .ff import crt_pair, factorize
from .reduction import CurveFp, GroupStructureFp, PointFp

Coordinates = Tuple[int, int]
IntegerMatrix = List[List[int]]


def _bsgs(E: CurveFp, g: PointFp, n: int, h: PointFp) -> Optional[int]:
    """k in [0, n) with k*g = h, where g has order n; None if h is not in <g>."""
    m = isqrt(n - 1) + 1 if n > 1 else 1
    table = {}
    for j, P in enumerate(_kernels.multiples(E.a, E.p, g, m)):
        table.setdefault(P, j)
    giant = E.neg(E.mul(m, g))
    cur = h
    for i in range(m + 1):
        j = table.get(cur)
        if j is not None:
            k = (i * m + j) % n
            return k
        cur = E.add(cur, giant)
    return None


def cyclic_log(E: CurveFp, base: PointFp, order: int, target: PointFp) -> Optional[int]:
    """Discrete log of ``target`` to ``base`` (of exact order ``order``), or None."""
    if order == 1:
        return 0 if target is None else None
    x, mod = 0, 1
    for q, e in factorize(order).items():
        qe = q**e
        g = E.mul(order // qe, base)
        h = E.mul(order // qe, target)
        gamma = E.mul(qe // q, g)
        xq = 0
        for i in range(e):
            hk = E.mul(qe // q ** (i + 1), E.sub(h, E.mul(xq, g)))
            d = _bsgs(E, gamma, q, hk)
            if d is None:
                return None
            xq += d * q**i
        x, mod = crt_pair(x, mod, xq, qe)
    if E.mul(x, base) != target:
        return None
    return x


def _log_2d(E: CurveFp, T1, T2, q: int, W):
    """(c, d) in [0, q)^2 with c*T1 + d*T2 = W, for T1, T2 a basis of E[q]."""
    table = {}
    for d, P in enumerate(_kernels.multiples(E.a, E.p, T2, q)):
        table[P] = d
    cur = W
    negT1 = E.neg(T1)
    for c in range(q):
        d = table.get(cur)
        if d is not None:
            return c, d
        cur = E.add(cur, negT1)
    return None


def decompose(S: GroupStructureFp, Q: PointFp) -> Coordinates:
    """Coordinates (a1, a2) with Q = a1*G1 + a2*G2.

    Works one prime power q^e of n2 at a time; at each q-adic level the
    unknown digits are read off in E[q], using a 1-d baby-step/giant-step
    while only G2 contributes and a q x q search once G1 does.
    """
    E = S.curve
    if not E.contains(Q):
        raise DecompositionFailure(f"{Q} is not on the curve mod {E.p}")
    a1, m1, a2, m2 = 0, 1, 0, 1
    for q, e in factorize(S.n2).items() if S.n2 > 1 else ():
        qe = q**e
        f = 0
        while S.n1 % q ** (f + 1) == 0:
            f += 1
        h = S.n2 // qe
        G1, G2, Qq = E.mul(h, S.G1), E.mul(h, S.G2), E.mul(h, Q)
        T2 = E.mul(q ** (e - 1), G2)
        T1 = E.mul(q ** (f - 1), G1) if f else None
        x1 = x2 = 0
        for j in range(e):
            R = E.sub(Qq, E.add(E.mul(x1, G1), E.mul(x2, G2)))
            W = E.mul(q ** (e - 1 - j), R)
            if j >= e - f:
                cd = _log_2d(E, T1, T2, q, W)
                if cd is None:
                    raise DecompositionFailure(f"no digit at level {j} for q = {q}")
                c, d = cd
                x1 += c * q ** (j - (e - f))
            else:
                d = _bsgs(E, T2, q, W)
                if d is None:
                    raise DecompositionFailure(f"no digit at level {j} for q = {q}")
            x2 += d * q**j
        # h*Q = x1*(h*G1) + x2*(h*G2), so x1, x2 are a1, a2 modulo q^f, q^e
        a2, m2 = crt_pair(a2, m2, x2, qe)
        if f:
            a1, m1 = crt_pair(a1, m1, x1, q**f)
    a1 %= S.n1
    a2 %= S.n2
    if E.add(E.mul(a1, S.G1), E.mul(a2, S.G2)) != Q:
        raise DecompositionFailure(f"recombination failed for {Q} mod {E.p}")
    return a1, a2


def recombine(S: GroupStructureFp, c: Coordinates) -> PointFp:
    E = S.curve
    return E.add(E.mul(c[0], S.G1), E.mul(c[1], S.G2))


# --- Smith normal form -------------------------------------------------------

def _identity(n: int) -> IntegerMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: IntegerMatrix, B: IntegerMatrix) -> IntegerMatrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
            for i in range(len(A))]


def snf(M: Sequence[Sequence[int]]) -> Tuple[IntegerMatrix, IntegerMatrix, IntegerMatrix]:
    """Smith normal form: returns (D, U, V) with D = U*M*V.

    D is diagonal with nonnegative entries d_1 | d_2 | ..., U and V are
    unimodular.
    """
    A = [list(map(int, row)) for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if any(len(r) != cols for r in A):
        raise DimensionMismatch("ragged matrix")
    U, V = _identity(rows), _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        A[dst] = [x + k * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for R in A:
            R[dst] += k * R[src]
        for R in V:
            R[dst] += k * R[src]

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return _finish(A, U, V)
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    done = done and A[i][t] == 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    done = done and A[t][j] == 0
            if not done:
                continue
            # enforce divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
    return _finish(A, U, V)


def _finish(A, U, V):
    for t in range(min(len(A), len(A[0]) if A else 0)):
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V


def solve_congruence(M: Sequence[Sequence[int]], v: Sequence[int],
                     moduli: Sequence[int]) -> Optional[List[int]]:
    """Some integer x with M*x = v (mod moduli) row by row, or None.

    A modulus of 0 means the row must hold exactly over Z.
    """
    k = len(M)
    if len(v) != k or len(moduli) != k:
        raise DimensionMismatch("M, v and moduli need the same number of rows")
    n = len(M[0]) if k else 0
    if any(len(r) != n for r in M):
        raise DimensionMismatch("ragged matrix")
    if k == 0:
        return [0] * n
    A = [list(M[i]) + [moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    D, U, V = snf(A)
    w = [sum(U[i][j] * v[j] for j in range(k)) for i in range(k)]
    z = [0] * (n + k)
    for i in range(k):
        d = D[i][i]
        if d == 0:
            if w[i]:
                return None
        elif w[i] % d:
            return None
        else:
            z[i] = w[i] // d
    y = [sum(V[i][j] * z[j] for j in range(n + k)) for i in range(n + k)]
    return y[:n]


def _system(S: GroupStructureFp, gens: Sequence[Coordinates]):
    return [[g[0] for g in gens], [g[1] for g in gens]], [S.n1, S.n2]


def membership(S: GroupStructureFp, gens: Sequence[Coordinates],
               target: Coordinates) -> Optional[List[int]]:
    """Coefficients c (reduced mod the exponent n2) with sum c_i*gens_i = target."""
    if len(target) != 2 or any(len(g) != 2 for g in gens):
        raise DimensionMismatch("coordinates must be pairs")
    if not gens:
        return [] if target[0] % S.n1 == 0 and target[1] % S.n2 == 0 else None
    M, moduli = _system(S, gens)
    x = solve_congruence(M, list(target), moduli)
    if x is None:
        return None
    return [c % S.n2 for c in x]


def lattice_period(M: Sequence[Sequence[int]], moduli: Sequence[int]) -> Optional[int]:
    """m when {x : M*x = 0 (mod moduli)} is exactly m*Z^r, else None."""
    k = len(M)
    r = len(M[0]) if k else 0
    if r == 0:
        return None
    A = [list(M[i]) + [moduli[i] if j == i else 0 for j in range(k)] for i in range(k)]
    D, _, V = snf(A)
    rank = sum(1 for t in range(min(k, r + k)) if D[t][t])
    kernel = [[V[i][j] for j in range(rank, r + k)] for i in range(r)]
    if not kernel[0]:
        return None
    Dk, _, _ = snf(kernel)
    diag = [Dk[t][t] for t in range(min(r, len(kernel[0])))]
    if len(diag) < r or diag[0] == 0 or any(d != diag[0] for d in diag):
        return None
    return diag[0]


def relation_period(S: GroupStructureFp, gens: Sequence[Coordinates]) -> Optional[int]:
    """m when the relations among ``gens`` are exactly m*Z^r, else None.

    In that case any local solution of the membership problem is unique
    modulo m, which is what makes CRT across primes meaningful.
    """
    if not gens:
        return None
    M, moduli = _system(S, gens)
    return lattice_period(M, moduli)


def enumerate_subgroup(S: GroupStructureFp, gens: Sequence[Coordinates]) -> set:
    """All coordinates in the subgroup generated by ``gens`` (brute force)."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                s = ((c[0] + g[0]) % S.n1, (c[1] + g[1]) % S.n2)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return seen


__all__ = [
    "Coordinates", "cyclic_log", "decompose", "enumerate_subgroup", "lattice_period",
    "membership", "recombine", "relation_period", "snf", "solve_congruence",
]
