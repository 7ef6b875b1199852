"""Canonical heights and exact global coefficient recovery.

Heights are floats and only ever *propose* coefficients; every answer is
confirmed with exact rational arithmetic before it is returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

import numpy as np

from .curve import CurveQ, PointQ, _add, _check, ec_neg, is_torsion, linear_combination
from .errors import ConvergenceFailure, SingularGram
from .model import Instance

DEFAULT_TOL = 1e-8
DEFAULT_BOX = 12
ROUNDING_SLACK = 0.26
MAX_CONDITION = 1e8
MAX_DOUBLINGS = 64


@dataclass(frozen=True)
class HeightValue:
    value: float
    tolerance: float

    def __float__(self):
        return self.value


def _duplication(a: int, b: int, X, Z):
    """Homogeneous x-doubling: x(2P) = phi/psi at x(P) = X/Z."""
    X2, Z2 = X * X, Z * Z
    phi = X2 * X2 - 2 * a * X2 * Z2 - 8 * b * X * Z2 * Z + a * a * Z2 * Z2
    psi = 4 * Z * (X2 * X + a * X * Z2 + b * Z2 * Z)
    return phi, psi


def canonical_height(E: CurveQ, P: PointQ, tol: float = DEFAULT_TOL) -> HeightValue:
    """Canonical height, normalized as lim h(x(2^n P)) / (2 * 4^n).

    With x(2^n P) = X_n/Z_n in lowest terms, the naive height obeys
    h_{n+1} = 4 h_n + eps_n - log g_n, where eps_n is the size change of
    the duplication forms at the real point (computed in floats on a
    normalized pair) and g_n = gcd(phi, psi) divides the resultant
    256 * (4a^3 + 27b^2)^2. The gcd is therefore determined by X_n, Z_n
    modulo a power of the resultant, which keeps every integer small
    while giving the same limit as doubling with exact rationals.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    _check(E, P)
    if P is None or is_torsion(E, P) is not None:
        return HeightValue(0.0, tol)
    a, b = E.a, E.b
    x = P[0]
    X, Z = x.numerator, x.denominator
    big = max(abs(X), Z)
    h = math.log(big)
    u, w = X / big, Z / big  # int/int true division stays accurate for huge ints

    res = 256 * (4 * a**3 + 27 * b**2) ** 2
    M = res ** (MAX_DOUBLINGS + 2)
    Xm, Zm = X % M, Z % M
    # |eps_n - log g_n| <= C for all n
    coeff = 1 + 2 * abs(a) + 8 * abs(b) + a * a + 4 * (1 + abs(a) + abs(b))
    C = math.log(coeff) + 2 * math.log(res) + 1.0

    total = 0.0
    for n in range(MAX_DOUBLINGS):
        phi, psi = _duplication(a, b, u, w)
        size = max(abs(phi), abs(psi))
        eps = math.log(size)
        u, w = phi / size, psi / size

        phi_m, psi_m = _duplication(a, b, Xm, Zm)
        g = gcd(gcd(phi_m % M, psi_m % M), M)
        Xm, Zm = (phi_m % M) // g, (psi_m % M) // g
        M //= g

        total += (eps - math.log(g)) / 4 ** (n + 1)
        if C / 4 ** (n + 1) < tol:
            return HeightValue((h + total) / 2, tol)
    raise ConvergenceFailure(f"no convergence after {MAX_DOUBLINGS} doublings")


def naive_height_estimate(E: CurveQ, P: PointQ, n: int) -> float:
    """h(x(2^n P)) / (2 * 4^n) by exact rational doubling; exponential cost in n."""
    R = P
    for _ in range(n):
        R = _add(E, R, R)
        if R is None:
            return 0.0
    x = R[0]
    return math.log(max(abs(x.numerator), x.denominator)) / (2 * 4**n)


def height_pairing(E: CurveQ, P: PointQ, Q: PointQ, tol: float = DEFAULT_TOL) -> float:
    _check(E, P, Q)
    if P is None or Q is None:
        return 0.0
    hp = canonical_height(E, P, tol).value
    if P == Q:
        return hp
    if Q == ec_neg(P):
        return -hp
    hq = canonical_height(E, Q, tol).value
    return (canonical_height(E, _add(E, P, Q), tol).value - hp - hq) / 2


def gram_matrix(E: CurveQ, points: Sequence[PointQ], tol: float = DEFAULT_TOL) -> np.ndarray:
    r = len(points)
    G = np.zeros((r, r))
    for i in range(r):
        for j in range(i, r):
            G[i, j] = G[j, i] = height_pairing(E, points[i], points[j], tol)
    return G


def check_gram(G: np.ndarray) -> float:
    """Condition number of the Gram matrix; raises SingularGram past 1e8."""
    if G.size == 0:
        return 1.0
    cond = float(np.linalg.cond(G))
    if not math.isfinite(cond) or cond > MAX_CONDITION:
        raise SingularGram(f"height Gram matrix is numerically singular (cond {cond:.3g})", cond)
    return cond


def verify(inst: Instance, coeffs: Sequence[int]) -> bool:
    return linear_combination(inst.E, list(coeffs), list(inst.basis)) == inst.candidate


def box_search(inst: Instance, box: int = DEFAULT_BOX) -> Optional[List[int]]:
    """Exhaustive search over |n_i| <= box, filtered through a few reductions.

    Candidates are screened in local coordinates (cheap integer checks);
    only survivors are verified over Q.
    """
    from .abgroup import decompose
    from .reduction import group_structure, is_good_prime, reduce_curve, reduce_point

    E, basis = inst.E, list(inst.basis)
    if not basis:
        return [] if inst.candidate is None else None
    screens = []
    p = 3
    while len(screens) < 3 and p < 10**4:
        if is_good_prime(E, p):
            S = group_structure(reduce_curve(E, p))
            gens = [decompose(S, reduce_point(E, P, p)) for P in basis]
            target = decompose(S, reduce_point(E, inst.candidate, p))
            screens.append((S.n1, S.n2, gens, target))
        p += 2
    rng = range(-box, box + 1)
    for coeffs in sorted(itertools.product(rng, repeat=len(basis)),
                         key=lambda c: (sum(map(abs, c)), c)):
        ok = True
        for n1, n2, gens, (t1, t2) in screens:
            s1 = sum(c * g[0] for c, g in zip(coeffs, gens)) - t1
            s2 = sum(c * g[1] for c, g in zip(coeffs, gens)) - t2
            if s1 % n1 or s2 % n2:
                ok = False
                break
        if ok and verify(inst, coeffs):
            return list(coeffs)
    return None


def recover_coefficients(inst: Instance, tol: float = DEFAULT_TOL,
                         box: int = DEFAULT_BOX) -> Optional[List[int]]:
    """Integers n with candidate = sum n_i P_i, verified exactly, or None.

    Solves Gram * n = (<candidate, P_i>)_i, rounds, verifies; falls back
    to :func:`box_search`. Raises SingularGram when the basis looks
    dependent.
    """
    E, basis = inst.E, list(inst.basis)
    if not basis:
        return [] if inst.candidate is None else None
    if inst.candidate is None:
        return [0] * len(basis)
    G = gram_matrix(E, basis, tol)
    check_gram(G)
    rhs = np.array([height_pairing(E, inst.candidate, P, tol) for P in basis])
    sol = np.linalg.solve(G, rhs)
    rounded = [int(round(float(s))) for s in sol]
    if all(abs(s - r) <= ROUNDING_SLACK for s, r in zip(sol, rounded)) and verify(inst, rounded):
        return rounded
    return box_search(inst, box)
