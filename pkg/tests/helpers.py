"""Brute-force oracles, deliberately independent of the package's kernels."""

from fractions import Fraction

import numpy as np

from depdetect.curve import CurveQ, is_torsion, small_points
from depdetect.oracle import gram_matrix

TEST_CURVES = [(1, 1), (0, 4), (-2, 2), (3, 5), (-7, 10)]


def naive_add(a, p, P, Q):
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and (y1 + y2) % p == 0:
        return None
    if P == Q:
        num, den = 3 * x1 * x1 + a, 2 * y1
    else:
        num, den = y2 - y1, x2 - x1
    # inverse via Fermat, not the extended Euclid used by the package
    lam = num * pow(den % p, p - 2, p) % p
    x3 = (lam * lam - x1 - x2) % p
    return (x3, (lam * (x1 - x3) - y1) % p)


def brute_points(a, b, p):
    pts = [None]
    for x in range(p):
        for y in range(p):
            if (y * y - x**3 - a * x - b) % p == 0:
                pts.append((x, y))
    return pts


def brute_order(a, p, P):
    n, R = 1, P
    while R is not None:
        R = naive_add(a, p, R, P)
        n += 1
    return n


def brute_span(a, p, gens):
    """The subgroup generated by ``gens`` in E(F_p), by closure."""
    seen = {None}
    frontier = [None]
    while frontier:
        nxt = []
        for R in frontier:
            for g in gens:
                S = naive_add(a, p, R, g)
                if S not in seen:
                    seen.add(S)
                    nxt.append(S)
        frontier = nxt
    return seen


def independent_basis(E: CurveQ, height=12, max_rank=3):
    """Greedy nontorsion points with a well-conditioned height Gram matrix."""
    chosen = []
    for P in small_points(E, height):
        if P[1] <= 0 or is_torsion(E, P) is not None:
            continue
        G = gram_matrix(E, chosen + [P])
        if np.linalg.cond(G) < 1e6:
            chosen.append(P)
        if len(chosen) == max_rank:
            break
    return chosen


def frac_point(x, y):
    return (Fraction(x), Fraction(y))
