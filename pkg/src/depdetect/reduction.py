"""Reduction of E(Q) modulo good primes and the structure of E(F_p).

A point of E(F_p) is ``None`` (infinity) or a tuple of ints in [0, p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

from . import _kernels
from .curve import CurveQ, PointQ
from .errors import BadReduction, PointNotOnCurve
from .ff import factorize, is_prime, sqrt_int

PointFp = Optional[Tuple[int, int]]


@dataclass(frozen=True)
class CurveFp:
    a: int
    b: int
    p: int

    def contains(self, P: PointFp) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - (x * x * x + self.a * x + self.b)) % self.p == 0

    def add(self, P: PointFp, Q: PointFp) -> PointFp:
        return _kernels.point_add(self.a, self.p, P, Q)

    def neg(self, P: PointFp) -> PointFp:
        return None if P is None else (P[0], -P[1] % self.p)

    def sub(self, P: PointFp, Q: PointFp) -> PointFp:
        return self.add(P, self.neg(Q))

    def mul(self, n: int, P: PointFp) -> PointFp:
        if n < 0:
            n, P = -n, self.neg(P)
        return _kernels.point_mul(self.a, self.p, n, P)

    def combine(self, coeffs, points) -> PointFp:
        R = None
        for n, P in zip(coeffs, points):
            R = self.add(R, self.mul(n, P))
        return R

    def points(self):
        """Every point of E(F_p); O(p) work, meant for small p and tests."""
        p = self.p
        out = [None]
        for x in range(p):
            y = sqrt_int(x * x * x + self.a * x + self.b, p)
            if y is None:
                continue
            out.append((x, y))
            if y:
                out.append((x, p - y))
        return out


@dataclass(frozen=True)
class GroupStructureFp:
    """E(F_p) = <G1> x <G2> with |G1| = n1 dividing |G2| = n2."""

    N: int
    n1: int
    n2: int
    G1: PointFp
    G2: PointFp
    curve: CurveFp

    @property
    def exponent(self) -> int:
        return self.n2


def is_good_prime(E: CurveQ, p: int) -> bool:
    return p > 2 and (2 * E.disc) % p != 0


def reduce_curve(E: CurveQ, p: int) -> CurveFp:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2 or (2 * E.disc) % p == 0:
        raise BadReduction(f"p = {p} divides 2 * disc = {2 * E.disc}")
    return CurveFp(E.a % p, E.b % p, p)


def reduce_point(E: CurveQ, P: PointQ, p: int) -> PointFp:
    """Image of ``P`` in E(F_p).

    With x = u/e^2 and y = w/e^3 in lowest terms, a prime dividing e sends
    ``P`` to infinity; otherwise the coordinates reduce directly.
    """
    Ep = reduce_curve(E, p)
    if P is None:
        return None
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    x, y = P
    if x.denominator % p == 0:
        return None
    R = (x.numerator * pow(x.denominator, -1, p) % p,
         y.numerator * pow(y.denominator, -1, p) % p)
    assert Ep.contains(R)
    return R


@lru_cache(maxsize=1 << 16)
def _count(a: int, b: int, p: int) -> int:
    return _kernels.count_points(a, b, p)


def count_points(E: CurveFp) -> int:
    return _count(E.a, E.b, E.p)


def point_order(E: CurveFp, P: PointFp, N: int, factors=None) -> int:
    """Exact order of ``P``, given a multiple ``N`` of it."""
    if factors is None:
        factors = factorize(N)
    order = N
    for q, e in factors.items():
        for _ in range(e):
            if E.mul(order // q, P) is None:
                order //= q
            else:
                break
    return order


def random_point(E: CurveFp, rng: random.Random) -> PointFp:
    p = E.p
    while True:
        x = rng.randrange(p)
        y = sqrt_int(x * x * x + E.a * x + E.b, p)
        if y is None:
            continue
        if y and rng.random() < 0.5:
            y = p - y
        return (x, y)


def _lcm_point(E, A, a, B, b):
    """A point of order lcm(a, b) built from ``A`` of order ``a`` and ``B`` of order ``b``."""
    fa, fb = factorize(a) if a > 1 else {}, factorize(b) if b > 1 else {}
    a_part = b_part = 1
    for q in set(fa) | set(fb):
        if fa.get(q, 0) >= fb.get(q, 0):
            a_part *= q ** fa[q]
        else:
            b_part *= q ** fb[q]
    C = E.add(E.mul(a // a_part, A), E.mul(b // b_part, B))
    return C, a_part * b_part


def _independent(E: CurveFp, G1, n1, G2, n2) -> bool:
    """True when <G1> and <G2> meet only in the identity.

    The intersection is cyclic, so it is trivial iff it contains no point
    of prime order q; for each q | n1 the order-q subgroup of <G2> is
    enumerated directly.
    """
    if n1 == 1:
        return True
    for q in factorize(n1):
        if n2 % q:
            continue
        T1 = E.mul(n1 // q, G1)
        if T1 in _kernels.multiples(E.a, E.p, E.mul(n2 // q, G2), q):
            return False
    return True


def _structure_search(E: CurveFp, N: int, rng: random.Random):
    p = E.p
    fN = factorize(N)
    G2, n2 = None, 1
    R = None
    while True:
        if R is None:
            R = random_point(E, rng)
        G2, n2 = _lcm_point(E, G2, n2, R, point_order(E, R, N, fN))
        R = None
        if n2 == N:
            return 1, n2, None, G2
        n1 = N // n2
        if n2 % n1 or (p - 1) % n1:
            continue
        # n2 is plausibly the exponent: look for a complement of order n1
        kind, R = _find_complement(E, G2, n1, n2, rng)
        if kind == "ok":
            return n1, n2, R, G2
        if kind == "none":
            R = None


def _find_complement(E: CurveFp, G2, n1, n2, rng, tries=200):
    """Point of order n1 independent of G2, assuming n2 is the exponent.

    Returns ``("ok", T)``, ``("grow", R)`` when ``R`` disproves that
    assumption, or ``("none", None)`` after ``tries`` failed samples.
    """
    from .abgroup import cyclic_log

    H = E.mul(n1, G2)
    for _ in range(tries):
        R = random_point(E, rng)
        if E.mul(n2, R) is not None:
            return "grow", R
        # n1 * E(F_p) = <n1 * G2> when n2 is the exponent
        k = cyclic_log(E, H, n2 // n1, E.mul(n1, R))
        if k is None:
            return "grow", R
        T = E.sub(R, E.mul(k, G2))
        if point_order(E, T, n1) == n1 and _independent(E, T, n1, G2, n2):
            return "ok", T
    return "none", None


def group_structure(E: CurveFp) -> GroupStructureFp:
    """Invariant-factor decomposition of E(F_p), seeded by p for reproducibility."""
    return _structure_cached(E.a, E.b, E.p)


@lru_cache(maxsize=1 << 14)
def _structure_cached(a: int, b: int, p: int) -> GroupStructureFp:
    E = CurveFp(a, b, p)
    N = count_points(E)
    rng = random.Random(p)
    n1, n2, G1, G2 = _structure_search(E, N, rng)
    S = GroupStructureFp(N, n1, n2, G1, G2, E)
    validate_structure(S)
    return S


def validate_structure(S: GroupStructureFp) -> None:
    """Raise ValueError unless ``S`` is a certified decomposition of E(F_p)."""
    E, p = S.curve, S.curve.p
    if S.n1 * S.n2 != S.N or S.n2 % S.n1 or (p - 1) % S.n1:
        raise ValueError("invariant factors inconsistent")
    if (S.N - p - 1) ** 2 > 4 * p:
        raise ValueError("order violates the Hasse bound")
    if S.N != count_points(E):
        raise ValueError("group order is not #E(F_p)")
    if not (E.contains(S.G1) and E.contains(S.G2)):
        raise ValueError("generator not on curve")
    if S.n1 == 1 and S.G1 is not None:
        raise ValueError("trivial factor needs G1 = infinity")
    for G, n in ((S.G1, S.n1), (S.G2, S.n2)):
        if point_order(E, G, n) != n or E.mul(n, G) is not None:
            raise ValueError("generator order mismatch")
    if not _independent(E, S.G1, S.n1, S.G2, S.n2):
        raise ValueError("generators are dependent")


def good_primes(E: CurveQ, bound: int):
    from .primes import primes_up_to

    good, bad = [], []
    for p in primes_up_to(bound):
        (good if is_good_prime(E, p) else bad).append(p)
    return good, bad


__all__ = [
    "CurveFp", "GroupStructureFp", "PointFp", "count_points", "group_structure",
    "is_good_prime", "is_prime", "point_order", "reduce_curve", "reduce_point",
    "validate_structure",
]
