"""The group law on E(Q) for short Weierstrass curves y^2 = x^3 + ax + b.

Points are ``None`` for the point at infinity, otherwise a tuple
``(x, y)`` of :class:`fractions.Fraction` (always in lowest terms).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import PointNotOnCurve, SingularCurve

PointQ = Optional[Tuple[Fraction, Fraction]]
INFINITY: PointQ = None

# Orders of rational torsion points (Mazur).
MAZUR_ORDERS = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12)


@dataclass(frozen=True)
class CurveQ:
    a: int
    b: int

    def __post_init__(self):
        if not (isinstance(self.a, int) and isinstance(self.b, int)):
            raise TypeError("curve coefficients must be integers")
        if self.disc == 0:
            raise SingularCurve(f"y^2 = x^3 + {self.a}x + {self.b} is singular")

    @property
    def disc(self) -> int:
        return -16 * (4 * self.a**3 + 27 * self.b**2)

    def contains(self, P: PointQ) -> bool:
        if P is None:
            return True
        x, y = P
        return y * y == x * x * x + self.a * x + self.b

    def __str__(self):
        return f"y^2 = x^3 + ({self.a})x + ({self.b})"


def point(x, y) -> PointQ:
    return (Fraction(x), Fraction(y))


def _check(E: CurveQ, *points: PointQ) -> None:
    for P in points:
        if not E.contains(P):
            raise PointNotOnCurve(f"{P} is not on {E}")


def _add(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 == -y2:
            return None
        lam = (3 * x1 * x1 + E.a) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def ec_neg(P: PointQ) -> PointQ:
    return None if P is None else (P[0], -P[1])


def ec_add(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    _check(E, P, Q)
    return _add(E, P, Q)


def ec_sub(E: CurveQ, P: PointQ, Q: PointQ) -> PointQ:
    return ec_add(E, P, ec_neg(Q))


def _mul(E: CurveQ, n: int, P: PointQ) -> PointQ:
    if n < 0:
        n, P = -n, ec_neg(P)
    R = None
    while n and P is not None:
        if n & 1:
            R = _add(E, R, P)
        n >>= 1
        if n:
            P = _add(E, P, P)
    return R


def ec_mul(E: CurveQ, n: int, P: PointQ) -> PointQ:
    _check(E, P)
    return _mul(E, n, P)


def linear_combination(E: CurveQ, coeffs, points) -> PointQ:
    """sum(n_i * P_i) with exact rational arithmetic."""
    if len(coeffs) != len(points):
        raise ValueError("coefficient and point counts differ")
    _check(E, *points)
    R = None
    for n, P in zip(coeffs, points):
        R = _add(E, R, _mul(E, n, P))
    return R


def is_torsion(E: CurveQ, P: PointQ) -> Optional[int]:
    """Order of ``P`` if it is torsion, else None.

    Over Q the possible orders are 1..10 and 12, so it suffices to walk
    the first twelve multiples.
    """
    _check(E, P)
    R = P
    for n in range(1, 13):
        if R is None:
            return n if n in MAZUR_ORDERS else None
        R = _add(E, R, P)
    return None


def small_points(E: CurveQ, height: int):
    """Affine points with x = u/e^2, |u| <= height, 1 <= e <= height.

    Brute-force search, sorted by (e, |u|, u, y); used to find basis points.
    """
    from math import gcd, isqrt

    found = []
    for e in range(1, height + 1):
        e2 = e * e
        for u in sorted(range(-height, height + 1), key=lambda t: (abs(t), t)):
            if gcd(u, e) != 1:
                continue
            # y = w / e^3 with w^2 = u^3 + a u e^4 + b e^6
            w2 = u**3 + E.a * u * e2 * e2 + E.b * e2**3
            if w2 < 0:
                continue
            w = isqrt(w2)
            if w * w != w2:
                continue
            x = Fraction(u, e2)
            for s in ((w,) if w == 0 else (w, -w)):
                found.append((x, Fraction(s, e2 * e)))
    return found
