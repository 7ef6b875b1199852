"""Search for primes at which reduced points have prescribed l-power orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .curve import CurveQ, PointQ, is_torsion
from .errors import InvalidInstance
from .ff import is_prime
from .reduction import (CurveFp, PointFp, count_points, good_primes, point_order,
                        reduce_curve, reduce_point)


@dataclass(frozen=True)
class OrderSpec:
    l: int
    targets: Tuple[int, ...]
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(m) for m in self.targets))
        if not is_prime(self.l):
            raise InvalidInstance(f"l = {self.l} is not prime")
        if any(m < 0 for m in self.targets):
            raise InvalidInstance("target exponents must be nonnegative")
        if self.bound < 3:
            raise InvalidInstance("bound must be at least 3")


@dataclass(frozen=True)
class DensityReport:
    matching_primes: Tuple[int, ...]
    good_primes_tested: int

    @property
    def frequency(self) -> Fraction:
        if not self.good_primes_tested:
            return Fraction(0)
        return Fraction(len(self.matching_primes), self.good_primes_tested)


def valuation(n: int, l: int) -> int:
    e = 0
    while n % l == 0:
        n //= l
        e += 1
    return e


def l_part_order(E: CurveFp, Q: PointFp, l: int) -> int:
    """Exponent of l in the order of ``Q``."""
    return valuation(point_order(E, Q, count_points(E)), l)


def find_prescribed_orders(E: CurveQ, points: Sequence[PointQ], spec: OrderSpec) -> DensityReport:
    if len(points) != len(spec.targets):
        raise InvalidInstance("need exactly one target exponent per point")
    for P in points:
        if not E.contains(P):
            raise InvalidInstance(f"{P} is not on {E}")
        if is_torsion(E, P) is not None:
            raise InvalidInstance(f"{P} is torsion")
    good, _ = good_primes(E, spec.bound)
    matches: List[int] = []
    for p in good:
        Ep = reduce_curve(E, p)
        if all(l_part_order(Ep, reduce_point(E, P, p), spec.l) == m
               for P, m in zip(points, spec.targets)):
            matches.append(p)
    return DensityReport(tuple(matches), len(good))
