"""Data types shared by the detector, the oracle and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

from .curve import CurveQ, PointQ, is_torsion
from .errors import InvalidInstance


@dataclass(frozen=True)
class Instance:
    """Is ``candidate`` in the Z-span of ``basis`` inside E(Q)?"""

    E: CurveQ
    basis: Tuple[PointQ, ...]
    candidate: PointQ

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))

    def validate(self) -> "Instance":
        for i, P in enumerate(self.basis):
            if not self.E.contains(P):
                raise InvalidInstance(f"basis point {i} is not on curve")
            if is_torsion(self.E, P) is not None:
                raise InvalidInstance(f"basis point {i} is torsion")
        if not self.E.contains(self.candidate):
            raise InvalidInstance("candidate is not on curve")
        if self.candidate is not None and is_torsion(self.E, self.candidate) is not None:
            raise InvalidInstance("candidate is a nonzero torsion point")
        return self


@dataclass(frozen=True)
class MultInstance:
    """Is ``beta`` in the subgroup of Q^x generated by ``gammas``?"""

    gammas: Tuple[Fraction, ...]
    beta: Fraction

    def __post_init__(self):
        gammas = tuple(Fraction(g) for g in self.gammas)
        beta = Fraction(self.beta)
        if beta == 0 or any(g == 0 for g in gammas):
            raise InvalidInstance("multiplicative instances need nonzero rationals")
        object.__setattr__(self, "gammas", gammas)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class LocalResult:
    """Outcome of the membership test at one good prime.

    ``coefficients`` is None for a failure. ``moduli`` is (n1, n2) of the
    local group; ``period`` is m when the local solution set is exactly
    coefficients + m*Z^r (so CRT across primes is meaningful), else None.
    """

    p: int
    coefficients: Optional[Tuple[int, ...]]
    moduli: Tuple[int, ...] = ()
    period: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.coefficients is not None


DEPENDENT = "dependent"
INDEPENDENT = "independent"
INCONCLUSIVE = "inconclusive"


@dataclass
class Verdict:
    kind: str
    coefficients: Optional[Tuple[int, ...]] = None
    witness: Optional[int] = None
    bound: Optional[int] = None
    primes_tested: int = 0
    primes_skipped: int = 0
    warnings: list = field(default_factory=list)
    details: list = field(default_factory=list)
    method: Optional[str] = None

    @property
    def exit_code(self) -> int:
        return {DEPENDENT: 0, INDEPENDENT: 1, INCONCLUSIVE: 2}[self.kind]
