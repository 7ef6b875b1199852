"""Per-curve cache of E(F_p) group structures.

Text format, one record per line after the header
``p,N,n1,n2,g1x,g1y,g2x,g2y``; a generator at infinity is written -1,-1.
"""

from __future__ import annotations

import logging
import os
import threading
from dataclasses import astuple, dataclass
from typing import Dict, Iterable, List, Optional, Tuple

from .curve import CurveQ
from .ff import is_prime
from .reduction import CurveFp, GroupStructureFp, group_structure, reduce_curve, validate_structure

log = logging.getLogger(__name__)

HEADER = "p,N,n1,n2,g1x,g1y,g2x,g2y"


@dataclass(frozen=True)
class CacheRecord:
    p: int
    N: int
    n1: int
    n2: int
    g1x: int
    g1y: int
    g2x: int
    g2y: int

    @classmethod
    def from_structure(cls, S: GroupStructureFp) -> "CacheRecord":
        g1 = S.G1 if S.G1 is not None else (-1, -1)
        g2 = S.G2 if S.G2 is not None else (-1, -1)
        return cls(S.curve.p, S.N, S.n1, S.n2, g1[0], g1[1], g2[0], g2[1])

    def to_structure(self, curve: CurveFp) -> GroupStructureFp:
        def pt(x, y):
            return None if (x, y) == (-1, -1) else (x, y)

        return GroupStructureFp(self.N, self.n1, self.n2, pt(self.g1x, self.g1y),
                                pt(self.g2x, self.g2y), curve)

    def line(self) -> str:
        return ",".join(str(v) for v in astuple(self))


def _check_record(rec: CacheRecord) -> None:
    if not is_prime(rec.p):
        raise ValueError(f"{rec.p} is not prime")
    if rec.n1 < 1 or rec.n2 < 1 or rec.n1 * rec.n2 != rec.N:
        raise ValueError("n1 * n2 != N")
    if rec.n2 % rec.n1:
        raise ValueError("n1 does not divide n2")
    if (rec.p - 1) % rec.n1:
        raise ValueError("n1 does not divide p - 1")
    for x, y in ((rec.g1x, rec.g1y), (rec.g2x, rec.g2y)):
        if (x, y) != (-1, -1) and not (0 <= x < rec.p and 0 <= y < rec.p):
            raise ValueError("generator coordinate out of range")


def parse_line(line: str) -> CacheRecord:
    parts = line.strip().split(",")
    if len(parts) != 8:
        raise ValueError(f"expected 8 fields, got {len(parts)}")
    rec = CacheRecord(*(int(x) for x in parts))
    _check_record(rec)
    return rec


def read_cache(path, curve: Optional[CurveQ] = None) -> Tuple[List[CacheRecord], List[str]]:
    """Load records, discarding corrupt lines with a warning.

    With ``curve`` given, each record must also rebuild into a certified
    group structure of that curve's reduction.
    """
    records: List[CacheRecord] = []
    warnings: List[str] = []
    if not os.path.exists(path):
        return records, warnings
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip() or (lineno == 1 and line.strip() == HEADER):
                continue
            try:
                rec = parse_line(line)
                if curve is not None:
                    validate_structure(rec.to_structure(reduce_curve(curve, rec.p)))
            except (ValueError, ArithmeticError) as exc:
                msg = f"{path}:{lineno}: discarded cache line ({exc})"
                log.warning(msg)
                warnings.append(msg)
                continue
            records.append(rec)
    return records, warnings


def write_cache(path, records: Iterable[CacheRecord], append: bool = False) -> None:
    """Write records; with ``append`` the existing file is extended, never rewritten."""
    fresh = not append or not os.path.exists(path) or os.path.getsize(path) == 0
    with open(path, "a" if append else "w", encoding="ascii") as fh:
        if fresh:
            fh.write(HEADER + "\n")
        for rec in records:
            fh.write(rec.line() + "\n")


class StructureCache:
    """Structure source for the detector, backed by previously saved records.

    Lookups may come from several threads; new structures are collected and
    written back by a single caller via :meth:`flush`.
    """

    def __init__(self, curve: CurveQ, path=None):
        self.curve = curve
        self.path = path
        self.warnings: List[str] = []
        self._known: Dict[int, GroupStructureFp] = {}
        self._new: Dict[int, GroupStructureFp] = {}
        self._lock = threading.Lock()
        if path is not None:
            records, self.warnings = read_cache(path, curve)
            for rec in records:
                self._known[rec.p] = rec.to_structure(reduce_curve(curve, rec.p))

    def __call__(self, Ep: CurveFp) -> GroupStructureFp:
        with self._lock:
            S = self._known.get(Ep.p)
        if S is not None:
            return S
        S = group_structure(Ep)
        with self._lock:
            if Ep.p not in self._known:
                self._known[Ep.p] = S
                self._new[Ep.p] = S
        return S

    def __contains__(self, p: int) -> bool:
        return p in self._known

    def __len__(self) -> int:
        return len(self._known)

    def flush(self) -> int:
        """Append new records in ascending prime order; returns how many were written."""
        with self._lock:
            new = [self._new[p] for p in sorted(self._new)]
            self._new.clear()
        if self.path is not None and new:
            write_cache(self.path, (CacheRecord.from_structure(S) for S in new), append=True)
        return len(new)
