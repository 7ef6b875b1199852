"""Arithmetic in prime fields F_p."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EvenCharacteristic, ZeroInverse

# Deterministic Miller-Rabin witnesses, correct for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for base in _MR_BASES:
        x = pow(base, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of ``n >= 1`` by trial division."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for q in (2, 3):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    q = 5
    while q * q <= n:
        for d in (q, q + 2):
            while n % d == 0:
                out[d] = out.get(d, 0) + 1
                n //= d
        q += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, value: int) -> FFElement:
        return FFElement(value % self.p, self)


@dataclass(frozen=True)
class FFElement:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            object.__setattr__(self, "value", self.value % self.field.p)

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other) -> int:
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FFElement((self.value + self._coerce(other)) % self.p, self.field)

    __radd__ = __add__

    def __sub__(self, other):
        return FFElement((self.value - self._coerce(other)) % self.p, self.field)

    def __rsub__(self, other):
        return FFElement((self._coerce(other) - self.value) % self.p, self.field)

    def __mul__(self, other):
        return FFElement(self.value * self._coerce(other) % self.p, self.field)

    __rmul__ = __mul__

    def __neg__(self):
        return FFElement(-self.value % self.p, self.field)

    def __truediv__(self, other):
        return self * ff_inv(self.field(self._coerce(other)))

    def __pow__(self, n: int):
        if n < 0:
            return ff_inv(self) ** (-n)
        return FFElement(pow(self.value, n, self.p), self.field)

    def __eq__(self, other):
        if isinstance(other, FFElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def ff_inv(a: FFElement) -> FFElement:
    if a.value == 0:
        raise ZeroInverse(f"0 has no inverse mod {a.p}")
    return FFElement(pow(a.value, -1, a.p), a.field)


def legendre_int(a: int, p: int) -> int:
    if p == 2:
        raise EvenCharacteristic("Legendre symbol needs an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def legendre(a: FFElement) -> int:
    return legendre_int(a.value, a.p)


def sqrt_int(a: int, p: int) -> int | None:
    """A square root of ``a`` mod odd prime ``p``, or None for non-residues.

    Tonelli-Shanks, with the direct exponent for p = 3 (mod 4).
    """
    a %= p
    ls = legendre_int(a, p)
    if ls == 0:
        return 0
    if ls < 0:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_int(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def ff_sqrt(a: FFElement) -> tuple[FFElement, ...]:
    """Both square roots of ``a`` (sorted), ``(0,)`` for zero, ``()`` if none."""
    r = sqrt_int(a.value, a.p)
    if r is None:
        return ()
    if r == 0:
        return (a.field(0),)
    lo, hi = sorted((r, a.p - r))
    return (a.field(lo), a.field(hi))


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine x = r1 (mod m1) and x = r2 (mod m2); moduli need not be coprime."""
    g = math.gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    if m1 == 1 or m2 == 1:
        return (r1 if m2 == 1 else r2) % lcm, lcm
    k = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * k) % lcm, lcm
