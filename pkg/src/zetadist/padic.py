"""Capped-precision p-adic integers.

A :class:`PadicInt` is a residue modulo p^N together with N, the number of
p-adic digits that are guaranteed.  Combining two values keeps the smaller
precision; nothing is ever silently extended.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .exactnum import is_prime

__all__ = [
    "PadicInt",
    "Valuation",
    "AtLeastN",
    "NotPIntegral",
    "NotAUnit",
    "PrimeMismatch",
    "from_rational",
    "teichmuller",
    "valuation",
    "vp",
]


class NotPIntegral(ValueError):
    pass


class NotAUnit(ValueError):
    pass


class PrimeMismatch(ValueError):
    pass


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@total_ordering
@dataclass(frozen=True)
class Valuation:
    """A valuation that is either exact or only known to be >= ``value``."""

    value: int
    exact: bool = True

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, int):
            return self.exact and self.value == other
        if isinstance(other, Valuation):
            return (self.value, self.exact) == (other.value, other.exact)
        return NotImplemented

    def __lt__(self, other):
        o = other.value if isinstance(other, Valuation) else other
        return self.value < o

    def __hash__(self):
        return hash((self.value, self.exact))

    def __repr__(self):
        return str(self.value) if self.exact else f"AtLeastN({self.value})"


def AtLeastN(n: int) -> Valuation:
    return Valuation(n, exact=False)


class PadicInt:
    __slots__ = ("p", "prec", "residue")

    def __init__(self, residue: int, p: int, prec: int):
        if p == 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if prec < 0:
            raise ValueError("precision must be non-negative")
        self.p = p
        self.prec = prec
        self.residue = residue % p**prec

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise PrimeMismatch(f"{self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return PadicInt(other, self.p, self.prec)
        if isinstance(other, Fraction):
            return from_rational(other, self.p, self.prec)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return PadicInt(self.residue + o.residue, self.p, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return PadicInt(-self.residue, self.p, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return PadicInt(self.residue * o.residue, self.p, min(self.prec, o.prec))

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.prec > 0 and self.residue % self.p != 0

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise NotAUnit(f"{self} is not a unit")
        return PadicInt(pow(self.residue, -1, self.modulus), self.p, self.prec)

    def __truediv__(self, other):
        o = self._coerce(other)
        # division by a unit keeps precision
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PadicInt(pow(self.residue, n, self.modulus), self.p, self.prec)

    def with_prec(self, prec: int) -> "PadicInt":
        if prec > self.prec:
            raise ValueError("cannot raise precision")
        return PadicInt(self.residue, self.p, prec)

    def valuation(self) -> Valuation:
        return valuation(self)

    def signed(self) -> int:
        """Representative in (-p^N/2, p^N/2]."""
        m = self.modulus
        r = self.residue
        return r - m if r > m // 2 else r

    def congruent(self, other, prec: int | None = None) -> bool:
        o = self._coerce(other)
        n = min(self.prec, o.prec) if prec is None else prec
        return (self.residue - o.residue) % self.p**n == 0

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._coerce(other)
        if not isinstance(other, PadicInt):
            return NotImplemented
        return (self.p, self.prec, self.residue) == (other.p, other.prec, other.residue)

    def __hash__(self):
        return hash((self.p, self.prec, self.residue))

    def __repr__(self):
        return f"PadicInt({self.residue}, p={self.p}, N={self.prec})"

    def __str__(self):
        return f"{self.residue} + O({self.p}^{self.prec})"


def from_rational(q, p: int, N: int) -> PadicInt:
    """Residue of a p-integral rational modulo p^N."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise NotPIntegral(f"{q} is not {p}-integral")
    m = p**N
    return PadicInt(q.numerator * pow(q.denominator, -1, m), p, N)


def teichmuller(a: int, p: int, N: int) -> PadicInt:
    """The (p-1)-st root of unity congruent to a mod p, to N digits."""
    if a % p == 0:
        raise NotAUnit(f"{a} is divisible by {p}")
    m = p**N
    x = a % m
    # x -> x^p converges: each step gains at least one digit
    for _ in range(N):
        y = pow(x, p, m)
        if y == x:
            break
        x = y
    return PadicInt(x, p, N)


def valuation(x: PadicInt) -> Valuation:
    if x.residue == 0:
        return AtLeastN(x.prec)
    return Valuation(vp(x.residue, x.p))
