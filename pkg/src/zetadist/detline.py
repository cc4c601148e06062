"""Determinant lines over commutative local rings.

Over a local ring every invertible module is free of rank one, so a graded
line is just (rank, content) with the content a fractional ideal given by a
generator up to units.  Two bases are supported: Z_p to N digits and one
branch of the Iwasawa algebra truncated at (p^N, T^(M+1)).
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .iwasawa import Branch, CharIdealClass, IwasawaSeries, weierstrass
from .padic import PadicInt, vp

__all__ = [
    "ZpBase",
    "LambdaBase",
    "FractionalIdeal",
    "GradedLine",
    "Generator",
    "BaseMismatch",
    "LineMismatch",
    "tensor",
    "unit_line",
    "det_finite_module",
    "generator_ratio",
]


class BaseMismatch(ValueError):
    pass


class LineMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ZpBase:
    p: int
    N: int

    def one(self) -> PadicInt:
        return PadicInt(1, self.p, self.N)

    def is_unit(self, u) -> bool:
        return u.is_unit()

    def inverse(self, u):
        return u.inverse()


@dataclass(frozen=True)
class LambdaBase:
    p: int
    i: int
    N: int
    M: int

    @property
    def branch(self) -> Branch:
        return Branch(self.p, self.i)

    def one(self) -> IwasawaSeries:
        return IwasawaSeries.constant(self.branch, 1, self.N, self.M)

    def is_unit(self, u) -> bool:
        return u.coeffs[0] % self.p != 0

    def inverse(self, u):
        return u.inverse()


@dataclass(frozen=True)
class FractionalIdeal:
    """The ideal num/den, both given by a generator."""

    base: ZpBase | LambdaBase
    num: object
    den: object

    def __mul__(self, other: "FractionalIdeal") -> "FractionalIdeal":
        if self.base != other.base:
            raise BaseMismatch(f"{self.base} vs {other.base}")
        return FractionalIdeal(self.base, self.num * other.num, self.den * other.den)

    def inverse(self) -> "FractionalIdeal":
        return FractionalIdeal(self.base, self.den, self.num)

    def valuation(self) -> int:
        """Exponent v with ideal (p^v); Z_p bases only."""
        if not isinstance(self.base, ZpBase):
            raise TypeError("valuation is defined over Z_p only")
        return _val(self.num, self.base.p) - _val(self.den, self.base.p)

    def _cross(self, other):
        return self.num * other.den, other.num * self.den

    def __eq__(self, other):
        if not isinstance(other, FractionalIdeal):
            return NotImplemented
        if self.base != other.base:
            return False
        if isinstance(self.base, ZpBase):
            return self.valuation() == other.valuation()
        a, b = self._cross(other)
        return CharIdealClass.from_weierstrass(weierstrass(a)) == CharIdealClass.from_weierstrass(weierstrass(b))

    __hash__ = None

    def is_trivial(self) -> bool:
        one = _ideal_one(self.base)
        return self == FractionalIdeal(self.base, one, one)


def _ideal_one(base):
    # over Z_p contents are kept as exact integers so no digits are lost
    return 1 if isinstance(base, ZpBase) else base.one()


def _val(x, p: int) -> int:
    if isinstance(x, int):
        if x == 0:
            raise ArithmeticError("zero generator")
        return vp(x, p)
    v = x.valuation()
    if not v.exact:
        raise ArithmeticError("a generator is indistinguishable from 0")
    return v.value


@dataclass(frozen=True)
class GradedLine:
    rank: int
    content: FractionalIdeal

    @property
    def base(self):
        return self.content.base

    @classmethod
    def of(cls, base, rank: int, generator=None) -> "GradedLine":
        one = _ideal_one(base)
        return cls(rank, FractionalIdeal(base, one if generator is None else generator, one))

    def dual(self) -> "GradedLine":
        return GradedLine(-self.rank, self.content.inverse())

    def is_unit(self) -> bool:
        return self.rank == 0 and self.content.is_trivial()

    def __eq__(self, other):
        if not isinstance(other, GradedLine):
            return NotImplemented
        return self.rank == other.rank and self.content == other.content

    __hash__ = None


def unit_line(base) -> GradedLine:
    return GradedLine.of(base, 0)


def tensor(a: GradedLine, b: GradedLine) -> GradedLine:
    if a.base != b.base:
        raise BaseMismatch(f"{a.base} vs {b.base}")
    return GradedLine(a.rank + b.rank, a.content * b.content)


@dataclass(frozen=True)
class Generator:
    """The generator u * (content generator) of a line; u is a unit."""

    line: GradedLine
    unit: object

    def __post_init__(self):
        if not self.line.base.is_unit(self.unit):
            raise ValueError("scaling factor of a generator must be a unit")

    def value(self):
        c = self.line.content
        return self.unit * c.num, c.den

    def scale(self, u) -> "Generator":
        return Generator(self.line, self.unit * u)

    def __mul__(self, other: "Generator") -> "Generator":
        return Generator(tensor(self.line, other.line), self.unit * other.unit)


def det_finite_module(lengths, p: int, N: int = 8) -> tuple[GradedLine, Generator]:
    """Line of the finite module sum Z_p/p^(a_i) with its generator p^(sum a_i)."""
    counts = Counter(lengths)
    if any(a < 0 for a in counts):
        raise ValueError("cyclic factor lengths must be non-negative")
    total = sum(a * m for a, m in counts.items())
    base = ZpBase(p, N)
    # exact integer generator: the content is p^total whatever N is
    line = GradedLine.of(base, 0, p**total)
    return line, Generator(line, base.one())


def generator_ratio(z1: Generator, z2: Generator):
    """The unit u with z1 = u * z2."""
    if z1.line != z2.line:
        raise LineMismatch("generators of different lines")
    return z1.unit * z1.line.base.inverse(z2.unit)
