"""Dirichlet characters, generalized Bernoulli numbers and L-values at 1-k."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

from .exactnum import (
    CycloElem,
    bernoulli,
    bernoulli_poly_scaled,
    factorize,
    euler_phi,
    is_prime,
)
from .padic import vp

__all__ = [
    "DirichletChar",
    "LValue",
    "PoleAtOne",
    "BoundExceeded",
    "UnknownFixture",
    "CharacterFormatError",
    "gen_bernoulli",
    "l_value",
    "euler_strip",
    "class_number_formula_check",
    "minus_class_number",
    "irregular_indices",
    "kronecker_symbol",
    "primitive_root",
    "IMAG_QUADRATIC_FIXTURE",
]


class PoleAtOne(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


class UnknownFixture(KeyError):
    pass


class CharacterFormatError(ValueError):
    pass


def primitive_root(m: int) -> int:
    """Smallest generator of (Z/m)^* for m = 1, 2, 4, q^e or 2 q^e."""
    if m <= 2:
        return 1
    phi = euler_phi(m)
    qs = list(factorize(phi))
    for g in range(2, m):
        if gcd(g, m) == 1 and all(pow(g, phi // q, m) != 1 for q in qs):
            return g
    raise ValueError(f"(Z/{m})^* is not cyclic")


def kronecker_symbol(D: int, n: int) -> int:
    """Kronecker symbol (D/n) for n >= 1."""
    if n == 0:
        return 1 if abs(D) == 1 else 0
    res = 1
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            res = -res
    # Jacobi symbol (D/n), n odd
    a = D % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


class DirichletChar:
    """A Dirichlet character with values in the ``order``-th roots of unity.

    ``logs[a]`` is the exponent e with chi(a) = zeta_order^e, or -1 when
    gcd(a, modulus) > 1.  The conductor and primitive character are derived
    from the table.
    """

    __slots__ = ("modulus", "order", "logs", "__dict__")

    def __init__(self, modulus: int, order: int, logs):
        if modulus < 1 or order < 1:
            raise ValueError("modulus and order must be positive")
        logs = tuple(-1 if e is None or e < 0 else e % order for e in logs)
        if len(logs) != modulus:
            raise ValueError("value table must have one entry per residue")
        self.modulus = modulus
        self.order = order
        self.logs = logs

    # construction ------------------------------------------------------------
    @classmethod
    def trivial(cls, modulus: int = 1) -> "DirichletChar":
        return cls(modulus, 1, [0 if gcd(a, modulus) == 1 else -1 for a in range(modulus)])

    @classmethod
    def from_function(cls, modulus: int, order: int, fn) -> "DirichletChar":
        """``fn(a)`` gives the exponent for each unit a."""
        return cls(modulus, order,
                   [fn(a) if gcd(a, modulus) == 1 else -1 for a in range(modulus)])

    @classmethod
    def from_generator(cls, f: int, g: int, e: int, d: int) -> "DirichletChar":
        """Primitive character mod f sending the generator g to zeta_d^e.

        f must be 1 or an odd prime power.
        """
        if f == 1:
            if e % d:
                raise CharacterFormatError("the character mod 1 is trivial")
            return cls.trivial(1)
        fac = factorize(f)
        # the format needs a cyclic group: odd prime powers and 4
        if f != 4 and (len(fac) != 1 or 2 in fac):
            raise CharacterFormatError(f"conductor {f} is not an odd prime power")
        phi = euler_phi(f)
        if gcd(g, f) != 1 or len({pow(g, i, f) for i in range(phi)}) != phi:
            raise CharacterFormatError(f"{g} does not generate (Z/{f})^*")
        if (e * phi) % d:
            raise CharacterFormatError("zeta_d^e has order not dividing phi(f)")
        table = [-1] * f
        x = 1
        for i in range(phi):
            table[x] = (i * e) % d
            x = x * g % f
        chi = cls(f, d, table)
        if chi.conductor != f:
            raise CharacterFormatError(f"character is not primitive mod {f}")
        return chi

    @classmethod
    def parse(cls, text: str) -> "DirichletChar":
        """Parse ``chi:{f}:{g}:{e}:{d}``."""
        parts = text.strip().split(":")
        if len(parts) != 5 or parts[0] != "chi":
            raise CharacterFormatError(f"expected chi:f:g:e:d, got {text!r}")
        try:
            f, g, e, d = (int(x) for x in parts[1:])
        except ValueError as exc:
            raise CharacterFormatError(str(exc)) from None
        if f < 1 or d < 1:
            raise CharacterFormatError("f and d must be positive")
        return cls.from_generator(f, g, e, d)

    @classmethod
    def kronecker(cls, D: int) -> "DirichletChar":
        """The quadratic character (D/.) of a fundamental discriminant D."""
        m = abs(D)
        return cls(m, 2, [{1: 0, -1: 1, 0: -1}[kronecker_symbol(D, a)] for a in range(m)])

    def serialize(self) -> str:
        psi = self.primitive()
        f = psi.modulus
        if f == 1:
            return "chi:1:1:0:1"
        fac = factorize(f)
        # the format needs a cyclic group: odd prime powers and 4
        if f != 4 and (len(fac) != 1 or 2 in fac):
            raise CharacterFormatError(f"conductor {f} has no chi:f:g:e:d form")
        g = primitive_root(f)
        return f"chi:{f}:{g}:{psi.logs[g]}:{psi.order}"

    # evaluation ----------------------------------------------------------------
    def exponent(self, a: int) -> int | None:
        e = self.logs[a % self.modulus]
        return None if e < 0 else e

    def __call__(self, a: int) -> CycloElem:
        e = self.exponent(a)
        if e is None:
            return CycloElem.from_rational(self.order, 0)
        return CycloElem.root_of_unity(self.order, e)

    @cached_property
    def conductor(self) -> int:
        m = self.modulus
        f = m
        for q in factorize(m) if m > 1 else {}:
            while f % q == 0:
                f2 = f // q
                ok = all(self.logs[a] == 0 for a in range(1, m, f2) if self.logs[a] >= 0)
                if not ok:
                    break
                f = f2
        return f

    def primitive(self) -> "DirichletChar":
        f = self.conductor
        if f == self.modulus:
            return self
        table = [-1] * f
        for b in range(f):
            if gcd(b, f) != 1:
                continue
            a = b
            while gcd(a, self.modulus) != 1:
                a += f
            table[b] = self.logs[a % self.modulus]
        return DirichletChar(f, self.order, table)

    def is_trivial(self) -> bool:
        return self.conductor == 1

    @cached_property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        e = self.logs[self.modulus - 1]
        return 1 if e == 0 else -1

    def is_rational(self) -> bool:
        return all(e < 0 or (2 * e) % self.order == 0 for e in self.logs)

    def with_order(self, order: int) -> "DirichletChar":
        if order % self.order:
            raise ValueError("new order must be a multiple")
        s = order // self.order
        return DirichletChar(self.modulus, order, [e * s if e >= 0 else -1 for e in self.logs])

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        m = lcm(self.modulus, other.modulus)
        d = lcm(self.order, other.order)
        s1, s2 = d // self.order, d // other.order
        table = []
        for a in range(m):
            e1, e2 = self.logs[a % self.modulus], other.logs[a % other.modulus]
            table.append(-1 if e1 < 0 or e2 < 0 else e1 * s1 + e2 * s2)
        return DirichletChar(m, d, table)

    def __eq__(self, other):
        if not isinstance(other, DirichletChar):
            return NotImplemented
        a, b = self.primitive(), other.primitive()
        if a.modulus != b.modulus:
            return False
        d = lcm(a.order, b.order)
        return a.with_order(d).logs == b.with_order(d).logs

    def __hash__(self):
        a = self.primitive()
        return hash((a.modulus, tuple(Fraction(e, a.order) if e >= 0 else -1 for e in a.logs)))

    def __repr__(self):
        try:
            return f"DirichletChar({self.serialize()}, modulus={self.modulus})"
        except CharacterFormatError:
            return f"DirichletChar(modulus={self.modulus}, conductor={self.conductor}, order={self.order})"


# ---------------------------------------------------------------------------
# generalized Bernoulli numbers and L-values


def gen_bernoulli(chi: DirichletChar, k: int) -> CycloElem:
    """B_{k,chi} of the primitive character attached to chi.

    B_{k,chi} = f^(k-1) sum_{a=1}^{f} chi(a) B_k(a/f).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    psi = chi.primitive()
    f, d = psi.modulus, psi.order
    coeffs, den = bernoulli_poly_scaled(k, f)
    acc = [0] * d
    logs = psi.logs
    for a in range(1, f + 1):
        e = logs[a % f]
        if e < 0:
            continue
        v = 0
        for c in reversed(coeffs):
            v = v * a + c
        acc[e] += v
    return CycloElem.from_int_vector(d, acc, den)


@dataclass(frozen=True)
class LValue:
    value: CycloElem
    chi: DirichletChar
    k: int
    S: frozenset = field(default_factory=frozenset)

    @property
    def s(self) -> int:
        return 1 - self.k


def l_value(chi: DirichletChar, k: int, *, cross_check: bool = False) -> LValue:
    """L(chi, 1-k) = -B_{k,chi}/k on the primitive character.

    The trivial character at k = 1 is rejected unless ``cross_check`` is set;
    that value, zeta(0) = -1/2, is only used by the class number cross-checks.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1 and chi.is_trivial() and not cross_check:
        raise PoleAtOne("trivial character at k = 1 is outside the k > 1 regime")
    return LValue(-gen_bernoulli(chi, k) / k, chi, k)


def euler_strip(v: LValue, S, k: int | None = None) -> LValue:
    """Remove the Euler factors at the primes in S from an L-value at 1-k.

    Multiplies by prod_{l in S} (1 - psi(l) l^(k-1)) where psi is primitive;
    primes dividing the conductor contribute 1.
    """
    k = v.k if k is None else k
    S = frozenset(S)
    psi = v.chi.primitive()
    val = v.value
    for ell in sorted(S - v.S):
        if not is_prime(ell):
            raise ValueError(f"{ell} is not prime")
        e = psi.exponent(ell) if psi.modulus > 1 else 0
        if e is None:
            continue
        val = val - val.times_root(e, ell ** (k - 1))
    return LValue(val, v.chi, k, v.S | S)


# ---------------------------------------------------------------------------
# class number cross-checks

# (h, w) for imaginary quadratic fields Q(sqrt(D)), D a fundamental
# discriminant with -200 <= D < 0.  External input, not computed here.
IMAG_QUADRATIC_FIXTURE: dict[int, tuple[int, int]] = {
    -3: (1, 6), -4: (1, 4), -7: (1, 2), -8: (1, 2), -11: (1, 2), -15: (2, 2),
    -19: (1, 2), -20: (2, 2), -23: (3, 2), -24: (2, 2), -31: (3, 2), -35: (2, 2),
    -39: (4, 2), -40: (2, 2), -43: (1, 2), -47: (5, 2), -51: (2, 2), -52: (2, 2),
    -55: (4, 2), -56: (4, 2), -59: (3, 2), -67: (1, 2), -68: (4, 2), -71: (7, 2),
    -79: (5, 2), -83: (3, 2), -84: (4, 2), -87: (6, 2), -88: (2, 2), -91: (2, 2),
    -95: (8, 2), -103: (5, 2), -104: (6, 2), -107: (3, 2), -111: (8, 2),
    -115: (2, 2), -116: (6, 2), -119: (10, 2), -120: (4, 2), -123: (2, 2),
    -127: (5, 2), -131: (5, 2), -132: (4, 2), -136: (4, 2), -139: (3, 2),
    -143: (10, 2), -148: (2, 2), -151: (7, 2), -152: (6, 2), -155: (4, 2),
    -159: (10, 2), -163: (1, 2), -164: (8, 2), -167: (11, 2), -168: (4, 2),
    -179: (5, 2), -183: (8, 2), -184: (4, 2), -187: (2, 2), -191: (13, 2),
    -195: (4, 2), -199: (9, 2),
}


def class_number_formula_check(D: int) -> dict:
    """Compare analytic L-values with the class number formula.

    ``D = 1`` means Q: zeta(0) = -h R / w = -1/2.  For a negative fundamental
    discriminant D, checks L(chi_D, 0) = 2h/w.
    """
    if D == 1:
        lhs = l_value(DirichletChar.trivial(), 1, cross_check=True).value.to_rational()
        rhs = Fraction(-1, 2)  # h = R = 1, w = 2
        return {"field": "Q", "lhs": lhs, "rhs": rhs, "pass": lhs == rhs}
    if D not in IMAG_QUADRATIC_FIXTURE:
        raise UnknownFixture(D)
    h, w = IMAG_QUADRATIC_FIXTURE[D]
    lhs = l_value(DirichletChar.kronecker(D), 1).value
    rhs = Fraction(2 * h, w)
    return {"field": f"Q(sqrt({D}))", "lhs": lhs.to_rational() if lhs.is_rational() else lhs,
            "rhs": rhs, "pass": lhs == rhs, "h": h, "w": w}


def minus_class_number(p: int, bound: int = 100) -> int:
    """h^- of Q(zeta_p) = 2p prod_{chi odd mod p} (-B_{1,chi}/2)."""
    if p == 2 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if p > bound:
        raise BoundExceeded(f"{p} > {bound}")
    g = primitive_root(p)
    d = p - 1
    prod = CycloElem.from_rational(d, 2 * p)
    for e in range(1, d, 2):
        chi = DirichletChar.from_generator(p, g, e, d)
        prod = prod * (gen_bernoulli(chi, 1) / -2)
    if not prod.is_rational():
        raise ArithmeticError("h^- product is not rational")
    h = prod.to_rational()
    if h.denominator != 1 or h <= 0:
        raise ArithmeticError(f"h^- = {h} is not a positive integer")
    return int(h)


def irregular_indices(p: int) -> list[int]:
    """Even k in [2, p-3] with p dividing the numerator of B_k."""
    return [k for k in range(2, p - 2, 2) if bernoulli(k).numerator % p == 0]


def ord_p(n: int, p: int) -> int:
    return vp(n, p)
