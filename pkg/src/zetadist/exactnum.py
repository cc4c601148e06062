"""Exact rationals, cyclotomic field elements and Bernoulli numbers.

Rationals are :class:`fractions.Fraction`.  Elements of the d-th cyclotomic
field are stored in the power basis 1, z, ..., z^(phi(d)-1) reduced modulo the
d-th cyclotomic polynomial, so equality is plain tuple equality.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, gcd, lcm

Rational = Fraction

__all__ = [
    "Rational",
    "CycloElem",
    "OrderMismatch",
    "bernoulli",
    "bernoulli_poly_eval",
    "bernoulli_poly_scaled",
    "cyclo_arith",
    "cyclotomic_poly",
    "euler_phi",
    "factorize",
    "moebius",
    "divisors",
]


class OrderMismatch(ValueError):
    """Raised when cyclotomic elements of different orders are combined."""


# ---------------------------------------------------------------------------
# elementary integer helpers

def factorize(n: int) -> dict[int, int]:
    """Trial-division factorization; fine for the sizes used here."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def euler_phi(n: int) -> int:
    r = n
    for q in factorize(n):
        r = r // q * (q - 1)
    return r


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def divisors(n: int) -> list[int]:
    ds = [1]
    for q, e in factorize(n).items():
        ds = [d * q**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


# ---------------------------------------------------------------------------
# Bernoulli numbers

_bern_lock = threading.Lock()
_bern_cache: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """Return B_k with the convention B_1 = -1/2.

    Uses the recurrence sum_{j<=n} C(n+1, j) B_j = 0 and memoizes.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k < len(_bern_cache):
        return _bern_cache[k]
    with _bern_lock:
        for n in range(len(_bern_cache), k + 1):
            if n > 1 and n % 2:
                _bern_cache.append(Fraction(0))
                continue
            s = sum(comb(n + 1, j) * _bern_cache[j] for j in range(n))
            _bern_cache.append(-s / (n + 1))
    return _bern_cache[k]


def bernoulli_poly_eval(k: int, x) -> Fraction:
    """B_k(x) = sum_j C(k, j) B_j x^(k-j)."""
    x = Fraction(x)
    return sum((comb(k, j) * bernoulli(j) * x ** (k - j) for j in range(k + 1)), Fraction(0))


@lru_cache(maxsize=None)
def bernoulli_poly_scaled(k: int, f: int) -> tuple[tuple[int, ...], int]:
    """Integer form of a -> f^(k-1) B_k(a/f).

    Returns ``(coeffs, den)`` with ``f^(k-1) B_k(a/f) = sum_i coeffs[i] a^i / den``
    so that long character sums can be accumulated in machine-exact integers.
    """
    bs = [bernoulli(j) for j in range(k + 1)]
    big = reduce(lcm, (b.denominator for b in bs), 1)
    coeffs = [0] * (k + 1)
    for j, b in enumerate(bs):
        # C(k,j) B_j a^(k-j) f^j / f
        coeffs[k - j] = comb(k, j) * (b * big).numerator * f**j
    return tuple(coeffs), big * f


# ---------------------------------------------------------------------------
# cyclotomic fields

@lru_cache(maxsize=None)
def cyclotomic_poly(d: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_d, lowest degree first."""
    # x^d - 1 divided by Phi_e for every proper divisor e
    num = [-1] + [0] * (d - 1) + [1]
    for e in divisors(d):
        if e == d:
            continue
        num = _exact_divide(num, cyclotomic_poly(e))
    return tuple(num)


def _exact_divide(a: list[int], b: tuple[int, ...]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]  # b is monic
        if c:
            q[i - db] = c
            for t, bt in enumerate(b):
                a[i - db + t] -= c * bt
    assert not any(a[:db]), "non-exact division"
    return q


@lru_cache(maxsize=None)
def _phi_tail(d: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    phi = cyclotomic_poly(d)
    deg = len(phi) - 1
    return deg, tuple((t, c) for t, c in enumerate(phi[:-1]) if c)


def reduce_unreduced(d: int, vec) -> list:
    """Reduce a coefficient vector in z (any length) modulo Phi_d.

    Works for ``int`` or ``Fraction`` entries; returns a list of length phi(d).
    """
    deg, tail = _phi_tail(d)
    v = [0] * d
    for i, c in enumerate(vec):
        if c:
            v[i % d] += c
    for i in range(d - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for t, ct in tail:
                v[base + t] -= c * ct
            v[i] = 0
    return v[:deg]


class CycloElem:
    """Element of Q(zeta_d) in canonical reduced form."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be positive")
        deg = len(cyclotomic_poly(order)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = reduce_unreduced(order, cs)
        cs = cs + [Fraction(0)] * (deg - len(cs))
        self.order = order
        self.coeffs = tuple(Fraction(c) for c in cs)
        self._hash = None

    # constructors -------------------------------------------------------
    @classmethod
    def from_rational(cls, order: int, q) -> "CycloElem":
        return cls(order, [Fraction(q)])

    @classmethod
    def root_of_unity(cls, order: int, e: int, scale=1) -> "CycloElem":
        vec = [0] * order
        vec[e % order] = Fraction(scale)
        return cls(order, vec)

    @classmethod
    def from_int_vector(cls, order: int, ints, den: int = 1) -> "CycloElem":
        """Build from an unreduced integer vector divided by ``den``.

        Reduction runs on Python ints, which is much cheaper than on
        Fractions for large orders.
        """
        red = reduce_unreduced(order, ints)
        obj = cls.__new__(cls)
        obj.order = order
        zero = Fraction(0)
        obj.coeffs = tuple(Fraction(c, den) if c else zero for c in red)
        obj._hash = None
        return obj

    # queries --------------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    # field embeddings -------------------------------------------------------
    def embed(self, order: int) -> "CycloElem":
        """Image in Q(zeta_order) under zeta_d -> zeta_order^(order/d)."""
        if order == self.order:
            return self
        if order % self.order:
            raise OrderMismatch(f"cannot embed order {self.order} into {order}")
        s = order // self.order
        vec = [Fraction(0)] * order
        for i, c in enumerate(self.coeffs):
            vec[i * s] = c
        return CycloElem(order, vec)

    def galois(self, a: int) -> "CycloElem":
        """Apply sigma_a : zeta -> zeta^a (gcd(a, order) = 1)."""
        if gcd(a, self.order) != 1:
            raise ValueError("Galois automorphism needs a unit exponent")
        vec = [Fraction(0)] * self.order
        for i, c in enumerate(self.coeffs):
            if c:
                vec[(i * a) % self.order] += c
        return CycloElem(self.order, vec)

    def times_root(self, e: int, scale=1) -> "CycloElem":
        """Multiply by scale * zeta^e without a full polynomial product."""
        d = self.order
        vec = [Fraction(0)] * d
        scale = Fraction(scale)
        for i, c in enumerate(self.coeffs):
            if c:
                vec[(i + e) % d] += c * scale
        return CycloElem(d, vec)

    def trace(self) -> Fraction:
        """Absolute trace Tr_{Q(zeta_d)/Q}, via Ramanujan sums."""
        return sum((c * ramanujan_sum(self.order, i) for i, c in enumerate(self.coeffs) if c),
                   Fraction(0))

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "CycloElem"):
        if not isinstance(other, CycloElem):
            other = CycloElem.from_rational(self.order, other)
        if other.order != self.order:
            raise OrderMismatch(f"orders {self.order} and {other.order} differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        return CycloElem(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloElem(self.order, [a * other for a in self.coeffs])
        other = self._check(other)
        # integer convolution over a common denominator
        da = lcm(1, *(c.denominator for c in self.coeffs))
        db = lcm(1, *(c.denominator for c in other.coeffs))
        a = [(i, int(c * da)) for i, c in enumerate(self.coeffs) if c]
        b = [(j, int(c * db)) for j, c in enumerate(other.coeffs) if c]
        prod = [0] * max(len(self.coeffs) + len(other.coeffs) - 1, 1)
        for i, x in a:
            for j, y in b:
                prod[i + j] += x * y
        return CycloElem.from_int_vector(self.order, prod, da * db)

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        inv = _poly_inverse_mod(list(self.coeffs), phi)
        return CycloElem(self.order, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._check(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycloElem.from_rational(self.order, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_rational() == other
        if not isinstance(other, CycloElem):
            return NotImplemented
        if other.order != self.order:
            m = lcm(self.order, other.order)
            return self.embed(m).coeffs == other.embed(m).coeffs
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.order, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"

    def __str__(self):
        if self.is_rational():
            return str(self.to_rational())
        return repr(self)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_poly_trim(a)) >= len(b):
        c = a[-1] / lead
        s = len(a) - len(b)
        q[s] = c
        for i, bi in enumerate(b):
            a[s + i] -= c * bi
        a.pop()
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _poly_inverse_mod(a, m):
    """Inverse of a modulo m in Q[x] by the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_trim(_poly_sub(s0, _poly_mul(q, s1)))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


@lru_cache(maxsize=None)
def ramanujan_sum(d: int, m: int) -> int:
    """c_d(m) = sum of zeta_d^(a m) over units a mod d."""
    g = gcd(d, m % d) if m % d else d
    q = d // g
    return moebius(q) * euler_phi(d) // euler_phi(q)


def cyclo_arith(a: CycloElem, b: CycloElem | None, op: str) -> CycloElem:
    """Dispatch ``add``, ``mul`` or ``inv`` on cyclotomic elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")
