"""Group rings of the layers G_n = Gal(Q(zeta_{p^{n+1}})/Q) = Delta x Z/p^n.

Group elements are indexed by pairs (i, j): the class of delta^i gamma^j in
(Z/p^{n+1})^*, where delta is the Teichmueller lift of the smallest primitive
root mod p and gamma = 1 + p.  Characters are indexed by (u, v) with

    rho_{u,v}(delta^i gamma^j) = zeta_{p-1}^(u i) * zeta_{p^n}^(v j),

which in the common field Q(zeta_N), N = |G_n|, is zeta_N^(u i p^n + v j (p-1)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm

from .exactnum import CycloElem, divisors, euler_phi, moebius
from .lfunc import DirichletChar, primitive_root
from .padic import PadicInt, teichmuller

__all__ = [
    "TowerLayer",
    "Character",
    "CharacterTable",
    "GroupRingElem",
    "MissingRoots",
    "NonInvertibleOrder",
    "NotAUnit",
    "UnitCertificate",
    "rho_decompose",
    "rho_compose",
    "compose_from_orbits",
    "project",
    "reduced_norm_abelian",
]


class MissingRoots(ValueError):
    pass


class NonInvertibleOrder(ValueError):
    pass


class NotAUnit(ValueError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"vanishing rho-components: {components}")


@lru_cache(maxsize=None)
def _layer(p: int, n: int) -> "TowerLayer":
    return TowerLayer(p, n)


class TowerLayer:
    """The n-th layer of the cyclotomic tower at p."""

    def __init__(self, p: int, n: int):
        if p == 2 or p < 3:
            raise ValueError("p must be an odd prime")
        if n < 0:
            raise ValueError("level must be non-negative")
        self.p = p
        self.n = n
        self.delta_order = p - 1
        self.gamma_order = p**n
        self.order = (p - 1) * p**n
        self.modulus = p ** (n + 1)
        self.root = primitive_root(p * p) if p > 2 else 1
        self.delta = teichmuller(primitive_root(p), p, n + 1).residue
        self.gamma = 1 + p

    @classmethod
    def get(cls, p: int, n: int) -> "TowerLayer":
        return _layer(p, n)

    def __repr__(self):
        return f"TowerLayer(p={self.p}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, TowerLayer) and (self.p, self.n) == (other.p, other.n)

    def __hash__(self):
        return hash((self.p, self.n))

    def index(self, i: int, j: int) -> int:
        return (i % self.delta_order) * self.gamma_order + (j % self.gamma_order)

    def pair(self, idx: int) -> tuple[int, int]:
        return divmod(idx, self.gamma_order)

    def elements(self):
        for i in range(self.delta_order):
            for j in range(self.gamma_order):
                yield (i, j)

    def residue(self, i: int, j: int) -> int:
        m = self.modulus
        return pow(self.delta, i % self.delta_order, m) * pow(self.gamma, j % self.gamma_order, m) % m

    @cached_property
    def _dlog(self) -> dict[int, tuple[int, int]]:
        return {self.residue(i, j): (i, j) for i, j in self.elements()}

    def artin(self, a: int) -> tuple[int, int]:
        """Index pair of sigma_a for an integer a prime to p."""
        if a % self.p == 0:
            raise ValueError(f"{a} is not prime to {self.p}")
        return self._dlog[a % self.modulus]

    def mul(self, g: tuple[int, int], h: tuple[int, int]) -> tuple[int, int]:
        return ((g[0] + h[0]) % self.delta_order, (g[1] + h[1]) % self.gamma_order)

    def inv(self, g: tuple[int, int]) -> tuple[int, int]:
        return ((-g[0]) % self.delta_order, (-g[1]) % self.gamma_order)

    def quotient(self) -> "TowerLayer":
        if self.n == 0:
            raise ValueError("level 0 has no lower layer")
        return TowerLayer.get(self.p, self.n - 1)

    @cached_property
    def character_table(self) -> "CharacterTable":
        return CharacterTable(self)

    def characters(self):
        return self.character_table.characters


@dataclass(frozen=True)
class Character:
    layer: TowerLayer
    u: int
    v: int

    @property
    def field_order(self) -> int:
        return self.layer.order

    def exponent(self, g: tuple[int, int]) -> int:
        """rho(g) = zeta_N^exponent with N = |G_n|."""
        L = self.layer
        return (self.u * g[0] * L.gamma_order + self.v * g[1] * (L.p - 1)) % L.order

    @property
    def order(self) -> int:
        L = self.layer
        return lcm(L.delta_order // gcd(self.u, L.delta_order),
                   L.gamma_order // gcd(self.v, L.gamma_order))

    def value(self, g: tuple[int, int]) -> CycloElem:
        return CycloElem.root_of_unity(self.layer.order, self.exponent(g))

    @property
    def is_delta_character(self) -> bool:
        return self.v % self.layer.gamma_order == 0

    def teichmuller_value(self, g: tuple[int, int], prec: int) -> PadicInt:
        """p-adic value omega^u(delta^i) for characters trivial on Gamma."""
        if not self.is_delta_character:
            raise MissingRoots("p-power roots of unity are not in Z_p")
        L = self.layer
        w = teichmuller(primitive_root(L.p), L.p, prec)
        return w ** ((self.u * g[0]) % L.delta_order)

    def lift(self, layer: TowerLayer) -> "Character":
        """Inflate to a higher layer along the quotient map."""
        k = layer.n - self.layer.n
        if k < 0 or layer.p != self.layer.p:
            raise ValueError("can only inflate to a higher layer of the same tower")
        return Character(layer, self.u, self.v * self.layer.p**k)

    def galois(self, a: int) -> "Character":
        L = self.layer
        return Character(L, (self.u * a) % L.delta_order, (self.v * a) % L.gamma_order)

    def dirichlet(self) -> DirichletChar:
        """The same character as a Dirichlet character mod p^(n+1)."""
        L = self.layer
        N = L.order
        return DirichletChar.from_function(L.modulus, N, lambda a: self.exponent(L.artin(a)))

    def __repr__(self):
        return f"rho[{self.u},{self.v}]@{self.layer.p}^{self.layer.n}"


class CharacterTable:
    def __init__(self, layer: TowerLayer):
        self.layer = layer
        self.characters = [Character(layer, u, v)
                           for u in range(layer.delta_order) for v in range(layer.gamma_order)]

    def __len__(self):
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def orbit_representatives(self) -> list[Character]:
        """One character of each order d | N; these are the Galois orbits."""
        L = self.layer
        reps = []
        for d1 in divisors(L.delta_order):
            for m in range(L.n + 1):
                reps.append(Character(L, (L.delta_order // d1) % L.delta_order,
                                      (L.gamma_order // L.p**m) % L.gamma_order))
        return reps

    def orthogonality_defect(self) -> list:
        """Pairs (rho, rho') violating sum_g rho(g) rho'(g^-1) = |G| [rho = rho'].

        rho * rho'^-1 is again a table character, so every pair reduces to
        one character sum; each sum is a histogram of exponents reduced once.
        """
        L = self.layer
        N = L.order
        sums = {}
        for c in self.characters:
            hist = [0] * N
            for g in L.elements():
                hist[c.exponent(g)] += 1
            sums[(c.u, c.v)] = CycloElem.from_int_vector(N, hist)
        bad = []
        for a in self.characters:
            for b in self.characters:
                key = ((a.u - b.u) % L.delta_order, (a.v - b.v) % L.gamma_order)
                want = N if a == b else 0
                if sums[key] != want:
                    bad.append((a, b))
        return bad


# ---------------------------------------------------------------------------


class GroupRingElem:
    """Element of R[G_n] with coefficients of one kind (Fraction, CycloElem or PadicInt)."""

    __slots__ = ("layer", "coeffs")

    def __init__(self, layer: TowerLayer, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) != layer.order:
            raise ValueError("need one coefficient per group element")
        kinds = {_kind(c) for c in coeffs}
        if len(kinds) > 1 and not kinds <= {"Q", "int"}:
            raise TypeError(f"mixed coefficient kinds {kinds}")
        self.layer = layer
        self.coeffs = tuple(Fraction(c) if isinstance(c, int) else c for c in coeffs)

    @classmethod
    def zero(cls, layer, like=Fraction(0)):
        return cls(layer, [like * 0] * layer.order)

    @classmethod
    def group_element(cls, layer, g, one=Fraction(1)):
        zero = one * 0
        cs = [zero] * layer.order
        cs[layer.index(*g)] = one
        return cls(layer, cs)

    @classmethod
    def one(cls, layer, one=Fraction(1)):
        return cls.group_element(layer, (0, 0), one)

    @classmethod
    def from_dict(cls, layer, d: dict, zero=Fraction(0)):
        cs = [zero] * layer.order
        for g, c in d.items():
            cs[layer.index(*g)] = c
        return cls(layer, cs)

    def __getitem__(self, g):
        return self.coeffs[self.layer.index(*g)]

    def items(self):
        for idx, c in enumerate(self.coeffs):
            yield self.layer.pair(idx), c

    def _same(self, other):
        if not isinstance(other, GroupRingElem) or other.layer != self.layer:
            raise ValueError("group ring elements live on different layers")

    def __add__(self, other):
        self._same(other)
        return GroupRingElem(self.layer, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return GroupRingElem(self.layer, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GroupRingElem(self.layer, [a * c for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, GroupRingElem):
            return self.scale(other)
        self._same(other)
        L = self.layer
        zero = self.coeffs[0] * 0
        out = [zero] * L.order
        nz = [(L.pair(i), b) for i, b in enumerate(other.coeffs) if not _is_zero(b)]
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            g = L.pair(i)
            for h, b in nz:
                k = L.index(*L.mul(g, h))
                out[k] = out[k] + a * b
        return GroupRingElem(L, out)

    def act(self, g) -> "GroupRingElem":
        """Multiply by the group element g (a permutation of coefficients)."""
        L = self.layer
        out = [None] * L.order
        for idx, c in enumerate(self.coeffs):
            out[L.index(*L.mul(g, L.pair(idx)))] = c
        return GroupRingElem(L, out)

    def map(self, fn) -> "GroupRingElem":
        return GroupRingElem(self.layer, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        if not isinstance(other, GroupRingElem):
            return NotImplemented
        return self.layer == other.layer and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.layer, self.coeffs))

    def __repr__(self):
        terms = [f"({c})*[{i},{j}]" for (i, j), c in self.items() if not _is_zero(c)]
        return f"GroupRingElem({self.layer.p}^{self.layer.n}: " + (" + ".join(terms) or "0") + ")"


def _kind(c):
    if isinstance(c, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(c, int):
        return "int"
    if isinstance(c, Fraction):
        return "Q"
    if isinstance(c, CycloElem):
        return "cyclo"
    if isinstance(c, PadicInt):
        return "padic"
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _is_zero(c) -> bool:
    if isinstance(c, CycloElem):
        return c.is_zero()
    if isinstance(c, PadicInt):
        return c.residue == 0
    return c == 0


# ---------------------------------------------------------------------------
# rho-decomposition


def _coeff_field_order(x: GroupRingElem) -> int:
    orders = {c.order for c in x.coeffs if isinstance(c, CycloElem)}
    return lcm(*orders) if orders else 1


def rho_decompose(x: GroupRingElem, characters=None) -> dict:
    """rho -> sum_g x(g) rho(g) for every character (or the given ones).

    Values are cyclotomic elements of order lcm(|G|, coefficient field order).
    Over p-adic coefficients only characters of Delta are available; their
    values are Teichmueller lifts.
    """
    L = x.layer
    chars = list(characters) if characters is not None else L.characters()
    if x.coeffs and isinstance(x.coeffs[0], PadicInt):
        return _padic_decompose(x, chars)
    K = _coeff_field_order(x)
    M = lcm(L.order, K)
    s = M // L.order
    out = {}
    nz = [(g, c) for g, c in x.items() if not _is_zero(c)]
    if all(not isinstance(c, CycloElem) for _, c in nz):
        # rational coefficients: clear denominators and reduce integer vectors
        den = lcm(1, *(Fraction(c).denominator for _, c in nz))
        ints = [(g, int(c * den)) for g, c in nz]
        for rho in chars:
            acc = [0] * M
            for g, c in ints:
                acc[rho.exponent(g)] += c
            out[rho] = CycloElem.from_int_vector(M, acc, den)
        return out
    for rho in chars:
        acc = [Fraction(0)] * M
        for g, c in nz:
            e = rho.exponent(g) * s
            if isinstance(c, CycloElem):
                t = M // c.order
                for i, ci in enumerate(c.coeffs):
                    if ci:
                        acc[(e + i * t) % M] += ci
            else:
                acc[e] += c
        out[rho] = CycloElem(M, acc)
    return out


def _padic_decompose(x: GroupRingElem, chars) -> dict:
    out = {}
    prec = min(c.prec for c in x.coeffs)
    for rho in chars:
        if not rho.is_delta_character:
            raise MissingRoots(f"{rho} needs p-power roots of unity")
        total = PadicInt(0, x.layer.p, prec)
        for g, c in x.items():
            total = total + c * rho.teichmuller_value(g, prec)
        out[rho] = total
    return out


def rho_compose(layer: TowerLayer, values: dict) -> GroupRingElem:
    """Inverse of :func:`rho_decompose`: x(g) = |G|^-1 sum_rho values[rho] rho(g^-1).

    Values may be cyclotomic (any orders) or rational.  Output coefficients are
    rational when every result is rational, cyclotomic otherwise.  p-adic
    values are accepted only for Delta-characters at level 0, since |G_n| is
    divisible by p for n >= 1.
    """
    vals = list(values.values())
    if vals and isinstance(vals[0], PadicInt):
        return _padic_compose(layer, values)
    if len(values) != layer.order:
        raise ValueError("need one value per character")
    M = lcm(layer.order, *[v.order for v in vals if isinstance(v, CycloElem)])
    s = M // layer.order
    unred = {}
    for rho, v in values.items():
        if isinstance(v, CycloElem):
            t = M // v.order
            unred[rho] = [(i * t, c) for i, c in enumerate(v.coeffs) if c]
        else:
            unred[rho] = [(0, Fraction(v))] if v else []
    # integer arithmetic over one common denominator
    den = 1
    for terms in unred.values():
        for _, c in terms:
            den = lcm(den, c.denominator)
    # rho(g) = zeta_M^(a*g0 + b*g1)
    go, pm = layer.gamma_order, layer.p - 1
    iterms = [(rho.u * go * s, rho.v * pm * s, [(i, int(c * den)) for i, c in terms])
              for rho, terms in unred.items() if terms]
    coeffs = []
    for g0, g1 in layer.elements():
        acc = [0] * M
        for a, b, terms in iterms:
            e = -(a * g0 + b * g1)
            for i, c in terms:
                acc[(i + e) % M] += c
        coeffs.append(CycloElem.from_int_vector(M, acc, den * layer.order))
    if all(c.is_rational() for c in coeffs):
        return GroupRingElem(layer, [c.to_rational() for c in coeffs])
    K = _min_order(coeffs, M)
    return GroupRingElem(layer, [_descend(c, K) for c in coeffs])


def _padic_compose(layer: TowerLayer, values: dict) -> GroupRingElem:
    if layer.n != 0:
        raise NonInvertibleOrder(f"|G_{layer.n}| = {layer.order} is divisible by p")
    p = layer.p
    prec = min(v.prec for v in values.values())
    inv = PadicInt(layer.order, p, prec).inverse()
    coeffs = []
    for g in layer.elements():
        gi = layer.inv(g)
        total = PadicInt(0, p, prec)
        for rho, v in values.items():
            total = total + v * rho.teichmuller_value(gi, prec)
        coeffs.append(total * inv)
    return GroupRingElem(layer, coeffs)


def _min_order(elems, M):
    """Smallest K | M such that every element lies in Q(zeta_K)."""
    for K in divisors(M):
        if all(_in_subfield(c, K) for c in elems):
            return K
    return M


def _in_subfield(c: CycloElem, K: int) -> bool:
    M = c.order
    if K == M:
        return True
    # c lies in Q(zeta_K) iff it is fixed by every sigma_a with a = 1 mod K
    for a in range(1, M, K):
        if gcd(a, M) == 1 and c.galois(a) != c:
            return False
    return True


def _descend(c: CycloElem, K: int) -> CycloElem:
    """Rewrite an element of Q(zeta_M) lying in Q(zeta_K) with order K."""
    if c.order == K:
        return c
    # solve in the power basis of Q(zeta_K) by linear algebra on embeddings
    basis = [CycloElem.root_of_unity(K, i).embed(c.order) for i in range(len(CycloElem.from_rational(K, 0).coeffs))]
    sol = _solve_linear([b.coeffs for b in basis], c.coeffs)
    return CycloElem(K, sol)


def _solve_linear(cols, rhs):
    n = len(cols)
    m = len(rhs)
    A = [[Fraction(cols[j][i]) for j in range(n)] + [Fraction(rhs[i])] for i in range(m)]
    row = 0
    piv = []
    for col in range(n):
        r = next((r for r in range(row, m) if A[r][col] != 0), None)
        if r is None:
            continue
        A[row], A[r] = A[r], A[row]
        pv = A[row][col]
        A[row] = [a / pv for a in A[row]]
        for r2 in range(m):
            if r2 != row and A[r2][col] != 0:
                f = A[r2][col]
                A[r2] = [a - f * b for a, b in zip(A[r2], A[row])]
        piv.append(col)
        row += 1
    sol = [Fraction(0)] * n
    for r, col in enumerate(piv):
        sol[col] = A[r][n]
    return sol


def compose_from_orbits(layer: TowerLayer, orbit_values: dict) -> GroupRingElem:
    """Inverse DFT for a Galois-equivariant component map with rational output.

    ``orbit_values`` maps each orbit representative from
    :meth:`CharacterTable.orbit_representatives` (rho of order d) to its
    value, a CycloElem of order L with d | L and phi(L) = phi(d), under
    zeta_d = zeta_L^(L/d).  The remaining components are assumed to be the
    Galois conjugates: value(rho^a) = sigma_a(value(rho)).

    Uses x(g) = |G|^-1 sum_orbits Tr(v * rho(g)^-1) and evaluates every trace
    through Ramanujan sums c_L(m) = sum_{h | gcd(m, L)} h mu(L/h), so the
    cost is O(|G| * #divisors) per orbit instead of O(|G|^2).
    """
    N = layer.order
    total = [Fraction(0)] * N
    for rho, v in orbit_values.items():
        d = rho.order
        if not isinstance(v, CycloElem):
            v = CycloElem.from_rational(d, v)
        Lo = v.order
        if Lo % d:
            raise ValueError(f"value order {Lo} is not a multiple of the character order {d}")
        if v.is_zero():
            continue
        # character exponent in units of zeta_d
        step = Lo // d
        rho_d_exp = [None] * N
        Nd = N // d
        for idx in range(N):
            g = layer.pair(idx)
            rho_d_exp[idx] = (rho.exponent(g) // Nd) % d
        den = 1
        for c in v.coeffs:
            den = lcm(den, c.denominator)
        ints = [int(c * den) for c in v.coeffs]
        parts = []
        for h in divisors(Lo):
            mu = moebius(Lo // h)
            if mu == 0:
                continue
            A = [0] * h
            for t, a in enumerate(ints):
                if a:
                    A[t % h] += a
            parts.append((h, h * mu, A))
        # the orbit of rho has phi(d) members; the trace over Q(zeta_Lo) has
        # phi(Lo) terms, so rescale when the field is larger than needed
        ratio = Fraction(euler_phi(d), euler_phi(Lo))
        for idx in range(N):
            sft = (rho_d_exp[idx] * step) % Lo
            acc = 0
            for h, w, A in parts:
                acc += w * A[sft % h]
            if acc:
                total[idx] += ratio * Fraction(acc, den)
    return GroupRingElem(layer, [c / N for c in total])


def project(x: GroupRingElem) -> GroupRingElem:
    """Push coefficients along G_n -> G_{n-1} (sum over fibres)."""
    L = x.layer
    Q = L.quotient()
    acc = [None] * Q.order
    for (i, j), c in x.items():
        k = Q.index(i, j)
        acc[k] = c if acc[k] is None else acc[k] + c
    return GroupRingElem(Q, acc)


@dataclass(frozen=True)
class UnitCertificate:
    element: GroupRingElem
    components: dict


def reduced_norm_abelian(x: GroupRingElem) -> UnitCertificate:
    """For abelian G the reduced norm is the identity on units of Q[G].

    Returns x together with its (all nonzero) rho-components.
    """
    comps = rho_decompose(x)
    zeros = [rho for rho, v in comps.items() if (v.is_zero() if isinstance(v, CycloElem) else v.residue == 0)]
    if zeros:
        raise NotAUnit(zeros)
    return UnitCertificate(x, comps)
