"""Equivariant L-elements along the cyclotomic tower and their regularization.

The element at layer n is defined through its rho-components,

    rho(x_n) = L_S(rho chi, 1-k)   for every character rho of G_n,

and recovered with the inverse DFT of :mod:`zetadist.groupring`.  The
regularized pair multiplies by g_n = 1 - c^k sigma_c, which clears the
p-denominators; see :func:`regularize`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .exactnum import CycloElem, is_prime
from .groupring import (
    Character,
    GroupRingElem,
    TowerLayer,
    compose_from_orbits,
    project,
    rho_compose,
)
from .lfunc import DirichletChar, euler_strip, l_value, primitive_root
from .padic import PadicInt, from_rational, teichmuller

__all__ = [
    "EquivariantLElem",
    "ZetaDistribution",
    "RegularizedPair",
    "CompatibilityViolation",
    "NotIntegral",
    "EmbeddingUnavailable",
    "equivariant_l",
    "build_distribution",
    "regularize",
    "default_regularizer",
    "regularizer_element",
    "check_compatibility",
    "stripped_l_value",
    "embed_padic",
    "export_distribution",
    "load_distribution",
]

# generic (non Galois-orbit) composition is quadratic in |G|
_GENERIC_LIMIT = 400


class CompatibilityViolation(ArithmeticError):
    def __init__(self, n, witness, lhs=None, rhs=None):
        self.n, self.witness, self.lhs, self.rhs = n, witness, lhs, rhs
        super().__init__(f"projection of layer {n} differs from layer {n - 1} at {witness}: {lhs} != {rhs}")


class NotIntegral(ArithmeticError):
    def __init__(self, witness, value):
        self.witness, self.value = witness, value
        super().__init__(f"coefficient at {witness} is not p-integral: {value}")


class EmbeddingUnavailable(ValueError):
    pass


def _as_char(chi) -> DirichletChar:
    if chi is None:
        return DirichletChar.trivial()
    if isinstance(chi, str):
        return DirichletChar.parse(chi)
    return chi


def stripped_l_value(psi: DirichletChar, k: int, S) -> CycloElem:
    """L_S(psi, 1-k) as a cyclotomic number of order psi.order."""
    return euler_strip(l_value(psi, k), S, k).value


def _rho_dirichlet(rho: Character) -> DirichletChar:
    """rho as a Dirichlet character mod p^(n+1), valued in its own order."""
    L = rho.layer
    d = rho.order
    step = L.order // d
    return DirichletChar.from_function(L.modulus, d, lambda a: rho.exponent(L.artin(a)) // step)


@dataclass
class EquivariantLElem:
    layer: TowerLayer
    chi: DirichletChar
    k: int
    S: frozenset
    element: GroupRingElem
    # rho -> component value; only Galois-orbit representatives when the
    # fast composition was used, every character otherwise
    components: dict = field(repr=False, default_factory=dict)
    orbit_form: bool = False

    def component(self, rho: Character) -> CycloElem:
        if rho in self.components:
            return self.components[rho]
        if not self.orbit_form:
            raise KeyError(rho)
        for rep, v in self.components.items():
            if rep.order == rho.order:
                # rho = rep^a for some unit a; the value is sigma_a(v)
                a = _galois_exponent(rep, rho)
                return v.galois(_lift_unit(a, rho.order, v.order))
        raise KeyError(rho)


def _galois_exponent(rep: Character, rho: Character) -> int:
    d = rep.order
    for a in range(1, d + 1):
        if gcd(a, d) == 1 and rep.galois(a) == rho:
            return a
    raise ValueError("characters are not Galois conjugate")


def _lift_unit(a: int, d: int, M: int) -> int:
    """A unit mod M congruent to a mod d, fixing the zeta_(M/d)-part when possible."""
    for t in range(M // d):
        b = a + t * d
        if gcd(b, M) == 1:
            return b
    raise ValueError("no unit lift")


def equivariant_l(p: int, n: int, chi=None, k: int = 2, S=None, *, require_p: bool = True,
                  method: str = "auto") -> EquivariantLElem:
    """The element of Q[G_n] (or Q(chi)[G_n]) with rho-components L_S(rho chi, 1-k).

    ``method`` is ``"orbits"`` (Galois-orbit traces, rational-valued chi
    only), ``"generic"`` (every component, quadratic inverse DFT) or
    ``"auto"``.
    """
    chi = _as_char(chi)
    if k < 2:
        raise ValueError("equivariant elements need k >= 2")
    S = frozenset({p} if S is None else S)
    if any(not is_prime(ell) for ell in S):
        raise ValueError(f"S must consist of primes: {sorted(S)}")
    if require_p and p not in S:
        raise ValueError(f"p = {p} must lie in S")
    L = TowerLayer.get(p, n)
    if method == "auto":
        method = "orbits" if chi.is_rational() else "generic"
    if method == "orbits":
        if not chi.is_rational():
            raise ValueError("orbit composition needs a rational-valued twist")
        comps = {}
        for rho in L.character_table.orbit_representatives():
            psi = _rho_dirichlet(rho) * chi
            # order of psi is lcm(d, chi.order), so phi(order) = phi(d) here
            comps[rho] = stripped_l_value(psi, k, S)
        elem = compose_from_orbits(L, comps)
        return EquivariantLElem(L, chi, k, S, elem, comps, orbit_form=True)
    if L.order > _GENERIC_LIMIT:
        raise ValueError(f"generic composition limited to |G| <= {_GENERIC_LIMIT}")
    comps = {}
    for rho in L.characters():
        psi = _rho_dirichlet(rho) * chi
        comps[rho] = stripped_l_value(psi, k, S)
    elem = rho_compose(L, comps)
    return EquivariantLElem(L, chi, k, S, elem, comps, orbit_form=False)


@dataclass
class ZetaDistribution:
    p: int
    chi: DirichletChar
    k: int
    S: frozenset
    layers: list  # EquivariantLElem for n = 0..n_max

    @property
    def n_max(self) -> int:
        return len(self.layers) - 1

    def element(self, n: int) -> GroupRingElem:
        return self.layers[n].element


def check_compatibility(layers) -> None:
    for n in range(1, len(layers)):
        lower = project(layers[n].element)
        expect = layers[n - 1].element
        for g, c in lower.items():
            if c != expect[g]:
                raise CompatibilityViolation(n, g, c, expect[g])


def build_distribution(p: int, n_max: int, chi=None, k: int = 2, S=None, *,
                       require_p: bool = True) -> ZetaDistribution:
    """All layers 0..n_max, with exact tower compatibility verified."""
    chi = _as_char(chi)
    S = frozenset({p} if S is None else S)
    layers = [equivariant_l(p, n, chi, k, S, require_p=require_p) for n in range(n_max + 1)]
    check_compatibility(layers)
    return ZetaDistribution(p, chi, k, S, layers)


# ---------------------------------------------------------------------------
# regularization


def default_regularizer(p: int, chi: DirichletChar | None = None) -> int:
    """Smallest c > 1 generating (Z/p^2)^* and prime to the conductor of chi."""
    f = 1 if chi is None else chi.conductor
    for c in range(2, p * p * max(f, 1) + 2):
        if gcd(c, p * f) != 1:
            continue
        r = c % (p * p)
        if all(pow(r, (p * (p - 1)) // q, p * p) != 1 for q in _prime_factors(p * (p - 1))):
            return c
    raise ValueError("no regularizer found")


def _prime_factors(n):
    from .exactnum import factorize
    return list(factorize(n))


def embed_padic(c, p: int, N: int) -> PadicInt:
    """Image of a rational or of an element of Q(zeta_K), K | p-1, in Z_p.

    zeta_(p-1) goes to the Teichmueller lift of the smallest primitive root
    mod p.  Raises NotIntegral (witness None) for non-integral images and
    EmbeddingUnavailable when K does not divide p-1.
    """
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        if c.denominator % p == 0:
            raise NotIntegral(None, c)
        return from_rational(c, p, N)
    K = c.order
    if (p - 1) % K:
        raise EmbeddingUnavailable(f"zeta_{K} does not lie in Q_{p}")
    den = 1
    for a in c.coeffs:
        den = lcm(den, a.denominator)
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    w = teichmuller(primitive_root(p), p, N + e).residue
    w = pow(w, (p - 1) // K, p ** (N + e))
    m = p ** (N + e)
    total = 0
    for i, a in enumerate(c.coeffs):
        if a:
            total += (a * den * p**e).numerator * pow(w, i, m)
    total %= m
    if total % p**e:
        raise NotIntegral(None, c)
    return PadicInt(total // p**e * pow(den, -1, p**N), p, N)


@dataclass
class RegularizedPair:
    p: int
    c: int
    k: int
    N: int
    chi: DirichletChar
    S: frozenset
    f_exact: list  # GroupRingElem over Q (or Q(chi)), one per layer
    f: list  # GroupRingElem over Z_p
    g: list  # GroupRingElem over Z_p
    embedding: dict

    @property
    def n_max(self) -> int:
        return len(self.f) - 1


def regularizer_element(layer: TowerLayer, c: int, k: int, N: int | None = None):
    """g_n = 1 - c^k sigma_c, over Q or (with N) over Z_p."""
    sc = layer.artin(c)
    if N is None:
        one, coef = Fraction(1), Fraction(-(c**k))
        zero = Fraction(0)
    else:
        one, coef = PadicInt(1, layer.p, N), PadicInt(-(c**k), layer.p, N)
        zero = PadicInt(0, layer.p, N)
    cs = [zero] * layer.order
    cs[layer.index(0, 0)] = one
    cs[layer.index(*sc)] = cs[layer.index(*sc)] + coef
    return GroupRingElem(layer, cs)


def regularize(d: ZetaDistribution, c: int | None = None, N: int = 8) -> RegularizedPair:
    """Pseudo-measure form: f_n = (1 - c^k sigma_c) x_n, g_n = 1 - c^k sigma_c.

    f_n is built in the rho-picture (components multiplied by 1 - c^k rho(c))
    and recomposed, then every coefficient is checked to be p-integral and
    embedded in Z_p at precision N.
    """
    p, k, chi = d.p, d.k, d.chi
    if c is None:
        c = default_regularizer(p, chi)
    if c <= 1 or gcd(c, p * chi.conductor) != 1:
        raise ValueError(f"regularizer c = {c} must be > 1 and prime to p * conductor")
    if (p - 1) % chi.order and not chi.is_rational():
        raise EmbeddingUnavailable(f"values of order {chi.order} do not embed in Z_{p}")
    f_exact, f_p, g_p = [], [], []
    for lay in d.layers:
        L = lay.layer
        sc = L.artin(c)
        ck = c**k
        comps = {}
        for rho, v in lay.components.items():
            N_ = L.order
            e = rho.exponent(sc)  # in units of zeta_N
            # rho(c) inside the field of v: zeta_N^e = zeta_{v.order}^(e * v.order / N)
            if (e * v.order) % N_:
                raise ValueError("component field too small for rho(sigma_c)")
            comps[rho] = v - v.times_root(e * v.order // N_, ck)
        if lay.orbit_form:
            fe = compose_from_orbits(L, comps)
        else:
            fe = rho_compose(L, comps)
        fp = []
        for gidx, coef in enumerate(fe.coeffs):
            try:
                fp.append(embed_padic(coef, p, N))
            except NotIntegral:
                raise NotIntegral(L.pair(gidx), coef) from None
        f_exact.append(fe)
        f_p.append(GroupRingElem(L, fp))
        g_p.append(regularizer_element(L, c, k, N))
    emb = {"zeta_(p-1)": teichmuller(primitive_root(p), p, N).residue,
           "root": primitive_root(p)}
    return RegularizedPair(p, c, k, N, chi, d.S, f_exact, f_p, g_p, emb)


# ---------------------------------------------------------------------------
# export format


def _fmt(c):
    if isinstance(c, PadicInt):
        return c.residue
    if isinstance(c, CycloElem):
        return [str(a) for a in c.coeffs]
    return str(c)


def export_distribution(obj, c: int | None = None, N: int | None = None) -> str:
    """JSON text: header {p, n, k, S, chi, c, N} and per-layer (i, j, coefficient) entries.

    Accepts a ZetaDistribution (exact rationals) or a RegularizedPair
    (p-adic residues of f_n).
    """
    if isinstance(obj, RegularizedPair):
        layers = obj.f
        header = {"p": obj.p, "n": obj.n_max, "k": obj.k, "S": sorted(obj.S),
                  "chi": obj.chi.serialize(), "c": obj.c, "N": obj.N, "kind": "padic"}
    else:
        layers = [lay.element for lay in obj.layers]
        header = {"p": obj.p, "n": obj.n_max, "k": obj.k, "S": sorted(obj.S),
                  "chi": obj.chi.serialize(), "c": c, "N": N, "kind": "exact"}
    body = []
    for n, x in enumerate(layers):
        body.append({"n": n, "entries": [[i, j, _fmt(v)] for (i, j), v in x.items()]})
    return json.dumps({"header": header, "layers": body}, sort_keys=True)


def load_distribution(text: str) -> tuple[dict, list]:
    """Parse :func:`export_distribution` output into (header, [GroupRingElem])."""
    doc = json.loads(text)
    h = doc["header"]
    p = h["p"]
    out = []
    for lay in doc["layers"]:
        L = TowerLayer.get(p, lay["n"])
        cs = [None] * L.order
        for i, j, v in lay["entries"]:
            if h["kind"] == "padic":
                cs[L.index(i, j)] = PadicInt(int(v), p, h["N"])
            elif isinstance(v, list):
                raise ValueError("cyclotomic coefficients need the order of chi")
            else:
                cs[L.index(i, j)] = Fraction(v)
        out.append(GroupRingElem(L, cs))
    return h, out
