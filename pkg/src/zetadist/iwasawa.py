"""The abelian Iwasawa algebra branch by branch: Z_p[[T]] with gamma = 1 + T.

A :class:`IwasawaSeries` stands for an element of Z_p[[T]] known modulo the
ideal (p^N, T^(M+1)), and, for series coming from layer n of the tower, also
modulo omega_n = (1+T)^(p^n) - 1.  The omega_n part matters: the layer-n
polynomial only pins down coefficient j to about n - log_p(j) digits, and an
evaluation at t only to v(omega_n(t)) = n + v(t) digits.  Every certified
precision below is computed from that ideal.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

from .groupring import GroupRingElem
from .lfunc import DirichletChar, primitive_root
from .padic import PadicInt, from_rational, teichmuller, vp

__all__ = [
    "Branch",
    "IwasawaSeries",
    "WeierstrassData",
    "CharIdealClass",
    "BranchInvariants",
    "PrecisionInsufficient",
    "CoherenceFailure",
    "NotInMaximalIdeal",
    "NotTorsion",
    "mellin",
    "weierstrass",
    "evaluate",
    "determinant",
    "char_ideal_from_presentation",
    "invariants_of_branch",
    "regularized_pair",
    "default_normalization",
    "write_series",
    "read_series",
    "parse_matrix",
]


class PrecisionInsufficient(ArithmeticError):
    pass


class CoherenceFailure(ArithmeticError):
    def __init__(self, n):
        self.n = n
        super().__init__(f"branch polynomial of layer {n} does not project to layer {n - 1}")


class NotInMaximalIdeal(ValueError):
    pass


class NotTorsion(ArithmeticError):
    pass


@dataclass(frozen=True)
class Branch:
    p: int
    i: int

    def __post_init__(self):
        if not 0 <= self.i < self.p - 1:
            raise ValueError(f"branch index must lie in [0, {self.p - 2}]")

    @property
    def parity(self) -> int:
        return -1 if self.i % 2 else 1


def _ilog(j: int, p: int) -> int:
    e = 0
    while j >= p:
        j //= p
        e += 1
    return e


class IwasawaSeries:
    __slots__ = ("branch", "N", "coeffs", "level", "chi", "provenance")

    def __init__(self, branch: Branch, coeffs, N: int, level: int | None = None,
                 chi: str = "chi:1:1:0:1", provenance: str = ""):
        if N < 1:
            raise ValueError("precision must be positive")
        m = branch.p**N
        cs = []
        for c in coeffs:
            if isinstance(c, PadicInt):
                c = c.residue
            elif isinstance(c, Fraction):
                c = from_rational(c, branch.p, N).residue
            cs.append(c % m)
        if not cs:
            raise ValueError("a series needs at least one coefficient")
        self.branch = branch
        self.N = N
        self.coeffs = tuple(cs)
        self.level = level
        self.chi = chi
        self.provenance = provenance

    @property
    def p(self) -> int:
        return self.branch.p

    @property
    def M(self) -> int:
        return len(self.coeffs) - 1

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def coefficient(self, j: int) -> PadicInt:
        return PadicInt(self.coeffs[j], self.p, self.coefficient_precision(j))

    def coefficient_precision(self, j: int) -> int:
        if self.level is None or j == 0:
            return self.N
        return max(0, min(self.N, self.level - _ilog(j, self.p)))

    @classmethod
    def constant(cls, branch, c, N, M=0):
        return cls(branch, [c] + [0] * M, N)

    @classmethod
    def polynomial(cls, branch, coeffs, N, M=None):
        coeffs = list(coeffs)
        M = len(coeffs) - 1 if M is None else M
        if len(coeffs) > M + 1:
            coeffs = coeffs[: M + 1]
        return cls(branch, coeffs + [0] * (M + 1 - len(coeffs)), N)

    def _combine_meta(self, other):
        if self.branch != other.branch:
            raise ValueError("series on different branches")
        lv = [x for x in (self.level, other.level) if x is not None]
        return min(self.N, other.N), min(self.M, other.M), (min(lv) if lv else None)

    def __add__(self, other):
        if not isinstance(other, IwasawaSeries):
            other = IwasawaSeries.constant(self.branch, other, self.N, self.M)
        N, M, lv = self._combine_meta(other)
        return IwasawaSeries(self.branch, [a + b for a, b in zip(self.coeffs[: M + 1], other.coeffs)],
                             N, lv, self.chi)

    __radd__ = __add__

    def __neg__(self):
        return IwasawaSeries(self.branch, [-a for a in self.coeffs], self.N, self.level, self.chi)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, IwasawaSeries):
            if isinstance(other, PadicInt):
                N = min(self.N, other.prec)
                other = other.residue
            else:
                N = self.N
                other = from_rational(Fraction(other), self.p, N).residue
            return IwasawaSeries(self.branch, [a * other for a in self.coeffs], N, self.level, self.chi)
        N, M, lv = self._combine_meta(other)
        out = _mul_trunc(self.coeffs, other.coeffs, M, self.p**N)
        return IwasawaSeries(self.branch, out, N, lv, self.chi)

    __rmul__ = __mul__

    def truncate(self, M: int) -> "IwasawaSeries":
        return IwasawaSeries(self.branch, self.coeffs[: M + 1], self.N, self.level, self.chi, self.provenance)

    def is_zero(self) -> bool:
        return all(c % self.p ** self.coefficient_precision(j) == 0 for j, c in enumerate(self.coeffs))

    def inverse(self) -> "IwasawaSeries":
        if self.coeffs[0] % self.p == 0:
            raise ValueError("constant term is not a unit")
        return IwasawaSeries(self.branch, _inv_trunc(self.coeffs, self.M, self.modulus),
                             self.N, self.level, self.chi)

    def __eq__(self, other):
        if not isinstance(other, IwasawaSeries):
            return NotImplemented
        return (self.branch, self.N, self.coeffs, self.level) == (other.branch, other.N, other.coeffs, other.level)

    def __hash__(self):
        return hash((self.branch, self.N, self.coeffs, self.level))

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.M >= 6 else ""
        lv = f", level={self.level}" if self.level is not None else ""
        return f"IwasawaSeries(p={self.p}, i={self.branch.i}, N={self.N}, M={self.M}{lv}: [{shown}{more}])"


def _mul_trunc(a, b, M, mod):
    out = [0] * (M + 1)
    for i, x in enumerate(a[: M + 1]):
        if x:
            for j, y in enumerate(b[: M + 1 - i]):
                out[i + j] += x * y
    return [c % mod for c in out]


def _inv_trunc(a, M, mod):
    inv0 = pow(a[0], -1, mod)
    out = [0] * (M + 1)
    out[0] = inv0
    for n in range(1, M + 1):
        s = 0
        for j in range(1, min(n, len(a) - 1) + 1):
            s += a[j] * out[n - j]
        out[n] = (-s * inv0) % mod
    return out


# ---------------------------------------------------------------------------
# Mellin transform


def _teich_powers(p: int, N: int, i: int):
    w = teichmuller(primitive_root(p), p, N).residue
    m = p**N
    wi = pow(w, i, m)
    return [pow(wi, a, m) for a in range(p - 1)]


def _branch_coefficients(x: GroupRingElem, i: int, N: int) -> list[int]:
    """c_j = sum_a omega^i(delta^a) x(a, j): the omega^i part as an element of Z_p[Gamma_n]."""
    L = x.layer
    p = L.p
    m = p**N
    pw = _teich_powers(p, N, i)
    out = [0] * L.gamma_order
    for (a, j), c in x.items():
        r = _residue(c, p, N)
        if r:
            out[j] = (out[j] + pw[a] * r) % m
    return out


def _residue(c, p, N) -> int:
    if isinstance(c, PadicInt):
        if c.prec < N:
            raise PrecisionInsufficient(f"coefficient known to {c.prec} < {N} digits")
        return c.residue % p**N
    from .zeta_tower import embed_padic
    return embed_padic(c, p, N).residue


def _gamma_poly_to_T(cs: list[int], M: int, mod: int) -> list[int]:
    """sum_j c_j (1+T)^j expanded in T, degrees 0..M."""
    return [sum(c * comb(j, m) for j, c in enumerate(cs) if c and j >= m) % mod for m in range(M + 1)]


def mellin(data, branch: Branch | int, N: int | None = None, M_cap: int | None = None,
           chi: str | None = None):
    """Branch series of a compatible system of group ring elements.

    ``data`` is a list of GroupRingElem (layers 0..n_max), a ZetaDistribution
    (coefficients must be p-integral) or a RegularizedPair, for which the
    pair (F, G) of series is returned.
    """
    from .zeta_tower import RegularizedPair, ZetaDistribution

    if isinstance(data, RegularizedPair):
        br = branch if isinstance(branch, Branch) else Branch(data.p, branch)
        N = data.N if N is None else N
        prov = f"regularized k={data.k} c={data.c}"
        chi = data.chi.serialize()
        F = mellin(data.f, br, N, M_cap, chi)
        G = mellin(data.g, br, N, M_cap, chi)
        F.provenance, G.provenance = prov + " f", prov + " g"
        return F, G
    if isinstance(data, ZetaDistribution):
        chi = data.chi.serialize()
        data = [lay.element for lay in data.layers]
    layers = list(data)
    if not layers:
        raise ValueError("no layers")
    p = layers[0].layer.p
    br = branch if isinstance(branch, Branch) else Branch(p, branch)
    if N is None:
        N = min(c.prec for c in layers[-1].coeffs if isinstance(c, PadicInt)) \
            if isinstance(layers[-1].coeffs[0], PadicInt) else 8
    m = p**N
    prev = None
    for n, x in enumerate(layers):
        if x.layer.n != n:
            raise ValueError("layers must be given for n = 0, 1, ..., n_max")
        cs = _branch_coefficients(x, br.i, N)
        if prev is not None:
            pushed = [0] * len(prev)
            for j, c in enumerate(cs):
                pushed[j % len(prev)] += c
            if any((a - b) % m for a, b in zip(pushed, prev)):
                raise CoherenceFailure(n)
        prev = cs
    n_max = len(layers) - 1
    M = p**n_max - 1
    if M_cap is not None:
        M = min(M, M_cap)
    coeffs = _gamma_poly_to_T(prev, M, m)
    return IwasawaSeries(br, coeffs, N, level=n_max, chi=chi or "chi:1:1:0:1",
                         provenance=f"mellin n_max={n_max}")


# ---------------------------------------------------------------------------
# evaluation


def evaluate(s: IwasawaSeries, t) -> PadicInt:
    """s(t) for t in pZ_p, with the precision the representing ideal allows."""
    p = s.p
    if isinstance(t, int):
        t = PadicInt(t, p, s.N)
    if t.p != p:
        raise ValueError("prime mismatch")
    v = t.valuation()
    vt = v.value
    if v.exact and vt == 0:
        raise NotInMaximalIdeal(f"{t} is a unit")
    if v.exact and vt < 1:
        raise NotInMaximalIdeal(f"{t} is a unit")
    prec = min(s.N, t.prec, (s.M + 1) * vt)
    if s.level is not None:
        prec = min(prec, s.level + vt)
    m = p**prec
    acc = 0
    for c in reversed(s.coeffs):
        acc = (acc * t.residue + c) % m
    return PadicInt(acc, p, prec)


# ---------------------------------------------------------------------------
# Weierstrass preparation


@dataclass
class WeierstrassData:
    mu: int
    lam: int
    distinguished: list  # PadicInt, degree 0..lam, monic
    unit: IwasawaSeries
    N_cert: int
    M_cert: int

    def distinguished_residues(self) -> tuple:
        return tuple(c.residue for c in self.distinguished)

    def reconstruct(self) -> IwasawaSeries:
        """p^mu * P * U as a series at the certified precision."""
        br = self.unit.branch
        P = IwasawaSeries.polynomial(br, [c.residue for c in self.distinguished], self.N_cert, self.M_cert)
        U = IwasawaSeries(br, self.unit.coeffs[: self.M_cert + 1], self.N_cert)
        prod = P * U
        Nt = self.N_cert + self.mu
        return IwasawaSeries(br, [c * self.unit.p**self.mu for c in prod.coeffs], Nt)


def weierstrass(s: IwasawaSeries) -> WeierstrassData:
    p, M = s.p, s.M
    precs = [s.coefficient_precision(j) for j in range(M + 1)]
    vals: list[int | None] = []
    for j, c in enumerate(s.coeffs):
        c %= p ** precs[j]
        vals.append(vp(c, p) if c else None)
    certified = [v for v in vals if v is not None]
    if not certified:
        raise PrecisionInsufficient("series is indistinguishable from 0")
    mu = min(certified)
    lam = vals.index(mu)
    for j, v in enumerate(vals):
        if v is None and precs[j] <= mu:
            raise PrecisionInsufficient(f"coefficient {j} is only known to {precs[j]} digits")
    if lam >= M:
        raise PrecisionInsufficient(f"lambda = {lam} cannot be separated from the truncation M = {M}")
    N1 = min(precs) - mu
    if lam >= 1:
        N1 = min(N1, max(1, M // lam - 1))
    if N1 < 1:
        raise PrecisionInsufficient("no digits left after removing p^mu")
    q = p**N1
    G = [(c // p**mu) % q for c in s.coeffs]
    V = [1] + [0] * M
    for _ in range(4 * N1 + 8):
        H = _mul_trunc(G, V, M, q)
        hi = H[lam:]
        if hi[0] == 1 and not any(hi[1:]):
            break
        inv = _inv_trunc(hi, M - lam, q)
        V = _mul_trunc(V, inv + [0] * lam, M, q)
    else:
        raise PrecisionInsufficient("Weierstrass iteration did not converge")
    # the unknown tail of s beyond T^M reaches unit coefficient j through 1/P
    # with valuation about (M - lam - j) / lam
    M1 = M - lam * (N1 + 1) if lam else M
    P = [PadicInt(c, p, N1) for c in H[:lam]] + [PadicInt(1, p, N1)]
    U = IwasawaSeries(s.branch, _inv_trunc(V[: M1 + 1], M1, q), N1, chi=s.chi,
                      provenance="weierstrass unit")
    return WeierstrassData(mu, lam, P, U, N1, M1)


@dataclass
class CharIdealClass:
    mu: int
    lam: int
    distinguished: tuple  # residues mod p^N_cert
    p: int
    N_cert: int
    provenance: str = ""

    @classmethod
    def from_weierstrass(cls, w: WeierstrassData, provenance: str = "") -> "CharIdealClass":
        return cls(w.mu, w.lam, w.distinguished_residues(), w.unit.p, w.N_cert, provenance)

    def same_class(self, other: "CharIdealClass") -> bool:
        if (self.p, self.mu, self.lam) != (other.p, other.mu, other.lam):
            return False
        m = self.p ** min(self.N_cert, other.N_cert)
        return all((a - b) % m == 0 for a, b in zip(self.distinguished, other.distinguished))

    def __eq__(self, other):
        if not isinstance(other, CharIdealClass):
            return NotImplemented
        return self.same_class(other)

    __hash__ = None


# ---------------------------------------------------------------------------
# determinants of presentation matrices


def determinant(A):
    """Division-free (Berkowitz) determinant over a commutative ring.

    Entries must support +, -, * ; works over truncated power series where
    elimination with division is unavailable.
    """
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    one = A[0][0] * 0 + 1
    zero = A[0][0] * 0
    vec = [one, -A[0][0]]
    for r in range(1, n):
        R = [A[r][c] for c in range(r)]
        C = [A[c][r] for c in range(r)]
        Msub = [row[:r] for row in A[:r]]
        col = [one, -A[r][r]]
        # -R M^t C for t = 0..r-1
        w = C
        for _ in range(r):
            col.append(-_dot(R, w, zero))
            w = [_dot(Msub[i], w, zero) for i in range(r)]
        # Toeplitz (r+2) x (r+1) times vec
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                if i - j < len(col) and j < len(vec):
                    acc = acc + col[i - j] * vec[j]
            new.append(acc)
        vec = new
    return vec[-1] if n % 2 == 0 else -vec[-1]


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def char_ideal_from_presentation(A, provenance: str = "presentation") -> CharIdealClass:
    """Characteristic ideal of coker(A) for a square matrix A over a branch of Lambda."""
    ref = next((e for row in A for e in row if isinstance(e, IwasawaSeries)), None)
    if ref is None:
        raise ValueError("matrix needs at least one series entry to fix the ring")
    rows = [[e if isinstance(e, IwasawaSeries) else IwasawaSeries.constant(ref.branch, e, ref.N, ref.M)
             for e in row] for row in A]
    det = determinant(rows)
    if all(c == 0 for c in det.coeffs):
        raise NotTorsion("determinant vanishes at working precision")
    return CharIdealClass.from_weierstrass(weierstrass(det), provenance)


# ---------------------------------------------------------------------------
# invariants of the Kubota-Leopoldt branches


@dataclass
class BranchInvariants:
    p: int
    branch: int
    k0: int
    mu: int
    lam: int
    pole: bool
    f: WeierstrassData = field(repr=False)
    g: WeierstrassData = field(repr=False)


def default_normalization(p: int, chi: DirichletChar | None = None) -> int:
    """Base weight k0 = 0 mod p-1 (shifted to keep the critical parity).

    With this choice branch i interpolates the weights k = i mod (p-1).
    """
    odd = chi is not None and chi.parity == -1
    return p if odd else p - 1


@lru_cache(maxsize=32)
def regularized_pair(p: int, n_max: int, chi: str, k0: int, S: frozenset, N: int, c: int | None):
    """Cached build_distribution + regularize; every branch shares one pair."""
    from .zeta_tower import build_distribution, regularize

    return regularize(build_distribution(p, n_max, DirichletChar.parse(chi), k0, S), c, N)


def invariants_of_branch(p: int, i: int, chi=None, k0: int | None = None, n_max: int = 1,
                         N: int = 8, c: int | None = None, S=None,
                         M_cap: int | None = None) -> BranchInvariants:
    """(mu, lambda) of branch omega^i of the regularized zeta distribution.

    When g has a zero on the branch (the pole of the trivial branch), the
    invariants of the quotient f/g are reported: mu_f - mu_g, lambda_f - lambda_g.
    """
    from .zeta_tower import _as_char

    chi = _as_char(chi)
    if k0 is None:
        k0 = default_normalization(p, chi)
    if (-1) ** i * chi.parity != (-1) ** k0:
        raise ValueError(f"branch {i} has the wrong parity for weight {k0}; its series vanishes")
    S = frozenset({p} if S is None else S)
    pair = regularized_pair(p, n_max, chi.serialize(), k0, S, N, c)
    F, G = mellin(pair, Branch(p, i), M_cap=M_cap)
    wf, wg = weierstrass(F), weierstrass(G)
    pole = wg.mu > 0 or wg.lam > 0
    mu, lam = (wf.mu - wg.mu, wf.lam - wg.lam) if pole else (wf.mu, wf.lam)
    return BranchInvariants(p, i, k0, mu, lam, pole, wf, wg)


# ---------------------------------------------------------------------------
# file formats


def write_series(s: IwasawaSeries) -> str:
    header = {"p": s.p, "branch": s.branch.i, "N": s.N, "M": s.M, "chi": s.chi,
              "provenance": s.provenance, "level": s.level}
    return "\n".join([json.dumps(header, sort_keys=True)] + [str(c) for c in s.coeffs]) + "\n"


def read_series(text: str) -> IwasawaSeries:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    h = json.loads(lines[0])
    coeffs = [int(x) for x in lines[1:]]
    if len(coeffs) != h["M"] + 1:
        raise ValueError(f"expected {h['M'] + 1} residues, found {len(coeffs)}")
    return IwasawaSeries(Branch(h["p"], h["branch"]), coeffs, h["N"], h.get("level"),
                         h.get("chi", "chi:1:1:0:1"), h.get("provenance", ""))


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_polynomial(text: str) -> list[Fraction]:
    """Coefficients of a polynomial in T such as ``5 + T`` or ``T^2 - 3*T + 1/2``."""
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty polynomial")
    coeffs: dict[int, Fraction] = {}
    for sign, body in _TERM.findall(text):
        if "T" in body:
            pre, _, post = body.partition("T")
            pre = pre.rstrip("*")
            c = Fraction(pre) if pre else Fraction(1)
            e = int(post[1:]) if post.startswith("^") else (1 if not post else None)
            if e is None:
                raise ValueError(f"cannot parse term {body!r}")
        else:
            c, e = Fraction(body), 0
        coeffs[e] = coeffs.get(e, Fraction(0)) + (-c if sign == "-" else c)
    deg = max(coeffs)
    return [coeffs.get(e, Fraction(0)) for e in range(deg + 1)]


def parse_matrix(text: str, base_dir=None) -> list[list[IwasawaSeries]]:
    """Plain-text presentation matrix.

    Header comment lines ``# p=5 branch=0 N=8 M=12`` fix the ring; each
    further line is a row of ``;``-separated entries, each an inline
    polynomial in T or ``@path`` naming a series file.
    """
    from pathlib import Path

    meta = {}
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            for kv in line[1:].split():
                if "=" in kv:
                    k, v = kv.split("=", 1)
                    meta[k] = int(v)
            continue
        rows.append([e.strip() for e in line.split(";")])
    for key in ("p", "N", "M"):
        if key not in meta:
            raise ValueError(f"matrix header is missing {key}=")
    br = Branch(meta["p"], meta.get("branch", 0))
    out = []
    for row in rows:
        r = []
        for e in row:
            if e.startswith("@"):
                path = Path(e[1:])
                if base_dir is not None and not path.is_absolute():
                    path = Path(base_dir) / path
                s = read_series(path.read_text())
                r.append(IwasawaSeries(br, s.coeffs[: meta["M"] + 1], min(s.N, meta["N"]), s.level))
            else:
                r.append(IwasawaSeries.polynomial(br, parse_polynomial(e), meta["N"], meta["M"]))
        out.append(r)
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return out
