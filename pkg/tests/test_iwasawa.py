import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from zetadist.exactnum import bernoulli, bernoulli_poly_eval
from zetadist.groupring import GroupRingElem, TowerLayer
from zetadist.iwasawa import (Branch, CharIdealClass, CoherenceFailure, IwasawaSeries,
                              NotInMaximalIdeal, NotTorsion, PrecisionInsufficient,
                              char_ideal_from_presentation, determinant, evaluate,
                              invariants_of_branch, mellin, parse_matrix, parse_polynomial,
                              read_series, weierstrass, write_series)
from zetadist.padic import PadicInt, from_rational, teichmuller
from zetadist.zeta_tower import build_distribution, default_regularizer, regularize


def padic_layers(p, n_max, build):
    out = []
    for n in range(n_max + 1):
        L = TowerLayer.get(p, n)
        coeffs = [PadicInt(0, p, 8)] * L.order
        for g, c in build(L).items():
            coeffs[L.index(*g)] = PadicInt(c, p, 8)
        out.append(GroupRingElem(L, coeffs))
    return out


def test_mellin_dirac_masses():
    one = mellin(padic_layers(5, 2, lambda L: {(0, 0): 1}), Branch(5, 0))
    assert one.coeffs[0] == 1 and not any(one.coeffs[1:])
    gamma = mellin(padic_layers(5, 2, lambda L: {(0, 1): 1}), Branch(5, 0))
    assert gamma.coeffs[:2] == (1, 1) and not any(gamma.coeffs[2:])
    assert gamma.M == 24 and gamma.level == 2


def test_mellin_of_layer_sum_is_omega_over_T():
    p, n = 3, 2
    layers = padic_layers(p, n, lambda L: {(0, j): p ** (n - L.n) for j in range(L.gamma_order)})
    s = mellin(layers, Branch(p, 0))
    # sum_j (1+T)^j = ((1+T)^(p^n) - 1)/T: not the zero series ...
    assert [c for c in s.coeffs] == [comb(p**n, m + 1) % p**8 for m in range(p**n)]
    assert not s.is_zero()
    # ... but T times it is omega_n, which vanishes modulo the level ideal
    T = IwasawaSeries.polynomial(Branch(p, 0), [0, 1], 8, s.M)
    assert (T * s).is_zero()


def test_mellin_coherence_failure():
    layers = padic_layers(5, 1, lambda L: {(0, 0): 1})
    layers[1] = GroupRingElem(layers[1].layer, [PadicInt(1, 5, 8)] * layers[1].layer.order)
    with pytest.raises(CoherenceFailure):
        mellin(layers, Branch(5, 0))


def test_mellin_is_multiplicative_on_dirac_masses():
    p = 5
    g, h = (1, 2), (3, 4)
    for i in range(p - 1):
        br = Branch(p, i)
        layer_of = lambda pair: (lambda L: {(pair[0], pair[1] % L.gamma_order): 1})
        sg = mellin(padic_layers(p, 2, layer_of(g)), br)
        sh = mellin(padic_layers(p, 2, layer_of(h)), br)
        gh = (g[0] + h[0], g[1] + h[1])
        sgh = mellin(padic_layers(p, 2, layer_of(gh)), br)
        assert sg * sh == sgh


def test_evaluate_examples():
    br = Branch(5, 0)
    s = IwasawaSeries.polynomial(br, [1, 1], 8, 10)
    v = evaluate(s, PadicInt(5, 5, 8))
    assert v.residue == 6 and v.prec == 8
    assert evaluate(IwasawaSeries.constant(br, 0, 8, 10), PadicInt(10, 5, 8)).residue == 0
    with pytest.raises(NotInMaximalIdeal):
        evaluate(s, PadicInt(2, 5, 8))
    gamma = mellin(padic_layers(5, 2, lambda L: {(0, 1): 1}), br)
    for k in (1, 2, 7):
        t = PadicInt(6**k - 1, 5, 8)
        v = evaluate(gamma, t)
        assert v.prec == min(8, 2 + 1)  # level 2, v(t) = 1
        assert v.congruent(PadicInt(6**k, 5, 8))


def test_weierstrass_examples():
    br = Branch(5, 0)
    w = weierstrass(IwasawaSeries.polynomial(br, [3, 7, 1], 8, 20))
    assert (w.mu, w.lam) == (0, 0) and w.distinguished_residues() == (1,)
    w = weierstrass(IwasawaSeries.polynomial(br, [15, 10, 5], 8, 20))
    assert (w.mu, w.lam) == (1, 0)
    w = weierstrass(IwasawaSeries.polynomial(br, [5, 1], 8, 20))
    assert (w.mu, w.lam) == (0, 1)
    assert w.distinguished_residues() == (5, 1)
    assert w.unit.coeffs[0] == 1 and not any(w.unit.coeffs[1:])


def test_weierstrass_precision_errors():
    br = Branch(5, 0)
    with pytest.raises(PrecisionInsufficient):
        weierstrass(IwasawaSeries.constant(br, 0, 6, 5))
    with pytest.raises(PrecisionInsufficient):
        weierstrass(IwasawaSeries.polynomial(br, [5, 5, 1], 6, 2))


def random_weierstrass_case(rng, p):
    mu, lam = rng.randint(0, 2), rng.randint(0, 5)
    N, M = 12, 48
    P = [p * rng.randrange(p ** (N - 1)) for _ in range(lam)] + [1]
    U = [rng.randrange(1, p)] + [rng.randrange(p**N) for _ in range(M)]
    return mu, lam, P, U, N, M


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5]), st.integers(0, 2**32))
def test_weierstrass_reconstruction(p, seed):
    mu, lam, P, U, N, M = random_weierstrass_case(random.Random(seed), p)
    br = Branch(p, 0)
    s = IwasawaSeries.polynomial(br, P, N, M) * IwasawaSeries(br, U, N) * p**mu
    w = weierstrass(s)
    assert (w.mu, w.lam) == (mu, lam)
    q = p**w.N_cert
    assert all((a - b) % q == 0 for a, b in zip(w.distinguished_residues(), P))
    assert all((a - b) % q == 0 for a, b in zip(w.unit.coeffs, U))
    assert w.reconstruct().coeffs[: w.M_cert + 1] == tuple(c % p ** (w.N_cert + mu) for c in s.coeffs[: w.M_cert + 1])


def test_determinant_matches_laplace():
    rng = random.Random(3)

    def laplace(A):
        if len(A) == 1:
            return A[0][0]
        return sum((-1) ** c * A[0][c] * laplace([r[:c] + r[c + 1:] for r in A[1:]]) for c in range(len(A)))

    for n in range(1, 6):
        for _ in range(10):
            A = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            assert determinant(A) == laplace(A)


def poly(br, cs, N=8, M=12):
    return IwasawaSeries.polynomial(br, cs, N, M)


def test_char_ideal_examples():
    br = Branch(5, 0)
    f, g = poly(br, [5, 1]), poly(br, [-5, 0, 1])
    one, zero = poly(br, [1]), poly(br, [0])
    cf = char_ideal_from_presentation([[f]])
    assert cf == CharIdealClass.from_weierstrass(weierstrass(f))
    cfg = char_ideal_from_presentation([[f, zero], [zero, g]])
    assert cfg == CharIdealClass.from_weierstrass(weierstrass(f * g))
    assert (cfg.mu, cfg.lam) == (0, 3)
    uni = char_ideal_from_presentation([[one, f], [zero, one]])
    assert (uni.mu, uni.lam) == (0, 0)
    with pytest.raises(NotTorsion):
        char_ideal_from_presentation([[f, g], [f, g]])


def random_series(rng, br, N, M, deg=3):
    return IwasawaSeries.polynomial(br, [rng.randrange(-30, 30) for _ in range(deg + 1)], N, M)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32))
def test_char_ideal_invariant_under_elementary_operations(seed):
    rng = random.Random(seed)
    br = Branch(5, 0)
    N, M, n = 10, 30, rng.randint(2, 3)
    # diagonal of distinguished-polynomial times unit entries, then scrambled
    diag = [IwasawaSeries.polynomial(br, [5 * rng.randrange(1, 5), 1], N, M)
            * IwasawaSeries.polynomial(br, [rng.randrange(1, 5), rng.randrange(5)], N, M)
            for _ in range(n)]
    zero = IwasawaSeries.constant(br, 0, N, M)
    A = [[diag[i] if i == j else zero for j in range(n)] for i in range(n)]
    base = char_ideal_from_presentation(A)
    for _ in range(6):
        i, j = rng.sample(range(n), 2)
        lam = random_series(rng, br, N, M)
        if rng.random() < 0.5:
            A[i] = [a + lam * b for a, b in zip(A[i], A[j])]
        else:
            for r in A:
                r[i] = r[i] + lam * r[j]
    assert char_ideal_from_presentation(A) == base
    assert (base.mu, base.lam) == (0, n)


def test_invariants_regular_prime():
    for i in (2,):
        inv = invariants_of_branch(5, i, n_max=2)
        assert (inv.mu, inv.lam, inv.pole) == (0, 0, False)
    pole = invariants_of_branch(5, 0, n_max=2)
    assert pole.pole and pole.lam == -1
    with pytest.raises(ValueError):
        invariants_of_branch(5, 1)


def series_mod_p_oracle(p, i, k0, c, degree):
    """Branch series coefficients mod p from the classical partial-zeta sums at layer 1."""
    m = p * p
    x = {}
    for a in range(1, m):
        if a % p:
            x[a] = -Fraction(m) ** (k0 - 1) * bernoulli_poly_eval(k0, Fraction(a, m)) / k0
    # f = (1 - c^k0 sigma_c) x, so f(a) = x(a) - c^k0 x(a / c)
    cinv = pow(c, -1, m)
    f = {a: x[a] - Fraction(c) ** k0 * x[a * cinv % m] for a in x}
    delta = teichmuller(_primroot(p), p, 2).residue
    gamma_coeffs = [0] * p
    for a, v in f.items():
        # a = delta^s (1+p)^j mod p^2
        for s in range(p - 1):
            r = a * pow(delta, -s, m) % m
            if (r - 1) % p == 0:
                j = ((r - 1) // p) % p
                break
        wi = pow(teichmuller(_primroot(p), p, 1).residue, i * s, p)
        gamma_coeffs[j] = (gamma_coeffs[j] + wi * from_rational(v, p, 1).residue) % p
    return [sum(cj * comb(j, d) for j, cj in enumerate(gamma_coeffs)) % p for d in range(degree + 1)]


def _primroot(p):
    from zetadist.lfunc import primitive_root
    return primitive_root(p)


def test_irregular_branch_p37():
    inv = invariants_of_branch(37, 32, n_max=1, N=4)
    assert (inv.mu, inv.lam) == (0, 1)
    oracle = series_mod_p_oracle(37, 32, 36, default_regularizer(37), 2)
    assert oracle[0] == 0 and oracle[1] != 0
    assert inv.f.distinguished_residues()[-1] == 1


def test_p691_constant_term_divisible():
    d = build_distribution(691, 0, None, 12)
    F, G = mellin(regularize(d, None, 3), Branch(691, 0))
    assert F.coeffs[0] % 691 == 0 and G.coeffs[0] % 691 != 0
    with pytest.raises(PrecisionInsufficient):
        weierstrass(F)


@pytest.mark.parametrize("p,i", [(5, 2), (7, 2), (7, 4)])
def test_interpolation_property(p, i):
    for k in range(2, 21):
        if k % (p - 1) != i:
            continue
        k0 = k + 2 * p if k + 2 * p <= 40 else k - 2 * p
        pair = regularize(build_distribution(p, 2, None, k0), None, 8)
        F, G = mellin(pair, Branch(p, (k - k0) % (p - 1)))
        t = PadicInt(pow(1 + p, k - k0, p**8) - 1, p, 8)
        lhs = evaluate(F, t) / evaluate(G, t)
        rhs = (1 - Fraction(p) ** (k - 1)) * (-bernoulli(k) / k)
        assert lhs.prec == 4
        assert lhs == from_rational(rhs, p, lhs.prec)


def test_series_file_round_trip():
    s = mellin(padic_layers(5, 1, lambda L: {(1, 1): 3}), Branch(5, 1))
    s.provenance = "dirac"
    t = read_series(write_series(s))
    assert t == s and t.provenance == "dirac"
    with pytest.raises(ValueError):
        read_series(write_series(s).rsplit("\n", 2)[0])


def test_parse_polynomial_and_matrix(tmp_path):
    assert parse_polynomial("T^2 - 3*T + 1/2") == [Fraction(1, 2), -3, 1]
    assert parse_polynomial("5+T") == [5, 1]
    br = Branch(5, 0)
    (tmp_path / "f.series").write_text(write_series(poly(br, [5, 1], 8, 12)))
    text = "# p=5 branch=0 N=8 M=12\n@f.series ; 0\n0 ; T^2-5\n"
    A = parse_matrix(text, base_dir=tmp_path)
    cls = char_ideal_from_presentation(A)
    assert (cls.mu, cls.lam) == (0, 3)
    with pytest.raises(ValueError):
        parse_matrix("5 ; 1\n")
