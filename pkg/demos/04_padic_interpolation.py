"""
Kubota-Leopoldt interpolation
=============================

The Mellin transform of the regularized pair gives branch series F, G in
Z_p[[T]].  F/G at t = (1+p)^(k-k0) - 1 reproduces zeta(1-k)
with the Euler factor at p removed.
"""
from zetadist.iwasawa import Branch, evaluate, mellin
from zetadist.lfunc import DirichletChar, euler_strip, l_value
from zetadist.padic import PadicInt
from zetadist.zeta_tower import build_distribution, embed_padic, regularize

p, n_max, k0, N = 5, 3, 12, 8
triv = DirichletChar.trivial()
pair = regularize(build_distribution(p, n_max, triv, k0), None, N)

for k in (2, 6, 22):
    i = (k - k0) % (p - 1)
    F, G = mellin(pair, Branch(p, i), N=N, M_cap=60)
    t = PadicInt(pow(1 + p, k - k0, p**N) - 1, p, N)
    lhs = evaluate(F, t) * evaluate(G, t).inverse()
    rhs = embed_padic(euler_strip(l_value(triv, k), {p}).value, p, N)
    # F/G is certified to n_max + 1 + v_p(k - k0) digits
    print(f"k={k:2d} branch {i}: F/G = {lhs}   stripped zeta(1-k) = {rhs}")
