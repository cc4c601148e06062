"""
Equivariant L-elements on a layer of the cyclotomic tower
=========================================================

The element of Q[G_n], G_n = (Z/p^(n+1))^*, whose rho-components are the
Euler-stripped L-values L_S(rho chi, 1-k).
"""
from zetadist.groupring import TowerLayer, rho_compose, rho_decompose
from zetadist.lfunc import DirichletChar
from zetadist.zeta_tower import equivariant_l

triv = DirichletChar.trivial()

# the smallest case: p = 3, n = 0, k = 2 gives (1 + sigma)/12
e = equivariant_l(3, 0, triv, 2, {3})
print(e.element)

# components and the inverse transform
layer = TowerLayer.get(5, 1)
x = equivariant_l(5, 1, triv, 2, {5}).element
comps = rho_decompose(x)
for rho, v in list(comps.items())[:6]:
    print(rho, v)
assert rho_compose(layer, comps) == x
