"""
Compatible systems and the regularized pseudo-measure
=====================================================

Layers n = 0..n_max project onto each other exactly.  Multiplying by a
regularizer g = 1 - c^k sigma_c makes every coefficient p-integral.
"""
from fractions import Fraction

from zetadist.lfunc import DirichletChar
from zetadist.zeta_tower import build_distribution, equivariant_l, check_compatibility, regularize

triv = DirichletChar.trivial()
d = build_distribution(5, 2, triv, 2)      # raises CompatibilityViolation on a mismatch
print("layers:", [len(x.element.coeffs) for x in d.layers])

pair = regularize(d, None, 8)
for n, f in enumerate(pair.f_exact):
    dens = {Fraction(c).denominator for c in f.coeffs}
    print(f"layer {n}: denominators {sorted(dens)}, divisible by 5: {any(q % 5 == 0 for q in dens)}")

# dropping p from S: the system stays compatible, since the components are
# L-values of primitive characters
layers = [equivariant_l(5, n, triv, 2, set(), require_p=False) for n in range(2)]
check_compatibility(layers)
print("compatible without p in S")
