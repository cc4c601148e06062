"""
Dirichlet L-values at negative integers
=======================================

L(chi, 1-k) = -B_{k,chi}/k is an exact element of Q(chi).  At k = 1 and an
odd quadratic character this recovers the class number of an imaginary
quadratic field.
"""
from zetadist.lfunc import (IMAG_QUADRATIC_FIXTURE, DirichletChar, class_number_formula_check,
                            euler_strip, l_value)

# zeta(1-k) for the first few k; the pole at k = 1 is only crossed for the
# class number identity zeta(0) = -1/2
triv = DirichletChar.trivial()
print("zeta(0) =", l_value(triv, 1, cross_check=True).value)
for k in (2, 4, 6, 12):
    print(f"zeta({1 - k}) =", l_value(triv, k).value)

# L(chi_D, 0) = 2h/w for imaginary quadratic discriminants
for D in sorted(IMAG_QUADRATIC_FIXTURE, reverse=True)[:8]:
    print(D, class_number_formula_check(D))

# removing Euler factors at a finite set S
chi = DirichletChar.parse("chi:5:2:1:4")
v = l_value(chi, 1)
print("L(chi, 0) =", v.value, " stripped at {3, 7}:", euler_strip(v, {3, 7}).value)
