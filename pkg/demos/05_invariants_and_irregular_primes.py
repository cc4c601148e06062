"""
Iwasawa invariants and irregular primes
=======================================

Weierstrass preparation of each branch series gives (mu, lambda).  For
p = 37 the only nonzero invariant sits on the branch matching B_32.
"""
from zetadist.iwasawa import invariants_of_branch
from zetadist.lfunc import irregular_indices, minus_class_number, ord_p
from zetadist.mcverify import kummer_check

for p in (5, 7, 37):
    invs = [invariants_of_branch(p, i, n_max=1) for i in range(2, p - 2, 2)]
    lam = {inv.branch: (inv.mu, inv.lam) for inv in invs if (inv.mu, inv.lam) != (0, 0)}
    print(f"p={p}: ord_p(h^-) = {ord_p(minus_class_number(p), p)}, nonzero branches {lam or 'none'}")

print("irregular pairs for 37:", irregular_indices(37))
print("Kummer agreement p=59:", kummer_check(59))
