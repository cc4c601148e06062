"""
Characteristic ideals and determinant lines
===========================================

char(M) for a torsion module with square presentation A is (det A); it is
invariant under elementary operations.  Finite Z_p-modules have determinant
lines generated by p^(length).
"""
from zetadist.detline import det_finite_module, tensor
from zetadist.iwasawa import Branch, IwasawaSeries, char_ideal_from_presentation

br, N, M = Branch(5, 0), 10, 30
P = IwasawaSeries.polynomial(br, [5, 1], N, M)        # T + 5
U = IwasawaSeries.polynomial(br, [2, 3], N, M)        # a unit
zero = IwasawaSeries.constant(br, 0, N, M)
A = [[P * U, zero], [zero, P]]
print(char_ideal_from_presentation(A))

B = [[A[0][0], A[0][1]], [A[1][0] + A[0][0] * 7, A[1][1] + A[0][1] * 7]]
print("row operation keeps the class:", char_ideal_from_presentation(B) == char_ideal_from_presentation(A))

la, za = det_finite_module([1, 2], 5)
lb, zb = det_finite_module([3], 5)
print("Det(Z/5 + Z/25) x Det(Z/125) = Det of the sum:", tensor(la, lb) == det_finite_module([1, 2, 3], 5)[0])
