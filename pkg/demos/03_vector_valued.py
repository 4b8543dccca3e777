"""
Vector-valued forms
===================

A holomorphic form with values in degree-s polynomials of X, Y_1..Y_h
splits into scalar forms of weights k, k+1, ..., k+s.
"""

from jacobi_nh import FourierPoly, HalfIntSymMatrix, NearlyHoloElt, depth, holo_section, vv_assemble, vv_decompose
from jacobi_nh.randomdata import random_holomorphic_vs

m = HalfIntSymMatrix([[3]])

# h = 1, s = 1: the section is chi Y + m^-1 d_z(chi) X
chi = FourierPoly(1, {(1, (2,)): 1})
print("section of chi:", holo_section([chi], 3, 1, m).pretty())

# h = 1, s = 2: three scalar pieces of multiplicity one each
phi = random_holomorphic_vs(4, 2, m, seed=1)
t = vv_decompose(phi)
print("counts :", t.counts(), "weights:", t.weights())
print("inverse:", vv_assemble(t) == phi)

# h = 2, s = 2: multiplicities 3, 2, 1
m2 = HalfIntSymMatrix([[2, 0], [0, 1]])
phi = random_holomorphic_vs(5, 2, m2, seed=2)
t = vv_decompose(phi)
print("counts :", t.counts())

# Depth of a vector-valued function: the X^j coefficient may carry degree d + j.
m1 = HalfIntSymMatrix([[1]])
ex = NearlyHoloElt(4, m1, {
    ((2,), 0, 0, (0,), (2, 0)): 1,
    ((0,), 1, 0, (0,), (2, 0)): 1,
    ((1,), 0, 0, (0,), (1, 1)): 1,
    ((0,), 0, 0, (0,), (0, 2)): 1,
}, s=2)
print("depth((a^2 + b) X^2 + a X Y + Y^2) =", depth(ex))
