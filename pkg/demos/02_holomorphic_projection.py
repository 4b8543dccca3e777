"""
Holomorphic projection of a nearly holomorphic function
=======================================================

Split a depth-2 function into holomorphic pieces and put it back together.
"""

from jacobi_nh import FourierPoly, HalfIntSymMatrix, NearlyHoloElt, holomorphic_part, nh_assemble, nh_decompose
from jacobi_nh.maassops import lr_constant
from jacobi_nh.scalarproj import hypothesis_diagnostic
from jacobi_nh.errors import HypothesisViolated

m = HalfIntSymMatrix([[2]])

# beta * g for a holomorphic g.  L(beta g) = -g and the ladder constant for
# (0; 1) at weight 6 is 6 - 2 - 1/2, so the (0; 1) piece is -2/7 g.
g = FourierPoly(1, {(1, (2,)): 1, (2, (1,)): 3})
f = NearlyHoloElt.from_fourier(g, 6, m, r=1)
dec = nh_decompose(f)
print("c(0;1) at k=6     :", lr_constant((0,), 1, 6, 1, m))
print("g_(0;1)           :", dec.component((0,), 1).coeffs)
print("holomorphic part  :", dec.holomorphic.coeffs)

# A messier input: every alpha^nu beta^r with degree <= 2 gets a few modes.
terms = {}
for (nu, r), c in {((0,), 0): 1, ((1,), 0): 2, ((2,), 0): -1, ((0,), 1): 5}.items():
    terms[(nu, r, 1, (1,), (0, 0))] = c
    terms[(nu, r, 2, (-1,), (0, 0))] = c + 1
f = NearlyHoloElt(6, m, terms)
dec = nh_decompose(f)
print("multiplicities    :", dec.multiplicities())
print("round trip exact  :", nh_assemble(dec) == f)
print("projection        :", holomorphic_part(f).coeffs)

# Below the weight bound the projection does not exist; the diagnostic
# names the ladder constant that vanishes.
low = NearlyHoloElt.monomial(2, m, (0,), 1)
try:
    nh_decompose(low, 2)
except HypothesisViolated as exc:
    print("refused:", exc)
    print("diagnostic:", hypothesis_diagnostic(2, 2, 1))
