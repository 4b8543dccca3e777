"""
Raising and lowering operators
==============================

Build the operators on a small family of nearly holomorphic monomials and
check their commutators exactly.
"""

from fractions import Fraction

from jacobi_nh import HalfIntSymMatrix, NearlyHoloElt, apply_Delta, apply_L, apply_R, commutator_check, commutator_table
from jacobi_nh.maassops import generating_family

# A cogenus 2 index.  Entries off the diagonal may be half-integers.
m = HalfIntSymMatrix([[1, Fraction(1, 2)], [Fraction(1, 2), 2]])

# alpha_1 * beta * e(tau + z_1), weight 6
f = NearlyHoloElt.monomial(6, m, (1, 0), 1, n=1, rv=(1, 0))
print("f        =", f.pretty())
print("R_6 f    =", apply_R(6, f).pretty())
print("L f      =", apply_L(f).pretty())
print("Dt_6 f   =", apply_Delta(6, f).pretty())

# The lowering operator undoes the raising one up to the weight:
# L R_k f - R_{k-2} L f = k f
lhs = apply_L(apply_R(6, f)) - apply_R(4, apply_L(f)).relabel(k=6)
print("[L, R_6] f == 6 f:", lhs == f.scale(6))

# Now the whole table on every monomial alpha^nu beta^r e(...) of degree <= 3.
family = generating_family(2, m, 7, 3)
for name, A, B, expected in commutator_table(2, m):
    print(commutator_check(A, B, expected, family, name))

# With coefficient 1/2 in front of R^J' m^-1 L^J the heat-operator relation breaks.
for name, A, B, expected in commutator_table(2, m, printed_delta=True):
    if name.startswith("[L, Dt_k]"):
        rep = commutator_check(A, B, expected, family, name)
        print(rep)
        print("  first counterexample:", rep.counterexample["input"].pretty())
