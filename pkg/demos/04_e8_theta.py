"""
An E8 theta series
==================

Generate Fourier data from the E8 lattice, save it, and check modularity
numerically.
"""

import os
import tempfile
import time

from jacobi_nh import vv_assemble, vv_decompose
from jacobi_nh.formsio import dump, e8_spec, load, slash_check, delta_covariance_check, standard_generators, theta_series
from jacobi_nh.nhfun import FourierPoly
from jacobi_nh.vvsplit import ComponentTuple

t0 = time.time()
spec = e8_spec((0, 2))  # two adjacent simple roots
phi = theta_series(spec, 10)
print(f"index {phi.m}, weight {phi.k}, {len(phi.coeffs.modes())} modes in {time.time() - t0:.1f}s")
print("c(0, 0) =", phi.coeffs.scalar_coefficient(0, (0, 0)))
# roots orthogonal to both chosen roots: the 72 roots of E6
print("c(1, (0, 0)) =", phi.coeffs.scalar_coefficient(1, (0, 0)))
print("support violations:", phi.violations())

path = os.path.join(tempfile.mkdtemp(), "e8.json")
dump(phi, path)
print("reloaded equal:", load(path, strict=True) == phi)

for name, g in standard_generators(2).items():
    print(slash_check(phi, g, name=name))
print(delta_covariance_check(phi, standard_generators(2)["S"], name="Dt_4 vs S"))

# The theta series as the scalar pieces of a V_1-valued form
empty = FourierPoly(2)
vec = vv_assemble(ComponentTuple(4, 1, phi.m, [[phi.coeffs, phi.coeffs.scale(2)], [empty]]))
print("V_1 form, S check:", slash_check(vec, standard_generators(2)["S"]))
print("parts recovered:", vv_decompose(vec).parts[0][0] == phi.coeffs)
