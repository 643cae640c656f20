"""One spinor, many potentials.

Builds the wave-like spinor at the canonical point and checks that the Dirac
residual vanishes for several members of the potential family b = a + s kappa.
"""

import math

import numpy as np

from degdirac import (DegenerateParams, Sinusoid, ZERO, Constant, dirac_residual, kappa, potential_family,
                      spinor, validate_params)
from degdirac.verify import degeneracy_check

p = validate_params(DegenerateParams(math.pi / 3, math.pi / 12, mass=1.0))
e = np.array([0.4, 0.1, -0.3, 0.7])
psi = spinor(p, ZERO, e)
print("Psi =", np.round(psi, 6))

dag, tr = degeneracy_check(psi)
print(f"Psi^+ gamma Psi = {abs(dag):.2e}   Psi^T g2 Psi = {tr:.6f}")

k = kappa(p, e)
print(f"kappa = {tuple(round(x, 6) for x in k)}, kappa.kappa = {k.minkowski_norm():.1e}")

for s in (ZERO, Constant(2.5), Sinusoid(0.6, 0.4, 0.3, -0.7, 0.2)):
    b = potential_family(p, ZERO, ZERO, s, e)
    _, r = dirac_residual(p, ZERO, ZERO, s, e)
    print(f"s = {s!s:<55} b = {np.round(b, 4)}  residual {r:.1e}")
