"""Electric and magnetic fields of the degenerate potentials.

The closed forms are compared with a finite-difference evaluation of
E = -grad U - dA/dt and B = curl A, and the Poynting flux is checked to be a
constant vector along z.
"""

import math

import numpy as np

from degdirac import DegenerateParams, ZERO, validate_params
from degdirac import electromagnetics as em

p = validate_params(DegenerateParams(math.pi / 3, math.pi / 12, mass=1.0))
rng = np.random.default_rng(1)

print(f"{'t':>6} {'z':>6} {'|E|':>10} {'|B|':>8} {'E.B':>9} {'fd error':>9}")
for t, _, _, z in rng.uniform(-2, 2, size=(5, 4)):
    e = (t, 0.0, 0.0, z)
    f = em.em_closed(p, e)
    num = em.em_from_potential(p, ZERO, ZERO, ZERO, e)
    err = np.linalg.norm(num.E - f.E) + np.linalg.norm(num.B - f.B)
    print(f"{t:6.2f} {z:6.2f} {np.linalg.norm(f.E):10.5f} {np.linalg.norm(f.B):8.5f} {f.E @ f.B:9.1e} {err:9.1e}")

print("\nPoynting vector:", em.poynting(p))
print("from E x B:     ", em.poynting_from_fields(em.em_closed(p, (1.3, 0, 0, -0.4))))

sigma = 1.0
f = em.em_constant_s(p, sigma, (0, 0, 0, 0))
print(f"\nconstant s = {sigma}: E = {f.E}, B = {f.B}")
