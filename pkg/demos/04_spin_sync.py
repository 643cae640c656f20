"""Transverse spin follows the transverse magnetic field.

Both rotate rigidly with the phase d; the angle between them stays at zero
(mod pi) while the relative sign is fixed for a given parameter set.
"""

import math

import numpy as np

from degdirac import DegenerateParams, ZERO, phase_d, spinor, validate_params
from degdirac import electromagnetics as em
from degdirac.verify import spin_expectation, sync_check

p = validate_params(DegenerateParams(math.pi / 3, math.pi / 12, mass=1.0))
for t in np.linspace(0, 1, 6):
    e = (t, 0.0, 0.0, 0.0)
    s = spin_expectation(spinor(p, ZERO, e))
    b = em.em_closed(p, e).B
    angle, kind = sync_check(p, e)
    print(f"d = {phase_d(p, e):+7.3f}  S = ({s.sx:+.4f}, {s.sy:+.4f}, {s.sz:+.4f})  "
          f"B = ({b[0]:+.4f}, {b[1]:+.4f})  {kind}, off by {angle:.1e}")

# the relative sign is -sign(cos(a-b) cos a cos b), so it changes with the parameter point
q = validate_params(DegenerateParams(1.2, -0.6, mass=1.0))
print("\nanother parameter point:", sync_check(q, (0.3, 0, 0, 0.2))[1])
