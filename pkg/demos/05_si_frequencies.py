"""Frequencies and photon energies in SI units, and the pair-production resonances
cos 2a - cos 2b = 2/n."""

import math

from degdirac import DegenerateParams, resonance_angles
from degdirac import electromagnetics as em

for name, mass in (("electron", em.ELECTRON_MASS_KG), ("muon", em.MUON_MASS_KG), ("proton", em.PROTON_MASS_KG)):
    f, ev = em.si_convert(mass, 1.0)
    print(f"{name:<9} f = {f:.4e} Hz / (cos 2a - cos 2b)   photon energy {ev / 1e6:10.3f} MeV")

pair = 2 * em.ELECTRON_MASS_KG * em.sc.c**2 / em.sc.eV
alpha = math.pi / 8
print(f"\n2 m_e c^2 = {pair / 1e6:.6f} MeV; alpha = pi/8")
for n in range(1, 6):
    try:
        beta = resonance_angles(n, alpha)
    except ValueError as exc:
        print(f"n = {n}: {type(exc).__name__}: {exc}")
        continue
    wd = em.wave_descriptor(DegenerateParams(alpha, beta))
    print(f"n = {n}: beta = {beta:.6f}, photon energy {wd.photon_energy_si / 1e6:.4f} MeV "
          f"= {wd.photon_energy_si / pair:.4f} pairs")
