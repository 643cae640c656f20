"""Electromagnetic fields of the degenerate potentials, wave descriptors and SI conversion.

Conventions: ``U = a0 / q`` and ``A = -(a1, a2, a3) / q``, with
``E = -grad U - dA/dt`` and ``B = curl A``; fields are in natural units and the
Poynting vector keeps the Gaussian factor ``1 / (4 pi)``.

The closed forms carry an overall ``1/q`` (``1/q**2`` for the Poynting vector);
with the default ``q = 1`` they reduce to the familiar expressions.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy import constants as sc

from .fields import DEFAULT_STEP, ScalarField
from .solutions import EPS_PARAM, _valid, phase_d, potential_family

ELECTRON_MASS_KG = sc.m_e
PROTON_MASS_KG = sc.m_p
MUON_MASS_KG = sc.physical_constants["muon mass"][0]


class DomainError(ValueError):
    pass


class EMField(NamedTuple):
    E: np.ndarray
    B: np.ndarray


class WaveDescriptor(NamedTuple):
    omega_d: float
    k_d: float
    v_ph: float
    f_si: float
    photon_energy_si: float  # eV


def _b_prefactor(p) -> float:
    """4 m^2 cos a cos b csc^2(a-b) csc(a+b) / q."""
    return 4 * p.mass**2 * math.cos(p.alpha) * math.cos(p.beta) / (p.sin_diff**2 * p.sin_sum) / p.charge


def em_closed(p, e) -> EMField:
    p = _valid(p)
    d = phase_d(p, e)
    c, s = math.cos(d), math.sin(d)
    pref = _b_prefactor(p)
    E = pref / p.cos_sum * np.array([-s, c, 0.0])
    B = -pref * np.array([c, s, 0.0])
    return EMField(E, B)


def em_s_fields(p, s_q: ScalarField, e) -> EMField:
    """Fields of the potential difference kappa_mu * s (s_q = s / q)."""
    p = _valid(p)
    m = p.mass
    d = phase_d(p, e)
    sd, cd = math.sin(d), math.cos(d)
    sp, cp = p.sin_sum, p.cos_sum
    csm = 1.0 / p.sin_diff
    sq = s_q.value(e)
    st, sx, sy, sz = s_q.grad(e)
    E = np.array([
        -(2 * m * sq * csm * sd + sp * cd * st + sx),
        2 * m * sq * csm * cd - sp * sd * st - sy,
        -(cp * st + sz),
    ])
    B = np.array([
        -(sp * sd * sz + cp * (2 * m * sq * csm * cd - sy)),
        sp * cd * sz - cp * (2 * m * sq * csm * sd + sx),
        sp * (-cd * sy + sd * sx),
    ])
    return EMField(E, B)


def em_constant_s(p, sigma_q: float, e, as_printed: bool = False) -> EMField:
    """Total fields for a constant s (sigma_q = s / q).

    The magnetic-field bracket uses csc(a-b), which is what the curl of the
    potential gives and what reduces to the s = 0 fields. ``as_printed=True``
    returns the csc^2(a-b) variant for comparison.
    """
    p = _valid(p)
    m = p.mass
    d = phase_d(p, e)
    sd, cd = math.sin(d), math.cos(d)
    csm = 1.0 / p.sin_diff
    cab = math.cos(p.alpha) * math.cos(p.beta)
    e_amp = 2 * m * csm * (2 * m * cab * csm / (p.sin_sum * p.cos_sum) / p.charge + sigma_q)
    b_csc = csm**2 if as_printed else csm
    b_amp = -2 * m * csm * (2 * m * cab * b_csc / p.sin_sum / p.charge + sigma_q * p.cos_sum)
    return EMField(e_amp * np.array([-sd, cd, 0.0]), b_amp * np.array([cd, sd, 0.0]))


def em_fields(p, h: ScalarField, g: ScalarField, s: ScalarField, e) -> EMField:
    """Closed-form fields of the full family potential ``potential_family(p, h, g, s)``.

    A general g enters only through kappa times (dh/dz - g) / cos(a+b), so the
    total is the s = 0 field plus the s-field of the combined scalar.
    """
    p = _valid(p)
    s_total = (s + (h.partial(3) - g) * (1.0 / p.cos_sum)) * (1.0 / p.charge)
    base = em_closed(p, e)
    extra = em_s_fields(p, s_total, e)
    return EMField(base.E + extra.E, base.B + extra.B)


def em_from_potential(p, h, g, s, e, step: float = DEFAULT_STEP) -> EMField:
    """Central-difference E and B from the family potential."""
    p = _valid(p)
    if not step > 0:
        raise ValueError("step must be positive")
    e = np.asarray(e, dtype=float)
    q = p.charge

    def u_and_a(ev):
        b = potential_family(p, h, g, s, ev)
        return b[0] / q, -np.array(b[1:]) / q

    grad_u = np.zeros(3)
    dA = np.zeros((3, 4))  # dA[i, mu] = d A_i / d x^mu
    for mu in range(4):
        de = np.zeros(4)
        de[mu] = step
        up, ap = u_and_a(e + de)
        um, am = u_and_a(e - de)
        dA[:, mu] = (ap - am) / (2 * step)
        if mu:
            grad_u[mu - 1] = (up - um) / (2 * step)
    E = -grad_u - dA[:, 0]
    B = np.array([dA[2, 2] - dA[1, 3], dA[0, 3] - dA[2, 1], dA[1, 1] - dA[0, 2]])
    return EMField(E, B)


def poynting(p, e=None) -> np.ndarray:
    """Closed-form Poynting vector; independent of the event."""
    p = _valid(p)
    m = p.mass
    sz = (4 * m**4 / math.pi) * math.cos(p.alpha) ** 2 * math.cos(p.beta) ** 2 \
        / (p.sin_diff**4 * p.sin_sum**2 * p.cos_sum) / p.charge**2
    return np.array([0.0, 0.0, sz])


def poynting_from_fields(f: EMField) -> np.ndarray:
    return np.cross(f.E, f.B) / (4 * math.pi)


def si_convert(mass_si_kg: float, denom: float, eps: float = EPS_PARAM) -> tuple[float, float]:
    """Return (frequency in Hz, photon energy in eV) for ``4 m c^2 / (h denom)``."""
    if not mass_si_kg > 0:
        raise DomainError(f"mass must be positive, got {mass_si_kg}")
    if not abs(denom) >= eps:
        raise DomainError(f"denominator too close to zero: {denom}")
    f = 4 * mass_si_kg * sc.c**2 / sc.h / denom
    return f, sc.h * abs(f) / sc.eV


def wave_descriptor(p, mass_unit_kg: float = ELECTRON_MASS_KG) -> WaveDescriptor:
    """Angular frequency, wavenumber and phase velocity of the phase d.

    ``mass_unit_kg`` is the SI mass that one natural mass unit stands for;
    ``p.mass`` is measured in it.
    """
    p = _valid(p)
    omega = p.omega_d
    k = p.k_d
    if p.mass > 0:
        f, energy = si_convert(p.mass * mass_unit_kg, p.denom)
    else:
        f, energy = 0.0, 0.0
    return WaveDescriptor(omega, k, 1.0 / p.cos_sum, f, energy)
