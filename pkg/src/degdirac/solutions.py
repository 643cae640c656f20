"""Degenerate wave-like spinors of the massive Dirac equation and their potentials.

The spinor family is

    Psi = c1 exp(i h) (cos a, sin a e^{id}, cos b, sin b e^{id})^T,
    d   = 4 m [t - z cos(a + b)] / (cos 2a - cos 2b),

and it solves ``i g^mu d_mu Psi + a_mu g^mu Psi - m Psi = 0`` for every member
of the family ``b_mu = a_mu + s kappa_mu`` built on :func:`potential_general`.

Sign of a0: the frequently written closed form for a0 carries the opposite
overall sign from the one that solves the equation in the standard
representation. Functions here return the verified sign; pass
``as_printed=True`` to get the opposite-sign variant. With the verified
sign the h-dependence of the potential is exactly the gauge term ``d_mu h``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .fields import ScalarField, Linear
from .gamma import GAMMA0, GAMMA1, GAMMA2, GAMMA3, bilinear_transpose

EPS_PARAM = 1e-9


class ParamDegenerate(ValueError):
    """Angles violate the non-degeneracy constraints on (alpha, beta)."""

    def __init__(self, condition: str, margin: float):
        self.condition = condition
        self.margin = margin
        super().__init__(f"{condition} (margin {margin:.3g})")


class NoSolution(ValueError):
    pass


class FourPotential(NamedTuple):
    a0: float
    a1: float
    a2: float
    a3: float


class KappaVector(NamedTuple):
    k0: float
    k1: float
    k2: float
    k3: float

    def minkowski_norm(self) -> float:
        return self.k0**2 - self.k1**2 - self.k2**2 - self.k3**2


@dataclass(frozen=True)
class DegenerateParams:
    alpha: float
    beta: float
    mass: float = 1.0
    c1: complex = 1.0 + 0.0j
    charge: float = 1.0

    # trig shorthands, computed once per instance
    @cached_property
    def denom(self) -> float:
        """cos 2a - cos 2b."""
        return math.cos(2 * self.alpha) - math.cos(2 * self.beta)

    @cached_property
    def cos_sum(self) -> float:
        return math.cos(self.alpha + self.beta)

    @cached_property
    def sin_sum(self) -> float:
        return math.sin(self.alpha + self.beta)

    @cached_property
    def sin_diff(self) -> float:
        return math.sin(self.alpha - self.beta)

    @cached_property
    def omega_d(self) -> float:
        return 4.0 * self.mass / self.denom

    @cached_property
    def k_d(self) -> float:
        return self.omega_d * self.cos_sum

    def margins(self) -> dict[str, float]:
        return {
            "alpha-beta = n*pi": abs(self.sin_diff),
            "alpha+beta = n*pi + pi/2": abs(self.cos_sum),
            "alpha+beta = n*pi": abs(self.denom),
        }


@dataclass(frozen=True)
class ValidParams(DegenerateParams):
    """Parameters that passed :func:`validate_params`."""

    eps: float = field(default=EPS_PARAM)


def validate_params(p: DegenerateParams, eps: float = EPS_PARAM) -> ValidParams:
    for name in ("alpha", "beta", "mass", "charge"):
        if not math.isfinite(getattr(p, name)):
            raise ValueError(f"{name} must be finite")
    if not cmath.isfinite(complex(p.c1)):
        raise ValueError("c1 must be finite")
    if p.mass < 0:
        raise ValueError("mass must be non-negative")
    if p.charge == 0:
        raise ValueError("charge must be non-zero")
    for cond, margin in p.margins().items():
        if margin < eps:
            raise ParamDegenerate(cond, margin)
    if isinstance(p, ValidParams) and p.eps == eps:
        return p
    return ValidParams(p.alpha, p.beta, p.mass, complex(p.c1), p.charge, eps=eps)


def _valid(p) -> ValidParams:
    return p if isinstance(p, ValidParams) else validate_params(p)


def phase_d(p, e) -> float:
    p = _valid(p)
    return 4.0 * p.mass * (e[0] - e[3] * p.cos_sum) / p.denom


def spinor_column(p, d: float) -> np.ndarray:
    """The column (cos a, sin a e^{id}, cos b, sin b e^{id})."""
    ph = cmath.exp(1j * d)
    return np.array([math.cos(p.alpha), math.sin(p.alpha) * ph, math.cos(p.beta), math.sin(p.beta) * ph])


def spinor(p, h: ScalarField, e) -> np.ndarray:
    p = _valid(p)
    d = phase_d(p, e)
    return p.c1 * cmath.exp(1j * h.value(e)) * spinor_column(p, d)


def spinor_gradient(p, h: ScalarField, e) -> np.ndarray:
    """Analytic derivatives; row ``mu`` is d Psi / d x^mu, shape (4, 4)."""
    p = _valid(p)
    d = phase_d(p, e)
    u = spinor_column(p, d)
    du = np.array([0.0, 1j * u[1], 0.0, 1j * u[3]])
    pref = p.c1 * cmath.exp(1j * h.value(e))
    dh = h.grad(e)
    dd = (p.omega_d, 0.0, 0.0, -p.k_d)
    return np.stack([pref * (1j * dh[mu] * u + dd[mu] * du) for mu in range(4)])


def potential_general(p, h: ScalarField, g: ScalarField, e, as_printed: bool = False) -> FourPotential:
    """Potential for arbitrary real h and g (a3 = g)."""
    p = _valid(p)
    a, b, m = p.alpha, p.beta, p.mass
    dh = h.grad(e)
    gv = g.value(e)
    w = dh.d_z - gv
    d = phase_d(p, e)
    s2a, s2b = math.sin(2 * a), math.sin(2 * b)
    tan_sum = p.sin_sum / p.cos_sum
    a0 = tan_sum * (2 * p.sin_diff * w + (s2a - s2b) * dh.d_t + m * (s2a + s2b)) / p.denom
    if not as_printed:
        a0 = -a0
    a1 = -math.cos(d) / p.cos_sum * (p.sin_sum * w + 2 * m * math.cos(a) * math.cos(b) / p.sin_diff) + dh.d_x
    a2 = 0.5 / (p.sin_diff * p.cos_sum) * math.sin(d) * (p.denom * w - 4 * m * math.cos(a) * math.cos(b)) + dh.d_y
    return FourPotential(a0, a1, a2, gv)


def potential_simplified(p, h: ScalarField, e, as_printed: bool = False) -> FourPotential:
    """Potential with g = dh/dz."""
    p = _valid(p)
    a, b, m = p.alpha, p.beta, p.mass
    dh = h.grad(e)
    d = phase_d(p, e)
    s2a, s2b = math.sin(2 * a), math.sin(2 * b)
    a0 = (p.sin_sum / p.cos_sum) * ((s2a - s2b) * dh.d_t + m * (s2a + s2b)) / p.denom
    if not as_printed:
        a0 = -a0
    amp = -2 * m * math.cos(a) * math.cos(b) / (p.sin_diff * p.cos_sum)
    return FourPotential(a0, amp * math.cos(d) + dh.d_x, amp * math.sin(d) + dh.d_y, dh.d_z)


def kappa(p, e) -> KappaVector:
    p = _valid(p)
    d = phase_d(p, e)
    return KappaVector(1.0, -p.sin_sum * math.cos(d), -p.sin_sum * math.sin(d), -p.cos_sum)


def kappa_from_bilinears(psi) -> KappaVector:
    """kappa from ratios of transpose bilinears; independent of the closed form."""
    den = bilinear_transpose(GAMMA2, psi)
    k1 = -bilinear_transpose(GAMMA0 @ GAMMA1 @ GAMMA2, psi) / den
    k2 = -bilinear_transpose(GAMMA0, psi) / den
    k3 = bilinear_transpose(GAMMA0 @ GAMMA2 @ GAMMA3, psi) / den
    return KappaVector(1.0, k1.real, k2.real, k3.real)


def potential_family(p, h, g, s: ScalarField, e, as_printed: bool = False) -> FourPotential:
    """b_mu = a_mu + s kappa_mu."""
    a = potential_general(p, h, g, e, as_printed=as_printed)
    k = kappa(p, e)
    sv = s.value(e)
    return FourPotential(*(a[i] + sv * k[i] for i in range(4)))


def zero_potential_h_slope(p, eps: float = EPS_PARAM) -> float:
    """dh/dt that, with alpha or beta at pi/2 + n pi and a spatially constant h,
    makes the simplified potential vanish identically."""
    s2a, s2b = math.sin(2 * p.alpha), math.sin(2 * p.beta)
    if abs(s2a - s2b) < eps:
        raise ParamDegenerate("sin 2alpha = sin 2beta", abs(s2a - s2b))
    return -p.mass * (s2a + s2b) / (s2a - s2b)


def special_spinor(p, e, eps: float = 1e-12) -> np.ndarray:
    """Free-space spinor for alpha = pi/2 (+ n pi) or beta = pi/2 (+ n pi).

    Uses h = slope * t with the zero-potential slope, which is +m on the alpha
    branch and -m on the beta branch.
    """
    p = _valid(p)
    on_alpha = abs(math.cos(p.alpha)) <= eps
    on_beta = abs(math.cos(p.beta)) <= eps
    if on_alpha == on_beta:
        raise ValueError("exactly one of alpha, beta must equal pi/2 + n*pi")
    slope = zero_potential_h_slope(p)
    d = phase_d(p, e)
    ph = cmath.exp(1j * d)
    if on_alpha:
        col = [0.0, round(math.sin(p.alpha)) * ph, math.cos(p.beta), math.sin(p.beta) * ph]
    else:
        col = [math.cos(p.alpha), math.sin(p.alpha) * ph, 0.0, round(math.sin(p.beta)) * ph]
    return p.c1 * cmath.exp(1j * slope * e[0]) * np.array(col)


def zero_potential_h(p) -> Linear:
    return Linear(zero_potential_h_slope(p), 0.0, 0.0, 0.0)


def resonance_angles(n: int, alpha: float, eps: float = EPS_PARAM) -> float:
    """beta in [0, pi/2] with cos 2alpha - cos 2beta = 2/n."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    arg = math.cos(2 * alpha) - 2.0 / n
    if abs(arg) > 1.0 + 1e-12:
        raise NoSolution(f"cos 2beta = {arg:.6g} is outside [-1, 1]")
    beta = 0.5 * math.acos(min(1.0, max(-1.0, arg)))
    validate_params(DegenerateParams(alpha, beta), eps)
    return beta

