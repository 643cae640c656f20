"""Degenerate wave-like solutions of the massive Dirac equation.

Construction of the spinor family, its infinite family of electromagnetic
4-potentials and fields, and numerical checks of the identities they satisfy.
"""

from .fields import Constant, Event, FieldSum, Linear, Sinusoid, ZERO, fd_grad, field_eval, field_grad
from .gamma import GAMMA0, GAMMA1, GAMMA2, GAMMA3, GAMMA_DEG, bilinear_dagger, bilinear_transpose, build_gammas
from .solutions import (DegenerateParams, FourPotential, KappaVector, NoSolution, ParamDegenerate,
                        kappa, kappa_from_bilinears, phase_d, potential_family, potential_general,
                        potential_simplified, resonance_angles, special_spinor, spinor, spinor_gradient,
                        validate_params, zero_potential_h_slope)
from .electromagnetics import (EMField, WaveDescriptor, em_closed, em_constant_s, em_fields, em_from_potential,
                               em_s_fields, poynting, si_convert, wave_descriptor)
from .verify import (VerificationReport, degeneracy_check, dirac_residual, run_suite, spin_closed,
                     spin_expectation, sync_check)

__version__ = "0.1.0"
