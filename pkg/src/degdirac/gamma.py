"""Dirac matrices in the standard (Dirac) representation and spinor bilinears.

Metric signature is (+, -, -, -). Spinors are complex numpy arrays of shape
(4,), matrices are complex arrays of shape (4, 4).
"""

import numpy as np

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_I2 = np.eye(2, dtype=complex)
_Z2 = np.zeros((2, 2), dtype=complex)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def build_gammas():
    """Return ``(g0, g1, g2, g3, g)`` with ``g = g0 + i g1 g2 g3``.

    All entries are exactly 0, +-1 or +-i.
    """
    g0 = np.block([[_I2, _Z2], [_Z2, -_I2]])
    g1, g2, g3 = (np.block([[_Z2, s], [-s, _Z2]]) for s in PAULI)
    g = g0 + 1j * (g1 @ g2 @ g3)
    for m in (g0, g1, g2, g3, g):
        m.flags.writeable = False
    return g0, g1, g2, g3, g


GAMMA0, GAMMA1, GAMMA2, GAMMA3, GAMMA_DEG = build_gammas()
GAMMAS = (GAMMA0, GAMMA1, GAMMA2, GAMMA3)
IDENTITY = np.eye(4, dtype=complex)

# Hermitian spin generators (i/2 factor applied in spin_expectation)
SIGMA_X = 1j * GAMMA2 @ GAMMA3
SIGMA_Y = 1j * GAMMA3 @ GAMMA1
SIGMA_Z = 1j * GAMMA1 @ GAMMA2


def anticommutator(a, b):
    return a @ b + b @ a


def mat_apply(m, v):
    return np.asarray(m) @ np.asarray(v)


def bilinear_dagger(m, psi):
    """Psi^dagger M Psi."""
    psi = np.asarray(psi)
    return complex(psi.conj() @ (m @ psi))


def bilinear_transpose(m, psi):
    """Psi^T M Psi (no complex conjugation)."""
    psi = np.asarray(psi)
    return complex(psi @ (m @ psi))


def slash(v):
    """Contract a covariant 4-vector with the gamma matrices: v_mu gamma^mu."""
    return sum(v[mu] * GAMMAS[mu] for mu in range(4))
