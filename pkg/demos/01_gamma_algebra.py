"""Dirac matrices in the standard representation and the nilpotent combination
gamma = g0 + i g1 g2 g3 that defines the degeneracy condition."""

import numpy as np

from degdirac.gamma import GAMMA_DEG, GAMMAS, IDENTITY, METRIC, anticommutator

for mu in range(4):
    for nu in range(mu, 4):
        ok = np.array_equal(anticommutator(GAMMAS[mu], GAMMAS[nu]), 2 * METRIC[mu, nu] * IDENTITY)
        print(f"{{g{mu}, g{nu}}} = {2 * METRIC[mu, nu]:+.0f} I : {ok}")

print("\ngamma =")
print(GAMMA_DEG)
print("gamma @ gamma is the zero matrix:", not (GAMMA_DEG @ GAMMA_DEG).any())
# a nilpotent matrix has a nontrivial kernel; spinors with Psi^+ gamma Psi = 0 live near it
print("rank of gamma:", np.linalg.matrix_rank(GAMMA_DEG))
