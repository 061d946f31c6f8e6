"""Symmetric collocation Hamiltonian on the interior grid nodes.

H_ij = -1/2 D_ij + u_i delta_ij with the symmetrized second-derivative
matrix

    D_ij = -2 / (r'_i (x_i - x_j)^2 r'_j)          (i != j)
    D_ii = -N(N+1) / (3 r'_i^2 (1 - x_i^2))

and u_i = l(l+1)/(2 r_i^2) + v(r_i). Endpoints are dropped, which imposes
R(0) = R(r_max) = 0.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .mapping import RadialGrid, build_grid
from .potentials import effective_potential


@dataclass(frozen=True, eq=False)
class HamiltonianMatrix:
    entries: np.ndarray
    grid: RadialGrid
    l: int
    spec: object

    @property
    def dim(self):
        return self.entries.shape[0]


def second_derivative_matrix(grid):
    x = grid.x_inner
    rp = grid.r_prime_inner
    N = grid.N
    diff = x[:, None] - x[None, :]
    np.fill_diagonal(diff, 1.0)
    # (x_i - x_j)^2 and r'_i r'_j are both symmetric, so D is symmetric bitwise
    D = -2.0 / (diff ** 2 * (rp[:, None] * rp[None, :]))
    np.fill_diagonal(D, -N * (N + 1) / (3.0 * rp ** 2 * (1.0 - x ** 2)))
    D.flags.writeable = False
    return D


@lru_cache(maxsize=32)
def _cached_kinetic(N, alpha, r_max):
    grid = build_grid(N, alpha, r_max)
    T = -0.5 * second_derivative_matrix(grid)
    T.flags.writeable = False
    return grid, T


def grid_and_kinetic(N, alpha, r_max):
    """Shared (grid, -D/2) pair; the kinetic part is potential independent."""
    return _cached_kinetic(int(N), float(alpha), float(r_max))


def assemble(grid, spec, l, kinetic=None):
    if l < 0:
        raise ValueError("l must be >= 0")
    if kinetic is None:
        kinetic = -0.5 * second_derivative_matrix(grid)
    H = kinetic.copy()
    u = effective_potential(spec, l, grid.r_inner)
    H[np.diag_indices_from(H)] += u
    return HamiltonianMatrix(entries=H, grid=grid, l=l, spec=spec)
