"""Bound-state spectra of screened Coulomb potentials on a mapped Gauss-Lobatto grid."""
from .critical import CriticalResult, find_critical_screening
from .eigensolver import EigenSolution, eig_symmetric
from .hamiltonian import assemble, second_derivative_matrix
from .mapping import MapParams, RadialGrid, build_grid, map_jacobian, map_to_r
from .potentials import ECSC, GESC, Coulomb, Yukawa, effective_potential, evaluate, format_potential, parse_potential
from .quadrature import LobattoSet, legendre_pair, lobatto_nodes
from .spectrum import (
    BoundState,
    NotConvergedError,
    SolverConfig,
    converge_state,
    count_bound_states,
    reconstruct_wavefunction,
    solve_states,
)

__all__ = [
    "BoundState", "Coulomb", "CriticalResult", "ECSC", "EigenSolution", "GESC", "LobattoSet",
    "MapParams", "NotConvergedError", "RadialGrid", "SolverConfig", "Yukawa", "assemble",
    "build_grid", "converge_state", "count_bound_states", "effective_potential", "eig_symmetric",
    "evaluate", "find_critical_screening", "format_potential", "legendre_pair", "lobatto_nodes",
    "map_jacobian", "map_to_r", "parse_potential", "reconstruct_wavefunction",
    "second_derivative_matrix", "solve_states",
]
