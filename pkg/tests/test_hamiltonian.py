import numpy as np
import pytest

from gpsscreen.eigensolver import eig_symmetric
from gpsscreen.golden import load_golden
from gpsscreen.hamiltonian import assemble, grid_and_kinetic, second_derivative_matrix
from gpsscreen.mapping import MapParams, RadialGrid, build_grid, map_jacobian, map_to_r
from gpsscreen.potentials import GESC, Coulomb, effective_potential
from gpsscreen.quadrature import lobatto_nodes


def toy_grid(N=6, alpha=4.0, r_max=20.0):
    lob = lobatto_nodes(N)
    p = MapParams(alpha, r_max)
    return RadialGrid(lob, p, map_to_r(lob.nodes, p), map_jacobian(lob.nodes, p))


def scalar_D(grid):
    """Element-by-element second-derivative matrix, written independently."""
    N = grid.N
    x, rp = grid.lobatto.nodes, grid.r_prime
    D = np.zeros((N - 1, N - 1))
    for a, i in enumerate(range(1, N)):
        for b, j in enumerate(range(1, N)):
            if i == j:
                D[a, b] = -N * (N + 1) / (3 * rp[i] ** 2 * (1 - x[i] ** 2))
            else:
                D[a, b] = -2 / (rp[i] * (x[i] - x[j]) ** 2 * rp[j])
    return D


def test_toy_grid_matches_scalar_formula():
    g = toy_grid()
    D = second_derivative_matrix(g)
    np.testing.assert_allclose(D, scalar_D(g), rtol=1e-15, atol=0)


def test_signs_and_symmetry(default_grid):
    D = second_derivative_matrix(default_grid)
    assert D.shape == (199, 199)
    assert np.all(D < 0)
    assert np.array_equal(D, D.T)


def test_assemble_structure(default_grid):
    H = assemble(default_grid, Coulomb(1), 2)
    assert H.dim == 199
    assert np.array_equal(H.entries, H.entries.T)
    D = second_derivative_matrix(default_grid)
    u = effective_potential(Coulomb(1), 2, default_grid.r_inner)
    np.testing.assert_array_equal(np.diag(H.entries), -0.5 * np.diag(D) + u)
    assert np.all(-0.5 * np.diag(D) > 0)


def test_shared_kinetic_matches_fresh(default_grid):
    grid, T = grid_and_kinetic(200, 25.0, 300.0)
    fresh = assemble(default_grid, Coulomb(1), 1).entries
    np.testing.assert_array_equal(assemble(grid, Coulomb(1), 1, T).entries, fresh)


@pytest.mark.parametrize("l, expected", [(0, -0.5), (1, -0.125)])
def test_hydrogen_lowest(default_grid, l, expected):
    values = eig_symmetric(assemble(default_grid, Coulomb(1), l).entries, vectors=False).values
    assert values[0] == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("N", [10, 20, 40])
def test_kinetic_positive_definite(N):
    g = build_grid(N, 25.0, 300.0)
    T = -0.5 * second_derivative_matrix(g)
    assert np.all(np.linalg.eigvalsh(T) > 0)


def _golden_cases():
    seen = {}
    for entry in load_golden():
        seen.setdefault((entry.potential, entry.l), entry.spec)
    # coarse N=100 undershoots the converged value here (collocation is not variational)
    coarse_undershoot = {"gesc:b=0.3", "gesc:b=0.4", "gesc:b=1", "gesc:b=2", "gesc:b=3", "gesc:b=5", "gesc:b=10"}
    for (pot, l), spec in seen.items():
        marks = []
        if l == 0 and pot in coarse_undershoot:
            marks = [pytest.mark.xfail(strict=True, reason="N=100 lies below the converged energy")]
        yield pytest.param(spec, l, id=f"{pot}-l{l}", marks=marks)


def _lowest(N, spec, l):
    grid = build_grid(N, 25.0, 300.0)
    return np.linalg.eigvalsh(assemble(grid, spec, l).entries)[0]


@pytest.mark.parametrize("spec, l", list(_golden_cases()))
def test_refinement_never_raises_ground_state(spec, l):
    assert _lowest(200, spec, l) <= _lowest(100, spec, l) + 1e-12


@pytest.mark.parametrize("b", [0.4, 2.0, 10.0])
def test_coarse_undershoot_is_a_coarse_grid_error(b):
    # N=200 already agrees with N=400, so the raise reflects N=100 error
    spec = GESC(b=b)
    assert abs(_lowest(200, spec, 0) - _lowest(400, spec, 0)) < 1e-8


def test_negative_l_rejected(default_grid):
    with pytest.raises(ValueError):
        assemble(default_grid, Coulomb(1), -1)
