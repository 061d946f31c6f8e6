import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gpsscreen.mapping import build_grid, map_jacobian
from gpsscreen.potentials import ECSC, GESC, Coulomb
from gpsscreen.spectrum import (
    BoundState,
    NotConvergedError,
    SolverConfig,
    agreed_decimals,
    converge_state,
    count_bound_states,
    count_nodes,
    eigenvalues,
    is_stable_bound,
    parse_state,
    solve_full,
    solve_states,
    state_label,
    truncate_decimal,
)

DEFAULT = SolverConfig()


def independent_norm(R, grid, samples=200_001):
    """Interpolate R in x and integrate R^2 dr with the trapezoid rule."""
    x = np.linspace(-1.0, 1.0, samples)
    u = grid.lobatto.interpolate(R, x)
    return np.trapezoid(u ** 2 * map_jacobian(x, grid.map), x)


def test_config_defaults_and_validation():
    assert (DEFAULT.N, DEFAULT.alpha, DEFAULT.r_max) == (200, 25.0, 300.0)
    assert DEFAULT.bound_threshold == -1e-12 and DEFAULT.stability_target_digits == 11
    for bad in ({"N": 9}, {"r_max": 0.0}, {"alpha": -1.0}, {"bound_threshold": 0.0}):
        with pytest.raises(ValueError):
            SolverConfig(**bad)
    assert DEFAULT.replace(r_max=1100.0).r_max == 1100.0


def test_coulomb_s_series():
    states = solve_states(DEFAULT, Coulomb(1), 0, 8)
    assert [s.n for s in states] == list(range(1, 9))
    for s in states:
        assert s.energy == pytest.approx(-1 / (2 * s.n ** 2), abs=1e-10)
        assert s.stable_digits is None


def test_max_states_cap_and_empty_result():
    assert len(solve_states(DEFAULT, Coulomb(1), 2, 3)) == 3
    assert solve_states(DEFAULT, ECSC.screened(1.5), 0, 5) == []
    with pytest.raises(ValueError):
        solve_states(DEFAULT, Coulomb(1), 0, 0)


def test_table_examples_on_default_grid():
    e1s = solve_states(DEFAULT, ECSC.screened(0.06), 0, 1)[0].energy
    assert e1s == pytest.approx(-0.44020051029, abs=1e-10)
    e3s = solve_states(DEFAULT, GESC(b=0.02), 0, 3)[2].energy
    assert e3s == pytest.approx(-0.20245702303, abs=1e-10)


def test_hydrogen_1s_wavefunction():
    s = solve_states(DEFAULT, Coulomb(1), 0, 1)[0]
    r, R = s.radii, s.R
    idx = np.flatnonzero((r > 0.05) & (r < 15.0))
    idx = idx[np.linspace(0, len(idx) - 1, 20).astype(int)]
    exact = 2 * r[idx] * np.exp(-r[idx])
    assert np.max(np.abs(R[idx] / exact - 1)) < 1e-7
    assert R[0] == 0.0 and R[-1] == 0.0


def test_node_counts_hydrogen():
    states = solve_states(DEFAULT, Coulomb(1), 0, 4)
    assert [s.node_count() for s in states] == [0, 1, 2, 3]
    assert states[2].node_count() == 2


def test_normalization_ecsc_2p():
    grid = build_grid()
    s = solve_states(DEFAULT, ECSC.screened(0.02), 1, 1)[0]
    assert s.n == 2
    assert abs(independent_norm(s.R, grid) - 1.0) < 1e-8
    w = grid.lobatto.weights * grid.r_prime
    assert abs(np.sum(w * s.R ** 2) - 1.0) < 1e-13


def test_wavefunction_sign_convention():
    grid, sol = solve_full(DEFAULT, Coulomb(1), 1)
    from gpsscreen.spectrum import reconstruct_wavefunction
    for k in range(3):
        R = reconstruct_wavefunction(sol, k, grid)
        lead = np.flatnonzero(np.abs(R) > 1e-3 * np.abs(R).max())[0]
        assert R[lead] > 0


def test_labels():
    assert state_label(10, 9) == "10m"
    assert state_label(9, 7) == "9k"
    assert parse_state("10m") == (10, 9)
    assert parse_state("8k") == (8, 7)
    for bad in ("1p", "3j", "s", "x1s", ""):
        with pytest.raises(ValueError):
            parse_state(bad)


@given(st.integers(1, 30), st.integers(0, 9))
def test_label_round_trip(n_extra, l):
    n = l + n_extra
    assert parse_state(state_label(n, l)) == (n, l)


def test_truncation_not_rounding():
    assert truncate_decimal(-0.4008847746398, 11) == "-0.40088477463"
    assert truncate_decimal(0.129999999999999, 11) == "0.12999999999"
    assert truncate_decimal(-0.5, 11) == "-0.50000000000"
    assert truncate_decimal(-1e-14, 11) == "0.00000000000"
    assert "e" not in truncate_decimal(-2.6e-6, 11)


def test_energy_string_uses_stable_digits():
    s = BoundState(1, 0, -0.123456789987654, np.zeros(3), np.zeros(3), 9, DEFAULT)
    assert s.energy_string == "-0.123456789"


def test_count_nodes_ignores_tails():
    R = np.array([0.0, 1.0, 0.5, -0.5, -1.0, 1e-12, -1e-12, 0.0])
    assert count_nodes(R) == 1


def test_agreed_decimals():
    assert agreed_decimals([0.5, 0.5, 0.5]) == 14
    assert agreed_decimals([-0.5, -0.5 + 3e-12, -0.5]) == 11
    assert agreed_decimals([-1.0, -0.9]) == 1


def test_converge_coulomb_1s():
    s = converge_state(Coulomb(1), 1, 0)
    assert s.stable_digits >= 11
    assert s.energy == pytest.approx(-0.5, abs=1e-12)
    assert s.energy_string == "-0.50000000000"
    assert s.config_used == DEFAULT


def test_converge_near_critical_4d_escalates():
    s = converge_state(ECSC.screened(0.0374), 4, 2)
    assert s.config_used.r_max >= 1100
    assert abs(s.energy - (-0.00000260255)) <= 1e-10
    assert s.node_count() == 1


def test_converge_17s():
    s = converge_state(ECSC.screened(0.0005), 17, 0, DEFAULT.replace(r_max=1100.0))
    assert abs(s.energy - (-0.00123778635)) <= 1e-10
    assert s.node_count() == 16


def test_converge_unbound_raises():
    with pytest.raises(NotConvergedError):
        converge_state(ECSC.screened(0.8), 1, 0)
    with pytest.raises(ValueError):
        converge_state(Coulomb(1), 1, 1)


def test_converge_order_independent_of_cache():
    from gpsscreen.spectrum import _eigenvalues
    first = converge_state(GESC(b=0.05), 3, 1).energy
    _eigenvalues.cache_clear()
    assert converge_state(GESC(b=0.05), 3, 1).energy == first


@pytest.mark.parametrize("delta, expected", [(0.7, 1), (0.2, 1)])
def test_count_bound_states_ecsc(delta, expected):
    assert count_bound_states(ECSC.screened(delta), 0) == expected


def test_count_bound_states_coulomb_saturates():
    assert count_bound_states(Coulomb(1), 0, max_states=8) == 8


def test_pseudo_continuum_filter():
    # near the 2s threshold the default box holds a second level that is box-sensitive
    spec = ECSC.screened(0.1663)
    base = eigenvalues(DEFAULT, spec, 0)
    wider = eigenvalues(DEFAULT.replace(r_max=450.0), spec, 0)
    assert np.count_nonzero(base < DEFAULT.bound_threshold) == 2
    assert count_bound_states(spec, 0) == 1
    assert abs(wider[1] - base[1]) > 1e-6
    assert abs(wider[0] - base[0]) < 1e-10


def test_stability_rule():
    assert is_stable_bound(-0.5, -0.5 + 1e-12, -1e-12)
    assert not is_stable_bound(-1e-5, -1e-5 + 2e-6, -1e-12)
    assert not is_stable_bound(-1e-5, None, -1e-12)
    assert not is_stable_bound(-1e-13, -1e-13, -1e-12)


def _sweep(spec_fn, params, n, l):
    return [converge_state(spec_fn(p), n, l).energy for p in params]


@pytest.mark.parametrize("n, l", [(1, 0), (3, 1), (5, 3)])
def test_monotone_in_delta(n, l):
    E = _sweep(ECSC.screened, np.linspace(0.001, 0.02, 10), n, l)
    assert np.all(np.diff(E) > 0)


@pytest.mark.parametrize("n, l", [(1, 0), (4, 2), (6, 5)])
def test_monotone_in_b(n, l):
    E = _sweep(lambda b: GESC(b=b), np.linspace(0.01, 0.1, 10), n, l)
    assert np.all(np.diff(E) > 0)


@pytest.mark.parametrize("n", [7, 8])
def test_degeneracy_collapse_and_lifting(n):
    small = [converge_state(ECSC.screened(1e-9), n, l).energy for l in range(n)]
    assert np.max(np.abs(np.array(small) + 1 / (2 * n ** 2))) < 1e-8
    spreads = []
    for delta in (0.001, 0.003, 0.006):
        E = [converge_state(ECSC.screened(delta), n, l).energy for l in range(n)]
        spreads.append(max(E) - min(E))
    assert spreads[0] < spreads[1] < spreads[2]
