"""Labeled bound states, wavefunctions and grid-convergence control."""
import dataclasses
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, Decimal
from functools import lru_cache

import numpy as np

from .eigensolver import eig_symmetric
from .hamiltonian import assemble, grid_and_kinetic

# rungs tried after the base configuration fails to stabilise
R_MAX_LADDER = (1100.0, 2400.0, 4800.0)
N_LADDER = (300, 400, 500, 600)
MAX_ESCALATIONS = 8
BOX_DECAY_LENGTHS = 40.0
N_CHECK_INCREMENT = 40
R_MAX_CHECK_FACTOR = 1.5
MIN_ACCEPTED_DIGITS = 8
MAX_REPORTED_DIGITS = 14


class NotConvergedError(RuntimeError):
    """A requested state is unbound or not grid-stable at maximum escalation."""


@dataclass(frozen=True)
class SolverConfig:
    N: int = 200
    alpha: float = 25.0
    r_max: float = 300.0
    bound_threshold: float = -1e-12
    stability_target_digits: int = 11

    def __post_init__(self):
        if self.N < 10:
            raise ValueError("N must be >= 10")
        if self.r_max <= 0 or self.alpha <= 0:
            raise ValueError("alpha and r_max must be positive")
        if self.bound_threshold >= 0:
            raise ValueError("bound_threshold must be negative")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True, eq=False)
class BoundState:
    n: int
    l: int
    energy: float
    radii: np.ndarray
    R: np.ndarray
    stable_digits: int | None
    config_used: SolverConfig

    @property
    def label(self):
        return state_label(self.n, self.l)

    @property
    def energy_string(self):
        """Energy truncated (not rounded) to the stable decimal places."""
        digits = self.stable_digits if self.stable_digits is not None else self.config_used.stability_target_digits
        return truncate_decimal(self.energy, digits)

    def node_count(self):
        return count_nodes(self.R)


L_LETTERS = "spdfghiklm"


def state_label(n, l):
    if l >= len(L_LETTERS):
        raise ValueError(f"no spectroscopic letter for l={l}")
    return f"{n}{L_LETTERS[l]}"


def parse_state(label):
    """'10m' -> (10, 9). Letters follow s,p,d,f,g,h,i,k,l,m (no j)."""
    label = label.strip()
    if len(label) < 2 or not label[:-1].isdigit() or label[-1] not in L_LETTERS:
        raise ValueError(f"bad state label {label!r}")
    n = int(label[:-1])
    l = L_LETTERS.index(label[-1])
    if n <= l:
        raise ValueError(f"state {label!r} needs n > l")
    return n, l


def truncate_decimal(value, digits):
    """Fixed-point string of ``value`` cut (toward zero) at ``digits`` decimals."""
    q = Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_DOWN)
    text = f"{q:.{digits}f}"
    return "0." + "0" * digits if text.lstrip("-") == "0." + "0" * digits else text


def count_nodes(R, rel_cutoff=1e-6):
    """Sign changes of R, ignoring the numerically-zero tails."""
    R = np.asarray(R)
    big = R[np.abs(R) > rel_cutoff * np.max(np.abs(R))]
    return int(np.count_nonzero(np.signbit(big[1:]) != np.signbit(big[:-1])))


@lru_cache(maxsize=4096)
def _eigenvalues(N, alpha, r_max, spec, l):
    grid, T = grid_and_kinetic(N, alpha, r_max)
    values = eig_symmetric(assemble(grid, spec, l, T).entries, vectors=False).values
    values.flags.writeable = False
    return values


def eigenvalues(config, spec, l):
    """Full ascending spectrum of the discretized Hamiltonian (memoized)."""
    return _eigenvalues(config.N, config.alpha, config.r_max, spec, l)


def solve_full(config, spec, l):
    """(grid, EigenSolution) with eigenvectors."""
    grid, T = grid_and_kinetic(config.N, config.alpha, config.r_max)
    return grid, eig_symmetric(assemble(grid, spec, l, T).entries, vectors=True)


def reconstruct_wavefunction(solution, k, grid):
    """R_nl on all grid radii from eigenvector ``k``; normalized, R(0)=R(r_max)=0.

    Inverts chi_i = R(r_i) sqrt(r'_i) / P_N(x_i) and normalizes with the
    Gauss-Lobatto weights times the map Jacobian.
    """
    chi = solution.vectors[:, k]
    pn = grid.lobatto.legendre_at_nodes[1:-1]
    R = np.zeros(grid.N + 1)
    R[1:-1] = chi * pn / np.sqrt(grid.r_prime_inner)
    norm = np.sum(grid.lobatto.weights * grid.r_prime * R ** 2)
    R /= math.sqrt(norm)
    # fix the overall sign: positive at the first appreciable value
    lead = np.flatnonzero(np.abs(R) > 1e-3 * np.max(np.abs(R)))[0]
    if R[lead] < 0:
        R = -R
    return R


def solve_states(config, spec, l, max_states):
    """Bound states of angular momentum ``l`` on a single grid, lowest first.

    The k-th eigenvalue below ``config.bound_threshold`` is labeled n = l+1+k.
    An empty list means no bound states, which is a legitimate outcome.
    """
    if l < 0 or max_states < 1:
        raise ValueError("need l >= 0 and max_states >= 1")
    grid, sol = solve_full(config, spec, l)
    kept = np.flatnonzero(sol.values < config.bound_threshold)[:max_states]
    return [
        BoundState(
            n=l + 1 + k,
            l=l,
            energy=float(sol.values[k]),
            radii=grid.r,
            R=reconstruct_wavefunction(sol, k, grid),
            stable_digits=None,
            config_used=config,
        )
        for k in kept
    ]


def agreed_decimals(energies):
    """Decimal places (a.u.) on which all ``energies`` agree."""
    spread = max(energies) - min(energies)
    if spread == 0:
        return MAX_REPORTED_DIGITS
    return max(0, min(MAX_REPORTED_DIGITS, math.floor(-math.log10(spread))))


def _next_rung(config, ladder, attr):
    current = getattr(config, attr)
    for value in ladder:
        if value > current:
            return config.replace(**{attr: value})
    return None


def _escalate(config, energies):
    """Refine the box or the collocation order, whichever can be limiting.

    A state decaying like exp(-kappa r) cannot feel the box once
    kappa * r_max is large, so its residual error is a resolution error.
    Growing r_max at fixed N also coarsens the small-r spacing, which is
    why the r_max check alone cannot tell the two apart.
    """
    more_n = _next_rung(config, N_LADDER, "N")
    more_r = _next_rung(config, R_MAX_LADDER, "r_max")
    if any(e is None for e in energies):
        # a level lost from the box needs room, not resolution
        return more_r
    kappa = math.sqrt(-2.0 * energies[0])
    if kappa * config.r_max < BOX_DECAY_LENGTHS:
        return more_r or more_n
    return more_n or more_r


def _target_energy(config, spec, l, k):
    values = eigenvalues(config, spec, l)
    if k < len(values) and values[k] < config.bound_threshold:
        return float(values[k])
    return None


def stability_probe(spec, n, l, config):
    """Energies of state (n, l) at config, N+40 and 1.5 r_max (None if unbound)."""
    k = n - l - 1
    probes = (
        config,
        config.replace(N=config.N + N_CHECK_INCREMENT),
        config.replace(r_max=R_MAX_CHECK_FACTOR * config.r_max),
    )
    return [_target_energy(c, spec, l, k) for c in probes]


def converge_state(spec, n, l, base=None):
    """Solve state (n, l) on successively refined grids until grid-stable.

    At each step the energy is compared across the current config, N+40
    and 1.5 r_max. If fewer than ``stability_target_digits`` decimals agree,
    r_max climbs the ladder 1100, 2400, 4800 or N climbs 300 ... 600,
    whichever the energy is more sensitive to. The best step with at least
    8 agreed decimals is returned; otherwise NotConvergedError is raised.
    """
    if n <= l or l < 0:
        raise ValueError("need n > l >= 0")
    base = base or SolverConfig()
    best = None
    config = base
    for _ in range(MAX_ESCALATIONS + 1):
        energies = stability_probe(spec, n, l, config)
        if all(e is not None for e in energies):
            digits = agreed_decimals(energies)
            if best is None or digits > best[1]:
                best = (config, digits)
            if digits >= base.stability_target_digits:
                break
        config = _escalate(config, energies)
        if config is None:
            break
    if best is None or best[1] < MIN_ACCEPTED_DIGITS:
        raise NotConvergedError(f"state {state_label(n, l)} not converged for {spec!r}")
    config, digits = best
    grid, sol = solve_full(config, spec, l)
    k = n - l - 1
    return BoundState(
        n=n,
        l=l,
        energy=float(eigenvalues(config, spec, l)[k]),
        radii=grid.r,
        R=reconstruct_wavefunction(sol, k, grid),
        stable_digits=min(digits, base.stability_target_digits),
        config_used=config,
    )


def is_stable_bound(energy, recheck, threshold):
    """Bound-state filter: stays bound and barely moves when the box grows."""
    if energy >= threshold or recheck is None or recheck >= threshold:
        return False
    shift = abs(recheck - energy)
    return shift <= min(1e-6, 1e-2 * abs(energy))


def count_bound_states(spec, l, config=None, max_states=None):
    """Eigenvalues below threshold that survive a 1.5 r_max re-check.

    Discretization artifacts near zero energy move substantially when the
    box grows; genuine bound states do not.
    """
    config = config or SolverConfig()
    values = eigenvalues(config, spec, l)
    wider = eigenvalues(config.replace(r_max=R_MAX_CHECK_FACTOR * config.r_max), spec, l)
    count = 0
    for k in np.flatnonzero(values < config.bound_threshold):
        recheck = float(wider[k]) if k < len(wider) else None
        if not is_stable_bound(float(values[k]), recheck, config.bound_threshold):
            break
        count += 1
        if max_states is not None and count >= max_states:
            break
    return count
