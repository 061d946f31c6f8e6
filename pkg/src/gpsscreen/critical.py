"""Critical ECSC screening: the delta at which a state stops being bound."""
from dataclasses import dataclass

from .potentials import ECSC, GESC
from .spectrum import NotConvergedError, SolverConfig, converge_state

BOUND_ENERGY = -1e-10
DELTA_CEILING = 2.0
MIN_TOL = 1e-5


class NoUpperBracketError(ValueError):
    pass


@dataclass(frozen=True)
class CriticalResult:
    n: int
    l: int
    delta_c: float
    bracket_width: float
    energy_at_lower: float

    @property
    def state(self):
        return (self.n, self.l)


def bound_energy(n, l, delta, A=1.0, g=1.0, base=None):
    """Converged energy of (n, l) at screening ``delta``, or None if unbound."""
    try:
        state = converge_state(ECSC(delta1=delta, delta2=delta, A=A, g=g), n, l, base)
    except NotConvergedError:
        return None
    return state.energy if state.energy < BOUND_ENERGY else None


def find_critical_screening(n, l, tol, A=1.0, g=1.0, base=None):
    """Bisect on delta between a bound (delta=0) and an unbound ceiling.

    The returned ``delta_c`` is the bracket midpoint; the state is bound at
    ``delta_c - bracket_width`` and unbound at ``delta_c + bracket_width``.
    """
    if tol < MIN_TOL:
        raise ValueError(f"tol must be >= {MIN_TOL}")
    if n <= l or l < 0:
        raise ValueError("need n > l >= 0")
    base = base or SolverConfig()
    if bound_energy(n, l, DELTA_CEILING, A, g, base) is not None:
        raise NoUpperBracketError(f"state still bound at delta={DELTA_CEILING}")
    lo, hi = 0.0, DELTA_CEILING
    e_lo = bound_energy(n, l, lo, A, g, base)
    if e_lo is None:
        raise NotConvergedError("state not resolved in the unscreened (Coulomb) limit")
    while (hi - lo) / 2 > tol:
        mid = 0.5 * (lo + hi)
        e_mid = bound_energy(n, l, mid, A, g, base)
        if e_mid is None:
            hi = mid
        else:
            lo, e_lo = mid, e_mid
    return CriticalResult(n=n, l=l, delta_c=0.5 * (lo + hi), bracket_width=0.5 * (hi - lo), energy_at_lower=e_lo)


def reject_gesc(spec):
    """GESC binds for every b (its b -> inf limit is -a/r), so no search exists."""
    if isinstance(spec, GESC):
        raise ValueError("critical screening is not defined for the GESC potential")
