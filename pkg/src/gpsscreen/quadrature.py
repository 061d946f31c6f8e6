"""Legendre polynomials and Gauss-Lobatto-Legendre collocation points."""
from dataclasses import dataclass

import numpy as np

DOMAIN_SLACK = 1e-12
NEWTON_TOL = 1e-15
MAX_NEWTON_STEPS = 100


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


def _check_domain(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0 + DOMAIN_SLACK):
        raise ValueError("Legendre argument outside [-1, 1]")
    return x


def _legendre_two(N, x):
    # Bonnet recurrence; returns P_N(x), P_{N-1}(x)
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, N):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


def legendre_pair(N, x):
    """Return ``(P_N(x), P_N'(x))``.

    ``x`` may be a scalar or an array; scalars come back as floats.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    scalar = np.ndim(x) == 0
    x = np.atleast_1d(_check_domain(x)).astype(float)
    p, p_prev = _legendre_two(N, x)
    dp = np.empty_like(x)
    edge = np.abs(x) >= 1.0
    inner = ~edge
    dp[inner] = N * (x[inner] * p[inner] - p_prev[inner]) / (x[inner] ** 2 - 1.0)
    # P_N'(+-1) = (+-1)^(N+1) N(N+1)/2
    dp[edge] = np.sign(x[edge]) ** (N + 1) * N * (N + 1) / 2.0
    if scalar:
        return float(p[0]), float(dp[0])
    return p, dp


@dataclass(frozen=True)
class LobattoSet:
    """Gauss-Lobatto-Legendre nodes of order N (N+1 points, ascending)."""

    order: int
    nodes: np.ndarray
    legendre_at_nodes: np.ndarray

    @property
    def weights(self):
        N = self.order
        return 2.0 / (N * (N + 1) * self.legendre_at_nodes ** 2)

    def cardinal(self, j, x):
        """Cardinal function g_j evaluated at ``x`` (g_j(x_k) = delta_jk)."""
        N = self.order
        x = np.atleast_1d(np.asarray(x, dtype=float))
        xj = self.nodes[j]
        _, dp = legendre_pair(N, x)
        out = np.empty_like(x)
        hit = x == xj
        d = x[~hit] - xj
        out[~hit] = -(1.0 - x[~hit] ** 2) * dp[~hit] / (N * (N + 1) * self.legendre_at_nodes[j] * d)
        out[hit] = 1.0
        return out

    def interpolate(self, values, x):
        """Evaluate the cardinal expansion sum_j values[j] g_j(x)."""
        N = self.order
        values = np.asarray(values, dtype=float)
        x = np.atleast_1d(np.asarray(x, dtype=float))
        _, dp = legendre_pair(N, x)
        d = x[:, None] - self.nodes[None, :]
        hit = d == 0.0
        d[hit] = 1.0
        G = -((1.0 - x ** 2) * dp)[:, None] / (N * (N + 1) * self.legendre_at_nodes[None, :] * d)
        rows = hit.any(axis=1)
        G[rows] = hit[rows].astype(float)
        return G @ values


def lobatto_nodes(N):
    """Compute the GLL nodes: -1, +1 and the N-1 roots of P_N'.

    Newton iteration on P_N' from Chebyshev-Gauss-Lobatto guesses, using
    P_N'' = (2x P_N' - N(N+1) P_N) / (1 - x^2) from the Legendre equation.
    """
    if N < 2:
        raise ValueError("lobatto_nodes requires N >= 2")
    guess = -np.cos(np.pi * np.arange(1, N) / N)
    x = guess.copy()
    # each root stays within the cell between neighbouring Chebyshev points
    cheb = -np.cos(np.pi * np.arange(N + 1) / N)
    lo, hi = cheb[:-2], cheb[2:]
    done = np.zeros(N - 1, dtype=bool)
    for _ in range(MAX_NEWTON_STEPS):
        p, dp = legendre_pair(N, x)
        d2p = (2.0 * x * dp - N * (N + 1) * p) / (1.0 - x ** 2)
        step = dp / d2p
        trial = x - step
        # bisection-style fallback when Newton leaves the bracket
        bad = (trial <= lo) | (trial >= hi) | ~np.isfinite(trial)
        trial[bad] = 0.5 * (x[bad] + np.where(step[bad] > 0, lo[bad], hi[bad]))
        delta = np.abs(trial - x)
        x = np.where(done, x, trial)
        done |= delta < NEWTON_TOL
        if done.all():
            break
    else:
        raise ConvergenceError(f"Lobatto node Newton iteration did not converge for N={N}")

    # symmetrize: roots of P_N' are antisymmetric about 0
    x = 0.5 * (x - x[::-1])
    if N % 2 == 0:
        x[(N - 1) // 2] = 0.0
    nodes = np.concatenate(([-1.0], x, [1.0]))
    p_nodes, _ = legendre_pair(N, nodes)
    nodes.flags.writeable = False
    p_nodes.flags.writeable = False
    return LobattoSet(order=N, nodes=nodes, legendre_at_nodes=p_nodes)
