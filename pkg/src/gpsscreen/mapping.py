"""Algebraic map of [-1, 1] onto [0, r_max] and the resulting radial grid."""
from dataclasses import dataclass

import numpy as np

from .quadrature import LobattoSet, lobatto_nodes


@dataclass(frozen=True)
class MapParams:
    """r(x) = L (1 + x) / (1 - x + alpha), with alpha = 2 L / r_max."""

    alpha: float
    r_max: float

    def __post_init__(self):
        if self.alpha <= 0 or self.r_max <= 0:
            raise ValueError("alpha and r_max must be positive")

    @property
    def L(self):
        return self.alpha * self.r_max / 2.0


def map_to_r(x, p):
    return p.L * (1.0 + x) / (1.0 - x + p.alpha)


def map_jacobian(x, p):
    """dr/dx of :func:`map_to_r`."""
    return p.L * (2.0 + p.alpha) / (1.0 - x + p.alpha) ** 2


@dataclass(frozen=True)
class RadialGrid:
    lobatto: LobattoSet
    map: MapParams
    r: np.ndarray
    r_prime: np.ndarray

    @property
    def N(self):
        return self.lobatto.order

    @property
    def x(self):
        return self.lobatto.nodes

    # interior (Hamiltonian) slices; endpoints carry the Dirichlet conditions
    @property
    def x_inner(self):
        return self.lobatto.nodes[1:-1]

    @property
    def r_inner(self):
        return self.r[1:-1]

    @property
    def r_prime_inner(self):
        return self.r_prime[1:-1]


def build_grid(N=200, alpha=25.0, r_max=300.0):
    if N < 10:
        raise ValueError("build_grid requires N >= 10")
    params = MapParams(alpha=float(alpha), r_max=float(r_max))
    lob = lobatto_nodes(N)
    r = map_to_r(lob.nodes, params)
    rp = map_jacobian(lob.nodes, params)
    r.flags.writeable = False
    rp.flags.writeable = False
    return RadialGrid(lobatto=lob, map=params, r=r, r_prime=rp)
