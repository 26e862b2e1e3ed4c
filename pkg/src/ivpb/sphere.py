"""Quadrature on the unit sphere for the hard-sphere collision kernel.

Fixed Lebedev node sets of octahedral symmetry (6, 14, 26, 38 and 50 points,
exact for spherical polynomials of degree 3, 5, 7, 9 and 11).  All sets are
antipodally symmetric, which the collision kernels exploit by summing over
half the directions with doubled weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
import math

import numpy as np

FOUR_PI = 4.0 * math.pi

AVAILABLE_ORDERS = (6, 14, 26, 38, 50)
DEFAULT_ORDER = 38


@dataclass(frozen=True)
class SphereQuadrature:
    """Unit-sphere nodes and weights; weights sum to 4*pi."""

    n_nodes: int
    nodes: np.ndarray    # (n, 3) unit vectors
    weights: np.ndarray  # (n,)

    def half_set(self) -> tuple[np.ndarray, np.ndarray]:
        """One direction per antipodal pair, with doubled weights.

        Valid because the collision kernel is invariant under omega -> -omega.
        """
        nodes, weights, seen = [], [], []
        for node, w in zip(self.nodes, self.weights):
            if any(np.allclose(node, -m, atol=1e-14) for m in seen):
                continue
            seen.append(node)
            nodes.append(node)
            weights.append(2.0 * w)
        return np.array(nodes), np.array(weights)


def _axis_nodes() -> np.ndarray:
    out = []
    for a in range(3):
        for s in (1.0, -1.0):
            v = np.zeros(3)
            v[a] = s
            out.append(v)
    return np.array(out)


def _cube_diagonal_nodes() -> np.ndarray:
    return np.array([np.array(s, dtype=float) / math.sqrt(3.0)
                     for s in product((1, -1), repeat=3)])


def _edge_nodes() -> np.ndarray:
    out = []
    r = 1.0 / math.sqrt(2.0)
    for axes in ((0, 1), (0, 2), (1, 2)):
        for s1, s2 in product((1, -1), repeat=2):
            v = np.zeros(3)
            v[axes[0]], v[axes[1]] = s1 * r, s2 * r
            out.append(v)
    return np.array(out)


def _pq0_nodes(p: float, q: float) -> np.ndarray:
    out = []
    for zero_axis in range(3):
        a, b = [ax for ax in range(3) if ax != zero_axis]
        for pp, qq in ((p, q), (q, p)):
            for s1, s2 in product((1, -1), repeat=2):
                v = np.zeros(3)
                v[a], v[b] = s1 * pp, s2 * qq
                out.append(v)
    return np.array(out)


def _llm_nodes(l: float) -> np.ndarray:
    m = math.sqrt(1.0 - 2.0 * l * l)
    out = []
    for m_axis in range(3):
        a, b = [ax for ax in range(3) if ax != m_axis]
        for sm, s1, s2 in product((1, -1), repeat=3):
            v = np.zeros(3)
            v[m_axis], v[a], v[b] = sm * m, s1 * l, s2 * l
            out.append(v)
    return np.array(out)


def _build(order: int) -> SphereQuadrature:
    if order == 6:
        nodes = _axis_nodes()
        w = np.full(6, 1.0 / 6.0)
    elif order == 14:
        nodes = np.vstack([_axis_nodes(), _cube_diagonal_nodes()])
        w = np.concatenate([np.full(6, 1.0 / 15.0), np.full(8, 3.0 / 40.0)])
    elif order == 26:
        nodes = np.vstack([_axis_nodes(), _edge_nodes(), _cube_diagonal_nodes()])
        w = np.concatenate([np.full(6, 1.0 / 21.0), np.full(12, 4.0 / 105.0),
                            np.full(8, 27.0 / 840.0)])
    elif order == 38:
        p = math.sqrt((1.0 - 1.0 / math.sqrt(3.0)) / 2.0)
        q = math.sqrt((1.0 + 1.0 / math.sqrt(3.0)) / 2.0)
        nodes = np.vstack([_axis_nodes(), _cube_diagonal_nodes(), _pq0_nodes(p, q)])
        w = np.concatenate([np.full(6, 1.0 / 105.0), np.full(8, 9.0 / 280.0),
                            np.full(24, 1.0 / 35.0)])
    elif order == 50:
        nodes = np.vstack([_axis_nodes(), _edge_nodes(), _cube_diagonal_nodes(),
                           _llm_nodes(0.3015113445777636)])
        w = np.concatenate([np.full(6, 4.0 / 315.0), np.full(12, 64.0 / 2835.0),
                            np.full(8, 27.0 / 1280.0), np.full(24, 14641.0 / 725760.0)])
    else:
        raise ValueError(f"sphere quadrature has {AVAILABLE_ORDERS} nodes, got {order}")
    return SphereQuadrature(n_nodes=order, nodes=nodes, weights=w * FOUR_PI)


_CACHE: dict[int, SphereQuadrature] = {}


def build_sphere_quadrature(n_nodes: int = DEFAULT_ORDER) -> SphereQuadrature:
    """Return the fixed node set with the requested point count."""
    if n_nodes not in _CACHE:
        _CACHE[n_nodes] = _build(n_nodes)
    return _CACHE[n_nodes]
