"""Discrete phase space: periodic spatial grid, truncated velocity lattice,
Maxwellian tables, quadrature and discrete derivatives.

Conventions
-----------
* The spatial domain is the unit torus in 1-3 dimensions (total measure 1).
* Velocity space is the uniform midpoint lattice on [-v_max, v_max]^3,
  flattened C-style to a single axis of length n^3.
* Phase-space arrays carry the flattened velocity index on axis 0 and the
  spatial axes after it, i.e. shape (n_v, nx1[, nx2, nx3]).
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

#: 3-D Maxwellian normalization (2*pi)^(-3/2).
MU0 = (2.0 * math.pi) ** -1.5


def maxwellian(v: np.ndarray) -> np.ndarray:
    """Global Maxwellian mu(v) = (2*pi)^(-3/2) exp(-|v|^2/2) on (N,3) points."""
    return MU0 * np.exp(-0.5 * np.sum(v * v, axis=-1))


def gaussian_moment(i: int) -> float:
    """Exact moment of |v|^i against the unit Maxwellian: 1, 3, 15 for i = 0, 2, 4."""
    table = {0: 1.0, 2: 3.0, 4: 15.0}
    if i not in table:
        raise ValueError(f"gaussian_moment supports i in (0, 2, 4), got {i}")
    return table[i]


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform periodic lattice on the unit torus (1-3 dimensions).

    Nodes along axis a sit at x = i / n_a, i = 0..n_a-1.  Wave numbers carry
    the 2*pi factor so that spectral differentiation of exp(2*pi*i*m*x) is
    exact for resolved integer modes m.
    """

    n_per_dim: tuple[int, ...]
    wave_numbers: tuple[np.ndarray, ...] = field(repr=False, default=())

    def __post_init__(self):
        if not 1 <= len(self.n_per_dim) <= 3:
            raise ValueError("spatial grid supports 1 to 3 dimensions")
        for n in self.n_per_dim:
            if n <= 0 or n % 2 != 0:
                raise ValueError(f"spatial resolution must be positive and even, got {n}")
        if not self.wave_numbers:
            ks = tuple(2.0 * np.pi * np.fft.fftfreq(n, d=1.0 / n) for n in self.n_per_dim)
            object.__setattr__(self, "wave_numbers", ks)

    @property
    def dims(self) -> int:
        return len(self.n_per_dim)

    @property
    def n_total(self) -> int:
        return int(np.prod(self.n_per_dim))

    @property
    def cell_volume(self) -> float:
        return float(np.prod([1.0 / n for n in self.n_per_dim]))

    def axes(self) -> tuple[np.ndarray, ...]:
        """Node coordinates along each axis."""
        return tuple(np.arange(n) / n for n in self.n_per_dim)

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.axes(), indexing="ij"))

    def integrate(self, values: np.ndarray) -> float:
        """Discrete integral over the torus (sum times cell volume)."""
        return float(np.sum(values) * self.cell_volume)


@dataclass(frozen=True)
class VelocityGrid:
    """Uniform midpoint lattice on [-v_max, v_max]^3 with Maxwellian tables.

    The midpoint construction keeps the node set symmetric under v -> -v, so
    quadrature of any odd function vanishes exactly, and all weights are the
    positive constant dv^3.
    """

    v_max: float
    n_per_axis: int
    axis: np.ndarray = field(repr=False)
    nodes: np.ndarray = field(repr=False)      # (n_v, 3)
    weights: np.ndarray = field(repr=False)    # (n_v,)
    mu_table: np.ndarray = field(repr=False)
    sqrt_mu_table: np.ndarray = field(repr=False)
    mass_defect: float

    @property
    def n_total(self) -> int:
        return self.n_per_axis ** 3

    @property
    def dv(self) -> float:
        return 2.0 * self.v_max / self.n_per_axis

    @property
    def speed(self) -> np.ndarray:
        return np.linalg.norm(self.nodes, axis=1)

    def lattice_indices(self) -> np.ndarray:
        """Integer (ix, iy, iz) triplet of every flattened node, shape (n_v, 3)."""
        n = self.n_per_axis
        idx = np.arange(self.n_total)
        return np.stack([idx // (n * n), (idx // n) % n, idx % n], axis=1)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.sum(self.weights * values))


def build_velocity_grid(v_max: float, n: int) -> VelocityGrid:
    """Build the truncated velocity lattice with quadrature and Maxwellian tables.

    Requires v_max > 0 and even n >= 4.  Records the quadrature mass defect
    |sum w mu - 1|, which is dominated by the Gaussian tail outside the box
    and shrinks monotonically as v_max grows.
    """
    if v_max <= 0:
        raise ValueError(f"v_max must be positive, got {v_max}")
    if n < 4 or n % 2 != 0:
        raise ValueError(f"velocity resolution must be even and >= 4, got {n}")
    dv = 2.0 * v_max / n
    axis = -v_max + (np.arange(n) + 0.5) * dv
    vx, vy, vz = np.meshgrid(axis, axis, axis, indexing="ij")
    nodes = np.stack([vx.ravel(), vy.ravel(), vz.ravel()], axis=1)
    weights = np.full(n ** 3, dv ** 3)
    mu = maxwellian(nodes)
    defect = abs(float(np.sum(weights * mu)) - 1.0)
    return VelocityGrid(
        v_max=float(v_max),
        n_per_axis=int(n),
        axis=axis,
        nodes=nodes,
        weights=weights,
        mu_table=mu,
        sqrt_mu_table=np.sqrt(mu),
        mass_defect=defect,
    )


PERTURBATION = "perturbation"
PHYSICAL = "physical"


@dataclass
class PerturbationField:
    """Phase-space unknown: the deviation f (perturbation mode, F = mu + sqrt(mu) f)
    or the full distribution F (physical mode, node-wise nonnegative)."""

    sgrid: SpatialGrid
    vgrid: VelocityGrid
    values: np.ndarray           # (n_v, *n_per_dim)
    mode: str = PERTURBATION

    def __post_init__(self):
        expected = (self.vgrid.n_total,) + self.sgrid.n_per_dim
        if self.values.shape != expected:
            raise ValueError(f"field shape {self.values.shape} != expected {expected}")
        if self.mode not in (PERTURBATION, PHYSICAL):
            raise ValueError(f"unknown mode {self.mode!r}")

    def validate(self):
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field contains non-finite values")
        if self.mode == PHYSICAL and self.values.min() < 0.0:
            j = int(np.argmin(self.values.reshape(self.vgrid.n_total, -1).min(axis=1)))
            raise ValueError(f"physical-mode distribution negative (velocity node {j})")

    def copy(self) -> "PerturbationField":
        return PerturbationField(self.sgrid, self.vgrid, self.values.copy(), self.mode)

    def flat(self) -> np.ndarray:
        """(n_v, n_x_total) view used by collision kernels."""
        return self.values.reshape(self.vgrid.n_total, -1)

    def to_physical(self) -> "PerturbationField":
        if self.mode == PHYSICAL:
            return self.copy()
        mu = self.vgrid.mu_table.reshape((-1,) + (1,) * self.sgrid.dims)
        sq = self.vgrid.sqrt_mu_table.reshape((-1,) + (1,) * self.sgrid.dims)
        return PerturbationField(self.sgrid, self.vgrid, mu + sq * self.values, PHYSICAL)

    def to_perturbation(self) -> "PerturbationField":
        if self.mode == PERTURBATION:
            return self.copy()
        mu = self.vgrid.mu_table.reshape((-1,) + (1,) * self.sgrid.dims)
        sq = self.vgrid.sqrt_mu_table.reshape((-1,) + (1,) * self.sgrid.dims)
        return PerturbationField(self.sgrid, self.vgrid, (self.values - mu) / sq, PERTURBATION)


def spatial_derivative(values: np.ndarray, sgrid: SpatialGrid, axis: int,
                       order: int = 1, x_axes_start: int = 0) -> np.ndarray:
    """Spectral derivative along spatial axis `axis` (exact on resolved modes).

    `x_axes_start` locates the first spatial axis inside `values`, so the same
    routine serves scalar fields (0) and phase-space fields (1).
    """
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    if not 0 <= axis < sgrid.dims:
        raise ValueError(f"spatial axis {axis} out of range for {sgrid.dims}-d grid")
    ax = x_axes_start + axis
    spec = np.fft.fft(values, axis=ax)
    k = sgrid.wave_numbers[axis]
    shape = [1] * values.ndim
    shape[ax] = len(k)
    spec *= (1j * k.reshape(shape)) ** order
    return np.real(np.fft.ifft(spec, axis=ax))


def velocity_derivative(values: np.ndarray, vgrid: VelocityGrid, axis: int,
                        order: int = 1) -> np.ndarray:
    """Finite-difference derivative along velocity axis `axis` (0..2).

    Second-order central differences inside the lattice, second-order
    one-sided stencils at the truncation boundary.  The flattened velocity
    index must be axis 0 of `values`.
    """
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    if not 0 <= axis < 3:
        raise ValueError("velocity axis must be 0, 1 or 2")
    n = vgrid.n_per_axis
    rest = values.shape[1:]
    out = values.reshape((n, n, n) + rest)
    for _ in range(order):
        out = _central_diff(out, axis, vgrid.dv)
    return out.reshape((n ** 3,) + rest)


def _central_diff(arr: np.ndarray, axis: int, h: float) -> np.ndarray:
    arr = np.moveaxis(arr, axis, 0)
    out = np.empty_like(arr)
    out[1:-1] = (arr[2:] - arr[:-2]) / (2.0 * h)
    out[0] = (-3.0 * arr[0] + 4.0 * arr[1] - arr[2]) / (2.0 * h)
    out[-1] = (3.0 * arr[-1] - 4.0 * arr[-2] + arr[-3]) / (2.0 * h)
    return np.moveaxis(out, 0, axis)


def moments_v(values: np.ndarray, vgrid: VelocityGrid,
              weight_tables: list[np.ndarray] | np.ndarray) -> np.ndarray:
    """Velocity-space quadrature moments sum_j w_j psi(v_j) g(x, v_j).

    `weight_tables` holds one table of length n_v per requested moment;
    returns an array of shape (n_moments, *spatial shape).
    """
    tables = np.atleast_2d(np.asarray(weight_tables))
    if tables.shape[1] != vgrid.n_total:
        raise ValueError("weight table length does not match velocity grid")
    flat = values.reshape(vgrid.n_total, -1)
    res = (tables * vgrid.weights) @ flat
    return res.reshape((tables.shape[0],) + values.shape[1:])


def l2x(values: np.ndarray, sgrid: SpatialGrid) -> float:
    """Discrete L^2 norm over the torus."""
    return math.sqrt(float(np.sum(values * values)) * sgrid.cell_volume)


def l2xv(values: np.ndarray, sgrid: SpatialGrid, vgrid: VelocityGrid,
         weight: np.ndarray | None = None) -> float:
    """Discrete L^2 norm over phase space, optionally with a velocity weight."""
    flat = values.reshape(vgrid.n_total, -1)
    wv = vgrid.weights if weight is None else vgrid.weights * weight
    return math.sqrt(float(wv @ np.sum(flat * flat, axis=1)) * sgrid.cell_volume)


def l2v(values: np.ndarray, vgrid: VelocityGrid,
        weight: np.ndarray | None = None) -> float:
    """Discrete L^2 norm in velocity space only."""
    wv = vgrid.weights if weight is None else vgrid.weights * weight
    return math.sqrt(float(wv @ (values * values)))
