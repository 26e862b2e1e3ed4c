"""Hard-sphere collision machinery.

Assembles the collision frequency nu(v) = int |(v-u).omega| mu(u) du domega,
the dense linearized operator L = nu - K (K = K2 - K1) in the quadrature
basis, and applies the bilinear operator Gamma and the physical-form
gain/loss terms by direct summation.

Post-collision velocities u' = u + [(v-u).omega]omega, v' = v - [(v-u).omega]omega
are evaluated off-lattice; values of the unknown there are obtained by
trilinear interpolation (folded into matrix columns for K), and pairs whose
post-collision points leave the velocity box are dropped and accounted as a
leakage statistic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import os
import struct

import numpy as np

from .grids import VelocityGrid, build_velocity_grid
from .sphere import SphereQuadrature, build_sphere_quadrature
from . import kernels

TABLE_MAGIC = b"IVPBKTAB"
TABLE_VERSION = 1


@dataclass(frozen=True)
class CollisionTables:
    """Immutable precomputed collision operators for one velocity grid."""

    vgrid: VelocityGrid
    sphere: SphereQuadrature
    nu: np.ndarray                # (n_v,)
    k_matrix: np.ndarray          # dense K = K2 - K1, (n_v, n_v)
    loss_kernel: np.ndarray       # angular kernel k[j,i] = sum_m w_m |(v_j-u_i).om|
    assembly_metadata: dict
    direction_classes: dict = field(repr=False, default=None)

    def __post_init__(self):
        if self.direction_classes is None:
            half_nodes, half_w = self.sphere.half_set()
            object.__setattr__(self, "direction_classes",
                               kernels.classify_directions(half_nodes, half_w))


def build_nu_table(vgrid: VelocityGrid, sphere: SphereQuadrature) -> np.ndarray:
    """Collision frequency nu(v_j) = sum_{u,omega} w_u w_omega |(v_j-u).omega| mu(u)."""
    half_nodes, half_w = sphere.half_set()
    lat = vgrid.lattice_indices().astype(np.float64)
    k = kernels.loss_kernel_matrix(lat, half_nodes, half_w, vgrid.n_per_axis, vgrid.dv)
    return k @ (vgrid.weights * vgrid.mu_table)


def build_collision_tables(vgrid: VelocityGrid, sphere: SphereQuadrature,
                           cache_dir: str | None = None) -> CollisionTables:
    """Assemble nu, the dense K matrix and the loss kernel (optionally cached).

    K2 interpolates the Maxwellian-normalized unknown g/sqmu with per-axis
    quadratic stencils and uses sqmu(u')sqmu(v') = sqmu(u)sqmu(v), so the
    five kernel elements of L are annihilated up to leakage and angular
    quadrature error.  The assembled L = diag(nu) - K is made exactly
    self-adjoint in the (uniform-weight) velocity inner product by averaging
    K with its transpose; the removed asymmetry, at interpolation-error
    level, is recorded in the metadata.
    """
    if cache_dir:
        cached = _read_table_cache(cache_dir, vgrid, sphere)
        if cached is not None:
            return cached

    half_nodes, half_w = sphere.half_set()
    lat = vgrid.lattice_indices().astype(np.float64)
    n = vgrid.n_per_axis
    dv = vgrid.dv

    loss_kernel = kernels.loss_kernel_matrix(lat, half_nodes, half_w, n, dv)
    nu = loss_kernel @ (vgrid.weights * vgrid.mu_table)

    pref = vgrid.weights * vgrid.mu_table
    k_matrix, leak, tot = kernels.assemble_k2_ratio(lat, pref, half_nodes, half_w, n, dv)
    sq = vgrid.sqrt_mu_table
    # K2 = diag(sq) R diag(1/sq); then K = K2 - K1 and symmetrize, blockwise
    # to keep peak memory at ~2 matrices for the largest grids.
    k_matrix *= sq[:, None]
    k_matrix /= sq[None, :]
    wsq = vgrid.weights * sq
    nvtot = vgrid.n_total
    block = max(1, (1 << 22) // nvtot)
    for r0 in range(0, nvtot, block):
        r1 = min(r0 + block, nvtot)
        k_matrix[r0:r1] -= sq[r0:r1, None] * (loss_kernel[r0:r1] * wsq[None, :])
    num = 0.0
    den = 0.0
    for r0 in range(0, nvtot, block):
        r1 = min(r0 + block, nvtot)
        diag = k_matrix[r0:r1, r0:r1]
        avg = 0.5 * (diag + diag.T)
        num += float(np.sum((diag - diag.T) ** 2)) / 2.0
        den += float(np.sum(avg * avg))
        k_matrix[r0:r1, r0:r1] = avg
        for c0 in range(r1, nvtot, block):
            c1 = min(c0 + block, nvtot)
            a = k_matrix[r0:r1, c0:c1]
            bt = k_matrix[c0:c1, r0:r1].T
            avg = 0.5 * (a + bt)
            num += float(np.sum((a - bt) ** 2))
            den += 2.0 * float(np.sum(avg * avg))
            k_matrix[r0:r1, c0:c1] = avg
            k_matrix[c0:c1, r0:r1] = avg.T
    asym = (num / den) ** 0.5 if den > 0 else 0.0

    leakage = float(leak.sum() / max(tot.sum(), 1e-300))
    meta = {
        "n_per_axis": n,
        "v_max": vgrid.v_max,
        "sphere_nodes": sphere.n_nodes,
        "leakage_fraction": leakage,
        "asymmetry_removed": asym,
        "mass_defect": vgrid.mass_defect,
    }
    tables = CollisionTables(vgrid=vgrid, sphere=sphere, nu=nu, k_matrix=k_matrix,
                             loss_kernel=loss_kernel, assembly_metadata=meta)
    if cache_dir:
        _write_table_cache(cache_dir, tables)
    return tables


def apply_K(g: np.ndarray, tables: CollisionTables) -> np.ndarray:
    return tables.k_matrix @ g


def apply_L(g: np.ndarray, tables: CollisionTables) -> np.ndarray:
    """L g = nu g - K g (columns = spatial cells when g is 2-D)."""
    nu = tables.nu if g.ndim == 1 else tables.nu[:, None]
    return nu * g - tables.k_matrix @ g


def loss_rate_perturbation(g: np.ndarray, tables: CollisionTables) -> np.ndarray:
    """Rate multiplier of Gamma_loss(g, .): sum_{u,om} w |(v-u).om| sqmu(u) g(u)."""
    v = tables.vgrid
    w = v.weights * v.sqrt_mu_table
    return tables.loss_kernel @ (w[:, None] * g if g.ndim == 2 else w * g)


def gamma_gain(g1: np.ndarray, g2: np.ndarray, tables: CollisionTables) -> np.ndarray:
    """Gain part of the bilinear collision operator (direct summation)."""
    v = tables.vgrid
    a1, a2, squeeze = _as_lanes(g1, g2)
    out = kernels.gain_term(a1, a2, v.weights * v.sqrt_mu_table,
                            tables.direction_classes, v.n_per_axis, v.dv)
    return out[:, 0] if squeeze else out


def gamma(g1: np.ndarray, g2: np.ndarray, tables: CollisionTables) -> np.ndarray:
    """Bilinear operator Gamma(g1, g2) = Gamma_gain - Gamma_loss.

    Gamma_gain evaluates g1(u') g2(v') by trilinear interpolation under the
    sqmu(u)-weighted kernel; Gamma_loss is g2(v) times the linear rate of g1.
    """
    return gamma_gain(g1, g2, tables) - g2 * loss_rate_perturbation(g1, tables)


def physical_collision_terms(f1: np.ndarray, f2: np.ndarray,
                             tables: CollisionTables) -> tuple[np.ndarray, np.ndarray]:
    """Physical-form terms: (Q_gain(F1, F2), loss rate R(F1)).

    Both outputs are node-wise nonnegative for nonnegative inputs; negative
    input values violate the physical-mode contract and raise.
    """
    if np.min(f1) < 0 or np.min(f2) < 0:
        raise ValueError("physical-mode collision terms require nonnegative inputs")
    v = tables.vgrid
    a1, a2, squeeze = _as_lanes(f1, f2)
    q_gain = kernels.gain_term(a1, a2, v.weights.copy(),
                               tables.direction_classes, v.n_per_axis, v.dv)
    loss = tables.loss_kernel @ (v.weights[:, None] * a1)
    if squeeze:
        return q_gain[:, 0], loss[:, 0]
    return q_gain, loss


def conserve_project(collision_output: np.ndarray, vgrid: VelocityGrid) -> np.ndarray:
    """Remove the five collision-invariant moments from a collision output.

    Subtracts the discrete L^2_v-orthogonal projection onto
    span{sqmu, v sqmu, |v|^2 sqmu} so that sum_j w_j out_j sqmu psi(v_j) = 0
    exactly for psi in {1, v, |v|^2}.  Idempotent.
    """
    basis = invariant_basis(vgrid)
    gram = (basis * vgrid.weights) @ basis.T
    flat = collision_output.reshape(vgrid.n_total, -1)
    moments = (basis * vgrid.weights) @ flat
    coeffs = np.linalg.solve(gram, moments)
    out = flat - basis.T @ coeffs
    return out.reshape(collision_output.shape)


def invariant_basis(vgrid: VelocityGrid) -> np.ndarray:
    """The five kernel elements [sqmu, v1 sqmu, v2 sqmu, v3 sqmu, |v|^2 sqmu], (5, n_v)."""
    sq = vgrid.sqrt_mu_table
    v = vgrid.nodes
    return np.stack([sq, v[:, 0] * sq, v[:, 1] * sq, v[:, 2] * sq,
                     np.sum(v * v, axis=1) * sq])


def _as_lanes(g1, g2):
    if g1.shape != g2.shape:
        raise ValueError(f"argument shapes differ: {g1.shape} vs {g2.shape}")
    if g1.ndim == 1:
        return (np.ascontiguousarray(g1[:, None]), np.ascontiguousarray(g2[:, None]), True)
    return np.ascontiguousarray(g1), np.ascontiguousarray(g2), False


# ---------------------------------------------------------------------------
# On-disk cache: magic "IVPBKTAB", version u32, grid params, little-endian
# 64-bit floats, row-major K.
# ---------------------------------------------------------------------------

def _cache_path(cache_dir: str, vgrid: VelocityGrid, sphere: SphereQuadrature) -> str:
    name = f"ktab_v{vgrid.v_max:g}_n{vgrid.n_per_axis}_s{sphere.n_nodes}.bin"
    return os.path.join(cache_dir, name)


def _write_table_cache(cache_dir: str, tables: CollisionTables) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, tables.vgrid, tables.sphere)
    header = struct.pack("<8sIdII", TABLE_MAGIC, TABLE_VERSION,
                         tables.vgrid.v_max, tables.vgrid.n_per_axis,
                         tables.sphere.n_nodes)
    meta = struct.pack("<dd", tables.assembly_metadata["leakage_fraction"],
                       tables.assembly_metadata["asymmetry_removed"])
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(meta)
        fh.write(tables.nu.astype("<f8").tobytes())
        fh.write(tables.k_matrix.astype("<f8").tobytes())
        fh.write(tables.loss_kernel.astype("<f8").tobytes())


def _read_table_cache(cache_dir: str, vgrid: VelocityGrid,
                      sphere: SphereQuadrature) -> CollisionTables | None:
    path = _cache_path(cache_dir, vgrid, sphere)
    if not os.path.exists(path):
        return None
    with open(path, "rb") as fh:
        head = fh.read(struct.calcsize("<8sIdII"))
        magic, version, v_max, n, n_sphere = struct.unpack("<8sIdII", head)
        if magic != TABLE_MAGIC:
            raise ValueError(f"{path}: bad magic {magic!r}")
        if version != TABLE_VERSION:
            raise ValueError(f"{path}: unsupported table version {version}")
        if v_max != vgrid.v_max or n != vgrid.n_per_axis or n_sphere != sphere.n_nodes:
            return None
        leak, asym = struct.unpack("<dd", fh.read(16))
        nv = vgrid.n_total
        nu = np.fromfile(fh, "<f8", nv)
        k_matrix = np.fromfile(fh, "<f8", nv * nv).reshape(nv, nv)
        loss_kernel = np.fromfile(fh, "<f8", nv * nv).reshape(nv, nv)
        if loss_kernel.size != nv * nv:
            raise ValueError(f"{path}: truncated table file")
    meta = {"n_per_axis": n, "v_max": v_max, "sphere_nodes": n_sphere,
            "leakage_fraction": leak, "asymmetry_removed": asym,
            "mass_defect": vgrid.mass_defect, "from_cache": True}
    return CollisionTables(vgrid=vgrid, sphere=sphere, nu=nu, k_matrix=k_matrix,
                           loss_kernel=loss_kernel, assembly_metadata=meta)


def default_tables(v_max: float = 6.0, n: int = 16, sphere_nodes: int = 38,
                   cache_dir: str | None = None) -> CollisionTables:
    """Convenience constructor used by the CLI and tests."""
    return build_collision_tables(build_velocity_grid(v_max, n),
                                  build_sphere_quadrature(sphere_nodes),
                                  cache_dir=cache_dir)
