"""Throwaway benchmark for the batched collision-gain kernel (deleted before commit)."""
import time
import numpy as np
import numba
from numba import njit, prange

n = 16
vmax = 6.0
dv = 2 * vmax / n
ax = -vmax + (np.arange(n) + 0.5) * dv
VX, VY, VZ = np.meshgrid(ax, ax, ax, indexing="ij")
nodes = np.stack([VX.ravel(), VY.ravel(), VZ.ravel()], axis=1)  # (Nv,3)
Nv = n**3
Nx = 32
mu = (2 * np.pi) ** -1.5 * np.exp(-0.5 * (nodes**2).sum(1))
sqmu = np.sqrt(mu)
w = dv**3

# half-sphere directions (19 of Lebedev-38 equivalent load; use random unit dirs for timing)
rng = np.random.default_rng(0)
om = rng.normal(size=(19, 3))
om /= np.linalg.norm(om, axis=1)[:, None]
wo = np.full(19, 4 * np.pi / 19)

g1 = rng.normal(size=(Nv, Nx)) * 1e-3
g2 = rng.normal(size=(Nv, Nx)) * 1e-3


@njit(parallel=True, fastmath=True, cache=True)
def gain_batch(out, g1, g2, nodes, sqmu, w, om, wo, n, dv, vmax):
    Nv = nodes.shape[0]
    Nx = g1.shape[1]
    nom = om.shape[0]
    lo = -vmax + 0.5 * dv   # first node coordinate
    inv = 1.0 / dv
    for j in prange(Nv):
        vx = nodes[j, 0]
        vy = nodes[j, 1]
        vz = nodes[j, 2]
        acc = np.zeros(Nx)
        Av = np.empty(Nx)
        Bv = np.empty(Nx)
        for i in range(Nv):
            ux = nodes[i, 0]
            uy = nodes[i, 1]
            uz = nodes[i, 2]
            dx = vx - ux
            dy = vy - uy
            dz = vz - uz
            pref = w * sqmu[i]
            for m in range(nom):
                ox = om[m, 0]
                oy = om[m, 1]
                oz = om[m, 2]
                c = dx * ox + dy * oy + dz * oz
                if c == 0.0:
                    continue
                kern = 2.0 * wo[m] * abs(c) * pref
                # u' = u + c*omega
                px = (ux + c * ox - lo) * inv
                py = (uy + c * oy - lo) * inv
                pz = (uz + c * oz - lo) * inv
                if px < 0.0 or py < 0.0 or pz < 0.0:
                    continue
                i0 = int(px)
                j0 = int(py)
                k0 = int(pz)
                if i0 >= n - 1 or j0 >= n - 1 or k0 >= n - 1:
                    continue
                fx = px - i0
                fy = py - j0
                fz = pz - k0
                # v' = v - c*omega
                qx = (vx - c * ox - lo) * inv
                qy = (vy - c * oy - lo) * inv
                qz = (vz - c * oz - lo) * inv
                if qx < 0.0 or qy < 0.0 or qz < 0.0:
                    continue
                i1 = int(qx)
                j1 = int(qy)
                k1 = int(qz)
                if i1 >= n - 1 or j1 >= n - 1 or k1 >= n - 1:
                    continue
                gx = qx - i1
                gy = qy - j1
                gz = qz - k1

                b000 = (i0 * n + j0) * n + k0
                c000 = (i1 * n + j1) * n + k1
                w000 = (1 - fx) * (1 - fy) * (1 - fz)
                w001 = (1 - fx) * (1 - fy) * fz
                w010 = (1 - fx) * fy * (1 - fz)
                w011 = (1 - fx) * fy * fz
                w100 = fx * (1 - fy) * (1 - fz)
                w101 = fx * (1 - fy) * fz
                w110 = fx * fy * (1 - fz)
                w111 = fx * fy * fz
                u000 = (1 - gx) * (1 - gy) * (1 - gz)
                u001 = (1 - gx) * (1 - gy) * gz
                u010 = (1 - gx) * gy * (1 - gz)
                u011 = (1 - gx) * gy * gz
                u100 = gx * (1 - gy) * (1 - gz)
                u101 = gx * (1 - gy) * gz
                u110 = gx * gy * (1 - gz)
                u111 = gx * gy * gz
                nn = n * n
                for x in range(Nx):
                    Av[x] = (w000 * g1[b000, x] + w001 * g1[b000 + 1, x]
                             + w010 * g1[b000 + n, x] + w011 * g1[b000 + n + 1, x]
                             + w100 * g1[b000 + nn, x] + w101 * g1[b000 + nn + 1, x]
                             + w110 * g1[b000 + nn + n, x] + w111 * g1[b000 + nn + n + 1, x])
                for x in range(Nx):
                    Bv[x] = (u000 * g2[c000, x] + u001 * g2[c000 + 1, x]
                             + u010 * g2[c000 + n, x] + u011 * g2[c000 + n + 1, x]
                             + u100 * g2[c000 + nn, x] + u101 * g2[c000 + nn + 1, x]
                             + u110 * g2[c000 + nn + n, x] + u111 * g2[c000 + nn + n + 1, x])
                for x in range(Nx):
                    acc[x] += kern * Av[x] * Bv[x]
        for x in range(Nx):
            out[j, x] = acc[x]


out = np.zeros((Nv, Nx))
t0 = time.time()
gain_batch(out, g1, g2, nodes, sqmu, w, om, wo, n, dv, vmax)
print("compile+run1:", time.time() - t0)
t0 = time.time()
gain_batch(out, g1, g2, nodes, sqmu, w, om, wo, n, dv, vmax)
t1 = time.time()
print("run2:", t1 - t0, "s/step-equivalent, checksum", out.sum())
