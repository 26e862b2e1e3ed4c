"""Throwaway benchmark v2: fused lanes, lattice-unit geometry."""
import time
import numpy as np
from numba import njit, prange

n = 16
vmax = 6.0
dv = 2 * vmax / n
ax = -vmax + (np.arange(n) + 0.5) * dv
VX, VY, VZ = np.meshgrid(ax, ax, ax, indexing="ij")
nodes = np.stack([VX.ravel(), VY.ravel(), VZ.ravel()], axis=1)
Nv = n**3
Nx = 32
mu = (2 * np.pi) ** -1.5 * np.exp(-0.5 * (nodes**2).sum(1))
sqmu = np.sqrt(mu)
w = dv**3

rng = np.random.default_rng(0)
om = rng.normal(size=(19, 3))
om /= np.linalg.norm(om, axis=1)[:, None]
wo = np.full(19, 4 * np.pi / 19)

g1 = rng.normal(size=(Nv, Nx)) * 1e-3
g2 = rng.normal(size=(Nv, Nx)) * 1e-3

# integer lattice coords per node
ii = np.arange(Nv) // (n * n)
jj = (np.arange(Nv) // n) % n
kk = np.arange(Nv) % n
lat = np.stack([ii, jj, kk], axis=1).astype(np.float64)


@njit(parallel=True, fastmath=True, cache=True)
def gain_batch2(out, g1, g2, lat, sqmu, w, om, wo, n, dv):
    Nv = lat.shape[0]
    Nx = g1.shape[1]
    nom = om.shape[0]
    inv = 1.0 / dv
    nn = n * n
    # projections u_i . omega_m in lattice units (t values)
    proj = np.empty((nom, Nv))
    for m in range(nom):
        for i in range(Nv):
            proj[m, i] = lat[i, 0] * om[m, 0] + lat[i, 1] * om[m, 1] + lat[i, 2] * om[m, 2]
    for j in prange(Nv):
        jx = lat[j, 0]
        jy = lat[j, 1]
        jz = lat[j, 2]
        acc = np.zeros(Nx)
        for m in range(nom):
            ox = om[m, 0]
            oy = om[m, 1]
            oz = om[m, 2]
            aj = jx * ox + jy * oy + jz * oz
            wm = 2.0 * wo[m] * dv  # |c| = t*dv where t in lattice units
            for i in range(Nv):
                t = aj - proj[m, i]
                if t == 0.0:
                    continue
                kern = wm * abs(t) * w * sqmu[i]
                tox = t * ox
                toy = t * oy
                toz = t * oz
                px = lat[i, 0] + tox
                py = lat[i, 1] + toy
                pz = lat[i, 2] + toz
                if px < 0.0 or py < 0.0 or pz < 0.0:
                    continue
                i0 = int(px)
                j0 = int(py)
                k0 = int(pz)
                if i0 >= n - 1 or j0 >= n - 1 or k0 >= n - 1:
                    continue
                qx = jx - tox
                qy = jy - toy
                qz = jz - toz
                if qx < 0.0 or qy < 0.0 or qz < 0.0:
                    continue
                i1 = int(qx)
                j1 = int(qy)
                k1 = int(qz)
                if i1 >= n - 1 or j1 >= n - 1 or k1 >= n - 1:
                    continue
                fx = px - i0
                fy = py - j0
                fz = pz - k0
                gx = qx - i1
                gy = qy - j1
                gz = qz - k1
                b0 = (i0 * n + j0) * n + k0
                c0 = (i1 * n + j1) * n + k1
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
                for x in range(Nx):
                    a = (w000 * g1[b0, x] + w001 * g1[b0 + 1, x]
                         + w010 * g1[b0 + n, x] + w011 * g1[b0 + n + 1, x]
                         + w100 * g1[b0 + nn, x] + w101 * g1[b0 + nn + 1, x]
                         + w110 * g1[b0 + nn + n, x] + w111 * g1[b0 + nn + n + 1, x])
                    b = (u000 * g2[c0, x] + u001 * g2[c0 + 1, x]
                         + u010 * g2[c0 + n, x] + u011 * g2[c0 + n + 1, x]
                         + u100 * g2[c0 + nn, x] + u101 * g2[c0 + nn + 1, x]
                         + u110 * g2[c0 + nn + n, x] + u111 * g2[c0 + nn + n + 1, x])
                    acc[x] += kern * a * b
        for x in range(Nx):
            out[j, x] = acc[x]


out = np.zeros((Nv, Nx))
t0 = time.time()
gain_batch2(out, g1, g2, lat, sqmu, w, om, wo, n, dv)
print("compile+run1:", time.time() - t0)
for _ in range(2):
    t0 = time.time()
    gain_batch2(out, g1, g2, lat, sqmu, w, om, wo, n, dv)
    print("run:", time.time() - t0, "checksum", out.sum())
