"""Throwaway benchmark v3: row views, float32 variant, thread check."""
import time
import numpy as np
import numba
from numba import njit, prange

n = 16
vmax = 6.0
dv = 2 * vmax / n
Nv = n**3
Nx = 32
ax = -vmax + (np.arange(n) + 0.5) * dv
VX, VY, VZ = np.meshgrid(ax, ax, ax, indexing="ij")
nodes = np.stack([VX.ravel(), VY.ravel(), VZ.ravel()], axis=1)
mu = (2 * np.pi) ** -1.5 * np.exp(-0.5 * (nodes**2).sum(1))
sqmu = np.sqrt(mu)
w = dv**3

rng = np.random.default_rng(0)
om = rng.normal(size=(19, 3))
om /= np.linalg.norm(om, axis=1)[:, None]
wo = np.full(19, 4 * np.pi / 19)
g1 = rng.normal(size=(Nv, Nx)) * 1e-3
g2 = rng.normal(size=(Nv, Nx)) * 1e-3
ii = np.arange(Nv) // (n * n)
jj = (np.arange(Nv) // n) % n
kk = np.arange(Nv) % n
lat = np.stack([ii, jj, kk], axis=1).astype(np.float64)


def make_kernel(dtype):
    @njit(parallel=True, fastmath=True)
    def gain(out, g1, g2, lat, pref, om, wo, n, dv):
        Nv = lat.shape[0]
        Nx = g1.shape[1]
        nom = om.shape[0]
        nn = n * n
        proj = np.empty((nom, Nv))
        for m in range(nom):
            for i in range(Nv):
                proj[m, i] = lat[i, 0] * om[m, 0] + lat[i, 1] * om[m, 1] + lat[i, 2] * om[m, 2]
        for j in prange(Nv):
            jx = lat[j, 0]
            jy = lat[j, 1]
            jz = lat[j, 2]
            acc = np.zeros(Nx, dtype=dtype)
            av = np.empty(Nx, dtype=dtype)
            for m in range(nom):
                ox = om[m, 0]
                oy = om[m, 1]
                oz = om[m, 2]
                aj = jx * ox + jy * oy + jz * oz
                wm = 2.0 * wo[m] * dv
                for i in range(Nv):
                    t = aj - proj[m, i]
                    if t == 0.0:
                        continue
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
                    kern = dtype(wm * abs(t) * pref[i])
                    fx = dtype(px - i0); fy = dtype(py - j0); fz = dtype(pz - k0)
                    gx = dtype(qx - i1); gy = dtype(qy - j1); gz = dtype(qz - k1)
                    one = dtype(1.0)
                    b0 = (i0 * n + j0) * n + k0
                    c0 = (i1 * n + j1) * n + k1
                    r000 = g1[b0]; r001 = g1[b0 + 1]; r010 = g1[b0 + n]; r011 = g1[b0 + n + 1]
                    r100 = g1[b0 + nn]; r101 = g1[b0 + nn + 1]; r110 = g1[b0 + nn + n]; r111 = g1[b0 + nn + n + 1]
                    s000 = g2[c0]; s001 = g2[c0 + 1]; s010 = g2[c0 + n]; s011 = g2[c0 + n + 1]
                    s100 = g2[c0 + nn]; s101 = g2[c0 + nn + 1]; s110 = g2[c0 + nn + n]; s111 = g2[c0 + nn + n + 1]
                    w000 = (one - fx) * (one - fy) * (one - fz); w001 = (one - fx) * (one - fy) * fz
                    w010 = (one - fx) * fy * (one - fz); w011 = (one - fx) * fy * fz
                    w100 = fx * (one - fy) * (one - fz); w101 = fx * (one - fy) * fz
                    w110 = fx * fy * (one - fz); w111 = fx * fy * fz
                    u000 = (one - gx) * (one - gy) * (one - gz); u001 = (one - gx) * (one - gy) * gz
                    u010 = (one - gx) * gy * (one - gz); u011 = (one - gx) * gy * gz
                    u100 = gx * (one - gy) * (one - gz); u101 = gx * (one - gy) * gz
                    u110 = gx * gy * (one - gz); u111 = gx * gy * gz
                    for x in range(Nx):
                        av[x] = (w000 * r000[x] + w001 * r001[x] + w010 * r010[x] + w011 * r011[x]
                                 + w100 * r100[x] + w101 * r101[x] + w110 * r110[x] + w111 * r111[x])
                    for x in range(Nx):
                        av[x] *= (u000 * s000[x] + u001 * s001[x] + u010 * s010[x] + u011 * s011[x]
                                  + u100 * s100[x] + u101 * s101[x] + u110 * s110[x] + u111 * s111[x])
                    for x in range(Nx):
                        acc[x] += kern * av[x]
            for x in range(Nx):
                out[j, x] = acc[x]
    return gain


pref = (w * sqmu)
print("threads:", numba.get_num_threads())

g64 = make_kernel(np.float64)
out = np.zeros((Nv, Nx))
g64(out, g1, g2, lat, pref, om, wo, n, dv)
t0 = time.time(); g64(out, g1, g2, lat, pref, om, wo, n, dv); print("f64 rowview:", time.time() - t0, out.sum())

g32 = make_kernel(np.float32)
g1f = g1.astype(np.float32); g2f = g2.astype(np.float32)
outf = np.zeros((Nv, Nx), np.float32)
g32(outf, g1f, g2f, lat, pref, om, wo, n, dv)
t0 = time.time(); g32(outf, g1f, g2f, lat, pref, om, wo, n, dv); print("f32 rowview:", time.time() - t0, outf.sum())
