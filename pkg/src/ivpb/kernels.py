"""Numba kernels for the hard-sphere collision machinery.

All kernels work on the flattened velocity lattice (index = (ix*n + iy)*n + iz)
and exploit two structural facts:

* The collision kernel |(v-u).omega| is invariant under omega -> -omega, so
  only one direction per antipodal pair is visited, with doubled weight.
* Directions with zero components need cheaper interpolation of the
  post-collision points u' = u + [(v-u).omega]omega, v' = v - [(v-u).omega]omega:
  axis directions (two zeros) land exactly on lattice nodes, single-zero
  directions only move in a coordinate plane (bilinear), and only fully
  generic directions require trilinear stencils.

Phase-space arguments are (n_v, n_lanes) arrays; the lane axis (spatial cells)
is the SIMD axis.  Every output row is accumulated by a single thread in a
fixed order, so results are bitwise reproducible for any thread count.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange


def classify_directions(nodes: np.ndarray, weights: np.ndarray, tol: float = 1e-13):
    """Split half-sphere directions by number of (exactly) zero components.

    Returns dict with 'axis' -> (axis_index, sign, weight) arrays,
    'planar' -> (zero_axis, omega, weight), 'general' -> (omega, weight).
    """
    ax_idx, ax_sgn, ax_w = [], [], []
    pl_zero, pl_om, pl_w = [], [], []
    ge_om, ge_w = [], []
    for om, w in zip(nodes, weights):
        zeros = np.where(np.abs(om) < tol)[0]
        if len(zeros) == 2:
            a = int(np.argmax(np.abs(om)))
            ax_idx.append(a)
            ax_sgn.append(1.0 if om[a] > 0 else -1.0)
            ax_w.append(w)
        elif len(zeros) == 1:
            pl_zero.append(int(zeros[0]))
            pl_om.append(om)
            pl_w.append(w)
        else:
            ge_om.append(om)
            ge_w.append(w)
    return {
        "axis": (np.array(ax_idx, dtype=np.int64).reshape(-1),
                 np.array(ax_sgn, dtype=np.float64).reshape(-1),
                 np.array(ax_w, dtype=np.float64).reshape(-1)),
        "planar": (np.array(pl_zero, dtype=np.int64).reshape(-1),
                   np.array(pl_om, dtype=np.float64).reshape(-1, 3),
                   np.array(pl_w, dtype=np.float64).reshape(-1)),
        "general": (np.array(ge_om, dtype=np.float64).reshape(-1, 3),
                    np.array(ge_w, dtype=np.float64).reshape(-1)),
    }


@njit(parallel=True, fastmath=True, cache=True)
def loss_kernel_matrix(lat, om_half, w_half, n, dv):
    """Dense angular-integrated kernel k[j,i] = sum_m w_m |(v_j - u_i).omega_m|."""
    nv = lat.shape[0]
    nom = om_half.shape[0]
    out = np.empty((nv, nv))
    for j in prange(nv):
        jx = lat[j, 0]
        jy = lat[j, 1]
        jz = lat[j, 2]
        for i in range(nv):
            dx = jx - lat[i, 0]
            dy = jy - lat[i, 1]
            dz = jz - lat[i, 2]
            s = 0.0
            for m in range(nom):
                c = dx * om_half[m, 0] + dy * om_half[m, 1] + dz * om_half[m, 2]
                s += w_half[m] * abs(c)
            out[j, i] = s * dv
    return out


# ---------------------------------------------------------------------------
# Bilinear gain term: out_j += sum_{i,omega} w_omega |c| pref_i g1(u') g2(v')
# ---------------------------------------------------------------------------

@njit(parallel=True, fastmath=True, cache=True)
def _gain_axis(out, g1, g2, pref, ax_idx, ax_w, n, dv):
    nv = out.shape[0]
    nlane = out.shape[1]
    nn = n * n
    for j in prange(nv):
        row = out[j]
        for m in range(ax_idx.shape[0]):
            a = ax_idx[m]
            st = nn if a == 0 else (n if a == 1 else 1)
            ja = (j // st) % n
            wm = ax_w[m] * dv
            jbase = j - ja * st
            for i in range(nv):
                ia = (i // st) % n
                t = ja - ia
                if t == 0:
                    continue
                # u' swaps component a to j's value; v' to i's value
                iu = i + (ja - ia) * st
                iv = jbase + ia * st
                kern = wm * abs(t) * pref[i]
                r1 = g1[iu]
                r2 = g2[iv]
                for x in range(nlane):
                    row[x] += kern * r1[x] * r2[x]


@njit(parallel=True, fastmath=True, cache=True)
def _gain_planar(out, g1, g2, pref, pl_zero, pl_om, pl_w, n, dv):
    nv = out.shape[0]
    nlane = out.shape[1]
    nn = n * n
    nm1 = float(n - 1)
    for j in prange(nv):
        j3 = np.empty(3, np.float64)
        j3[0] = j // nn
        j3[1] = (j // n) % n
        j3[2] = j % n
        row = out[j]
        for m in range(pl_zero.shape[0]):
            z = pl_zero[m]
            a = 0 if z != 0 else 1
            b = 2 if z != 2 else 1
            oa = pl_om[m, a]
            ob = pl_om[m, b]
            sa = nn if a == 0 else (n if a == 1 else 1)
            sb = nn if b == 0 else (n if b == 1 else 1)
            ja = j3[a]
            jb = j3[b]
            aj = ja * oa + jb * ob
            wm = pl_w[m] * dv
            for i in range(nv):
                ia = float((i // sa) % n)
                ib = float((i // sb) % n)
                t = aj - (ia * oa + ib * ob)
                if t == 0.0:
                    continue
                toa = t * oa
                tob = t * ob
                pa = ia + toa
                pb = ib + tob
                if pa < 0.0 or pb < 0.0 or pa > nm1 or pb > nm1:
                    continue
                qa = ja - toa
                qb = jb - tob
                if qa < 0.0 or qb < 0.0 or qa > nm1 or qb > nm1:
                    continue
                i0 = int(pa)
                if i0 > n - 2:
                    i0 = n - 2
                j0 = int(pb)
                if j0 > n - 2:
                    j0 = n - 2
                i1 = int(qa)
                if i1 > n - 2:
                    i1 = n - 2
                j1 = int(qb)
                if j1 > n - 2:
                    j1 = n - 2
                fa = pa - i0
                fb = pb - j0
                ga = qa - i1
                gb = qb - j1
                kern = wm * abs(t) * pref[i]
                bu = i + (i0 - int(ia)) * sa + (j0 - int(ib)) * sb
                bv = j + (i1 - int(ja)) * sa + (j1 - int(jb)) * sb
                w00 = (1.0 - fa) * (1.0 - fb)
                w01 = (1.0 - fa) * fb
                w10 = fa * (1.0 - fb)
                w11 = fa * fb
                u00 = (1.0 - ga) * (1.0 - gb)
                u01 = (1.0 - ga) * gb
                u10 = ga * (1.0 - gb)
                u11 = ga * gb
                r00 = g1[bu]
                r01 = g1[bu + sb]
                r10 = g1[bu + sa]
                r11 = g1[bu + sa + sb]
                s00 = g2[bv]
                s01 = g2[bv + sb]
                s10 = g2[bv + sa]
                s11 = g2[bv + sa + sb]
                for x in range(nlane):
                    av = w00 * r00[x] + w01 * r01[x] + w10 * r10[x] + w11 * r11[x]
                    bvl = u00 * s00[x] + u01 * s01[x] + u10 * s10[x] + u11 * s11[x]
                    row[x] += kern * av * bvl


@njit(parallel=True, fastmath=True, cache=True)
def _gain_general(out, g1, g2, pref, om, wo, n, dv):
    nv = out.shape[0]
    nlane = out.shape[1]
    nn = n * n
    nm1 = float(n - 1)
    for j in prange(nv):
        jx = float(j // nn)
        jy = float((j // n) % n)
        jz = float(j % n)
        row = out[j]
        for m in range(om.shape[0]):
            ox = om[m, 0]
            oy = om[m, 1]
            oz = om[m, 2]
            aj = jx * ox + jy * oy + jz * oz
            wm = wo[m] * dv
            for i in range(nv):
                ix = float(i // nn)
                iy = float((i // n) % n)
                iz = float(i % n)
                t = aj - (ix * ox + iy * oy + iz * oz)
                if t == 0.0:
                    continue
                tox = t * ox
                toy = t * oy
                toz = t * oz
                px = ix + tox
                py = iy + toy
                pz = iz + toz
                if px < 0.0 or py < 0.0 or pz < 0.0 or px > nm1 or py > nm1 or pz > nm1:
                    continue
                qx = jx - tox
                qy = jy - toy
                qz = jz - toz
                if qx < 0.0 or qy < 0.0 or qz < 0.0 or qx > nm1 or qy > nm1 or qz > nm1:
                    continue
                i0 = int(px)
                if i0 > n - 2:
                    i0 = n - 2
                j0 = int(py)
                if j0 > n - 2:
                    j0 = n - 2
                k0 = int(pz)
                if k0 > n - 2:
                    k0 = n - 2
                i1 = int(qx)
                if i1 > n - 2:
                    i1 = n - 2
                j1 = int(qy)
                if j1 > n - 2:
                    j1 = n - 2
                k1 = int(qz)
                if k1 > n - 2:
                    k1 = n - 2
                fx = px - i0
                fy = py - j0
                fz = pz - k0
                gx = qx - i1
                gy = qy - j1
                gz = qz - k1
                kern = wm * abs(t) * pref[i]
                b0 = (i0 * n + j0) * n + k0
                c0 = (i1 * n + j1) * n + k1
                w00 = (1.0 - fx) * (1.0 - fy)
                w01 = (1.0 - fx) * fy
                w10 = fx * (1.0 - fy)
                w11 = fx * fy
                u00 = (1.0 - gx) * (1.0 - gy)
                u01 = (1.0 - gx) * gy
                u10 = gx * (1.0 - gy)
                u11 = gx * gy
                fz1 = 1.0 - fz
                gz1 = 1.0 - gz
                r000 = g1[b0]
                r001 = g1[b0 + 1]
                r010 = g1[b0 + n]
                r011 = g1[b0 + n + 1]
                r100 = g1[b0 + nn]
                r101 = g1[b0 + nn + 1]
                r110 = g1[b0 + nn + n]
                r111 = g1[b0 + nn + n + 1]
                s000 = g2[c0]
                s001 = g2[c0 + 1]
                s010 = g2[c0 + n]
                s011 = g2[c0 + n + 1]
                s100 = g2[c0 + nn]
                s101 = g2[c0 + nn + 1]
                s110 = g2[c0 + nn + n]
                s111 = g2[c0 + nn + n + 1]
                for x in range(nlane):
                    av = (w00 * (fz1 * r000[x] + fz * r001[x])
                          + w01 * (fz1 * r010[x] + fz * r011[x])
                          + w10 * (fz1 * r100[x] + fz * r101[x])
                          + w11 * (fz1 * r110[x] + fz * r111[x]))
                    bvl = (u00 * (gz1 * s000[x] + gz * s001[x])
                           + u01 * (gz1 * s010[x] + gz * s011[x])
                           + u10 * (gz1 * s100[x] + gz * s101[x])
                           + u11 * (gz1 * s110[x] + gz * s111[x]))
                    row[x] += kern * av * bvl


def gain_term(g1: np.ndarray, g2: np.ndarray, pref: np.ndarray,
              classes: dict, n: int, dv: float) -> np.ndarray:
    """Collision gain sum_{i,omega} w_omega |(v_j-u_i).omega| pref_i g1(u') g2(v').

    g1, g2: (n_v, n_lanes) with lanes = spatial cells; pref folds the velocity
    quadrature weight and any Maxwellian factor of the u-argument.
    """
    out = np.zeros_like(g1)
    ax_idx, _, ax_w = classes["axis"]
    if ax_idx.size:
        _gain_axis(out, g1, g2, pref, ax_idx, ax_w, n, dv)
    pl_zero, pl_om, pl_w = classes["planar"]
    if pl_zero.size:
        _gain_planar(out, g1, g2, pref, pl_zero, pl_om, pl_w, n, dv)
    ge_om, ge_w = classes["general"]
    if ge_om.shape[0]:
        _gain_general(out, g1, g2, pref, ge_om, ge_w, n, dv)
    return out


# ---------------------------------------------------------------------------
# Dense matrix of the linearized gain operator
# K2 g (v_j) = sum_{i,omega} w_omega |c| w_i sqmu(u_i) [sqmu(u') g(v') + sqmu(v') g(u')]
#
# The unknown is interpolated as g(p) ~ sqmu(p) * I[g/sqmu](p) with per-axis
# 3-point quadratic stencils, and sqmu(u')sqmu(v') = sqmu(u)sqmu(v) exactly
# (collisional energy conservation).  The quadratic stencils reproduce every
# null-space ratio {1, v_i, v_i v_j, |v|^2} exactly, so the assembled L
# annihilates the five kernel elements up to box-leakage and angular
# quadrature error only.  The Maxwellian row/column scalings are applied
# outside this kernel.
# ---------------------------------------------------------------------------


@njit(parallel=True, fastmath=True, cache=True)
def assemble_k2_ratio(lat, pref, om_half, w_half, n, dv):
    """Raw ratio-space gain matrix R with (R psi)_j = sum kern pref_i
    (I[psi](u') + I[psi](v')); pref folds w_i mu(u_i).

    Returns (R, leak, tot): kernel-weighted leakage per row and row totals.
    Stencil centers must keep a one-node margin, otherwise the pair is
    dropped and counted as leakage.
    """
    nv = lat.shape[0]
    nom = om_half.shape[0]
    nn = n * n
    out = np.zeros((nv, nv))
    leak = np.zeros(nv)
    tot = np.zeros(nv)
    lo_c = 0.0          # full node hull; boundary cells use one-sided stencils
    hi_c = float(n - 1)
    for j in prange(nv):
        jx = lat[j, 0]
        jy = lat[j, 1]
        jz = lat[j, 2]
        row = out[j]
        wx = np.empty(3)
        wy = np.empty(3)
        wz = np.empty(3)
        for m in range(nom):
            ox = om_half[m, 0]
            oy = om_half[m, 1]
            oz = om_half[m, 2]
            aj = jx * ox + jy * oy + jz * oz
            wm = w_half[m] * dv
            for i in range(nv):
                ix = lat[i, 0]
                iy = lat[i, 1]
                iz = lat[i, 2]
                t = aj - (ix * ox + iy * oy + iz * oz)
                if t == 0.0:
                    continue
                kern = wm * abs(t) * pref[i]
                tot[j] += kern
                tox = t * ox
                toy = t * oy
                toz = t * oz
                px = ix + tox
                py = iy + toy
                pz = iz + toz
                if px < lo_c or py < lo_c or pz < lo_c or px > hi_c or py > hi_c or pz > hi_c:
                    leak[j] += kern
                    continue
                qx = jx - tox
                qy = jy - toy
                qz = jz - toz
                if qx < lo_c or qy < lo_c or qz < lo_c or qx > hi_c or qy > hi_c or qz > hi_c:
                    leak[j] += kern
                    continue
                for point in range(2):
                    if point == 0:
                        ax, ay, az = px, py, pz
                    else:
                        ax, ay, az = qx, qy, qz
                    sx = int(ax + 0.5)
                    if sx < 1:
                        sx = 1
                    elif sx > n - 2:
                        sx = n - 2
                    sy = int(ay + 0.5)
                    if sy < 1:
                        sy = 1
                    elif sy > n - 2:
                        sy = n - 2
                    sz = int(az + 0.5)
                    if sz < 1:
                        sz = 1
                    elif sz > n - 2:
                        sz = n - 2
                    ddx = ax - sx
                    ddy = ay - sy
                    ddz = az - sz
                    wx[0] = 0.5 * ddx * (ddx - 1.0)
                    wx[1] = 1.0 - ddx * ddx
                    wx[2] = 0.5 * ddx * (ddx + 1.0)
                    wy[0] = 0.5 * ddy * (ddy - 1.0)
                    wy[1] = 1.0 - ddy * ddy
                    wy[2] = 0.5 * ddy * (ddy + 1.0)
                    wz[0] = 0.5 * ddz * (ddz - 1.0)
                    wz[1] = 1.0 - ddz * ddz
                    wz[2] = 0.5 * ddz * (ddz + 1.0)
                    base = ((sx - 1) * n + (sy - 1)) * n + (sz - 1)
                    for a in range(3):
                        ka = kern * wx[a]
                        ra = base + a * nn
                        for b in range(3):
                            kb = ka * wy[b]
                            rb = ra + b * n
                            row[rb] += kb * wz[0]
                            row[rb + 1] += kb * wz[1]
                            row[rb + 2] += kb * wz[2]
    return out, leak, tot
