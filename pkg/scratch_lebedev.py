"""Throwaway: verify Lebedev node sets vs exact sphere integrals of monomials."""
import numpy as np
from itertools import permutations, product


def axis_points():
    pts = []
    for axis in range(3):
        for s in (1.0, -1.0):
            v = np.zeros(3)
            v[axis] = s
            pts.append(v)
    return np.array(pts)


def diag_points():
    return np.array([np.array(s) / np.sqrt(3.0) for s in product((1, -1), repeat=3)])


def edge_points():  # (1,1,0)/sqrt2 type
    pts = []
    for axes in ((0, 1), (0, 2), (1, 2)):
        for s1 in (1, -1):
            for s2 in (1, -1):
                v = np.zeros(3)
                v[axes[0]] = s1 / np.sqrt(2)
                v[axes[1]] = s2 / np.sqrt(2)
                pts.append(v)
    return np.array(pts)


def pq0_points(p, q):
    pts = []
    for zero_axis in range(3):
        other = [a for a in range(3) if a != zero_axis]
        for pp, qq in ((p, q), (q, p)):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    v = np.zeros(3)
                    v[other[0]] = s1 * pp
                    v[other[1]] = s2 * qq
                    pts.append(v)
    return np.array(pts)


def llm_points(l):
    m = np.sqrt(1.0 - 2.0 * l * l)
    pts = []
    for m_axis in range(3):
        other = [a for a in range(3) if a != m_axis]
        for sm in (1, -1):
            for s1 in (1, -1):
                for s2 in (1, -1):
                    v = np.zeros(3)
                    v[m_axis] = sm * m
                    v[other[0]] = s1 * l
                    v[other[1]] = s2 * l
                    pts.append(v)
    return np.array(pts)


FOUR_PI = 4 * np.pi

sets = {}
sets[6] = (axis_points(), np.full(6, 1.0 / 6.0))
sets[14] = (np.vstack([axis_points(), diag_points()]),
            np.concatenate([np.full(6, 1.0 / 15.0), np.full(8, 3.0 / 40.0)]))
sets[26] = (np.vstack([axis_points(), edge_points(), diag_points()]),
            np.concatenate([np.full(6, 1.0 / 21.0), np.full(12, 4.0 / 105.0), np.full(8, 27.0 / 840.0)]))
p38 = np.sqrt((1.0 - 1.0 / np.sqrt(3.0)) / 2.0)
q38 = np.sqrt((1.0 + 1.0 / np.sqrt(3.0)) / 2.0)
sets[38] = (np.vstack([axis_points(), diag_points(), pq0_points(p38, q38)]),
            np.concatenate([np.full(6, 1.0 / 105.0), np.full(8, 9.0 / 280.0), np.full(24, 1.0 / 35.0)]))
l50 = 0.3015113445777636
sets[50] = (np.vstack([axis_points(), edge_points(), diag_points(), llm_points(l50)]),
            np.concatenate([np.full(6, 4.0 / 315.0), np.full(12, 64.0 / 2835.0),
                            np.full(8, 27.0 / 1280.0), np.full(24, 14641.0 / 725760.0)]))


def exact_monomial(a, b, c):
    # int x^2a y^2b z^2c dw = 4pi (2a-1)!!(2b-1)!!(2c-1)!! / (2a+2b+2c+1)!!
    def dfact(k):
        r = 1
        while k > 1:
            r *= k
            k -= 2
        return r
    return FOUR_PI * dfact(2 * a - 1) * dfact(2 * b - 1) * dfact(2 * c - 1) / dfact(2 * (a + b + c) + 1)


for npts, (pts, wts) in sets.items():
    w = wts * FOUR_PI
    assert len(pts) == npts, (npts, len(pts))
    print(f"N={npts}: sum w - 4pi = {w.sum() - FOUR_PI:.3e}, |sum w*omega| = {np.linalg.norm(w @ pts):.3e}, "
          f"|n|-1 max = {np.abs(np.linalg.norm(pts, axis=1) - 1).max():.3e}")
    # check all even monomials up to degree 10
    worst = {}
    for deg in range(0, 12, 2):
        errs = []
        for a in range(deg // 2 + 1):
            for b in range(deg // 2 + 1 - a):
                c = deg // 2 - a - b
                quad = (w * pts[:, 0] ** (2 * a) * pts[:, 1] ** (2 * b) * pts[:, 2] ** (2 * c)).sum()
                errs.append(abs(quad - exact_monomial(a, b, c)))
        worst[deg] = max(errs)
    print("   max err by degree:", {d: f"{e:.2e}" for d, e in worst.items()})
