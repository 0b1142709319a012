"""Geodesic-space abstraction with comparison-triangle testing.

Spaces expose two batched primitives: distance(x, y) and the constant-speed
geodesic parameterization point_along(x, y, lam), plus point_ndim, the
number of trailing array axes that make up one point.  On top of those sit
the comparison-inequality slack, the angle between geodesic germs (a cosine
limit with Richardson extrapolation), amalgamation of two spaces along a
gate subset (same-side distances unchanged, cross distances an infimum of
broken paths through the gate), and diameter/circumradius diagnostics.

Concrete spaces: Euclidean R^d, the curvature -1 upper half-plane, the cusp
model and its k-factor products (vertex points u = 0 allowed; the angular
circle collapses there), a tripod, and glued pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .cusp import ModelParams, connect, cusp_distance, cusp_point_along

__all__ = [
    "GeodesicSpace",
    "EuclideanSpace",
    "HyperbolicPlane",
    "CuspSpace",
    "ProductCuspSpace",
    "TripodSpace",
    "Gate",
    "GluedPoint",
    "GluedSpace",
    "glue",
    "line_gate",
    "point_gate",
    "wall_gate",
    "chebyshev_grid",
    "cat0_slacks",
    "cat0_check",
    "AngleResult",
    "alexandrov_angle",
    "FrReport",
    "fr_diagnostic",
]


class GeodesicSpace:
    """Interface: batched distance and constant-speed geodesic evaluation."""

    point_ndim: int = 1  # trailing axes per point (0 for complex scalars)

    def distance(self, x, y):
        raise NotImplementedError

    def point_along(self, x, y, lam):
        raise NotImplementedError

    # -- batching helpers ----------------------------------------------------

    def expand(self, pt, axis: int = -1):
        """Insert a broadcast axis just before the point payload axes."""
        a = np.asarray(pt)
        return np.expand_dims(a, a.ndim - self.point_ndim if axis == -1 else axis)

    def take(self, pts, idx):
        return np.asarray(pts)[idx]

    def n_points(self, pts) -> int:
        return np.asarray(pts).shape[0]

    def mask_where(self, mask, a, b):
        """np.where with the mask broadcast over point payload axes."""
        m = np.asarray(mask)
        m = m.reshape(m.shape + (1,) * self.point_ndim)
        return np.where(m, a, b)


class EuclideanSpace(GeodesicSpace):
    point_ndim = 1

    def __init__(self, dim: int):
        self.dim = dim

    def distance(self, x, y):
        return np.linalg.norm(np.asarray(y, float) - np.asarray(x, float), axis=-1)

    def point_along(self, x, y, lam):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        lam = np.asarray(lam, float)[..., None]
        return (1.0 - lam) * x + lam * y


class HyperbolicPlane(GeodesicSpace):
    """Upper half-plane, curvature -1; points are complex arrays."""

    point_ndim = 0
    _VERT_TOL = 1e-12

    def distance(self, x, y):
        z1 = np.asarray(x, complex)
        z2 = np.asarray(y, complex)
        q = 1.0 + (np.abs(z2 - z1) ** 2) / (2.0 * z1.imag * z2.imag)
        return np.arccosh(np.maximum(q, 1.0))

    def point_along(self, x, y, lam):
        z1 = np.asarray(x, complex)
        z2 = np.asarray(y, complex)
        shape = np.broadcast_shapes(z1.shape, z2.shape, np.asarray(lam).shape)
        z1 = np.broadcast_to(z1, shape)
        z2 = np.broadcast_to(z2, shape)
        lam = np.broadcast_to(np.asarray(lam, float), shape)
        dx = z2.real - z1.real
        scale = np.abs(z1) + np.abs(z2) + 1.0
        vert = np.abs(dx) < self._VERT_TOL * scale

        with np.errstate(divide="ignore", invalid="ignore"):
            zv = z1.real + 1j * np.exp(
                (1.0 - lam) * np.log(z1.imag) + lam * np.log(z2.imag)
            )
            dxs = np.where(vert, 1.0, dx)
            c = (np.abs(z2) ** 2 - np.abs(z1) ** 2) / (2.0 * dxs)
            r = np.abs(z1 - c)
            phi1 = np.arctan2(z1.imag, z1.real - c)
            phi2 = np.arctan2(z2.imag, z2.real - c)
            w1 = np.log(np.tan(0.5 * phi1))
            w2 = np.log(np.tan(0.5 * phi2))
            w = (1.0 - lam) * w1 + lam * w2
            phi = 2.0 * np.arctan(np.exp(w))
            zc = c + r * np.exp(1j * phi)
        return np.where(vert, zv, zc)


class CuspSpace(GeodesicSpace):
    """Single cusp model; points are (..., 2) arrays (u, theta); u = 0 is
    the collapsed vertex of the completion."""

    point_ndim = 1

    def __init__(self, params: ModelParams = ModelParams()):
        self.params = params

    def distance(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        return cusp_distance(x[..., 0], x[..., 1], y[..., 0], y[..., 1], self.params)

    def point_along(self, x, y, lam):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        data = connect(x[..., 0], x[..., 1], y[..., 0], y[..., 1], self.params)
        u, th = cusp_point_along(data, np.asarray(lam, float))
        return np.stack([u, th], axis=-1)


class ProductCuspSpace(GeodesicSpace):
    """Riemannian product of k cusp factors; points are (..., k, 2)."""

    point_ndim = 2

    def __init__(self, k: int, params: ModelParams = ModelParams()):
        self.k = k
        self.params = params

    def distance(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        d = cusp_distance(x[..., 0], x[..., 1], y[..., 0], y[..., 1], self.params)
        return np.sqrt((d**2).sum(axis=-1))

    def point_along(self, x, y, lam):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        lam = np.asarray(lam, float)[..., None]  # same fraction on every factor
        data = connect(x[..., 0], x[..., 1], y[..., 0], y[..., 1], self.params)
        u, th = cusp_point_along(data, lam)
        return np.stack([u, th], axis=-1)


class TripodSpace(GeodesicSpace):
    """Three half-lines glued at the origin; points (..., 2) = (branch, r)."""

    point_ndim = 1

    def distance(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        same = (x[..., 0] == y[..., 0]) | (x[..., 1] == 0) | (y[..., 1] == 0)
        return np.where(same, np.abs(x[..., 1] - y[..., 1]), x[..., 1] + y[..., 1])

    def point_along(self, x, y, lam):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        shape = np.broadcast_shapes(x.shape[:-1], y.shape[:-1], np.asarray(lam).shape)
        x = np.broadcast_to(x, shape + (2,))
        y = np.broadcast_to(y, shape + (2,))
        lam = np.broadcast_to(np.asarray(lam, float), shape)
        same = (x[..., 0] == y[..., 0]) | (x[..., 1] == 0) | (y[..., 1] == 0)
        branch = np.where(x[..., 1] > 0, x[..., 0], y[..., 0])
        rs = (1 - lam) * x[..., 1] + lam * y[..., 1]
        same_pt = np.stack([branch, rs], axis=-1)
        s = lam * (x[..., 1] + y[..., 1])
        first = s <= x[..., 1]
        cross_pt = np.where(
            first[..., None],
            np.stack([x[..., 0], x[..., 1] - s], axis=-1),
            np.stack([y[..., 0], s - x[..., 1]], axis=-1),
        )
        return np.where(same[..., None], same_pt, cross_pt)


# ---------------------------------------------------------------------------
# gluing


@dataclass
class Gate:
    """Parameterized complete subset injected isometrically in both pieces.

    dim is 0, 1 or 2.  map1/map2 send parameter arrays (..., dim) to base
    points (ignored argument for dim 0); bounds(xc, yc) supplies per-query
    search boxes (lo, hi) of shape (..., dim).
    """

    dim: int
    map1: Callable
    map2: Callable
    bounds: Optional[Callable] = None


def line_gate() -> Gate:
    """The real-axis line gate t -> (t, 0) for planar half-plane pieces."""

    def mp(t):
        t = np.asarray(t, float)
        return np.stack([t[..., 0], np.zeros_like(t[..., 0])], axis=-1)

    def bounds(xc, yc):
        tx = np.asarray(xc, float)[..., 0]
        ty = np.asarray(yc, float)[..., 0]
        span = np.abs(np.asarray(xc, float)[..., 1]) + np.abs(np.asarray(yc, float)[..., 1])
        lo = np.minimum(tx, ty) - span - 1.0
        hi = np.maximum(tx, ty) + span + 1.0
        return lo[..., None], hi[..., None]

    return Gate(1, mp, mp, bounds)


def point_gate(p1, p2) -> Gate:
    """Zero-dimensional gate: one designated point in each piece."""
    p1 = np.asarray(p1, float)
    p2 = np.asarray(p2, float)
    return Gate(0, lambda t: p1, lambda t: p2)


def wall_gate(stratum_factor: int, u_max: float = 6.0) -> Gate:
    """Gate between two 2-factor cusp products along the stratum where one
    factor is at its vertex; parameters are the free factor's (u, theta)."""
    other = 1 - stratum_factor

    def mp(t):
        t = np.asarray(t, float)
        out = np.zeros(t.shape[:-1] + (2, 2))
        out[..., other, 0] = t[..., 0]
        out[..., other, 1] = t[..., 1]
        return out

    def bounds(xc, yc):
        shape = np.asarray(xc, float).shape[:-2]
        lo = np.zeros(shape + (2,))
        hi = np.empty(shape + (2,))
        lo[..., 0] = 1e-9
        hi[..., 0] = u_max
        hi[..., 1] = 2.0 * np.pi
        return lo, hi

    return Gate(2, mp, mp, bounds)


@dataclass
class GluedPoint:
    """Point of an amalgam: integer side array plus base coordinates."""

    side: np.ndarray
    coords: np.ndarray

    @staticmethod
    def of(side: int, coords, point_ndim: int = 1) -> "GluedPoint":
        c = np.asarray(coords, float)
        return GluedPoint(np.full(c.shape[: c.ndim - point_ndim], side, dtype=int), c)


class GluedSpace(GeodesicSpace):
    """Two pieces amalgamated along a gate.

    Same-side distances are the base distances; cross distances minimize
    d1(x, gate) + d2(gate, y) over the gate parameterization by grid search
    plus golden-section refinement.
    """

    _GRID = 64
    _GOLDEN_ITERS = 64

    def __init__(self, base1: GeodesicSpace, base2: GeodesicSpace, gate: Gate):
        if base1.point_ndim != base2.point_ndim:
            raise ValueError("glued pieces must share a point format")
        self.base1 = base1
        self.base2 = base2
        self.gate = gate
        self.point_ndim = base1.point_ndim  # plus the separate side array

    # -- GluedPoint-aware helpers -------------------------------------------

    def expand(self, pt: GluedPoint, axis: int = -1) -> GluedPoint:
        pn = self.base1.point_ndim
        side = np.expand_dims(pt.side, pt.side.ndim)
        coords = np.expand_dims(pt.coords, pt.coords.ndim - pn)
        return GluedPoint(side, coords)

    def take(self, pts: GluedPoint, idx) -> GluedPoint:
        return GluedPoint(pts.side[idx], pts.coords[idx])

    def n_points(self, pts: GluedPoint) -> int:
        return pts.side.shape[0]

    def mask_where(self, mask, a: GluedPoint, b: GluedPoint) -> GluedPoint:
        m = np.asarray(mask)
        mc = m.reshape(m.shape + (1,) * self.base1.point_ndim)
        return GluedPoint(np.where(m, a.side, b.side), np.where(mc, a.coords, b.coords))

    def _pmask(self, mask):
        return np.asarray(mask).reshape(np.asarray(mask).shape + (1,) * self.base1.point_ndim)

    # -- gate optimization ---------------------------------------------------

    def _broken_length(self, xc, yc, t):
        return self.base1.distance(xc, self.gate.map1(t)) + self.base2.distance(
            self.gate.map2(t), yc
        )

    def _expand_query(self, arr):
        a = np.asarray(arr)
        return np.expand_dims(a, a.ndim - self.base1.point_ndim)

    def _grid_golden(self, xc, yc, lo, hi, axis: int, t_base):
        n = self._GRID
        s = np.linspace(0.0, 1.0, n)
        if t_base is None:
            tv = lo[..., None, :] + (hi - lo)[..., None, :] * s[:, None]
        else:
            tv = np.repeat(t_base[..., None, :], n, axis=-2)
            tv[..., axis] = (
                lo[..., axis, None] + (hi[..., axis] - lo[..., axis])[..., None] * s
            )
        vals = self._broken_length(self._expand_query(xc), self._expand_query(yc), tv)
        j = np.argmin(vals, axis=-1)
        step = (hi[..., axis] - lo[..., axis]) / (n - 1)
        a = lo[..., axis] + np.maximum(j - 1, 0) * step
        b = lo[..., axis] + np.minimum(j + 1, n - 1) * step

        invphi = (math.sqrt(5.0) - 1.0) / 2.0
        base = t_base.copy() if t_base is not None else np.zeros(lo.shape)

        def val_at(w):
            t = base.copy()
            t[..., axis] = w
            return self._broken_length(xc, yc, t)

        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc = val_at(c)
        fd = val_at(d)
        for _ in range(self._GOLDEN_ITERS):
            keep_low = fc < fd
            b = np.where(keep_low, d, b)
            a = np.where(keep_low, a, c)
            c = b - invphi * (b - a)
            d = a + invphi * (b - a)
            fc = val_at(c)
            fd = val_at(d)
        t_axis = 0.5 * (a + b)

        # Golden section stalls at the sqrt(eps) noise floor of the flat
        # quadratic minimum; two parabolic-vertex corrections with shrinking
        # stencils recover the minimizer itself to ~1e-10, which matters
        # because the broken-path kink position is first-order in it.
        span = hi[..., axis] - lo[..., axis]
        f0 = val_at(t_axis)
        slack = 64.0 * np.finfo(float).eps * np.maximum(f0, 1.0)
        for hfac in (1e-5, 1e-6):
            h = np.maximum(span * hfac, 1e-14)
            fp = val_at(t_axis + h)
            fm = val_at(t_axis - h)
            denom = fp - 2.0 * f0 + fm
            ok = denom > 0
            step = np.where(ok, 0.5 * h * (fm - fp) / np.where(ok, denom, 1.0), 0.0)
            trial = t_axis + np.clip(step, -h, h)
            ftrial = val_at(trial)
            # reject steps that demonstrably worsen the objective (kinks);
            # below the evaluation noise floor the vertex estimate is trusted
            better = ftrial <= f0 + slack
            t_axis = np.where(better, trial, t_axis)
            f0 = np.where(better, np.minimum(ftrial, f0), f0)
        out = base
        out[..., axis] = t_axis
        return out

    def _grid2(self, xc, yc, lo, hi, n: int = 24):
        s = np.linspace(0.0, 1.0, n)
        best_val, best_t = None, None
        xq = self._expand_query(xc)
        yq = self._expand_query(yc)
        for i in range(n):
            tv = np.empty(lo.shape[:-1] + (n, 2))
            tv[..., 0] = (lo[..., 0] + (hi[..., 0] - lo[..., 0]) * s[i])[..., None]
            tv[..., 1] = lo[..., 1, None] + (hi[..., 1] - lo[..., 1])[..., None] * s
            vals = self._broken_length(xq, yq, tv)
            j = np.argmin(vals, axis=-1)
            v = np.take_along_axis(vals, j[..., None], axis=-1)[..., 0]
            tj = np.take_along_axis(tv, j[..., None, None], axis=-2)[..., 0, :]
            if best_val is None:
                best_val, best_t = v, tj
            else:
                upd = v < best_val
                best_val = np.where(upd, v, best_val)
                best_t = np.where(upd[..., None], tj, best_t)
        return best_t

    def _optimize_gate(self, xc, yc):
        g = self.gate
        if g.dim == 0:
            l1 = self.base1.distance(xc, g.map1(None))
            l2 = self.base2.distance(g.map2(None), yc)
            return None, l1, l2
        lo, hi = g.bounds(xc, yc)
        if g.dim == 1:
            t = self._grid_golden(xc, yc, lo, hi, axis=0, t_base=None)
        else:
            t = self._grid2(xc, yc, lo, hi)
            for _ in range(3):
                for axis in range(g.dim):
                    t = self._grid_golden(xc, yc, lo, hi, axis=axis, t_base=t)
        l1 = self.base1.distance(xc, g.map1(t))
        l2 = self.base2.distance(g.map2(t), yc)
        return t, l1, l2

    # -- interface -------------------------------------------------------

    def distance(self, x: GluedPoint, y: GluedPoint):
        xs, ys = np.broadcast_arrays(x.side, y.side)
        pn = self.base1.point_ndim
        xc = np.broadcast_to(x.coords, xs.shape + x.coords.shape[x.coords.ndim - pn :])
        yc = np.broadcast_to(y.coords, ys.shape + y.coords.shape[y.coords.ndim - pn :])
        same = xs == ys
        d_same = np.where(
            xs == 0, self.base1.distance(xc, yc), self.base2.distance(xc, yc)
        )
        if not np.any(~same):
            return d_same
        flip = self._pmask(xs == 1)
        a = np.where(flip, yc, xc)
        b = np.where(flip, xc, yc)
        _, l1, l2 = self._optimize_gate(a, b)
        return np.where(same, d_same, l1 + l2)

    def point_along(self, x: GluedPoint, y: GluedPoint, lam):
        pn = self.base1.point_ndim
        bshape = np.broadcast_shapes(x.side.shape, y.side.shape, np.asarray(lam).shape)
        xs = np.broadcast_to(x.side, bshape)
        ys = np.broadcast_to(y.side, bshape)
        lam = np.broadcast_to(np.asarray(lam, float), bshape)
        xc = np.broadcast_to(x.coords, bshape + x.coords.shape[x.coords.ndim - pn :])
        yc = np.broadcast_to(y.coords, bshape + y.coords.shape[y.coords.ndim - pn :])
        same = xs == ys
        p1 = self.base1.point_along(xc, yc, lam)
        p2 = self.base2.point_along(xc, yc, lam)
        same_coords = np.where(self._pmask(xs == 0), p1, p2)
        same_side = xs
        if not np.any(~same):
            return GluedPoint(same_side, same_coords)

        flipm = xs == 1
        flip = self._pmask(flipm)
        a = np.where(flip, yc, xc)
        b = np.where(flip, xc, yc)
        lam_eff = np.where(flipm, 1.0 - lam, lam)
        t, l1, l2 = self._optimize_gate(a, b)
        g1 = np.broadcast_to(self.gate.map1(t), a.shape)
        g2 = np.broadcast_to(self.gate.map2(t), a.shape)
        s = lam_eff * (l1 + l2)
        on_first = s <= l1
        safe1 = np.where(l1 > 0, l1, 1.0)
        safe2 = np.where(l2 > 0, l2, 1.0)
        frac1 = np.clip(s / safe1, 0.0, 1.0)
        frac2 = np.clip((s - l1) / safe2, 0.0, 1.0)
        c1 = self.base1.point_along(a, g1, frac1)
        c2 = self.base2.point_along(g2, b, frac2)
        cross_coords = np.where(self._pmask(on_first), c1, c2)
        # sides here are absolute: piece 1 holds the a-leg, piece 2 the b-leg
        cross_side = np.where(on_first, 0, 1)
        side_out = np.where(same, same_side, cross_side)
        coords_out = np.where(self._pmask(same), same_coords, cross_coords)
        return GluedPoint(side_out, coords_out)


def glue(base1: GeodesicSpace, base2: GeodesicSpace, gate: Gate) -> GluedSpace:
    return GluedSpace(base1, base2, gate)


# ---------------------------------------------------------------------------
# comparison inequality


def chebyshev_grid(n: int = 17) -> np.ndarray:
    """Chebyshev-spaced interior points of (0, 1), in decreasing order."""
    j = np.arange(1, n + 1)
    return 0.5 * (1.0 + np.cos(j * np.pi / (n + 1)))


def cat0_slacks(space: GeodesicSpace, p, q, r, lam_grid: np.ndarray | None = None):
    """Comparison slack per grid point,

        (1-l) d^2(P,Q) + l d^2(P,R) - l (1-l) d^2(Q,R) - d^2(P, Q_l),

    with Q_l the point a fraction l of the way from Q to R.  Nonnegative
    in a CAT(0) space.  Batched over the common leading shape; returns an
    array with a trailing grid axis.
    """
    if lam_grid is None:
        lam_grid = chebyshev_grid()
    d_pq = np.asarray(space.distance(p, q), float)
    d_pr = np.asarray(space.distance(p, r), float)
    d_qr = np.asarray(space.distance(q, r), float)
    lam = lam_grid.reshape((1,) * d_pq.ndim + (-1,))

    pe = space.expand(p)
    qe = space.expand(q)
    re = space.expand(r)
    qlam = space.point_along(qe, re, lam)
    d_pql = np.asarray(space.distance(pe, qlam), float)
    comp = (
        (1.0 - lam) * d_pq[..., None] ** 2
        + lam * d_pr[..., None] ** 2
        - lam * (1.0 - lam) * d_qr[..., None] ** 2
    )
    return comp - d_pql**2


def cat0_check(space: GeodesicSpace, p, q, r, lam_grid: np.ndarray | None = None):
    """Minimum comparison slack over the lambda grid (batched)."""
    return cat0_slacks(space, p, q, r, lam_grid).min(axis=-1)


# ---------------------------------------------------------------------------
# angles


@dataclass
class AngleResult:
    angle: float
    error: float
    cosines: np.ndarray


def alexandrov_angle(space: GeodesicSpace, q, x, y, t_sequence=None) -> AngleResult:
    """Angle between the geodesic germs q->x and q->y.

    Evaluates the comparison cosine at shrinking arclengths and removes the
    leading quadratic error by Richardson extrapolation (Neville in t^2);
    the error estimate is the change at the deepest extrapolation level.
    """
    dx = float(np.asarray(space.distance(q, x)))
    dy = float(np.asarray(space.distance(q, y)))
    if dx == 0.0 or dy == 0.0:
        raise ValueError("zero-length geodesic in angle computation")
    if t_sequence is None:
        base = min(dx, dy)
        t_sequence = [base * 2.0**-k for k in range(3, 9)]
    cosines = []
    for t in t_sequence:
        gx = space.point_along(q, x, t / dx)
        gy = space.point_along(q, y, t / dy)
        a = float(np.asarray(space.distance(q, gx)))
        b = float(np.asarray(space.distance(q, gy)))
        c = float(np.asarray(space.distance(gx, gy)))
        cosines.append((a * a + b * b - c * c) / (2.0 * a * b))
    cosines = np.array(cosines)
    ts2 = np.array([t * t for t in t_sequence])
    tab = cosines.copy()
    err = 0.0
    prev_last = float(tab[-1])
    for level in range(1, len(cosines)):
        num = tab[1:] * ts2[:-level][: len(tab) - 1] - tab[:-1] * ts2[level:][: len(tab) - 1]
        den = ts2[:-level][: len(tab) - 1] - ts2[level:][: len(tab) - 1]
        tab = num / den
        err = abs(float(tab[-1]) - prev_last)
        prev_last = float(tab[-1])
    val = min(1.0, max(-1.0, float(tab[-1])))
    return AngleResult(math.acos(val), err, cosines)


# ---------------------------------------------------------------------------
# diameter / circumradius diagnostics


@dataclass
class FrReport:
    diameter: float
    circumradius: float
    ratio: float
    implied_rank: Optional[int]
    converged: bool


def fr_diagnostic(
    space: GeodesicSpace, points, tol: float = 1e-13, max_iter: int = 600
) -> FrReport:
    """Diameter over circumradius, plus the flat-dimension bound implied by
    ratio >= sqrt(2) sqrt((k+1)/k).

    The circumradius descent alternates golden-section line searches toward
    the farthest point with searches toward the iterated midpoint of the
    active (near-farthest) set; the latter resolves ties, and on Euclidean
    simplices lands on the circumcenter to line-search accuracy.
    """
    n = space.n_points(points)
    if n < 2:
        raise ValueError("need at least 2 points")
    dmat = np.asarray(space.distance(space.expand(points), points))
    diameter = float(dmat.max())
    i, j = np.unravel_index(int(dmat.argmax()), dmat.shape)

    def max_dist(c):
        d = np.asarray(space.distance(_repeat_point(space, c, n), points))
        return float(d.max()), d

    def combine(idxs):
        c = space.take(points, idxs[0])
        for m, ii in enumerate(idxs[1:], start=2):
            c = space.point_along(c, space.take(points, ii), 1.0 / m)
        return c

    candidates = [
        space.point_along(space.take(points, i), space.take(points, j), 0.5),
        combine(list(range(n))),
    ]
    best_c, best_r = None, math.inf
    for c in candidates:
        r, _ = max_dist(c)
        if r < best_r:
            best_c, best_r = c, r
    c, r0 = best_c, best_r

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    converged = False
    for _ in range(max_iter):
        r0, dists = max_dist(c)
        far = int(dists.argmax())
        targets = [space.take(points, far)]
        active = np.where(dists >= r0 * (1.0 - 1e-9))[0]
        if len(active) > 1:
            targets.append(combine(list(active)))
        improved = False
        for tgt in targets:
            a, b = 0.0, 0.95

            def radius_at(s):
                return max_dist(space.point_along(c, tgt, s))[0]

            x1 = b - invphi * (b - a)
            x2 = a + invphi * (b - a)
            f1, f2 = radius_at(x1), radius_at(x2)
            for _ in range(60):
                if f1 < f2:
                    b, x2, f2 = x2, x1, f1
                    x1 = b - invphi * (b - a)
                    f1 = radius_at(x1)
                else:
                    a, x1, f1 = x1, x2, f2
                    x2 = a + invphi * (b - a)
                    f2 = radius_at(x2)
            s_best = 0.5 * (a + b)
            r_new = radius_at(s_best)
            if r_new < r0 - tol:
                c = space.point_along(c, tgt, s_best)
                improved = True
                break
        if not improved:
            converged = True
            break
    radius, _ = max_dist(c)
    ratio = diameter / radius if radius > 0 else math.inf
    if ratio**2 > 2.0:
        implied = max(1, math.ceil(round(1.0 / (ratio**2 / 2.0 - 1.0), 9)))
    else:
        implied = None
    return FrReport(diameter, radius, ratio, implied, converged)


def _repeat_point(space: GeodesicSpace, c, n: int):
    if isinstance(c, GluedPoint):
        return GluedPoint(
            np.broadcast_to(c.side, (n,) + c.side.shape),
            np.broadcast_to(c.coords, (n,) + c.coords.shape),
        )
    a = np.asarray(c)
    return np.broadcast_to(a, (n,) + a.shape)
