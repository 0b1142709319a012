"""Funk and Hilbert metrics on convex polytopes, and the stratum-distance
analogue on product cusp models.

A polytope is a finite intersection of half-spaces {a_i . x <= b_i} with
unit normals.  The asymmetric metric comes in two equivalent forms: the
log ratio of distances to the exit point of the ray through the two points,
and the maximum over faces of the log ratio of distances to the face
hyperplane.  On polytopes the maximum over the finitely many facet
hyperplanes realizes the supremum over all supporting hyperplanes, which
makes the equivalence exactly testable.

Values of the asymmetric metrics satisfy delta(x,x) = 0 and the triangle
inequality but not symmetry; rays that never exit an unbounded domain get
the value 0, which is what the supporting-hyperplane form returns for the
slab.  The product-cusp variant sup_j log(u_j(x)/u_j(y)) may be negative
for small factor counts; it is reported as computed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import SplitMix64

__all__ = [
    "ConvexPolytope",
    "funk_ray",
    "funk_sup",
    "hilbert",
    "wp_funk_model",
    "read_polytope",
    "write_polytope",
    "random_polytope_instances",
]

_INTERIOR_TOL = 1e-12


@dataclass(frozen=True)
class ConvexPolytope:
    """Half-space representation: normals (m, d) with unit rows, offsets (m,)."""

    normals: np.ndarray
    offsets: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.normals, dtype=float)
        b = np.asarray(self.offsets, dtype=float)
        if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
            raise ValueError("normals must be (m, d), offsets (m,)")
        norms = np.linalg.norm(a, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            raise ValueError("normals must have unit Euclidean norm")
        object.__setattr__(self, "normals", a)
        object.__setattr__(self, "offsets", b)

    @property
    def dim(self) -> int:
        return self.normals.shape[1]

    def margins(self, x: np.ndarray) -> np.ndarray:
        """Distances b_i - a_i . x to each face hyperplane (positive inside)."""
        return self.offsets - np.asarray(x, dtype=float) @ self.normals.T

    def require_interior(self, x: np.ndarray) -> np.ndarray:
        m = self.margins(x)
        if np.any(m.min(axis=-1) <= _INTERIOR_TOL):
            raise ValueError("point is not interior to the polytope")
        return m

    @staticmethod
    def box(lo: float, hi: float, d: int) -> "ConvexPolytope":
        eye = np.eye(d)
        a = np.vstack([eye, -eye])
        b = np.concatenate([np.full(d, hi), np.full(d, -lo)])
        return ConvexPolytope(a, b)


def funk_ray(omega: ConvexPolytope, x, y) -> float:
    """log of d(x, b) / d(y, b) with b the exit point of the ray x -> y.

    Computed from the smallest positive ray parameter: x + s (y - x) exits
    at s = s* >= 1, and the ratio is s* / (s* - 1).  A ray that never exits
    (unbounded domain) gets 0, consistently with the hyperplane form.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mx = omega.require_interior(x)
    omega.require_interior(y)
    if np.allclose(x, y, rtol=0.0, atol=0.0):
        return 0.0
    adir = omega.normals @ (y - x)
    with np.errstate(divide="ignore"):
        s = np.where(adir > 0, mx / np.where(adir > 0, adir, 1.0), np.inf)
    s_star = float(s.min())
    if not np.isfinite(s_star):
        return 0.0
    return float(np.log(s_star / (s_star - 1.0)))


def funk_sup(omega: ConvexPolytope, x, y) -> float:
    """max over faces of log((b_i - a_i.x) / (b_i - a_i.y))."""
    mx = omega.require_interior(x)
    my = omega.require_interior(y)
    return float(np.max(np.log(mx) - np.log(my)))


def hilbert(omega: ConvexPolytope, x, y) -> float:
    """Symmetrization (F(x,y) + F(y,x)) / 2; a genuine metric on samples."""
    return 0.5 * (funk_ray(omega, x, y) + funk_ray(omega, y, x))


def wp_funk_model(ux, uy) -> float:
    """sup_j log(u_j(x) / u_j(y)) on k-factor cusp coordinates.

    The stratum distances are c * u_j, so the prefactor cancels.  The value
    can be negative when every coordinate of y exceeds x's.
    """
    ux = np.asarray(ux, dtype=float)
    uy = np.asarray(uy, dtype=float)
    if np.any(ux <= 0) or np.any(uy <= 0):
        raise ValueError("all stratum coordinates must be positive")
    return float(np.max(np.log(ux) - np.log(uy)))


# ---------------------------------------------------------------------------
# file format: one line per half-space `a_1 ... a_d b`


def write_polytope(path: str, omega: ConvexPolytope) -> None:
    with open(path, "w") as fh:
        for a, b in zip(omega.normals, omega.offsets):
            fh.write(" ".join("%.17g" % v for v in (*a, b)) + "\n")


def read_polytope(path: str) -> ConvexPolytope:
    rows = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if parts:
                rows.append([float(v) for v in parts])
    arr = np.array(rows, dtype=float)
    return ConvexPolytope(arr[:, :-1], arr[:, -1])


# ---------------------------------------------------------------------------
# random instances for the sampled property suites


def random_polytope_instances(rng: SplitMix64, n: int, d: int = 2, n_points: int = 2):
    """Yield (polytope, points) with bounded polytopes and interior points.

    Each instance is a bounding box plus a few random cut half-spaces; the
    origin is kept interior with margin, and points are rejection-sampled
    near the origin.
    """
    out = []
    for _ in range(n):
        m = 3 + int(rng.floats() * 5)
        a = rng.normals(m, d)
        a /= np.linalg.norm(a, axis=1, keepdims=True)
        b = rng.uniform(0.4, 2.0, m)
        box = ConvexPolytope.box(-2.5, 2.5, d)
        omega = ConvexPolytope(np.vstack([a, box.normals]), np.concatenate([b, box.offsets]))
        pts = []
        while len(pts) < n_points:
            p = rng.uniform(-0.35, 0.35, d)
            if omega.margins(p).min() > 0.05:
                pts.append(p)
        out.append((omega, np.array(pts)))
    return out
