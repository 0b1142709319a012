"""Model metric near a completion stratum: c^2 (du^2 + (u^3/2)^2 dtheta^2).

Interior points have u > 0; the stratum is the u -> 0 limit, at finite
distance c*u, and in the metric completion the whole angular circle there
collapses to a single vertex.  The default prefactor is c^2 = 4 pi^3.

Geodesics are computed two independent ways:

* an arclength ODE integrator (surface-of-revolution system, with the
  rotational momentum f(u)^2 theta' as a conservation diagnostic), and
* a closed-form quadrature: in the chart W = u^-2 the metric is conformal,
  (c^2/4) W^-3 |dZ|^2, and along a geodesic with angular momentum L both
  the swept angle and the arclength reduce to incomplete beta integrals.
  Two-point problems then need only a one-parameter root find, which
  vectorizes over large batches.

Reference hyperbolic cylinder / cusp densities round out the module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betainc, gamma

__all__ = [
    "ModelParams",
    "CuspPoint",
    "GeodesicPath",
    "curvature",
    "waist_length",
    "u_from_t",
    "annulus_density",
    "cusp_density",
    "geodesic",
    "distance_to_stratum",
    "connect",
    "cusp_distance",
    "cusp_point_along",
    "product_distance",
]


@dataclass(frozen=True)
class ModelParams:
    """Metric prefactor; the profile is fixed at f(u) = u^3 / 2."""

    c_squared: float = 4 * math.pi**3

    def __post_init__(self):
        if self.c_squared <= 0:
            raise ValueError("prefactor must be positive")

    @property
    def c(self) -> float:
        return math.sqrt(self.c_squared)


@dataclass(frozen=True)
class CuspPoint:
    u: float
    theta: float = 0.0

    def __post_init__(self):
        if self.u < 0:
            raise ValueError("u must be nonnegative (0 denotes the vertex)")


def profile(u):
    return 0.5 * u**3


def profile_prime(u):
    return 1.5 * u**2


def curvature(u: float, params: ModelParams = ModelParams()) -> float:
    """Gauss curvature -f''/f / c^2 = -6 / (c^2 u^2); u > 0."""
    if u <= 0:
        raise ValueError("curvature is defined for u > 0")
    return -6.0 / (params.c_squared * u * u)


def waist_length(t_modulus: float) -> float:
    """Hyperbolic waist of the cylinder with modulus |t|: 2 pi^2 / log(1/|t|)."""
    if not 0 < t_modulus < 1:
        raise ValueError("|t| must lie in (0, 1)")
    return 2 * math.pi**2 / math.log(1.0 / t_modulus)


def u_from_t(t_modulus: float) -> float:
    if not 0 < t_modulus < 1:
        raise ValueError("|t| must lie in (0, 1)")
    return math.log(1.0 / t_modulus) ** -0.5


def annulus_density(z: complex, t_modulus: float, c: float = 1.0) -> float:
    """Density of the hyperbolic cylinder metric on |t|/c < |z| < c."""
    if not 0 < t_modulus < 1:
        raise ValueError("|t| must lie in (0, 1)")
    r = abs(z)
    if not t_modulus / c < r < c:
        raise ValueError("z outside the annulus")
    lt = math.log(t_modulus)
    arg = math.pi * math.log(r) / lt
    return abs(math.pi / lt) / math.sin(arg) / r


def cusp_density(z: complex, c: float = 1.0) -> float:
    """Density of the standard cusp metric |dz| / (|z| |log |z||) on 0 < |z| < c."""
    if not 0 < c <= 1:
        raise ValueError("c must lie in (0, 1]")
    r = abs(z)
    if not 0 < r < c or r >= 1:
        raise ValueError("z outside the punctured disc")
    return 1.0 / (r * abs(math.log(r)))


def distance_to_stratum(p: CuspPoint, params: ModelParams = ModelParams()) -> float:
    """Radial distance c*u; finite, which is the incompleteness witness."""
    if p.u <= 0:
        raise ValueError("interior point required")
    return params.c * p.u


# ---------------------------------------------------------------------------
# ODE geodesics


@dataclass
class GeodesicPath:
    t: np.ndarray
    u: np.ndarray
    theta: np.ndarray
    du: np.ndarray
    dtheta: np.ndarray
    hit_stratum: bool
    clairaut_drift: float
    speed_drift: float


U_MIN = 1e-6


def geodesic(
    p0: CuspPoint,
    v0: tuple[float, float],
    t_end: float,
    params: ModelParams = ModelParams(),
    steps: int = 2000,
) -> GeodesicPath:
    """Integrate u'' = f f' theta'^2, theta'' = -2 (f'/f) u' theta' by RK4.

    v0 = (du/dt, dtheta/dt) at t = 0.  If u would cross U_MIN the
    integration stops and the partial path is returned with hit_stratum
    set: geodesics terminate at the stratum and extensions are not unique.
    """
    if p0.u <= 0:
        raise ValueError("interior start point required")

    def rhs(y):
        u, th, du, dth = y
        return np.array(
            [du, dth, profile(u) * profile_prime(u) * dth**2,
             -2.0 * (profile_prime(u) / profile(u)) * du * dth]
        )

    h = t_end / steps
    y = np.array([p0.u, p0.theta, v0[0], v0[1]])
    rows = [y.copy()]
    ts = [0.0]
    hit = False
    for i in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        ynew = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if ynew[0] <= U_MIN:
            hit = True
            break
        y = ynew
        rows.append(y.copy())
        ts.append((i + 1) * h)
    arr = np.array(rows)
    u, th, du, dth = arr.T
    clair = params.c_squared * profile(u) ** 2 * dth
    speed = params.c_squared * (du**2 + profile(u) ** 2 * dth**2)
    drift = float(np.max(np.abs(clair - clair[0])))
    sdrift = float(np.max(np.abs(speed - speed[0])))
    return GeodesicPath(np.array(ts), u, th, du, dth, hit, drift, sdrift)


# ---------------------------------------------------------------------------
# closed-form quadrature for two-point problems
#
# In the W = u^-2 chart with kappa = c^2/4 the metric is kappa W^-3 |dZ|^2.
# A unit-speed geodesic with momentum L := kappa W^-3 theta' satisfies
#
#   dtheta/dW = L / sqrt(rho - L^2),   ds/dW = rho / sqrt(rho - L^2),
#
# rho = kappa W^-3, and turns at W* = (kappa/L^2)^(1/3).  With x = W/W*
# and T = sqrt(1 - x^3) both integrals collapse to
#
#   angle  J(x) = (2/3) * int_0^T (1-t^2)^(-1/6) dt
#   length S(x) = (2/3) * int_0^T (1-t^2)^(-7/6) dt    (times L W*)
#
# and int_0^T (1-t^2)^(-1/6) dt = (1/2) B(1/2, 5/6) I_{T^2}(1/2, 5/6) is a
# regularized incomplete beta, while integration by parts gives
# int_0^T (1-t^2)^(-7/6) dt = 3T(1-T^2)^(-1/6) - 2 int_0^T (1-t^2)^(-1/6) dt.

_BETA_CONST = float(gamma(0.5) * gamma(5.0 / 6.0) / gamma(4.0 / 3.0))


def _f1(tsq: np.ndarray) -> np.ndarray:
    """int_0^T (1-t^2)^(-1/6) dt as a function of T^2."""
    return 0.5 * _BETA_CONST * betainc(0.5, 5.0 / 6.0, tsq)


def _angle_integral(x: np.ndarray) -> np.ndarray:
    """J(x): swept angle per unit W* from x to the turning point."""
    x = np.clip(x, 1e-300, 1.0)
    tsq = np.clip((1.0 - x) * (1.0 + x + x * x), 0.0, 1.0)
    return (2.0 / 3.0) * _f1(tsq)


def _length_integral(x: np.ndarray) -> np.ndarray:
    """S(x): arclength per unit L W* from x to the turning point.

    Uses 1 - T^2 = x^3 exactly, so the integrated-by-parts boundary term is
    3T / sqrt(x) with no cancellation near the turning point.
    """
    x = np.clip(x, 1e-300, 1.0)
    tsq = np.clip((1.0 - x) * (1.0 + x + x * x), 0.0, 1.0)
    t = np.sqrt(tsq)
    return (2.0 / 3.0) * (3.0 * t / np.sqrt(x) - 2.0 * _f1(tsq))


@dataclass
class ConnectData:
    """Solved two-point geodesics, vectorized over the leading shape."""

    u1: np.ndarray
    theta1: np.ndarray
    u2: np.ndarray
    theta2: np.ndarray
    dtheta: np.ndarray  # wrapped |angle|, 0 for radial
    sign: np.ndarray  # direction of the sweep from point 1
    radial: np.ndarray  # bool
    turning: np.ndarray  # bool
    momentum: np.ndarray  # L
    wstar: np.ndarray
    length: np.ndarray
    params: ModelParams = field(default_factory=ModelParams)


_BISECT_ITERS = 56


def connect(u1, theta1, u2, theta2, params: ModelParams = ModelParams()) -> ConnectData:
    """Solve the two-point geodesic problem on a batch of endpoint pairs.

    The angle coordinate is a genuine real coordinate: the model is the
    simply connected cover, with no identification of theta mod 2 pi (the
    quotient by full twists would put a zero-angle cone point at the vertex
    and destroy nonpositive curvature).  Pairs with equal angles (or a
    vertex endpoint) are radial with length c |u1 - u2|.  Otherwise the
    momentum L of the unique connecting geodesic is found by monotone
    bisection on the swept-angle function, which walks the monotone branch
    into the turning branch.
    """
    u1, theta1, u2, theta2 = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (u1, theta1, u2, theta2))
    )
    dth_raw = theta2 - theta1
    sign = np.where(dth_raw >= 0, 1.0, -1.0)
    dth = np.abs(dth_raw)
    radial = (dth < 1e-13) | (u1 <= 0) | (u2 <= 0)

    kappa = params.c_squared / 4.0
    with np.errstate(divide="ignore"):
        w1 = np.where(u1 > 0, u1**-2.0, np.inf)
        w2 = np.where(u2 > 0, u2**-2.0, np.inf)
    wlo = np.where(radial, 1.0, np.minimum(w1, w2))
    whi = np.where(radial, 1.0, np.maximum(w1, w2))
    lmax = np.sqrt(kappa * whi**-3.0)

    def sweep(xi):
        ell = lmax * np.where(xi <= 1.0, xi, 2.0 - xi)
        ws = (kappa / ell**2) ** (1.0 / 3.0)
        jlo = _angle_integral(wlo / ws)
        jhi = _angle_integral(whi / ws)
        return ws * np.where(xi <= 1.0, jlo - jhi, jlo + jhi)

    lo = np.full(u1.shape, 1e-12)
    hi = np.full(u1.shape, 2.0 - 1e-12)
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        below = sweep(mid) < dth
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    xi = 0.5 * (lo + hi)
    turning = (xi > 1.0) & ~radial
    mom = lmax * np.where(xi <= 1.0, xi, 2.0 - xi)
    wstar = (kappa / mom**2) ** (1.0 / 3.0)
    slo = _length_integral(wlo / wstar)
    shi = _length_integral(whi / wstar)
    length = mom * wstar * np.where(turning, slo + shi, slo - shi)
    length = np.where(radial, params.c * np.abs(u1 - u2), length)
    return ConnectData(
        u1, theta1, u2, theta2, dth, sign, radial, turning, mom, wstar, length, params
    )


def cusp_distance(u1, theta1, u2, theta2, params: ModelParams = ModelParams()) -> np.ndarray:
    return connect(u1, theta1, u2, theta2, params).length


def cusp_point_along(data: ConnectData, lam) -> tuple[np.ndarray, np.ndarray]:
    """Point at arclength fraction lam along each solved geodesic.

    Returns (u, theta) arrays broadcast over data-shape x lam-shape.
    """
    lam = np.asarray(lam, dtype=float)
    shape = np.broadcast_shapes(data.length.shape, lam.shape)
    target = np.broadcast_to(lam * data.length, shape).copy()
    radial = np.broadcast_to(data.radial, shape)
    turning = np.broadcast_to(data.turning, shape)
    u1 = np.broadcast_to(data.u1, shape)
    u2 = np.broadcast_to(data.u2, shape)
    th1 = np.broadcast_to(data.theta1, shape)
    th2 = np.broadcast_to(data.theta2, shape)
    sign = np.broadcast_to(data.sign, shape)
    mom = np.broadcast_to(data.momentum, shape)
    wstar = np.broadcast_to(data.wstar, shape)
    lamb = np.broadcast_to(lam, shape)

    # radial part: constant-speed in u; theta is frozen along radial paths
    # (a vertex start point carries no angle, so use the interior endpoint's)
    u_rad = u1 + (u2 - u1) * lamb
    th_rad = np.where(u1 > 0, th1, th2)

    with np.errstate(divide="ignore"):
        x1 = np.where(radial, 0.5, np.minimum(np.where(u1 > 0, u1, 1.0) ** -2.0, wstar) / wstar)
        x2 = np.where(radial, 0.5, np.minimum(np.where(u2 > 0, u2, 1.0) ** -2.0, wstar) / wstar)
    x1 = np.clip(x1, 1e-300, 1.0)
    x2 = np.clip(x2, 1e-300, 1.0)
    s1 = _length_integral(x1)  # point1 -> turning, per unit L W*
    denom = np.where(radial, 1.0, mom * wstar)
    tgt = target / denom

    # Which leg is the target on?  Leg 1 runs from x1 toward the turning
    # point (S decreasing from S(x1) to 0); leg 2 from the turning point to
    # x2 (S increasing to S(x2)).  Monotone paths are all leg 1 with the
    # convention S-from-x1 = S(x1) - S(x): increasing along the path when
    # W increases, handled by the signed difference below.
    w1b = np.where(u1 > 0, u1, 1.0) ** -2.0
    w2b = np.where(u2 > 0, u2, 1.0) ** -2.0
    mono_up = ~turning & (w2b >= w1b)  # W increases toward point 2 (x grows)

    on_leg2 = turning & (tgt > s1)
    # leg-1 target in S(x) terms: S(x) = S(x1) - tgt for x moving toward 1
    # (works for both turning leg 1 and monotone W-increasing); for
    # monotone W-decreasing paths S(x) = S(x1) + tgt (x shrinks).
    s_goal = np.where(
        on_leg2,
        tgt - s1,
        np.where(turning | mono_up, s1 - tgt, s1 + tgt),
    )

    # Bisection over (0, 1] in log space (S is monotone decreasing); the
    # log chart keeps relative accuracy for near-radial geodesics, where
    # the solution x can be many orders below 1.
    glo = np.full(shape, math.log(1e-14))
    ghi = np.zeros(shape)
    for _ in range(48):
        gm = 0.5 * (glo + ghi)
        too_far = _length_integral(np.exp(gm)) > s_goal
        glo = np.where(too_far, gm, glo)
        ghi = np.where(too_far, ghi, gm)
    x = np.exp(0.5 * (glo + ghi))

    # Newton polish on the arclength residual S(x) - goal, which is exactly
    # the metric error of the placed point; S'(x) = -x^{-3/2}/sqrt(1-x^3).
    for _ in range(3):
        res = _length_integral(x) - s_goal
        tsq = np.clip((1.0 - x) * (1.0 + x + x * x), 1e-300, 1.0)
        deriv = -(x**-1.5) / np.sqrt(tsq)
        x = np.clip(x - res / deriv, 1e-300, 1.0)

    swept = np.where(
        on_leg2,
        wstar * (_angle_integral(x1) + _angle_integral(x)),
        np.where(
            turning | mono_up,
            wstar * (_angle_integral(x1) - _angle_integral(x)),
            wstar * (_angle_integral(x) - _angle_integral(x1)),
        ),
    )
    u_out = (x * wstar) ** -0.5
    th_out = th1 + sign * swept
    u_final = np.where(radial, u_rad, u_out)
    th_final = np.where(radial, th_rad, th_out)
    return u_final, th_final


def product_distance(x: np.ndarray, y: np.ndarray, params: ModelParams = ModelParams()) -> np.ndarray:
    """Riemannian product distance for (..., k, 2) stacks of (u, theta)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = cusp_distance(x[..., 0], x[..., 1], y[..., 0], y[..., 1], params)
    return np.sqrt((d**2).sum(axis=-1))
