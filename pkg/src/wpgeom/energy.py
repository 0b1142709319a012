"""Harmonic-map energies between flat tori and convexity profiling.

Between unit-area flat tori the harmonic map homotopic to the identity is
affine with identity linear part, so the energy is the closed form
(1/2) Tr(G0^-1 G).  The grid solver exists to verify that, not to compute:
it minimizes the discrete Dirichlet energy over degree-one periodic maps by
preconditioned conjugate gradients and must land on zero displacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tensor_core import Metric2, SymTensor2
from .torus import TorusPoint, wp_geodesic, wp_norm

__all__ = [
    "EnergyProfile",
    "GridMap",
    "affine_energy",
    "dbar_energy",
    "energy_profile",
    "dbar_hessian_unit_speed",
    "discrete_harmonic",
]


def affine_energy(g0: TorusPoint, g: TorusPoint) -> float:
    """Energy of the identity-marked harmonic map, (1/2) Tr(G0^-1 G) >= 1."""
    return 0.5 * float(np.trace(g0.metric.inv() @ g.metric.matrix()))


def dbar_energy(g0: TorusPoint, g: TorusPoint) -> float:
    """Anti-conformal energy: the full energy minus the degree-one Jacobian
    integral, which is 1 on unit-area tori (Euler characteristic zero)."""
    return affine_energy(g0, g) - 1.0


@dataclass
class EnergyProfile:
    """Energy samples along a geodesic with three-point second differences.

    second[k] is defined for interior nodes 1..n-2 and NaN at the ends.
    """

    t: np.ndarray
    energy: np.ndarray
    second: np.ndarray

    def interior_second(self) -> np.ndarray:
        return self.second[1:-1]


def energy_profile(
    g0: TorusPoint, h: SymTensor2, t_range: tuple[float, float], n_samples: int
) -> EnergyProfile:
    if n_samples < 3:
        raise ValueError("need at least 3 samples for a second difference")
    t = np.linspace(t_range[0], t_range[1], n_samples)
    e = np.array([affine_energy(g0, wp_geodesic(g0, h, tk)) for tk in t])
    dt = t[1] - t[0]
    second = np.full(n_samples, np.nan)
    second[1:-1] = (e[2:] - 2 * e[1:-1] + e[:-2]) / dt**2
    return EnergyProfile(t, e, second)


def dbar_hessian_unit_speed(g0: TorusPoint, h: SymTensor2, delta: float = 1e-3) -> float:
    """Second derivative of the anti-conformal energy at the conformal point,
    in the unit-speed parameterization of the geodesic through h."""
    n = wp_norm(g0.metric, h)
    if n == 0:
        return 0.0
    hu = (1.0 / n) * h
    ep = dbar_energy(g0, wp_geodesic(g0, hu, delta))
    em = dbar_energy(g0, wp_geodesic(g0, hu, -delta))
    e0 = dbar_energy(g0, g0)
    return (ep - 2 * e0 + em) / delta**2


# ---------------------------------------------------------------------------
# discrete verification solver


@dataclass
class GridMap:
    """Degree-one periodic map u(x) = x + d(x) with zero-mean displacement."""

    displacement: np.ndarray  # (N, N, 2)

    @property
    def n(self) -> int:
        return self.displacement.shape[0]


def _wavenumbers(n: int):
    k = 2 * np.pi * np.fft.fftfreq(n, d=1.0 / n)
    return np.meshgrid(k, k, indexing="ij")


def _grad(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    k = 2 * np.pi * np.fft.fftfreq(n, d=1.0 / n)
    k[n // 2] = 0.0
    ah = np.fft.fft2(a)
    gx = np.real(np.fft.ifft2(1j * k[:, None] * ah))
    gy = np.real(np.fft.ifft2(1j * k[None, :] * ah))
    return gx, gy


def _discrete_energy(g0: Metric2, g: Metric2, disp: np.ndarray) -> float:
    """(1/N^2) sum of (1/2) g0^{jk} G_ab d_j u^a d_k u^b with u = id + d."""
    n = disp.shape[0]
    gi = g0.inv()
    gm = g.matrix()
    du = np.zeros((n, n, 2, 2))
    du[..., 0, 0], du[..., 0, 1] = _grad(disp[..., 0])
    du[..., 1, 0], du[..., 1, 1] = _grad(disp[..., 1])
    du[..., 0, 0] += 1.0
    du[..., 1, 1] += 1.0
    dens = 0.5 * np.einsum("jk,ab,...aj,...bk->...", gi, gm, du, du)
    return float(dens.mean())


def discrete_harmonic(
    g0: TorusPoint, g: TorusPoint, n: int, tol: float = 1e-12, maxiter: int = 400
) -> tuple[GridMap, float]:
    """Minimize the discrete Dirichlet energy over periodic degree-one maps.

    The Euler-Lagrange operator is, per Fourier mode xi, the 2x2 system
    (g0^{jk} xi_j xi_k) G acting on the displacement mode; conjugate
    gradients with the scalar spectral preconditioner
    1 / (g0^{jk} xi_j xi_k * tr(G)/2) solve it to a residual of `tol`.
    The affine minimizer is exact on the grid, so the returned displacement
    must vanish to rounding.
    """
    if n < 16 or n % 2:
        raise ValueError("grid size must be even and >= 16")
    gi = g0.metric.inv()
    gm = g.metric.matrix()
    k1, k2 = _wavenumbers(n)
    quad = gi[0, 0] * k1**2 + 2 * gi[0, 1] * k1 * k2 + gi[1, 1] * k2**2
    quad_safe = np.where(quad > 0, quad, 1.0)
    scale = 0.5 * float(np.trace(gm))

    def matvec(dh: np.ndarray) -> np.ndarray:
        # dh: (N, N, 2) Fourier coefficients of displacement
        out = np.einsum("ab,ijb->ija", gm, dh)
        return quad[..., None] * out

    def precond(rh: np.ndarray) -> np.ndarray:
        return rh / (quad_safe[..., None] * scale)

    # Right-hand side is minus the energy gradient at zero displacement:
    # the divergence of the constant field g0^{jk} G_{ab} (d id)^b_k, which
    # vanishes identically on the periodic grid.
    b = np.zeros((n, n, 2), dtype=complex)

    x = np.zeros_like(b)
    r = b - matvec(x)
    z = precond(r)
    p = z.copy()
    rz = np.vdot(r, z).real
    it = 0
    resid = math.sqrt(np.vdot(r, r).real)
    while resid > tol and it < maxiter:
        ap = matvec(p)
        alpha = rz / np.vdot(p, ap).real
        x = x + alpha * p
        r = r - alpha * ap
        resid = math.sqrt(np.vdot(r, r).real)
        z = precond(r)
        rz_new = np.vdot(r, z).real
        p = z + (rz_new / rz) * p
        rz = rz_new
        it += 1
    if resid > tol:
        raise ArithmeticError(f"solver did not converge: residual {resid:.3e} after {it} iterations")
    x[0, 0] = 0.0  # zero-mean gauge
    disp = np.stack(
        [np.real(np.fft.ifft2(x[..., 0])), np.real(np.fft.ifft2(x[..., 1]))], axis=-1
    )
    energy = _discrete_energy(g0.metric, g.metric, disp)
    return GridMap(disp), energy
