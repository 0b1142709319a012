"""Fourier-side linear theory of vector fields on the circle.

A tangent field is a real vector field u(theta) d/dtheta with Fourier
support away from the three lowest modes (those span the rotation and
Moebius directions, which are quotiented away).  Stored are the complex
coefficients v_m for 2 <= m <= M; negative modes follow from reality
v_{-m} = conj(v_m).

On these coefficients live the cubic-weight pairing
Re sum (m^3 - m) v_m conj(w_m) (scaled by the positivity constant 2b), the
conjugation complex structure v_m -> -i sgn(m) v_m (the Hilbert transform
on the function side), the rotation-invariant symplectic pairing that makes
the triple a Kaehler package, Sobolev norms, and the integral projection of
a Beltrami-coefficient field onto harmonic ones, evaluated by adaptive
quadrature over a truncated half-plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "FourierVectorField",
    "PairingConstants",
    "wp_pairing",
    "complex_structure",
    "kk_form",
    "sobolev_norm",
    "wp_h32_ratio",
    "hilbert_transform_fn",
    "AhlforsResult",
    "ahlfors_projection",
    "read_coefficients",
    "write_coefficients",
]


@dataclass(frozen=True)
class PairingConstants:
    """a = i b with b > 0 keeps the pairing positive definite."""

    b: float = 0.5

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError("positivity requires b > 0")


@dataclass(frozen=True)
class FourierVectorField:
    """Coefficients v_m for modes 2..M; v_{-m} = conj(v_m) implied."""

    coeffs: np.ndarray  # complex, index 0 -> mode 2

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        object.__setattr__(self, "coeffs", c)

    @property
    def max_mode(self) -> int:
        return self.coeffs.shape[0] + 1

    @staticmethod
    def from_modes(modes: dict[int, complex]) -> "FourierVectorField":
        """Build from {m: v_m}.  Entries with m <= -2 must be conjugate to
        their positive partners (reality); |m| <= 1 is rejected."""
        pos: dict[int, complex] = {}
        for m, v in modes.items():
            if abs(m) < 2:
                raise ValueError("modes -1, 0, 1 are excluded")
            pos.setdefault(abs(m), complex(0))
        for m in list(pos):
            vp = modes.get(m)
            vn = modes.get(-m)
            if vp is not None and vn is not None and abs(np.conj(vp) - vn) > 1e-12:
                raise ValueError(f"reality violated at mode {m}")
            pos[m] = complex(vp) if vp is not None else np.conj(complex(vn))
        mmax = max(pos)
        c = np.zeros(mmax - 1, dtype=complex)
        for m, v in pos.items():
            c[m - 2] = v
        return FourierVectorField(c)

    def mode(self, m: int) -> complex:
        if abs(m) < 2 or abs(m) > self.max_mode:
            return 0j
        v = self.coeffs[abs(m) - 2]
        return v if m > 0 else np.conj(v)

    def samples(self, n: int) -> np.ndarray:
        """Real samples of u(theta) on n equispaced points."""
        if n < 2 * (self.max_mode + 1):
            raise ValueError("sample grid too small for the bandlimit")
        spec = np.zeros(n, dtype=complex)
        for m in range(2, self.max_mode + 1):
            spec[m] = self.coeffs[m - 2]
            spec[-m] = np.conj(self.coeffs[m - 2])
        return np.real(np.fft.ifft(spec) * n)

    def __add__(self, other: "FourierVectorField") -> "FourierVectorField":
        n = max(self.coeffs.shape[0], other.coeffs.shape[0])
        c = np.zeros(n, dtype=complex)
        c[: self.coeffs.shape[0]] += self.coeffs
        c[: other.coeffs.shape[0]] += other.coeffs
        return FourierVectorField(c)

    def __rmul__(self, s: float) -> "FourierVectorField":
        return FourierVectorField(s * self.coeffs)


def _weights(mmax: int) -> np.ndarray:
    m = np.arange(2, mmax + 1, dtype=float)
    return m**3 - m


def _aligned(f1: FourierVectorField, f2: FourierVectorField):
    n = max(f1.coeffs.shape[0], f2.coeffs.shape[0])
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[: f1.coeffs.shape[0]] = f1.coeffs
    b[: f2.coeffs.shape[0]] = f2.coeffs
    return a, b


def wp_pairing(
    f1: FourierVectorField, f2: FourierVectorField, constants: PairingConstants = PairingConstants()
) -> float:
    """2b Re sum_{m>=2} (m^3 - m) v_m conj(w_m); with b = 1/2 the plain
    cubic-weight series."""
    a, b = _aligned(f1, f2)
    w = _weights(a.shape[0] + 1)
    return 2.0 * constants.b * float(np.real(np.sum(w * a * np.conj(b))))


def complex_structure(f: FourierVectorField) -> FourierVectorField:
    """v_m -> -i sgn(m) v_m; squares to minus the identity and preserves
    both pairings.  Reality is automatic: the stored modes are positive."""
    return FourierVectorField(-1j * f.coeffs)


def kk_form(
    f1: FourierVectorField, f2: FourierVectorField, constants: PairingConstants = PairingConstants()
) -> float:
    """Antisymmetric pairing -2b sum (m^3 - m) Im(v_m conj(w_m)); satisfies
    g(v, w) = -omega(v, Jw)."""
    a, b = _aligned(f1, f2)
    w = _weights(a.shape[0] + 1)
    return -2.0 * constants.b * float(np.sum(w * np.imag(a * np.conj(b))))


def sobolev_norm(f: FourierVectorField, s: float) -> float:
    """(sum_{|m|>=2} |v_m|^2 |m|^(2s))^(1/2), both signs counted."""
    if s < 0:
        raise ValueError("order must be nonnegative")
    m = np.arange(2, f.max_mode + 1, dtype=float)
    return math.sqrt(2.0 * float(np.sum(np.abs(f.coeffs) ** 2 * m ** (2 * s))))


def wp_h32_ratio(f: FourierVectorField) -> float:
    """Mode-symmetric pairing weight over the H^{3/2} weight:
    sum (|m|^3-|m|) |v_m|^2 / sum |m|^3 |v_m|^2, inside [3/4, 1) on modes
    m >= 2 regardless of the positivity constant."""
    m = np.arange(2, f.max_mode + 1, dtype=float)
    a2 = np.abs(f.coeffs) ** 2
    denom = float(np.sum(m**3 * a2))
    if denom == 0:
        raise ValueError("zero field has no norm ratio")
    return float(np.sum((m**3 - m) * a2)) / denom


def hilbert_transform_fn(samples: np.ndarray) -> np.ndarray:
    """Conjugate function on equispaced samples: multiplier -i sgn(m), with
    modes 0 and +-1 zeroed (the Moebius-gauge choice).

    The sample count must be a power of two; energy in the Nyquist bin
    signals aliasing and is rejected.
    """
    u = np.asarray(samples, dtype=float)
    n = u.shape[0]
    if n < 4 or n & (n - 1):
        raise ValueError("sample count must be a power of two >= 4")
    spec = np.fft.fft(u)
    scale = float(np.abs(spec).max()) or 1.0
    if abs(spec[n // 2]) > 1e-9 * scale:
        raise ValueError("input bandwidth exceeds the grid (Nyquist energy)")
    m = np.fft.fftfreq(n, d=1.0 / n)
    mult = -1j * np.sign(m)
    mult[np.abs(m) <= 1] = 0.0
    return np.real(np.fft.ifft(mult * spec))


# ---------------------------------------------------------------------------
# integral projection onto harmonic Beltrami coefficients


@dataclass
class AhlforsResult:
    value: complex
    error_estimate: float
    flagged: bool
    cells: int


def _gauss_cell(fn, x0, x1, y0, y1, n):
    nodes, weights = np.polynomial.legendre.leggauss(n)
    xm, xr = 0.5 * (x0 + x1), 0.5 * (x1 - x0)
    ym, yr = 0.5 * (y0 + y1), 0.5 * (y1 - y0)
    xs = xm + xr * nodes
    ys = ym + yr * nodes
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    vals = fn(gx + 1j * gy)
    ww = np.outer(weights, weights)
    return complex(np.sum(vals * ww) * xr * yr)


def ahlfors_projection(
    mu: Callable[[np.ndarray], np.ndarray],
    z: complex,
    tol: float = 1e-3,
    radius: float = 40.0,
    max_cells: int = 4096,
) -> AhlforsResult:
    """Projection (-3 (z - conj z)^2 / pi) int mu(eta) / (eta - conj z)^4.

    mu is sampled on the upper half-plane; it must be bounded with decay
    o(|eta|^-2) so the truncated tail is controlled by the kernel's
    quartic decay.  Cells are refined greedily by the difference between
    nested Gauss rules until the estimated error (plus the tail bound)
    drops below tol; if the budget runs out first the result is flagged.
    """
    if z.imag <= 0:
        raise ValueError("evaluation point must be in the upper half-plane")
    pref = -3.0 * (z - np.conj(z)) ** 2 / math.pi

    def integrand(eta):
        return mu(eta) / (eta - np.conj(z)) ** 4

    # tail bound: |mu| sampled on the truncation circle, kernel ~ r^-4
    phis = np.linspace(0.05, math.pi - 0.05, 64)
    ring = radius * np.exp(1j * phis)
    mu_ring = float(np.max(np.abs(mu(ring))))
    tail = abs(pref) * mu_ring * math.pi / (2.0 * radius**2)

    # initial grid graded toward the real axis and the origin, where both
    # the kernel and typical coefficient fields concentrate
    pos = [b for b in (0.5, 1.0, 2.0, 4.0, 8.0, 16.0) if b < radius]
    ybreaks = [1e-12] + pos + [radius]
    xbreaks = [-radius] + [-b for b in reversed(pos)] + [0.0] + pos + [radius]
    cells = [
        (xbreaks[i], xbreaks[i + 1], ybreaks[j], ybreaks[j + 1])
        for i in range(len(xbreaks) - 1)
        for j in range(len(ybreaks) - 1)
    ]
    vals = {}
    errs = {}

    def eval_cell(cell):
        v_hi = _gauss_cell(integrand, *cell, n=8)
        v_lo = _gauss_cell(integrand, *cell, n=4)
        vals[cell] = v_hi
        errs[cell] = abs(v_hi - v_lo)

    for cell in cells:
        eval_cell(cell)
    while len(cells) < max_cells:
        total_err = abs(pref) * sum(errs[c] for c in cells) + tail
        if total_err <= tol:
            break
        worst = max(cells, key=lambda c: errs[c])
        x0, x1, y0, y1 = worst
        xm, ym = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        children = [
            (x0, xm, y0, ym),
            (xm, x1, y0, ym),
            (x0, xm, ym, y1),
            (xm, x1, ym, y1),
        ]
        cells.remove(worst)
        del vals[worst], errs[worst]
        for ch in children:
            eval_cell(ch)
        cells.extend(children)
    total = complex(pref * sum(vals[c] for c in cells))
    total_err = abs(pref) * sum(errs[c] for c in cells) + tail
    return AhlforsResult(total, float(total_err), total_err > tol, len(cells))


# ---------------------------------------------------------------------------
# coefficient files: lines `m re im` for m >= 2


def write_coefficients(path: str, f: FourierVectorField) -> None:
    with open(path, "w") as fh:
        for m in range(2, f.max_mode + 1):
            v = f.coeffs[m - 2]
            fh.write(f"{m} {'%.17g' % v.real} {'%.17g' % v.imag}\n")


def read_coefficients(path: str) -> FourierVectorField:
    modes: dict[int, complex] = {}
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            m = int(parts[0])
            if m < 2:
                raise ValueError("coefficient files list modes m >= 2 only")
            modes[m] = complex(float(parts[1]), float(parts[2]))
    if not modes:
        raise ValueError("no coefficients found")
    return FourierVectorField.from_modes(modes)
