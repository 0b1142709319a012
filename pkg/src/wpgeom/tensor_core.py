"""Symmetric 2x2 tensor algebra and spectral operators on the flat torus.

Pointwise layer: the L2 pairing of deformation tensors against a background
SPD metric and its Levi-Civita connection (exact 2x2 matrix algebra).

Field layer: periodic tensor fields sampled at nodes j/N of the unit square,
differentiated spectrally, with the flat-background trace/divergence
operators, the linearized curvature operator and its adjoint, and the
mode-by-mode orthogonal splitting of an arbitrary field into

    constant traceless + Lie-derivative + conformal + constant trace

parts.  On the flat background the kernel of the Laplacian is the constants
and translations are Killing fields, so the constant trace mode is returned
as a separate scalar and the vector potential is gauge-fixed to zero mean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "SymTensor2",
    "Metric2",
    "TensorField",
    "Decomposition",
    "l2_pairing_pointwise",
    "levi_civita",
    "trace_and_divergence",
    "lichnerowicz",
    "lichnerowicz_adjoint",
    "lie_derivative_flat",
    "hessian",
    "laplacian",
    "l2_decompose",
    "reassemble",
    "field_inner",
    "write_tensor_field",
    "read_tensor_field",
]

FMT = "%.17g"


# ---------------------------------------------------------------------------
# pointwise types


@dataclass(frozen=True)
class SymTensor2:
    """Symmetric (0,2)-tensor with constant components (h11, h12, h22)."""

    h11: float
    h12: float
    h22: float

    def matrix(self) -> np.ndarray:
        return np.array([[self.h11, self.h12], [self.h12, self.h22]], dtype=float)

    @staticmethod
    def from_matrix(m: np.ndarray) -> "SymTensor2":
        if abs(m[0, 1] - m[1, 0]) > 1e-12 * (1 + abs(m[0, 1])):
            raise ValueError("matrix is not symmetric")
        return SymTensor2(float(m[0, 0]), 0.5 * float(m[0, 1] + m[1, 0]), float(m[1, 1]))

    def trace_wrt(self, g: "Metric2") -> float:
        return float(np.trace(g.inv() @ self.matrix()))

    def norm_wrt(self, g: "Metric2") -> float:
        return float(np.sqrt(max(l2_pairing_pointwise(g, self, self), 0.0)))

    def __add__(self, other: "SymTensor2") -> "SymTensor2":
        return SymTensor2(self.h11 + other.h11, self.h12 + other.h12, self.h22 + other.h22)

    def __sub__(self, other: "SymTensor2") -> "SymTensor2":
        return SymTensor2(self.h11 - other.h11, self.h12 - other.h12, self.h22 - other.h22)

    def __rmul__(self, c: float) -> "SymTensor2":
        return SymTensor2(c * self.h11, c * self.h12, c * self.h22)


@dataclass(frozen=True)
class Metric2:
    """SPD background metric; unit_det() rescales to determinant one."""

    g11: float
    g12: float
    g22: float

    def __post_init__(self):
        if not (self.g11 > 0 and self.det() > 0):
            raise ValueError(f"metric not positive definite: {self}")

    def det(self) -> float:
        return self.g11 * self.g22 - self.g12**2

    def matrix(self) -> np.ndarray:
        return np.array([[self.g11, self.g12], [self.g12, self.g22]], dtype=float)

    def inv(self) -> np.ndarray:
        d = self.det()
        return np.array([[self.g22, -self.g12], [-self.g12, self.g11]]) / d

    def unit_det(self) -> "Metric2":
        s = self.det() ** -0.5
        return Metric2(self.g11 * s, self.g12 * s, self.g22 * s)

    @staticmethod
    def from_matrix(m: np.ndarray) -> "Metric2":
        return Metric2(float(m[0, 0]), 0.5 * float(m[0, 1] + m[1, 0]), float(m[1, 1]))

    @staticmethod
    def identity() -> "Metric2":
        return Metric2(1.0, 0.0, 1.0)


def l2_pairing_pointwise(g: Metric2, h: SymTensor2, k: SymTensor2) -> float:
    """<h,k>_g = g^{ij} g^{kl} h_ik k_jl = Tr(g^-1 h g^-1 k)."""
    gi = g.inv()
    return float(np.trace(gi @ h.matrix() @ gi @ k.matrix()))


def levi_civita(g: Metric2, h1: SymTensor2, h2: SymTensor2) -> SymTensor2:
    """Levi-Civita connection of the L2 pairing on constant symmetric tensors.

    D_{h1} h2 = -1/2 [h1 g^-1 h2 + h2 g^-1 h1]
                + 1/4 [(tr_g h1) h2 + (tr_g h2) h1 - <h1,h2>_g g]

    Symmetric in (h1, h2); the trace bracket handles inputs with trace.
    """
    gi = g.inv()
    m1, m2 = h1.matrix(), h2.matrix()
    prod = -0.5 * (m1 @ gi @ m2 + m2 @ gi @ m1)
    t1 = float(np.trace(gi @ m1))
    t2 = float(np.trace(gi @ m2))
    pair = float(np.trace(gi @ m1 @ gi @ m2))
    out = prod + 0.25 * (t1 * m2 + t2 * m1 - pair * g.matrix())
    return SymTensor2.from_matrix(out)


# ---------------------------------------------------------------------------
# periodic fields

_MIN_N = 8


def _check_grid(n: int) -> None:
    if n < _MIN_N or n % 2 != 0:
        raise ValueError(f"grid size must be even and >= {_MIN_N}, got {n}")


class TensorField:
    """Periodic symmetric-tensor field on an N x N grid over [0,1)^2.

    Values live at nodes (i/N, j/N); component arrays are (N, N) with the
    first index along x1.  Periodic identification is index arithmetic mod N.
    """

    def __init__(self, h11: np.ndarray, h12: np.ndarray, h22: np.ndarray):
        h11, h12, h22 = (np.asarray(a, dtype=float) for a in (h11, h12, h22))
        if not (h11.shape == h12.shape == h22.shape) or h11.ndim != 2 or h11.shape[0] != h11.shape[1]:
            raise ValueError("components must be square arrays of equal shape")
        _check_grid(h11.shape[0])
        self.h11, self.h12, self.h22 = h11, h12, h22

    @property
    def n(self) -> int:
        return self.h11.shape[0]

    @staticmethod
    def constant(t: SymTensor2, n: int) -> "TensorField":
        _check_grid(n)
        o = np.ones((n, n))
        return TensorField(t.h11 * o, t.h12 * o, t.h22 * o)

    def components(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self.h11, self.h12, self.h22

    def mean_tensor(self) -> SymTensor2:
        return SymTensor2(float(self.h11.mean()), float(self.h12.mean()), float(self.h22.mean()))

    def __add__(self, other: "TensorField") -> "TensorField":
        return TensorField(self.h11 + other.h11, self.h12 + other.h12, self.h22 + other.h22)

    def __sub__(self, other: "TensorField") -> "TensorField":
        return TensorField(self.h11 - other.h11, self.h12 - other.h12, self.h22 - other.h22)


def grid_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.arange(n) / n
    return np.meshgrid(x, x, indexing="ij")


def _wavenumbers(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Differentiation wavenumber grids with the Nyquist line zeroed.

    Zeroing the unpaired Nyquist mode keeps every operator real and makes
    all identities among operators hold at the bandlimited level.
    """
    k = 2 * np.pi * np.fft.fftfreq(n, d=1.0 / n)
    k[n // 2] = 0.0
    return np.meshgrid(k, k, indexing="ij")


def _deriv(a: np.ndarray, axis: int) -> np.ndarray:
    """Spectral partial derivative (single pass)."""
    k1, k2 = _wavenumbers(a.shape[0])
    k = k1 if axis == 0 else k2
    return np.real(np.fft.ifft2(1j * k * np.fft.fft2(a)))


def laplacian(f: np.ndarray) -> np.ndarray:
    k1, k2 = _wavenumbers(f.shape[0])
    return np.real(np.fft.ifft2(-(k1**2 + k2**2) * np.fft.fft2(f)))


def hessian(f: np.ndarray) -> TensorField:
    """All second partials from one transform (no roundoff re-amplification)."""
    k1, k2 = _wavenumbers(f.shape[0])
    fh = np.fft.fft2(f)
    return TensorField(
        np.real(np.fft.ifft2(-k1 * k1 * fh)),
        np.real(np.fft.ifft2(-k1 * k2 * fh)),
        np.real(np.fft.ifft2(-k2 * k2 * fh)),
    )


def lie_derivative_flat(x1: np.ndarray, x2: np.ndarray) -> TensorField:
    """(L_X delta)_ij = d_i X_j + d_j X_i for the flat background."""
    k1, k2 = _wavenumbers(x1.shape[0])
    a = np.fft.fft2(x1)
    b = np.fft.fft2(x2)
    return TensorField(
        np.real(np.fft.ifft2(2j * k1 * a)),
        np.real(np.fft.ifft2(1j * (k1 * b + k2 * a))),
        np.real(np.fft.ifft2(2j * k2 * b)),
    )


def trace_and_divergence(h: TensorField, g: Metric2) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise trace tr_g h and divergence (delta h)_i = g^{jk} d_k h_{ij}.

    The background is a constant metric on the torus so covariant
    derivatives reduce to partials, evaluated in one spectral pass.
    """
    gi = g.inv()
    tr = gi[0, 0] * h.h11 + 2 * gi[0, 1] * h.h12 + gi[1, 1] * h.h22
    k1, k2 = _wavenumbers(h.n)
    a = np.fft.fft2(h.h11)
    b = np.fft.fft2(h.h12)
    c = np.fft.fft2(h.h22)
    # (delta h)_i = g^{jk} (d_k h)_{ij}; derivative d_k -> i k_k
    d1 = np.real(np.fft.ifft2(1j * (gi[0, 0] * k1 * a + gi[0, 1] * (k2 * a + k1 * b) + gi[1, 1] * k2 * b)))
    d2 = np.real(np.fft.ifft2(1j * (gi[0, 0] * k1 * b + gi[0, 1] * (k2 * b + k1 * c) + gi[1, 1] * k2 * c)))
    return tr, np.stack([d1, d2], axis=-1)


def lichnerowicz(h: TensorField) -> np.ndarray:
    """Flat-background linearized curvature operator -Lap(tr h) + div div h.

    In Fourier variables the combined multiplier is
    k2^2 h11 - 2 k1 k2 h12 + k1^2 h22, applied in a single pass.
    """
    k1, k2 = _wavenumbers(h.n)
    a = np.fft.fft2(h.h11)
    b = np.fft.fft2(h.h12)
    c = np.fft.fft2(h.h22)
    return np.real(np.fft.ifft2(k2 * k2 * a - 2 * k1 * k2 * b + k1 * k1 * c))


def lichnerowicz_adjoint(f: np.ndarray) -> TensorField:
    """Adjoint on the flat background: L* f = (-Lap f) delta + Hess f.

    Componentwise Fourier multipliers (k2^2, -k1 k2, k1^2)."""
    k1, k2 = _wavenumbers(f.shape[0])
    fh = np.fft.fft2(f)
    return TensorField(
        np.real(np.fft.ifft2(k2 * k2 * fh)),
        np.real(np.fft.ifft2(-k1 * k2 * fh)),
        np.real(np.fft.ifft2(k1 * k1 * fh)),
    )


def field_inner(a, b) -> float:
    """Discrete L2 inner product on the unit-area grid (flat background).

    Accepts scalar arrays, (N,N,2) vector arrays, or TensorField pairs; the
    tensor case uses the identity-metric pairing h11 k11 + 2 h12 k12 + h22 k22.
    """
    if isinstance(a, TensorField):
        n2 = a.n**2
        return float((a.h11 * b.h11 + 2 * a.h12 * b.h12 + a.h22 * b.h22).sum() / n2)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float((a * b).sum() / (a.shape[0] * a.shape[1]))


# ---------------------------------------------------------------------------
# mode-by-mode orthogonal splitting


@dataclass
class Decomposition:
    """Parts of the orthogonal splitting plus solve diagnostics."""

    constant_traceless: SymTensor2
    vector: np.ndarray  # (N, N, 2), zero mean
    scalar: np.ndarray  # (N, N), zero mean
    mean_trace: float
    max_condition: float


def l2_decompose(h: TensorField) -> Decomposition:
    """Split h = P + L_X delta + [(-Lap f) delta + Hess f] + (c/2) delta.

    Worked per Fourier mode: for frequency xi != 0 the three tensor
    components are spanned exactly by the two Lie images and the conformal
    image (the 3x3 mode system has determinant -2|xi|^4).  The zero mode
    carries the constant traceless part P and the mean trace c.  Solved by
    LU elimination with partial pivoting; the worst mode condition number is
    reported.
    """
    n = h.n
    k1, k2 = _wavenumbers(n)
    H = np.stack([np.fft.fft2(h.h11), np.fft.fft2(h.h12), np.fft.fft2(h.h22)], axis=-1)

    # the unpaired Nyquist axes carry no usable derivative information;
    # a spectrally resolved input has nothing there
    m = np.fft.fftfreq(n, d=1.0 / n)
    m1, m2 = np.meshgrid(m, m, indexing="ij")
    nyq = n // 2
    dead = ((np.abs(m1) == nyq) & (m2 == 0)) | ((m1 == 0) & (np.abs(m2) == nyq)) | (
        (np.abs(m1) == nyq) & (np.abs(m2) == nyq)
    )
    total = float(np.sqrt((np.abs(H) ** 2).sum()))
    dead_energy = float(np.sqrt((np.abs(H[dead]) ** 2).sum()))
    if total > 0 and dead_energy > 1e-12 * total:
        raise ValueError("input is not spectrally resolved: energy on the Nyquist axes")

    # mode matrices: columns = (L_{e1}, L_{e2}, conformal) images
    zero = np.zeros_like(k1)
    M = np.empty((n, n, 3, 3), dtype=complex)
    M[..., 0, 0] = 2j * k1
    M[..., 0, 1] = zero
    M[..., 0, 2] = k2**2
    M[..., 1, 0] = 1j * k2
    M[..., 1, 1] = 1j * k1
    M[..., 1, 2] = -k1 * k2
    M[..., 2, 0] = zero
    M[..., 2, 1] = 2j * k2
    M[..., 2, 2] = k1**2

    mask = ((m1 != 0) | (m2 != 0)) & ~dead
    Mnz = M[mask]
    rhs = H[mask]
    try:
        sol = np.linalg.solve(Mnz, rhs[..., None])[..., 0]
    except np.linalg.LinAlgError as exc:  # pragma: no cover - det = -2|xi|^4 != 0
        bad = np.argwhere(mask)[0]
        raise ArithmeticError(f"singular mode system at frequency index {tuple(bad)}") from exc
    cond = float(np.linalg.cond(Mnz).max()) if Mnz.size else 1.0

    Xh = np.zeros((n, n, 2), dtype=complex)
    Fh = np.zeros((n, n), dtype=complex)
    Xh[mask, 0] = sol[:, 0]
    Xh[mask, 1] = sol[:, 1]
    Fh[mask] = sol[:, 2]

    vector = np.stack(
        [np.real(np.fft.ifft2(Xh[..., 0])), np.real(np.fft.ifft2(Xh[..., 1]))], axis=-1
    )
    scalar = np.real(np.fft.ifft2(Fh))

    mean = h.mean_tensor()
    c = mean.h11 + mean.h22
    p = SymTensor2(mean.h11 - c / 2, mean.h12, mean.h22 - c / 2)
    return Decomposition(p, vector, scalar, float(c), cond)


def reassemble(parts: Decomposition, n: int) -> TensorField:
    """Inverse of l2_decompose: sum the four orthogonal pieces."""
    out = TensorField.constant(parts.constant_traceless, n)
    out = out + lie_derivative_flat(parts.vector[..., 0], parts.vector[..., 1])
    out = out + lichnerowicz_adjoint(parts.scalar)
    half_c = SymTensor2(parts.mean_trace / 2, 0.0, parts.mean_trace / 2)
    return out + TensorField.constant(half_c, n)


# ---------------------------------------------------------------------------
# text format: header `N`, then N^2 rows `i j h11 h12 h22` (row-major)


def write_tensor_field(path: str, h: TensorField) -> None:
    n = h.n
    with open(path, "w") as fh:
        fh.write(f"{n}\n")
        for i in range(n):
            for j in range(n):
                fh.write(
                    f"{i} {j} {FMT % h.h11[i, j]} {FMT % h.h12[i, j]} {FMT % h.h22[i, j]}\n"
                )


def read_tensor_field(path: str) -> TensorField:
    with open(path) as fh:
        n = int(fh.readline())
        a = np.zeros((n, n, 3))
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            i, j = int(parts[0]), int(parts[1])
            a[i, j] = [float(parts[2]), float(parts[3]), float(parts[4])]
    return TensorField(a[..., 0], a[..., 1], a[..., 2])
