"""Deterministic seeded randomness for all sampled property suites.

The generator is splitmix64: a counter-based 64-bit generator whose k-th
output is obtained by mixing ``seed + (k+1) * 0x9E3779B97F4A7C15`` with

    z ^= z >> 30;  z *= 0xBF58476D1CE4E5B9
    z ^= z >> 27;  z *= 0x94D049BB133111EB
    z ^= z >> 31

Doubles in [0, 1) are ``(z >> 11) * 2**-53``.  Because the state update is
a plain counter increment, arbitrary-length batches can be produced in one
vectorized pass and every consumer is reproducible from (seed, offset).
"""

from __future__ import annotations

import numpy as np

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


class SplitMix64:
    """Counter-based splitmix64 stream with vectorized batch draws."""

    def __init__(self, seed: int):
        self._seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self._count = 0

    def uint64(self, n: int) -> np.ndarray:
        idx = np.arange(self._count + 1, self._count + n + 1, dtype=np.uint64)
        self._count += n
        with np.errstate(over="ignore"):
            return _mix(self._seed + idx * _GAMMA)

    def floats(self, *shape: int) -> np.ndarray:
        """Uniform doubles in [0, 1)."""
        n = int(np.prod(shape)) if shape else 1
        u = (self.uint64(n) >> np.uint64(11)).astype(np.float64) * 2.0**-53
        return u.reshape(shape) if shape else u[0]

    def uniform(self, lo: float, hi: float, *shape: int) -> np.ndarray:
        return lo + (hi - lo) * self.floats(*shape)

    def normals(self, *shape: int) -> np.ndarray:
        """Standard normals via Box-Muller on consecutive uniform pairs."""
        n = int(np.prod(shape)) if shape else 1
        m = (n + 1) // 2
        u1 = np.maximum(self.floats(m), 1e-300)
        u2 = self.floats(m)
        r = np.sqrt(-2.0 * np.log(u1))
        g = np.concatenate([r * np.cos(2 * np.pi * u2), r * np.sin(2 * np.pi * u2)])[:n]
        return g.reshape(shape) if shape else g[0]

    def integers(self, lo: int, hi: int, *shape: int) -> np.ndarray:
        """Integers in [lo, hi), by rejection-free modular draw (tiny bias fine for tests)."""
        n = int(np.prod(shape)) if shape else 1
        v = (self.uint64(n) % np.uint64(hi - lo)).astype(np.int64) + lo
        return v.reshape(shape) if shape else int(v[0])


def substream(seed: int, label: str) -> SplitMix64:
    """Independent stream for a named suite: seed is mixed with the label hash."""
    h = np.uint64(2166136261)
    for ch in label.encode():
        with np.errstate(over="ignore"):
            h = (h ^ np.uint64(ch)) * np.uint64(16777619)
    with np.errstate(over="ignore"):
        return SplitMix64(int(_mix(np.uint64(seed) ^ h)))
