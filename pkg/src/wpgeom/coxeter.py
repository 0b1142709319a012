"""Curve systems, right-angled Coxeter word calculus, and development points.

A curve system is a finite set of named curves with pairwise geometric
intersection numbers.  The induced Coxeter matrix takes m(s,s) = 1,
m(s,s') = 2 when the curves are disjoint, and infinity when they cross, so
the group is right-angled and the word problem is solved by a linear-time
normal form: cancel equal letters that can be brought together by
commutations, and sort commuting runs to the shortlex-least word.

Development points [g, y] pair a group element with a base point of the
k-factor cusp model; two pairs are equal when the bases agree and g^-1 g'
lies in the special subgroup of the base point's stratum.  Distances are
supported within one copy and across a single reflection wall, where the
crossing reduces to an amalgam over the shared stratum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cat0 import CuspSpace, GluedPoint, ProductCuspSpace, glue, point_gate, wall_gate
from .cusp import ModelParams

__all__ = [
    "CurveSystem",
    "CoxeterMatrix",
    "coxeter_matrix",
    "reduce_word",
    "word_inverse",
    "EnumerationResult",
    "enumerate_group",
    "DevelopmentPoint",
    "dev_equal",
    "dev_distance",
    "read_curve_system",
    "write_curve_system",
]


@dataclass(frozen=True)
class CurveSystem:
    """Named curves with a symmetric, zero-diagonal intersection table."""

    names: tuple[str, ...]
    intersections: np.ndarray  # (n, n) nonnegative ints

    def __post_init__(self):
        m = np.asarray(self.intersections, dtype=int)
        n = len(self.names)
        if m.shape != (n, n):
            raise ValueError("intersection table shape mismatch")
        if np.any(m != m.T) or np.any(np.diag(m) != 0) or np.any(m < 0):
            raise ValueError("intersections must be symmetric, nonnegative, zero diagonal")
        object.__setattr__(self, "intersections", m)

    @property
    def n(self) -> int:
        return len(self.names)

    @staticmethod
    def torus_classes(classes: Sequence[tuple[int, int]]) -> "CurveSystem":
        """Primitive (p, q) classes; i((p,q), (p',q')) = |p q' - q p'|."""
        for p, q in classes:
            if (p, q) == (0, 0) or math.gcd(abs(p), abs(q)) != 1:
                raise ValueError(f"({p},{q}) is not a primitive class")
        n = len(classes)
        m = np.zeros((n, n), dtype=int)
        for a in range(n):
            for b in range(n):
                if a != b:
                    (p, q), (r, s) = classes[a], classes[b]
                    m[a, b] = abs(p * s - q * r)
        names = tuple(f"({p},{q})" for p, q in classes)
        return CurveSystem(names, m)

    @staticmethod
    def genus2_catalog() -> "CurveSystem":
        """Fixed five-curve system on the closed genus-2 surface.

        c1, c2, c3 are a pants decomposition (c2 separates the two handles);
        t1 and t2 are the dual curves inside each handle, meeting their
        waist curve once and nothing else.
        """
        names = ("c1", "c2", "c3", "t1", "t2")
        m = np.zeros((5, 5), dtype=int)
        m[0, 3] = m[3, 0] = 1  # i(c1, t1)
        m[2, 4] = m[4, 2] = 1  # i(c3, t2)
        return CurveSystem(names, m)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Entries in {1, 2, inf}; stored with 0 encoding infinity."""

    table: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.table, dtype=int)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("matrix must be square")
        if np.any(t != t.T) or np.any(np.diag(t) != 1):
            raise ValueError("diagonal must be 1 and the table symmetric")
        off = t[~np.eye(t.shape[0], dtype=bool)]
        if np.any((off != 2) & (off != 0)):
            raise ValueError("off-diagonal entries must be 2 or infinity (0)")
        object.__setattr__(self, "table", t)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def entry(self, i: int, j: int) -> float:
        v = int(self.table[i, j])
        return math.inf if v == 0 else float(v)

    def commutes(self, i: int, j: int) -> bool:
        return self.table[i, j] == 2

    @staticmethod
    def all_commuting(n: int) -> "CoxeterMatrix":
        t = np.full((n, n), 2, dtype=int)
        np.fill_diagonal(t, 1)
        return CoxeterMatrix(t)

    @staticmethod
    def free_product(n: int) -> "CoxeterMatrix":
        t = np.zeros((n, n), dtype=int)
        np.fill_diagonal(t, 1)
        return CoxeterMatrix(t)


def coxeter_matrix(cs: CurveSystem) -> CoxeterMatrix:
    """m(s,s)=1; m(s,s')=2 for disjoint curves, infinity for crossing ones."""
    n = cs.n
    t = np.where(cs.intersections > 0, 0, 2).astype(int)
    np.fill_diagonal(t, 1)
    return CoxeterMatrix(t)


# ---------------------------------------------------------------------------
# word calculus


def reduce_word(word: Sequence[int], m: CoxeterMatrix) -> tuple[int, ...]:
    """Shortlex normal form in the right-angled group.

    Phase one deletes letters pairwise: a new letter cancels the nearest
    equal letter that commutes past everything between them, which leaves a
    geodesic word (all geodesic representatives differ by commutations
    only).  Phase two picks, repeatedly, the smallest letter that can be
    commuted to the front, producing the lexicographically least geodesic.
    Idempotent; two words are equal in the group iff normal forms coincide.
    """
    n = m.n
    out: list[int] = []
    for s in word:
        s = int(s)
        if not 0 <= s < n:
            raise ValueError(f"letter {s} out of range for {n} generators")
        cancel = -1
        j = len(out) - 1
        while j >= 0:
            if out[j] == s:
                cancel = j
                break
            if not m.commutes(out[j], s):
                break
            j -= 1
        if cancel >= 0:
            out.pop(cancel)
        else:
            out.append(s)

    res: list[int] = []
    while out:
        best = None
        for j, letter in enumerate(out):
            if all(m.commutes(out[k], letter) for k in range(j)):
                if best is None or letter < out[best]:
                    best = j
        res.append(out.pop(best))
    return tuple(res)


def word_inverse(word: Sequence[int]) -> tuple[int, ...]:
    """Generators are involutions, so the inverse is the reversal."""
    return tuple(reversed(list(word)))


@dataclass
class EnumerationResult:
    elements: list[tuple[int, ...]]
    finite: bool
    order: int | None
    max_len: int


_ENUM_GUARD = 10**6


def enumerate_group(m: CoxeterMatrix, max_len: int) -> EnumerationResult:
    """All distinct normal forms up to max_len by breadth-first products.

    Reports finiteness when no new elements appear at some length, i.e. the
    enumerated set is closed under right multiplication.
    """
    if max_len > 12:
        raise ValueError("max_len capped at 12")
    seen = {(): None}
    frontier = [()]
    finite = False
    for _ in range(max_len):
        new = []
        for w in frontier:
            for s in range(m.n):
                nf = reduce_word(list(w) + [s], m)
                if nf not in seen:
                    seen[nf] = None
                    new.append(nf)
                    if len(seen) > _ENUM_GUARD:
                        raise ArithmeticError("enumeration exceeded the element guard")
        if not new:
            finite = True
            break
        frontier = new
    elements = sorted(seen.keys(), key=lambda w: (len(w), w))
    return EnumerationResult(elements, finite, len(elements) if finite else None, max_len)


# ---------------------------------------------------------------------------
# development points


@dataclass(frozen=True)
class DevelopmentPoint:
    """[g, y]: reduced word g and a base point of the k-factor cusp model.

    The base is a (k, 2) array of (u, theta) pairs; factors with u = 0 sit
    on the corresponding stratum, and their angle is immaterial.
    """

    word: tuple[int, ...]
    base: np.ndarray

    def __post_init__(self):
        b = np.atleast_2d(np.asarray(self.base, dtype=float))
        if b.ndim != 2 or b.shape[1] != 2 or np.any(b[:, 0] < 0):
            raise ValueError("base must be (k, 2) with u >= 0")
        object.__setattr__(self, "base", b)

    @property
    def k(self) -> int:
        return self.base.shape[0]

    def stratum(self) -> frozenset[int]:
        return frozenset(int(j) for j in np.nonzero(self.base[:, 0] == 0.0)[0])


def _bases_equal(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    if not np.array_equal(a[:, 0], b[:, 0]):
        return False
    interior = a[:, 0] > 0
    da = np.mod(a[interior, 1] - b[interior, 1] + np.pi, 2 * np.pi) - np.pi
    return bool(np.all(np.abs(da) == 0.0))


def dev_equal(p: DevelopmentPoint, q: DevelopmentPoint, m: CoxeterMatrix) -> bool:
    """[g,y] ~ [g',y'] iff y = y' and g^-1 g' lies in the special subgroup
    of the base stratum (its normal form uses only stratum letters)."""
    if p.k != q.k or m.n < p.k:
        raise ValueError("development points live over different curve systems")
    if not _bases_equal(p.base, q.base):
        return False
    rel = reduce_word(word_inverse(p.word) + tuple(q.word), m)
    sigma = p.stratum()
    return all(letter in sigma for letter in rel)


class UnsupportedCrossing(ValueError):
    """Raised for copy pairs beyond the adjacent-wall restriction."""


def dev_distance(
    p: DevelopmentPoint,
    q: DevelopmentPoint,
    m: CoxeterMatrix,
    params: ModelParams = ModelParams(),
) -> float:
    """Distance between development points.

    Same copy: the product model distance.  Copies differing by a single
    reflection: the amalgam over the reflecting wall's stratum (supported
    for k = 1 via the collapsed vertex and k = 2 via the 2-parameter wall).
    Anything further is outside the adjacent-copy restriction.
    """
    if p.k != q.k:
        raise ValueError("mismatched factor counts")
    k = p.k
    rel = reduce_word(word_inverse(p.word) + tuple(q.word), m)
    if k == 1:
        space = CuspSpace(params)
        x, y = p.base[0], q.base[0]
    else:
        space = ProductCuspSpace(k, params)
        x, y = p.base, q.base
    if len(rel) == 0:
        return float(space.distance(x, y))
    if len(rel) > 1:
        raise UnsupportedCrossing(
            f"copies differ by {rel}; only single-wall crossings are supported"
        )
    wall = rel[0]
    if wall >= k:
        raise ValueError(f"reflection {wall} has no factor in a {k}-factor model")
    if k == 1:
        amalgam = glue(space, space, point_gate([0.0, 0.0], [0.0, 0.0]))
    elif k == 2:
        u_max = float(max(p.base[:, 0].max(), q.base[:, 0].max())) * 3.0 + 1.0
        amalgam = glue(space, space, wall_gate(wall, u_max=u_max))
    else:
        raise UnsupportedCrossing("wall crossings are supported for k <= 2 factors")
    gx = GluedPoint(np.array(0), np.asarray(x, float))
    gy = GluedPoint(np.array(1), np.asarray(y, float))
    return float(amalgam.distance(gx, gy))


# ---------------------------------------------------------------------------
# file format: `n`, then n(n-1)/2 lines `s s' i`


def write_curve_system(path: str, cs: CurveSystem) -> None:
    with open(path, "w") as fh:
        fh.write(f"{cs.n}\n")
        for a in range(cs.n):
            for b in range(a + 1, cs.n):
                fh.write(f"{cs.names[a]} {cs.names[b]} {cs.intersections[a, b]}\n")


def read_curve_system(path: str) -> CurveSystem:
    with open(path) as fh:
        n = int(fh.readline())
        names: list[str] = []
        rows = []
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            a, b, val = parts[0], parts[1], int(parts[2])
            for nm in (a, b):
                if nm not in names:
                    names.append(nm)
            rows.append((a, b, val))
    if len(names) != n:
        raise ValueError(f"expected {n} curve names, found {len(names)}")
    idx = {nm: i for i, nm in enumerate(names)}
    table = np.zeros((n, n), dtype=int)
    for a, b, val in rows:
        table[idx[a], idx[b]] = val
        table[idx[b], idx[a]] = val
    return CurveSystem(tuple(names), table)
