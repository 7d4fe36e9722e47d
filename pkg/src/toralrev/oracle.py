"""Brute-force reference searches used to cross-check the closed-form paths.

Nothing here calls into ``gl2z``, ``affine`` or ``lattice``. Absence of a
witness from a bounded search is evidence, never a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import SingularAminusI
from .exactmath import Mat2, TorusPoint, UniMat


@dataclass(frozen=True)
class SearchBound:
    entry_bound: int = 10
    denominator_bound: int = 12

    def __post_init__(self):
        if self.entry_bound < 1 or self.denominator_bound < 1:
            raise ValueError("search bounds must be >= 1")


@lru_cache(maxsize=8)
def _unimodular_table(bound: int) -> np.ndarray:
    """All det +-1 matrices with entries in [-bound, bound], row-major order.

    Rows of the returned ``(n, 4)`` array are ``(a, b, c, d)``.
    """
    r = np.arange(-bound, bound + 1, dtype=np.int64)
    c, d = np.meshgrid(r, r, indexing="ij")
    c, d = c.ravel(), d.ravel()
    chunks = []
    for a in r:
        for b in r:
            det = a * d - b * c
            keep = (det == 1) | (det == -1)
            k = int(keep.sum())
            if k:
                block = np.empty((k, 4), dtype=np.int64)
                block[:, 0] = a
                block[:, 1] = b
                block[:, 2] = c[keep]
                block[:, 3] = d[keep]
                chunks.append(block)
    return np.concatenate(chunks)


def enumerate_unimodular(entry_bound: int) -> Iterator[UniMat]:
    if entry_bound < 1:
        raise ValueError("entry_bound must be >= 1")
    for row in _unimodular_table(entry_bound):
        yield UniMat(*(int(x) for x in row))


def count_unimodular(entry_bound: int) -> int:
    return len(_unimodular_table(entry_bound))


def _first_match(mask: np.ndarray, table: np.ndarray) -> Optional[UniMat]:
    idx = np.flatnonzero(mask)
    if idx.size == 0:
        return None
    return UniMat(*(int(x) for x in table[idx[0]]))


def brute_conjugator_search(a: Mat2, b: Mat2, bound: int, involutive: bool = False) -> Optional[UniMat]:
    """First ``C`` in enumeration order with ``C A == B C`` (and ``C^2 == I``
    when ``involutive``)."""
    t = _unimodular_table(bound)
    p, q, r, s = t[:, 0], t[:, 1], t[:, 2], t[:, 3]
    a11, a12, a21, a22 = a.entries
    b11, b12, b21, b22 = b.entries
    mask = (
        (p * a11 + q * a21 == b11 * p + b12 * r)
        & (p * a12 + q * a22 == b11 * q + b12 * s)
        & (r * a11 + s * a21 == b21 * p + b22 * r)
        & (r * a12 + s * a22 == b21 * q + b22 * s)
    )
    if involutive:
        mask &= (p * p + q * r == 1) & (q * (p + s) == 0) & (r * (p + s) == 0) & (r * q + s * s == 1)
    return _first_match(mask, t)


def brute_reverser_search(a: UniMat, bound: int, involutive: bool = False) -> Optional[UniMat]:
    """First ``R`` in enumeration order with ``R A R^-1 == A^-1``."""
    det = a.det
    inv = Mat2(det * a.d, -det * a.b, -det * a.c, det * a.a)
    return brute_conjugator_search(a, inv, bound, involutive)


# ---------------------------------------------------------- lattice points


def brute_polygon_lattice_points(vertices: Sequence[Tuple[int, int]]) -> Tuple[int, int]:
    """``(interior, boundary)`` lattice-point counts of a closed convex
    lattice polygon, by scanning its bounding box with exact cross products."""
    v = np.asarray(vertices, dtype=np.int64)
    xs = np.arange(v[:, 0].min(), v[:, 0].max() + 1)
    ys = np.arange(v[:, 1].min(), v[:, 1].max() + 1)
    px, py = np.meshgrid(xs, ys, indexing="ij")
    px, py = px.ravel(), py.ravel()
    n = len(v)
    crosses = []
    for i in range(n):
        x0, y0 = v[i]
        x1, y1 = v[(i + 1) % n]
        crosses.append((x1 - x0) * (py - y0) - (y1 - y0) * (px - x0))
    cr = np.stack(crosses)
    area2 = sum(int(v[i, 0] * v[(i + 1) % n, 1] - v[(i + 1) % n, 0] * v[i, 1]) for i in range(n))
    if area2 < 0:
        cr = -cr
    inside = (cr >= 0).all(axis=0)
    interior = (cr > 0).all(axis=0)
    return int(interior.sum()), int((inside & ~interior).sum())


def parallelogram_vertices(a: Mat2) -> List[Tuple[int, int]]:
    v = (a.a - 1, a.c)
    w = (a.b, a.d - 1)
    return [(0, 0), v, (v[0] + w[0], v[1] + w[1]), w]


def brute_lattice_points(a: Mat2) -> Tuple[int, int]:
    """``(interior, boundary)`` counts for the closed parallelogram spanned by
    the columns of ``A - I``."""
    if (a.a - 1) * (a.d - 1) - a.b * a.c == 0:
        raise SingularAminusI(f"det(A - I) = 0 for {a}")
    return brute_polygon_lattice_points(parallelogram_vertices(a))


# ------------------------------------------------------------ fixed points


def brute_fixed_points(a: Mat2, b: TorusPoint, denominator_bound: Optional[int] = None) -> List[TorusPoint]:
    """Grid search for fixed points of ``x -> A x + b`` on the torus.

    Every grid ``(1/q) Z^2`` is scanned for ``q`` a multiple of the order of
    ``b`` up to ``denominator_bound`` (default ``|det(A - I)|`` times that
    order, which contains every fixed point when ``det(A - I) != 0``).
    """
    q0 = b.denominator
    if denominator_bound is None:
        denominator_bound = max(1, abs((a.a - 1) * (a.d - 1) - a.b * a.c)) * q0
    found = set()
    for q in range(q0, denominator_bound + 1, q0):
        # A p + b - p integral with p = (i, j)/q  <=>  (A - I)(i, j) + q b = 0 mod q
        s1, s2 = int(b.x1 * q), int(b.x2 * q)
        i, j = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
        r1 = (a.a - 1) * i + a.b * j + s1
        r2 = a.c * i + (a.d - 1) * j + s2
        hit = (r1 % q == 0) & (r2 % q == 0)
        for x, y in zip(i[hit].tolist(), j[hit].tolist()):
            found.add(TorusPoint(Fraction(x, q), Fraction(y, q)))
    return sorted(found, key=lambda p: (p.x1, p.x2))


def brute_pell_units(a: UniMat, bound: int) -> List[UniMat]:
    """Centralizer elements of ``A`` with entries in ``[-bound, bound]``."""
    t = _unimodular_table(bound)
    p, q, r, s = t[:, 0], t[:, 1], t[:, 2], t[:, 3]
    a11, a12, a21, a22 = a.entries
    mask = (
        (p * a11 + q * a21 == a11 * p + a12 * r)
        & (p * a12 + q * a22 == a11 * q + a12 * s)
        & (r * a11 + s * a21 == a21 * p + a22 * r)
        & (r * a12 + s * a22 == a21 * q + a22 * s)
    )
    return [UniMat(*(int(x) for x in row)) for row in t[mask]]
