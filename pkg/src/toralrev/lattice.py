"""Lattice points of the parallelogram spanned by the columns of ``A - I``,
and fixed points of affine torus maps.

The columns ``v = (a-1, c)`` and ``w = (b, d-1)`` span a parallelogram of
area ``|det(A - I)|``. Its boundary carries ``2 (g1 + g2)`` lattice points
with ``g1 = gcd(a-1, c)`` and ``g2 = gcd(b, d-1)``; Pick's formula then
gives the interior count. Whenever the area is at least ``g1 + g2`` every
map ``x -> A x + b`` has a fixed point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import SingularAminusI, ZeroVector
from .exactmath import IntVec, Mat2, SolutionKind, TorusPoint, solve_congruence


def segment_lattice_count(u: IntVec) -> int:
    """Lattice points on the closed segment from 0 to ``u``."""
    if tuple(u) == (0, 0):
        raise ZeroVector("segment needs a nonzero vector")
    return math.gcd(u[0], u[1]) + 1


@dataclass(frozen=True)
class LatticeReport:
    g1: int
    g2: int
    boundary_count: int
    interior_count: int
    area: int
    criterion_holds: bool


def _require_nonsingular(a: Mat2) -> Mat2:
    m = a.minus_identity()
    if m.det == 0:
        raise SingularAminusI(f"det(A - I) = 0 for {a}")
    return m


def lattice_report(a: Mat2) -> LatticeReport:
    """Works for any integer matrix with ``det(A - I) != 0``."""
    m = _require_nonsingular(a)
    g1 = math.gcd(m.a, m.c)
    g2 = math.gcd(m.b, m.d)
    area = abs(m.det)
    boundary = 2 * (g1 + g2)
    return LatticeReport(g1, g2, boundary, area - boundary // 2 + 1, area, area >= g1 + g2)


def pick_fixed_point_criterion(a: Mat2) -> bool:
    return lattice_report(a).criterion_holds


def parallelogram_points(a: Mat2) -> Tuple[List[IntVec], List[IntVec]]:
    """``(interior, boundary)`` lattice points of the closed parallelogram.

    A point ``p`` lies in it when ``(A - I)^-1 p = (s, t)`` with
    ``0 <= s, t <= 1``; it is on the boundary when ``s`` or ``t`` is 0 or 1.
    Only integer arithmetic is used: ``adj(A - I) p = det * (s, t)``.
    """
    m = _require_nonsingular(a)
    det = m.det
    adj = m.adjugate()
    xs = [0, m.a, m.b, m.a + m.b]
    ys = [0, m.c, m.d, m.c + m.d]
    sign = 1 if det > 0 else -1
    lim = abs(det)
    interior, boundary = [], []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            s, t = adj.apply((x, y))
            s, t = sign * s, sign * t
            if 0 <= s <= lim and 0 <= t <= lim:
                on_edge = s in (0, lim) or t in (0, lim)
                (boundary if on_edge else interior).append((x, y))
    return interior, boundary


# ------------------------------------------------------------ fixed points


class FixedPointKind(str, enum.Enum):
    POINTS = "Points"
    CIRCLES = "Circles"
    WHOLE_TORUS = "WholeTorus"
    EMPTY = "Empty"


@dataclass(frozen=True)
class FixedPointSet:
    """Fixed points of ``x -> A x + b``.

    ``POINTS``: ``points`` lists all of them. ``CIRCLES``: each entry of
    ``points`` is a base point of one fixed circle running in direction
    ``kernel_direction``. ``WHOLE_TORUS``: ``points == [(0, 0)]`` as a
    marker. ``count`` is the number of listed points or circles.
    """

    kind: FixedPointKind
    points: List[TorusPoint]
    complete: bool
    count: int
    kernel_direction: Optional[IntVec] = None
    obstruction: Optional[str] = field(default=None)

    @property
    def empty(self) -> bool:
        return self.kind is FixedPointKind.EMPTY


def fixed_points(a: Mat2, b: TorusPoint) -> FixedPointSet:
    """Solve ``(A - I) x = -b (mod Z^2)``."""
    m = a.minus_identity()
    sol = solve_congruence(m, -b)
    if sol.kind is SolutionKind.UNIQUE:
        pts = sorted(sol.points(), key=lambda p: (p.x1, p.x2))
        return FixedPointSet(FixedPointKind.POINTS, pts, True, len(pts))
    if sol.kind is SolutionKind.ALL:
        return FixedPointSet(FixedPointKind.WHOLE_TORUS, [TorusPoint.zero()], True, 1)
    if sol.kind is SolutionKind.EMPTY:
        why = "RankOneObstruction" if m.content else "NonzeroTranslation"
        return FixedPointSet(FixedPointKind.EMPTY, [], True, 0, obstruction=why)
    circles = list(sol.circles())
    return FixedPointSet(FixedPointKind.CIRCLES, circles, True, len(circles), kernel_direction=sol.kernel_direction)


def is_fixed(a: Mat2, b: TorusPoint, p: TorusPoint) -> bool:
    return b + a.apply(p.as_tuple()) == p
