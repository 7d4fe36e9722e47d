"""Orbits, the linearizing translation, entropy and periodic-point growth.

Entropy of ``x -> A x + a`` depends on ``A`` only. It vanishes when the
spectral radius is 1 and otherwise equals the log of the larger root of
``x^2 - |t| x + det``; that root is a quadratic unit, so the value is kept
as ``(|t|, det)`` and expanded to a decimal string on demand.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from typing import Dict, List, Optional, Sequence, Tuple, Union
from xml.sax.saxutils import escape

from .affine import AffineElement, conjugate_in_G
from .errors import EigenvalueOne, InvariantViolation
from .exactmath import IDENTITY, Mat2, TorusPoint, UniMat, solve_congruence
from .lattice import parallelogram_points

DEFAULT_DIGITS = 50


# ------------------------------------------------------------------ orbits


@dataclass(frozen=True)
class OrbitRecord:
    """``points[0] == start``; when a period is found the list ends with the
    first repeated point, so ``points[preperiod + period] == points[preperiod]``."""

    start: TorusPoint
    points: List[TorusPoint]
    preperiod: int
    period: Optional[int]

    def cycle(self) -> List[TorusPoint]:
        if self.period is None:
            return []
        return self.points[self.preperiod : self.preperiod + self.period]


def orbit(f: AffineElement, x0: TorusPoint, max_steps: int) -> OrbitRecord:
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    seen: Dict[TorusPoint, int] = {x0: 0}
    pts = [x0]
    x = x0
    for i in range(1, max_steps + 1):
        x = f(x)
        pts.append(x)
        if x in seen:
            j = seen[x]
            return OrbitRecord(x0, pts, j, i - j)
        seen[x] = i
    return OrbitRecord(x0, pts, 0, None)


def linearizing_translation(a: UniMat, b: TorusPoint) -> TorusPoint:
    """The unique ``v`` with ``v = A v + b``; conjugating ``(A, b)`` by the
    translation ``(I, -v)`` gives ``(A, 0)``."""
    m = IDENTITY - a
    if m.det == 0:
        raise EigenvalueOne(f"1 is an eigenvalue of {a}")
    v = solve_congruence(m, b).particular
    if b + a.apply(v.as_tuple()) != v:
        raise InvariantViolation("linearizing translation is not a fixed point")
    by = AffineElement(IDENTITY, -v)
    if conjugate_in_G(AffineElement(a, b), by) != AffineElement(a, TorusPoint.zero()):
        raise InvariantViolation("translation does not linearize the map")
    return v


# ----------------------------------------------------------------- entropy


class EntropyKind(str, enum.Enum):
    ZERO = "Zero"
    LOG_OF_QUADRATIC_UNIT = "LogOfQuadraticUnit"


@dataclass(frozen=True)
class EntropyValue:
    kind: EntropyKind
    trace_abs: int
    det: int
    decimal_approx: str

    @property
    def value(self) -> Decimal:
        return Decimal(self.decimal_approx)

    def __str__(self) -> str:
        if self.kind is EntropyKind.ZERO:
            return "0"
        return f"log(({self.trace_abs} + sqrt({self.trace_abs ** 2 - 4 * self.det}))/2) = {self.decimal_approx}"


def _spectral_radius_one(t: int, det: int) -> bool:
    return (det == 1 and t <= 2) or (det == -1 and t == 0)


def _log_unit(t: int, det: int, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = digits + 10
        lam = (Decimal(t) + Decimal(t * t - 4 * det).sqrt()) / 2
        val = lam.ln()
        ctx.prec = digits
        return str(+val)


def entropy(a: Mat2, digits: int = DEFAULT_DIGITS) -> EntropyValue:
    """Topological entropy of the toral automorphism ``A``, as ``digits``
    significant digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    t, det = abs(a.trace), a.det
    if _spectral_radius_one(t, det):
        return EntropyValue(EntropyKind.ZERO, t, det, "0")
    return EntropyValue(EntropyKind.LOG_OF_QUADRATIC_UNIT, t, det, _log_unit(t, det, digits))


def affine_entropy(f: AffineElement, digits: int = DEFAULT_DIGITS) -> EntropyValue:
    return entropy(f.linear, digits)


class Infinite(enum.Enum):
    """Marker for maps with a circle (or more) of fixed points."""

    INFINITE = "Infinite"

    def __str__(self) -> str:
        return self.value


INFINITE = Infinite.INFINITE


def periodic_point_count(a: UniMat, n: int) -> Union[int, Infinite]:
    """Number of fixed points of ``A^n``, i.e. ``|det(A^n - I)|``."""
    if n < 1:
        raise ValueError("n must be positive")
    p = a ** n
    d = p.det - p.trace + 1
    return INFINITE if d == 0 else abs(d)


def growth_rate(a: UniMat, n: int, digits: int = 30) -> Decimal:
    """``(1/n) log |det(A^n - I)|``, the periodic-point entropy estimate."""
    c = periodic_point_count(a, n)
    if c is INFINITE:
        raise EigenvalueOne(f"A^{n} has eigenvalue 1")
    with localcontext() as ctx:
        ctx.prec = digits + 10
        val = Decimal(c).ln() / n
        ctx.prec = digits
        return +val


# ------------------------------------------------------------------- SVG

_SIZE = 400
_MARGIN = 20


class _Canvas:
    def __init__(self, xmin: float, xmax: float, ymin: float, ymax: float):
        span = max(xmax - xmin, ymax - ymin, 1)
        self.k = (_SIZE - 2 * _MARGIN) / span
        self.xmin, self.ymax = xmin, ymin + span
        self.items: List[str] = []

    def xy(self, x, y) -> Tuple[str, str]:
        px = _MARGIN + (float(x) - self.xmin) * self.k
        py = _MARGIN + (self.ymax - float(y)) * self.k
        return f"{px:.3f}", f"{py:.3f}"

    def polygon(self, pts: Sequence[Tuple], cls: str, style: str):
        coords = " ".join(",".join(self.xy(x, y)) for x, y in pts)
        self.items.append(f'<polygon class="{cls}" points="{coords}" {style}/>')

    def dot(self, x, y, cls: str, r: float, fill: str, title: str):
        cx, cy = self.xy(x, y)
        self.items.append(
            f'<circle class="{cls}" cx="{cx}" cy="{cy}" r="{r}" fill="{fill}"><title>{escape(title)}</title></circle>'
        )

    def document(self, caption: str) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_SIZE}" height="{_SIZE}" '
            f'viewBox="0 0 {_SIZE} {_SIZE}">\n'
            f"<title>{escape(caption)}</title>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


_UNIT = [(0, 0), (1, 0), (1, 1), (0, 1)]


def render_orbit(record: Optional[OrbitRecord], caption: str = "orbit") -> str:
    """Unit square with one marker per distinct orbit point."""
    cv = _Canvas(0, 1, 0, 1)
    cv.polygon(_UNIT, "unit-square", 'fill="none" stroke="black"')
    if record is not None:
        distinct = list(dict.fromkeys(record.points))
        for p in distinct:
            cv.dot(p.x1, p.x2, "orbit-point", 3, "crimson", str(p))
    return cv.document(caption)


def render_parallelogram(a: Mat2, caption: Optional[str] = None) -> str:
    """The parallelogram spanned by the columns of ``A - I`` with its
    lattice points, over the unit square."""
    m = a.minus_identity()
    interior, boundary = parallelogram_points(a)
    verts = [(0, 0), (m.a, m.c), (m.a + m.b, m.c + m.d), (m.b, m.d)]
    xs = [v[0] for v in verts] + [0, 1]
    ys = [v[1] for v in verts] + [0, 1]
    cv = _Canvas(min(xs), max(xs), min(ys), max(ys))
    cv.polygon(_UNIT, "unit-square", 'fill="none" stroke="gray" stroke-dasharray="4,3"')
    cv.polygon(verts, "parallelogram", 'fill="lightsteelblue" fill-opacity="0.5" stroke="navy"')
    for p in boundary:
        cv.dot(*p, "lattice-node boundary", 3.5, "navy", f"boundary {p}")
    for p in interior:
        cv.dot(*p, "lattice-node interior", 3.5, "darkorange", f"interior {p}")
    return cv.document(caption or f"parallelogram for A = {a}")


def render(target: Union[OrbitRecord, Mat2, None], caption: Optional[str] = None) -> str:
    if isinstance(target, Mat2):
        return render_parallelogram(target, caption)
    return render_orbit(target, caption or "orbit")
