"""Exact 2x2 integer matrices, rational torus points and linear congruences on T^2.

Everything here is arbitrary precision: integers are Python ints and
rationals are :class:`fractions.Fraction`. No floating point is used.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Tuple, Union

from .errors import NotUnimodular, ParseError, ZeroVector

Rat = Fraction
IntVec = Tuple[int, int]
RatVec = Tuple[Fraction, Fraction]
Number = Union[int, Fraction]


def ext_gcd(x: int, y: int) -> Tuple[int, int, int]:
    """Return ``(g, p, q)`` with ``p*x + q*y == g == gcd(x, y) >= 0``."""
    old_r, r = x, y
    old_p, p = 1, 0
    old_q, q = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_p, p = p, old_p - k * p
        old_q, q = q, old_q - k * q
    if old_r < 0:
        old_r, old_p, old_q = -old_r, -old_p, -old_q
    return old_r, old_p, old_q


def primitive_of(v: IntVec) -> Tuple[int, IntVec]:
    """Split a nonzero integer vector as ``g * u`` with ``u`` primitive."""
    v1, v2 = v
    g = math.gcd(v1, v2)
    if g == 0:
        raise ZeroVector("primitive_of needs a nonzero vector")
    return g, (v1 // g, v2 // g)


def perp(u: IntVec) -> IntVec:
    """Rotate by a quarter turn: ``perp(u) . u == 0``."""
    return (-u[1], u[0])


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // math.gcd(out, x)
    return out


@dataclass(frozen=True)
class Mat2:
    """A 2x2 integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @classmethod
    def from_columns(cls, u: IntVec, v: IntVec) -> "Mat2":
        return cls(u[0], v[0], u[1], v[1])

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    @property
    def entries(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def columns(self) -> Tuple[IntVec, IntVec]:
        return (self.a, self.c), (self.b, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def content(self) -> int:
        """gcd of the four entries (0 for the zero matrix)."""
        return math.gcd(math.gcd(self.a, self.b), math.gcd(self.c, self.d))

    @property
    def rank(self) -> int:
        if self.det != 0:
            return 2
        return 0 if self.content == 0 else 1

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 1)

    def is_scalar(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __matmul__(self, other: "Mat2") -> "Mat2":
        e = (
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )
        if isinstance(self, UniMat) and isinstance(other, UniMat):
            return UniMat(*e)
        return Mat2(*e)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a + other.a, self.b + other.b, self.c + other.c, self.d + other.d)

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(self.a - other.a, self.b - other.b, self.c - other.c, self.d - other.d)

    def __neg__(self) -> "Mat2":
        return type(self)(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k: int) -> "Mat2":
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def minus_identity(self) -> "Mat2":
        return Mat2(self.a - 1, self.b, self.c, self.d - 1)

    def plus_identity(self) -> "Mat2":
        return Mat2(self.a + 1, self.b, self.c, self.d + 1)

    def adjugate(self) -> "Mat2":
        return Mat2(self.d, -self.b, -self.c, self.a)

    def apply(self, v):
        """Matrix times column vector; works for int and Fraction entries."""
        x, y = v
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def apply_inverse(self, v) -> RatVec:
        """Exact ``M^{-1} v`` over the rationals (requires ``det != 0``)."""
        det = self.det
        x, y = self.adjugate().apply(v)
        return (Fraction(x, 1) / det, Fraction(y, 1) / det)

    def mod(self, n: int) -> Tuple[int, int, int, int]:
        return tuple(e % n for e in self.entries)

    def __str__(self) -> str:
        return f"{self.a},{self.b};{self.c},{self.d}"


@dataclass(frozen=True, eq=False)
class UniMat(Mat2):
    """An element of GL(2, Z): integer matrix with determinant +1 or -1."""

    def __post_init__(self):
        if self.a * self.d - self.b * self.c not in (1, -1):
            raise NotUnimodular(f"det of {self} is {self.det}, not +-1")

    @classmethod
    def identity(cls) -> "UniMat":
        return cls(1, 0, 0, 1)

    @classmethod
    def of(cls, m: Mat2) -> "UniMat":
        return m if isinstance(m, UniMat) else cls(*m.entries)

    def inverse(self) -> "UniMat":
        s = self.det
        return UniMat(s * self.d, -s * self.b, -s * self.c, s * self.a)

    def __pow__(self, n: int) -> "UniMat":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = UniMat.identity()
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def conj(self, m: "UniMat") -> "UniMat":
        """``self @ m @ self^{-1}``."""
        return self @ m @ self.inverse()


IDENTITY = UniMat(1, 0, 0, 1)
MINUS_IDENTITY = UniMat(-1, 0, 0, -1)


def mat_inverse_unimodular(m: UniMat) -> UniMat:
    return UniMat.of(m).inverse()


def _frac_part(x: Number) -> Fraction:
    x = Fraction(x)
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class TorusPoint:
    """A rational point of R^2/Z^2 stored by its representative in [0, 1)^2.

    Construction reduces automatically, so ``TorusPoint(Fraction(3, 2), -1)``
    equals ``TorusPoint(Fraction(1, 2), 0)``.
    """

    x1: Fraction
    x2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x1", _frac_part(self.x1))
        object.__setattr__(self, "x2", _frac_part(self.x2))

    @classmethod
    def zero(cls) -> "TorusPoint":
        return cls(Fraction(0), Fraction(0))

    def __iter__(self):
        return iter((self.x1, self.x2))

    def __getitem__(self, i: int) -> Fraction:
        return (self.x1, self.x2)[i]

    def as_tuple(self) -> RatVec:
        return (self.x1, self.x2)

    def __add__(self, other) -> "TorusPoint":
        o1, o2 = other
        return TorusPoint(self.x1 + o1, self.x2 + o2)

    def __sub__(self, other) -> "TorusPoint":
        o1, o2 = other
        return TorusPoint(self.x1 - o1, self.x2 - o2)

    def __neg__(self) -> "TorusPoint":
        return TorusPoint(-self.x1, -self.x2)

    def is_zero(self) -> bool:
        return self.x1 == 0 and self.x2 == 0

    @property
    def denominator(self) -> int:
        """Order of the point in the group T^2."""
        return lcm(self.x1.denominator, self.x2.denominator)

    def __str__(self) -> str:
        return f"{self.x1},{self.x2}"


def torus_reduce(p) -> TorusPoint:
    x1, x2 = p
    return TorusPoint(Fraction(x1), Fraction(x2))


def is_integral(v) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


# ---------------------------------------------------------------- Hermite form


def hermite_column(m: Mat2) -> Tuple[Mat2, UniMat]:
    """Column-style Hermite reduction ``m @ U = H`` of a nonsingular matrix.

    ``H = [[h11, 0], [h21, h22]]`` with ``h11, h22 > 0`` and
    ``0 <= h21 < h22``; ``U`` is unimodular.
    """
    if m.det == 0:
        raise ValueError("hermite_column needs a nonsingular matrix")
    g, x, y = ext_gcd(m.a, m.b)
    u = UniMat(x, -m.b // g, y, m.a // g)
    h = m @ u
    if h.d < 0:
        flip = UniMat(1, 0, 0, -1)
        u, h = u @ flip, h @ flip
    q = h.c // h.d
    shear = UniMat(1, 0, -q, 1)
    u, h = u @ shear, h @ shear
    return h, u


def coset_representatives(m: Mat2) -> Iterator[IntVec]:
    """Representatives of Z^2 / m Z^2, one per coset, in a fixed order."""
    h, _ = hermite_column(m)
    for i in range(h.a):
        for j in range(h.d):
            yield (i, j)


# --------------------------------------------------------------- congruences


class SolutionKind(str, enum.Enum):
    UNIQUE = "Unique"
    LINE = "Line"
    ALL = "All"
    EMPTY = "Empty"


@dataclass(frozen=True)
class CongruenceSolution:
    """Solution set of ``M x = t (mod Z^2)`` for ``x`` on the torus.

    ``UNIQUE``: finitely many points, ``solution_count_on_torus = |det M|``.
    ``LINE``: ``circle_count`` parallel closed circles, the j-th one being
    ``particular + j*circle_offset + s*kernel_direction`` for real ``s``.
    """

    kind: SolutionKind
    matrix: Mat2
    target: TorusPoint
    particular: Optional[TorusPoint] = None
    kernel_direction: Optional[IntVec] = None
    solution_count_on_torus: Optional[int] = None
    circle_count: Optional[int] = None
    circle_offset: Optional[RatVec] = field(default=None, repr=False)

    @property
    def solvable(self) -> bool:
        return self.kind is not SolutionKind.EMPTY

    def points(self) -> Iterator[TorusPoint]:
        """Every solution of a ``UNIQUE`` system, in coset order."""
        if self.kind is not SolutionKind.UNIQUE:
            raise ValueError(f"points() is only defined for Unique systems, not {self.kind.value}")
        t1, t2 = self.target
        for z1, z2 in coset_representatives(self.matrix):
            yield torus_reduce(self.matrix.apply_inverse((t1 + z1, t2 + z2)))

    def circles(self) -> Iterator[TorusPoint]:
        """Base point of each solution circle of a ``LINE`` system."""
        if self.kind is not SolutionKind.LINE:
            raise ValueError("circles() is only defined for Line systems")
        o1, o2 = self.circle_offset
        p1, p2 = self.particular
        for j in range(self.circle_count):
            yield TorusPoint(p1 + j * o1, p2 + j * o2)

    def contains(self, x) -> bool:
        """Whether ``x`` satisfies the congruence (checked directly)."""
        y1, y2 = self.matrix.apply(tuple(x))
        t1, t2 = self.target
        return is_integral((y1 - t1, y2 - t2))


def _positive(v: IntVec) -> IntVec:
    """``v`` or ``-v``, whichever has its first nonzero entry positive."""
    return v if (v[0] > 0 or (v[0] == 0 and v[1] > 0)) else (-v[0], -v[1])


def rank_one_factor(m: Mat2) -> Tuple[IntVec, IntVec]:
    """Write a rank-1 integer matrix as ``u rho^T`` with ``u`` primitive."""
    col1, col2 = m.columns
    _, u = primitive_of(col1 if col1 != (0, 0) else col2)
    k = 0 if u[0] != 0 else 1
    rho = (col1[k] // u[k], col2[k] // u[k])
    return u, rho


def solve_congruence(m: Mat2, t) -> CongruenceSolution:
    t = torus_reduce(t)
    if m.det != 0:
        return CongruenceSolution(
            SolutionKind.UNIQUE,
            m,
            t,
            particular=torus_reduce(m.apply_inverse(t.as_tuple())),
            solution_count_on_torus=abs(m.det),
        )
    if m.content == 0:
        kind = SolutionKind.ALL if t.is_zero() else SolutionKind.EMPTY
        return CongruenceSolution(kind, m, t, particular=TorusPoint.zero() if t.is_zero() else None)

    u, rho = rank_one_factor(m)
    normal = perp(u)
    if Fraction(dot(normal, t)).denominator != 1:
        return CongruenceSolution(SolutionKind.EMPTY, m, t)
    # coordinate of t along u in the unimodular basis [u, v]
    _, p, q = ext_gcd(u[0], u[1])
    along = p * t.x1 + q * t.x2
    g_rho, rho_p = primitive_of(rho)
    _, z1, z2 = ext_gcd(rho_p[0], rho_p[1])
    offset = (Fraction(z1, g_rho), Fraction(z2, g_rho))
    return CongruenceSolution(
        SolutionKind.LINE,
        m,
        t,
        particular=TorusPoint(along * offset[0], along * offset[1]),
        kernel_direction=_positive(perp(rho_p)),
        circle_count=g_rho,
        circle_offset=offset,
    )


def line_congruence(n: IntVec, c) -> Optional[Tuple[Fraction, Optional[Fraction]]]:
    """Solve ``c + s*n = 0 (mod Z^2)`` for real ``s``.

    Returns ``None`` when unsolvable, ``(0, None)`` when every ``s`` works
    (``n == 0`` and ``c`` integral), else ``(s0, step)`` describing the
    solution set ``s0 + step*Z`` with ``0 <= s0 < step``.
    """
    c1, c2 = Fraction(c[0]), Fraction(c[1])
    if n == (0, 0):
        return (Fraction(0), None) if is_integral((c1, c2)) else None
    g, n_p = primitive_of(n)
    if Fraction(dot(perp(n_p), (c1, c2))).denominator != 1:
        return None
    _, p, q = ext_gcd(n_p[0], n_p[1])
    sigma = p * c1 + q * c2
    s0 = Fraction(math.ceil(sigma) - sigma, g)
    return s0, Fraction(1, g)


# ------------------------------------------------------------------- parsing

_INT = r"[+-]?\d+"
_RAT_RE = re.compile(rf"^\s*({_INT})\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError(f"not a rational 'p/q' or 'p': {text!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def parse_int_matrix(text: str) -> Mat2:
    rows = text.split(";")
    if len(rows) != 2:
        raise ParseError(f"matrix must look like 'a,b;c,d': {text!r}")
    vals = []
    for row in rows:
        parts = row.split(",")
        if len(parts) != 2:
            raise ParseError(f"matrix must look like 'a,b;c,d': {text!r}")
        for p in parts:
            if not re.fullmatch(rf"\s*{_INT}\s*", p):
                raise ParseError(f"bad integer entry {p!r} in {text!r}")
            vals.append(int(p))
    return Mat2(*vals)


def parse_matrix(text: str) -> UniMat:
    m = parse_int_matrix(text)
    if m.det not in (1, -1):
        raise ParseError(f"matrix {text!r} has det {m.det}, not +-1")
    return UniMat(*m.entries)


def parse_torus_point(text: str) -> TorusPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"torus point must look like 'p1/q1,p2/q2': {text!r}")
    return TorusPoint(parse_rational(parts[0]), parse_rational(parts[1]))


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))
