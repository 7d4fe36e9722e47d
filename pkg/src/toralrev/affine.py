"""The affine group G = GL(2, Z) x| T^2 on rational torus points.

``(A, a)`` acts by ``x -> A x + a (mod Z^2)``; the product is
``(A, a)(B, b) = (AB, A b + a)``.

Conjugating ``(A, a)`` by ``(R, r)`` gives
``(R A R^-1, -R A R^-1 r + R a + r)``, so ``(R, r)`` reverses ``(A, a)``
exactly when ``R A R^-1 = A^-1`` and ``(A R + I) a + (A - I) r = 0``
modulo Z^2. Every decision below reduces to that congruence.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from . import gl2z
from .errors import InvariantViolation, ParseError
from .exactmath import (
    IDENTITY,
    MINUS_IDENTITY,
    Mat2,
    SolutionKind,
    TorusPoint,
    UniMat,
    dot,
    ext_gcd,
    line_congruence,
    parse_matrix,
    parse_torus_point,
    perp,
    rank_one_factor,
    solve_congruence,
)


@dataclass(frozen=True)
class AffineElement:
    linear: UniMat
    translation: TorusPoint

    @classmethod
    def identity(cls) -> "AffineElement":
        return cls(IDENTITY, TorusPoint.zero())

    @classmethod
    def parse(cls, text: str) -> "AffineElement":
        """Parse ``"a,b;c,d | p1/q1,p2/q2"``."""
        parts = text.split("|")
        if len(parts) != 2:
            raise ParseError(f"affine element must look like 'a,b;c,d | p,q': {text!r}")
        return cls(parse_matrix(parts[0]), parse_torus_point(parts[1]))

    def __call__(self, x) -> TorusPoint:
        return self.translation + self.linear.apply(tuple(x))

    def is_identity(self) -> bool:
        return self.linear.is_identity() and self.translation.is_zero()

    def __matmul__(self, other: "AffineElement") -> "AffineElement":
        return compose(self, other)

    def __str__(self) -> str:
        return f"{self.linear} | {self.translation}"


def compose(f: AffineElement, g: AffineElement) -> AffineElement:
    """``f o g``: first ``g``, then ``f``."""
    return AffineElement(f.linear @ g.linear, f.translation + f.linear.apply(g.translation.as_tuple()))


def invert(f: AffineElement) -> AffineElement:
    inv = f.linear.inverse()
    x1, x2 = inv.apply(f.translation.as_tuple())
    return AffineElement(inv, TorusPoint(-x1, -x2))


def conjugate_in_G(f: AffineElement, by: AffineElement) -> AffineElement:
    """``by o f o by^-1``."""
    return compose(by, compose(f, invert(by)))


# ----------------------------------------------------------------- reports


class Obstruction(str, enum.Enum):
    LINEAR_PART_NOT_REVERSIBLE = "LinearPartNotReversible"
    CONGRUENCE_UNSOLVABLE = "CongruenceUnsolvable"
    INVOLUTIVE_SELECTION_FAILS = "InvolutiveSelectionFails"


@dataclass(frozen=True)
class AffineReport:
    element: AffineElement
    reversible: bool
    strongly_reversible: bool
    certificate: Optional[AffineElement] = None
    involutive: bool = False
    obstruction: Optional[Obstruction] = None

    def verify(self) -> bool:
        if self.certificate is None:
            return not self.reversible
        ok = conjugate_in_G(self.element, self.certificate) == invert(self.element)
        if self.involutive:
            ok &= (self.certificate @ self.certificate).is_identity()
        return ok


def _checked(report: AffineReport) -> AffineReport:
    if not report.verify():
        raise InvariantViolation(f"affine certificate failed for {report.element}")
    return report


def _twisted(a: UniMat, r: UniMat, t: TorusPoint) -> TorusPoint:
    """``-(A R + I) t`` reduced."""
    x1, x2 = (a @ r).plus_identity().apply(t.as_tuple())
    return TorusPoint(-x1, -x2)


def _translation_for(f: AffineElement, r: UniMat):
    """Solution set of ``(A - I) x = -(A R + I) a``."""
    return solve_congruence(f.linear.minus_identity(), _twisted(f.linear, r, f.translation))


def _involutive_translation(f: AffineElement, tau: UniMat) -> Optional[TorusPoint]:
    """A point ``r`` with ``(A - I) r = -(A tau + I) a`` and
    ``(tau + I) r = 0`` (mod Z^2), or ``None`` if there is none."""
    sol = _translation_for(f, tau)
    n = tau.plus_identity()
    if sol.kind is SolutionKind.EMPTY:
        return None
    if sol.kind is SolutionKind.UNIQUE:
        # the real solution -(A - I)^-1 (A tau + I) a is fixed by tau + I
        cand = sol.particular
        return cand if _kills(n, cand) else next((p for p in sol.points() if _kills(n, p)), None)
    if sol.kind is SolutionKind.ALL:
        return TorusPoint.zero()
    k = sol.kernel_direction
    nk = n.apply(k)
    for base in sol.circles():
        found = line_congruence(nk, n.apply(base.as_tuple()))
        if found is not None:
            s0, _ = found
            return TorusPoint(base.x1 + s0 * k[0], base.x2 + s0 * k[1])
    return None


def _kills(n: Mat2, p: TorusPoint) -> bool:
    y1, y2 = n.apply(p.as_tuple())
    return y1.denominator == 1 and y2.denominator == 1


def _involutive_reversers(a: UniMat) -> Iterable[UniMat]:
    """Candidate involutive reversers of ``A``, the canonical one first.

    For det -1 involutions every element of the (finite) centralizer is an
    involutive reverser; all of them are tried.
    """
    if a.is_identity():
        yield MINUS_IDENTITY
        return
    if a.det == -1 and gl2z.is_involution(a):
        yield from gl2z.centralizer(a).generators
        return
    rep = gl2z.reversibility(a)
    if rep.involutive_reverser is not None:
        yield rep.involutive_reverser


def affine_strong_reversibility(f: AffineElement) -> AffineReport:
    a = f.linear
    lin = gl2z.reversibility(a)
    if not lin.reversible:
        return AffineReport(f, False, False, obstruction=Obstruction.LINEAR_PART_NOT_REVERSIBLE)
    for tau in _involutive_reversers(a):
        r = _involutive_translation(f, tau)
        if r is not None:
            return _checked(AffineReport(f, True, True, AffineElement(tau, r), involutive=True))
    rev = _reverser_certificate(f)
    return _checked(
        AffineReport(
            f,
            rev is not None,
            False,
            rev,
            obstruction=Obstruction.INVOLUTIVE_SELECTION_FAILS if rev is not None else Obstruction.CONGRUENCE_UNSOLVABLE,
        )
    )


def _reverser_certificate(f: AffineElement) -> Optional[AffineElement]:
    """Some ``(R, r)`` reversing ``f``, or ``None``.

    The reverser set of ``A`` is ``R0 Z(A)``. When ``det(A - I) != 0`` any
    ``R`` lifts. With eigenvalue 1, ``A`` is ``I``, a parabolic of trace 2
    (always liftable through the conjugated ``diag(1, -1)``) or a det -1
    involution, whose reverser set is its finite centralizer.
    """
    a = f.linear
    lin = gl2z.reversibility(a)
    if not lin.reversible:
        return None
    if a.is_identity():
        return AffineElement(MINUS_IDENTITY, TorusPoint.zero())
    if a.det == -1 and gl2z.is_involution(a):
        candidates = gl2z.centralizer(a).generators
    else:
        candidates = [lin.reverser]
    for r in candidates:
        sol = _translation_for(f, r)
        if sol.solvable:
            return AffineElement(r, sol.particular)
    return None


def affine_reversibility(f: AffineElement) -> AffineReport:
    """Decide reversibility of ``f`` in G, with a certificate ``(R, r)``.

    The report also carries the strong-reversibility verdict; when it holds
    the certificate returned is the involutive one.
    """
    return affine_strong_reversibility(f)


# ---------------------------------------------------------------- conjugacy


def _primitive_lift(v, q: int):
    """Primitive integer vector congruent to ``v`` modulo ``q``, where
    ``gcd(v1, v2, q) == 1``."""
    x1, x2 = v[0] % q, v[1] % q
    if x1 == 0:
        x1 = q
    for t in range(abs(x1) + 1):
        if math.gcd(x1, x2 + t * q) == 1:
            return (x1, x2 + t * q)
    raise InvariantViolation("no primitive lift found")


def _translation_transport(src: TorusPoint, dst: TorusPoint) -> Optional[UniMat]:
    """``C`` in SL(2, Z) with ``C src == dst`` on the torus, when both points
    have the same order; ``None`` otherwise."""
    q = src.denominator
    if q != dst.denominator:
        return None
    if q == 1:
        return IDENTITY
    v = _primitive_lift((int(src.x1 * q), int(src.x2 * q)), q)
    w = _primitive_lift((int(dst.x1 * q), int(dst.x2 * q)), q)
    return gl2z._complete_basis(w) @ gl2z._complete_basis(v).inverse()


def _kernel_parameter(gamma: Fraction, delta: Fraction) -> Optional[int]:
    """Some integer ``k`` with ``k * gamma = delta (mod 1)``, or ``None``."""
    p, q = gamma.numerator, gamma.denominator
    if (delta * q).denominator != 1:
        return None
    if p == 0:
        return 0 if delta.denominator == 1 else None
    _, inv, _ = ext_gcd(p % q, q)
    return (int(delta * q) * inv) % q


def g_conjugacy_test(f: AffineElement, g: AffineElement) -> Optional[AffineElement]:
    """Return ``(C, c)`` with ``conjugate_in_G(f, (C, c)) == g``, or ``None``.

    Needs ``C A C^-1 = B`` and ``(I - B) c = b - C a (mod Z^2)``.
    """
    a, b = f.linear, g.linear
    c0 = gl2z.conjugacy_test(a, b)
    if c0 is None:
        return None
    m = IDENTITY - b

    def attempt(c: UniMat) -> Optional[AffineElement]:
        x1, x2 = c.apply(f.translation.as_tuple())
        sol = solve_congruence(m, g.translation - (x1, x2))
        if not sol.solvable:
            return None
        out = AffineElement(c, sol.particular)
        if conjugate_in_G(f, out) != g:
            raise InvariantViolation("G-conjugacy witness failed")
        return out

    if m.det != 0:
        return attempt(c0)
    if b.is_identity():
        c = _translation_transport(f.translation, g.translation)
        return None if c is None else attempt(c)
    z = gl2z.centralizer(a)
    if z.kind is gl2z.CentralizerKind.FINITE_LIST:
        for e in z.generators:
            out = attempt(c0 @ e)
            if out is not None:
                return out
        return None
    # parabolic: C = sigma * C0 (I + k N); solvability is w.(b - C a) in Z
    u, _ = rank_one_factor(m)
    w = perp(u)
    n = z.automorph - IDENTITY
    alpha = dot(w, g.translation.as_tuple())
    beta = dot(w, c0.apply(f.translation.as_tuple()))
    gamma = dot(w, (c0 @ n).apply(f.translation.as_tuple()))
    for sigma in (1, -1):
        k = _kernel_parameter(Fraction(gamma), sigma * Fraction(alpha) - Fraction(beta))
        if k is not None:
            c = c0 @ UniMat.of(IDENTITY + n.scale(k))
            out = attempt(c if sigma == 1 else -c)
            if out is None:
                raise InvariantViolation("parabolic kernel parameter did not solve the congruence")
            return out
    return None


# ---------------------------------------------------------------- dichotomy


class ClassCount(str, enum.Enum):
    FINITELY_MANY = "FinitelyManyClasses"
    UNCOUNTABLY_MANY = "UncountablyManyClasses"


class DichotomyReason(str, enum.Enum):
    NO_EIGENVALUE_ONE = "NoEigenvalueOne"
    EIGENVALUE_ONE = "EigenvalueOne"


@dataclass(frozen=True)
class DichotomyVerdict:
    kind: ClassCount
    reason: DichotomyReason


def similarity_dichotomy(a: UniMat) -> DichotomyVerdict:
    """How many G-conjugacy classes a similarity class over ``A`` contains."""
    if a.minus_identity().det != 0:
        return DichotomyVerdict(ClassCount.FINITELY_MANY, DichotomyReason.NO_EIGENVALUE_ONE)
    return DichotomyVerdict(ClassCount.UNCOUNTABLY_MANY, DichotomyReason.EIGENVALUE_ONE)
