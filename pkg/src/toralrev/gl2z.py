"""Single matrices in GL(2, Z): classification, conjugacy, centralizers and
(strong) reversibility, each verdict backed by an explicit certificate.

Conjugacy runs through the form ``Q_A(x) = det[x, A x]``. For ``C`` in
GL(2, Z) one has ``Q_{C A C^-1} = det(C) * (Q_A . C^-1)``, and ``A`` is
recovered from ``Q_A`` and its trace, so conjugacy of non-scalar
matrices is a twisted equivalence of forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from . import forms
from .errors import InvariantViolation, NotHyperbolic, NotInvolution
from .exactmath import IDENTITY, MINUS_IDENTITY, Mat2, UniMat, ext_gcd, perp, primitive_of

J = UniMat(1, 0, 0, -1)
SWAP = UniMat(0, 1, 1, 0)


class Kind(str, enum.Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class MatClass:
    kind: Kind
    det: int
    trace: int
    has_eigenvalue_one: bool
    finite_order: Optional[int]


def classify(a: UniMat) -> MatClass:
    """Elliptic / parabolic / hyperbolic, following ``0 <= tr^2 < 4 det``."""
    t, det = a.trace, a.det
    if 0 <= t * t < 4 * det:
        kind = Kind.ELLIPTIC
    elif t * t == 4 * det:
        kind = Kind.PARABOLIC
    else:
        kind = Kind.HYPERBOLIC
    order = None
    p = a
    for k in range(1, 13):
        if p.is_identity():
            order = k
            break
        p = p @ a
    return MatClass(kind, det, t, det - t + 1 == 0, order)


def is_involution(a: UniMat) -> bool:
    return (a @ a).is_identity() and not a.is_identity()


# ------------------------------------------------------------ involutions


class InvolutionRep(str, enum.Enum):
    MINUS_IDENTITY = "MinusIdentity"
    SWAP = "Swap"
    DIAG_ONE_MINUS_ONE = "DiagOneMinusOne"

    @property
    def matrix(self) -> UniMat:
        return {
            "MinusIdentity": MINUS_IDENTITY,
            "Swap": SWAP,
            "DiagOneMinusOne": J,
        }[self.value]


@dataclass(frozen=True)
class InvolutionClass:
    representative: InvolutionRep
    conjugator: UniMat


def _kernel_vector(m: Mat2) -> Tuple[int, int]:
    """Primitive integer vector spanning the kernel of a rank-1 matrix."""
    row = (m.a, m.b) if (m.a, m.b) != (0, 0) else (m.c, m.d)
    _, r = primitive_of(row)
    return perp(r)


def _complete_basis(u: Tuple[int, int], det: int = 1) -> UniMat:
    """Unimodular matrix with first column ``u`` (primitive) and given det."""
    _, p, q = ext_gcd(u[0], u[1])
    c = UniMat(u[0], -q, u[1], p)
    return c if det == 1 else c @ J


def involution_class(a: UniMat) -> InvolutionClass:
    if not is_involution(a):
        raise NotInvolution(f"{a} is not an involution other than I")
    if a.trace == -2:
        return InvolutionClass(InvolutionRep.MINUS_IDENTITY, IDENTITY)
    v = _kernel_vector(a.minus_identity())
    w = _kernel_vector(a.plus_identity())
    if a.mod(2) == (1, 0, 0, 1):
        rep = InvolutionRep.DIAG_ONE_MINUS_ONE
        c = UniMat.of(Mat2.from_columns(v, w)) if abs(v[0] * w[1] - v[1] * w[0]) == 1 else None
    else:
        rep = InvolutionRep.SWAP
        x = (v[0] + w[0], v[1] + w[1])
        if x[0] % 2 or x[1] % 2:
            x = (v[0] - w[0], v[1] - w[1])
        x = (x[0] // 2, x[1] // 2)
        ax = a.apply(x)
        m = Mat2.from_columns(x, ax)
        c = UniMat.of(m) if m.det in (1, -1) else None
    if c is None or c.conj(rep.matrix) != a:
        raise InvariantViolation(f"involution class construction failed for {a}")
    return InvolutionClass(rep, c)


# -------------------------------------------------------------- conjugacy


def matrix_form(a: Mat2) -> forms.Form:
    """``Q_A(x, y) = det[(x, y), A (x, y)]``."""
    return forms.Form(a.c, a.d - a.a, -a.b)


def _parabolic_normal_form(a: UniMat) -> Tuple[int, int, UniMat]:
    """For parabolic ``A != +-I``: ``(eps, m, C)`` with
    ``C [[eps, m], [0, eps]] C^-1 == A`` and ``m >= 1``."""
    eps = a.trace // 2
    n = a - IDENTITY.scale(eps)
    m = n.content
    col = n.columns[0] if n.columns[0] != (0, 0) else n.columns[1]
    _, u = primitive_of(col)
    canon = UniMat(eps, m, 0, eps)
    for det in (1, -1):
        c = _complete_basis(u, det)
        if c.conj(canon) == a:
            return eps, m, c
    raise InvariantViolation(f"parabolic normal form failed for {a}")


def _check_conjugator(c: UniMat, a: UniMat, b: UniMat) -> UniMat:
    if c @ a != b @ c:
        raise InvariantViolation(f"conjugator {c} does not carry {a} to {b}")
    return c


def conjugacy_test(a: UniMat, b: UniMat) -> Optional[UniMat]:
    """Return ``C`` in GL(2, Z) with ``C A C^-1 == B``, or ``None``."""
    if a.trace != b.trace or a.det != b.det:
        return None
    if a.is_scalar() or b.is_scalar():
        return IDENTITY if a == b else None
    disc = a.trace ** 2 - 4 * a.det
    if disc == 0:
        ea, ma, ca = _parabolic_normal_form(a)
        eb, mb, cb = _parabolic_normal_form(b)
        if (ea, ma) != (eb, mb):
            return None
        return _check_conjugator(cb @ ca.inverse(), a, b)
    if disc == 4:
        # det = -1, trace 0: involutions
        ia, ib = involution_class(a), involution_class(b)
        if ia.representative != ib.representative:
            return None
        return _check_conjugator(ib.conjugator @ ia.conjugator.inverse(), a, b)
    qa, qb = matrix_form(a), matrix_form(b)
    # g = h with Q_A . h = Q_B, or g = h J with Q_A . h = -(Q_B . J)
    h = forms.proper_equivalence(qa, qb)
    if h is not None:
        g = h
    else:
        h = forms.proper_equivalence(qa, -qb.mirror())
        if h is None:
            return None
        g = h @ J
    return _check_conjugator(g.inverse(), a, b)


# ------------------------------------------------------------ centralizer


class CentralizerKind(str, enum.Enum):
    FULL_GROUP = "FullGroup"
    FINITE_LIST = "FiniteList"
    PARABOLIC_FAMILY = "ParabolicFamily"
    HYPERBOLIC_FAMILY = "HyperbolicFamily"


@dataclass(frozen=True)
class CentralizerDesc:
    """Centralizer of ``A`` in GL(2, Z).

    ``FULL_GROUP``: ``generators`` generate GL(2, Z).
    ``FINITE_LIST``: ``generators`` is the complete element list.
    ``PARABOLIC_FAMILY``: ``{+-(I + k N) : k in Z}`` with ``generators ==
    [-I, I + N]``.
    ``HYPERBOLIC_FAMILY``: ``{+-U^k} u {+-V U^k}`` with ``generators ==
    [-I, U]`` or ``[-I, U, V]`` when a det -1 element ``V`` exists.
    """

    kind: CentralizerKind
    matrix: UniMat
    generators: List[UniMat] = field(default_factory=list)

    @property
    def automorph(self) -> Optional[UniMat]:
        if self.kind in (CentralizerKind.PARABOLIC_FAMILY, CentralizerKind.HYPERBOLIC_FAMILY):
            return self.generators[1]
        return None

    @property
    def det_minus_one(self) -> Optional[UniMat]:
        if self.kind is CentralizerKind.HYPERBOLIC_FAMILY and len(self.generators) > 2:
            return self.generators[2]
        return None

    def sample(self, radius: int) -> Iterator[UniMat]:
        """Elements of the centralizer, exhaustively for finite kinds and
        with exponent ``|k| <= radius`` for the infinite families."""
        if self.kind is CentralizerKind.FINITE_LIST:
            yield from self.generators
            return
        if self.kind is CentralizerKind.FULL_GROUP:
            from .oracle import enumerate_unimodular

            yield from enumerate_unimodular(radius)
            return
        base = self.automorph
        cosets = [IDENTITY] + ([self.det_minus_one] if self.det_minus_one is not None else [])
        for k in _interleaved(radius):
            p = base ** k
            for v in cosets:
                yield v @ p
                yield -(v @ p)


def _interleaved(radius: int) -> Iterator[int]:
    yield 0
    for k in range(1, radius + 1):
        yield k
        yield -k


def _normalized_generator(a: UniMat) -> Tuple[Mat2, int]:
    """``(N, m)`` with ``A = a11 I + m N`` and ``N`` of content 1."""
    n = Mat2(0, a.b, a.c, a.d - a.a)
    m = n.content
    return Mat2(0, a.b // m, a.c // m, (a.d - a.a) // m), m


def _norm_one_elements(a: UniMat) -> List[UniMat]:
    """All ``x I + y N`` with det +-1, for a definite norm form."""
    n, _ = _normalized_generator(a)
    t, dn = n.trace, n.det
    disc = t * t - 4 * dn
    out = []
    ymax = math.isqrt(4 // -disc) if disc < 0 else 0
    for y in range(-ymax, ymax + 1):
        for target in (1, -1):
            # x^2 + t y x + dn y^2 - target = 0
            qd = (t * y) ** 2 - 4 * (dn * y * y - target)
            if qd < 0 or math.isqrt(qd) ** 2 != qd:
                continue
            r = math.isqrt(qd)
            for num in {-t * y + r, -t * y - r}:
                if num % 2 == 0:
                    x = num // 2
                    out.append(UniMat(x + y * n.a, y * n.b, y * n.c, x + y * n.d))
    return sorted(set(out), key=lambda m: m.entries)


def centralizer(a: UniMat) -> CentralizerDesc:
    if a.is_scalar():
        return CentralizerDesc(CentralizerKind.FULL_GROUP, a, [UniMat(0, -1, 1, 0), UniMat(1, 1, 0, 1), J])
    disc = a.trace ** 2 - 4 * a.det
    if disc < 0:
        return CentralizerDesc(CentralizerKind.FINITE_LIST, a, _norm_one_elements(a))
    if disc == 4:
        ic = involution_class(a)
        rep = ic.representative.matrix
        elems = [IDENTITY, MINUS_IDENTITY, rep, -rep]
        return CentralizerDesc(
            CentralizerKind.FINITE_LIST, a, sorted({ic.conjugator.conj(e) for e in elems}, key=lambda m: m.entries)
        )
    if disc == 0:
        eps = a.trace // 2
        nil = a - IDENTITY.scale(eps)
        n = Mat2(*(e // nil.content for e in nil.entries))
        return CentralizerDesc(CentralizerKind.PARABOLIC_FAMILY, a, [MINUS_IDENTITY, UniMat.of(IDENTITY + n)])
    q = matrix_form(a)
    u = forms.fundamental_automorph(q)
    if u.trace < 0:
        u = -u
    gens = [MINUS_IDENTITY, u]
    h = forms.proper_equivalence(q, -q.mirror())
    if h is not None:
        gens.append(h @ J)
    for g in gens:
        if g @ a != a @ g:
            raise InvariantViolation(f"centralizer generator {g} does not commute with {a}")
    return CentralizerDesc(CentralizerKind.HYPERBOLIC_FAMILY, a, gens)


# ---------------------------------------------------------- reversibility


class Method(str, enum.Enum):
    SCALAR = "scalar"
    INVOLUTION = "det_minus_one_involution"
    DET_MINUS_ONE_NOT_INVOLUTION = "det_minus_one_not_involution"
    CANONICAL_FORM = "elliptic_parabolic_canonical_form"
    FORM_CYCLE = "hyperbolic_form_cycle"


@dataclass(frozen=True)
class ReversibilityReport:
    matrix: UniMat
    reversible: bool
    strongly_reversible: bool
    method: Method
    reverser: Optional[UniMat] = None
    involutive_reverser: Optional[UniMat] = None

    def verify(self) -> bool:
        inv = self.matrix.inverse()
        ok = True
        if self.reverser is not None:
            ok &= self.reverser @ self.matrix == inv @ self.reverser
        if self.involutive_reverser is not None:
            r = self.involutive_reverser
            ok &= (r @ r).is_identity() and r @ self.matrix == inv @ r
        ok &= not self.strongly_reversible or self.reversible
        ok &= self.reversible == (self.reverser is not None)
        ok &= self.strongly_reversible == (self.involutive_reverser is not None)
        return ok


# canonical finite-order / parabolic elements with a known involutive reverser
_ELLIPTIC_CANON = {
    (0, 1): (UniMat(0, -1, 1, 0), J),
    (1, 1): (UniMat(1, -1, 1, 0), SWAP),
    (-1, 1): (UniMat(0, -1, 1, -1), SWAP),
}


def _canonical_involutive_reverser(a: UniMat) -> UniMat:
    """Involutive reverser of an elliptic or parabolic matrix."""
    if a.is_scalar():
        return IDENTITY
    disc = a.trace ** 2 - 4 * a.det
    if disc == 0:
        _, _, c = _parabolic_normal_form(a)
        return c.conj(J)
    canon, rev = _ELLIPTIC_CANON[(a.trace, a.det)]
    c = conjugacy_test(canon, a)
    if c is None:
        raise InvariantViolation(f"elliptic {a} not conjugate to its canonical form")
    return c.conj(rev)


def _finish(report: ReversibilityReport) -> ReversibilityReport:
    if not report.verify():
        raise InvariantViolation(f"reversibility certificate failed for {report.matrix}")
    return report


_SCAN_CAP = 64


def _scan_trace_zero(start: UniMat, u: UniMat) -> Optional[UniMat]:
    """Find ``k`` with ``start U^k`` of trace 0, scanning outward from 0.

    Each direction stops once ``|trace|`` exceeds 2 and has grown twice in a
    row; after that it diverges, because the traces obey
    ``T_{k+1} = tr(U) T_k - T_{k-1}`` with ``|tr U| >= 3``.
    """
    if start.trace == 0:
        return start
    for step in (u, u.inverse()):
        p = start
        prev = abs(p.trace)
        grew = 0
        for _ in range(_SCAN_CAP):
            p = p @ step
            cur = abs(p.trace)
            if cur == 0:
                return p
            grew = grew + 1 if cur > prev and cur > 2 else 0
            prev = cur
            if grew >= 2:
                break
        else:
            raise InvariantViolation("trace scan did not observe growth within the cap")
    return None


def reversibility(a: UniMat) -> ReversibilityReport:
    return _finish(_reversibility(a))


def _reversibility(a: UniMat) -> ReversibilityReport:
    if a.is_scalar():
        return ReversibilityReport(a, True, True, Method.SCALAR, IDENTITY, IDENTITY)
    if a.det == -1:
        if is_involution(a):
            return ReversibilityReport(a, True, True, Method.INVOLUTION, IDENTITY, IDENTITY)
        return ReversibilityReport(a, False, False, Method.DET_MINUS_ONE_NOT_INVOLUTION)
    if classify(a).kind is not Kind.HYPERBOLIC:
        r = _canonical_involutive_reverser(a)
        return ReversibilityReport(a, True, True, Method.CANONICAL_FORM, r, r)
    r0 = conjugacy_test(a, a.inverse())
    if r0 is None:
        return ReversibilityReport(a, False, False, Method.FORM_CYCLE)
    tau = _involutive_in_coset(a, r0)
    return ReversibilityReport(a, True, tau is not None, Method.FORM_CYCLE, r0, tau)


def _involutive_in_coset(a: UniMat, r0: UniMat) -> Optional[UniMat]:
    """Search the reverser coset ``R0 Z(A)`` of a hyperbolic ``A`` for an
    involution (trace 0, det -1)."""
    z = centralizer(a)
    families = [r0]
    if z.det_minus_one is not None:
        families.append(r0 @ z.det_minus_one)
    for start in families:
        if start.det != -1:
            continue
        tau = _scan_trace_zero(start, z.automorph)
        if tau is not None:
            return tau
    return None


def strong_reversibility(a: UniMat) -> ReversibilityReport:
    return reversibility(a)


def reversers(a: UniMat, radius: int = 3) -> Iterator[UniMat]:
    """Reversing symmetries ``R0 Z`` for ``Z`` in a sample of the centralizer."""
    rep = reversibility(a)
    if not rep.reversible:
        return
    for z in centralizer(a).sample(radius):
        yield rep.reverser @ z


# ------------------------------------------------------------ fixed pairs


@dataclass(frozen=True)
class FixedPairReport:
    defined: bool
    sum: Optional[Fraction] = None
    product: Optional[Fraction] = None
    reciprocal: bool = False
    symmetric: bool = False


def reciprocal_fixed_points(a: UniMat) -> FixedPairReport:
    """Symmetric functions of the two boundary fixed points of ``z -> (az+b)/(cz+d)``."""
    if classify(a).kind is not Kind.HYPERBOLIC:
        raise NotHyperbolic(f"{a} is not hyperbolic")
    if a.c == 0:
        return FixedPairReport(False)
    s = Fraction(a.a - a.d, a.c)
    p = Fraction(-a.b, a.c)
    return FixedPairReport(True, s, p, p in (1, -1), s == 0)
