"""Integral binary quadratic forms and their SL(2, Z)-equivalence.

A form ``(a, b, c)`` is ``a x^2 + b x y + c y^2``. The right action of a
matrix ``g`` is substitution, ``(f . g)(v) = f(g v)``. Every transform
returned here is an element ``T`` of SL(2, Z) with ``f . T`` equal to the
stated target.

Definite forms are compared through their Gauss-reduced representative.
Indefinite forms of non-square discriminant are compared through the
cycle of reduced forms under the reduction operator ``rho``: two reduced
forms are properly equivalent exactly when they share a cycle, and one
full turn of a cycle is the fundamental proper automorph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .exactmath import IDENTITY, UniMat

_MAX_STEPS = 100_000


@dataclass(frozen=True)
class Form:
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def act(self, g) -> "Form":
        """Substitute ``(x, y) -> g (x, y)``."""
        p, q, r, s = g.entries
        a, b, c = self.a, self.b, self.c
        return Form(
            a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s,
        )

    def __neg__(self) -> "Form":
        return Form(-self.a, -self.b, -self.c)

    def mirror(self) -> "Form":
        """``f . diag(1, -1)``."""
        return Form(self.a, -self.b, self.c)

    @property
    def content(self) -> int:
        return math.gcd(math.gcd(self.a, self.b), self.c)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def _shear(k: int) -> UniMat:
    return UniMat(1, k, 0, 1)


_S = UniMat(0, -1, 1, 0)


# -------------------------------------------------------------- definite


def reduce_definite(f: Form) -> Tuple[Form, UniMat]:
    """Gauss reduction of a definite form: ``|b| <= a <= c`` (for ``a > 0``).

    Negative definite forms are reduced through ``-f``; the reduced form
    returned keeps the sign of ``f``.
    """
    if f.disc >= 0:
        raise ValueError("reduce_definite needs a negative discriminant")
    sign = 1 if f.a > 0 else -1
    g = Form(sign * f.a, sign * f.b, sign * f.c)
    t = IDENTITY
    for _ in range(_MAX_STEPS):
        a, b, c = g.a, g.b, g.c
        # b into (-a, a]
        k = (a - b) // (2 * a)
        if k:
            g, t = g.act(_shear(k)), t @ _shear(k)
            continue
        if a > c or (a == c and b < 0):
            g, t = g.act(_S), t @ _S
            continue
        break
    else:
        raise RuntimeError("definite reduction did not terminate")
    return Form(sign * g.a, sign * g.b, sign * g.c), t


# ------------------------------------------------------------ indefinite


def _below_sqrt(x: int, s0: int) -> bool:
    """``x < sqrt(D)`` for non-square ``D`` with ``s0 = isqrt(D)``."""
    return x <= s0


def is_reduced_indefinite(f: Form) -> bool:
    s0 = math.isqrt(f.disc)
    two_a = 2 * abs(f.a)
    # |sqrt D - 2|a|| < b < sqrt D
    return 0 < f.b <= s0 and two_a - f.b <= s0 and two_a + f.b > s0


def rho_step(f: Form) -> Tuple[Form, UniMat]:
    """One application of the reduction operator, with its transform."""
    d = f.disc
    s0 = math.isqrt(d)
    c = f.c
    m = 2 * abs(c)
    if c * c > d:
        lo = -abs(c) + 1
    else:
        lo = s0 - m + 1
    b_new = lo + ((-f.b - lo) % m)
    s = (b_new + f.b) // (2 * c)
    t = UniMat(0, -1, 1, s)
    g = f.act(t)
    assert g.a == c and g.b == b_new
    return g, t


def reduce_indefinite(f: Form) -> Tuple[Form, UniMat]:
    if f.disc <= 0 or _is_square(f.disc):
        raise ValueError("reduce_indefinite needs a positive non-square discriminant")
    t = IDENTITY
    for _ in range(_MAX_STEPS):
        if is_reduced_indefinite(f):
            return f, t
        f, step = rho_step(f)
        t = t @ step
    raise RuntimeError("indefinite reduction did not terminate")


def cycle(f: Form) -> List[Tuple[Form, UniMat]]:
    """The reduced cycle through a reduced form ``f``.

    Entry ``i`` is ``(f_i, W_i)`` with ``f . W_i == f_i``; entry 0 is
    ``(f, I)``. The transform closing the cycle is returned by
    :func:`fundamental_automorph`.
    """
    out = [(f, IDENTITY)]
    g, w = f, IDENTITY
    for _ in range(_MAX_STEPS):
        g, step = rho_step(g)
        w = w @ step
        if g == f:
            return out
        out.append((g, w))
    raise RuntimeError("cycle did not close")


def _cycle_closure(f: Form) -> UniMat:
    g, w = f, IDENTITY
    for _ in range(_MAX_STEPS):
        g, step = rho_step(g)
        w = w @ step
        if g == f:
            return w
    raise RuntimeError("cycle did not close")


# ---------------------------------------------------------- equivalence


def proper_equivalence(f: Form, g: Form) -> Optional[UniMat]:
    """Return ``T`` in SL(2, Z) with ``f . T == g``, or ``None``."""
    d = f.disc
    if d != g.disc:
        return None
    if d < 0:
        if (f.a > 0) != (g.a > 0):
            return None
        fr, tf = reduce_definite(f)
        gr, tg = reduce_definite(g)
        return tf @ tg.inverse() if fr == gr else None
    if d == 0 or _is_square(d):
        raise ValueError("square discriminants are handled outside form reduction")
    fr, tf = reduce_indefinite(f)
    gr, tg = reduce_indefinite(g)
    for h, w in cycle(fr):
        if h == gr:
            return tf @ w @ tg.inverse()
    return None


def fundamental_automorph(f: Form) -> UniMat:
    """Generator (together with -I) of the proper automorphs of ``f``.

    Only defined for positive non-square discriminant.
    """
    fr, tf = reduce_indefinite(f)
    w = _cycle_closure(fr)
    return tf @ w @ tf.inverse()
