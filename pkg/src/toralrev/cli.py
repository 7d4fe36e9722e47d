"""Command-line front end.

Every subcommand prints a human-readable summary, or with ``--json`` a
document of the form::

    {"schema_version": "1", "command": ..., "input_echo": {...},
     "verdicts": {...}, "certificates": [...], "timing_ms": ...}

Exit codes: 0 answered (negative verdicts included), 2 malformed input,
3 unmet precondition, 4 a certificate or oracle cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Callable, Dict, List, Optional

from . import affine, dynamics, gl2z, lattice, oracle
from .errors import EigenvalueOne, InvariantViolation, NotHyperbolic, ParseError, SingularAminusI, ToralRevError
from .exactmath import Mat2, TorusPoint, format_rational, parse_matrix, parse_torus_point

SCHEMA_VERSION = "1"
MAX_N = 10**6
EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 2, 3, 4


class PreconditionError(ToralRevError):
    pass


# ----------------------------------------------------------- serialization


def mat_json(m: Optional[Mat2]):
    return None if m is None else str(m)


def point_json(p: Optional[TorusPoint]):
    return None if p is None else [format_rational(p.x1), format_rational(p.x2)]


def affine_json(f: Optional[affine.AffineElement]):
    return None if f is None else {"linear": mat_json(f.linear), "translation": point_json(f.translation)}


def _cert(kind: str, verified: bool, **payload) -> Dict[str, Any]:
    if not verified:
        raise InvariantViolation(f"{kind} certificate failed re-verification")
    return {"type": kind, **payload, "verified": True}


# ---------------------------------------------------------------- commands


class Outcome:
    def __init__(self, verdicts: Dict[str, Any], certificates: Optional[List[Dict[str, Any]]] = None, svg: str = None):
        self.verdicts = verdicts
        self.certificates = certificates or []
        self.svg = svg


def _parse_affine(text: str) -> affine.AffineElement:
    return affine.AffineElement.parse(text)


def _parse_n(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise ParseError(f"not an integer: {text!r}") from None
    if not 1 <= n <= MAX_N:
        raise ParseError(f"n must lie in [1, {MAX_N}]")
    return n


def cmd_classify(args) -> Outcome:
    a = parse_matrix(args.A)
    c = gl2z.classify(a)
    return Outcome(
        {
            "kind": c.kind.value,
            "det": c.det,
            "trace": c.trace,
            "has_eigenvalue_one": c.has_eigenvalue_one,
            "finite_order": c.finite_order,
            "involution": gl2z.is_involution(a),
        }
    )


def cmd_involution(args) -> Outcome:
    a = parse_matrix(args.A)
    if not gl2z.is_involution(a):
        return Outcome({"involution": False, "representative": None})
    ic = gl2z.involution_class(a)
    rep = ic.representative.matrix
    return Outcome(
        {"involution": True, "representative": ic.representative.value, "representative_matrix": mat_json(rep)},
        [_cert("conjugator", ic.conjugator.conj(rep) == a, matrix=mat_json(ic.conjugator), identity="C rep C^-1 = A")],
    )


def cmd_conjugate(args) -> Outcome:
    a, b = parse_matrix(args.A), parse_matrix(args.B)
    c = gl2z.conjugacy_test(a, b)
    certs = []
    if c is not None:
        certs.append(_cert("conjugator", c.conj(a) == b, matrix=mat_json(c), identity="C A C^-1 = B"))
    return Outcome({"conjugate": c is not None}, certs)


def _reversibility_outcome(rep: gl2z.ReversibilityReport) -> Outcome:
    a, inv = rep.matrix, rep.matrix.inverse()
    certs = []
    if rep.reverser is not None:
        certs.append(_cert("reverser", rep.reverser.conj(a) == inv, matrix=mat_json(rep.reverser), identity="R A R^-1 = A^-1"))
    if rep.involutive_reverser is not None:
        t = rep.involutive_reverser
        certs.append(
            _cert(
                "involutive_reverser",
                t.conj(a) == inv and (t @ t).is_identity(),
                matrix=mat_json(t),
                identity="R A R^-1 = A^-1, R^2 = I",
            )
        )
    if not rep.verify():
        raise InvariantViolation("reversibility report failed its self-check")
    return Outcome(
        {"reversible": rep.reversible, "strongly_reversible": rep.strongly_reversible, "method": rep.method.value},
        certs,
    )


def cmd_reversible(args) -> Outcome:
    return _reversibility_outcome(gl2z.reversibility(parse_matrix(args.A)))


def cmd_strongly_reversible(args) -> Outcome:
    return _reversibility_outcome(gl2z.strong_reversibility(parse_matrix(args.A)))


def _affine_outcome(rep: affine.AffineReport) -> Outcome:
    certs = []
    if rep.certificate is not None:
        certs.append(
            _cert(
                "affine_involutive_reverser" if rep.involutive else "affine_reverser",
                rep.verify(),
                element=affine_json(rep.certificate),
                identity="(R,r)(A,a)(R,r)^-1 = (A,a)^-1",
            )
        )
    return Outcome(
        {
            "reversible": rep.reversible,
            "strongly_reversible": rep.strongly_reversible,
            "obstruction": rep.obstruction.value if rep.obstruction else None,
        },
        certs,
    )


def cmd_affine_reversible(args) -> Outcome:
    return _affine_outcome(affine.affine_reversibility(_parse_affine(args.f)))


def cmd_affine_strongly_reversible(args) -> Outcome:
    return _affine_outcome(affine.affine_strong_reversibility(_parse_affine(args.f)))


def cmd_g_conjugate(args) -> Outcome:
    f, g = _parse_affine(args.f), _parse_affine(args.g)
    w = affine.g_conjugacy_test(f, g)
    certs = []
    if w is not None:
        certs.append(_cert("g_conjugator", affine.conjugate_in_G(f, w) == g, element=affine_json(w), identity="W f W^-1 = g"))
    return Outcome({"conjugate": w is not None}, certs)


def cmd_dichotomy(args) -> Outcome:
    v = affine.similarity_dichotomy(parse_matrix(args.A))
    return Outcome({"kind": v.kind.value, "reason": v.reason.value})


def _lattice_report(text: str) -> lattice.LatticeReport:
    try:
        return lattice.lattice_report(parse_matrix(text))
    except SingularAminusI as e:
        raise PreconditionError(str(e)) from None


def cmd_lattice(args) -> Outcome:
    r = _lattice_report(args.A)
    return Outcome(
        {
            "g1": r.g1,
            "g2": r.g2,
            "boundary_count": r.boundary_count,
            "interior_count": r.interior_count,
            "area": r.area,
            "criterion_holds": r.criterion_holds,
        }
    )


def cmd_pick(args) -> Outcome:
    r = _lattice_report(args.A)
    return Outcome({"criterion_holds": r.criterion_holds, "area": r.area, "g1": r.g1, "g2": r.g2})


_VERDICT_NAMES = {
    lattice.FixedPointKind.POINTS: "points",
    lattice.FixedPointKind.CIRCLES: "circles",
    lattice.FixedPointKind.WHOLE_TORUS: "whole_torus",
    lattice.FixedPointKind.EMPTY: "empty",
}

_EMPTY_REASONS = {
    "RankOneObstruction": "translation leaves the image of A - I (second-coordinate obstruction for shears)",
    "NonzeroTranslation": "A = I and the translation is nonzero",
}


def _fixed_point_set(f: affine.AffineElement) -> lattice.FixedPointSet:
    fp = lattice.fixed_points(f.linear, f.translation)
    for p in fp.points:
        if fp.kind is not lattice.FixedPointKind.WHOLE_TORUS and not lattice.is_fixed(f.linear, f.translation, p):
            raise InvariantViolation(f"listed fixed point {p} is not fixed")
    return fp


def cmd_fixed_points(args) -> Outcome:
    f = _parse_affine(args.f)
    fp = _fixed_point_set(f)
    verdicts = {
        "verdict": _VERDICT_NAMES[fp.kind],
        "count": fp.count,
        "points": [point_json(p) for p in fp.points],
        "kernel_direction": list(fp.kernel_direction) if fp.kernel_direction else None,
        "reason": _EMPTY_REASONS.get(fp.obstruction) if fp.obstruction else None,
    }
    return Outcome(verdicts)


def _max_digits() -> int:
    raw = os.environ.get("TORALREV_MAX_DIGITS", str(dynamics.DEFAULT_DIGITS))
    try:
        d = int(raw)
    except ValueError:
        raise ParseError(f"TORALREV_MAX_DIGITS is not an integer: {raw!r}") from None
    if d < 1:
        raise ParseError("TORALREV_MAX_DIGITS must be positive")
    return d


def cmd_entropy(args) -> Outcome:
    text = args.target
    if "|" in text:
        e = dynamics.affine_entropy(_parse_affine(text), _max_digits())
    else:
        e = dynamics.entropy(parse_matrix(text), _max_digits())
    return Outcome({"kind": e.kind.value, "trace_abs": e.trace_abs, "det": e.det, "decimal": e.decimal_approx})


def cmd_growth(args) -> Outcome:
    a, n = parse_matrix(args.A), _parse_n(args.n)
    c = dynamics.periodic_point_count(a, n)
    if c is dynamics.INFINITE:
        raise PreconditionError(f"A^{n} has eigenvalue 1: infinitely many fixed points")
    rate = dynamics.growth_rate(a, n, min(30, _max_digits()))
    return Outcome({"n": n, "periodic_points": str(c), "growth_rate": str(rate)})


def _orbit(args) -> dynamics.OrbitRecord:
    return dynamics.orbit(_parse_affine(args.f), parse_torus_point(args.x0), _parse_n(args.n))


def _orbit_verdicts(rec: dynamics.OrbitRecord) -> Dict[str, Any]:
    return {
        "preperiod": rec.preperiod,
        "period": rec.period,
        "points": [point_json(p) for p in rec.points],
    }


def cmd_orbit(args) -> Outcome:
    return Outcome(_orbit_verdicts(_orbit(args)))


def cmd_render_orbit(args) -> Outcome:
    rec = _orbit(args)
    return Outcome(_orbit_verdicts(rec), svg=dynamics.render_orbit(rec, f"orbit of {args.x0} under {args.f}"))


def cmd_render_parallelogram(args) -> Outcome:
    a = parse_matrix(args.A)
    try:
        svg = dynamics.render_parallelogram(a)
    except SingularAminusI as e:
        raise PreconditionError(str(e)) from None
    return Outcome({"A": mat_json(a)}, svg=svg)


def cmd_reciprocal(args) -> Outcome:
    try:
        r = gl2z.reciprocal_fixed_points(parse_matrix(args.A))
    except NotHyperbolic as e:
        raise PreconditionError(str(e)) from None
    return Outcome(
        {
            "defined": r.defined,
            "sum": format_rational(r.sum) if r.sum is not None else None,
            "product": format_rational(r.product) if r.product is not None else None,
            "reciprocal": r.reciprocal,
            "symmetric": r.symmetric,
        }
    )


# (name, handler, positional argument names)
COMMANDS: Dict[str, tuple] = {
    "classify": (cmd_classify, ["A"]),
    "involution": (cmd_involution, ["A"]),
    "conjugate": (cmd_conjugate, ["A", "B"]),
    "reversible": (cmd_reversible, ["A"]),
    "strongly-reversible": (cmd_strongly_reversible, ["A"]),
    "affine-reversible": (cmd_affine_reversible, ["f"]),
    "affine-strongly-reversible": (cmd_affine_strongly_reversible, ["f"]),
    "g-conjugate": (cmd_g_conjugate, ["f", "g"]),
    "dichotomy": (cmd_dichotomy, ["A"]),
    "fixed-points": (cmd_fixed_points, ["f"]),
    "pick": (cmd_pick, ["A"]),
    "lattice": (cmd_lattice, ["A"]),
    "entropy": (cmd_entropy, ["target"]),
    "growth": (cmd_growth, ["A", "n"]),
    "orbit": (cmd_orbit, ["f", "x0", "n"]),
    "render-orbit": (cmd_render_orbit, ["f", "x0", "n"]),
    "render-parallelogram": (cmd_render_parallelogram, ["A"]),
    "reciprocal-pair": (cmd_reciprocal, ["A"]),
}


# ------------------------------------------------------------------ verify


def _verify_reversible(args, out: Outcome) -> Dict[str, Any]:
    a = parse_matrix(args.A)
    strong = args.command == "strongly-reversible"
    key = "strongly_reversible" if strong else "reversible"
    found = oracle.brute_reverser_search(a, args.bound, involutive=strong)
    claim = out.verdicts[key]
    return _one_sided(claim, found is not None, mat_json(found))


def _verify_conjugate(args, out: Outcome) -> Dict[str, Any]:
    found = oracle.brute_conjugator_search(parse_matrix(args.A), parse_matrix(args.B), args.bound)
    return _one_sided(out.verdicts["conjugate"], found is not None, mat_json(found))


def _verify_involution(args, out: Outcome) -> Dict[str, Any]:
    a = parse_matrix(args.A)
    if not out.verdicts["involution"]:
        return {"agree": not gl2z.is_involution(a), "oracle": "direct A^2 check"}
    hits = {r.value: oracle.brute_conjugator_search(r.matrix, a, args.bound) is not None for r in gl2z.InvolutionRep}
    # the three classes are disjoint, so a witness for another class is a contradiction
    agree = not any(hit for name, hit in hits.items() if name != out.verdicts["representative"])
    return {"agree": agree, "oracle_witnessed": hits}


def _one_sided(claim: bool, witnessed: bool, witness) -> Dict[str, Any]:
    """A bounded search can confirm a positive verdict or refute a negative
    one; a positive verdict without an in-bound witness is inconclusive."""
    if witnessed:
        return {"agree": claim, "oracle_witness": witness}
    return {"agree": True, "oracle_witness": None, "inconclusive": claim}


def _verify_lattice(args, out: Outcome) -> Dict[str, Any]:
    a = parse_matrix(args.A)
    interior, boundary = oracle.brute_lattice_points(a)
    r = lattice.lattice_report(a)
    return {
        "agree": (interior, boundary) == (r.interior_count, r.boundary_count),
        "oracle_interior": interior,
        "oracle_boundary": boundary,
    }


def _verify_fixed_points(args, out: Outcome) -> Dict[str, Any]:
    f = _parse_affine(args.f)
    fp = lattice.fixed_points(f.linear, f.translation)
    if fp.kind is lattice.FixedPointKind.POINTS:
        brute = oracle.brute_fixed_points(f.linear, f.translation)
        return {"agree": brute == fp.points, "oracle_count": len(brute)}
    d = f.translation.denominator
    q = max(args.bound - args.bound % d, d)
    brute = oracle.brute_fixed_points(f.linear, f.translation, q)
    if fp.kind is lattice.FixedPointKind.EMPTY:
        return {"agree": not brute, "oracle_count": len(brute)}
    return {"agree": bool(brute), "oracle_count": len(brute), "note": "grid points on the fixed circles"}


def _verify_affine(args, out: Outcome) -> Dict[str, Any]:
    f = _parse_affine(args.f)
    strong = args.command == "affine-strongly-reversible"
    found = oracle.brute_reverser_search(f.linear, args.bound, involutive=strong)
    key = "strongly_reversible" if strong else "reversible"
    return _one_sided(out.verdicts[key], found is not None, mat_json(found)) | {"oracle": "linear part"}


VERIFIERS: Dict[str, Callable] = {
    "reversible": _verify_reversible,
    "strongly-reversible": _verify_reversible,
    "conjugate": _verify_conjugate,
    "involution": _verify_involution,
    "lattice": _verify_lattice,
    "pick": _verify_lattice,
    "fixed-points": _verify_fixed_points,
    "affine-reversible": _verify_affine,
    "affine-strongly-reversible": _verify_affine,
}


# ------------------------------------------------------------------ parser


def _common(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="emit a JSON document")
    p.add_argument("--out", metavar="FILE", help="write output (JSON, text or SVG) to FILE")
    p.add_argument("--bound", type=int, default=10, help="entry/denominator bound for oracle searches (verify)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toralrev", description="Reversibility and dynamics of affine maps of the 2-torus.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, pos) in COMMANDS.items():
        p = sub.add_parser(name)
        for arg in pos:
            p.add_argument(arg)
        _common(p)
    v = sub.add_parser("verify", help="run the brute-force oracle alongside a command")
    v.add_argument("target", choices=sorted(VERIFIERS))
    v.add_argument("rest", nargs=argparse.REMAINDER)
    return parser


def _shield_negative(argv: List[str]) -> List[str]:
    # argparse would read "-5,1;1,0" as an option; a leading space is stripped by the parsers
    return [" " + a if a[:1] == "-" and any(ch in a for ch in ",;/|") else a for a in argv]


def _echo(args) -> Dict[str, Any]:
    _, pos = COMMANDS[args.command]
    return {name: getattr(args, name).strip() for name in pos}


def _render_text(doc: Dict[str, Any]) -> str:
    lines = [f"{doc['command']}: " + " ".join(doc["input_echo"].values())]
    for k, v in doc["verdicts"].items():
        if isinstance(v, list) and len(v) > 8:
            v = f"[{len(v)} entries]"
        lines.append(f"  {k}: {json.dumps(v) if not isinstance(v, str) else v}")
    for c in doc["certificates"]:
        what = c.get("matrix") or json.dumps(c.get("element"))
        lines.append(f"  certificate {c['type']}: {what} ({c['identity']}; verified)")
    if "verify" in doc:
        lines.append(f"  oracle: {json.dumps(doc['verify'])}")
    return "\n".join(lines) + "\n"


def run(argv: List[str]) -> tuple:
    """Returns ``(exit_code, stdout_text)``; errors go to stderr."""
    parser = build_parser()
    args = parser.parse_args(_shield_negative(argv))
    verifying = args.command == "verify"
    if verifying:
        args = parser.parse_args(_shield_negative([args.target] + args.rest))
        if args.bound < 1:
            raise ParseError("--bound must be >= 1")
    handler, _ = COMMANDS[args.command]
    t0 = time.perf_counter()
    out = handler(args)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": args.command,
        "input_echo": _echo(args),
        "verdicts": out.verdicts,
        "certificates": out.certificates,
    }
    code = EXIT_OK
    if verifying:
        doc["verify"] = VERIFIERS[args.command](args, out)
        if not doc["verify"]["agree"]:
            code = EXIT_INVARIANT
    doc["timing_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if out.svg is not None and not args.json:
        text = out.svg
    elif args.json:
        if out.svg is not None:
            doc["svg"] = out.svg
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
    else:
        text = _render_text(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        text = ""
    return code, text


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        code, text = run(argv)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, EigenvalueOne, SingularAminusI, NotHyperbolic) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except ToralRevError as e:
        # NotUnimodular, ZeroVector and friends come from malformed input
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
