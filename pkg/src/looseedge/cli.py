"""Command-line interface: ``looseedge {np,initial,factor,prepare,irred}``.

Exit codes: 0 success, 2 no loose edge, 3 no valid split, 4 parse or
validation error, 5 internal cap exceeded.  On a nonzero exit nothing is
written to standard output and a diagnostic goes to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .algebra import upoly_factor
from .bezout import Mode
from .grading import FiberBoundExceeded
from .lifting import (
    BezoutFailure,
    FactorizationResult,
    IncompleteFactorization,
    InvalidSplit,
    IterationCap,
    NotAnEdge,
    NotDescendant,
    NotLoose,
    automatic_split,
    edge_to_univariate,
    factor_weierstrass,
    irreducibility_report,
    lift_factorization,
    make_split,
)
from .parser import ParseError, parse_upoly
from .polyhedron import NewtonPolyhedron
from .serialize import (
    InputDocument,
    InputError,
    dumps,
    edge_to_json,
    load_document,
    parse_rational,
    rational,
    series_to_json,
)

EXIT_OK = 0
EXIT_NO_LOOSE_EDGE = 2
EXIT_NO_SPLIT = 3
EXIT_INVALID = 4
EXIT_CAP = 5


class CliError(Exception):
    def __init__(self, code: int, message: str, extra: dict | None = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.extra = extra or {}


def _option(args, doc: InputDocument, name: str, default=None):
    value = getattr(args, name, None)
    if value is None:
        value = doc.options.get(name, default)
    return value


def _edge_text(e, names) -> str:
    flag = "loose" if e.loose else "not loose"
    if e.is_descendant:
        flag += ", descendant"
    form = ", ".join(rational(c) for c in e.L.coeffs)
    return f"{e.alpha} -- {e.beta}  direction {e.d}  length {e.k}  L = ({form})  value {rational(e.value)}  [{flag}]"


def _header(cmd: str, doc: InputDocument) -> dict:
    return {"command": cmd, "field": doc.field.to_json(), "vars": doc.vars}


def _parse_split(text: str, ep, mode: Mode, names: Sequence[str]):
    parts = [p for p in str(text).split(";")]
    if not 1 <= len(parts) <= 2:
        raise CliError(EXIT_INVALID, "--split expects 'p1' or 'p1;p2'")
    try:
        p1 = parse_upoly(parts[0], ep.p.field)
        p2 = parse_upoly(parts[1], ep.p.field) if len(parts) == 2 else None
    except ParseError as exc:
        raise CliError(EXIT_INVALID, f"invalid split polynomial: {exc}") from exc
    return make_split(ep, p1, p2, mode=mode, origin="user")


def _select(P: NewtonPolyhedron, f, edge_opt, split_opt, mode: Mode, descendant: bool):
    """Choose an edge and a split from the command options."""
    edges = P.edges
    if edge_opt is None or str(edge_opt) == "auto":
        pool = [e for e in P.loose_edges if e.is_descendant or not descendant]
        if not pool:
            what = "loose descendant edge" if descendant else "loose edge"
            raise CliError(EXIT_NO_LOOSE_EDGE, f"no {what}")
        for e in pool:
            ep = edge_to_univariate(f, e)
            if split_opt is not None:
                return e, _parse_split(split_opt, ep, mode, None)
            s = automatic_split(ep, mode)
            if s is not None:
                return e, s
        raise CliError(EXIT_NO_SPLIT, "no loose edge admits a coprime split")
    try:
        idx = int(edge_opt)
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INVALID, f"--edge expects an index or 'auto', got {edge_opt!r}") from exc
    if not 0 <= idx < len(edges):
        raise CliError(EXIT_INVALID, f"edge index {idx} out of range (0..{len(edges) - 1})")
    e = edges[idx]
    ep = edge_to_univariate(f, e)
    if split_opt is not None:
        return e, _parse_split(split_opt, ep, mode, None)
    s = automatic_split(ep, mode)
    if s is None:
        raise CliError(EXIT_NO_SPLIT, "edge polynomial is a unit times a power of one irreducible")
    return e, s


def _result_json(r: FactorizationResult, names) -> dict:
    doc = {
        "edge": edge_to_json(r.edge),
        "split": {
            "p1": r.split.p1.to_str(),
            "p2": r.split.p2.to_str(),
            "origin": r.split.origin,
            "mode": r.split.mode.value,
        },
        "target": rational(r.target),
        "G": series_to_json(r.G, names),
        "H": series_to_json(r.H, names),
        "g": series_to_json(r.g, names),
        "h": series_to_json(r.h, names),
        "E1": {"ends": [list(p) for p in r.E1.ends]},
        "E2": {"ends": [list(p) for p in r.E2.ends]},
        "residualValuation": rational(r.residual_valuation),
        "trace": [{"iteration": i, "a": rational(a), "solves": s} for i, a, s in r.trace],
        "looseChecked": r.loose_checked,
    }
    if r.unit is not None:
        doc["unit"] = series_to_json(r.unit, names)
        doc["order"] = r.extra["order"]
        doc["liftTarget"] = rational(r.extra["lift_target"])
        doc["gbar"] = series_to_json(r.extra["gbar"], names)
        doc["hbar"] = series_to_json(r.extra["hbar"], names)
    return doc


def _result_text(r: FactorizationResult, names) -> list[str]:
    lines = [
        f"edge: {_edge_text(r.edge, names)}",
        f"split: p1 = {r.split.p1.to_str()}, p2 = {r.split.p2.to_str()} ({r.split.origin})",
        f"G = {r.G.to_str(names)}",
        f"H = {r.H.to_str(names)}",
    ]
    for label, s in (("g", r.g), ("h", r.h)):
        tail = ""
        if s.truncation is not None:
            tail = f"  (terms with value > {rational(s.truncation.cutoff)} unknown)"
        lines.append(f"{label} = {s.to_str(names)}{tail}")
    if r.unit is not None:
        lines.append(f"unit = {r.unit.to_str(names)}")
    lines.append(f"residual valuation: {rational(r.residual_valuation)}")
    lines.append("trace: " + ", ".join(f"({i}, {rational(a)}, {s})" for i, a, s in r.trace))
    return lines


def cmd_np(args, doc: InputDocument):
    P = NewtonPolyhedron.of(doc.series)
    out = _header("np", doc)
    out["vertices"] = [list(v) for v in P.vertices]
    out["edges"] = [edge_to_json(e, i) for i, e in enumerate(P.edges)]
    text = [f"vertices: {' '.join(str(v) for v in P.vertices)}"]
    text += [f"edge {i}: {_edge_text(e, doc.vars)}" for i, e in enumerate(P.edges)]
    if not P.edges:
        text.append("no compact edges")
    return out, text


def cmd_initial(args, doc: InputDocument):
    f = doc.series
    P = NewtonPolyhedron.of(f)
    idx = _option(args, doc, "edge")
    if idx is None:
        raise CliError(EXIT_INVALID, "--edge is required")
    try:
        idx = int(idx)
        e = P.edges[idx]
        if idx < 0:
            raise IndexError
    except (ValueError, TypeError, IndexError) as exc:
        raise CliError(EXIT_INVALID, f"invalid edge index {idx!r}") from exc
    ep = edge_to_univariate(f, e)
    fac = upoly_factor(ep.p)
    init = ep.initial_form()
    out = _header("initial", doc)
    out["edge"] = edge_to_json(e, idx)
    out["initialForm"] = series_to_json(init, doc.vars)
    out["edgePolynomial"] = {
        "base": list(ep.base),
        "dPlus": list(ep.d_plus),
        "dMinus": list(ep.d_minus),
        "k": ep.k,
        "p": ep.p.to_str(),
        "coeffs": [f.field.format(c) for c in ep.p.coeffs],
    }
    out["factorization"] = {
        "unit": f.field.format(fac.unit),
        "factors": [{"factor": q.to_str(), "multiplicity": m} for q, m in fac.factors],
        "maybeReducible": fac.maybe_reducible,
    }
    text = [
        f"edge {idx}: {_edge_text(e, doc.vars)}",
        f"initial form: {init.to_str(doc.vars)}",
        f"base {ep.base}, d+ {ep.d_plus}, d- {ep.d_minus}, k = {ep.k}",
        f"p(T) = {ep.p.to_str()}",
        "p(T) = " + " * ".join(
            [f.field.format(fac.unit)] + [f"({q.to_str()})" + (f"^{m}" if m > 1 else "") for q, m in fac.factors]
        ) + ("  (some factor may be reducible)" if fac.maybe_reducible else ""),
    ]
    return out, text


def cmd_factor(args, doc: InputDocument):
    f = doc.series
    P = NewtonPolyhedron.of(f)
    e, s = _select(P, f, _option(args, doc, "edge"), _option(args, doc, "split"), Mode.NO_VARIABLE_DIVIDES, False)
    target = _option(args, doc, "target")
    target = parse_rational(target) if target is not None else None
    r = lift_factorization(f, e, s, target, check_loose=not args.no_loose_check)
    out = _header("factor", doc)
    out.update(_result_json(r, doc.vars))
    return out, _result_text(r, doc.vars)


def cmd_prepare(args, doc: InputDocument):
    f = doc.series
    P = NewtonPolyhedron.of(f)
    e, s = _select(P, f, _option(args, doc, "edge"), _option(args, doc, "split"), Mode.MONIC_IN_LAST, True)
    order = _option(args, doc, "order", 6)
    try:
        order = int(order)
    except (TypeError, ValueError) as exc:
        raise CliError(EXIT_INVALID, f"--order expects an integer, got {order!r}") from exc
    if order < 0:
        raise CliError(EXIT_INVALID, "--order must be nonnegative")
    target = _option(args, doc, "target")
    target = parse_rational(target) if target is not None else None
    r = factor_weierstrass(f, e, s, order, target, check_loose=not args.no_loose_check)
    out = _header("prepare", doc)
    out.update(_result_json(r, doc.vars))
    return out, _result_text(r, doc.vars)


def cmd_irred(args, doc: InputDocument):
    f = doc.series
    target = _option(args, doc, "target")
    target = parse_rational(target) if target is not None else None
    try:
        rep = irreducibility_report(f, target)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    verdict = {"verdict": rep.verdict, "code": rep.code, "reason": rep.reason}
    if not rep.reducible:
        code = EXIT_NO_LOOSE_EDGE if rep.code == "no-loose-edge" else EXIT_NO_SPLIT
        raise CliError(code, f"{rep.verdict}: {rep.reason}", verdict)
    out = _header("irred", doc)
    out.update(verdict)
    out["vertices"] = [list(v) for v in rep.vertices]
    out["witness"] = _result_json(rep.result, doc.vars)
    text = [f"verdict: {rep.verdict} ({rep.reason})"] + _result_text(rep.result, doc.vars)
    return out, text


COMMANDS = {
    "np": cmd_np,
    "initial": cmd_initial,
    "factor": cmd_factor,
    "prepare": cmd_prepare,
    "irred": cmd_irred,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="looseedge",
        description="Newton polyhedra, loose edges and factorization of power series over Q or GF(p).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default="-", help="input JSON document (default: standard input)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("np", "vertices and compact edges of the Newton polyhedron")
    p = add("initial", "initial form and edge polynomial along an edge")
    p.add_argument("--edge", help="edge index as listed by 'np'")
    for name, help_text in (
        ("factor", "lift a coprime split of an edge's initial form"),
        ("prepare", "factor with a monic Weierstrass factor in the last variable"),
    ):
        p = add(name, help_text)
        p.add_argument("--edge", help="edge index or 'auto' (default)")
        p.add_argument("--target", help="lifting precision, a rational")
        p.add_argument("--split", help="'p1;p2' or 'p1', polynomials in T")
        p.add_argument("--no-loose-check", action="store_true", help="skip the looseness precondition")
        if name == "prepare":
            p.add_argument("--order", help="x-order of the result (default 6)")
    p = add("irred", "irreducibility report")
    p.add_argument("--target", help="precision of the witness factors")
    return parser


def _read_input(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_INVALID, f"cannot read {path}: {exc.strerror}") from exc


def _fail(args, exc: CliError, stderr) -> int:
    if getattr(args, "json", False):
        err = {"error": {"exitCode": exc.code, "message": exc.message}}
        err["error"].update(exc.extra)
        stderr.write(dumps(err) + "\n")
    else:
        stderr.write(f"looseedge: {exc.message}\n")
    return exc.code


def run(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        doc = load_document(_read_input(args.input, stdin))
        if doc.series.is_zero():
            raise CliError(EXIT_INVALID, "the zero series has no Newton polyhedron")
        out, text = COMMANDS[args.command](args, doc)
    except CliError as exc:
        return _fail(args, exc, stderr)
    except NotLoose as exc:
        return _fail(args, CliError(EXIT_NO_LOOSE_EDGE, str(exc)), stderr)
    except IncompleteFactorization as exc:
        return _fail(args, CliError(EXIT_NO_SPLIT, str(exc)), stderr)
    except (IterationCap, FiberBoundExceeded) as exc:
        return _fail(args, CliError(EXIT_CAP, str(exc)), stderr)
    except (ParseError, InputError, NotAnEdge, InvalidSplit, NotDescendant, BezoutFailure, ValueError) as exc:
        return _fail(args, CliError(EXIT_INVALID, f"{type(exc).__name__}: {exc}"), stderr)
    if args.json:
        stdout.write(dumps(out) + "\n")
    else:
        stdout.write("\n".join(text) + "\n")
    return EXIT_OK


def main() -> None:
    sys.exit(run())
