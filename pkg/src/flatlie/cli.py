"""Command-line front end: ``flatlie <verb> ...``.

Every verb prints one JSON document on stdout (or to ``--out``) and a short
human summary on stderr.  Exit status: 0 success, 1 a mathematical check
failed (the JSON says which and why), 2 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any

from . import catalog, schema
from .doubleext import extend, frame_view, is_admissible, same_structure, split
from .errors import (
    ConstraintError,
    DegenerateFormError,
    InadmissibleError,
    JacobiError,
    NotFlatError,
    PreconditionError,
    SchemaError,
    ShapeError,
)
from .exactnum import format_rational
from .liealg import center, class_labels, is_unimodular
from .metric import (
    center_degenerate,
    curvature_witness,
    flat_structure_diagnostics,
    general_identities,
    killing_subalgebra,
    mean_curvature,
)
from .milnor import build_riemannian_flat, eq12_check, milnor_check, milnor_verdict_holds
from .report import jsonable

OK, FAILED, BAD_INPUT = 0, 1, 2


class Outcome:
    def __init__(self, payload: Any, code: int = OK, summary: str = ""):
        self.payload = payload
        self.code = code
        self.summary = summary


def _vec(v):
    return [format_rational(x) for x in v]


def cmd_validate(args) -> Outcome:
    M = schema.metric_algebra_from(schema.read_json(args.file), args.file)
    sig = M.signature()
    return Outcome(
        {"valid": True, "dim": M.dim, "signature": list(sig)},
        summary=f"valid metric Lie algebra, dim {M.dim}, signature {sig}",
    )


def cmd_analyze(args) -> Outcome:
    M = schema.metric_algebra_from(schema.read_json(args.file), args.file)
    cw = curvature_witness(M)
    flat = cw is None
    general = general_identities(M)
    diag = flat_structure_diagnostics(M) if flat else None
    out = {
        "flat": flat,
        "curvature_witness": list(cw) if cw else None,
        "signature": list(M.signature()),
        "center": center(M.algebra).to_json(),
        "center_degenerate": center_degenerate(M),
        "killing_subalgebra": killing_subalgebra(M).to_json(),
        "H": _vec(mean_curvature(M)),
        "unimodular": is_unimodular(M.algebra),
        "class_labels": class_labels(M.algebra),
        "diagnostics": {
            "general_identities": general.to_json(),
            "flat_structure": diag.to_json() if diag is not None else None,
        },
    }
    ok = general.passed and (diag is None or diag.passed)
    return Outcome(
        out,
        OK if ok else FAILED,
        f"flat={flat} signature={tuple(out['signature'])} center_degenerate={out['center_degenerate']}",
    )


def _extend_inputs(args):
    if args.data is None:
        bundle = schema.read_json(args.base)
        schema.validate(bundle, schema.EXTEND_BUNDLE, args.base)
        return (
            schema.metric_algebra_from(bundle["base"], f"{args.base}:base"),
            schema.extension_data_from(bundle["data"], f"{args.base}:data"),
        )
    return (
        schema.metric_algebra_from(schema.read_json(args.base), args.base),
        schema.extension_data_from(schema.read_json(args.data), args.data),
    )


def cmd_extend(args) -> Outcome:
    B, data = _extend_inputs(args)
    if data.dim != B.dim:
        raise ShapeError(f"extension data has dimension {data.dim}, base has {B.dim}")
    rep = is_admissible(B, data)
    if not rep.passed:
        return Outcome(
            {"admissible": False, "report": rep.to_json()},
            FAILED,
            f"inadmissible: {rep.first_failure()} fails",
        )
    M = extend(B, data, check=False)
    return Outcome(M.to_json(), summary=f"extension of dim {M.dim}, signature {M.signature()}")


def cmd_split(args) -> Outcome:
    M = schema.metric_algebra_from(schema.read_json(args.file), args.file)
    s = split(M)
    ok = same_structure(extend(s.base, s.data), frame_view(M, s))
    out = {
        "base": s.base.to_json(),
        "data": s.data.to_json(),
        "frame": [_vec(v) for v in s.frame],
        "round_trip": ok,
    }
    return Outcome(out, OK if ok else FAILED, f"base dim {s.base.dim}, round trip {'ok' if ok else 'FAILED'}")


def cmd_milnor_build(args) -> Outcome:
    d = schema.milnor_data_from(schema.read_json(args.file), args.file)
    M = build_riemannian_flat(d)
    return Outcome(M.to_json(), summary=f"Riemannian flat algebra, dim {M.dim}")


def cmd_milnor_check(args) -> Outcome:
    M = schema.metric_algebra_from(schema.read_json(args.file), args.file)
    rep = milnor_check(M)
    out = rep.to_json()
    out["verdict_consistent"] = milnor_verdict_holds(rep)
    if rep.checks["is_flat"]:
        out["product_formula"] = eq12_check(M)
    ok = rep.passed and out.get("product_formula", True)
    return Outcome(out, OK if ok else FAILED, "normal form holds" if ok else f"fails: {rep.failures}")


def cmd_catalog_list(args) -> Outcome:
    rows = [e.summary() for e in catalog.entries()]
    return Outcome(rows, summary=f"{len(rows)} entries")


def cmd_catalog_show(args) -> Outcome:
    e = catalog.entry(args.id)
    out = e.to_json()
    p = catalog.sample_params(e, 1)[0]
    out["example"] = {
        "params": {k: format_rational(v) for k, v in sorted(p.items())},
        "algebra": catalog.build(e, p).to_json(),
    }
    return Outcome(out, summary=f"{e.id}: dim {e.dim}, {e.class_label}")


def cmd_catalog_verify(args) -> Outcome:
    ids = [args.id] if args.id else None
    rep = catalog.verify_all(args.samples, round_trip=args.round_trip, ids=ids)
    lines = [f"{r['entry']}: {'pass' if r['pass'] else 'FAIL'}" for r in rep["entries"]]
    return Outcome(rep, OK if rep["pass"] else FAILED, "\n".join(lines + [rep["summary"]]))


def _add_out(p):
    p.add_argument("--out", type=Path, help="write the JSON report here instead of stdout")


def _add_verify_opts(p):
    p.add_argument("--samples", type=int, default=3, help="samples per entry (default 3)")
    p.add_argument("--id", help="verify a single entry")
    p.add_argument("--round-trip", action="store_true", help="also check split/extend on each sample")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flatlie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text, file_arg=True):
        p = sub.add_parser(name, help=help_text)
        if file_arg:
            p.add_argument("file", help="metric Lie algebra JSON")
        _add_out(p)
        p.set_defaults(func=func)
        return p

    verb("validate", cmd_validate, "parse and check Jacobi and nondegeneracy")
    verb("analyze", cmd_analyze, "curvature, structural subspaces and diagnostics")
    p = verb("extend", cmd_extend, "double extension of a flat base", file_arg=False)
    p.add_argument("base", help="base metric algebra JSON, or a {base, data} bundle")
    p.add_argument("data", nargs="?", help="extension data JSON")
    verb("split", cmd_split, "write a Lorentzian flat algebra as a double extension")
    p = verb("milnor-build", cmd_milnor_build, "Riemannian flat algebra from normal-form data", file_arg=False)
    p.add_argument("file", help='JSON {"p": p, "u": [[...], ...]}')
    verb("milnor-check", cmd_milnor_check, "compare flatness with the Riemannian normal form")
    verb("catalog-list", cmd_catalog_list, "list catalog entries", file_arg=False)
    p = verb("catalog-show", cmd_catalog_show, "show one catalog entry", file_arg=False)
    p.add_argument("id")
    p = verb("catalog-verify", cmd_catalog_verify, "verify catalog entries", file_arg=False)
    _add_verify_opts(p)

    cat = sub.add_parser("catalog", help="catalog subcommands")
    csub = cat.add_subparsers(dest="catalog_verb", required=True)
    p = csub.add_parser("list")
    _add_out(p)
    p.set_defaults(func=cmd_catalog_list)
    p = csub.add_parser("show")
    p.add_argument("id")
    _add_out(p)
    p.set_defaults(func=cmd_catalog_show)
    p = csub.add_parser("verify")
    _add_verify_opts(p)
    _add_out(p)
    p.set_defaults(func=cmd_catalog_verify)
    return parser


def _error(kind: str, exc: Exception, witness: Any = None) -> dict:
    out = {"ok": False, "error": kind, "message": str(exc)}
    if witness is not None:
        out["witness"] = jsonable(witness)
    return out


def execute(args: argparse.Namespace) -> Outcome:
    """Run a parsed command, mapping library errors to exit codes."""
    if getattr(args, "samples", 1) < 1:
        return Outcome(_error("input", ValueError("--samples must be positive")), BAD_INPUT, "bad --samples")
    try:
        return args.func(args)
    except (SchemaError, ShapeError, ConstraintError) as exc:
        return Outcome(_error("input", exc), BAD_INPUT, f"input error: {exc}")
    except JacobiError as exc:
        return Outcome(_error("jacobi", exc, exc.triple), FAILED, str(exc))
    except DegenerateFormError as exc:
        return Outcome(_error("degenerate_metric", exc), FAILED, str(exc))
    except InadmissibleError as exc:
        return Outcome(_error("inadmissible", exc, exc.report), FAILED, str(exc))
    except (NotFlatError, PreconditionError) as exc:
        return Outcome(_error("precondition", exc), FAILED, str(exc))


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return BAD_INPUT if exc.code else OK
    outcome = execute(args)
    text = json.dumps(outcome.payload, indent=2) + "\n"
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if outcome.summary:
        print(outcome.summary, file=sys.stderr)
    return outcome.code


if __name__ == "__main__":
    raise SystemExit(main())
