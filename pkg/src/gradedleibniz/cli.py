"""Command-line front end.

Every command prints one JSON document on stdout and a short human summary
on stderr.  Exit codes: 0 success, 1 a mathematical check failed (Leibniz
violation, failed witness, failed reproduction), 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import __version__
from .algebra import (annihilators, is_lie, leibniz_check, lie_violation,
                      lower_central_series, split_abelian_rank)
from .catalog import CatalogError, by_name, catalog_names
from .iso import invariant_vector, verify_isomorphism
from .nilpotent import (DEFAULT_SAMPLES, DEFAULT_SEED, GradationError,
                        NotNilpotentError, characteristic_sequence,
                        filiform_profile, natural_gradation)
from .scalar import format_scalar
from .serialize import LawFormatError, law_to_json, loads_law, witness_from_json
from .templates import TemplateError, leibniz_residuals, make_template

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(payload, summary: str) -> None:
    json.dump(payload, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")
    if summary:
        print(summary, file=sys.stderr)


def load_law(spec: str):
    """A JSON file path, ``-`` for stdin, or a catalog name."""
    if spec == "-":
        return loads_law(sys.stdin.read())
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            try:
                return loads_law(fh.read())
            except LawFormatError as exc:
                raise InputError(f"{spec}: {exc}") from None
    try:
        return by_name(spec)
    except CatalogError as exc:
        raise InputError(f"{spec!r} is neither a file nor a catalog law ({exc})") from None


def _vec(v) -> list[str]:
    return [format_scalar(c) for c in v]


def _subspace(S) -> dict:
    return {"dim": S.dim, "basis": [_vec(row) for row in S.basis]}


def cmd_check(args) -> int:
    law = load_law(args.law)
    report = leibniz_check(law, first_only=not args.all)
    out = {"law": law.name, "dim": law.dim, "leibniz": report.passed}
    if not report.passed:
        out["violations"] = [{"triple": [i, j, k], "residual": _vec(r)}
                             for i, j, k, r in report.violations]
        i, j, k, _ = report.violations[0]
        _emit(out, f"FAIL: Leibniz identity violated at (e{i}, e{j}, e{k})")
        return EXIT_FAIL
    left, right, center = annihilators(law)
    series = lower_central_series(law)
    lie = is_lie(law)
    out.update({
        "lie": lie, "lie_violation": lie_violation(law),
        "abelian": not law.products,
        "left_annihilator": _subspace(left), "right_annihilator": _subspace(right),
        "center": _subspace(center), "series_dims": series.dims,
        "nilindex": series.nilindex, "split_abelian_rank": split_abelian_rank(law),
    })
    kind = "Lie" if lie else "non-Lie"
    _emit(out, f"ok: {law.name or 'law'} is Leibniz ({kind}), series {series.dims}")
    return EXIT_OK


def cmd_series(args) -> int:
    law = load_law(args.law)
    s = lower_central_series(law)
    _emit({"law": law.name, "dims": s.dims, "nilindex": s.nilindex,
           "terms": [_subspace(t) for t in s.subspaces]},
          f"dim L^k: {s.dims}, nilindex {s.nilindex}")
    return EXIT_OK


def cmd_profile(args) -> int:
    law = load_law(args.law)
    cs, witness = characteristic_sequence(law, args.samples, args.seed)
    prof = filiform_profile(law, args.samples, args.seed)
    try:
        grad = natural_gradation(law)
        layers = {"layer_dims": grad.layer_dims, "homogeneous": grad.homogeneous}
    except GradationError as exc:
        layers = {"error": str(exc)}
    out = {"law": law.name, "charseq": list(cs),
           "witness": _vec(witness) if witness is not None else None,
           "p": prof.p, "type": prof.algebra_type.value,
           "positions": list(prof.positions), "gradation": layers}
    _emit(out, f"C(L) = {tuple(cs)}, p = {prof.p}, {prof.algebra_type.value}, "
               f"positions {tuple(prof.positions)}")
    return EXIT_OK


def cmd_invariants(args) -> int:
    law = load_law(args.law)
    inv = invariant_vector(law, args.samples, args.seed)
    _emit({"law": law.name, **inv.to_json()},
          f"C(L) = {inv.charseq}, Lann {inv.left_ann_dim}, center {inv.center_dim}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog_names(args.max_dim)
        _emit({"laws": names}, f"{len(names)} catalog laws up to dimension {args.max_dim}")
        return EXIT_OK
    if not args.name:
        raise InputError("catalog emit needs a law name")
    try:
        law = by_name(args.name)
    except CatalogError as exc:
        raise InputError(str(exc)) from None
    _emit(law_to_json(law), f"{law.name}: dimension {law.dim}, {len(law.products)} products")
    return EXIT_OK


_TEMPLATE_NAME = re.compile(r"(\w+?)(?:\((\d+(?:,\d+)*)\))?$")


def parse_template(text: str):
    m = _TEMPLATE_NAME.match(text.replace(" ", ""))
    if not m:
        raise InputError(f"bad template name {text!r}")
    nums = [int(x) for x in m.group(2).split(",")] if m.group(2) else []
    try:
        return make_template(m.group(1), *nums)
    except TemplateError as exc:
        raise InputError(str(exc)) from None


def cmd_template(args) -> int:
    t = parse_template(args.name)
    res = leibniz_residuals(t)
    _emit({"template": t.name, "parameters": list(t.parameters), "table": t.describe(),
           "notes": t.notes, "residuals": [str(p) for p in res]},
          f"{t.name}: {len(t.parameters)} parameters, {len(res)} distinct residuals")
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = load_law(args.a), load_law(args.b)
    try:
        with open(args.witness, encoding="utf-8") as fh:
            P = witness_from_json(json.load(fh))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{args.witness}: {exc}") from None
    except LawFormatError as exc:
        raise InputError(f"{args.witness}: {exc}") from None
    ok = verify_isomorphism(a, b, P)
    _emit({"a": a.name, "b": b.name, "verified": ok},
          "witness verified" if ok else "witness does NOT map a onto b")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reproduce(args) -> int:
    from .reproduce import EXPERIMENTS, run_experiment
    kw = {}
    name = args.experiment
    if name not in EXPERIMENTS:
        raise InputError(f"unknown experiment {name!r}; known: {', '.join(EXPERIMENTS)}")
    if name in ("typeII", "thmI12", "theorem1"):
        kw["budget"] = args.grid_budget
        if args.n is not None:
            kw["n_range"] = [args.n]
        if name == "typeII" and args.r is not None:
            kw["r_range"] = [args.r]
    elif name == "dim4":
        kw["budget"] = args.grid_budget
    elif name == "dim5":
        kw.update(samples=max(args.samples, 1000), seed=args.seed)
    rep = run_experiment(name, **kw)
    lines = [f"{'PASS' if c.ok else 'FAIL'}  {c.name}" for c in rep.checks]
    _emit(rep.to_json(), "\n".join(lines) + f"\n{name}: {'ok' if rep.ok else 'FAILED'} "
                                            f"({rep.seconds:.1f}s)")
    return EXIT_OK if rep.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gradedleibniz",
                                description="Exact structure-constant toolkit for Leibniz algebras.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help="extra random candidates for characteristic sequences")
    p.add_argument("--grid-budget", type=int, default=1_000_000,
                   help="node budget for grid enumeration")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="Leibniz identity, Lie test, annihilators, series")
    c.add_argument("law", help="law JSON file, '-' for stdin, or catalog name")
    c.add_argument("--all", action="store_true", help="list every violating triple")
    c.set_defaults(func=cmd_check)

    for name, fn, text in (("profile", cmd_profile, "characteristic sequence and type"),
                           ("series", cmd_series, "lower central series"),
                           ("invariants", cmd_invariants, "isomorphism invariants")):
        c = sub.add_parser(name, help=text)
        c.add_argument("law")
        c.set_defaults(func=fn)

    c = sub.add_parser("catalog", help="list or emit catalog laws")
    c.add_argument("action", choices=["list", "emit"])
    c.add_argument("name", nargs="?")
    c.add_argument("--max-dim", type=int, default=12)
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("template", help="parameterized tables")
    c.add_argument("action", choices=["residuals"])
    c.add_argument("name", help="e.g. T_I12(6), T_II_r(7,3), T_dim4")
    c.set_defaults(func=cmd_template)

    c = sub.add_parser("iso", help="verify a change-of-basis witness")
    c.add_argument("--witness", required=True, help='JSON {"matrix": [[...]]}')
    c.add_argument("a")
    c.add_argument("b")
    c.set_defaults(func=cmd_iso)

    c = sub.add_parser("reproduce", help="run a reproduction experiment")
    c.add_argument("experiment", help="dim4, dim5, thmI12, typeII or theorem1")
    c.add_argument("--n", type=int)
    c.add_argument("--r", type=int)
    c.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, LawFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotNilpotentError, GradationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
