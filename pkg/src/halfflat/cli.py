"""Command-line interface.

Subcommands expose the library over text: parsing and invariants of an
algebra, cohomology, coherent splittings with their h^{p,q} tables,
classification verdicts, frame verification, and the full reproduction of
the published tables.  Output is deterministic;
``--format json`` emits the documented schemas.  Exit codes: 0 on success
with all verifications passing, 1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog as catalog_mod
from .errors import HalfFlatError, NotSolvableError, SyntaxPosError, UndecidedError
from .exterior import format_form, is_simple, parse_form
from .liealg import (
    check_jacobi,
    cohomology,
    derived_length,
    format_notation,
    is_nilpotent,
    is_unimodular,
    parse_notation,
)
from .obstruction import classify
from .splitting import (
    e1_term,
    generator_space,
    hpq,
    hpq_to_json_obj,
    splitting_from_generator,
)
from .su3 import Frame, forms_from_frame, is_half_flat

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfflat",
        description="Exact computations with half-flat structures on Lie algebras.",
    )
    parser.add_argument(
        "--format", choices=("table", "json"), default="table",
        help="output style (default: table)",
    )
    parser.add_argument("--quiet", action="store_true", help="suppress detail lines")
    parser.add_argument(
        "--catalog", metavar="PATH", default=None,
        help="load an external JSON catalog instead of the built-in one",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="echo canonical notation and basic invariants")
    p.add_argument("notation")

    p = sub.add_parser("cohomology", help="Betti numbers and Z^k/B^k dimensions")
    p.add_argument("notation")

    p = sub.add_parser("splittings", help="generator space and h^{p,q} tables")
    p.add_argument("notation")
    p.add_argument("--generator", metavar="2FORM", default=None)

    p = sub.add_parser("classify", help="half-flat / obstructed verdict")
    p.add_argument("notation", nargs="?")
    p.add_argument("--all", action="store_true", help="classify the whole catalog")

    p = sub.add_parser("verify-frame", help="test a frame for half-flatness")
    p.add_argument("notation")
    p.add_argument("--frame", required=True, metavar="SIX_ONE_FORMS")

    sub.add_parser("tables", help="re-verify the published tables")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        entries = _load_entries(args)
        handler = {
            "parse": _cmd_parse,
            "cohomology": _cmd_cohomology,
            "splittings": _cmd_splittings,
            "classify": _cmd_classify,
            "verify-frame": _cmd_verify_frame,
            "tables": _cmd_tables,
        }[args.command]
        return handler(args, entries)
    except SyntaxPosError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except UndecidedError as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION_FAILED
    except HalfFlatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


def _load_entries(args):
    if args.catalog is None:
        return catalog_mod.CATALOG
    return catalog_mod.load_catalog(Path(args.catalog).read_text())


def _emit(args, obj: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _cmd_parse(args, entries) -> int:
    g = parse_notation(args.notation)
    jac = check_jacobi(g)
    nilp = is_nilpotent(g) if jac else None
    unim = is_unimodular(g) if jac else None
    try:
        length = derived_length(g) if jac else None
    except NotSolvableError:
        length = None
    obj = {
        "notation": format_notation(g),
        "dim": g.n,
        "jacobi": jac,
        "nilpotent": nilp,
        "unimodular": unim,
        "derived_length": length,
    }
    lines = [
        f"notation:       {obj['notation']}",
        f"dim:            {obj['dim']}",
        f"jacobi:         {_yn(jac)}",
        f"nilpotent:      {_yn(nilp)}",
        f"unimodular:     {_yn(unim)}",
        f"derived length: {length if length is not None else 'n/a'}",
    ]
    _emit(args, obj, lines if not args.quiet else lines[:1])
    return EXIT_OK


def _yn(value) -> str:
    if value is None:
        return "n/a"
    return "yes" if value else "no"


def _cmd_cohomology(args, entries) -> int:
    g = parse_notation(args.notation)
    coh = cohomology(g)
    obj = {
        "notation": format_notation(g),
        "betti": list(coh.betti),
        "closed_dims": [s.dim for s in coh.closed],
        "exact_dims": [s.dim for s in coh.exact],
    }
    lines = [f"notation: {obj['notation']}", f"betti:    {obj['betti']}"]
    if not args.quiet:
        lines += [
            "k   dim Z^k   dim B^k   b_k",
        ] + [
            f"{k:<3} {obj['closed_dims'][k]:<9} {obj['exact_dims'][k]:<9} {obj['betti'][k]}"
            for k in range(g.n + 1)
        ]
    _emit(args, obj, lines)
    return EXIT_OK


def _cmd_splittings(args, entries) -> int:
    g = parse_notation(args.notation)
    gs = generator_space(g)
    basis = gs.basis_forms()
    if args.generator is not None:
        chosen = [parse_form(args.generator, g.n)]
    else:
        chosen = [f for f in basis if is_simple(f)]
    obj: dict = {
        "notation": format_notation(g),
        "generator_space": [format_form(f) for f in basis],
        "splittings": [],
    }
    lines = [
        f"notation:        {obj['notation']}",
        f"generator space: dim {gs.dim}"
        + (f", basis {', '.join(obj['generator_space'])}" if basis else ""),
    ]
    skipped = [format_form(f) for f in basis if not is_simple(f)]
    if skipped and args.generator is None:
        lines.append(f"skipped non-simple basis vectors: {', '.join(skipped)}")
    for alpha in chosen:
        s = splitting_from_generator(g, alpha)
        table = hpq(g, s)
        e1 = e1_term(g, s)
        entry = hpq_to_json_obj(table, e1.basis_02)
        entry["generator"] = format_form(alpha)
        entry["coherent"] = True
        obj["splittings"].append(entry)
        if not args.quiet:
            lines.append(f"generator {entry['generator']}: coherent")
            lines.append("  h^{p,q} (rows p = 0..2, columns q = 0..4):")
            for row in entry["h"]:
                lines.append("    " + "  ".join(str(v) for v in row))
            lines.append(
                "  E_1^{0,2} basis: "
                + (", ".join(entry["e1_02_basis"]) if entry["e1_02_basis"] else "(empty)")
            )
    _emit(args, obj, lines)
    return EXIT_OK


def _verdict_lines(verdict, quiet: bool) -> list[str]:
    lines = [f"{verdict.notation}: {verdict.status}"
             + (f" ({verdict.reason})" if verdict.reason else "")]
    if not quiet:
        if verdict.witness_frame is not None:
            frame = ", ".join(format_form(f) for f in verdict.witness_frame)
            lines.append(f"  witness frame: {frame}")
        if verdict.witness_generator is not None:
            lines.append(f"  witness generator: {format_form(verdict.witness_generator)}")
    return lines


def _cmd_classify(args, entries) -> int:
    if args.all:
        verdicts = [classify(e.algebra()) for e in entries]
        obj = {"verdicts": [v.to_json_obj() for v in verdicts]}
        lines = []
        for v in verdicts:
            lines.extend(_verdict_lines(v, args.quiet))
        counts = catalog_mod.partition_counts(verdicts)
        obj["counts"] = counts
        lines.append(
            f"half-flat: {counts['half_flat']}, theorem-1 obstructions: "
            f"{counts['theorem1']}, sporadic (lemma-4): {counts['lemma4']}"
        )
        _emit(args, obj, lines)
        return EXIT_OK
    if args.notation is None:
        print("input error: classify needs a notation or --all", file=sys.stderr)
        return EXIT_INPUT_ERROR
    verdict = classify(parse_notation(args.notation))
    _emit(args, verdict.to_json_obj(), _verdict_lines(verdict, args.quiet))
    return EXIT_OK


def _cmd_verify_frame(args, entries) -> int:
    g = parse_notation(args.notation)
    frame = Frame.parse(args.frame)
    cert = is_half_flat(g, forms_from_frame(frame))
    obj = {
        "notation": format_notation(g),
        "frame": [format_form(f) for f in frame.eta],
        "half_flat": cert.holds,
        "domega_wedge_omega": format_form(cert.domega_wedge_omega),
        "dpsi_plus": format_form(cert.dpsi_plus),
    }
    lines = [f"half-flat: {_yn(cert.holds)}"]
    if not args.quiet:
        lines.append(f"  d(omega)^omega = {obj['domega_wedge_omega']}")
        lines.append(f"  d(psi+)        = {obj['dpsi_plus']}")
    _emit(args, obj, lines)
    return EXIT_OK if cert.holds else EXIT_VERIFICATION_FAILED


def _cmd_tables(args, entries) -> int:
    report1 = catalog_mod.verify_table1(entries)
    report2 = catalog_mod.verify_table2(entries)
    obj = {
        "table1": report1.to_json_obj(),
        "table2": report2.to_json_obj(),
        "all_pass": report1.all_pass and report2.all_pass,
    }
    lines = []
    for title, report in (("table 1", report1), ("table 2", report2)):
        lines.append(f"{title}:")
        for row in report.rows:
            status = "pass" if row.passed else "FAIL"
            if args.quiet:
                lines.append(f"  {status}  {row.notation}")
            else:
                checks = " ".join(
                    f"{name}={'ok' if ok else 'FAIL'}" for name, ok in row.checks.items()
                )
                lines.append(f"  {status}  {row.notation:<24} {checks}")
            for note in row.notes:
                lines.append(f"        note: {note}")
    lines.append("all pass" if obj["all_pass"] else "FAILURES present")
    _emit(args, obj, lines)
    return EXIT_OK if obj["all_pass"] else EXIT_VERIFICATION_FAILED


if __name__ == "__main__":
    sys.exit(main())
