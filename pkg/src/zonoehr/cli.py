"""Command-line front end.

Exit codes: 0 success, 2 input error, 3 verification mismatch or census
violation, 4 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, Sequence

from zonoehr import census, classify, ehrhart
from zonoehr.document import DocumentError, ZonotopeDocument, poly2list, qlist
from zonoehr.zonotope import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Zonotope,
    count_lattice_points,
    facet_directions,
    lattice_width,
    width1_decomposition,
    width_in_direction,
)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_BUDGET = 0, 2, 3, 4


class InputError(Exception):
    pass


class Mismatch(Exception):
    def __init__(self, message: str, report: dict):
        super().__init__(message)
        self.report = report


def load_document(arg: str) -> ZonotopeDocument:
    """Read a document from a path, ``-`` (stdin) or an inline JSON object."""
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith("{"):
        text = arg
    else:
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {arg}: {exc.strerror}") from None
    return ZonotopeDocument.from_json(text)


def _zonotope(args) -> tuple[ZonotopeDocument, Zonotope]:
    doc = load_document(args.document)
    z = doc.zonotope(merge_parallel=doc.merge_parallel or args.merge_parallel)
    return doc, z


def _zono_obj(z: Zonotope) -> dict:
    return ZonotopeDocument.from_zonotope(z).to_obj()


def _report(command: str, inputs: dict, outputs: dict, verdicts: Any = None) -> dict:
    rep: dict = {"command": command, "inputs": inputs, "outputs": outputs}
    if verdicts is not None:
        rep["verdicts"] = verdicts
    return rep


def cmd_ehrhart(args) -> dict:
    doc, z = _zonotope(args)
    if not z.has_integer_translate:
        raise InputError("Ehrhart polynomials need an integer translate")
    r = z.rank
    p = ehrhart.ehrhart_stanley(z)
    c = ehrhart.to_cbasis(p, r)
    h = ehrhart.hstar_from_poly(p, r)
    h_eul = ehrhart.hstar_via_eulerian(c) if r >= 1 else h
    out: dict = {
        "dimension": r,
        "ehrhart": poly2list(p),
        "ehrhart_pretty": str(p),
        "cvector": qlist(c.c),
        "cbasis_pretty": ehrhart.format_cbasis(c),
        "hstar": qlist(h.h),
        "hstar_eulerian": qlist(h_eul.h),
        "degree": ehrhart.degree_of(h),
        "interior_count": ehrhart.interior_count_reciprocity(p, r) if z.full_dimensional else None,
    }
    problems = []
    if h.h != h_eul.h:
        problems.append("h* routes disagree")
    if args.verify:
        oracle = ehrhart.ehrhart_oracle(z, verify=True, budget=args.budget)
        out["oracle"] = poly2list(oracle)
        if oracle != p:
            problems.append("Stanley polynomial and lattice-point oracle disagree")
        if z.full_dimensional:
            brute = count_lattice_points(z, 1, strict=True, budget=args.budget)
            dil = ehrhart.degree_via_dilates(z, args.budget)
            out["interior_count_enumerated"] = brute
            out["degree_via_dilates"] = dil
            if brute != out["interior_count"]:
                problems.append("interior count disagrees with reciprocity")
            if dil != out["degree"]:
                problems.append("degree via dilates disagrees with h*-degree")
        out["verified"] = not problems
    rep = _report("ehrhart", {"document": doc.to_obj(), "merge_parallel": args.merge_parallel}, out)
    if problems:
        raise Mismatch("; ".join(problems), rep)
    return rep


SCHEMES = {
    "scott": (2, classify.check_scott),
    "treutlein": (2, classify.check_treutlein),
    "zono2d": (2, classify.check_zono2d),
    "zono3d-deg2": (3, classify.check_zono3d_deg2),
    "hstar2d": (2, classify.check_hstar_zono2d),
    "hstar3d-deg2": (2, classify.check_hstar_zono3d_deg2),
}


def _parse_rationals(items: Sequence[str]) -> list[Fraction]:
    try:
        return [Fraction(s) for s in items]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse coefficients {list(items)} as rationals") from None


def _witness(scheme: str, coeffs: list[Fraction], verdict: classify.Verdict) -> Optional[dict]:
    if not verdict.accepted:
        return None
    if scheme in ("zono2d", "zono3d-deg2"):
        return {"zonotope": _zono_obj(verdict.witness)}
    if scheme in ("hstar2d", "hstar3d-deg2"):
        c = verdict.witness
        z = classify.realize_2d(*c) if scheme == "hstar2d" else classify.realize_3d_deg2(*c)
        return {"cvector": qlist(c), "zonotope": _zono_obj(z)}
    if scheme == "scott" and all(x.denominator == 1 for x in coeffs):
        c = classify.map_e_to_c_2d(*coeffs)
        if classify.check_zono2d(*c).accepted:
            return {"cvector": qlist(c), "zonotope": _zono_obj(classify.realize_2d(*c))}
    return None


def cmd_classify(args) -> dict:
    arity, checker = SCHEMES[args.scheme]
    coeffs = _parse_rationals(args.coefficients)
    if len(coeffs) != arity:
        raise InputError(f"scheme {args.scheme} takes {arity} coefficients, got {len(coeffs)}")
    if args.scheme == "treutlein":
        verdict = checker(*coeffs, enforce_dim2_bound=args.dim2_bound)
    else:
        verdict = checker(*coeffs)
    v = {
        "accepted": verdict.accepted,
        "case_label": verdict.case_label,
        "reason": verdict.reason,
        "witness": _witness(args.scheme, coeffs, verdict),
    }
    inputs = {"scheme": args.scheme, "coefficients": qlist(coeffs)}
    if args.scheme == "treutlein":
        inputs["dim2_bound"] = args.dim2_bound
    return _report("classify", inputs, {}, v)


def cmd_width(args) -> dict:
    doc, z = _zonotope(args)
    lw = lattice_width(z)
    out: dict = {"lattice_width": lw.width, "witness": list(lw.witness)}
    if z.full_dimensional:
        out["facet_widths"] = [
            {"normal": list(f.normal), "width": width_in_direction(z, f.normal)}
            for f in facet_directions(z)
        ]
        dec = width1_decomposition(z) if z.has_integer_translate and z.dim_ambient >= 2 else None
        out["decomposition"] = None if dec is None else {
            "direction": list(dec.direction),
            "factor": _zono_obj(dec.factor),
            "transform": [list(r) for r in dec.transform],
            "shift": list(dec.shift),
        }
    return _report("width", {"document": doc.to_obj(), "merge_parallel": args.merge_parallel}, out)


def cmd_census(args) -> dict:
    worst = census.worst_case_cells(args.dim, args.bound, args.max_gens)
    if worst > args.budget:
        raise BudgetExceeded(f"worst-case enumeration box {worst} exceeds budget {args.budget}")
    insts = list(census.enumerate_family(args.dim, args.bound, args.max_gens, args.min_gens))
    if args.random:
        if args.seed is None:
            raise InputError("--random needs --seed")
        gens = range(max(args.min_gens, 1), args.max_gens + 1)
        insts += census.random_family(args.random, args.dim, args.bound, gens, args.seed)
    records = census.run_census(insts, budget=args.budget, workers=args.workers)
    summary = census.summarize(records)
    inputs = {
        "dim": args.dim,
        "bound": args.bound,
        "min_gens": args.min_gens,
        "max_gens": args.max_gens,
        "random": args.random,
        "seed": args.seed,
    }
    if args.out:
        out = Path(args.out)
        with out.open("w") as fh:
            for r in records:
                fh.write(json.dumps(r) + "\n")
        Path(str(out) + ".summary.json").write_text(json.dumps({"inputs": inputs, **summary}, indent=2) + "\n")
    rep = _report("census", inputs, summary)
    if summary["violations"]:
        raise Mismatch(f"{summary['violations']} property violations", rep)
    return rep


def cmd_eulerian(args) -> dict:
    d = args.d
    js = [args.j] if args.j is not None else list(range(1, d + 1))
    try:
        table = {str(j): qlist(ehrhart.eulerian_Aj(d, j).coeffs) for j in js}
        pretty = {str(j): ehrhart.format_poly(ehrhart.eulerian_Aj(d, j), "t") for j in js}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return _report("eulerian", {"d": d, "j": args.j}, {"A": table, "pretty": pretty})


def cmd_realize(args) -> dict:
    c = _parse_rationals(args.c)
    try:
        if args.kind == "2d":
            z = classify.realize_2d(*c)
        else:
            z = classify.realize_3d_deg2(*c, exceptional=args.exceptional)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    p = ehrhart.ehrhart_stanley(z)
    return _report(
        "realize",
        {"kind": args.kind, "cvector": qlist(c), "exceptional": args.exceptional},
        {"zonotope": _zono_obj(z), "ehrhart": poly2list(p)},
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--no-timings", action="store_true", help="omit timings from the report")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max cells per enumeration box")

    doc = argparse.ArgumentParser(add_help=False)
    doc.add_argument("document", help="JSON file, '-' for stdin, or an inline JSON object")
    doc.add_argument("--merge-parallel", action="store_true", help="merge parallel generators")

    parser = argparse.ArgumentParser(prog="zonoehr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ehrhart", parents=[common, doc], help="Ehrhart data of a zonotope")
    p.add_argument("--verify", action="store_true", help="also run the lattice-point oracle")
    p.set_defaults(func=cmd_ehrhart)

    p = sub.add_parser("classify", parents=[common], help="run a classification checker")
    p.add_argument("scheme", choices=sorted(SCHEMES))
    p.add_argument("coefficients", nargs="+")
    p.add_argument("--dim2-bound", action="store_true", help="treutlein: also require h2 <= h1")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("width", parents=[common, doc], help="lattice width and width-1 splitting")
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("census", parents=[common], help="exhaustive verification census")
    p.add_argument("--dim", type=int, required=True, choices=(1, 2, 3))
    p.add_argument("--bound", type=int, required=True, help="max absolute generator entry")
    p.add_argument("--max-gens", type=int, required=True)
    p.add_argument("--min-gens", type=int, default=1)
    p.add_argument("--random", type=int, default=0, help="extra seeded random instances")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="JSON-lines output path; summary goes to PATH.summary.json")
    p.set_defaults(func=cmd_census, budget=10**10)

    p = sub.add_parser("eulerian", parents=[common], help="(A,j)-Eulerian polynomials")
    p.add_argument("d", type=int)
    p.add_argument("j", type=int, nargs="?")
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("realize", parents=[common], help="zonotope with a given c-vector")
    p.add_argument("kind", choices=("2d", "3d"))
    p.add_argument("c", nargs=2, metavar="c")
    p.add_argument("--exceptional", action="store_true", help="3d (0, 3): use the exceptional parallelepiped")
    p.set_defaults(func=cmd_realize)
    return parser


def _print_text(obj: Any, indent: int = 0) -> None:
    pad = "  " * indent
    for k, v in obj.items():
        if isinstance(v, dict):
            print(f"{pad}{k}:")
            _print_text(v, indent + 1)
        else:
            print(f"{pad}{k}: {json.dumps(v) if isinstance(v, list) else v}")


def emit(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
    else:
        _print_text(report)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        report = args.func(args)
    except (InputError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Mismatch as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        report, code = exc.report, EXIT_MISMATCH
    if not args.no_timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    emit(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
