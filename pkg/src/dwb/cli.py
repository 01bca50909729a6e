"""Command-line front end: curve, verify, darboux, simulate, report.

All output is deterministic for a fixed configuration: term ordering is the
canonical polynomial rendering, JSON is sorted-key with a versioned schema,
and timing fields are only emitted on request.  The parameter b is parsed
exactly (integers, p/q, or decimal strings become Fractions; the literal
"irrational" is a classification marker), because the rational/non-rational
dichotomy would be corrupted by lossy float parsing.

Exit status: 0 when every executed check passed or was explicitly flagged
degenerate, 1 when a check failed, 2 on usage or configuration errors.
The environment variable DWB_THREADS caps worker processes for sweeps.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .curves import Family, build_invariant_curve, check_euler_y, check_lemma2, invariance_record
from .darboux import (
    IRRATIONAL,
    assemble_first_integral,
    darboux_record,
    solve_cofactor_kernel,
    standard_quadruple,
)
from .dynamics import (
    DegeneratePointError,
    audit,
    conservation_series,
    curve_degree_drops,
    integrate,
    make_numeric_system,
    solve_on_curve,
    write_trajectory_csv,
)
from .exact import pochhammer_shift_residual
from .phaseplot import write_phase_plot

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _family(text: str) -> Family:
    try:
        return Family.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _families(text: str) -> tuple[Family, ...]:
    fams = tuple(_family(part) for part in text.split(","))
    if not fams:
        raise argparse.ArgumentTypeError("need at least one family")
    return fams


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _rational_or_marker(text: str):
    if text == IRRATIONAL:
        return IRRATIONAL
    return _rational(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dwb",
        description="Invariant-curve and Darboux-integrability workbench "
        "for the planar Lotka-Volterra families x'=x(1-x), y'=y(n+bx-+y).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("curve", help="build the degree-n curve and verify invariance")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--family", type=_family, required=True)
    add_format(p)

    p = sub.add_parser("verify", help="exact identity sweep over n and both families")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--families", type=_families, default=(Family.MINUS_Y, Family.PLUS_Y))
    p.add_argument("--seed", type=int, default=0, help="seed for the random-c identity sweep")
    p.add_argument("--lemma1-samples", type=_positive_int, default=200)
    p.add_argument("--timings", action="store_true", help="include wall times in the report")
    p.add_argument("--out", type=Path, help="also write the JSON report here")
    fault = p.add_mutually_exclusive_group()
    fault.add_argument(
        "--perturb-cofactor",
        action="store_true",
        help="fault injection: verify with K+1; every row must come out false",
    )
    fault.add_argument(
        "--perturb-coefficient",
        action="store_true",
        help="fault injection: verify with the x^n coefficient of F bumped by 1",
    )
    add_format(p)

    p = sub.add_parser("darboux", help="cofactor kernel, first integral, rationality")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--family", type=_family, required=True)
    p.add_argument(
        "--b",
        type=_rational_or_marker,
        help="rational value p/q to classify, or the literal 'irrational'",
    )
    add_format(p)

    p = sub.add_parser("simulate", help="integrate a specialized system and audit conservation")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--family", type=_family, required=True)
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--x0", type=float, required=True)
    p.add_argument("--y0", type=float, help="omit to start on the invariant curve")
    p.add_argument("--t-end", type=_positive_float, required=True)
    p.add_argument("--h", type=_positive_float, required=True)
    p.add_argument("--tol", type=_positive_float, default=1e-6)
    p.add_argument("--out", type=Path, default=Path("trajectory.csv"))
    p.add_argument("--plot", type=Path, help="optional SVG phase plot path")
    add_format(p)

    p = sub.add_parser("report", help="merge JSON fragments from other commands")
    p.add_argument("inputs", nargs="*", type=Path)
    p.add_argument("--out", type=Path, help="write the merged report here")
    add_format(p)

    return parser


# ---------------------------------------------------------------------------
# Shared output helpers
# ---------------------------------------------------------------------------


def _emit_json(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


# ---------------------------------------------------------------------------
# curve
# ---------------------------------------------------------------------------


def _cmd_curve(args) -> int:
    record = invariance_record(args.n, args.family)
    ok = record["residual_is_zero"]
    if args.format == "json":
        _emit_json(
            {
                "schema": SCHEMA_VERSION,
                "command": "curve",
                "n": args.n,
                "family": args.family.value,
                "F": record["F_rendered"],
                "K": record["K_rendered"],
                "residual_is_zero": ok,
                "pass": ok,
            }
        )
    else:
        print(f"F = {record['F_rendered']}")
        print(f"K = {record['K_rendered']}")
        print(f"residual_is_zero: {'true' if ok else 'false'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _invariance_cell(cell: tuple[int, str, str | None]) -> dict:
    n, family_value, perturb = cell
    return invariance_record(n, Family.parse(family_value), perturb=perturb)


def _thread_cap() -> int:
    raw = os.environ.get("DWB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _invariance_rows(n_max: int, families, perturb: str | None) -> list[dict]:
    cells = [(n, fam.value, perturb) for n in range(1, n_max + 1) for fam in families]
    cap = _thread_cap()
    if cap > 1:
        with ProcessPoolExecutor(max_workers=cap) as pool:
            return list(pool.map(_invariance_cell, cells))
    return [_invariance_cell(cell) for cell in cells]


def _strip_times(rows: list[dict], keep: bool) -> list[dict]:
    if keep:
        return rows
    return [{k: v for k, v in row.items() if k != "wall_time"} for row in rows]


def _cmd_verify(args) -> int:
    perturb = None
    if args.perturb_cofactor:
        perturb = "cofactor"
    elif args.perturb_coefficient:
        perturb = "coefficient"

    invariance = _invariance_rows(args.n_max, args.families, perturb)
    doc: dict = {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "n_max": args.n_max,
        "families": [f.value for f in args.families],
        "invariance": _strip_times(invariance, args.timings),
    }
    if perturb is not None:
        # Fault-injection harness: every row must come out false, the run a failure.
        doc["perturbation"] = perturb
        doc["harness_all_rows_false"] = all(
            not row["residual_is_zero"] for row in invariance
        )
        ok = all(row["residual_is_zero"] for row in invariance)
        doc["pass"] = ok
    else:
        lemma2 = [
            {"n": n, "residual_is_zero": check_lemma2(n).is_zero}
            for n in range(1, args.n_max + 1)
        ]
        euler = [
            {"n": n, "family": fam.value, "residual_is_zero": check_euler_y(n, fam).is_zero}
            for n in range(1, args.n_max + 1)
            for fam in args.families
        ]
        rng = random.Random(args.seed)
        lemma1_ok = True
        for _ in range(args.lemma1_samples):
            c = Fraction(rng.randint(-100, 100), rng.randint(1, 100))
            nu = rng.randint(1, 50)
            if pochhammer_shift_residual(c, nu) != 0:
                lemma1_ok = False
                break
        doc["lemma2"] = lemma2
        doc["euler_y"] = euler
        doc["lemma1"] = {
            "samples": args.lemma1_samples,
            "nu_range": [1, 50],
            "seed": args.seed,
            "ok": lemma1_ok,
        }
        ok = (
            all(row["residual_is_zero"] for row in invariance)
            and all(row["residual_is_zero"] for row in lemma2)
            and all(row["residual_is_zero"] for row in euler)
            and lemma1_ok
        )
        doc["pass"] = ok

    if args.out is not None:
        _write_json(args.out, doc)
    if args.format == "json":
        _emit_json(doc)
    else:
        for row in doc["invariance"]:
            verdict = "ok" if row["residual_is_zero"] else "FAIL"
            print(f"invariance n={row['n']} family={row['family']} {verdict}")
        for row in doc.get("lemma2", []):
            print(f"lemma2 n={row['n']} {'ok' if row['residual_is_zero'] else 'FAIL'}")
        for row in doc.get("euler_y", []):
            verdict = "ok" if row["residual_is_zero"] else "FAIL"
            print(f"euler_y n={row['n']} family={row['family']} {verdict}")
        if "lemma1" in doc:
            print(f"lemma1 samples={doc['lemma1']['samples']} "
                  f"{'ok' if doc['lemma1']['ok'] else 'FAIL'}")
        print(f"pass: {'true' if ok else 'false'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# darboux
# ---------------------------------------------------------------------------


def _cmd_darboux(args) -> int:
    record = darboux_record(args.n, args.family, args.b)
    ok = record["pass"]
    if args.format == "json":
        doc = {k: v for k, v in record.items() if k != "wall_time"}
        doc["schema"] = SCHEMA_VERSION
        doc["command"] = "darboux"
        _emit_json(doc)
    else:
        for rendered in record["kernel_basis_rendered"]:
            print(f"kernel: {rendered}")
        if "H_rendered" in record:
            print(f"H = {record['H_rendered']}")
        if "classification" in record:
            if record["classification"] == "NonRational":
                print("classification: NonRational")
            else:
                exps = ", ".join(str(e) for e in record["integer_exponents"])
                print(f"classification: RationalIntegral at b = {record['b0']}")
                print(f"integer exponents: ({exps})")
        print(f"pass: {'true' if ok else 'false'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    warnings: list[str] = []
    if curve_degree_drops(args.n, args.b):
        warnings.append(
            f"(b+1)_{args.n} vanishes at b={args.b}: the specialized curve "
            f"drops below degree {args.n}"
        )
    for message in warnings:
        _warn(message)

    curve = build_invariant_curve(args.n, args.family)
    system = make_numeric_system(args.n, args.family, args.b)
    quad = standard_quadruple(args.n, args.family)
    integral = assemble_first_integral(quad, solve_cofactor_kernel(quad)[0])

    on_curve_start = args.y0 is None
    if on_curve_start:
        try:
            y0 = solve_on_curve(curve, args.b, args.x0)
        except DegeneratePointError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        y0 = args.y0

    traj = integrate(system, args.x0, y0, args.t_end, args.h)
    resids, loghs = conservation_series(curve, integral, traj, system)
    report = audit(curve, integral, traj, system)
    write_trajectory_csv(args.out, traj, resids, loghs)
    if args.plot is not None:
        write_phase_plot(args.plot, traj, curve, args.b)

    audited = {"F_residual": report.max_abs_F_residual} if on_curve_start else {
        "logH_drift": report.max_logH_drift
    }
    ok = report.degenerate or all(v < args.tol for v in audited.values())

    doc = {
        "schema": SCHEMA_VERSION,
        "command": "simulate",
        "n": args.n,
        "family": args.family.value,
        "b0": str(args.b),
        "x0": args.x0,
        "y0": y0,
        "t_end": args.t_end,
        "h": args.h,
        "steps": len(traj.states) - 1,
        "blew_up": traj.blew_up,
        "max_abs_F_residual": report.max_abs_F_residual,
        "max_logH_drift": report.max_logH_drift,
        "degenerate": report.degenerate,
        "degenerate_reason": report.reason,
        "audited": sorted(audited),
        "tolerance": args.tol,
        "csv": str(args.out),
        "svg": str(args.plot) if args.plot is not None else None,
        "warnings": warnings,
        "pass": ok,
    }
    if args.format == "json":
        _emit_json(doc)
    else:
        print(f"wrote {doc['steps'] + 1} samples to {doc['csv']}")
        if doc["svg"]:
            print(f"wrote phase plot to {doc['svg']}")
        print(f"max |F| residual (normalized): {report.max_abs_F_residual:.17g}")
        print(f"max logH drift: {report.max_logH_drift:.17g}")
        if report.degenerate:
            print(f"degenerate: true ({report.reason})")
        else:
            print("degenerate: false")
        print(f"pass: {'true' if ok else 'false'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


def _cmd_report(args) -> int:
    fragments = []
    for path in args.inputs:
        try:
            fragment = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot parse fragment {path}: {exc}", file=sys.stderr)
            return 2
        if not isinstance(fragment, dict) or "schema" not in fragment or "pass" not in fragment:
            print(
                f"error: fragment {path} lacks the schema/pass fields of this tool's reports",
                file=sys.stderr,
            )
            return 2
        fragments.append(fragment)
    if not fragments:
        _warn("no input fragments; report is vacuously passing")
    ok = all(f["pass"] for f in fragments)
    doc = {
        "schema": SCHEMA_VERSION,
        "command": "report",
        "fragments": fragments,
        "pass": ok,
    }
    if args.out is not None:
        _write_json(args.out, doc)
    if args.format == "json":
        _emit_json(doc)
    else:
        for path, fragment in zip(args.inputs, fragments):
            verdict = "ok" if fragment["pass"] else "FAIL"
            print(f"{path}: {fragment.get('command', '?')} {verdict}")
        print(f"pass: {'true' if ok else 'false'}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------


_HANDLERS = {
    "curve": _cmd_curve,
    "verify": _cmd_verify,
    "darboux": _cmd_darboux,
    "simulate": _cmd_simulate,
    "report": _cmd_report,
}


def main(argv: "list[str] | None" = None) -> int:
    args = build_parser().parse_args(argv)
    return _HANDLERS[args.command](args)


if __name__ == "__main__":
    raise SystemExit(main())
