#!/usr/bin/env python3
"""End-to-end verification run: exact sweeps, kernel table, sample simulations.

Drives the CLI exactly as a user would and merges all JSON fragments into
one report.  Everything lands in --outdir (default ./verification_out).
"""

import argparse
import contextlib
import io
import sys
from pathlib import Path

from dwb.cli import main as dwb


def capture(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = dwb(argv)
    return code, buf.getvalue()


def run(outdir: Path, n_max: int) -> int:
    outdir.mkdir(parents=True, exist_ok=True)
    fragments = []

    frag = outdir / "verify.json"
    code, _ = capture(["verify", "--n-max", str(n_max), "--out", str(frag)])
    print(f"verify sweep (n <= {n_max}): exit {code}")
    fragments.append(frag)

    for n, family, b in ((2, "minus", "1/2"), (3, "plus", "-7/3"), (5, "minus", "irrational")):
        frag = outdir / f"darboux_n{n}_{family}.json"
        code, out = capture(["darboux", "--n", str(n), "--family", family,
                             "--b", b, "--format", "json"])
        frag.write_text(out)
        print(f"darboux n={n} {family} b={b}: exit {code}")
        fragments.append(frag)

    sim_csv = outdir / "trajectory_n2.csv"
    sim_svg = outdir / "phase_n2.svg"
    code, _ = capture(["simulate", "--n", "2", "--family", "minus", "--b", "1/2",
                       "--x0", "0.3", "--t-end", "5", "--h", "1e-3",
                       "--out", str(sim_csv), "--plot", str(sim_svg)])
    print(f"simulate on-curve n=2 (csv + svg): exit {code}")

    merged = outdir / "report.json"
    code, _ = capture(["report", *map(str, fragments), "--out", str(merged)])
    print(f"merged report -> {merged}: exit {code}")
    return code


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("verification_out"))
    parser.add_argument("--n-max", type=int, default=25)
    args = parser.parse_args()
    sys.exit(run(args.outdir, args.n_max))
