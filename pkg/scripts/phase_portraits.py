#!/usr/bin/env python3
"""Emit SVG phase portraits: several trajectories against the invariant curve."""

import argparse
from fractions import Fraction
from pathlib import Path

from dwb.curves import Family, build_invariant_curve
from dwb.dynamics import integrate, make_numeric_system, solve_on_curve
from dwb.phaseplot import write_phase_plot


def portraits(outdir: Path, n: int, b0: Fraction) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    for family in Family:
        curve = build_invariant_curve(n, family)
        sys = make_numeric_system(n, family, b0)
        y_on = solve_on_curve(curve, b0, 0.2)
        for tag, y0 in (("on_curve", y_on), ("off_curve", -family.y_sign * 1.0)):
            traj = integrate(sys, 0.2, y0, 6.0, 1e-3)
            path = outdir / f"n{n}_b{b0.numerator}_{b0.denominator}_{family.value}_{tag}.svg"
            write_phase_plot(path, traj, curve, b0)
            print(f"wrote {path} ({len(traj.states)} samples"
                  f"{', truncated' if traj.blew_up else ''})")


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("portraits"))
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--b", type=Fraction, default=Fraction(1, 2))
    args = parser.parse_args()
    portraits(args.outdir, args.n, args.b)
