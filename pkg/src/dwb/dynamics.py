"""Numeric cross-validation of the exact identities along integrated flows.

The symbolic layer proves invariance in Q[b][x, y]; this layer specializes a
system at a rational b, integrates trajectories with fixed-step classical
RK4, and audits two conserved quantities:

  * the curve residual F(x(t), y(t)), normalized by the largest specialized
    coefficient so tolerances mean the same thing at every n (raw
    coefficients grow like n!);
  * log|H| = sum lambda_i log|f_i(x(t), y(t))|, the first integral in log
    form, which sidesteps non-integer powers of negative bases.

Both are checked against drift tolerances plus a step-halving consistency
test (RK4 is 4th order, so halving h should shrink drift about 16x).  All
failure modes are guarded, never fatal: log singularities and finite-time
blowup set a degenerate flag with a reason instead of crashing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .curves import Family, InvariantCurve, build_system
from .darboux import FirstIntegral
from .exact import BPoly, Scalar, pochhammer
from .xypoly import XYPoly

# Guard defaults; overridable per call.
SINGULARITY_GUARD = 1e-12
BLOWUP_GUARD = 1e9


class DegeneratePointError(ValueError):
    """Raised when an on-curve start is requested where the curve has no y root."""


@dataclass(frozen=True)
class NumericSystem:
    n: int
    family: Family
    b0: Fraction
    P: XYPoly
    Q: XYPoly


@dataclass
class Trajectory:
    times: list[float]
    states: list[tuple[float, float]]
    step: float
    method: str = "rk4"
    blew_up: bool = False


@dataclass(frozen=True)
class ConservationReport:
    max_abs_F_residual: float
    max_logH_drift: float
    degenerate: bool
    reason: str | None = None


def _exact(b0: "Scalar | float") -> Fraction:
    return b0 if isinstance(b0, Fraction) else Fraction(b0)


def make_numeric_system(n: int, family: Family, b0: "Scalar | float") -> NumericSystem:
    """Specialize the symbolic system at a numeric parameter value."""
    b0 = _exact(b0)
    system = build_system(n, family)
    return NumericSystem(
        n=n,
        family=family,
        b0=b0,
        P=system.P.specialize(b0),
        Q=system.Q.specialize(b0),
    )


def degenerate_b_values(n: int) -> list[Fraction]:
    """Rational b where the x^n coefficient (b+1)_n vanishes: {-1, ..., -n}."""
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    return [Fraction(-k) for k in range(1, n + 1)]


def curve_degree_drops(n: int, b0: "Scalar | float") -> bool:
    return pochhammer(BPoly.var() + 1, n)(_exact(b0)) == 0


# ---------------------------------------------------------------------------
# On-curve starts
# ---------------------------------------------------------------------------


def _split_curve(curve: InvariantCurve, b0: Fraction) -> tuple[XYPoly, XYPoly]:
    """Specialized F as (y-coefficient S(x), pure-x part c(x)); F = S*y + c."""
    f = curve.F.specialize(b0)
    s_terms = {(i, 0): c for (i, j), c in f.terms.items() if j == 1}
    c_terms = {(i, 0): c for (i, j), c in f.terms.items() if j == 0}
    return XYPoly(s_terms), XYPoly(c_terms)


def solve_on_curve(curve: InvariantCurve, b0: "Scalar | float", x0: float) -> float:
    """The y with F(x0, y) = 0: the curve has y-degree 1, so y0 = -c(x0)/S(x0)."""
    s_poly, c_poly = _split_curve(curve, _exact(b0))
    s_val = s_poly.eval_float(x0, 0.0)
    if abs(s_val) <= SINGULARITY_GUARD:
        raise DegeneratePointError(
            f"y-coefficient S(x) of the degree-{curve.n} curve vanishes at "
            f"x0={x0!r} (S(x0)={s_val!r}); no on-curve start there"
        )
    return -c_poly.eval_float(x0, 0.0) / s_val


# ---------------------------------------------------------------------------
# Integration
# ---------------------------------------------------------------------------


def _compile_terms(p: XYPoly) -> list[tuple[int, int, float]]:
    if not p.is_b_free:
        raise ValueError("numeric integration needs b-free coefficients")
    return [
        (i, j, float(c.coeff(0)))
        for (i, j), c in sorted(p.terms.items())
    ]


def _make_rhs(sys: NumericSystem) -> Callable[[float, float], tuple[float, float]]:
    """Vector field closure; fast path for the family shape, generic fallback."""
    n, b0, s = sys.n, sys.b0, sys.family.y_sign
    fast_p = XYPoly({(1, 0): 1, (2, 0): -1})
    fast_q = XYPoly({(0, 1): n, (1, 1): b0, (0, 2): s})
    if sys.P == fast_p and sys.Q == fast_q:
        nf, bf, sf = float(n), float(b0), float(s)

        def rhs(x: float, y: float) -> tuple[float, float]:
            return x - x * x, y * (nf + bf * x + sf * y)

        return rhs

    p_terms, q_terms = _compile_terms(sys.P), _compile_terms(sys.Q)

    def rhs_generic(x: float, y: float) -> tuple[float, float]:
        dx = 0.0
        for i, j, c in p_terms:
            dx += c * x**i * y**j
        dy = 0.0
        for i, j, c in q_terms:
            dy += c * x**i * y**j
        return dx, dy

    return rhs_generic


def integrate(
    sys: NumericSystem,
    x0: float,
    y0: float,
    t_end: float,
    h: float,
    blowup_guard: float = BLOWUP_GUARD,
) -> Trajectory:
    """Classical 4th-order Runge-Kutta with fixed step, recording every step.

    Truncates (with the blew_up flag, never an exception) as soon as a step
    would leave the finite box |x|, |y| <= blowup_guard; the LV families have
    genuine finite-time blowup off the invariant region.
    """
    if h <= 0:
        raise ValueError(f"step size must be positive, got {h}")
    if t_end <= 0:
        raise ValueError(f"t_end must be positive, got {t_end}")
    if not (math.isfinite(x0) and math.isfinite(y0)):
        raise ValueError("initial state must be finite")
    steps = round(t_end / h)
    if steps < 1:
        raise ValueError(f"t_end={t_end} is smaller than half a step h={h}")

    rhs = _make_rhs(sys)
    half = 0.5 * h
    sixth = h / 6.0
    x, y = float(x0), float(y0)
    times = [0.0]
    states = [(x, y)]
    blew_up = False
    for k in range(steps):
        try:
            dx1, dy1 = rhs(x, y)
            dx2, dy2 = rhs(x + half * dx1, y + half * dy1)
            dx3, dy3 = rhs(x + half * dx2, y + half * dy2)
            dx4, dy4 = rhs(x + h * dx3, y + h * dy3)
            xn = x + sixth * (dx1 + 2.0 * (dx2 + dx3) + dx4)
            yn = y + sixth * (dy1 + 2.0 * (dy2 + dy3) + dy4)
        except OverflowError:
            blew_up = True
            break
        if not (math.isfinite(xn) and math.isfinite(yn)) or (
            abs(xn) > blowup_guard or abs(yn) > blowup_guard
        ):
            blew_up = True
            break
        x, y = xn, yn
        times.append((k + 1) * h)
        states.append((x, y))
    return Trajectory(times=times, states=states, step=h, blew_up=blew_up)


# ---------------------------------------------------------------------------
# Conservation audit
# ---------------------------------------------------------------------------


def _eval_terms(terms: list[tuple[int, int, float]], x: float, y: float) -> float:
    acc = 0.0
    for i, j, c in terms:
        acc += c * x**i * y**j
    return acc


def _compile_exact(p: XYPoly) -> list[tuple[int, int, Fraction]]:
    if not p.is_b_free:
        raise ValueError("numeric evaluation needs b-free coefficients")
    return [(i, j, c.coeff(0)) for (i, j), c in sorted(p.terms.items())]


def _log_abs(v: Fraction) -> float:
    # math.log takes arbitrary-size ints, so this only rounds once.
    return math.log(abs(v.numerator)) - math.log(v.denominator)


def curve_residual_series(
    curve: InvariantCurve, traj: Trajectory, sys: NumericSystem
) -> list[float]:
    """Per-sample F(x, y), normalized by the largest specialized coefficient.

    Plain float evaluation: the residual is compared against the coefficient
    norm, so ~1e-16-relative cancellation noise is harmless at the 1e-6 scale.
    """
    f_terms = _compile_terms(curve.F.specialize(sys.b0))
    norm = max((abs(c) for _, _, c in f_terms), default=1.0) or 1.0
    return [_eval_terms(f_terms, x, y) / norm for x, y in traj.states]


def log_integral_series(
    integral: FirstIntegral,
    traj: Trajectory,
    sys: NumericSystem,
    guard: float = SINGULARITY_GUARD,
) -> list[float | None]:
    """Per-sample log|H| = sum lambda_i log|f_i(x, y)| along the trajectory.

    The factors are evaluated in exact rational arithmetic (the states are
    exact binary rationals) and rounded only inside the final log: summing
    monomials in doubles would lose every significant digit of the curve
    factor near the attracting equilibrium, which sits on the curve.

    Entries are None at samples where any factor falls below the singularity
    guard (the logarithm is about to blow up there).
    """
    factor_data = [
        (_compile_exact(f.specialize(sys.b0)), float(lam(sys.b0)))
        for f, lam in integral.factors
    ]
    guard_exact = Fraction(guard)
    x_max = max((i for terms, _ in factor_data for i, _, _ in terms), default=0)
    y_max = max((j for terms, _ in factor_data for _, j, _ in terms), default=0)
    loghs: list[float | None] = []
    for x, y in traj.states:
        fx, fy = Fraction(x), Fraction(y)
        xpow = [Fraction(1)]
        for _ in range(x_max):
            xpow.append(xpow[-1] * fx)
        ypow = [Fraction(1)]
        for _ in range(y_max):
            ypow.append(ypow[-1] * fy)
        logh = 0.0
        for terms, exponent in factor_data:
            v = Fraction(0)
            for i, j, c in terms:
                v += c * xpow[i] * ypow[j]
            if abs(v) < guard_exact:
                logh = None
                break
            logh += exponent * _log_abs(v)
        loghs.append(logh)
    return loghs


def conservation_series(
    curve: InvariantCurve,
    integral: FirstIntegral,
    traj: Trajectory,
    sys: NumericSystem,
    guard: float = SINGULARITY_GUARD,
) -> tuple[list[float], list[float | None]]:
    """Residual series and logH series in one call (what the CSV rows hold)."""
    return (
        curve_residual_series(curve, traj, sys),
        log_integral_series(integral, traj, sys, guard),
    )


def audit(
    curve: InvariantCurve,
    integral: FirstIntegral,
    traj: Trajectory,
    sys: NumericSystem,
    guard: float = SINGULARITY_GUARD,
) -> ConservationReport:
    """Max |F| residual and logH drift along the trajectory, with guards.

    The degenerate flag is set when any guard tripped: a log singularity
    (an integral factor within `guard` of 0 at some sample), a vanishing
    curve leading coefficient at this b (degree drop), or blowup truncation.
    Drift is measured against the first non-singular sample.
    """
    resids, loghs = conservation_series(curve, integral, traj, sys, guard)
    reasons: list[str] = []
    if traj.blew_up:
        reasons.append("trajectory truncated by the blowup guard")
    if curve_degree_drops(curve.n, sys.b0):
        reasons.append(
            f"(b+1)_{curve.n} = 0 at b={sys.b0}: specialized curve drops degree"
        )
    if any(v is None for v in loghs):
        reasons.append("an integral factor fell below the singularity guard")

    max_resid = max((abs(r) for r in resids), default=0.0)
    valid = [v for v in loghs if v is not None]
    drift = max((abs(v - valid[0]) for v in valid), default=0.0) if valid else 0.0
    return ConservationReport(
        max_abs_F_residual=max_resid,
        max_logH_drift=drift,
        degenerate=bool(reasons),
        reason="; ".join(reasons) if reasons else None,
    )


def write_trajectory_csv(
    path,
    traj: Trajectory,
    resids: Sequence[float],
    loghs: Sequence[float | None],
) -> None:
    """CSV with header t,x,y,F_resid,logH; 17 significant digits per entry."""
    lines = ["t,x,y,F_resid,logH"]
    for t, (x, y), r, lh in zip(traj.times, traj.states, resids, loghs):
        logh_text = "nan" if lh is None else f"{lh:.17g}"
        lines.append(f"{t:.17g},{x:.17g},{y:.17g},{r:.17g},{logh_text}")
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


__all__ = [
    "SINGULARITY_GUARD",
    "BLOWUP_GUARD",
    "DegeneratePointError",
    "NumericSystem",
    "Trajectory",
    "ConservationReport",
    "make_numeric_system",
    "degenerate_b_values",
    "curve_degree_drops",
    "solve_on_curve",
    "integrate",
    "curve_residual_series",
    "log_integral_series",
    "conservation_series",
    "audit",
    "write_trajectory_csv",
]
