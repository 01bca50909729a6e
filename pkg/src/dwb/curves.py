"""The two planar Lotka-Volterra families and their degree-n invariant curves.

Both families share xdot = x(1 - x); they differ in the sign of the y^2 term
of ydot = y(n + b*x -+ y).  For every n >= 1 the family admits an explicit
invariant algebraic curve {F = 0} of degree n,

    F = s * y (n-1)! sum_{v=0}^{n-1} (-1)^(n+v) (n+b-v+1)_v x^v / v!
        + (b+1)_n x^n,

with s = +1 for the minus-y family and s = -1 for the plus-y family, and
cofactor K = n - n*x -+ y.  Everything here is exact in Q[b][x, y]: a zero
residual from verify_invariance certifies the invariance identity for all b
at once.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction

from .exact import BPoly, factorial, pochhammer
from .xypoly import XYPoly, lie_derivative


class Family(enum.Enum):
    """Sign of the y^2 term in ydot (and of the y term in the cofactor)."""

    MINUS_Y = "minus"
    PLUS_Y = "plus"

    @property
    def y_sign(self) -> int:
        return -1 if self is Family.MINUS_Y else 1

    @classmethod
    def parse(cls, text: str) -> "Family":
        for fam in cls:
            if fam.value == text:
                return fam
        raise ValueError(f"unknown family {text!r}; expected 'minus' or 'plus'")


@dataclass(frozen=True)
class LVSystem:
    n: int
    family: Family
    P: XYPoly
    Q: XYPoly


@dataclass(frozen=True)
class InvariantCurve:
    n: int
    family: Family
    F: XYPoly
    K: XYPoly


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


def build_system(n: int, family: Family) -> LVSystem:
    """System with P = x - x^2 and Q = n*y + b*x*y -+ y^2."""
    _require_positive(n)
    b = BPoly.var()
    p = XYPoly({(1, 0): 1, (2, 0): -1})
    q = XYPoly({(0, 1): n, (1, 1): b, (0, 2): family.y_sign})
    return LVSystem(n=n, family=family, P=p, Q=q)


def _curve_y_part(n: int) -> XYPoly:
    """(n-1)! sum_{v<n} (-1)^(n+v) (n+b-v+1)_v x^v / v!, times y."""
    b = BPoly.var()
    s = factorial(n - 1)
    terms: dict[tuple[int, int], BPoly] = {}
    for v in range(n):
        rising = pochhammer(b + (n - v + 1), v)
        scale = Fraction((-1) ** (n + v) * s, factorial(v))
        terms[(v, 1)] = rising * scale
    return XYPoly(terms)


def leading_coefficient(n: int) -> BPoly:
    """Coefficient (b+1)_n of x^n in the degree-n curve."""
    return pochhammer(BPoly.var() + 1, n)


def build_invariant_curve(n: int, family: Family) -> InvariantCurve:
    """The explicit degree-n invariant curve and its cofactor."""
    _require_positive(n)
    y_part = _curve_y_part(n)
    if family is Family.PLUS_Y:
        y_part = -y_part
    f = y_part + XYPoly.monomial(n, 0, leading_coefficient(n))
    k = XYPoly({(0, 0): n, (1, 0): -n, (0, 1): family.y_sign})
    return InvariantCurve(n=n, family=family, F=f, K=k)


def verify_invariance(curve: InvariantCurve, system: LVSystem) -> XYPoly:
    """Residual P*F_x + Q*F_y - K*F; the zero polynomial iff {F=0} is invariant.

    Computed in Q[b][x, y], so a zero residual certifies invariance for every
    numeric value of b simultaneously.
    """
    if curve.n != system.n or curve.family != system.family:
        raise ValueError(
            f"curve ({curve.n}, {curve.family.value}) does not match "
            f"system ({system.n}, {system.family.value})"
        )
    return lie_derivative(curve.F, system.P, system.Q) - curve.K * curve.F


def check_lemma2(n: int) -> XYPoly:
    """Residual of the key derivative identity behind the invariance proof.

    For the minus-y curve F:
        (1-x) F_x - (n - n*x - y)(b+1)_n x^(n-1) + (n+b)(F - (b+1)_n x^n)
    must vanish identically.
    """
    _require_positive(n)
    curve = build_invariant_curve(n, Family.MINUS_Y)
    b = BPoly.var()
    lead = leading_coefficient(n)
    one_minus_x = XYPoly({(0, 0): 1, (1, 0): -1})
    k_poly = XYPoly({(0, 0): n, (1, 0): -n, (0, 1): -1})
    xn1 = XYPoly.monomial(n - 1, 0, lead)
    tail = curve.F - XYPoly.monomial(n, 0, lead)
    return one_minus_x * curve.F.diff("x") - k_poly * xn1 + (b + n) * tail


def check_euler_y(n: int, family: Family) -> XYPoly:
    """Residual of y*F_y = F - (b+1)_n x^n, valid for both families."""
    _require_positive(n)
    curve = build_invariant_curve(n, family)
    xn = XYPoly.monomial(n, 0, leading_coefficient(n))
    return XYPoly.y() * curve.F.diff("y") - curve.F + xn


def invariance_record(n: int, family: Family, perturb: str | None = None) -> dict:
    """Report entry for one (n, family) cell of the verification sweep.

    perturb="cofactor" replaces K by K+1 and perturb="coefficient" adds 1 to
    the x^n coefficient of F; both are fault injections that must flip the
    verdict to false (they keep the checker falsifiable).
    """
    start = time.perf_counter()
    system = build_system(n, family)
    curve = build_invariant_curve(n, family)
    if perturb == "cofactor":
        curve = InvariantCurve(n=n, family=family, F=curve.F, K=curve.K + 1)
    elif perturb == "coefficient":
        curve = InvariantCurve(
            n=n, family=family, F=curve.F + XYPoly.monomial(n, 0, 1), K=curve.K
        )
    elif perturb is not None:
        raise ValueError(f"unknown perturbation {perturb!r}")
    residual = verify_invariance(curve, system)
    return {
        "n": n,
        "family": family.value,
        "residual_is_zero": residual.is_zero,
        "F_rendered": str(curve.F),
        "K_rendered": str(curve.K),
        "wall_time": time.perf_counter() - start,
    }


__all__ = [
    "Family",
    "LVSystem",
    "InvariantCurve",
    "build_system",
    "build_invariant_curve",
    "leading_coefficient",
    "verify_invariance",
    "check_lemma2",
    "check_euler_y",
    "invariance_record",
]
