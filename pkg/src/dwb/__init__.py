"""Exact workbench for invariant algebraic curves of two planar LV families.

The symbolic layer (exact, xypoly, curves, darboux) proves invariance and
integrability identities by polynomial arithmetic in Q[b][x, y]; the numeric
layer (dynamics) cross-checks them along integrated trajectories.  The cli
module exposes the whole pipeline as subcommands.
"""

from .exact import BPoly, BRat, Rat, bpoly_gcd, pochhammer, pochhammer_shift_residual
from .xypoly import XYPoly, lie_derivative
from .curves import (
    Family,
    InvariantCurve,
    LVSystem,
    build_invariant_curve,
    build_system,
    check_euler_y,
    check_lemma2,
    leading_coefficient,
    verify_invariance,
)
from .darboux import (
    DarbouxQuadruple,
    ExponentVector,
    FirstIntegral,
    NonRational,
    RationalIntegral,
    assemble_first_integral,
    classify_rationality,
    cofactor_kernel,
    solve_cofactor_kernel,
    standard_quadruple,
)
from .dynamics import (
    ConservationReport,
    DegeneratePointError,
    NumericSystem,
    Trajectory,
    audit,
    degenerate_b_values,
    integrate,
    make_numeric_system,
    solve_on_curve,
)

__version__ = "0.1.0"
