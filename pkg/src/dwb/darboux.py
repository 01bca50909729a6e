"""Darboux integrability: cofactor kernel, first integral, rationality.

The four standard invariant curves of a family are f1 = x, f2 = y,
f3 = 1 - x, and f4 = the explicit degree-n curve.  A product
H = prod f_i^(lambda_i) is a first integral exactly when the exponents kill
the cofactor sum, sum lambda_i K_i = 0.  The kernel of that linear map is
solved symbolically over Q(b) by fraction-free elimination, so the resulting
exponent vector (0, 1, n+b, -1) is certified for every b at once; at a
rational b = p/q the exponents clear to integers and H becomes a rational
function.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .curves import Family, InvariantCurve, LVSystem, build_invariant_curve, build_system
from .exact import BPoly, BRat
from .xypoly import Mono, XYPoly, lie_derivative


@dataclass(frozen=True)
class DarbouxQuadruple:
    """The four (curve, cofactor) pairs of a family, in the standard order."""

    n: int
    family: Family
    entries: tuple[tuple[XYPoly, XYPoly], ...]


@dataclass(frozen=True)
class ExponentVector:
    lambdas: tuple[BRat, BRat, BRat, BRat]


@dataclass(frozen=True)
class FirstIntegral:
    """Factor list of H = prod f^lambda; zero exponents are dropped."""

    factors: tuple[tuple[XYPoly, BRat], ...]


@dataclass(frozen=True)
class RationalIntegral:
    """Integer exponent vector obtained by clearing denominators at b = p/q."""

    exponents: tuple[int, int, int, int]
    b0: Fraction


@dataclass(frozen=True)
class NonRational:
    """Marker verdict: no rational first integral (irrational b)."""


IRRATIONAL = "irrational"


def standard_quadruple(n: int, family: Family) -> DarbouxQuadruple:
    """(x, 1-x), (y, n+b*x-+y), (1-x, -x), and the degree-n pair."""
    system = build_system(n, family)
    curve = build_invariant_curve(n, family)
    b = BPoly.var()
    entries = (
        (XYPoly.x(), XYPoly({(0, 0): 1, (1, 0): -1})),
        (XYPoly.y(), XYPoly({(0, 0): n, (1, 0): b, (0, 1): family.y_sign})),
        (XYPoly({(0, 0): 1, (1, 0): -1}), XYPoly({(1, 0): -1})),
        (curve.F, curve.K),
    )
    for f, k in entries:
        residual = lie_derivative(f, system.P, system.Q) - k * f
        if not residual.is_zero:
            raise AssertionError(f"pair ({f}, {k}) fails the invariance identity")
    return DarbouxQuadruple(n=n, family=family, entries=entries)


def _collect_monomials(cofactors: Sequence[XYPoly]) -> list[Mono]:
    monos = set()
    for k in cofactors:
        monos.update(k.terms)
    return sorted(monos, key=lambda m: (-(m[0] + m[1]), -m[0]))


def cofactor_kernel(cofactors: Sequence[XYPoly]) -> list[tuple[BRat, ...]]:
    """Basis of {lambda : sum lambda_i K_i = 0}, solved over Q(b).

    The cofactors are expanded over whatever monomials they contain (for the
    standard quadruple that is {1, x, y}), giving a small linear system with
    BPoly entries.  Forward elimination is fraction-free: rows are cross
    multiplied and only rescaled by rational content, so no polynomial
    division happens before back-substitution.  Pivots take the candidate of
    lowest degree in b, ties broken by row order, which keeps intermediate
    degrees minimal and the output deterministic.
    """
    ncols = len(cofactors)
    monos = _collect_monomials(cofactors)
    mat = [[k.coeff(*m) for k in cofactors] for m in monos]

    pivots: list[tuple[int, int]] = []
    used: set[int] = set()
    for col in range(ncols):
        candidates = [
            (mat[r][col].degree, r)
            for r in range(len(mat))
            if r not in used and not mat[r][col].is_zero
        ]
        if not candidates:
            continue
        _, prow = min(candidates)
        pivots.append((prow, col))
        used.add(prow)
        piv = mat[prow][col]
        for r in range(len(mat)):
            if r in used or mat[r][col].is_zero:
                continue
            f = mat[r][col]
            mat[r] = [piv * mat[r][c] - f * mat[prow][c] for c in range(ncols)]

    pivot_cols = {c for _, c in pivots}
    basis: list[tuple[BRat, ...]] = []
    for free in range(ncols):
        if free in pivot_cols:
            continue
        sol = [BRat.zero()] * ncols
        sol[free] = BRat.one()
        for prow, pcol in reversed(pivots):
            acc = BRat.zero()
            for c in range(ncols):
                if c != pcol and not mat[prow][c].is_zero and not sol[c].is_zero:
                    acc = acc + BRat(mat[prow][c]) * sol[c]
            sol[pcol] = -acc / BRat(mat[prow][pcol])
        basis.append(tuple(sol))
    return basis


def _normalize(vec: Sequence[BRat]) -> tuple[BRat, ...]:
    """Scale so the y-curve exponent is 1, else the first nonzero entry."""
    anchor = vec[1] if len(vec) > 1 and not vec[1].is_zero else None
    if anchor is None:
        anchor = next((v for v in vec if not v.is_zero), None)
    if anchor is None:
        return tuple(vec)
    return tuple(v / anchor for v in vec)


def solve_cofactor_kernel(quadruple: DarbouxQuadruple) -> list[ExponentVector]:
    """Kernel basis for the quadruple's cofactors, normalized and certified."""
    cofactors = [k for _, k in quadruple.entries]
    basis = []
    for raw in cofactor_kernel(cofactors):
        vec = _normalize(raw)
        if not is_in_kernel(cofactors, vec):
            raise AssertionError("kernel solver returned a non-kernel vector")
        basis.append(ExponentVector(lambdas=vec))
    return basis


def is_in_kernel(cofactors: Sequence[XYPoly], lambdas: Sequence[BRat]) -> bool:
    """Exact re-expansion of sum lambda_i K_i over Q(b), monomial by monomial."""
    if len(cofactors) != len(lambdas):
        raise ValueError("one exponent per cofactor required")
    for m in _collect_monomials(cofactors):
        acc = BRat.zero()
        for k, lam in zip(cofactors, lambdas):
            c = k.coeff(*m)
            if not c.is_zero and not lam.is_zero:
                acc = acc + lam * BRat(c)
        if not acc.is_zero:
            return False
    return True


def assemble_first_integral(
    quadruple: DarbouxQuadruple, v: ExponentVector
) -> FirstIntegral:
    """Build H = prod f^lambda after re-checking that v kills the cofactors."""
    cofactors = [k for _, k in quadruple.entries]
    if all(lam.is_zero for lam in v.lambdas):
        raise ValueError("exponent vector is identically zero")
    if not is_in_kernel(cofactors, v.lambdas):
        raise ValueError("exponent vector is not in the cofactor kernel")
    factors = tuple(
        (f, lam) for (f, _), lam in zip(quadruple.entries, v.lambdas) if not lam.is_zero
    )
    return FirstIntegral(factors=factors)


def classify_rationality(
    v: ExponentVector, b0: "Fraction | str"
) -> "RationalIntegral | NonRational":
    """Substitute a rational b and clear denominators, or report NonRational.

    For b0 = p/q in lowest terms the canonical kernel vector (0, 1, n+b, -1)
    specializes to (0, 1, n+p/q, -1); scaling by the lcm of denominators (= q)
    yields the integer exponents (0, q, q*n+p, -q) of a rational first
    integral.  The marker "irrational" short-circuits to the NonRational
    verdict: that branch is a classification, not a computation.
    """
    if isinstance(b0, str):
        if b0 == IRRATIONAL:
            return NonRational()
        raise ValueError(f"expected a rational value or {IRRATIONAL!r}, got {b0!r}")
    values = [lam(b0) for lam in v.lambdas]
    scale = lcm(*(val.denominator for val in values)) if values else 1
    exponents = tuple(int(val * scale) for val in values)
    return RationalIntegral(exponents=exponents, b0=Fraction(b0))


def render_exponent_vector(v: ExponentVector) -> str:
    return "(" + ", ".join(str(lam) for lam in v.lambdas) + ")"


def render_first_integral(h: FirstIntegral) -> str:
    return " * ".join(f"({f})^({lam})" for f, lam in h.factors)


def darboux_record(n: int, family: Family, b0: "Fraction | str | None" = None) -> dict:
    """Report entry: kernel basis, H, and the rationality verdict if b0 given."""
    start = time.perf_counter()
    quad = standard_quadruple(n, family)
    basis = solve_cofactor_kernel(quad)
    record: dict = {
        "n": n,
        "family": family.value,
        "kernel_dimension": len(basis),
        "kernel_basis_rendered": [render_exponent_vector(v) for v in basis],
    }
    ok = len(basis) == 1
    if basis:
        integral = assemble_first_integral(quad, basis[0])
        record["H_rendered"] = render_first_integral(integral)
    if b0 is not None and basis:
        verdict = classify_rationality(basis[0], b0)
        if isinstance(verdict, NonRational):
            record["classification"] = "NonRational"
        else:
            record["classification"] = "RationalIntegral"
            record["b0"] = str(verdict.b0)
            record["integer_exponents"] = list(verdict.exponents)
            specialized = [k.specialize(verdict.b0) for _, k in quad.entries]
            combo = XYPoly.zero()
            for k, e in zip(specialized, verdict.exponents):
                combo = combo + e * k
            ok = ok and combo.is_zero
    record["pass"] = ok
    record["wall_time"] = time.perf_counter() - start
    return record


__all__ = [
    "DarbouxQuadruple",
    "ExponentVector",
    "FirstIntegral",
    "RationalIntegral",
    "NonRational",
    "IRRATIONAL",
    "standard_quadruple",
    "cofactor_kernel",
    "solve_cofactor_kernel",
    "is_in_kernel",
    "assemble_first_integral",
    "classify_rationality",
    "render_exponent_vector",
    "render_first_integral",
    "darboux_record",
]
