"""Sparse bivariate polynomials in (x, y) over Q[b], with the Lie derivative.

Terms live in a map from exponent pairs (i, j) to BPoly coefficients; zero
coefficients are never stored, so equality is plain map equality.  Sparsity
is the common case here: the curves under study have y-degree 1 and only
O(n) terms at x-degree n.

The canonical text rendering (graded lexicographic, x before y, descending)
is bit-exact across platforms and is what golden-file tests pin.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .exact import BPoly, Scalar

Mono = tuple[int, int]

CoeffLike = Union[BPoly, int, Fraction]


def _as_bpoly(c: CoeffLike) -> BPoly:
    if isinstance(c, BPoly):
        return c
    return BPoly.const(c)


class XYPoly:
    """Polynomial in x and y whose coefficients are polynomials in b."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, CoeffLike] = ()):
        out: dict[Mono, BPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (i, j), c in items:
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in monomial {(i, j)}")
            c = _as_bpoly(c)
            if not c.is_zero:
                out[(i, j)] = c
        self.terms: dict[Mono, BPoly] = out

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls) -> "XYPoly":
        return cls()

    @classmethod
    def constant(cls, c: CoeffLike) -> "XYPoly":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: CoeffLike = 1) -> "XYPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "XYPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "XYPoly":
        return cls({(0, 1): 1})

    # -- structure --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def total_degree(self) -> int:
        """Max i+j over stored terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(i + j for (i, j) in self.terms)

    def degree_in(self, var: str) -> int:
        if not self.terms:
            return -1
        k = 0 if var == "x" else 1
        return max(m[k] for m in self.terms)

    def coeff(self, i: int, j: int) -> BPoly:
        return self.terms.get((i, j), BPoly.zero())

    def sorted_terms(self) -> list[tuple[Mono, BPoly]]:
        """Terms in graded lexicographic order, x before y, descending."""
        return sorted(
            self.terms.items(),
            key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][0]),
        )

    # -- ring operations --------------------------------------------------

    def _coerce(self, other) -> "XYPoly | None":
        if isinstance(other, XYPoly):
            return other
        if isinstance(other, (int, Fraction, BPoly)):
            return XYPoly.constant(other)
        return None

    def __add__(self, other) -> "XYPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in q.terms.items():
            out[m] = out.get(m, BPoly.zero()) + c
        return XYPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "XYPoly":
        return XYPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "XYPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "XYPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other) -> "XYPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out: dict[Mono, BPoly] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in q.terms.items():
                m = (i1 + i2, j1 + j2)
                prod = c1 * c2
                if m in out:
                    out[m] = out[m] + prod
                else:
                    out[m] = prod
        return XYPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.terms == q.terms

    # -- calculus -----------------------------------------------------------

    def diff(self, var: str) -> "XYPoly":
        """Formal partial derivative with respect to "x" or "y"."""
        if var not in ("x", "y"):
            raise ValueError(f"unknown variable {var!r}")
        k = 0 if var == "x" else 1
        out: dict[Mono, BPoly] = {}
        for (i, j), c in self.terms.items():
            e = (i, j)[k]
            if e == 0:
                continue
            m = (i - 1, j) if k == 0 else (i, j - 1)
            out[m] = c * e
        return XYPoly(out)

    def reflect_y(self) -> "XYPoly":
        """Substitute y -> -y."""
        return XYPoly(
            {(i, j): (-c if j % 2 else c) for (i, j), c in self.terms.items()}
        )

    # -- specialization and numeric evaluation ------------------------------

    def specialize(self, b0: Scalar) -> "XYPoly":
        """Evaluate every coefficient at b = b0; vanished terms are dropped."""
        return XYPoly({m: BPoly.const(c(b0)) for m, c in self.terms.items()})

    @property
    def is_b_free(self) -> bool:
        return all(c.degree <= 0 for c in self.terms.values())

    def eval_float(self, x0: float, y0: float) -> float:
        """Horner evaluation in x then y.  Requires b-free coefficients."""
        if not self.is_b_free:
            raise ValueError("cannot numerically evaluate a b-dependent polynomial")
        if not self.terms:
            return 0.0
        rows: dict[int, dict[int, float]] = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = float(c.coeff(0))
        acc = 0.0
        for j in range(max(rows), -1, -1):
            row = rows.get(j, {})
            inner = 0.0
            if row:
                for i in range(max(row), -1, -1):
                    inner = inner * x0 + row.get(i, 0.0)
            acc = acc * y0 + inner
        return acc

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (i, j), c in self.sorted_terms():
            mono = "*".join(
                p
                for p in (
                    "" if i == 0 else ("x" if i == 1 else f"x^{i}"),
                    "" if j == 0 else ("y" if j == 1 else f"y^{j}"),
                )
                if p
            )
            if not mono:
                cs = str(c)
                pieces.append(cs if c.degree == 0 and c.coeff(0) > 0 else f"({cs})")
            elif c == BPoly.one():
                pieces.append(mono)
            else:
                pieces.append(f"({c})*{mono}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"XYPoly({self})"


def lie_derivative(f: XYPoly, p: XYPoly, q: XYPoly) -> XYPoly:
    """Rate of change of f along the flow of (xdot, ydot) = (p, q).

    Returns p*df/dx + q*df/dy, exactly.  f is an invariant curve polynomial
    of the system precisely when this equals k*f for some cofactor k.
    """
    return p * f.diff("x") + q * f.diff("y")


__all__ = ["Mono", "XYPoly", "lie_derivative"]
