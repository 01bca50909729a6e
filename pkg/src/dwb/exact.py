"""Exact arithmetic kernel: rationals, polynomials in b, and their quotient field.

Three layers, all exact (no floating point anywhere):

  Rat   -- arbitrary-precision rational scalar.  This is the stdlib
           ``fractions.Fraction``, which already keeps gcd(num, den) = 1,
           den > 0, and zero = 0/1.
  BPoly -- univariate polynomial in the parameter b with Rat coefficients,
           stored as a coefficient tuple (index i multiplies b**i, trailing
           coefficient nonzero).  The ring Q[b].
  BRat  -- reduced quotient of two BPoly with monic denominator.  The
           field Q(b); used for exponent vectors solved out of cofactor
           linear systems.

Identities proved here in Q[b] hold for every numeric b in any field of
characteristic 0, which is why the rest of the workbench carries b as an
indeterminate instead of looping over sample values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Iterable, Sequence, Union

# The exact scalar field.  Canonical form is maintained by the stdlib type.
Rat = Fraction

Scalar = Union[int, Fraction]


def _as_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


class BPoly:
    """Polynomial in b over the rationals, canonical dense coefficient form."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "BPoly":
        return cls()

    @classmethod
    def one(cls) -> "BPoly":
        return cls((1,))

    @classmethod
    def const(cls, c: Scalar) -> "BPoly":
        return cls((c,))

    @classmethod
    def var(cls) -> "BPoly":
        """The polynomial b itself."""
        return cls((0, 1))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, power: int) -> Fraction:
        if 0 <= power < len(self.coeffs):
            return self.coeffs[power]
        return Fraction(0)

    # -- ring operations ----------------------------------------------

    def _coerce(self, other) -> "BPoly | None":
        if isinstance(other, BPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return BPoly((other,))
        return None

    def __add__(self, other) -> "BPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        a, b = self.coeffs, q.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return BPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BPoly":
        return BPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "BPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other) -> "BPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other) -> "BPoly":
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        if self.is_zero or q.is_zero:
            return BPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(q.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(q.coeffs):
                out[i + j] += a * b
        return BPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BPoly":
        if n < 0:
            raise ValueError("negative power of a BPoly")
        acc = BPoly.one()
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self.coeffs == q.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- division -----------------------------------------------------

    def __divmod__(self, other: "BPoly") -> tuple["BPoly", "BPoly"]:
        """Exact long division in Q[b]."""
        if not isinstance(other, BPoly):
            other = BPoly((other,))
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d, lead = other.degree, other.lead
        while len(rem) - 1 >= d and rem:
            if rem[-1] == 0:
                rem.pop()
                continue
            shift = len(rem) - 1 - d
            q = rem[-1] / lead
            quo[shift] = q
            for k, c in enumerate(other.coeffs):
                rem[shift + k] -= q * c
            rem.pop()
        return BPoly(quo), BPoly(rem)

    def exact_div(self, other: "BPoly") -> "BPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError(f"{self} is not divisible by {other}")
        return q

    def monic(self) -> "BPoly":
        if self.is_zero:
            return self
        return self * (1 / self.lead)

    # -- evaluation ---------------------------------------------------

    def __call__(self, b0: Scalar) -> Fraction:
        """Exact Horner evaluation at a rational point."""
        b0 = _as_fraction(b0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * b0 + c
        return acc

    # -- rendering ------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        if self.degree == 0:
            return str(self.coeffs[0])
        if self.lead < 0:
            return f"-({-self})"
        parts: list[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coeffs[power]
            if c == 0:
                continue
            mono = "" if power == 0 else ("b" if power == 1 else f"b^{power}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+" if c > 0 else "-") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"BPoly({self})"


def bpoly_content(p: BPoly) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    if p.is_zero:
        return Fraction(0)
    num = 0
    den = 1
    for c in p.coeffs:
        if c == 0:
            continue
        num = gcd(num, c.numerator)
        den = lcm(den, c.denominator)
    return Fraction(num, den)


def _primitive_ints(p: BPoly) -> list[int]:
    """Integer coefficient list of p / content(p), with positive lead."""
    if p.is_zero:
        return []
    cont = bpoly_content(p)
    ints = [int(c / cont) for c in p.coeffs]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _strip(ints: list[int]) -> list[int]:
    while ints and ints[-1] == 0:
        ints.pop()
    return ints


def _prim(ints: list[int]) -> list[int]:
    ints = _strip(ints)
    if not ints:
        return ints
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Remainder of a scaled-coefficient division of a by b over Z.

    The result differs from the true remainder in Q[b] by a nonzero rational
    factor only, which the primitive-part step removes.
    """
    r = list(a)
    d, lead = len(b) - 1, b[-1]
    while _strip(r) and len(r) - 1 >= d:
        top = r[-1]
        shift = len(r) - 1 - d
        r = [lead * c for c in r]
        for k, c in enumerate(b):
            r[shift + k] -= top * c
        r.pop()
    return r


def bpoly_gcd(p: BPoly, q: BPoly) -> BPoly:
    """Monic gcd in Q[b] via the primitive-part/content Euclidean scheme.

    Working on primitive integer images keeps intermediate coefficients small;
    naive Fraction elimination blows up on the kernel solves downstream.
    """
    a, b = _primitive_ints(p), _primitive_ints(q)
    if not a:
        a = b
        b = []
    while b:
        a, b = b, _prim(_pseudo_rem(a, b))
    if not a:
        return BPoly()
    return BPoly(a).monic()


class BRat:
    """Reduced rational function num/den in Q(b) with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, BPoly):
            num = BPoly((num,)) if isinstance(num, (int, Fraction)) else num
        if den is None:
            den = BPoly.one()
        elif not isinstance(den, BPoly):
            den = BPoly((den,)) if isinstance(den, (int, Fraction)) else den
        if not isinstance(num, BPoly) or not isinstance(den, BPoly):
            raise TypeError("BRat needs BPoly (or exact scalar) parts")
        if den.is_zero:
            raise ZeroDivisionError("BRat with zero denominator")
        if num.is_zero:
            num, den = BPoly.zero(), BPoly.one()
        else:
            g = bpoly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            scale = 1 / den.lead
            num = num * scale
            den = den * scale
        self.num: BPoly = num
        self.den: BPoly = den

    @classmethod
    def zero(cls) -> "BRat":
        return cls(BPoly.zero())

    @classmethod
    def one(cls) -> "BRat":
        return cls(BPoly.one())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def _coerce(self, other) -> "BRat | None":
        if isinstance(other, BRat):
            return other
        if isinstance(other, (int, Fraction, BPoly)):
            return BRat(other)
        return None

    def __add__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return BRat(self.num * v.den + v.num * self.den, self.den * v.den)

    __radd__ = __add__

    def __neg__(self) -> "BRat":
        return BRat(-self.num, self.den)

    def __sub__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self + (-v)

    def __rsub__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return v + (-self)

    def __mul__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return BRat(self.num * v.num, self.den * v.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v.is_zero:
            raise ZeroDivisionError("division by zero BRat")
        return BRat(self.num * v.den, self.den * v.num)

    def __rtruediv__(self, other) -> "BRat":
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return v / self

    def __eq__(self, other) -> bool:
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return self.num == v.num and self.den == v.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, b0: Scalar) -> Fraction:
        d = self.den(b0)
        if d == 0:
            raise ZeroDivisionError(f"denominator {self.den} vanishes at b={b0}")
        return self.num(b0) / d

    def __str__(self) -> str:
        if self.den == BPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"BRat({self})"


def pochhammer(base: "BPoly | Scalar", count: int) -> "BPoly | Fraction":
    """Rising factorial base*(base+1)*...*(base+count-1); count = 0 gives 1.

    Accepts a BPoly base (result in Q[b]) or an exact scalar (result a Rat).
    """
    if count < 0:
        raise ValueError("pochhammer count must be nonnegative")
    if isinstance(base, BPoly):
        acc = BPoly.one()
        for k in range(count):
            acc = acc * (base + k)
        return acc
    c = _as_fraction(base)
    acc = Fraction(1)
    for k in range(count):
        acc *= c + k
    return acc


def pochhammer_shift_residual(c: Scalar, nu: int) -> Fraction:
    """Residual of the rising-factorial recombination used by the curve identities:

        (c+1)_nu / (nu-1)!  +  (c)_{nu+1} / nu!  -  (c+nu) (c+1)_nu / nu!

    computed exactly; identically zero for every rational c and nu >= 1.
    """
    if nu < 1:
        raise ValueError("the identity needs nu >= 1")
    c = _as_fraction(c)
    lhs = pochhammer(c + 1, nu) / factorial(nu - 1) + pochhammer(c, nu + 1) / factorial(nu)
    rhs = (c + nu) * pochhammer(c + 1, nu) / factorial(nu)
    return lhs - rhs


__all__ = [
    "Rat",
    "BPoly",
    "BRat",
    "bpoly_gcd",
    "bpoly_content",
    "pochhammer",
    "pochhammer_shift_residual",
    "factorial",
]
