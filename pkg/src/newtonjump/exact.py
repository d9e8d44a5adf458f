"""Exact scalar arithmetic: rationals, rational vectors, and rationals
extended by a positive infinitesimal.

Everything downstream (LPs, membership tests, gauges) runs on these types;
no float enters an exact code path.  Plain rationals are stdlib
``fractions.Fraction``.  The infinitesimal extension comes in two layers:

* :class:`EpsRational` -- the public type: a polynomial ``c0 + c1*eps + ...``
  in an infinitesimal ``eps > 0``, truncated at a configured degree
  (default 2).  Exceeding the degree raises, it never silently truncates.
* ``_Poly`` / ``_Frac`` -- internal, uncapped polynomials and their quotient
  field Q(eps).  The simplex pivots over ``_Frac`` so intermediate degree
  growth (which always cancels back down) cannot overflow the public cap.

Order is lexicographic with the *lowest* degree dominating: eps is smaller
than every positive rational, so the sign of ``c_k * eps^k + ...`` (c_k the
lowest nonzero coefficient) is the sign of ``c_k``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, str, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class ExactError(Exception):
    """Base class for exact-arithmetic failures."""


class EpsDegreeOverflow(ExactError):
    """An EpsRational operation produced a nonzero coefficient beyond the cap."""


def rat(x: RationalLike) -> Fraction:
    """Coerce ints, ``"p/q"`` strings, and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):  # bool is an int; reject it as a coordinate
        raise TypeError("boolean is not a rational")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rat(x: Fraction) -> str:
    """Serialize as ``p/q``, omitting ``/q`` when the denominator is 1."""
    return str(x)


# ---------------------------------------------------------------------------
# Rational vectors


Vec = tuple[Fraction, ...]


def vec(*entries: RationalLike) -> Vec:
    return tuple(rat(e) for e in entries)


def as_vec(entries: Iterable[RationalLike]) -> Vec:
    return tuple(rat(e) for e in entries)


def vec_add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(a: Vec, m: Fraction) -> Vec:
    return tuple(m * x for x in a)


def dot(a: Sequence, b: Sequence):
    """Inner product; works for Fraction and field-valued entries alike."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    total = None
    for x, y in zip(a, b):
        term = x * y
        total = term if total is None else total + term
    if total is None:
        raise ValueError("empty vectors have no inner product")
    return total


def vec_le(a: Vec, b: Vec) -> bool:
    return all(x <= y for x, y in zip(a, b, strict=True))


def vec_lt(a: Vec, b: Vec) -> bool:
    """Componentwise strict order: every coordinate strictly smaller."""
    return all(x < y for x, y in zip(a, b, strict=True))


def is_nonnegative(a: Vec) -> bool:
    return all(x >= 0 for x in a)


def format_vec(a: Vec) -> str:
    return "(" + ", ".join(format_rat(x) for x in a) + ")"


# ---------------------------------------------------------------------------
# Internal uncapped polynomials in eps and their quotient field


def _strip(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


class _Poly:
    """Polynomial in eps over Q, lowest-degree coefficient first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction] = ()):  # already Fractions
        self.coeffs = _strip(tuple(coeffs))

    @staticmethod
    def const(x: Fraction) -> "_Poly":
        return _Poly((x,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def low_order(self) -> int:
        """Index of the lowest nonzero coefficient (valuation)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        raise ValueError("zero polynomial has no valuation")

    def sign(self) -> int:
        """Sign of the value at an infinitesimal positive eps."""
        for c in self.coeffs:
            if c != 0:
                return 1 if c > 0 else -1
        return 0

    def __add__(self, other: "_Poly") -> "_Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return _Poly(out)

    def __neg__(self) -> "_Poly":
        return _Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "_Poly") -> "_Poly":
        return self + (-other)

    def __mul__(self, other: "_Poly") -> "_Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return _Poly()
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return _Poly(out)

    def shift(self, k: int) -> "_Poly":
        """Divide by eps^k; requires divisibility."""
        if k == 0:
            return self
        if any(c != 0 for c in self.coeffs[:k]):
            raise ValueError("polynomial not divisible by eps^k")
        return _Poly(self.coeffs[k:])

    def scale(self, x: Fraction) -> "_Poly":
        return _Poly(tuple(x * c for c in self.coeffs))

    def eval_at_zero(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else ZERO

    def __eq__(self, other) -> bool:
        return isinstance(other, _Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"_Poly({self.coeffs!r})"


def _poly_divmod(a: _Poly, b: _Poly) -> tuple[_Poly, _Poly]:
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    dn = len(b.coeffs) - 1
    lead = b.coeffs[-1]
    q = [ZERO] * max(0, len(rem) - dn)
    for i in range(len(rem) - dn - 1, -1, -1):
        f = rem[i + dn] / lead
        if f == 0:
            continue
        q[i] = f
        for j, c in enumerate(b.coeffs):
            rem[i + j] -= f * c
    return _Poly(q), _Poly(rem)


def _poly_gcd(a: _Poly, b: _Poly) -> _Poly:
    while not b.is_zero():
        a, b = b, _poly_divmod(a, b)[1]
    if a.is_zero():
        return a
    # monic-by-lowest-coefficient keeps gcds canonical
    return a.scale(1 / a.coeffs[a.low_order()])


class _Frac:
    """Element of Q(eps): quotient of polynomials, denominator lex-positive.

    Canonical form: common eps powers and polynomial gcd divided out, and the
    denominator's lowest nonzero coefficient normalized to 1.  That makes the
    sign of the value the sign of the numerator, and the standard part of a
    bounded element num.eval_at_zero() / den.eval_at_zero().
    """

    __slots__ = ("num", "den")

    def __init__(self, num: _Poly, den: _Poly | None = None):
        if den is None:
            den = _Poly((ONE,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator in Q(eps)")
        if num.is_zero():
            self.num = num
            self.den = _Poly((ONE,))
            return
        k = min(num.low_order(), den.low_order())
        if k:
            num, den = num.shift(k), den.shift(k)
        g = _poly_gcd(num, den)
        if g.degree() > 0:
            num = _poly_divmod(num, g)[0]
            den = _poly_divmod(den, g)[0]
        c = den.coeffs[den.low_order()]
        if c != 1:
            num, den = num.scale(1 / c), den.scale(1 / c)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "_Frac":
        return _Frac(_Poly())

    @staticmethod
    def one() -> "_Frac":
        return _Frac(_Poly((ONE,)))

    @staticmethod
    def const(x: Fraction) -> "_Frac":
        return _Frac(_Poly.const(x))

    @staticmethod
    def eps() -> "_Frac":
        return _Frac(_Poly((ZERO, ONE)))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.den + other.num * self.den,
                     self.den * other.den)

    def __sub__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.den - other.num * self.den,
                     self.den * other.den)

    def __neg__(self) -> "_Frac":
        return _Frac(-self.num, self.den)

    def __mul__(self, other: "_Frac") -> "_Frac":
        return _Frac(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "_Frac") -> "_Frac":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero in Q(eps)")
        return _Frac(self.num * other.den, self.den * other.num)

    # -- order ---------------------------------------------------------------

    def sign(self) -> int:
        return self.num.sign()  # denominator is lex-positive by construction

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, _Frac) and (self - other).is_zero()

    def __lt__(self, other: "_Frac") -> bool:
        return (self - other).sign() < 0

    def __le__(self, other: "_Frac") -> bool:
        return (self - other).sign() <= 0

    def __gt__(self, other: "_Frac") -> bool:
        return (self - other).sign() > 0

    def __ge__(self, other: "_Frac") -> bool:
        return (self - other).sign() >= 0

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- conversions ---------------------------------------------------------

    def standard_part(self) -> Fraction:
        """Value at eps = 0; requires the element to be finite there."""
        d0 = self.den.eval_at_zero()
        if d0 == 0:
            raise ExactError("infinite standard part (eps in denominator)")
        return self.num.eval_at_zero() / d0

    def as_poly(self) -> _Poly:
        """The numerator when the denominator is 1; error otherwise."""
        if self.den.degree() == 0 and self.den.eval_at_zero() == 1:
            return self.num
        raise ExactError("element of Q(eps) is not polynomial")

    def __repr__(self) -> str:
        return f"_Frac({self.num.coeffs!r}, {self.den.coeffs!r})"


# ---------------------------------------------------------------------------
# Public capped infinitesimal rationals


DEFAULT_EPS_DEGREE = 2


class EpsRational:
    """``c0 + c1*eps + ... + cd*eps^d`` with 0 < eps smaller than every
    positive rational.

    Total order is lexicographic on coefficients (lowest degree first), which
    is the order induced by evaluating at a sufficiently small positive eps.
    Arithmetic is exact polynomial arithmetic; producing a nonzero coefficient
    above ``max_degree`` raises :class:`EpsDegreeOverflow`.
    """

    __slots__ = ("coeffs", "max_degree")

    def __init__(self, coeffs: Iterable[RationalLike] = (0,),
                 max_degree: int = DEFAULT_EPS_DEGREE):
        cs = _strip(tuple(rat(c) for c in coeffs))
        if len(cs) - 1 > max_degree:
            raise EpsDegreeOverflow(
                f"degree {len(cs) - 1} exceeds cap {max_degree}")
        self.coeffs = cs
        self.max_degree = max_degree

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_rational(x: RationalLike,
                      max_degree: int = DEFAULT_EPS_DEGREE) -> "EpsRational":
        return EpsRational((rat(x),), max_degree)

    @staticmethod
    def eps(max_degree: int = DEFAULT_EPS_DEGREE) -> "EpsRational":
        return EpsRational((0, 1), max_degree)

    # -- helpers -------------------------------------------------------------

    def _coerce(self, other) -> "EpsRational | None":
        if isinstance(other, EpsRational):
            return other
        if isinstance(other, (int, Fraction)):
            return EpsRational((rat(other),), self.max_degree)
        return None

    def _cap(self, other: "EpsRational") -> int:
        return max(self.max_degree, other.max_degree)

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if k < len(self.coeffs) else ZERO

    def standard_part(self) -> Fraction:
        return self.coefficient(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def sign(self) -> int:
        for c in self.coeffs:
            if c != 0:
                return 1 if c > 0 else -1
        return 0

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return EpsRational(out, self._cap(o))

    __radd__ = __add__

    def __neg__(self):
        return EpsRational(tuple(-c for c in self.coeffs), self.max_degree)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        cap = self._cap(o)
        if not self.coeffs or not o.coeffs:
            return EpsRational((), cap)
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x == 0:
                continue
            for j, y in enumerate(o.coeffs):
                out[i + j] += x * y
        return EpsRational(out, cap)  # constructor enforces the cap

    __rmul__ = __mul__

    # -- order ---------------------------------------------------------------

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __eq__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other) -> bool:
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.standard_part())
        return hash(self.coeffs)

    # -- conversions ---------------------------------------------------------

    def _as_frac(self) -> _Frac:
        return _Frac(_Poly(self.coeffs))

    @staticmethod
    def _from_frac(x: _Frac, max_degree: int = DEFAULT_EPS_DEGREE) -> "EpsRational":
        return EpsRational(x.as_poly().coeffs, max_degree)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_rat(c))
            elif k == 1:
                parts.append(f"{format_rat(c)}*eps")
            else:
                parts.append(f"{format_rat(c)}*eps^{k}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"EpsRational({self.coeffs!r})"


EpsVec = tuple[EpsRational, ...]


def eps_vec(entries: Iterable[RationalLike | EpsRational],
            max_degree: int = DEFAULT_EPS_DEGREE) -> EpsVec:
    out = []
    for e in entries:
        if isinstance(e, EpsRational):
            out.append(e)
        else:
            out.append(EpsRational.from_rational(e, max_degree))
    return tuple(out)


def perturb_up(u: Vec, max_degree: int = DEFAULT_EPS_DEGREE) -> EpsVec:
    """u + eps*(1, ..., 1): the closure test point for u."""
    return tuple(EpsRational((x, ONE), max_degree) for x in u)
