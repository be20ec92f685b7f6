"""Exact Gaussian rationals: the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from numbers import Rational

from .errors import NoRationalRoot, ZeroDivisor

__all__ = ["GScalar", "ZERO", "ONE", "I", "as_scalar", "scalar_arith"]


class GScalar:
    """``re + im*i`` with both parts stored as reduced ``Fraction``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GScalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GScalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GScalar._raw(a * c, b)
        if not a and not c:
            return GScalar._raw(-(b * d), a)
        if not b:
            return GScalar._raw(a * c, a * d)
        if not d:
            return GScalar._raw(a * c, b * c)
        return GScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return GScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> GScalar:
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisor("division by zero in Q(i)")
        return GScalar._raw(self.re / norm, -self.im / norm)

    def conjugate(self) -> GScalar:
        return GScalar._raw(self.re, -self.im)

    # -- predicates ---------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    @property
    def is_real(self) -> bool:
        return not self.im

    def sqrt(self) -> GScalar:
        """A square root in Q(i): non-negative real part, then non-negative imaginary part.

        Raises NoRationalRoot when none exists.
        """
        u, v = self.re, self.im
        if not v:
            if u >= 0:
                r = _rational_sqrt(u)
                if r is not None:
                    return GScalar._raw(r, Fraction(0))
            else:
                r = _rational_sqrt(-u)
                if r is not None:
                    return GScalar._raw(Fraction(0), r)
            raise NoRationalRoot(f"{self} has no square root in Q(i)", self)
        modulus = _rational_sqrt(u * u + v * v)
        x = None if modulus is None else _rational_sqrt((u + modulus) / 2)
        if not x:
            raise NoRationalRoot(f"{self} has no square root in Q(i)", self)
        root = GScalar._raw(x, v / (2 * x))
        return root

    # -- text ---------------------------------------------------------------

    def __repr__(self):
        return f"GScalar({self})"

    def __str__(self):
        if not self.im:
            return _fmt(self.re)
        imag = _imag_str(abs(self.im))
        if not self.re:
            return imag if self.im > 0 else "-" + imag
        sign = "+" if self.im > 0 else "-"
        return f"{_fmt(self.re)} {sign} {imag}"


def _fmt(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _imag_str(q: Fraction) -> str:
    return "i" if q == 1 else f"{_fmt(q)}*i"


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _coerce(x):
    if type(x) is GScalar:
        return x
    if isinstance(x, (int, Rational)):
        return GScalar._raw(Fraction(x), Fraction(0))
    if isinstance(x, complex):
        return GScalar(Fraction(x.real), Fraction(x.imag))
    return None


def as_scalar(x) -> GScalar:
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")
    return s


ZERO = GScalar(0)
ONE = GScalar(1)
I = GScalar(0, 1)


def scalar_arith(a, b, op: str) -> GScalar:
    """Apply ``op`` in {"add", "mul", "div"} to two scalars."""
    a, b = as_scalar(a), as_scalar(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown scalar operation {op!r}")
