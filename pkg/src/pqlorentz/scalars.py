"""Scalar plumbing shared by the exact (rational) and fast (float) paths.

The exact path works with :class:`fractions.Fraction` for real values and
:class:`QComplex` for complex values whose parts are rationals.  The float
path uses plain ``float`` / ``complex``.  Everything downstream is written
against ordinary arithmetic operators, so the same code serves both paths.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Union

Real = Union[int, Fraction, float]


class QComplex:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, QComplex) or isinstance(im, QComplex):
            raise TypeError("QComplex parts must be rational")
        object.__setattr__(self, "re", _rational(re))
        object.__setattr__(self, "im", _rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("QComplex is immutable")

    def __repr__(self):
        return f"QComplex({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, QComplex):
            return other
        if isinstance(other, (int, Fraction)):
            return QComplex(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return QComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return QComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return QComplex(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QComplex(self.re * other, self.im * other)
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return QComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QComplex(self.re / other, self.im / other)
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        return QComplex((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result, base = QComplex(1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __pos__(self):
        return self

    # comparisons / conversions -----------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self):
        return QComplex(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return modulus(self)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im


def _rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


def qc(re, im=0):
    """Exact complex scalar; collapses to a ``Fraction`` when ``im == 0``."""
    re, im = _rational(re), _rational(im)
    return re if not im else QComplex(re, im)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, QComplex))


def to_exact(x):
    """Convert ``x`` losslessly to the exact representation.

    Floats convert to their exact binary value; strings are parsed as
    rationals (``"11/10"``, ``"1.1"``) or complex rationals (``"1/2+3/4j"``
    is not supported, use :func:`qc`).
    """
    if isinstance(x, (QComplex, Fraction)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, complex):
        return qc(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def to_float(x):
    """Float or complex value of ``x`` (exact values are rounded once)."""
    if isinstance(x, QComplex):
        return complex(x)
    if isinstance(x, complex):
        return x
    return float(x)


def modulus(x):
    """``|x|``: exact ``Fraction`` when the value is real rational, else float."""
    if isinstance(x, QComplex):
        if not x.im:
            return abs(x.re)
        if not x.re:
            return abs(x.im)
        return math.hypot(float(x.re), float(x.im))
    if isinstance(x, (int, Fraction)):
        return abs(Fraction(x))
    return abs(x)


def real_part(x):
    if isinstance(x, QComplex):
        return x.re
    if isinstance(x, complex):
        return x.real
    return x


def fmt17(x) -> str:
    """Decimal text with 17 significant digits (round-trips a double)."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (QComplex, complex)):
        x = abs(complex(x))
    return format(float(x), ".17g")


def json_scalar(x):
    """Encode a real scalar for JSON: rationals as ``"num/den"`` strings,
    floats as floats, infinity as ``None``."""
    if x is None:
        return None
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return f"{x}/1"
    x = float(x)
    if math.isinf(x):
        return None
    return x


def from_json_scalar(x):
    if x is None:
        return math.inf
    if isinstance(x, str):
        return Fraction(x)
    return float(x)
