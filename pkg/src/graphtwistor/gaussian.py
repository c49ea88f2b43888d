"""Exact Gaussian-rational numbers and the exact/floating value coercion rules.

A value on a graph is either a :class:`GaussianRational` (exact mode) or a
Python ``complex`` (floating mode).  Collections of values are normalized so
that every member shares one mode: if anything is floating, everything is.
"""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable, Mapping


class GaussianRational:
    """Complex number ``re + im*i`` with ``Fraction`` parts.

    Mixed arithmetic with ``int`` and ``Fraction`` stays exact; mixing with
    ``float`` or ``complex`` falls back to ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # construction -------------------------------------------------------
    @classmethod
    def parse(cls, value) -> "GaussianRational":
        """Coerce ints, fractions, integer-valued floats and ``"p/q"`` strings."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return cls(_exact_real(value[0]), _exact_real(value[1]))
        if isinstance(value, complex):
            return cls(_exact_real(value.real), _exact_real(value.imag))
        return cls(_exact_real(value), 0)

    # protocol -------------------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other):
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        if isinstance(other, complex):
            return complex(self) == other
        return self.re == other.re and self.im == other.im

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, complex):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re - other.re, self.im - other.im)
        if isinstance(other, complex):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            return other - self
        if isinstance(other, complex):
            return other - complex(self)
        return NotImplemented

    def __mul__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, complex):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            den = other.re * other.re + other.im * other.im
            if den == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            num = self * other.conjugate()
            return GaussianRational(num.re / den, num.im / den)
        if isinstance(other, complex):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        other = _lift(other)
        if isinstance(other, GaussianRational):
            return other / self
        if isinstance(other, complex):
            return other / complex(self)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return complex(self) ** n
        if n < 0:
            return GaussianRational(1) / (self ** (-n))
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def real(self) -> Fraction:
        return self.re

    @property
    def imag(self) -> Fraction:
        return self.im

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(self.abs2())


I = GaussianRational(0, 1)


def _exact_real(x) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not numeric values")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        if not x.is_integer():
            raise ValueError(f"{x!r} is not representable as an exact rational input")
        return Fraction(int(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {x!r}") from exc
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def _lift(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    if isinstance(x, (float, complex)):
        return complex(x)
    return NotImplemented


def is_exact(x) -> bool:
    """True for values that participate in exact arithmetic."""
    return isinstance(x, (GaussianRational, int, Fraction)) and not isinstance(x, bool)


def as_exact(x) -> GaussianRational:
    return GaussianRational.parse(x)


def as_complex(x) -> complex:
    return complex(x)


def normalize_values(values: Iterable, exact: bool | None = None) -> tuple[list, bool]:
    """Return ``(values, exact_flag)`` with a single shared mode.

    ``exact=None`` picks exact mode iff every input is exact.  ``exact=True``
    raises ``ValueError`` for inputs that cannot be read exactly.
    """
    values = list(values)
    if exact is None:
        exact = all(is_exact(v) for v in values)
    if exact:
        return [as_exact(v) for v in values], True
    return [as_complex(v) for v in values], False


def normalize_mapping(mapping: Mapping, exact: bool | None = None) -> tuple[dict, bool]:
    keys = list(mapping)
    vals, flag = normalize_values((mapping[k] for k in keys), exact)
    return dict(zip(keys, vals)), flag


def is_zero(x, tol: float = 0.0) -> bool:
    """Exact zero test for Gaussian rationals; ``|x| < tol`` for floats."""
    if isinstance(x, GaussianRational):
        return not x
    if tol <= 0.0:
        return x == 0
    return abs(x) < tol


def magnitude(x) -> float:
    return abs(complex(x))
