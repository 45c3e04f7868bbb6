"""Exact arithmetic helpers: rationals, the field Q(sqrt 3), and roots of unity.

Every phase exp(2*pi*i*m/lam) with lam in {2, 3, 4, 6} is a multiple of
30 degrees, so its cosine and sine live in Q(sqrt 3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[Fraction, int, str]

EXACT_LAMBDAS = (2, 3, 4, 6)


def to_fraction(value) -> Fraction:
    """Coerce ``value`` to a :class:`~fractions.Fraction`.

    Accepts ints, Fractions, ``"p/q"`` or decimal strings, and floats
    (converted exactly from their binary value).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def fmt_fraction(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when the denominator is 1)."""
    return str(Fraction(x))


@dataclass(frozen=True)
class QSqrt3:
    """The real number ``a + b*sqrt(3)`` with rational ``a`` and ``b``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))

    @staticmethod
    def lift(x) -> "QSqrt3":
        return x if isinstance(x, QSqrt3) else QSqrt3(to_fraction(x))

    def __add__(self, other):
        o = QSqrt3.lift(other)
        return QSqrt3(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-QSqrt3.lift(other))

    def __rsub__(self, other):
        return QSqrt3.lift(other) - self

    def __mul__(self, other):
        o = QSqrt3.lift(other)
        return QSqrt3(self.a * o.a + 3 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # only rational divisors are needed here
        d = to_fraction(other)
        return QSqrt3(self.a / d, self.b / d)

    def __eq__(self, other):
        try:
            o = QSqrt3.lift(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(3.0)

    def is_rational(self) -> bool:
        return self.b == 0

    def __repr__(self):
        if self.b == 0:
            return f"QSqrt3({self.a})"
        return f"QSqrt3({self.a} + {self.b}*sqrt3)"


@dataclass(frozen=True)
class ExactComplex:
    """Complex number with real and imaginary parts in Q(sqrt 3)."""

    re: QSqrt3 = QSqrt3()
    im: QSqrt3 = QSqrt3()

    def __post_init__(self):
        object.__setattr__(self, "re", QSqrt3.lift(self.re))
        object.__setattr__(self, "im", QSqrt3.lift(self.im))

    def __add__(self, other):
        return ExactComplex(self.re + other.re, self.im + other.im)

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        s = QSqrt3.lift(other)
        return ExactComplex(self.re * s, self.im * s)

    __rmul__ = __mul__

    def __truediv__(self, d):
        return ExactComplex(self.re / d, self.im / d)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


_HALF = Fraction(1, 2)
# (cos, sin) of k * 30 degrees, k = 0..11
_TWELFTHS = [
    (QSqrt3(1), QSqrt3(0)),
    (QSqrt3(0, _HALF), QSqrt3(_HALF)),
    (QSqrt3(_HALF), QSqrt3(0, _HALF)),
    (QSqrt3(0), QSqrt3(1)),
    (QSqrt3(-_HALF), QSqrt3(0, _HALF)),
    (QSqrt3(0, -_HALF), QSqrt3(_HALF)),
    (QSqrt3(-1), QSqrt3(0)),
    (QSqrt3(0, -_HALF), QSqrt3(-_HALF)),
    (QSqrt3(-_HALF), QSqrt3(0, -_HALF)),
    (QSqrt3(0), QSqrt3(-1)),
    (QSqrt3(_HALF), QSqrt3(0, -_HALF)),
    (QSqrt3(0, _HALF), QSqrt3(-_HALF)),
]


def exact_root_of_unity(m: int, lam: int) -> ExactComplex:
    """Return ``exp(2*pi*i*m/lam)`` exactly; ``lam`` must be in 2, 3, 4, 6."""
    if lam not in EXACT_LAMBDAS:
        raise ValueError(f"no exact phase table for lambda={lam}")
    c, s = _TWELFTHS[(m * (12 // lam)) % 12]
    return ExactComplex(c, s)


def float_root_of_unity(m: int, lam: int) -> complex:
    m %= lam
    theta = 2.0 * math.pi * m / lam
    return complex(math.cos(theta), math.sin(theta))
