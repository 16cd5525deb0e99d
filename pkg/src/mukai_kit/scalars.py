"""Exact scalar types: rationals, Gaussian rationals and real quadratic extensions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

RationalLike = Union[int, Fraction, str]


def to_rational(x) -> Fraction:
    """Coerce ``x`` to a Fraction; floats are refused so exactness is never lost."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        text = x.strip()
        if any(c in text for c in ".eE") and "/" not in text:
            raise TypeError(f"exact rationals required, got {x!r}")
        return Fraction(text)
    raise TypeError(f"exact rationals required, got {type(x).__name__} {x!r}")


def fmt_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when integral)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class GaussRational:
    """An element ``re + im*i`` of Q(i)."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", to_rational(self.re))
        object.__setattr__(self, "im", to_rational(self.im))

    @classmethod
    def coerce(cls, x) -> GaussRational:
        if isinstance(x, GaussRational):
            return x
        return cls(to_rational(x), Fraction(0))

    def __add__(self, other):
        try:
            other = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRational.coerce(other))

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussRational:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(i)")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        return f"{fmt_rational(self.re)}{'+' if self.im >= 0 else '-'}{fmt_rational(abs(self.im))}i"


GaussRational.I = GaussRational(0, 1)


@dataclass(frozen=True)
class QuadExtScalar:
    """``a + b*sqrt(d)`` in Q(sqrt(d)) for a fixed positive rational ``d``.

    ``d`` need not be square-free; two elements only combine when their
    ``d`` agree exactly.
    """

    a: Fraction
    b: Fraction
    d: Fraction

    def __post_init__(self):
        for name in ("a", "b", "d"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))
        if self.d <= 0:
            raise ValueError("QuadExtScalar needs d > 0")

    def _lift(self, other) -> QuadExtScalar:
        if isinstance(other, QuadExtScalar):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt({self.d})) with Q(sqrt({other.d}))")
            return other
        return QuadExtScalar(to_rational(other), 0, self.d)

    @classmethod
    def sqrt(cls, d) -> QuadExtScalar:
        return cls(0, 1, d)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExtScalar(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExtScalar(
            self.a * o.a + self.b * o.b * self.d,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExtScalar:
        return QuadExtScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> QuadExtScalar:
        n = self.norm()
        if n == 0:
            # only possible when d is a rational square
            raise ZeroDivisionError(f"{self} is not invertible")
        c = self.conjugate()
        return QuadExtScalar(c.a / n, c.b / n, self.d)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def is_rational(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        if isinstance(other, QuadExtScalar):
            if other.d != self.d:
                return False
            return self.a == other.a and self.b == other.b
        try:
            return self.b == 0 and self.a == to_rational(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __str__(self):
        return f"{fmt_rational(self.a)}+{fmt_rational(self.b)}*sqrt({fmt_rational(self.d)})"
