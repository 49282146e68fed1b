"""Exact Gaussian-rational scalars.

The coefficient field everywhere in this library is Q(i): complex numbers
whose real and imaginary parts are rational.  A ``Scalar`` is an immutable
pair of ``fractions.Fraction`` values; ``Fraction`` already keeps lowest terms
and positive denominators, so equality and hashing are structural.

Scalars deliberately do not define ``<``: Q(i) is not an ordered field.  For
deterministic output and canonical choices use ``sort_key()``, which orders by
(real part, imaginary part).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

_RatLike = Union[int, Fraction]


def _as_fraction(x: _RatLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot build an exact scalar part from {type(x).__name__}")


class Scalar:
    """An element of Q(i), held exactly.

    ``re`` and ``im`` are Fractions.  All arithmetic is exact; there is no
    float path anywhere.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: _RatLike = 0, im: _RatLike = 0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def of(x: "Scalar | int | Fraction") -> "Scalar":
        if isinstance(x, Scalar):
            return x
        return Scalar(_as_fraction(x))

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    def is_integer(self) -> bool:
        return not self.im and self.re.denominator == 1

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re + other, self.im)
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re - other, self.im)
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar(other - self.re, -self.im)
        return NotImplemented

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                return Scalar(self.re * other, self.im * other)
            return NotImplemented
        # Real-by-real is by far the dominant case; skip the full product.
        if not self.im and not other.im:
            return Scalar(self.re * other.re)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re / other, self.im / other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scalar.of(other) * self.inverse()
        return NotImplemented

    def inverse(self) -> "Scalar":
        if not self.im:
            if not self.re:
                raise ZeroDivisionError("inverse of zero scalar")
            return Scalar(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return Scalar(self.re / n, -self.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    # -- structure --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def sort_key(self):
        """Total order on Q(i) used only for canonical output ordering."""
        return (self.re, self.im)

    def __repr__(self) -> str:
        return f"Scalar({self.re!r}, {self.im!r})"

    def __str__(self) -> str:
        from .textio import format_scalar

        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
IMAG = Scalar(0, 1)


def rational(p: int, q: int = 1) -> Scalar:
    """Convenience constructor for the rational scalar p/q."""
    return Scalar(Fraction(p, q))
