"""Gaussian-rational scalars for the exact computation paths.

Every exact quantity in this package is either a `fractions.Fraction` or a
`CRat` (a complex number with Fraction real and imaginary parts).  Mixing a
`CRat` with a float or complex deliberately degrades to ordinary `complex`
arithmetic, which is how the float paths are fed.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def _is_rat(x) -> bool:
    return isinstance(x, Rational)


class CRat:
    """Complex number with exact rational real/imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        if not (_is_rat(re) and _is_rat(im)):
            raise TypeError(f"CRat parts must be rational, got {re!r}, {im!r}")
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- predicates ---------------------------------------------------------

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    # -- conversions --------------------------------------------------------

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def real_fraction(self) -> Fraction:
        """The value as a Fraction; requires a vanishing imaginary part."""
        if self.im != 0:
            raise ValueError(f"{self!r} is not real")
        return self.re

    # -- algebra ------------------------------------------------------------

    def conjugate(self) -> "CRat":
        return CRat(self.re, -self.im)

    def abs2(self) -> Fraction:
        """|self|^2, exactly."""
        return self.re * self.re + self.im * self.im

    def __neg__(self) -> "CRat":
        return CRat(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, CRat):
            return CRat(self.re + other.re, self.im + other.im)
        if _is_rat(other):
            return CRat(self.re + other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CRat):
            return CRat(self.re - other.re, self.im - other.im)
        if _is_rat(other):
            return CRat(self.re - other, self.im)
        if isinstance(other, (float, complex)):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, CRat):
            return CRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)
        if _is_rat(other):
            return CRat(self.re * other, self.im * other)
        if isinstance(other, (float, complex)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_rat(other):
            return CRat(self.re / other, self.im / other)
        if isinstance(other, CRat):
            d = other.abs2()
            return (self * other.conjugate()) / d
        if isinstance(other, (float, complex)):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        d = self.abs2()
        inv = CRat(self.re / d, -self.im / d)
        return inv * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("CRat powers must be non-negative integers")
        out = CRat(1)
        for _ in range(exponent):
            out = out * self
        return out

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, CRat):
            return self.re == other.re and self.im == other.im
        if _is_rat(other):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        # Consistent with hash(int/Fraction) when the value is real.
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __repr__(self) -> str:
        if self.im == 0:
            return f"CRat({self.re})"
        return f"CRat({self.re}, {self.im})"


CR_ZERO = CRat(0)
CR_ONE = CRat(1)


def as_coeff(value):
    """Coerce a scalar to a CRat when exactly possible, else to complex."""
    if isinstance(value, CRat):
        return value
    if _is_rat(value):
        return CRat(value)
    if isinstance(value, complex):
        return value
    if isinstance(value, float):
        return complex(value)
    raise TypeError(f"unsupported coefficient type: {type(value).__name__}")


def coeff_is_exact(c) -> bool:
    return isinstance(c, CRat)
