"""Exact Gaussian-rational scalars.

Real values are kept as plain :class:`fractions.Fraction` (or ``int``); only
values with a nonzero imaginary part become :class:`GaussianRational`.  Every
arithmetic result passes through :func:`coeff`, so a Gaussian rational whose
imaginary part cancels collapses back to a ``Fraction``.  This keeps the
common real case on the fast ``Fraction`` path.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class GaussianRational:
    """``re + i*im`` with rational parts; ``im`` is never zero after :func:`coeff`."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # construction helpers -------------------------------------------------
    @staticmethod
    def _split(x):
        if isinstance(x, GaussianRational):
            return x.re, x.im
        if isinstance(x, (int, Fraction, Rational)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return coeff_from_parts(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return coeff_from_parts(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return coeff_from_parts(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = o
        return coeff_from_parts(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        c, d = o
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self.re, self.im
        return coeff_from_parts((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        o = self._split(other)
        if o is None:
            return NotImplemented
        return GaussianRational(*o) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return 1 / (self ** (-n))
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = base * out
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        return coeff_from_parts(self.re, -self.im)

    def __eq__(self, other):
        o = self._split(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


I = GaussianRational(0, 1)


def coeff_from_parts(re, im):
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def coeff(x):
    """Normalize ``x`` (int, Fraction, str, GaussianRational, complex-free) to an exact scalar."""
    if isinstance(x, GaussianRational):
        return coeff_from_parts(x.re, x.im)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not accepted; use Fraction or str")
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def real_part(x):
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x):
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def is_real(x) -> bool:
    return not isinstance(x, GaussianRational)


def to_json(x) -> dict:
    return {"re": str(real_part(x)), "im": str(imag_part(x))}


def from_json(obj):
    """Accept ``{"re": "p/q", "im": "p/q"}`` or a bare rational string."""
    if isinstance(obj, dict):
        return coeff_from_parts(Fraction(obj.get("re", "0")), Fraction(obj.get("im", "0")))
    if isinstance(obj, (str, int)):
        return Fraction(obj)
    raise ValueError(f"malformed coefficient: {obj!r}")
