"""Exact scalars in Q(i, sqrt2).

An element is stored as (re_rat + im_rat*i) + (re_rad + im_rad*i)*sqrt2 with
every component a Fraction in lowest terms.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to an exact rational")


class FieldScalar:
    __slots__ = ("re_rat", "im_rat", "re_rad", "im_rad")

    def __init__(self, re_rat=0, im_rat=0, re_rad=0, im_rad=0):
        object.__setattr__(self, "re_rat", _frac(re_rat))
        object.__setattr__(self, "im_rat", _frac(im_rat))
        object.__setattr__(self, "re_rad", _frac(re_rad))
        object.__setattr__(self, "im_rad", _frac(im_rad))

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    @classmethod
    def _raw(cls, a, b, c, d):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re_rat", a)
        object.__setattr__(obj, "im_rat", b)
        object.__setattr__(obj, "re_rad", c)
        object.__setattr__(obj, "im_rad", d)
        return obj

    @classmethod
    def coerce(cls, x) -> "FieldScalar":
        if isinstance(x, FieldScalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        return cls._raw(_frac(x), _ZERO, _ZERO, _ZERO)

    # pieces: a + b*sqrt2 with a, b Gaussian rationals

    def parts(self):
        return (self.re_rat, self.im_rat, self.re_rad, self.im_rad)

    def is_zero(self) -> bool:
        return not (self.re_rat or self.im_rat or self.re_rad or self.im_rad)

    def is_rational(self) -> bool:
        return not (self.im_rat or self.re_rad or self.im_rad)

    def is_real(self) -> bool:
        return not (self.im_rat or self.im_rad)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldScalar):
            return self.parts() == other.parts()
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.re_rat == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.re_rat)
        return hash(self.parts())

    def __add__(self, other):
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return FieldScalar._raw(self.re_rat + other.re_rat, self.im_rat + other.im_rat,
                                self.re_rad + other.re_rad, self.im_rad + other.im_rad)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar._raw(-self.re_rat, -self.im_rat, -self.re_rad, -self.im_rad)

    def __sub__(self, other):
        if not isinstance(other, FieldScalar):
            try:
                other = FieldScalar.coerce(other)
            except TypeError:
                return NotImplemented
        return FieldScalar._raw(self.re_rat - other.re_rat, self.im_rat - other.im_rat,
                                self.re_rad - other.re_rad, self.im_rad - other.im_rad)

    def __rsub__(self, other):
        return FieldScalar.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, FieldScalar):
            if isinstance(other, (int, Fraction)):
                return FieldScalar._raw(self.re_rat * other, self.im_rat * other,
                                        self.re_rad * other, self.im_rad * other)
            return NotImplemented
        if other.is_rational():
            k = other.re_rat
            return FieldScalar._raw(self.re_rat * k, self.im_rat * k, self.re_rad * k, self.im_rad * k)
        if self.is_rational():
            k = self.re_rat
            return FieldScalar._raw(other.re_rat * k, other.im_rat * k, other.re_rad * k, other.im_rad * k)
        a, b, c, d = self.parts()
        e, f, g, h = other.parts()
        # (p + q s)(r + t s) = (pr + 2qt) + (pt + qr) s, with p=a+bi, q=c+di, r=e+fi, t=g+hi
        pr_re, pr_im = a * e - b * f, a * f + b * e
        qt_re, qt_im = c * g - d * h, c * h + d * g
        pt_re, pt_im = a * g - b * h, a * h + b * g
        qr_re, qr_im = c * e - d * f, c * f + d * e
        return FieldScalar._raw(pr_re + 2 * qt_re, pr_im + 2 * qt_im, pt_re + qr_re, pt_im + qr_im)

    __rmul__ = __mul__

    def conj(self) -> "FieldScalar":
        """Complex conjugation: i -> -i, sqrt2 fixed."""
        return FieldScalar._raw(self.re_rat, -self.im_rat, self.re_rad, -self.im_rad)

    def inverse(self) -> "FieldScalar":
        if self.is_zero():
            raise ZeroDivisionError("FieldScalar zero has no inverse")
        if self.is_rational():
            return FieldScalar._raw(1 / self.re_rat, _ZERO, _ZERO, _ZERO)
        # x = p + q s; x * (p - q s) = p^2 - 2 q^2 =: n, a Gaussian rational, nonzero since sqrt2 is irrational
        a, b, c, d = self.parts()
        n_re = (a * a - b * b) - 2 * (c * c - d * d)
        n_im = 2 * a * b - 4 * c * d
        den = n_re * n_re + n_im * n_im
        inv_re, inv_im = n_re / den, -n_im / den
        bar = FieldScalar._raw(a, b, -c, -d)
        return bar * FieldScalar._raw(inv_re, inv_im, _ZERO, _ZERO)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, FieldScalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldScalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def to_complex(self) -> complex:
        r2 = 2 ** 0.5
        return complex(float(self.re_rat) + r2 * float(self.re_rad), float(self.im_rat) + r2 * float(self.im_rad))

    def __complex__(self):
        return self.to_complex()

    def __repr__(self):
        return f"FieldScalar({self})"

    def __str__(self):
        terms = []
        for coef, unit in ((self.re_rat, ""), (self.im_rat, "i"), (self.re_rad, "r2"), (self.im_rad, "i*r2")):
            if coef:
                if unit and coef == 1:
                    terms.append(unit)
                elif unit and coef == -1:
                    terms.append("-" + unit)
                else:
                    terms.append(f"{coef}*{unit}" if unit else str(coef))
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")


ZERO = FieldScalar()
ONE = FieldScalar(1)
I = FieldScalar(0, 1)
SQRT2 = FieldScalar(0, 0, 1)
INV_SQRT2 = FieldScalar(0, 0, Fraction(1, 2))


def fs(x) -> FieldScalar:
    return FieldScalar.coerce(x)
