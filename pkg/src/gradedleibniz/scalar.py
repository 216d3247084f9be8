"""Exact Gaussian rationals, the field Q(i).

Components are stored as ``gmpy2.mpq`` when gmpy2 is importable and as
``fractions.Fraction`` otherwise.  Instances are immutable and hashable, and
compare equal to ints/Fractions with the same value.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

try:  # pragma: no cover - exercised implicitly
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = ["Scalar", "S", "ZERO", "ONE", "I", "parse_scalar", "as_scalar"]

_ZQ = _Q(0)


class Scalar:
    """An element ``re + im*i`` of Q(i)."""

    __slots__ = ("_re", "_im", "_hash")

    def __init__(self, re=0, im=0):
        self._re = _Q(re) if not isinstance(re, str) else _Q(Fraction(re))
        self._im = _Q(im) if not isinstance(im, str) else _Q(Fraction(im))
        self._hash = None

    @classmethod
    def _raw(cls, re, im):
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        obj._hash = None
        return obj

    @property
    def re(self) -> Fraction:
        return Fraction(int(self._re.numerator), int(self._re.denominator))

    @property
    def im(self) -> Fraction:
        return Fraction(int(self._im.numerator), int(self._im.denominator))

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def is_real(self) -> bool:
        return not self._im

    def __bool__(self):
        return bool(self._re) or bool(self._im)

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self._re, -self._im)

    def norm(self):
        """``|z|^2`` as a rational."""
        return self._re * self._re + self._im * self._im

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return Scalar._raw(o._re - self._re, o._im - self._im)

    def __neg__(self):
        return Scalar._raw(-self._re, -self._im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        if not b and not d:
            return Scalar._raw(a * c, _ZQ)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(i)")
        if not self._im:
            return Scalar._raw(1 / self._re, _ZQ)
        nrm = self.norm()
        return Scalar._raw(self._re / nrm, -self._im / nrm)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self._re == o._re and self._im == o._im

    def __hash__(self):
        if self._hash is None:
            if not self._im:
                self._hash = hash(Fraction(int(self._re.numerator), int(self._re.denominator)))
            else:
                self._hash = hash((self.re, self.im))
        return self._hash

    def sort_key(self):
        """Total order used only for deterministic output."""
        return (self._re, self._im)

    # text -------------------------------------------------------------
    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __complex__(self):
        return complex(float(self._re), float(self._im))


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)) or type(x) is type(_ZQ):
        return Scalar._raw(_Q(x), _ZQ)
    if isinstance(x, complex):
        return None
    return None


def as_scalar(x) -> Scalar:
    """Coerce ints, Fractions, numeric strings and Scalars to a Scalar."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    o = _coerce(x)
    if o is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(i)")
    return o


S = as_scalar
ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def _fmt_q(q) -> str:
    q = Fraction(int(q.numerator), int(q.denominator))
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(z: Scalar) -> str:
    """Text form ``a/b``, ``a/b+c/d*i``; a unit imaginary part is written ``i``."""
    re_, im_ = z.re, z.im
    if im_ == 0:
        return _fmt_q(re_)
    if im_ == 1:
        ipart = "i"
    elif im_ == -1:
        ipart = "-i"
    else:
        ipart = _fmt_q(im_) + "*i"
    if re_ == 0:
        return ipart
    sign = "" if ipart.startswith("-") else "+"
    return f"{_fmt_q(re_)}{sign}{ipart}"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(\*?i)?")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"3/4"``, ``"-i"``, ``"1/2+3*i"``, ``"2-i"`` and the like."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar string")
    re_, im_ = Fraction(0), Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        sign, num, imag = m.groups()
        if num is None and imag is None:
            raise ValueError(f"cannot parse scalar {text!r} at offset {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"missing sign in scalar {text!r} at offset {pos}")
        if imag == "*i" and num is None:
            raise ValueError(f"dangling '*i' in scalar {text!r}")
        try:
            value = Fraction(num) if num is not None else Fraction(1)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in scalar {text!r}") from None
        if sign == "-":
            value = -value
        if imag:
            im_ += value
        else:
            re_ += value
        pos = m.end()
    return Scalar(re_, im_)
