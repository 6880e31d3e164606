"""Exact scalars in Q(i).

A :class:`GaussianRational` is ``re + im*i`` with both parts arbitrary
precision rationals (``gmpy2.mpq``, always stored in lowest terms with a
positive denominator).  The textual grammar is::

    scalar := rat ( ('+' | '-') rat 'i' )?
    rat    := ['+' | '-'] int ['/' uint]

so ``"3/4-1/2i"`` and ``"-1/3"`` parse, while a bare ``"i"`` does not
(write ``"0+1i"``).  :func:`format_scalar` emits the canonical form of this
grammar, which is what every machine-readable report uses.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "ScalarParseError",
    "ZERO",
    "ONE",
    "I",
    "as_rational",
    "format_rational",
    "format_scalar",
    "parse_rational",
    "parse_scalar",
]

_MPQ_TYPE = type(mpq(0))


class ScalarParseError(ValueError):
    """Raised for text that does not match the scalar grammar."""


def as_rational(value) -> mpq:
    """Coerce ints, Fractions, mpq values and rational strings to ``mpq``."""
    if isinstance(value, _MPQ_TYPE):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Rational):
        return mpq(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class GaussianRational:
    """Immutable element of Q(i)."""

    __slots__ = ("_re", "_im")

    def __init__(self, re=0, im=0):
        self._re = as_rational(re)
        self._im = as_rational(im)

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(cls)
        obj._re = re
        obj._im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating point complex numbers are not exact")
        return cls._raw(as_rational(value), mpq(0))

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        return parse_scalar(text)

    @property
    def re(self) -> mpq:
        return self._re

    @property
    def im(self) -> mpq:
        return self._im

    @property
    def is_real(self) -> bool:
        return not self._im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self._re, -self._im)

    def norm(self) -> mpq:
        """``|a|**2``, an exact nonnegative rational."""
        return self._re * self._re + self._im * self._im

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GaussianRational):
            try:
                other = GaussianRational.coerce(other)
            except TypeError:
                return NotImplemented
        return self._re == other._re and self._im == other._im

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __neg__(self) -> "GaussianRational":
        return GaussianRational._raw(-self._re, -self._im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __add__(self, other) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __sub__(self, other) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational._raw(self._re - o._re, self._im - o._im)

    def __rsub__(self, other) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self._re, self._im, o._re, o._im
        if not b and not d:
            return GaussianRational._raw(a * c, mpq(0))
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "GaussianRational":
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        den = o.norm()
        if not den:
            raise ZeroDivisionError("division by zero in Q(i)")
        num = self * o.conjugate()
        return GaussianRational._raw(num._re / den, num._im / den)

    def __rtruediv__(self, other) -> "GaussianRational":
        return GaussianRational.coerce(other) / self

    def inverse(self) -> "GaussianRational":
        return ONE / self

    def __pow__(self, exponent: int) -> "GaussianRational":
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        return f"GaussianRational('{format_scalar(self)}')"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def format_rational(q) -> str:
    q = as_rational(q)
    return str(q)


def format_scalar(a: GaussianRational) -> str:
    """Canonical text: ``re`` when real, otherwise ``re+imi`` / ``re-|im|i``."""
    a = GaussianRational.coerce(a)
    if not a.im:
        return format_rational(a.re)
    sign = "-" if a.im < 0 else "+"
    return f"{format_rational(a.re)}{sign}{format_rational(abs(a.im))}i"


def _scan_rat(text: str, pos: int, allow_sign: bool) -> tuple[mpq, int]:
    start = pos
    n = len(text)
    negative = False
    if allow_sign and pos < n and text[pos] in "+-":
        negative = text[pos] == "-"
        pos += 1
    digits_start = pos
    while pos < n and text[pos].isdigit():
        pos += 1
    if pos == digits_start:
        tok = text[pos] if pos < n else "<end>"
        raise ScalarParseError(f"expected digits at position {pos} in {text!r}, got {tok!r}")
    num = int(text[digits_start:pos])
    den = 1
    if pos < n and text[pos] == "/":
        pos += 1
        den_start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == den_start:
            tok = text[pos] if pos < n else "<end>"
            raise ScalarParseError(
                f"expected denominator digits at position {pos} in {text!r}, got {tok!r}"
            )
        den = int(text[den_start:pos])
        if den == 0:
            raise ScalarParseError(f"zero denominator in {text[start:pos]!r}")
    value = mpq(num, den)
    return (-value if negative else value), pos


def parse_scalar(text: str) -> GaussianRational:
    """Parse the scalar grammar; errors name the offending token."""
    if not isinstance(text, str):
        raise ScalarParseError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar")
    re, pos = _scan_rat(s, 0, allow_sign=True)
    if pos == len(s):
        return GaussianRational._raw(re, mpq(0))
    if s[pos] not in "+-":
        raise ScalarParseError(f"unexpected token {s[pos]!r} at position {pos} in {s!r}")
    negative = s[pos] == "-"
    im, pos = _scan_rat(s, pos + 1, allow_sign=False)
    if pos >= len(s) or s[pos] != "i":
        tok = s[pos] if pos < len(s) else "<end>"
        raise ScalarParseError(f"expected 'i' at position {pos} in {s!r}, got {tok!r}")
    pos += 1
    if pos != len(s):
        raise ScalarParseError(f"unexpected token {s[pos]!r} at position {pos} in {s!r}")
    return GaussianRational._raw(re, -im if negative else im)


def parse_rational(text: str) -> mpq:
    """Parse a real scalar; an imaginary part is rejected."""
    value = parse_scalar(text)
    if value.im:
        raise ScalarParseError(f"expected a rational number, got complex {text!r}")
    return value.re
