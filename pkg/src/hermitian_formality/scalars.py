"""Exact arithmetic over the Gaussian rationals Q(i)."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["Scalar", int, Fraction]


class ScalarParseError(ValueError):
    pass


class Scalar:
    """A number ``re + im*i`` with ``re`` and ``im`` exact rationals.

    Instances are immutable and hashable. Mixed arithmetic with ``int`` and
    ``Fraction`` is supported; floats are rejected on purpose.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Rational | int = 0, im: Rational | int = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("Scalar does not accept floats")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def coerce(x: ScalarLike) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, Scalar):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return Scalar(a * c)
            return Scalar(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return Scalar(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.im:
            if not o.re:
                raise ZeroDivisionError("division by zero in Q(i)")
            return Scalar(self.re / o.re, self.im / o.re)
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|a|^2`` as a rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text form --------------------------------------------------------

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        return format_scalar(self)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def arith(a: ScalarLike, b: ScalarLike, op: str) -> Scalar:
    """Apply ``op`` in {"add", "sub", "mul", "div"} exactly."""
    a, b = Scalar.coerce(a), Scalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def conj(a: ScalarLike) -> Scalar:
    return Scalar.coerce(a).conj()


def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(a: Scalar) -> str:
    if a.im == 0:
        return _fmt_rat(a.re)
    im = a.im
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_rat(im)} i"
    if a.re == 0:
        return imag
    sign = "-" if im < 0 else "+"
    if imag.startswith("-"):
        imag = imag[1:]
    return f"{_fmt_rat(a.re)}{sign}{imag}"


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(rf"([+-]?)\s*({_RAT})?\s*(\*?\s*i)?")


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q+r/s i"`` style text; either part may be omitted.

    Accepted examples: ``"3"``, ``"-1/2"``, ``"i"``, ``"-i"``, ``"1/2 i"``,
    ``"1+2i"``, ``"1/2-3/4 i"``, ``"2*i"``.
    """
    if not isinstance(text, str):
        raise ScalarParseError(f"expected text, got {text!r}")
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar")
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    nterms = 0
    seen_re = seen_im = False
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos >= len(s):
            break
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ScalarParseError(f"malformed scalar {text!r} at position {pos}")
        if nterms and not m.group(1):
            raise ScalarParseError(f"missing sign between terms in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        try:
            mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        except ZeroDivisionError:
            raise ScalarParseError(f"zero denominator in {text!r}") from None
        if m.group(3):
            if seen_im:
                raise ScalarParseError(f"two imaginary parts in {text!r}")
            im_part, seen_im = sign * mag, True
        else:
            if seen_re:
                raise ScalarParseError(f"two real parts in {text!r}")
            re_part, seen_re = sign * mag, True
        nterms += 1
        pos = m.end()
    return Scalar(re_part, im_part)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` text into a Fraction; floats are refused."""
    a = parse_scalar(text)
    if a.im:
        raise ScalarParseError(f"expected a real rational, got {text!r}")
    return a.re
