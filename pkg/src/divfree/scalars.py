"""Exact Gaussian-rational scalars.

Real values are carried as ``gmpy2.mpq``; values with a nonzero imaginary
part are :class:`GaussianRational`.  Every arithmetic result is normalized
back to ``mpq`` as soon as its imaginary part vanishes, so equality is exact
and ``x == 0`` works for every scalar regardless of which type holds it.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "GaussianRational",
    "I",
    "ONE",
    "ZERO",
    "as_scalar",
    "conj",
    "imag_part",
    "is_scalar",
    "parse_scalar",
    "real_part",
    "scalar_from_json",
    "scalar_to_json",
    "scalar_to_str",
]

_MPQ = type(mpq(0))


def _q(x) -> mpq:
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, Rational):
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GaussianRational:
    """a + b*i with a, b rational and b != 0 (use :func:`as_scalar` to build)."""

    __slots__ = ("real", "imag")

    def __init__(self, real, imag):
        self.real = _q(real)
        self.imag = _q(imag)

    @staticmethod
    def make(real, imag):
        real, imag = _q(real), _q(imag)
        if imag == 0:
            return real
        return GaussianRational(real, imag)

    def _parts(self):
        return self.real, self.imag

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        return scalar_to_str(self)

    def __hash__(self):
        return hash((self.real, self.imag))

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.real == other.real and self.imag == other.imag
        try:
            other = _q(other)
        except TypeError:
            return NotImplemented
        return False  # imag != 0 by construction

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return True

    def __neg__(self):
        return GaussianRational(-self.real, -self.imag)

    def __pos__(self):
        return self

    def __add__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        return GaussianRational.make(self.real + a, self.imag + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        return GaussianRational.make(self.real - a, self.imag - b)

    def __rsub__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        return GaussianRational.make(a - self.real, b - self.imag)

    def __mul__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        x, y = self.real, self.imag
        return GaussianRational.make(x * a - y * b, x * b + y * a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        return _divide(self.real, self.imag, a, b)

    def __rtruediv__(self, other):
        a, b = _split(other)
        if a is None:
            return NotImplemented
        return _divide(a, b, self.real, self.imag)

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        out = mpq(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussianRational(self.real, -self.imag)


def _divide(x, y, a, b):
    den = a * a + b * b
    if den == 0:
        raise ZeroDivisionError("division by zero scalar")
    return GaussianRational.make((x * a + y * b) / den, (y * a - x * b) / den)


def _split(x):
    if type(x) is _MPQ:
        return x, 0
    if isinstance(x, GaussianRational):
        return x.real, x.imag
    if isinstance(x, (int, Fraction)):
        return mpq(x), 0
    return None, None


ZERO = mpq(0)
ONE = mpq(1)
I = GaussianRational(0, 1)


def is_scalar(x) -> bool:
    return type(x) is _MPQ or isinstance(x, GaussianRational)


def as_scalar(x):
    """Coerce ints, Fractions, mpq, (re, im) pairs, or strings to a scalar."""
    if type(x) is _MPQ or isinstance(x, GaussianRational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; pass a string like '1+2i'")
    if isinstance(x, float):
        raise TypeError("floats are not exact; pass a string like '1/3'")
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return GaussianRational.make(_q(as_scalar(x[0])), _q(as_scalar(x[1])))
    if isinstance(x, Rational):
        return mpq(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def real_part(x) -> mpq:
    return x.real if isinstance(x, GaussianRational) else mpq(x)


def imag_part(x) -> mpq:
    return x.imag if isinstance(x, GaussianRational) else ZERO


def conj(x):
    return x.conjugate() if isinstance(x, GaussianRational) else x


_RAT = r"[+-]?\d+(?:/\d+)?"
_SCALAR_RE = re.compile(
    rf"^\s*(?:(?P<re>{_RAT})(?=\s*$|\s*[+-]))?\s*"
    rf"(?:(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?)\s*\*?\s*i)?\s*$"
)


def parse_scalar(text: str):
    """Parse '3', '-1/2', '2i', '1+i', '1/3-2/5i'."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    m = _SCALAR_RE.match(s)
    if m is None or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"malformed scalar {text!r}")
    re_part = mpq(m.group("re").lstrip("+")) if m.group("re") else ZERO
    im_txt = m.group("im")
    if im_txt is None:
        im_part = ZERO
    elif im_txt in ("", "+"):
        im_part = ONE
    elif im_txt == "-":
        im_part = -ONE
    else:
        im_part = mpq(im_txt.lstrip("+"))
    return GaussianRational.make(re_part, im_part)


def scalar_to_json(x) -> list[int]:
    """[re_num, re_den, im_num, im_den] with positive denominators."""
    a, b = real_part(x), imag_part(x)
    return [int(a.numerator), int(a.denominator), int(b.numerator), int(b.denominator)]


def scalar_from_json(data):
    if isinstance(data, str):
        return parse_scalar(data)
    if isinstance(data, bool):
        raise ValueError("boolean is not a scalar")
    if isinstance(data, int):
        return mpq(data)
    if not isinstance(data, list) or len(data) not in (2, 4) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in data
    ):
        raise ValueError(f"scalar must be [num, den] or [re_num, re_den, im_num, im_den], got {data!r}")
    if any(d <= 0 for d in data[1::2]):
        raise ValueError(f"scalar denominators must be positive, got {data!r}")
    re_part = mpq(data[0], data[1])
    im_part = mpq(data[2], data[3]) if len(data) == 4 else ZERO
    return GaussianRational.make(re_part, im_part)


def scalar_to_str(x) -> str:
    a, b = real_part(x), imag_part(x)
    if b == 0:
        return str(a)
    if b == 1:
        im = "i"
    elif b == -1:
        im = "-i"
    else:
        im = f"{b}i"
    if a == 0:
        return im
    return f"{a}{'' if im.startswith('-') else '+'}{im}"
