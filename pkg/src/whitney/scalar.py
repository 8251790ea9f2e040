"""Exact Gaussian rationals and complex floats behind one set of helpers.

Two arithmetic modes are supported:

``exact``
    values are :class:`GaussianRational` (``a + b i`` with ``a, b`` in Q),
    built on :class:`fractions.Fraction`.
``float``
    values are Python ``complex`` (double precision).

Python ``int`` and ``Fraction`` operands coerce into either mode.  Combining a
:class:`GaussianRational` with a ``float``/``complex`` raises
:class:`~whitney.errors.ModeMixError`.
"""

from __future__ import annotations

import math
import numbers
import re
from fractions import Fraction

from .errors import DivisionByZero, ModeMixError

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (float, complex, numbers.Complex)):
        raise ModeMixError(f"cannot build an exact scalar from {x!r}")
    raise TypeError(f"unsupported scalar component {x!r}")


class GaussianRational:
    """Immutable element ``re + im*i`` of the field Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im != 0:
                raise TypeError("imaginary part given twice")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    @classmethod
    def _new(cls, re, im):
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (Fraction, numbers.Integral)):
            return cls._new(_as_fraction(other), Fraction(0))
        if isinstance(other, numbers.Complex):
            raise ModeMixError(
                f"cannot combine an exact scalar with {type(other).__name__} {other!r}")
        return None

    # ring operations -------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational._new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return GaussianRational._new(a * c, Fraction(0))
        return GaussianRational._new(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return GaussianRational._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, numbers.Integral):
            return NotImplemented
        return int_power(self, int(k))

    def inverse(self):
        n = self.norm()
        if not n:
            raise DivisionByZero("inverse of zero")
        return GaussianRational._new(self.re / n, -self.im / n)

    def conjugate(self):
        return GaussianRational._new(self.re, -self.im)

    def norm(self):
        """Squared modulus ``re**2 + im**2`` as a Fraction."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return math.sqrt(self.norm())

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (Fraction, numbers.Integral)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        return format_exact(self)


I = GaussianRational(0, 1)


def is_exact(z):
    return isinstance(z, (GaussianRational, Fraction, numbers.Integral)) and not isinstance(z, bool)


def mode_of(values):
    """Return the arithmetic mode shared by ``values``.

    Integers and Fractions are compatible with both modes; if nothing pins
    the mode, ``exact`` is returned.
    """
    mode = None
    for v in values:
        if isinstance(v, GaussianRational):
            m = EXACT
        elif isinstance(v, (Fraction, numbers.Integral)):
            continue
        elif isinstance(v, numbers.Complex):
            m = FLOAT
        else:
            raise TypeError(f"not a scalar: {v!r}")
        if mode is None:
            mode = m
        elif mode != m:
            raise ModeMixError("values mix exact and floating scalars")
    return mode or EXACT


def to_mode(z, mode):
    """Coerce ``z`` into the requested mode (exact inputs may always become floats)."""
    if mode == EXACT:
        if isinstance(z, GaussianRational):
            return z
        if isinstance(z, (Fraction, numbers.Integral)):
            return GaussianRational(z)
        if isinstance(z, str):
            return parse_exact(z)
        raise ModeMixError(f"exact mode requires rational input, got {z!r}")
    if mode == FLOAT:
        if isinstance(z, str):
            return complex(parse_exact(z))
        return complex(z)
    raise ValueError(f"unknown mode {mode!r}")


def zero(mode):
    return GaussianRational._new(Fraction(0), Fraction(0)) if mode == EXACT else 0j


def one(mode):
    return GaussianRational._new(Fraction(1), Fraction(0)) if mode == EXACT else 1 + 0j


def is_zero(z):
    return not z


def invert(z):
    """Multiplicative inverse; raises DivisionByZero at 0."""
    if isinstance(z, GaussianRational):
        return z.inverse()
    if isinstance(z, (Fraction, numbers.Integral)):
        if z == 0:
            raise DivisionByZero("inverse of zero")
        return GaussianRational(Fraction(1) / Fraction(z))
    if z == 0:
        raise DivisionByZero("inverse of zero")
    return 1 / complex(z)


def int_power(z, k):
    """``z**k`` by repeated squaring; negative ``k`` inverts first."""
    k = int(k)
    if isinstance(z, (Fraction, numbers.Integral)) and not isinstance(z, GaussianRational):
        z = GaussianRational(z)
    if k < 0:
        z = invert(z)
        k = -k
    result = one(EXACT) if isinstance(z, GaussianRational) else 1 + 0j
    base = z
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def real_part(z):
    return z.re if isinstance(z, GaussianRational) else z.real


def abs2(z):
    """Squared modulus; exact (Fraction) for exact inputs."""
    if isinstance(z, GaussianRational):
        return z.norm()
    if isinstance(z, (Fraction, numbers.Integral)):
        return Fraction(z) ** 2
    return z.real * z.real + z.imag * z.imag


def conj(z):
    if isinstance(z, GaussianRational):
        return z.conjugate()
    if isinstance(z, (Fraction, numbers.Integral)):
        return z
    return complex(z).conjugate()


# serialization -----------------------------------------------------------

def format_exact(z):
    """Format as ``"a/b+c/d i"`` (lowest terms, explicit sign on the imaginary part)."""
    z = GaussianRational(z) if not isinstance(z, GaussianRational) else z
    sign = "-" if z.im < 0 else "+"
    return f"{z.re}{sign}{abs(z.im)} i"


_GAUSS_RE = re.compile(
    r"""^\s*(?P<re>[+-]?[0-9./eE]+)?\s*
        (?:(?P<sign>[+-])\s*(?P<im>[0-9./eE]*)\s*\*?\s*[ij])?\s*$""",
    re.VERBOSE)
_PURE_IMAG = re.compile(r"^\s*(?P<im>[+-]?[0-9./eE]*)\s*\*?\s*[ij]\s*$")


def parse_exact(text):
    """Inverse of :func:`format_exact`; also accepts ``"3/4"``, ``"2i"``, ``"1-i"``."""
    if not isinstance(text, str):
        return to_mode(text, EXACT)
    m = _PURE_IMAG.match(text)
    if m:
        im = m.group("im")
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        return GaussianRational(0, Fraction(im))
    m = _GAUSS_RE.match(text)
    if not m or (m.group("re") is None and m.group("sign") is None):
        raise ValueError(f"cannot parse exact scalar {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("sign"):
        im = m.group("im") or "1"
        im_part = Fraction(im)
        if m.group("sign") == "-":
            im_part = -im_part
    return GaussianRational(re_part, im_part)


def to_json(z):
    """Exact scalars become strings, floats become ``[re, im]`` pairs."""
    if isinstance(z, (GaussianRational, Fraction, numbers.Integral)) and not isinstance(z, bool):
        return format_exact(z)
    z = complex(z)
    return [z.real, z.imag]


def from_json(obj, mode):
    """Decode a JSON scalar in the given mode.

    Exact mode accepts strings and integers (floats would already be corrupted);
    float mode accepts numbers, ``[re, im]`` pairs, and strings.
    """
    if mode == EXACT:
        if isinstance(obj, bool):
            raise ValueError("boolean is not a scalar")
        if isinstance(obj, str):
            return parse_exact(obj)
        if isinstance(obj, int):
            return GaussianRational(obj)
        if isinstance(obj, list) and len(obj) == 2 and all(
                isinstance(v, (int, str)) and not isinstance(v, bool) for v in obj):
            return GaussianRational(_as_fraction(obj[0]), _as_fraction(obj[1]))
        raise ModeMixError(f"exact mode requires rational input (string or integer), got {obj!r}")
    if isinstance(obj, str):
        return complex(parse_exact(obj))
    if isinstance(obj, list):
        if len(obj) != 2:
            raise ValueError(f"complex value must be a [re, im] pair, got {obj!r}")
        return complex(float(obj[0]), float(obj[1]))
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ValueError(f"not a number: {obj!r}")
    return complex(obj)
