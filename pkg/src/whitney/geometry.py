"""Real hyperboloids X(p,q)±, the hyperbolic chart, and 2x2 block rotations."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import scalar as sc
from .errors import (BlockStraddlesSignature, DimensionMismatch, NonUnitDirection,
                     NotOnQuadric)

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class Signature:
    """Signature of the form ``x_1^2+..+x_p^2 - x_{p+1}^2 - .. - x_{p+q}^2``.

    ``sign`` picks the level set: +1 for X(p,q)+, -1 for X(p,q)-.  ``q = 0``
    with ``sign = +1`` is the round sphere S^(p-1).
    """

    p: int
    q: int
    sign: int = 1

    def __post_init__(self):
        if self.p < 1 or self.q < 0 or (self.q == 0 and self.sign < 0):
            raise ValueError(f"invalid signature ({self.p}, {self.q}, {self.sign})")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    @property
    def dim(self):
        return self.p + self.q

    def swapped(self):
        """Signature of the image under ``(x, y) -> (y, x)``: X(p,q)± ~ X(q,p)∓."""
        return Signature(self.q, self.p, -self.sign)

    def __str__(self):
        if self.q == 0:
            return f"S^{self.p - 1}"
        return f"X({self.p},{self.q}){'+' if self.sign > 0 else '-'}"


def quadric_form(x, sig):
    """``sum_{k<=p} x_k^2 - sum_{k>p} x_k^2``, exact for rational input."""
    if len(x) != sig.dim:
        raise DimensionMismatch(f"expected {sig.dim} coordinates, got {len(x)}")
    pos = sum((xk * xk for xk in x[:sig.p]), 0)
    neg = sum((xk * xk for xk in x[sig.p:]), 0)
    return pos - neg


def on_quadric_tolerance(x):
    norm2 = sum(abs(complex(xk)) ** 2 for xk in x)
    return 1e-9 * (1.0 + norm2)


def _exact_coord(v):
    if isinstance(v, sc.GaussianRational):
        if v.im:
            raise ValueError(f"coordinates must be real, got {v}")
        return v.re
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    if isinstance(v, str):
        return sc.real_part(sc.parse_exact(v))
    raise sc.ModeMixError(f"exact mode requires rational coordinates, got {v!r}")


def _float_coord(v):
    if isinstance(v, complex):
        if abs(v.imag) > 0:
            raise ValueError(f"coordinates must be real, got {v}")
        return v.real
    if isinstance(v, str):
        return float(sc.real_part(sc.parse_exact(v)))
    if isinstance(v, sc.GaussianRational):
        return float(_exact_coord(v))
    return float(v)


@dataclass(frozen=True)
class QuadricPoint:
    """A point of X(p,q)±.  Exact coordinates are Fractions, float ones are floats."""

    coords: tuple
    signature: Signature
    exact: bool = True

    @classmethod
    def make(cls, coords, sig, mode=sc.EXACT, validate=True):
        if len(coords) != sig.dim:
            raise DimensionMismatch(f"expected {sig.dim} coordinates, got {len(coords)}")
        if mode == sc.EXACT:
            c = tuple(_exact_coord(v) for v in coords)
        else:
            c = tuple(_float_coord(v) for v in coords)
        pt = cls(c, sig, mode == sc.EXACT)
        if validate:
            pt.validate()
        return pt

    @property
    def mode(self):
        return sc.EXACT if self.exact else sc.FLOAT

    def form(self):
        return quadric_form(self.coords, self.signature)

    def validate(self):
        val = self.form()
        if self.exact:
            if val != self.signature.sign:
                raise NotOnQuadric(
                    f"point {self.display()} has form value {val}, expected {self.signature.sign}")
        elif abs(val - self.signature.sign) > on_quadric_tolerance(self.coords):
            raise NotOnQuadric(
                f"point {self.display()} has form value {val!r}, expected {self.signature.sign}")
        return self

    def positive(self):
        return self.coords[:self.signature.p]

    def negative(self):
        return self.coords[self.signature.p:]

    def swapped(self):
        """Image under ``(x, y) -> (y, x)`` in X(q,p)∓."""
        p = self.signature.p
        return QuadricPoint(self.coords[p:] + self.coords[:p], self.signature.swapped(), self.exact)

    def to_float(self):
        return QuadricPoint(tuple(float(v) for v in self.coords), self.signature, False)

    def display(self):
        return "(" + ", ".join(str(v) for v in self.coords) + ")"

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


@dataclass(frozen=True)
class HyperbolicCoords:
    """Chart coordinates ``(r, s, t)`` of X(p,q)-: ``(r sinh t, s cosh t)``."""

    r: tuple
    s: tuple
    t: float
    r_degenerate: bool = field(default=False, compare=False)


def _check_unit(vec, name):
    n = math.sqrt(sum(float(v) ** 2 for v in vec))
    if abs(n - 1.0) > UNIT_TOL * 10:
        raise NonUnitDirection(f"{name} has norm {n!r}, expected 1")


def from_hyperbolic(h, sig):
    """Map chart coordinates to the ambient point of X(p,q)-."""
    if sig.sign != -1:
        raise ValueError("the hyperbolic chart parametrizes X(p,q)-; swap X(p,q)+ first")
    if len(h.r) != sig.p or len(h.s) != sig.q:
        raise DimensionMismatch("direction vectors do not match the signature")
    if h.t < 0:
        raise ValueError("t must be nonnegative")
    _check_unit(h.r, "r")
    _check_unit(h.s, "s")
    sh, ch = math.sinh(h.t), math.cosh(h.t)
    coords = tuple(float(ri) * sh for ri in h.r) + tuple(float(si) * ch for si in h.s)
    return QuadricPoint(coords, sig, exact=False)


def to_hyperbolic(x):
    """Inverse chart; ``r`` defaults to ``e_1`` (flagged) when ``t == 0``."""
    sig = x.signature
    if sig.sign != -1:
        raise ValueError("the hyperbolic chart parametrizes X(p,q)-; swap X(p,q)+ first")
    pos = [float(v) for v in x.positive()]
    neg = [float(v) for v in x.negative()]
    rho = math.sqrt(sum(v * v for v in pos))
    t = math.asinh(rho)
    if rho == 0.0:
        r = (1.0,) + (0.0,) * (sig.p - 1)
        degenerate = True
    else:
        r = tuple(v / rho for v in pos)
        degenerate = False
    # cosh t from the negative block directly keeps s a unit vector to rounding
    cn = math.sqrt(sum(v * v for v in neg))
    s = tuple(v / cn for v in neg)
    return HyperbolicCoords(r, s, t, degenerate)


# block rotations ----------------------------------------------------------

@dataclass(frozen=True)
class BlockRotation:
    """A 2x2 special-orthogonal matrix acting on coordinates ``block_start, block_start+1``."""

    matrix: tuple
    block_start: int

    def __post_init__(self):
        if len(self.matrix) != 2 or any(len(row) != 2 for row in self.matrix):
            raise DimensionMismatch("rotation matrix must be 2x2")

    @classmethod
    def identity(cls, block_start=0):
        return cls(((1, 0), (0, 1)), block_start)

    def compose(self, other):
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        if self.block_start != other.block_start:
            raise ValueError("rotations act on different blocks")
        a, b = self.matrix, other.matrix
        prod = tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
                     for i in range(2))
        return BlockRotation(prod, self.block_start)

    def is_special_orthogonal(self):
        (a, b), (c, d) = self.matrix
        return (a * a + c * c == 1 and b * b + d * d == 1 and a * b + c * d == 0
                and a * d - b * c == 1)


def kappa(t, block_start=0):
    """The rotation ``[[cos t, sin t], [-sin t, cos t]]`` (floats)."""
    c, s = math.cos(t), math.sin(t)
    return BlockRotation(((c, s), (-s, c)), block_start)


def apply_block_rotation(x, rot):
    p = x.signature.p
    j = rot.block_start
    if j < 0 or j + 1 >= x.signature.dim:
        raise DimensionMismatch(f"block ({j}, {j + 1}) outside the coordinate range")
    if j < p <= j + 1:
        raise BlockStraddlesSignature(
            f"coordinates ({j + 1}, {j + 2}) straddle the p/q boundary at p={p}")
    (a, b), (c, d) = rot.matrix
    u, v = x.coords[j], x.coords[j + 1]
    if x.exact:
        a, b, c, d = (_exact_coord(m) for m in (a, b, c, d))
    else:
        a, b, c, d = (float(m) for m in (a, b, c, d))
    coords = list(x.coords)
    coords[j] = a * u + b * v
    coords[j + 1] = c * u + d * v
    return QuadricPoint(tuple(coords), x.signature, x.exact)


def euclidean_distance2(x, y):
    return sum((a - b) ** 2 for a, b in zip(x.coords, y.coords))


# rational point generation ---------------------------------------------------

def _rational_cos_sin(rng, bound=8):
    e = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    den = 1 + e * e
    return (1 - e * e) / den, 2 * e / den


def _rational_cosh_sinh(rng, bound=4):
    m = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    return (m * m + 1) / (2 * m), (m * m - 1) / (2 * m)


def random_rational_point(sig, rng=None, steps=3):
    """A random rational point of X(p,q)±.

    Starts at a basis vector on the quadric and applies rational boosts
    (rational cosh/sinh pairs) and Cayley rotations, all of which preserve
    the form exactly.
    """
    rng = rng or random.Random()
    n = sig.dim
    x = [Fraction(0)] * n
    x[0 if sig.sign > 0 else sig.p] = Fraction(1)
    for _ in range(steps):
        i = rng.randrange(sig.p)
        j = sig.p + rng.randrange(sig.q)
        ch, sh = _rational_cosh_sinh(rng)
        x[i], x[j] = ch * x[i] + sh * x[j], sh * x[i] + ch * x[j]
        for lo, hi in ((0, sig.p), (sig.p, n)):
            if hi - lo >= 2:
                a = rng.randrange(lo, hi - 1)
                b = rng.randrange(a + 1, hi)
                c, s = _rational_cos_sin(rng)
                x[a], x[b] = c * x[a] - s * x[b], s * x[a] + c * x[b]
    return QuadricPoint(tuple(x), sig, True).validate()
