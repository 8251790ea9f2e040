"""Basis families whose index-ℓ member factors as ``d(x) * v(x)**ℓ``.

Every family exposes the same small surface used by the perturbation and
solve modules:

* :meth:`BasisFamily.node` returns the ``(d, v)`` pair of a point,
* :meth:`BasisFamily.ell_range` the consecutive index window,
* :meth:`BasisFamily.rotate` moves a point inside its compact orbit by a
  rational Cayley rotation (``None`` when the family has no such move),
* :attr:`BasisFamily.phase_sign` is the exponent ``σ`` with
  ``v(κ·x) = u**σ * v(x)`` when ``κ`` rotates by the unit ``u``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from . import scalar as sc
from .errors import DimensionMismatch, ExactModeUnsupported, NodeUndefined, NotOnQuadric
from .geometry import BlockRotation, QuadricPoint, Signature, apply_block_rotation


@dataclass(frozen=True)
class BasisNode:
    """Row factor ``d`` and Vandermonde node ``v`` of one data point."""

    d: object
    v: object

    @property
    def is_zero(self):
        return not self.v


def _gauss(re, im, exact):
    if exact:
        return sc.GaussianRational(re, im)
    return complex(float(re), float(im))


class BasisFamily:
    """Common behaviour; subclasses fix the node map and index convention."""

    kind = "abstract"
    default_ell_min = 0
    phase_sign = None
    rotation_blocks = ()

    def __init__(self, ell_min=None):
        if ell_min is not None and ell_min < self.default_ell_min:
            raise ValueError(
                f"{self.kind}: ell_min {ell_min} below the admissible start {self.default_ell_min}")
        self.ell_min = self.default_ell_min if ell_min is None else int(ell_min)

    # interface ---------------------------------------------------------
    def node(self, x):
        raise NotImplementedError

    def make_point(self, raw, mode):
        raise NotImplementedError

    def point_to_json(self, x):
        raise NotImplementedError

    def point_coords(self, x):
        """Real coordinates (floats) used for Euclidean distances."""
        raise NotImplementedError

    def rotate(self, x, rotation):
        return None

    def descriptor(self):
        return {"kind": self.kind, "ell_min": self.ell_min}

    # shared ------------------------------------------------------------
    def ell_range(self, n):
        if n < 1:
            raise ValueError("need at least one index")
        return list(range(self.ell_min, self.ell_min + n))

    def eval(self, ell, x):
        if ell < self.ell_min:
            raise ValueError(f"index {ell} below ell_min={self.ell_min}")
        nd = self.node(x)
        if ell < 0 and nd.is_zero:
            raise NodeUndefined("negative power of a zero node")
        return nd.d * sc.int_power(nd.v, ell)

    def point_mode(self, x):
        return sc.EXACT if getattr(x, "exact", True) else sc.FLOAT

    def __eq__(self, other):
        return type(self) is type(other) and self.descriptor() == other.descriptor()

    def __hash__(self):
        return hash(repr(sorted(self.descriptor().items())))

    def __repr__(self):
        args = ", ".join(f"{k}={v!r}" for k, v in self.descriptor().items() if k != "kind")
        return f"{type(self).__name__}({args})"


class _QuadricFamily(BasisFamily):
    signature: Signature

    def make_point(self, raw, mode):
        if isinstance(raw, QuadricPoint):
            if raw.signature != self.signature:
                raise NotOnQuadric(f"point lives on {raw.signature}, expected {self.signature}")
            return raw
        return QuadricPoint.make(raw, self.signature, mode)

    def point_to_json(self, x):
        return [str(v) if x.exact else float(v) for v in x.coords]

    def point_coords(self, x):
        return tuple(float(v) for v in x.coords)

    def rotate(self, x, rotation):
        """Apply the 2x2 ``rotation`` matrix on every block in ``rotation_blocks``."""
        for start in self.rotation_blocks:
            x = apply_block_rotation(x, BlockRotation(rotation.matrix, start))
        return x


class AdS22Plus(_QuadricFamily):
    """ψℓ±(x) = (x1 ± i x2)^(-ℓ) on X(2,2)+, ℓ >= 2."""

    kind = "ads22"
    default_ell_min = 2
    rotation_blocks = (0,)

    def __init__(self, orientation=1, ell_min=None):
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        super().__init__(ell_min)
        self.orientation = orientation
        self.signature = Signature(2, 2, 1)
        # rotating (x1, x2) by u sends x1 + i x2 to u (x1 + i x2)
        self.phase_sign = -orientation

    def descriptor(self):
        return {"kind": self.kind, "ell_min": self.ell_min, "orientation": self.orientation}

    def ambient(self, x):
        """``x1 + σ i x2``, the quantity raised to ``-ℓ``."""
        return _gauss(x.coords[0], self.orientation * x.coords[1], x.exact)

    def node(self, x):
        w = self.ambient(x)
        if not w:
            raise NodeUndefined(f"x1 + i x2 vanishes at {x.display()}")
        return BasisNode(sc.one(self.point_mode(x)), sc.invert(w))

    def eval_chart(self, ell, h):
        """Same function written in the hyperbolic chart of the swapped point.

        ``(x1,x2,x3,x4) -> (x3,x4,x1,x2)`` lands in X(2,2)-, where
        ``x1 + i x2 = (s1 + i s2) cosh t``; the value is
        ``(s1 - σ i s2)^ℓ cosh(t)^(-ℓ)``.
        """
        s1, s2 = h.s
        return complex(s1, -self.orientation * s2) ** ell * math.cosh(h.t) ** (-ell)


def default_isotropic(q):
    """``(1, i, 1, i, ...)`` with a trailing 0 when ``q`` is odd."""
    c = []
    for k in range(q - q % 2):
        c.append(sc.GaussianRational(1) if k % 2 == 0 else sc.I)
    if q % 2:
        c.append(sc.GaussianRational(0))
    return tuple(c)


def half_integer_offset(p, q):
    return Fraction(1, 2) if (p - q) % 2 else Fraction(0)


class HyperboloidMinus(_QuadricFamily):
    """φℓ(s,t) = (s·c)^ℓ cosh(t)^(-ℓ-q) on X(p,q)-, independent of r."""

    kind = "hyperboloid_minus"

    def __init__(self, p, q, isotropic=None, ell_min=None):
        if q < 2:
            raise ValueError("X(p,q)- fitting requires q >= 2")
        self.p, self.q = int(p), int(q)
        start = Fraction(self.p - self.q, 2) + half_integer_offset(self.p, self.q)
        # harmonic degree is a polynomial degree, so never negative
        self.default_ell_min = max(0, int(start))
        super().__init__(ell_min)
        self.signature = Signature(self.p, self.q, -1)
        if isotropic is None:
            self.isotropic = default_isotropic(self.q)
            self.custom_isotropic = False
        else:
            c = tuple(v if isinstance(v, complex) else sc.to_mode(v, sc.EXACT)
                      for v in isotropic)
            if len(c) != self.q:
                raise DimensionMismatch(f"isotropic vector needs {self.q} entries")
            if all(isinstance(v, sc.GaussianRational) for v in c):
                isotropic_ok = sum((v * v for v in c), sc.GaussianRational(0)) == 0
            else:
                isotropic_ok = abs(sum(complex(v) ** 2 for v in c)) <= 1e-12
            if not isotropic_ok:
                raise ValueError("vector is not isotropic")
            self.isotropic = c
            self.custom_isotropic = True
        k = self.q // 2
        if self.custom_isotropic:
            self.rotation_blocks = (self.p,)
            self.phase_sign = None
        else:
            self.rotation_blocks = tuple(self.p + 2 * j for j in range(k))
            self.phase_sign = 1

    def descriptor(self):
        d = {"kind": self.kind, "p": self.p, "q": self.q, "ell_min": self.ell_min}
        if self.custom_isotropic:
            d["isotropic"] = [sc.to_json(v) for v in self.isotropic]
        return d

    def _c(self, exact):
        return self.isotropic if exact else tuple(complex(v) for v in self.isotropic)

    def node(self, x):
        y = x.negative()
        exact = x.exact and all(isinstance(v, sc.GaussianRational) for v in self.isotropic)
        if exact and self.q % 2:
            raise ExactModeUnsupported(
                f"cosh(t)^(-q) is irrational for odd q={self.q}; use float mode")
        c = self._c(exact)
        if exact:
            cosh2 = sum((v * v for v in y), Fraction(0))
            dot = sum((ck * yk for ck, yk in zip(c, y)), sc.GaussianRational(0))
            d = sc.GaussianRational(Fraction(1) / cosh2 ** (self.q // 2))
            v = dot / cosh2
        else:
            yf = [float(v) for v in y]
            cosh2 = sum(v * v for v in yf)
            dot = sum(ck * yk for ck, yk in zip(c, yf))
            d = complex(cosh2 ** (-self.q / 2))
            v = dot / cosh2
        return BasisNode(d, v)

    def eval_chart(self, ell, h):
        """``(s·c)^ℓ cosh(t)^(-ℓ-q)`` straight from chart coordinates."""
        c = self._c(False)
        sdot = sum(ck * float(sk) for ck, sk in zip(c, h.s))
        return sdot ** ell * math.cosh(h.t) ** (-ell - self.q)


class Sphere2(_QuadricFamily):
    """Harmonic polynomials (x1 + i x2)^ℓ on S², ℓ >= 1."""

    kind = "sphere2"
    default_ell_min = 1
    rotation_blocks = (0,)
    phase_sign = 1

    def __init__(self, ell_min=None):
        super().__init__(ell_min)
        self.signature = Signature(3, 0, 1)

    def node(self, x):
        return BasisNode(sc.one(self.point_mode(x)), _gauss(x.coords[0], x.coords[1], x.exact))


class HalfPlane(BasisFamily):
    """(z + i)^(-ℓ) on the upper half plane, ℓ >= 2."""

    kind = "half_plane"
    default_ell_min = 2

    def make_point(self, raw, mode):
        if isinstance(raw, (list, tuple)):
            if len(raw) != 2:
                raise DimensionMismatch("half-plane points are [x, y] pairs")
            z = (sc.GaussianRational(sc.from_json(raw[0], sc.EXACT).re,
                                     sc.from_json(raw[1], sc.EXACT).re)
                 if mode == sc.EXACT else complex(float(raw[0]), float(raw[1])))
        else:
            z = sc.from_json(raw, mode) if not isinstance(raw, (sc.GaussianRational, complex)) \
                else sc.to_mode(raw, mode)
        if (z.im if mode == sc.EXACT else z.imag) <= 0:
            raise NotOnQuadric(f"{z} is not in the upper half plane")
        return z

    def point_mode(self, x):
        return sc.EXACT if isinstance(x, sc.GaussianRational) else sc.FLOAT

    def point_to_json(self, x):
        return sc.to_json(x)

    def point_coords(self, x):
        z = complex(x)
        return (z.real, z.imag)

    def node(self, x):
        i = sc.I if isinstance(x, sc.GaussianRational) else 1j
        return BasisNode(sc.one(self.point_mode(x)), sc.invert(x + i))


class RealLine(BasisFamily):
    """Monomials x^ℓ, ℓ = 0..n-1: classical polynomial interpolation."""

    kind = "real_line"
    default_ell_min = 0

    def make_point(self, raw, mode):
        if isinstance(raw, (list, tuple)):
            if len(raw) != 1:
                raise DimensionMismatch("real-line points have one coordinate")
            raw = raw[0]
        x = sc.from_json(raw, mode) if not isinstance(raw, (sc.GaussianRational, complex, Fraction)) \
            else sc.to_mode(raw, mode)
        if (x.im if isinstance(x, sc.GaussianRational) else x.imag) != 0:
            raise NotOnQuadric(f"{x} is not real")
        return x

    def point_mode(self, x):
        return sc.EXACT if isinstance(x, sc.GaussianRational) else sc.FLOAT

    def point_to_json(self, x):
        return str(x.re) if isinstance(x, sc.GaussianRational) else x.real

    def point_coords(self, x):
        return (complex(x).real,)

    def node(self, x):
        return BasisNode(sc.one(self.point_mode(x)), x)


class GroupHDS(BasisFamily):
    """Holomorphic discrete series coefficients ψλ(g) = det(D)^(-λ).

    ``D`` is the lower-right block of ``g^{-1}``.
    """

    kind = "group"

    def __init__(self, group, p=None, q=None, ell_min=None):
        from .groups import lambda_min, normalize_group
        self.group, self.p, self.q = normalize_group(group, p, q)
        self.default_ell_min = lambda_min(self.group, self.p, self.q)
        super().__init__(ell_min)
        # right torus factor diag(u^q, conj(u)^p) multiplies det D by u^(pq)
        self.phase_sign = -self.p * self.q if self.group == "SU" else None

    def descriptor(self):
        return {"kind": self.kind, "group": self.group, "p": self.p, "q": self.q,
                "ell_min": self.ell_min}

    def make_point(self, raw, mode):
        from .groups import GroupElement
        if isinstance(raw, GroupElement):
            return raw
        return GroupElement.make(raw, self.group, self.p, self.q, mode)

    def point_mode(self, x):
        return x.mode

    def point_to_json(self, x):
        return [[sc.to_json(v) for v in row] for row in x.matrix]

    def point_coords(self, x):
        out = []
        for row in x.matrix:
            for v in row:
                z = complex(v)
                out.extend((z.real, z.imag))
        return tuple(out)

    def node(self, x):
        from .groups import d_block_det
        det = d_block_det(x)
        if not det:
            from .errors import ExceptionalElement
            raise ExceptionalElement("det D = 0")
        return BasisNode(sc.one(x.mode), sc.invert(det))

    def rotate(self, x, rotation):
        from .groups import torus_perturb
        return torus_perturb(x, rotation)


FAMILIES = {
    "ads22": AdS22Plus,
    "hyperboloid_minus": HyperboloidMinus,
    "sphere2": Sphere2,
    "half_plane": HalfPlane,
    "real_line": RealLine,
    "group": GroupHDS,
}

_ALIASES = {
    "ads22plus": "ads22", "x22plus": "ads22", "x(2,2)+": "ads22",
    "hyperboloid": "hyperboloid_minus", "xpq-": "hyperboloid_minus",
    "x(p,q)-": "hyperboloid_minus", "sphere": "sphere2", "s2": "sphere2",
    "halfplane": "half_plane", "upper_half_plane": "half_plane",
    "realline": "real_line", "line": "real_line", "group_hds": "group",
}


def family_from_config(cfg):
    """Build a family from a descriptor dict (the ``family`` block of JSON files)."""
    cfg = dict(cfg)
    kind = str(cfg.pop("kind", cfg.pop("family", ""))).lower()
    kind = _ALIASES.get(kind, kind)
    if kind not in FAMILIES:
        raise ValueError(f"unknown basis family {kind!r}")
    ell_min = cfg.get("ell_min")
    if kind == "ads22":
        return AdS22Plus(int(cfg.get("orientation", 1)), ell_min)
    if kind == "hyperboloid_minus":
        return HyperboloidMinus(int(cfg["p"]), int(cfg["q"]), cfg.get("isotropic"), ell_min)
    if kind == "group":
        return GroupHDS(cfg["group"], cfg.get("p"), cfg.get("q"), ell_min)
    return FAMILIES[kind](ell_min)


def basis_node(fam, x):
    return fam.node(x)


def eval_basis(fam, ell, x):
    return fam.eval(ell, x)


def ell_range(fam, n):
    return fam.ell_range(n)


# harmonicity -----------------------------------------------------------------

def _harmonic(ell, x):
    return complex(x[0], x[1]) ** ell


def laplacian_terms(ell, x, h=1e-4):
    """Fourth-order central second differences of ``(x1 + i x2)^ℓ`` along each axis."""
    x = [float(v) for v in x]
    f0 = _harmonic(ell, x)
    terms = []
    for k in range(len(x)):
        def f(shift, k=k):
            y = list(x)
            y[k] += shift
            return _harmonic(ell, y)
        terms.append((-f(2 * h) + 16 * f(h) - 30 * f0 + 16 * f(-h) - f(-2 * h)) / (12 * h * h))
    return terms, f0


def laplacian_defect(fam, ell, x, h=1e-4, relative=False):
    """Finite-difference estimate of ``|Δ (x1 + i x2)^ℓ|`` at ``x`` in R³.

    With ``relative=True`` the defect is divided by ``|p(x)| + Σ_k |∂_k² p(x)|``,
    the size of the terms whose cancellation the Laplacian measures.
    """
    if not isinstance(fam, Sphere2):
        raise TypeError("harmonicity check applies to the sphere family")
    if ell < 1:
        raise ValueError("degree must be >= 1")
    terms, f0 = laplacian_terms(ell, x, h)
    defect = abs(sum(terms))
    if not relative:
        return defect
    scale = abs(f0) + sum(abs(t) for t in terms)
    return defect / scale if scale else defect


def rotation_phase(t):
    return cmath.exp(1j * t)
