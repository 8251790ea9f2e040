"""The diagonal-times-Vandermonde solver, closed-form coefficients, and extensions."""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import scalar as sc
from ._kernels import esym_all as _esym_kernel
from ._kernels import horner_eval as _horner_kernel
from .errors import (DimensionMismatch, IndexOutOfRange, MaximalityUnreachable,
                     MissingPerturbationRecord, NodeUndefined, NotInGeneralPosition,
                     SingularSystem, ToleranceUnreachable)
from .linalg import det, solve_exact, solve_float
from .perturb import (Dataset, PerturbationEntry, PerturbationRecord, as_epsilon, cayley,
                      compose_epsilon, ensure_distinct, general_position_check, rotate_point)

log = logging.getLogger("whitney")

APPROXIMATE = "approximate"
EXACT_CORRECTED = "exact-corrected"
FIT_RETRIES = 32
ZERO_THRESHOLD_REL = 1e-8


# elementary symmetric functions ---------------------------------------------------

def esym_all(values):
    """``[e_0, ..., e_n]`` by the prefix recurrence ``e_m <- e_m + x e_{m-1}``."""
    values = list(values)
    if sc.mode_of(values) == sc.FLOAT and values:
        return [complex(v) for v in _esym_kernel([complex(v) for v in values])]
    e = [sc.GaussianRational(1)] + [sc.GaussianRational(0)] * len(values)
    for k, x in enumerate(values, start=1):
        for m in range(k, 0, -1):
            e[m] = e[m] + x * e[m - 1]
    return e


def elementary_symmetric(values, m):
    values = list(values)
    if m < 0 or m > len(values):
        raise IndexOutOfRange(f"e_{m} undefined for {len(values)} values")
    return esym_all(values)[m]


# system construction ----------------------------------------------------------------

def _check_ells(ells, n):
    ells = list(ells)
    if len(ells) != n:
        raise DimensionMismatch(f"{n} nodes but {len(ells)} indices")
    if any(b - a != 1 for a, b in zip(ells, ells[1:])):
        raise ValueError("indices must be consecutive and ascending")
    return ells


def system_matrix(nodes, ells):
    """``M[i][k] = d_i v_i^ells[k]``."""
    return [[nd.d * sc.int_power(nd.v, ell) for ell in ells] for nd in nodes]


def system_determinant(nodes, ells):
    return det(system_matrix(nodes, ells))


def product_formula_determinant(nodes, ell_min, descending=False):
    """``Π d_i v_i^ell_min · Π_{i<j} (v_j - v_i)`` for ascending columns.

    With ``descending=True`` the columns run from the top index down, and the
    Vandermonde factor becomes ``Π_{i<j} (v_i - v_j)``.
    """
    out = sc.one(sc.EXACT if all(sc.is_exact(nd.v) and sc.is_exact(nd.d) for nd in nodes)
                 else sc.FLOAT)
    for nd in nodes:
        out = out * nd.d * sc.int_power(nd.v, ell_min)
    n = len(nodes)
    for i in range(n):
        for j in range(i + 1, n):
            vi, vj = nodes[i].v, nodes[j].v
            out = out * ((vi - vj) if descending else (vj - vi))
    return out


def _validate_nodes(nodes, ell_min):
    for i, nd in enumerate(nodes):
        if not nd.d:
            raise SingularSystem(f"row factor of point {i} vanishes", zero_index=i)
        if not nd.v and ell_min != 0:
            raise SingularSystem(f"node of point {i} is zero", zero_index=i)
    seen = {}
    for i, nd in enumerate(nodes):
        key = nd.v if not isinstance(nd.v, complex) else (nd.v.real, nd.v.imag)
        if key in seen:
            j = seen[key]
            raise SingularSystem(f"points {j} and {i} share the node {nd.v}", pair=(j, i))
        seen[key] = i


def _reduced_rhs(nodes, values, ell_min):
    return [y / (nd.d * sc.int_power(nd.v, ell_min)) if ell_min else y / nd.d
            for nd, y in zip(nodes, values)]


def vandermonde_solve(nodes, values, ells):
    """Coefficients ``a`` with ``Σ_k a_k d_i v_i^ells[k] = y_i`` for every ``i``.

    Row ``i`` is divided by ``d_i v_i^ell_min`` first, which leaves the plain
    Vandermonde matrix in the ``v_i``; exact mode solves it by fraction-free
    elimination, float mode by partial pivoting.
    """
    nodes = list(nodes)
    values = list(values)
    n = len(nodes)
    if len(values) != n:
        raise DimensionMismatch(f"{n} nodes but {len(values)} values")
    ells = _check_ells(ells, n)
    ell_min = ells[0]
    _validate_nodes(nodes, ell_min)
    scalars = [nd.v for nd in nodes] + [nd.d for nd in nodes] + values
    exact = sc.mode_of(scalars) == sc.EXACT
    if exact:
        vs = [sc.to_mode(nd.v, sc.EXACT) for nd in nodes]
        rhs = _reduced_rhs(nodes, [sc.to_mode(y, sc.EXACT) for y in values], ell_min)
        mat = [[sc.int_power(v, m) for m in range(n)] for v in vs]
        return solve_exact(mat, rhs)
    vs = [complex(nd.v) for nd in nodes]
    rhs = [complex(r) for r in _reduced_rhs(
        [type(nd)(complex(nd.d), complex(nd.v)) for nd in nodes],
        [complex(y) for y in values], ell_min)]
    mat = [[v ** m for m in range(n)] for v in vs]
    return solve_float(mat, rhs)


def closed_form_coefficients(nodes, values, ells):
    """Lagrange form of the solution of the diagonal-times-Vandermonde system.

    ``a_{ell_min+m} = Σ_j y_j / (d_j v_j^ell_min) · (-1)^(n-1-m) e_{n-1-m}({v_i: i≠j})
    / Π_{i≠j} (v_j - v_i)``.  For the ``(x1 + i x2)^(-ℓ)`` family with
    ``ell_min = 2`` the factor ``1/v_j^2`` is ``w_j^2`` and stays with the
    summand of its own point ``j``.
    """
    nodes = list(nodes)
    values = list(values)
    n = len(nodes)
    if len(values) != n:
        raise DimensionMismatch(f"{n} nodes but {len(values)} values")
    ells = _check_ells(ells, n)
    ell_min = ells[0]
    _validate_nodes(nodes, ell_min)
    exact = sc.mode_of([nd.v for nd in nodes] + [nd.d for nd in nodes] + values) == sc.EXACT
    mode = sc.EXACT if exact else sc.FLOAT
    vs = [sc.to_mode(nd.v, mode) for nd in nodes]
    ys = [sc.to_mode(y, mode) for y in values]
    nd_m = [type(nd)(sc.to_mode(nd.d, mode), v) for nd, v in zip(nodes, vs)]
    weights = _reduced_rhs(nd_m, ys, ell_min)
    coeffs = [sc.zero(mode)] * n
    for j in range(n):
        others = [vs[i] for i in range(n) if i != j]
        e = esym_all(others)
        denom = sc.one(mode)
        for v in others:
            denom = denom * (vs[j] - v)
        scale = weights[j] / denom
        for m in range(n):
            k = n - 1 - m
            term = e[k] if k % 2 == 0 else -e[k]
            coeffs[m] = coeffs[m] + scale * term
    return coeffs


# extensions -----------------------------------------------------------------------------

def _node_or_none(family, x):
    try:
        return family.node(x)
    except (NodeUndefined, ValueError):
        return None


@dataclass
class AngleField:
    """Smooth angle ``t(x) = Σ c_j exp(-|x - x_j|² / σ²)`` with ``t(x_j) = θ_j``."""

    centers: list
    coeffs: list
    sigma: float

    @classmethod
    def build(cls, centers, angles):
        uniq = {}
        for x, t in zip(centers, angles):
            uniq.setdefault(tuple(float(c) for c in x), float(t))
        centers, angles = list(uniq), list(uniq.values())
        if not any(angles):
            return cls(centers, [0.0] * len(centers), 1.0)
        n = len(centers)
        dmin = min((math.dist(centers[i], centers[j]) for i in range(n)
                    for j in range(i + 1, n)), default=1.0)
        sigma = dmin / 2 if dmin > 0 else 1.0
        X = np.array(centers)
        d2 = ((X[:, None, :] - X[None, :, :]) ** 2).sum(axis=2)
        G = np.exp(-d2 / sigma ** 2)
        coeffs = np.linalg.solve(G, np.array(angles))
        return cls(centers, [float(c) for c in coeffs], sigma)

    def __call__(self, x):
        x = tuple(float(c) for c in x)
        return sum(c * math.exp(-math.dist(x, xc) ** 2 / self.sigma ** 2)
                   for c, xc in zip(self.coeffs, self.centers) if c)

    def to_json(self):
        return {"centers": [list(c) for c in self.centers], "coeffs": self.coeffs,
                "sigma": self.sigma}

    @classmethod
    def from_json(cls, obj):
        return cls([tuple(c) for c in obj["centers"]], list(obj["coeffs"]), float(obj["sigma"]))


@dataclass
class WhitneyExtension:
    """``f(x) = Σ_ℓ a_ℓ d(x) v(x)^ℓ`` for one basis family."""

    family: object
    ells: list
    coeffs: list
    arithmetic: str = sc.EXACT
    perturbation: PerturbationRecord = None
    mode: str = APPROXIMATE
    residual: float = None
    original_points: list = None
    perturbed_points: list = None
    angle_field: AngleField = None
    delta: object = 0

    def __post_init__(self):
        if len(self.ells) != len(self.coeffs):
            raise DimensionMismatch("ells and coeffs differ in length")

    @property
    def ell_min(self):
        return self.ells[0]

    def _sum(self, coeffs, d, v, zero):
        acc = zero
        for a in reversed(coeffs):
            acc = acc * v + a
        return d * sc.int_power(v, self.ell_min) * acc if self.ell_min else d * acc

    def evaluate_node(self, nd):
        """Exact when both the coefficients and the node are exact, complex otherwise."""
        if self.arithmetic == sc.EXACT and sc.is_exact(nd.v) and sc.is_exact(nd.d):
            return self._sum(self.coeffs, nd.d, nd.v, sc.zero(sc.EXACT))
        coeffs = [complex(a) for a in self.coeffs]
        return complex(self._sum(coeffs, complex(nd.d), complex(nd.v), 0j))

    def evaluate_uncorrected(self, x):
        return self.evaluate_node(self.family.node(x))

    def _anchor_index(self, x):
        if not self.original_points:
            return None
        for i, xo in enumerate(self.original_points):
            if _same_point(xo, x):
                return i
        return None

    def evaluate(self, x):
        if self.mode != EXACT_CORRECTED:
            return self.evaluate_uncorrected(x)
        i = self._anchor_index(x)
        sigma = self.family.phase_sign
        if i is not None:
            entry = self.perturbation.entries[i]
            if not entry.moved:
                return self.evaluate_uncorrected(x)
            if sigma is not None and tuple(entry.blocks) == tuple(self.family.rotation_blocks):
                nd = self.family.node(x)
                u = sc.int_power(entry.unit(), sigma)
                return self.evaluate_node(type(nd)(nd.d, u * nd.v))
            return self.evaluate_uncorrected(self.perturbed_points[i])
        nd = self.family.node(x)
        if sigma is None or self.angle_field is None:
            return self.evaluate_uncorrected(x)
        t = self.angle_field(self.family.point_coords(x))
        if t == 0:
            return self.evaluate_uncorrected(x)
        u = cmath.exp(1j * sigma * t)
        return complex(self.evaluate_node(type(nd)(complex(nd.d), u * complex(nd.v))))

    __call__ = evaluate

    def evaluate_many(self, points):
        """Vectorized float evaluation; ``nan`` where the node is undefined."""
        points = list(points)
        if self.mode == EXACT_CORRECTED or any(
                self.family.point_mode(x) == sc.EXACT for x in points):
            out = []
            for x in points:
                try:
                    out.append(complex(self.evaluate(x)))
                except (NodeUndefined, ValueError, ZeroDivisionError):
                    out.append(complex("nan"))
            return np.array(out, dtype=complex)
        nodes = [_node_or_none(self.family, x) for x in points]
        ok = [nd is not None for nd in nodes]
        d = np.array([complex(nd.d) if nd else 0j for nd in nodes], dtype=complex)
        v = np.array([complex(nd.v) if nd else 0j for nd in nodes], dtype=complex)
        vals = np.asarray(_horner_kernel(np.array([complex(a) for a in self.coeffs]),
                                         self.ell_min, d, v), dtype=complex)
        vals[~np.array(ok, dtype=bool)] = complex("nan")
        return vals

    def to_float(self):
        return WhitneyExtension(self.family, list(self.ells), [complex(a) for a in self.coeffs],
                                sc.FLOAT, self.perturbation, APPROXIMATE, self.residual)


def _same_point(a, b):
    if hasattr(a, "coords") and hasattr(b, "coords"):
        return a.coords == b.coords
    if hasattr(a, "matrix") and hasattr(b, "matrix"):
        return a.matrix == b.matrix
    return a == b


# residuals ------------------------------------------------------------------------------

def residual_values(e, d):
    return [e.evaluate(x) - y for x, y in zip(d.points, d.values)]


def residual_exact2(e, d):
    """Largest squared modulus of the errors at the data points, as a Fraction."""
    return max(sc.abs2(sc.to_mode(r, sc.EXACT)) for r in residual_values(e, d))


def residual(e, d):
    """Sup norm of ``f(x_i) - y_i`` over the data points."""
    return max(abs(complex(r)) for r in residual_values(e, d))


def _below(e, d, eps):
    if e.arithmetic == sc.EXACT and sc.mode_of(d.values) == sc.EXACT:
        return residual_exact2(e, d) < as_epsilon(eps, sc.EXACT) ** 2
    return residual(e, d) < float(eps)


# fitting -----------------------------------------------------------------------------------

def _as_dataset(d, fam):
    if fam is not None and fam is not d.family:
        return Dataset(d.points, d.values, fam)
    return d


def _solve_on(dp, fam):
    ells = fam.ell_range(dp.n)
    coeffs = vandermonde_solve(dp.nodes(), dp.values, ells)
    return ells, coeffs


def fit(d, fam=None, target_eps=Fraction(1, 10**6), require_tolerance=True,
        check_position=True):
    """Whitney extension of ``d`` with ``sup_i |f(x_i) - y_i| < target_eps``.

    Colliding points are moved by ``ensure_distinct``; if the residual at the
    original points misses the target, the perturbation is halved and the
    system re-solved, up to ``FIT_RETRIES`` times.
    """
    d = _as_dataset(d, fam)
    fam = d.family
    d.check_nonconstant()
    if check_position:
        report = general_position_check(d)
        if report.status == "FAIL":
            raise NotInGeneralPosition(str(report))
    mode = d.mode
    eps = as_epsilon(target_eps, mode)
    if eps <= 0:
        raise ValueError("target_eps must be positive")
    best = None
    best_res = None
    stalls = 0
    pert_eps = eps
    for attempt in range(FIT_RETRIES):
        dp, record = ensure_distinct(d, pert_eps)
        try:
            ells, coeffs = _solve_on(dp, fam)
        except SingularSystem as exc:
            raise NotInGeneralPosition(f"perturbed system still singular: {exc}") from exc
        ext = WhitneyExtension(fam, ells, coeffs, mode, record, APPROXIMATE,
                               original_points=list(d.points), perturbed_points=list(dp.points))
        res = residual(ext, d)
        ext.residual = res
        log.debug("fit attempt %d: perturbation %s, residual %.3e", attempt, pert_eps, res)
        if _below(ext, d, eps):
            return ext
        if best_res is None or res < best_res:
            best, best_res = ext, res
            stalls = 0
        else:
            stalls += 1
        if not record.any_moved() or stalls >= 3:
            break
        pert_eps = pert_eps / 2
    if require_tolerance:
        raise ToleranceUnreachable(
            f"residual {best_res:.3e} at the original points does not reach {float(eps):.3e}",
            extension=best, residual=best_res)
    return best


# representation content -----------------------------------------------------------------

@dataclass
class RepresentationReport:
    summands: list
    ells: list
    maximal: bool
    zero_threshold: float = 0.0
    phi_indices: list = field(default_factory=list)

    def to_json(self):
        out = {"summands": list(self.summands), "maximal": self.maximal,
               "zero_threshold": self.zero_threshold}
        if self.phi_indices:
            out["phi_indices"] = list(self.phi_indices)
        return out


def representation_report(e, zero_threshold=None):
    """Indices with a nonzero coefficient; float mode uses ``1e-8 · max|a_ℓ|``."""
    if e.arithmetic == sc.EXACT:
        thr = 0.0
        summands = [ell for ell, a in zip(e.ells, e.coeffs) if a]
    else:
        amax = max((abs(complex(a)) for a in e.coeffs), default=0.0)
        thr = ZERO_THRESHOLD_REL * amax if zero_threshold is None else float(zero_threshold)
        summands = [ell for ell, a in zip(e.ells, e.coeffs) if abs(complex(a)) > thr]
    phi = []
    if getattr(e.family, "kind", None) == "ads22":
        # same functions indexed by the cosh(t)^(-ℓ-q) convention, q = 2
        phi = [ell - 2 for ell in summands]
    return RepresentationReport(summands, list(e.ells), summands == list(e.ells), thr, phi)


def _is_maximal(ext):
    return representation_report(ext).maximal


def maximize_summands(d, fam=None, target_eps=Fraction(1, 10**6), max_k=32):
    """Fit, then nudge single points by ``cayley(δ)`` until every coefficient is nonzero.

    ``δ`` runs over ``±target_eps / 2^k`` for ``k = 1..max_k``.  Rotating every
    point by the same ``δ`` only multiplies each ``a_ℓ`` by a phase, so the
    nudge is applied to one point at a time.
    """
    d = _as_dataset(d, fam)
    fam = d.family
    base = fit(d, fam, target_eps)
    if _is_maximal(base):
        return base
    mode = d.mode
    eps = as_epsilon(target_eps, mode)
    perturbed = list(base.perturbed_points)
    entries = base.perturbation.entries
    for k in range(1, max_k + 1):
        for sign in (1, -1):
            delta = sign * eps / 2 ** k
            for i in range(d.n):
                entry = entries[i]
                blocks = tuple(entry.blocks) if entry.blocks else None
                fam_blocks = tuple(fam.rotation_blocks)
                y = rotate_point(fam, perturbed[i], delta,
                                 None if blocks in (None, fam_blocks) else blocks)
                if y is None:
                    continue
                pts = list(perturbed)
                pts[i] = y
                dp = Dataset(pts, d.values, fam)
                try:
                    ells, coeffs = _solve_on(dp, fam)
                except (SingularSystem, NodeUndefined, ValueError):
                    continue
                new_eps = compose_epsilon(entry.epsilon, delta)
                new_entries = list(entries)
                new_entries[i] = PerturbationEntry(
                    i, new_eps, cayley(new_eps).angle, entry.block_start,
                    entry.blocks or fam_blocks,
                    math.dist(fam.point_coords(d.points[i]), fam.point_coords(y)))
                ext = WhitneyExtension(fam, ells, coeffs, mode, PerturbationRecord(new_entries),
                                       APPROXIMATE, original_points=list(d.points),
                                       perturbed_points=pts, delta=delta)
                if not _is_maximal(ext):
                    continue
                ext.residual = residual(ext, d)
                if _below(ext, d, eps):
                    return ext
    raise MaximalityUnreachable("no scanned δ gives all-nonzero coefficients within tolerance",
                                extension=base)


# exact correction -------------------------------------------------------------------------

def exact_correct(e, d=None):
    """Compose the extension with a point-dependent rotation so the originals interpolate.

    At an original point ``x_i`` the stored Cayley rotation maps ``x_i`` to the
    point that was actually interpolated, so ``f(x_i) = y_i`` exactly.
    Elsewhere the rotation angle comes from a Gaussian angle field that equals
    the stored angles at the data and decays to zero away from them.
    """
    if e.perturbation is None or e.original_points is None or e.perturbed_points is None:
        raise MissingPerturbationRecord("extension carries no perturbation record")
    if d is not None and len(d.points) != len(e.original_points):
        raise DimensionMismatch("dataset does not match the extension's record")
    fam = e.family
    angles = [entry.angle for entry in e.perturbation.entries]
    coords = [fam.point_coords(x) for x in e.original_points]
    field_ = AngleField.build(coords, angles)
    out = WhitneyExtension(fam, list(e.ells), list(e.coeffs), e.arithmetic, e.perturbation,
                           EXACT_CORRECTED, None, list(e.original_points),
                           list(e.perturbed_points), field_, e.delta)
    if d is not None:
        out.residual = residual(out, d)
    return out
