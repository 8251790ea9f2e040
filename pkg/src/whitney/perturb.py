"""Rational Cayley rotations, collision removal, and general-position diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import scalar as sc
from .errors import ExceptionalElement, NonConstantViolation, NotInGeneralPosition, NodeUndefined

_UNDEFINED = (NodeUndefined, ExceptionalElement)

MAX_HALVINGS = 64


def as_epsilon(eps, mode):
    """Exact mode keeps ε rational so rotated points stay rational."""
    if mode == sc.EXACT:
        if isinstance(eps, float):
            return Fraction(repr(eps))
        if isinstance(eps, str):
            return Fraction(eps)
        return Fraction(eps)
    return float(eps)


@dataclass(frozen=True)
class CayleyRotation:
    """``(I - S)(I + S)^{-1}`` for ``S = [[0, ε], [-ε, 0]]``.

    Equals ``[[1-ε², -2ε], [2ε, 1-ε²]] / (1+ε²)``: rotation by
    ``θ = atan2(2ε, 1-ε²) = 2 atan ε``.
    """

    epsilon: object
    matrix: tuple

    @property
    def exact(self):
        return isinstance(self.epsilon, Fraction)

    @property
    def angle(self):
        e = float(self.epsilon)
        return math.atan2(2 * e, 1 - e * e)

    @property
    def unit(self):
        """``e^{iθ} = (1 - ε² + 2iε) / (1 + ε²)``, exact when ε is rational."""
        e = self.epsilon
        den = 1 + e * e
        if self.exact:
            return sc.GaussianRational((1 - e * e) / den, 2 * e / den)
        return complex((1 - e * e) / den, 2 * e / den)

    def distance2_to_identity(self):
        """Squared Frobenius distance ``||A - I||²``."""
        (a, b), (c, d) = self.matrix
        return (a - 1) ** 2 + b * b + c * c + (d - 1) ** 2

    def transpose_times_self(self):
        (a, b), (c, d) = self.matrix
        return ((a * a + c * c, a * b + c * d), (b * a + d * c, b * b + d * d))

    def det(self):
        (a, b), (c, d) = self.matrix
        return a * d - b * c


def cayley(epsilon):
    if isinstance(epsilon, (int, Fraction)) and not isinstance(epsilon, bool):
        e = Fraction(epsilon)
    else:
        e = float(epsilon)
    den = 1 + e * e
    c, s = (1 - e * e) / den, 2 * e / den
    return CayleyRotation(e, ((c, -s), (s, c)))


def compose_epsilon(e1, e2):
    """Cayley parameter of ``A(e1) A(e2)``: half-angle tangents add."""
    den = 1 - e1 * e2
    if den == 0:
        raise ValueError("composite rotation is by π; no finite Cayley parameter")
    return (e1 + e2) / den


@dataclass
class Dataset:
    """Points, their values ``y``, and the basis family that fixes the node map."""

    points: list
    values: list
    family: object

    def __post_init__(self):
        self.points = list(self.points)
        self.values = list(self.values)
        if len(self.points) != len(self.values):
            raise ValueError(f"{len(self.points)} points but {len(self.values)} values")
        if not self.points:
            raise ValueError("empty dataset")

    @property
    def n(self):
        return len(self.points)

    @property
    def mode(self):
        return sc.mode_of(self.values) if all(
            self.family.point_mode(x) == sc.EXACT for x in self.points) else sc.FLOAT

    def check_nonconstant(self):
        if self.n >= 2 and all(v == self.values[0] for v in self.values[1:]):
            raise NonConstantViolation("all data values are equal")

    def nodes(self):
        return [self.family.node(x) for x in self.points]

    def with_points(self, points):
        return Dataset(list(points), list(self.values), self.family)


@dataclass
class PerturbationEntry:
    index: int
    epsilon: object
    angle: float
    block_start: int
    blocks: tuple = ()
    displacement: float = 0.0
    bound: float = 0.0

    @property
    def moved(self):
        return self.epsilon != 0

    def unit(self):
        return cayley(self.epsilon).unit

    def to_json(self):
        return {
            "index": self.index,
            "epsilon": str(self.epsilon) if isinstance(self.epsilon, Fraction) else self.epsilon,
            "angle": self.angle,
            "block_start": self.block_start,
            "blocks": list(self.blocks),
            "displacement": self.displacement,
        }

    @classmethod
    def from_json(cls, obj, exact):
        eps = Fraction(obj["epsilon"]) if exact else float(obj["epsilon"])
        return cls(int(obj["index"]), eps, float(obj["angle"]), int(obj["block_start"]),
                   tuple(obj.get("blocks", ())), float(obj.get("displacement", 0.0)))


@dataclass
class PerturbationRecord:
    entries: list = field(default_factory=list)

    @property
    def max_displacement(self):
        return max((e.displacement for e in self.entries), default=0.0)

    def entry(self, i):
        return self.entries[i]

    def any_moved(self):
        return any(e.moved for e in self.entries)

    def to_json(self):
        return {"entries": [e.to_json() for e in self.entries],
                "max_displacement": self.max_displacement}

    @classmethod
    def from_json(cls, obj, exact):
        return cls([PerturbationEntry.from_json(e, exact) for e in obj.get("entries", [])])


def _euclid(a, b):
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def _coordinate_bound(d):
    return max((abs(c) for x in d.points for c in d.family.point_coords(x)), default=0.0)


def rotate_point(family, x, epsilon, blocks=None):
    """Rotate ``x`` by ``cayley(epsilon)`` on the family's blocks (or the given ones)."""
    rot = cayley(epsilon)
    if blocks is None:
        return family.rotate(x, rot)
    from .geometry import BlockRotation, apply_block_rotation
    for start in blocks:
        x = apply_block_rotation(x, BlockRotation(rot.matrix, start))
    return x


def ensure_distinct(d, target_eps, family=None):
    """Move colliding points inside their compact orbit until all nodes differ.

    Points are scanned in order; point ``i`` is compared with the (already
    processed) points ``j < i``.  On a clash it is rotated by
    ``cayley(ε_i)``, starting at ``ε_i = target_eps`` and halving on every
    renewed clash.  Returns the new dataset and a per-point record.
    """
    family = family or d.family
    if family is not d.family:
        d = Dataset(d.points, d.values, family)
    d.check_nonconstant()
    exact = d.mode == sc.EXACT
    eps0 = as_epsilon(target_eps, sc.EXACT if exact else sc.FLOAT)
    if eps0 <= 0:
        raise ValueError("target_eps must be positive")
    C = _coordinate_bound(d)
    blocks = tuple(family.rotation_blocks)
    new_points = []
    nodes = []
    entries = []
    for i, x in enumerate(d.points):
        try:
            v = family.node(x).v
        except _UNDEFINED:
            v = 0
        zero_ok = family.ell_min == 0
        clash = (not v and not zero_ok) or any(v == w for w in nodes)
        eps = 0
        used_blocks = blocks
        if clash:
            candidates = [blocks]
            # a zero node is invariant under the simultaneous rotation of all
            # blocks; rotating the leading block alone can still lift it
            if len(blocks) > 1:
                candidates.append(blocks[:1])
            moved = None
            for cand in candidates:
                eps = eps0
                for _ in range(MAX_HALVINGS):
                    y = rotate_point(family, x, eps, cand if cand != blocks else None)
                    if y is None:
                        break
                    try:
                        vy = family.node(y).v
                    except _UNDEFINED:
                        vy = 0
                    if (vy or zero_ok) and not any(vy == w for w in nodes):
                        moved = (y, vy, cand)
                        break
                    eps = eps / 2
                if moved:
                    break
            if moved is None:
                what = "projects to zero" if not v else "collides with an earlier point"
                raise NotInGeneralPosition(
                    f"point {i} {what} and no rotation in the allowed block separates it")
            x_new, v, used_blocks = moved
        else:
            x_new = x
        disp = _euclid(family.point_coords(x), family.point_coords(x_new)) if clash else 0.0
        e_val = eps if clash else (Fraction(0) if exact else 0.0)
        entries.append(PerturbationEntry(
            index=i, epsilon=e_val, angle=cayley(e_val).angle,
            block_start=used_blocks[0] if used_blocks else -1, blocks=used_blocks,
            displacement=disp, bound=2 ** 2.5 * C * float(e_val)))
        new_points.append(x_new)
        nodes.append(v)
    return Dataset(new_points, d.values, family), PerturbationRecord(entries)


def projection_collisions(d):
    """Pairs ``(j, i)`` (0-based, ``j < i``) whose nodes coincide, with the shared node."""
    out = []
    nodes = []
    for i, x in enumerate(d.points):
        try:
            v = d.family.node(x).v
        except _UNDEFINED:
            v = None
        for j, w in enumerate(nodes):
            if v is not None and w is not None and v == w:
                out.append((j, i, v))
                break
        nodes.append(v)
    return out


@dataclass
class GeneralPositionReport:
    status: str
    findings: list = field(default_factory=list)

    @property
    def ok(self):
        return self.status != "FAIL"

    def to_json(self):
        return {"status": self.status, "findings": list(self.findings)}

    def __str__(self):
        if not self.findings:
            return self.status
        return f"{self.status}(" + "; ".join(self.findings) + ")"


_ORDINALS = ["first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth"]


def _ordinal(k):
    return _ORDINALS[k] if k < len(_ORDINALS) else f"#{k + 1}"


def general_position_check(d):
    """Necessary conditions for general position; PASS is not a proof.

    Any two points of a hyperboloid lie in one orbit of a conjugate of the
    stabilizer subgroup, so datasets with ``n <= 2`` only get a WARN.
    For ``n >= 3`` the checks are: a coordinate vanishing on every point
    (the data sit in a lower-signature sub-hyperboloid) and a common
    positive-block norm (the data sit in one compact orbit).
    """
    from .geometry import QuadricPoint
    n = d.n
    pts = d.points
    if not all(isinstance(x, QuadricPoint) for x in pts):
        return GeneralPositionReport("PASS", ["no orbit checks for this family"])
    if n == 1:
        return GeneralPositionReport("WARN", ["single point always lies in a proper orbit"])
    if n == 2:
        return GeneralPositionReport(
            "WARN", ["two points always lie in one orbit of a conjugate of H"])
    findings = []
    dim = len(pts[0].coords)
    for k in range(dim):
        if all(x.coords[k] == 0 for x in pts):
            findings.append(f"{_ordinal(k)} coordinate identically zero")
    sig = pts[0].signature
    if sig.q > 0:
        if pts[0].exact:
            norms = [sum(c * c for c in x.positive()) for x in pts]
            same = all(v == norms[0] for v in norms)
        else:
            norms = [sum(float(c) ** 2 for c in x.positive()) for x in pts]
            same = all(abs(v - norms[0]) <= 1e-12 * (1 + abs(norms[0])) for v in norms)
        if same:
            findings.append("all points share the positive-block norm (one compact orbit)")
    return GeneralPositionReport("FAIL" if findings else "PASS", findings)
