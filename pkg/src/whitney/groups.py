"""Holomorphic discrete series coefficients on SU(p,q), SU(1,1) and Sp(n,R)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import scalar as sc
from .errors import (DimensionMismatch, ExceptionalElement, NeedsPerturbation, NotOnQuadric,
                     OutsideDomain, SingularSystem)
from .linalg import conj_transpose, det, identity, leading_minors_positive, matmul, transpose

SU = "SU"
SP = "Sp"

_GROUP_NAMES = {
    "su": SU, "su(p,q)": SU, "supq": SU,
    "su(1,1)": SU, "su11": SU,
    "sp": SP, "sp(n,r)": SP, "spnr": SP, "sp(n)": SP,
}

GROUP_TOL = 1e-9


def normalize_group(group, p=None, q=None):
    """Canonical ``(kind, p, q)``; SU(1,1) is SU with p = q = 1, Sp(n,R) has p = q = n."""
    key = str(group).strip().lower().replace(" ", "").replace("_", "")
    if key.startswith("su(") and key.endswith(")") and key not in _GROUP_NAMES:
        a, b = key[3:-1].split(",")
        kind, p, q = SU, int(a), int(b)
    elif key.startswith("sp(") and key.endswith(",r)") and key not in _GROUP_NAMES:
        kind, p = SP, int(key[3:-3])
        q = p
    else:
        if key not in _GROUP_NAMES:
            raise ValueError(f"unknown group {group!r}")
        kind = _GROUP_NAMES[key]
        if key in ("su(1,1)", "su11"):
            p, q = 1, 1
    if kind == SP:
        n = p if p is not None else q
        if n is None:
            raise ValueError("Sp(n,R) needs n (pass p)")
        p = q = int(n)
    if p is None or q is None:
        raise ValueError("SU(p,q) needs both p and q")
    p, q = int(p), int(q)
    if p < 1 or q < 1:
        raise ValueError("block sizes must be positive")
    return kind, p, q


def group_label(kind, p, q):
    return f"SU({p},{q})" if kind == SU else f"Sp({p},R)"


def lambda_min(kind, p, q):
    """First admissible integer weight: ``p+q`` for SU(p,q), 1 for Sp(n,R)."""
    return p + q if kind == SU else 1


def _j_matrix(kind, p, q, mode):
    o, z = sc.one(mode), sc.zero(mode)
    n = p + q
    if kind == SU:
        return [[(o if i < p else -o) if i == j else z for j in range(n)] for i in range(n)]
    # [[0, -I], [I, 0]]
    m = [[z] * n for _ in range(n)]
    for i in range(p):
        m[i][p + i] = -o
        m[p + i][i] = o
    return m


def _entry(v, mode):
    if mode == sc.EXACT:
        if isinstance(v, (list, tuple)):
            return sc.from_json(list(v), sc.EXACT)
        return sc.parse_exact(v) if isinstance(v, str) else sc.to_mode(v, sc.EXACT)
    if isinstance(v, (list, tuple)):
        return sc.from_json(list(v), sc.FLOAT)
    return sc.to_mode(v, sc.FLOAT)


def _close(a, b, tol=GROUP_TOL):
    return all(abs(complex(x) - complex(y)) <= tol for ra, rb in zip(a, b)
               for x, y in zip(ra, rb))


@dataclass(frozen=True)
class GroupElement:
    """Square matrix together with its group tag and block split."""

    matrix: tuple
    kind: str
    p: int
    q: int
    mode: str = sc.EXACT

    @classmethod
    def make(cls, raw, group, p=None, q=None, mode=sc.EXACT, validate=True):
        kind, p, q = normalize_group(group, p, q)
        n = p + q
        if len(raw) != n or any(len(row) != n for row in raw):
            raise DimensionMismatch(f"{group_label(kind, p, q)} elements are {n}x{n}")
        m = tuple(tuple(_entry(v, mode) for v in row) for row in raw)
        g = cls(m, kind, p, q, mode)
        if validate:
            g.validate()
        return g

    @property
    def n(self):
        return self.p + self.q

    @property
    def exact(self):
        return self.mode == sc.EXACT

    def rows(self):
        return [list(r) for r in self.matrix]

    def validate(self):
        """Check the defining relations, exactly in exact mode."""
        g = self.rows()
        J = _j_matrix(self.kind, self.p, self.q, self.mode)
        if self.kind == SU:
            lhs = matmul(matmul(conj_transpose(g), J), g)
            dg = det(g)
            ok_det = dg == 1 if self.exact else abs(complex(dg) - 1) <= GROUP_TOL
        else:
            if any(sc.abs2(v) != sc.abs2(sc.real_part(v)) if self.exact
                   else abs(complex(v).imag) > GROUP_TOL for row in g for v in row):
                raise NotOnQuadric("Sp(n,R) elements must be real")
            lhs = matmul(matmul(transpose(g), J), g)
            ok_det = True
        ok_rel = lhs == J if self.exact else _close(lhs, J)
        if not (ok_rel and ok_det):
            raise NotOnQuadric(f"matrix is not in {group_label(self.kind, self.p, self.q)}")
        return self

    def inverse(self):
        """``J g* J`` for SU(p,q), ``-J gᵀ J`` for Sp(n,R); no elimination needed."""
        g = self.rows()
        J = _j_matrix(self.kind, self.p, self.q, self.mode)
        if self.kind == SU:
            inv = matmul(matmul(J, conj_transpose(g)), J)
        else:
            inv = [[-v for v in row] for row in matmul(matmul(J, transpose(g)), J)]
        return GroupElement(tuple(tuple(r) for r in inv), self.kind, self.p, self.q, self.mode)

    def __matmul__(self, other):
        if (self.kind, self.p, self.q) != (other.kind, other.p, other.q):
            raise DimensionMismatch("elements of different groups")
        prod = matmul(self.rows(), other.rows())
        return GroupElement(tuple(tuple(r) for r in prod), self.kind, self.p, self.q, self.mode)

    def blocks(self):
        """``(A, B, C, D)`` with ``A`` of size p x p and ``D`` of size q x q."""
        p = self.p
        g = self.rows()
        return ([r[:p] for r in g[:p]], [r[p:] for r in g[:p]],
                [r[:p] for r in g[p:]], [r[p:] for r in g[p:]])

    def to_float(self):
        m = tuple(tuple(complex(v) for v in row) for row in self.matrix)
        return GroupElement(m, self.kind, self.p, self.q, sc.FLOAT)


def group_identity(group, p=None, q=None, mode=sc.EXACT):
    kind, p, q = normalize_group(group, p, q)
    m = identity(p + q, mode)
    return GroupElement(tuple(tuple(r) for r in m), kind, p, q, mode)


def d_block_det(g):
    """``det D`` where ``D`` is the lower-right q x q block of ``g^{-1}``."""
    return det(g.inverse().blocks()[3])


def matrix_coefficient(g, lam):
    """ψλ(g) = det(D)^(-λ)."""
    lo = lambda_min(g.kind, g.p, g.q)
    if lam < lo:
        raise ValueError(f"λ={lam} below the admissible start {lo}")
    dd = d_block_det(g)
    if not dd:
        raise ExceptionalElement("det D = 0 for this element")
    return sc.int_power(dd, -lam)


# bounded domain -----------------------------------------------------------------

@dataclass(frozen=True)
class DomainPoint:
    """``Z`` in the unit ball of p x q matrices (symmetric for Sp(n,R))."""

    Z: tuple
    symmetric: bool = False

    @classmethod
    def make(cls, raw, mode=sc.EXACT, symmetric=False):
        if not isinstance(raw, (list, tuple)):
            raw = [[raw]]
        elif raw and not isinstance(raw[0], (list, tuple)):
            raw = [list(raw)]
        Z = tuple(tuple(_entry(v, mode) for v in row) for row in raw)
        pt = cls(Z, symmetric)
        pt.validate()
        return pt

    @property
    def shape(self):
        return len(self.Z), len(self.Z[0])

    @property
    def exact(self):
        return all(isinstance(v, sc.GaussianRational) for row in self.Z for v in row)

    def validate(self):
        Z = [list(r) for r in self.Z]
        if self.symmetric and transpose(Z) != Z:
            raise OutsideDomain("Z must be symmetric")
        q = len(Z[0])
        if self.exact:
            h = [[(1 if i == j else 0) - v for j, v in enumerate(row)]
                 for i, row in enumerate(matmul(conj_transpose(Z), Z))]
            inside = leading_minors_positive(h)
        else:
            inside = np.linalg.norm(np.array(Z, dtype=complex), 2) < 1.0
        if not inside or q == 0:
            raise OutsideDomain("operator norm of Z must be < 1")
        return self


def kernel_eval(Z, W, lam):
    """det(I - W* Z)^(-λ)."""
    if not isinstance(Z, DomainPoint):
        Z = DomainPoint.make(Z, sc.EXACT if _all_exact(Z) else sc.FLOAT)
    if not isinstance(W, DomainPoint):
        W = DomainPoint.make(W, sc.EXACT if _all_exact(W) else sc.FLOAT)
    if Z.shape != W.shape:
        raise DimensionMismatch("Z and W must have the same shape")
    prod = matmul(conj_transpose([list(r) for r in W.Z]), [list(r) for r in Z.Z])
    m = [[(1 if i == j else 0) - v for j, v in enumerate(row)] for i, row in enumerate(prod)]
    dd = det(m)
    return sc.int_power(dd, -lam)


def _all_exact(raw):
    flat = raw
    if isinstance(raw, (list, tuple)):
        flat = [v for row in raw for v in (row if isinstance(row, (list, tuple)) else [row])]
    else:
        flat = [raw]
    return all(sc.is_exact(v) or isinstance(v, str) for v in flat)


def disk_action(g, z):
    """``(αz + β) / (β̄z + ᾱ)`` for ``g = [[α, β], [β̄, ᾱ]]`` in SU(1,1)."""
    if (g.kind, g.p, g.q) != (SU, 1, 1):
        raise ValueError("disk action is defined for SU(1,1)")
    if isinstance(z, DomainPoint):
        z = z.Z[0][0]
    if sc.abs2(z) >= 1:
        raise OutsideDomain(f"|z| >= 1 for z={z}")
    (a, b), (c, d) = g.matrix
    return (a * z + b) / (c * z + d)


# perturbation and fitting ----------------------------------------------------------

def torus_perturb(g, rotation):
    """Right-multiply ``g`` by a central-torus element built from the Cayley ``rotation``.

    SU(p,q): ``diag(u^q I_p, ū^p I_q)`` with ``u`` the rotation's unit, which
    multiplies ``det D`` by ``u^(pq)``.  Sp(n,R): ``[[cI, -sI], [sI, cI]]``.
    Both keep exact elements exact.
    """
    p, q = g.p, g.q
    mode = g.mode
    n = p + q
    z = sc.zero(mode)
    if g.kind == SU:
        u = rotation.unit
        if mode == sc.EXACT:
            u = sc.to_mode(u, sc.EXACT)
        else:
            u = complex(u)
        a, b = sc.int_power(u, q), sc.int_power(sc.conj(u), p)
        t = [[(a if i < p else b) if i == j else z for j in range(n)] for i in range(n)]
    else:
        (c, ms), (s, _) = rotation.matrix
        c, s = sc.to_mode(c, mode), sc.to_mode(s, mode)
        t = [[z] * n for _ in range(n)]
        for i in range(p):
            t[i][i] = c
            t[p + i][p + i] = c
            t[i][p + i] = -s
            t[p + i][i] = s
    prod = matmul(g.rows(), t)
    return GroupElement(tuple(tuple(r) for r in prod), g.kind, p, q, mode)


def rational_unit(rng, bound=9):
    e = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    den = 1 + e * e
    return sc.GaussianRational((1 - e * e) / den, 2 * e / den)


def random_su11(rng=None, bound=5):
    """Exact SU(1,1) element ``[[α, β], [β̄, ᾱ]]`` with ``|α|² - |β|² = 1``.

    ``α = a u1``, ``β = b u2`` where ``a = (m²+1)/2m``, ``b = (m²-1)/2m`` and
    ``u1, u2`` are rational points of the unit circle.
    """
    rng = rng or random.Random()
    m = Fraction(rng.randint(1, bound), rng.randint(1, bound))
    a, b = (m * m + 1) / (2 * m), (m * m - 1) / (2 * m)
    alpha = rational_unit(rng) * a
    beta = rational_unit(rng) * b
    mat = ((alpha, beta), (beta.conjugate(), alpha.conjugate()))
    return GroupElement(mat, SU, 1, 1, sc.EXACT).validate()


def random_sp1(rng=None, bound=6):
    """Exact element of Sp(1,R) = SL(2,R) with rational entries."""
    rng = rng or random.Random()
    while True:
        a = Fraction(rng.randint(1, bound), rng.randint(1, bound)) * rng.choice((1, -1))
        b = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        c = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        d = (1 + b * c) / a
        mat = tuple(tuple(sc.GaussianRational(v) for v in row) for row in ((a, b), (c, d)))
        g = GroupElement(mat, SP, 1, 1, sc.EXACT)
        if d_block_det(g):
            return g.validate()


def su11_diag(theta):
    """Float element ``diag(e^{iθ}, e^{-iθ})``."""
    import cmath
    u = cmath.exp(1j * theta)
    return GroupElement(((u, 0j), (0j, u.conjugate())), SU, 1, 1, sc.FLOAT)


def fit_on_group(elements, values, target_eps, perturb=True, group=None, ell_min=None,
                 require_tolerance=True):
    """Whitney extension on the group in the basis ψλ, λ = λ_min, ..., λ_min + n - 1.

    With ``perturb=False`` a repeated ``det D`` raises NeedsPerturbation instead
    of moving the elements by central-torus rotations.
    """
    from .basis import GroupHDS
    from .perturb import Dataset
    from .solve import fit, vandermonde_solve, WhitneyExtension
    elements = list(elements)
    if not elements:
        raise ValueError("no group elements")
    g0 = elements[0]
    fam = GroupHDS(g0.kind, g0.p, g0.q, ell_min)
    if group is not None:
        fam = GroupHDS(group, g0.p, g0.q, ell_min)
    d = Dataset(elements, values, fam)
    if not perturb:
        d.check_nonconstant()
        ells = fam.ell_range(d.n)
        try:
            coeffs = vandermonde_solve(d.nodes(), d.values, ells)
        except SingularSystem as exc:
            raise NeedsPerturbation(str(exc), pair=exc.pair, zero_index=exc.zero_index) from exc
        ext = WhitneyExtension(fam, ells, coeffs, d.mode)
        ext.residual = 0.0
        return ext
    return fit(d, fam, target_eps, require_tolerance=require_tolerance)
