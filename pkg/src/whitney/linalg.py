"""Dense linear algebra over Q(i) (fraction-free) and over complex doubles."""

from __future__ import annotations

import math
from fractions import Fraction

from . import scalar as sc
from ._kernels import solve_dense
from .errors import DimensionMismatch, SingularSystem

# Gaussian integers are (re, im) tuples of Python ints inside this module.


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _gdiv_exact(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    re = a[0] * b[0] + a[1] * b[1]
    im = a[1] * b[0] - a[0] * b[1]
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise ArithmeticError("inexact division in Bareiss step")
    return (qr, qi)


def _row_to_gaussian_ints(row):
    """Scale a row of Gaussian rationals to Gaussian integers; returns (ints, scale)."""
    den = 1
    for z in row:
        den = math.lcm(den, z.re.denominator, z.im.denominator)
    ints = [(int(z.re * den), int(z.im * den)) for z in row]
    return ints, den


def _as_exact(z):
    return z if isinstance(z, sc.GaussianRational) else sc.GaussianRational(z)


def bareiss_eliminate(rows):
    """Fraction-free forward elimination on Gaussian-integer rows in place.

    Returns the sign of the row permutation; raises SingularSystem on a zero
    pivot column.  ``rows`` may be wider than tall (augmented systems).
    """
    n = len(rows)
    width = len(rows[0])
    sign = 1
    prev = (1, 0)
    for k in range(n):
        if rows[k][k] == (0, 0):
            for r in range(k + 1, n):
                if rows[r][k] != (0, 0):
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                raise SingularSystem(f"matrix is singular (no pivot in column {k})")
        pivot = rows[k][k]
        for i in range(k + 1, n):
            rik = rows[i][k]
            ri = rows[i]
            rk = rows[k]
            for j in range(k + 1, width):
                ri[j] = _gdiv_exact(_gsub(_gmul(ri[j], pivot), _gmul(rik, rk[j])), prev)
            ri[k] = (0, 0)
        prev = pivot
    return sign


def solve_exact(matrix, rhs):
    """Solve ``matrix @ x = rhs`` over Q(i) by Bareiss elimination."""
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise DimensionMismatch("system must be square and match the right-hand side")
    rows = []
    for row, b in zip(matrix, rhs):
        ints, _ = _row_to_gaussian_ints([_as_exact(z) for z in row] + [_as_exact(b)])
        rows.append(ints)
    bareiss_eliminate(rows)
    x = [None] * n
    for k in range(n - 1, -1, -1):
        acc = sc.GaussianRational(*rows[k][n])
        for j in range(k + 1, n):
            acc = acc - sc.GaussianRational(*rows[k][j]) * x[j]
        x[k] = acc / sc.GaussianRational(*rows[k][k])
    return x


def det_exact(matrix):
    """Exact determinant over Q(i) (Bareiss on the denominator-cleared matrix)."""
    n = len(matrix)
    if n == 0:
        return sc.GaussianRational(1)
    rows = []
    scale = Fraction(1)
    for row in matrix:
        if len(row) != n:
            raise DimensionMismatch("determinant needs a square matrix")
        ints, den = _row_to_gaussian_ints([_as_exact(z) for z in row])
        rows.append(ints)
        scale *= den
    try:
        sign = bareiss_eliminate(rows)
    except SingularSystem:
        return sc.GaussianRational(0)
    d = sc.GaussianRational(*rows[n - 1][n - 1])
    return d * sign / scale


def solve_float(matrix, rhs):
    n = len(matrix)
    if any(len(row) != n for row in matrix) or len(rhs) != n:
        raise DimensionMismatch("system must be square and match the right-hand side")
    try:
        return [complex(v) for v in solve_dense(matrix, rhs)]
    except ZeroDivisionError as exc:
        raise SingularSystem(str(exc)) from exc


def det_float(matrix):
    import numpy as np
    if len(matrix) == 0:
        return 1 + 0j
    return complex(np.linalg.det(np.array(matrix, dtype=complex)))


def det(matrix):
    if any(isinstance(z, sc.GaussianRational) for row in matrix for z in row):
        return det_exact(matrix)
    if all(sc.is_exact(z) for row in matrix for z in row):
        return det_exact(matrix)
    return det_float(matrix)


def solve(matrix, rhs):
    values = [z for row in matrix for z in row] + list(rhs)
    if sc.mode_of(values) == sc.EXACT:
        return solve_exact(matrix, rhs)
    return solve_float(matrix, rhs)


# small dense helpers ---------------------------------------------------------

def matmul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in cols] for row in a]


def conj_transpose(a):
    return [[sc.conj(v) for v in col] for col in zip(*a)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def identity(n, mode=sc.EXACT):
    o, z = sc.one(mode), sc.zero(mode)
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def leading_minors_positive(h):
    """Exact test that a Hermitian matrix over Q(i) is positive definite (Sylvester)."""
    for k in range(1, len(h) + 1):
        m = det_exact([row[:k] for row in h[:k]])
        if m.im != 0 or m.re <= 0:
            return False
    return True
