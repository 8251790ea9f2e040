"""Pure-Python reference implementations of the complex-double kernels."""

import numpy as np


def _cpow(z, k):
    result = 1 + 0j
    while k:
        if k & 1:
            result *= z
        k >>= 1
        if k:
            z *= z
    return result


def solve_dense(matrix, rhs):
    """Gaussian elimination with partial pivoting on complex doubles."""
    n = len(rhs)
    a = [[complex(v) for v in row] + [complex(b)] for row, b in zip(matrix, rhs)]
    for k in range(n):
        piv = max(range(k, n), key=lambda r: abs(a[r][k]))
        if a[piv][k] == 0:
            raise ZeroDivisionError(f"singular matrix (zero pivot in column {k})")
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
        rk = a[k]
        inv = 1 / rk[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k] * inv
            if f:
                for j in range(k + 1, n + 1):
                    ri[j] -= f * rk[j]
            ri[k] = 0j
    x = [0j] * n
    for k in range(n - 1, -1, -1):
        acc = a[k][n]
        row = a[k]
        for j in range(k + 1, n):
            acc -= row[j] * x[j]
        x[k] = acc / row[k]
    return np.array(x, dtype=complex)


def horner_eval(coeffs, ell_min, d, v):
    """``d_i * v_i**ell_min * sum_k coeffs[k] * v_i**k`` for every point."""
    coeffs = [complex(c) for c in coeffs]
    out = []
    for di, vi in zip(d, v):
        vi = complex(vi)
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * vi + c
        if ell_min >= 0:
            scale = _cpow(vi, ell_min)
        else:
            scale = _cpow(1 / vi, -ell_min)
        out.append(complex(di) * scale * acc)
    return np.array(out, dtype=complex)


def esym_all(values):
    """Elementary symmetric polynomials e_0..e_n by the prefix recurrence."""
    e = [1 + 0j] + [0j] * len(values)
    for k, x in enumerate(values, start=1):
        x = complex(x)
        for m in range(k, 0, -1):
            e[m] += x * e[m - 1]
    return np.array(e, dtype=complex)


def power_matrix(d, v, ell_min, n):
    rows = []
    for di, vi in zip(d, v):
        vi = complex(vi)
        if ell_min >= 0:
            cur = complex(di) * _cpow(vi, ell_min)
        else:
            cur = complex(di) * _cpow(1 / vi, -ell_min)
        row = []
        for _ in range(n):
            row.append(cur)
            cur *= vi
        rows.append(row)
    return np.array(rows, dtype=complex).reshape(len(rows), n)
