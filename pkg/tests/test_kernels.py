import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import whitney._kernels as K

BACKENDS = [pytest.param(K.python, id="python")]
if K.compiled is not None:
    BACKENDS.append(pytest.param(K.compiled, id="cython"))


def _rand_complex(rng, n):
    return [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(n)]


@pytest.mark.parametrize("impl", BACKENDS)
def test_solve_dense_matches_numpy(impl):
    rng = random.Random(1)
    for n in range(1, 12):
        m = [_rand_complex(rng, n) for _ in range(n)]
        b = _rand_complex(rng, n)
        x = impl.solve_dense(m, b)
        assert np.allclose(x, np.linalg.solve(np.array(m), np.array(b)), rtol=1e-10, atol=1e-12)


@pytest.mark.parametrize("impl", BACKENDS)
def test_solve_dense_singular(impl):
    with pytest.raises(ZeroDivisionError):
        impl.solve_dense([[1, 2], [2, 4]], [1, 1])


@pytest.mark.parametrize("impl", BACKENDS)
def test_esym_all(impl):
    assert np.allclose(impl.esym_all([2, 3, 5]), [1, 10, 31, 30])
    assert np.allclose(impl.esym_all([]), [1])


@pytest.mark.parametrize("impl", BACKENDS)
def test_power_matrix_and_horner(impl):
    rng = random.Random(2)
    d, v = _rand_complex(rng, 5), _rand_complex(rng, 5)
    coeffs = _rand_complex(rng, 4)
    for ell_min in (-2, 0, 3):
        pm = impl.power_matrix(d, v, ell_min, 4)
        ref = np.array([[di * vi ** (ell_min + k) for k in range(4)] for di, vi in zip(d, v)])
        assert np.allclose(pm, ref, rtol=1e-12)
        assert np.allclose(impl.horner_eval(coeffs, ell_min, d, v), ref @ np.array(coeffs),
                           rtol=1e-12)


@pytest.mark.skipif(K.compiled is None, reason="compiled kernels not built")
@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10))
def test_backends_agree(seed, n):
    rng = random.Random(seed)
    vals = _rand_complex(rng, n)
    assert np.allclose(K.python.esym_all(vals), K.compiled.esym_all(vals), rtol=1e-12)
    m = [_rand_complex(rng, n) for _ in range(n)]
    b = _rand_complex(rng, n)
    if abs(np.linalg.det(np.array(m))) > 1e-6:
        assert np.allclose(K.python.solve_dense(m, b), K.compiled.solve_dense(m, b),
                           rtol=1e-9, atol=1e-12)
    d, v = _rand_complex(rng, n), _rand_complex(rng, n)
    assert np.allclose(K.python.horner_eval(vals, 2, d, v), K.compiled.horner_eval(vals, 2, d, v))


def test_backend_name():
    assert K.BACKEND in ("python", "cython")
