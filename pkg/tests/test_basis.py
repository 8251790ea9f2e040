import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import _gen
from whitney import scalar as sc
from whitney.basis import (AdS22Plus, GroupHDS, HalfPlane, HyperboloidMinus, RealLine, Sphere2,
                           family_from_config, laplacian_defect)
from whitney.geometry import HyperbolicCoords, from_hyperbolic, to_hyperbolic

F = Fraction
G = sc.GaussianRational


def test_ads_nodes():
    fam = AdS22Plus()
    nd = fam.node(fam.make_point(["1", "0", "0", "0"], sc.EXACT))
    assert nd.d == 1 and nd.v == 1
    nd = fam.node(fam.make_point(["5/3", "0", "4/3", "0"], sc.EXACT))
    assert nd.d == 1 and nd.v == G(F(3, 5))


def test_hyperboloid_minus_node_at_t0():
    fam = HyperboloidMinus(2, 2)
    x = from_hyperbolic(HyperbolicCoords((1.0, 0.0), (1.0, 0.0), 0.0), fam.signature)
    nd = fam.node(x)
    assert nd.d == 1 and nd.v == 1


def test_sphere_and_half_plane_values():
    s = Sphere2()
    assert s.eval(2, s.make_point(["0", "1", "0"], sc.EXACT)) == -1
    pole = s.make_point(["0", "0", "1"], sc.EXACT)
    assert all(s.eval(ell, pole) == 0 for ell in range(1, 6))
    h = HalfPlane()
    assert h.eval(2, h.make_point("i", sc.EXACT)) == G(F(-1, 4))


def test_ell_ranges():
    assert AdS22Plus().ell_range(3) == [2, 3, 4]
    assert HyperboloidMinus(3, 2).ell_range(2) == [1, 2]
    assert RealLine().ell_range(4) == [0, 1, 2, 3]
    assert Sphere2().ell_range(2) == [1, 2]
    assert GroupHDS("SU", 1, 1).ell_range(2) == [2, 3]


def test_laplacian_examples():
    s = Sphere2()
    assert laplacian_defect(s, 1, (1, 2, 3)) < 1e-6
    assert laplacian_defect(s, 2, (1, 0, 0), relative=True) < 1e-6
    rng = random.Random(3)
    x = [rng.uniform(-0.5, 0.5) for _ in range(3)]
    assert laplacian_defect(s, 5, x, relative=True) <= 1e-5


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([1, -1]))
def test_ads_equivariance(seed, orientation):
    """ψ(κ_t x) = e^{±iℓt} ψ(x), the sign set by the orientation."""
    from whitney.geometry import apply_block_rotation, kappa
    rng = random.Random(seed)
    fam = AdS22Plus(orientation)
    x = _gen.random_float_point(fam.signature, rng)
    t = rng.uniform(-3, 3)
    ell = rng.randint(2, 15)
    lhs = fam.eval(ell, apply_block_rotation(x, kappa(t)))
    rhs = cmath.exp(orientation * 1j * ell * t) * fam.eval(ell, x)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_hyperboloid_minus_chart_agrees(seed):
    rng = random.Random(seed)
    p, q = rng.randint(1, 4), 2 * rng.randint(1, 2)
    fam = HyperboloidMinus(p, q)
    x = _gen.random_float_point(fam.signature, rng)
    ell = rng.randint(fam.ell_min, fam.ell_min + 8)
    assert abs(fam.eval(ell, x) - fam.eval_chart(ell, to_hyperbolic(x))) <= 1e-12


def test_hyperboloid_minus_phase_under_rotation():
    rng = random.Random(11)
    fam = HyperboloidMinus(2, 4)
    from whitney.perturb import cayley
    for _ in range(20):
        x = _gen.generic_point(fam.signature, rng)
        rot = cayley(_gen.rand_fraction(rng, 6))
        y = fam.rotate(x, rot)
        assert fam.node(y).v == rot.unit ** fam.phase_sign * fam.node(x).v
        assert fam.node(y).d == fam.node(x).d


def test_exact_float_agree():
    rng = random.Random(4)
    fam = AdS22Plus()
    x = _gen.generic_point(fam.signature, rng)
    xf = x.to_float()
    for ell in range(2, 8):
        assert abs(complex(fam.eval(ell, x)) - fam.eval(ell, xf)) <= 1e-12 * abs(fam.eval(ell, xf))


def test_family_from_config():
    assert family_from_config({"kind": "ads22", "orientation": -1}) == AdS22Plus(-1)
    fam = family_from_config({"kind": "hyperboloid_minus", "p": 3, "q": 2})
    assert (fam.p, fam.q) == (3, 2)
    with pytest.raises(ValueError):
        family_from_config({"kind": "torus"})
    with pytest.raises(ValueError):
        HyperboloidMinus(2, 1)
