from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from whitney import scalar as sc
from whitney.errors import DivisionByZero, ModeMixError

G = sc.GaussianRational

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 1000)
gaussians = st.builds(G, fractions, fractions)


def test_invert_examples():
    assert sc.invert(G(1)) == G(1)
    assert sc.invert(G(3, 4)) == G(Fraction(3, 25), Fraction(-4, 25))
    assert sc.invert(G(Fraction(1, 2))) == G(2)


def test_invert_zero_raises():
    with pytest.raises(DivisionByZero):
        sc.invert(G(0))


def test_int_power_examples():
    assert sc.int_power(G(1, 1), 2) == G(0, 2)
    assert sc.int_power(G(7, -3), 0) == G(1)
    assert sc.int_power(G(2), -3) == G(Fraction(1, 8))


def test_float_power_matches_builtin():
    z = 0.3 + 0.7j
    assert abs(sc.int_power(z, -5) - z ** -5) < 1e-12 * abs(z ** -5)


@given(gaussians.filter(bool))
def test_inverse_is_two_sided(z):
    assert z * sc.invert(z) == 1
    assert sc.invert(sc.invert(z)) == z


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@given(gaussians.filter(bool), st.integers(-6, 6), st.integers(-6, 6))
def test_power_laws(z, j, k):
    assert sc.int_power(z, j) * sc.int_power(z, k) == sc.int_power(z, j + k)


@given(gaussians)
def test_norm_is_conjugate_product(z):
    assert z * z.conjugate() == z.norm()


@given(gaussians)
def test_format_parse_round_trip(z):
    assert sc.parse_exact(sc.format_exact(z)) == z
    assert sc.from_json(sc.to_json(z), sc.EXACT) == z


@pytest.mark.parametrize("text,value", [
    ("3/4", G(Fraction(3, 4))), ("2i", G(0, 2)), ("1-i", G(1, -1)), ("-i", G(0, -1)),
    ("1/2+3/4 i", G(Fraction(1, 2), Fraction(3, 4))),
])
def test_parse_forms(text, value):
    assert sc.parse_exact(text) == value


def test_exact_mode_rejects_floats():
    with pytest.raises(ModeMixError):
        sc.from_json(0.5, sc.EXACT)


def test_float_json():
    assert sc.from_json([1.5, -2.0], sc.FLOAT) == complex(1.5, -2.0)
    assert sc.to_json(1 + 2j) == [1.0, 2.0]


def test_exact_and_complex_agree():
    a, b = G(Fraction(2, 3), 5), G(-1, Fraction(1, 7))
    assert abs(complex(a / b) - complex(a) / complex(b)) < 1e-15
