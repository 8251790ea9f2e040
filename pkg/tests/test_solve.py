import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import _gen
from whitney import scalar as sc
from whitney.basis import AdS22Plus, BasisNode, HyperboloidMinus, RealLine
from whitney.errors import (IndexOutOfRange, MissingPerturbationRecord, NonConstantViolation,
                            NotInGeneralPosition, SingularSystem, ToleranceUnreachable)
from whitney.perturb import Dataset
from whitney.solve import (EXACT_CORRECTED, WhitneyExtension, closed_form_coefficients,
                           elementary_symmetric, exact_correct, fit, maximize_summands,
                           representation_report, residual, system_determinant,
                           vandermonde_solve)

F = Fraction
G = sc.GaussianRational
FAM = AdS22Plus()


def pt(*c):
    return FAM.make_point([str(v) for v in c], sc.EXACT)


PAIR = [pt(1, 0, 0, 0), pt(F(5, 3), 0, F(4, 3), 0)]
SHARED = [pt(F(5, 3), 0, F(4, 3), 0), pt(F(5, 3), 0, 0, F(4, 3))]


def test_elementary_symmetric_examples():
    assert elementary_symmetric([7, 8], 0) == 1
    assert elementary_symmetric([2, 3], 1) == 5
    assert elementary_symmetric([2, 3, 5], 2) == 31
    with pytest.raises(IndexOutOfRange):
        elementary_symmetric([2, 3], 3)


@given(st.lists(st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9)), max_size=7),
       st.integers(0, 7))
def test_elementary_symmetric_matches_enumeration(vals, m):
    vals = [G(v) for v in vals]
    if m > len(vals):
        return
    assert elementary_symmetric(vals, m) == _gen.esym_enumerate(vals, m)


def test_solve_examples():
    one = [BasisNode(G(1), G(1))]
    assert vandermonde_solve(one, [G(5)], [2]) == [G(5)]
    nodes = [FAM.node(x) for x in PAIR]
    expected = [G(F(125, 18)), G(F(-125, 18))]
    assert vandermonde_solve(nodes, [G(0), G(1)], [2, 3]) == expected
    assert closed_form_coefficients(nodes, [G(0), G(1)], [2, 3]) == expected
    assert closed_form_coefficients(nodes, [G(0), G(0)], [2, 3]) == [G(0), G(0)]
    assert closed_form_coefficients([FAM.node(PAIR[0])], [G(7)], [2]) == [G(7)]


def test_solve_matches_cramer():
    nodes = [FAM.node(x) for x in PAIR]
    m = [[nd.d * nd.v ** ell for ell in (2, 3)] for nd in nodes]
    assert _gen.cramer2(m, [G(0), G(1)]) == vandermonde_solve(nodes, [G(0), G(1)], [2, 3])


def test_realline_example():
    fam = RealLine()
    pts = [fam.make_point(str(v), sc.EXACT) for v in (0, 1, 2)]
    e = fit(Dataset(pts, [G(0), G(1), G(4)], fam))
    assert e.coeffs == [G(0), G(0), G(1)]
    assert e.evaluate(fam.make_point("3", sc.EXACT)) == 9


def test_singular_system_reports_pair():
    nodes = [FAM.node(x) for x in SHARED]
    with pytest.raises(SingularSystem) as info:
        vandermonde_solve(nodes, [G(0), G(1)], [2, 3])
    assert info.value.pair == (0, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_determinant_product_formula(seed):
    rng = random.Random(seed)
    pts, _ = _gen.ads_dataset(rng, rng.randint(1, 5))
    nodes = [FAM.node(x) for x in pts]
    from whitney.solve import product_formula_determinant, system_matrix
    ells = FAM.ell_range(len(nodes))
    assert system_determinant(nodes, ells) == _gen.cofactor_det(system_matrix(nodes, ells))
    assert system_determinant(nodes, ells) == product_formula_determinant(nodes, ells[0])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_fit_interpolates_exactly(seed):
    rng = random.Random(seed)
    pts, ys = _gen.ads_dataset(rng, rng.randint(1, 7))
    e = fit(Dataset(pts, ys, FAM))
    assert [e.evaluate(x) for x in pts] == ys
    assert e.residual == 0
    assert not e.perturbation.any_moved()


def test_fit_on_distinct_data_has_zero_perturbation():
    e = fit(Dataset(PAIR, [G(0), G(1)], FAM))
    assert e.residual == 0
    assert all(ent.epsilon == 0 for ent in e.perturbation.entries)


def test_shared_projection_with_equal_values_meets_tolerance():
    """Colliding points that carry the same value can be interpolated within ε."""
    d = Dataset(SHARED + [pt(F(3, 5), F(4, 5), 0, 0)], [G(1), G(1), G(0)], FAM)
    e = fit(d, FAM, F(1, 10**6))
    assert e.perturbation.any_moved()
    assert residual(e, d) < 1e-6


def test_shared_projection_with_different_values_is_unreachable():
    d = Dataset(SHARED, [G(0), G(1)], FAM)
    with pytest.raises(ToleranceUnreachable) as info:
        fit(d, FAM, F(1, 10**6))
    assert info.value.extension is not None
    e = fit(d, FAM, F(1, 10**6), require_tolerance=False)
    c = exact_correct(e, d)
    assert [c.evaluate(x) for x in SHARED] == [G(0), G(1)]


def test_constant_values_rejected():
    with pytest.raises(NonConstantViolation):
        fit(Dataset(PAIR, [G(3), G(3)], FAM))


def test_general_position_failure_raises():
    pts = [pt(0, F(5, 3), F(4, 3), 0), pt(0, 1, 0, 0), pt(0, F(13, 5), 0, F(12, 5))]
    with pytest.raises(NotInGeneralPosition):
        fit(Dataset(pts, [G(0), G(1), G(2)], FAM))


def test_residual_examples():
    x = pt(1, 0, 0, 0)
    d = Dataset([x], [G(5)], FAM)
    e = fit(d)
    assert residual(e, d) == 0
    off = WhitneyExtension(FAM, [2], [G(6)])
    assert residual(off, d) == abs(complex(FAM.eval(2, x)))


def test_representation_report_examples():
    rep = representation_report(WhitneyExtension(FAM, [2, 3], [G(F(125, 18)), G(F(-125, 18))]))
    assert rep.summands == [2, 3] and rep.maximal
    assert representation_report(WhitneyExtension(FAM, [2], [G(5)])).summands == [2]
    rep = representation_report(WhitneyExtension(FAM, [2, 3], [G(0), G(1)]))
    assert rep.summands == [3] and not rep.maximal
    assert rep.phi_indices == [1]


def _engineered(rng, n=2):
    pts, _ = _gen.ads_dataset(rng, n)
    ys = [FAM.node(x).v ** 3 for x in pts]
    return Dataset(pts, ys, FAM)


def test_maximize_leaves_full_fit_unchanged():
    d = Dataset(PAIR, [G(0), G(1)], FAM)
    e = maximize_summands(d, FAM, F(1, 1000))
    assert e.delta == 0 and e.coeffs == fit(d).coeffs


def test_maximize_two_point_engineered():
    rng = random.Random(8)
    d = _engineered(rng)
    assert fit(d).coeffs[0] == 0
    e = maximize_summands(d, FAM, F(1, 1000))
    assert e.delta != 0
    assert all(e.coeffs)
    assert representation_report(e).maximal
    assert e.residual < 1e-3


def test_exact_correct_zero_perturbation_is_identity():
    rng = random.Random(2)
    pts, ys = _gen.ads_dataset(rng, 4)
    d = Dataset(pts, ys, FAM)
    e = fit(d)
    c = exact_correct(e, d)
    assert c.mode == EXACT_CORRECTED
    x = _gen.generic_point(FAM.signature, rng)
    assert c.evaluate(x) == e.evaluate(x)


def test_exact_correct_decays_far_away():
    d = Dataset(SHARED, [G(0), G(1)], FAM)
    e = fit(d, FAM, F(1, 100), require_tolerance=False)
    c = exact_correct(e, d)
    far = FAM.make_point(["30", "40", "0", str(math.sqrt(2499))], sc.FLOAT)
    assert abs(complex(c.evaluate(far)) - complex(e.evaluate(far))) <= 1e-9


def test_exact_correct_needs_record():
    with pytest.raises(MissingPerturbationRecord):
        exact_correct(WhitneyExtension(FAM, [2], [G(1)]))


def test_hyperboloid_minus_exact_fit():
    rng = random.Random(21)
    fam = HyperboloidMinus(2, 2)
    pts = []
    while len(pts) < 4:
        x = _gen.generic_point(fam.signature, rng)
        if fam.node(x).v and all(fam.node(x).v != fam.node(y).v for y in pts):
            pts.append(x)
    ys = [G(k, 1) for k in range(4)]
    e = fit(Dataset(pts, ys, fam))
    assert [e.evaluate(x) for x in pts] == ys


def test_float_fit_accuracy():
    rng = random.Random(9)
    pts = [_gen.random_float_point(FAM.signature, rng) for _ in range(6)]
    ys = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in pts]
    e = fit(Dataset(pts, ys, FAM), FAM, 1e-6)
    assert max(abs(e.evaluate(x) - y) for x, y in zip(pts, ys)) < 1e-6
    vals = e.evaluate_many(pts)
    assert max(abs(a - b) for a, b in zip(vals, ys)) < 1e-6
