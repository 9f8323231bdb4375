from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frameret.frames import Frame
from frameret.linalg import inner, norm_sq
from frameret.vector_retrieval import measurement_pair, side_complements
from frameret.weak_phase import (
    PhaseRelation,
    ScaledDecomposition,
    classify_wpr_r2,
    decompose_scaled,
    disjoint_support_check,
    measurements_equal,
    nonspanning_counterexample,
    opposite_slopes_witness,
    orthogonal_incomparability,
    phase_relation,
    rot90,
    same_sign_slopes_witness,
    sign_products_consistent,
    wpr_full_spark_minimal,
    wpr_necessary_conditions,
    zero_coordinate_witness,
)
from conftest import frac_vec, int_frames, nonzero_ints, positive_rationals, rationals, vectors

FULL_SPARK_NOT_WPR = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -3]]
PHI = [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]


def weak_witness_ok(F, x, y):
    return measurements_equal(F, x, y) and phase_relation(x, y) is PhaseRelation.INCOMPARABLE


def test_phase_relation_examples():
    assert phase_relation([4, 3, 1], [4, -3, -1]) is PhaseRelation.INCOMPARABLE
    assert phase_relation([0, 0, 0], [1, -2, 3]) is PhaseRelation.TRIVIALLY_SAME
    assert phase_relation([1, 0, 2], [-1, 5, -2]) is PhaseRelation.OPPOSITE_SIGNS
    assert phase_relation([1, 0], [0, 1]) is PhaseRelation.TRIVIALLY_SAME
    assert phase_relation([1, 2], [3, 4]) is PhaseRelation.SAME_SIGNS


def test_sign_products_examples():
    assert not sign_products_consistent([4, 3, 1], [4, -3, -1])
    assert sign_products_consistent([1, 1], [-1, -1])
    a = Fraction(3)
    assert not sign_products_consistent([1, 1], [1, -2 / a - 1])


def test_full_spark_frame_with_incomparable_pair():
    F = Frame(FULL_SPARK_NOT_WPR)
    assert weak_witness_ok(F, [4, 3, 1], [4, -3, -1])


def test_classifier_normal_forms():
    assert classify_wpr_r2([1, 1], [1, -1])
    assert classify_wpr_r2([2, 6], [-1, 3])
    assert classify_wpr_r2([1, 3], [1, -3])
    assert not classify_wpr_r2([1, 2], [1, -3])


def test_classifier_zero_input():
    with pytest.raises(ValueError):
        classify_wpr_r2([0, 0], [1, 1])


def test_zero_coordinate_witness_example():
    a = Fraction(2)
    x, y = zero_coordinate_witness(a)
    assert list(x) == [1, 1] and list(y) == [1, -2 / a - 1]
    assert weak_witness_ok(Frame([[1, 0], [1, a]]), x, y)


@given(positive_rationals, positive_rationals)
def test_same_sign_slopes_inner_products(a, b):
    assume(a > b)
    a = max(a, Fraction(1))
    assume(a > b)
    x, y = same_sign_slopes_witness(a, b)
    assert inner(y, frac_vec(1, a)) == 1 + a
    assert inner(y, frac_vec(1, b)) == -(1 + b)
    assert weak_witness_ok(Frame([[1, a], [1, b]]), x, y)


@given(positive_rationals, positive_rationals)
def test_opposite_slopes_sign_conditions(a, b):
    assume(a > b)
    x, y = opposite_slopes_witness(a, b)
    assert y[0] < 0 < y[1]
    assert 2 * a * b * x[1] < a - b
    assert weak_witness_ok(Frame([[1, a], [1, -b]]), x, y)


def test_nonspanning_examples():
    w = nonspanning_counterexample(Frame([[1, 0]]))
    assert w.verified and w.construction == "nonspanning-disjoint"
    assert list(w.x) == [1, 1] and list(w.y) == [1, -1]
    w = nonspanning_counterexample(Frame([[1, 1, 0]]), x=[1, 1, 0], z=[0, 0, 1])
    assert list(w.x) == [1, 1, 1] and list(w.y) == [1, 1, -1]
    w = nonspanning_counterexample(Frame([[1, 1]]), x=[1, 1], z=[1, -1])
    assert w.construction == "nonspanning-overlap" and w.verified
    assert inner(w.x, frac_vec(1, 1)) == inner(w.y, frac_vec(1, 1)) == 2


def test_nonspanning_rejects_spanning_frame():
    with pytest.raises(ValueError):
        nonspanning_counterexample(Frame([[1, 0], [0, 1]]))


def test_necessary_conditions_examples():
    assert wpr_necessary_conditions(Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1]])).definitely_not_wpr
    nc = wpr_necessary_conditions(Frame([[1, 1, 0], [-1, 0, 1], [1, -1, 0], [0, 1, -1]]))
    assert any(f.startswith("full-spark") for f in nc.failed)
    assert not wpr_necessary_conditions(Frame(FULL_SPARK_NOT_WPR)).definitely_not_wpr


def test_decompose_scaled_trivial_cases():
    F = Frame(FULL_SPARK_NOT_WPR)
    assert decompose_scaled(F, [1, 2, 3], [1, 2, 3]) == ScaledDecomposition(1, (0, 1, 2))
    assert decompose_scaled(F, [1, 2, 3], [-1, -2, -3]) == ScaledDecomposition(-1, (0, 1, 2))


def test_decompose_scaled_is_none_without_weak_phase_retrieval():
    F = Frame(FULL_SPARK_NOT_WPR)
    U, V = side_complements(F, (0, 1))
    x, y = measurement_pair(F, (0, 1), U.basis[0], V.basis[0])
    assert decompose_scaled(F, x, y) is None


def test_decompose_scaled_preconditions():
    with pytest.raises(ValueError):
        decompose_scaled(Frame(FULL_SPARK_NOT_WPR), [1, 0, 0], [0, 1, 0])
    with pytest.raises(ValueError):
        decompose_scaled(Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0]]), [1, 0, 0], [1, 0, 0])


def test_phi_frame_is_minimal_wpr():
    assert wpr_full_spark_minimal(Frame(PHI))
    assert not wpr_full_spark_minimal(Frame(FULL_SPARK_NOT_WPR))


def test_disjoint_support_examples():
    rep = disjoint_support_check(Frame(FULL_SPARK_NOT_WPR), (0, 1))
    assert not rep.holds and not rep.vacuous
    rep = disjoint_support_check(Frame(PHI), (0, 1))
    assert rep.holds
    rep = disjoint_support_check(Frame([[1, 0], [0, 1], [1, 1], [1, -1]]), (0, 1))
    assert rep.holds and rep.vacuous


def test_orthogonal_incomparability_examples():
    assert orthogonal_incomparability([1, 1], [1, -1])
    assert orthogonal_incomparability([1, 2, -1], [1, 0, 1])
    with pytest.raises(ValueError):
        orthogonal_incomparability([1, 0], [0, 1])


@st.composite
def r3_wpr_frames(draw):
    a, b, c, s, t = (draw(rationals.filter(bool)) for _ in range(5))
    w = draw(st.sampled_from([1, -1])) * abs(c / b) * t
    return [[a, b, c], [-a, b, c], [s, t, w], [-s, t, w]]


@given(r3_wpr_frames(), st.data())
def test_decompose_scaled_round_trip_on_wpr_frames(rows, data):
    F = Frame(rows)
    try:
        assume(wpr_full_spark_minimal(F))
    except ValueError:
        assume(False)
    I = data.draw(st.sampled_from([(0,), (1,), (2,)]))
    I = tuple(sorted(set(I) | {data.draw(st.sampled_from([k for k in range(3) if k not in I]))}))
    U, V = side_complements(F, I)
    p, q = data.draw(nonzero_ints), data.draw(nonzero_ints)
    u, v = p * U.basis[0], q * V.basis[0]
    # equal norms make x and y disjointly supported; no nonzero a exists then
    assume(norm_sq(u) != norm_sq(v))
    x, y = measurement_pair(F, I, u, v)
    d = decompose_scaled(F, x, y)
    assert d is not None
    assert list(d.apply(y)) == list(x)


@given(vectors(2, nonzero_ints), vectors(2, nonzero_ints))
def test_classifier_witnesses_verify(p, q):
    c = classify_wpr_r2(p, q)
    if not c:
        assert c.witness.verified
        assert weak_witness_ok(Frame([p, q]), c.witness.x, c.witness.y)


@given(vectors(2), vectors(2), st.integers(1, 6), st.integers(1, 6))
def test_classifier_invariances(p, q, s, t):
    base = classify_wpr_r2(p, q).does_wpr
    assert classify_wpr_r2([s * e for e in p], [t * e for e in q]).does_wpr == base
    assert classify_wpr_r2(q, p).does_wpr == base
    assert classify_wpr_r2(rot90(p), rot90(q)).does_wpr == base


@given(st.integers(2, 5).flatmap(lambda n: int_frames(n=n, max_m=n - 1)))
def test_nonspanning_witnesses_verify(rows):
    F = Frame(rows)
    w = nonspanning_counterexample(F)
    assert w.verified and weak_witness_ok(F, w.x, w.y)


@pytest.mark.parametrize("n", [3, 4])
def test_sign_products_match_phase_relation_on_all_sign_patterns(n):
    mags = [1, 2, 3, 5][:n]
    for sx in product([1, -1], repeat=n):
        for sy in product([1, -1], repeat=n):
            x = [a * b for a, b in zip(sx, mags)]
            y = list(sy)
            weak = phase_relation(x, y) in (PhaseRelation.SAME_SIGNS, PhaseRelation.OPPOSITE_SIGNS)
            assert sign_products_consistent(x, y) == weak


@given(st.integers(2, 6).flatmap(lambda n: st.tuples(vectors(n, nonzero_ints), vectors(n, nonzero_ints))))
def test_sign_products_match_phase_relation_on_dense_vectors(xy):
    x, y = xy
    weak = phase_relation(x, y) in (PhaseRelation.SAME_SIGNS, PhaseRelation.OPPOSITE_SIGNS)
    assert sign_products_consistent(x, y) == weak


@given(vectors(3), vectors(3))
def test_phase_relation_symmetric_and_flip_invariant(x, y):
    r = phase_relation(x, y)
    assert phase_relation(y, x) is r
    neg = phase_relation(x, [-e for e in y])
    swap = {PhaseRelation.SAME_SIGNS: PhaseRelation.OPPOSITE_SIGNS,
            PhaseRelation.OPPOSITE_SIGNS: PhaseRelation.SAME_SIGNS}
    assert neg is swap.get(r, r)


def test_float_mode_relation_uses_tolerance():
    assert phase_relation(np.array([1e-12, 1.0]), np.array([-1.0, 1.0]), tol=1e-9) is PhaseRelation.SAME_SIGNS
