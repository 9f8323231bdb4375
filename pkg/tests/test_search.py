import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from frameret.frames import Frame
from frameret.linalg import inner, norm_sq
from frameret.projections import ProjectionFamily, perp_family, proj_measurements, rank1_family
from frameret.search import (
    SearchBudget,
    norm_retrieval_sampling_oracle,
    one_parameter_witness,
    projection_pr_falsify,
    projection_wpr_falsify,
    wpr_falsify,
)
from frameret.vector_retrieval import does_norm_retrieval, does_phase_retrieval
from frameret.weak_phase import PhaseRelation, classify_wpr_r2, measurements_equal, phase_relation
from conftest import int_frames, nonzero_ints, vectors

R2 = math.sqrt(2)
S7_FRAME = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1 - R2, 2], [1, 1, 1]]
RIESZ = [[1, 1, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1]]
SMALL = SearchBudget(trials=300, seed=7, samples=16)


def sound(F, w):
    return measurements_equal(F, w.x, w.y) and phase_relation(w.x, w.y) is PhaseRelation.INCOMPARABLE


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(trials=0)
    with pytest.raises(ValueError):
        SearchBudget(seed=-1)


def test_full_spark_non_wpr_frame_is_refuted():
    F = Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -3]])
    r = wpr_falsify(F)
    assert r.found and sound(F, r.witness) and r.stats["sampled"] == 0


def test_known_pair_arises_from_its_partition():
    F = Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -3]])
    # x - y = (0,6,2) is orthogonal to x_1 and x_4, x + y = (8,0,0) to x_2 and x_3
    w = one_parameter_witness(F, (1, 2), [8, 0, 0], [0, 6, 2])
    assert w is not None and sound(F, w)
    assert inner(np.array([0, 6, 2]), F.vectors[0]) == 0 and inner(np.array([0, 6, 2]), F.vectors[3]) == 0


def test_r2_wpr_pair_is_exhausted_completely():
    r = wpr_falsify(Frame([[1, 1], [1, -1]]))
    assert not r.found and r.complete


def test_r2_same_sign_slopes_refuted():
    F = Frame([[1, 2], [1, 3]])
    r = wpr_falsify(F)
    assert r.found and sound(F, r.witness)
    assert not classify_wpr_r2([1, 2], [1, 3])


def test_nonspanning_input_redirected():
    r = wpr_falsify(Frame([[1, 0, 0], [0, 1, 0]]))
    assert r.found and r.stats.get("nonspanning")


def test_sampled_partitions_are_not_complete():
    F = Frame([[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [0, 0, 1, 1]])
    r = wpr_falsify(F, SMALL)
    assert r.stats["sampled"] >= 1
    assert r.found or not r.complete


def test_projection_pr_falsify_root_two_family():
    PF = perp_family(Frame(np.array(S7_FRAME)))
    r = projection_pr_falsify(PF, SearchBudget(trials=2000, seed=1))
    assert r.found and r.witness.achieved_rank < 3


def test_projection_pr_falsify_phi_family():
    PF = perp_family(Frame([[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]))
    r = projection_pr_falsify(PF, SearchBudget(trials=2000, seed=1))
    assert r.found and r.witness.achieved_rank == 2 and r.witness.exact


def test_projection_pr_falsify_coordinate_lines():
    PF = ProjectionFamily.from_bases([[0, 1], [1, 0]])
    r = projection_pr_falsify(PF, SearchBudget(trials=500, seed=1))
    assert r.found and r.witness.achieved_rank == 1


def test_projection_wpr_falsify_root_two_family():
    PF = perp_family(Frame(np.array(S7_FRAME)))
    r = projection_wpr_falsify(PF, SearchBudget(trials=2000, seed=1))
    assert r.found
    w = r.witness
    assert np.allclose(proj_measurements(PF, w.x, squared=True), proj_measurements(PF, w.y, squared=True))
    assert phase_relation(w.x, w.y, 1e-9) is PhaseRelation.INCOMPARABLE


def test_oracle_examples():
    r = norm_retrieval_sampling_oracle(Frame(RIESZ), SearchBudget(trials=2000, seed=1))
    assert r.found and r.witness.norm_gap != 0
    r = norm_retrieval_sampling_oracle(Frame([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), SearchBudget(trials=2000))
    assert not r.found
    b = Fraction(3)
    F = Frame([[1, b], [1, -b]])
    r = norm_retrieval_sampling_oracle(F, SearchBudget(trials=2000, seed=1))
    assert r.found and measurements_equal(F, r.witness.x, r.witness.y)
    # every gap for this frame comes from the (1,1) versus (b,1/b) scale class
    x, y = r.witness.x, r.witness.y
    assert norm_sq(x) != norm_sq(y)


@given(int_frames(max_n=3, max_m=5), st.integers(0, 2**32))
def test_wpr_falsify_is_deterministic(rows, seed):
    F = Frame(rows)
    b = SearchBudget(trials=100, seed=seed, samples=8)
    r1, r2 = wpr_falsify(F, b), wpr_falsify(F, b)
    assert r1.stats == r2.stats
    assert r1.found == r2.found
    if r1.found:
        assert list(r1.witness.x) == list(r2.witness.x) and list(r1.witness.y) == list(r2.witness.y)


@given(int_frames(max_n=3, max_m=5))
def test_wpr_falsify_witnesses_are_sound(rows):
    F = Frame(rows)
    r = wpr_falsify(F, SMALL)
    if r.found:
        assert r.witness.verified and sound(F, r.witness)
    if does_phase_retrieval(F).holds:
        assert not r.found


@given(vectors(2, nonzero_ints), vectors(2, nonzero_ints))
def test_falsifier_agrees_with_classifier(p, q):
    F = Frame([p, q])
    r = wpr_falsify(F)
    assert r.found or r.complete
    assert r.found == (not classify_wpr_r2(p, q).does_wpr)


@given(int_frames(max_n=3, max_m=5), st.integers(0, 1000))
def test_oracle_never_contradicts_exact_verdicts(rows, seed):
    F = Frame(rows)
    r = norm_retrieval_sampling_oracle(F, SearchBudget(trials=200, seed=seed))
    if r.found:
        assert not does_norm_retrieval(F).holds
        assert not does_phase_retrieval(F).holds
        assert r.witness.norm_gap != 0


def test_projection_falsifier_deterministic():
    PF = rank1_family(Frame([[1, 2, 0], [0, 1, 1], [1, 0, 1]]))
    b = SearchBudget(trials=300, seed=5)
    r1, r2 = projection_pr_falsify(PF, b), projection_pr_falsify(PF, b)
    assert r1.stats == r2.stats
    assert (r1.witness is None) == (r2.witness is None)
