import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from frameret.frames import Frame
from frameret.linalg import Subspace, as_array, identity, inner, norm_sq, orthocomplement, rank
from frameret.projections import (
    ProjectionFamily,
    bound_advisories,
    fusion_norm_retrieval,
    ip_transfer_check,
    perp_family,
    proj_measurements,
    rank1_equivalence,
    rank1_family,
    span_criterion_at,
    two_subspace_operator,
    weak_phase_by_projections_check,
)
from frameret.weak_phase import PhaseRelation
from conftest import int_frames, small_ints

R2 = math.sqrt(2)
PHI = [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]
S7_FRAME = [[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1 - R2, 2], [1, 1, 1]]
E = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def fam(*bases):
    return ProjectionFamily.from_bases(bases)


def test_proj_measurements_examples():
    assert proj_measurements(fam([1, 0], [0, 1]), [3, 4]) == [9, 16]
    assert proj_measurements(fam([1, 0], [0, 1]), [3, 4], squared=False) == [3.0, 4.0]
    assert proj_measurements(perp_family(Frame(PHI)), [-1, 1, 0])[0] == 2
    assert proj_measurements(rank1_family(Frame(PHI)), [1, 1, -2])[0] == 0


def test_perp_family_closed_forms():
    P = perp_family(Frame([[1, 1, 1], [1, 1, 0], [0, 0, 1]])).projections
    a, b, c = Fraction(5), Fraction(-2), Fraction(7, 3)
    s = (a + b + c) / 3
    assert list(P[0] @ as_array([a, b, c])) == [a - s, b - s, c - s]
    assert list(P[1] @ as_array([a, b, c])) == [(a - b) / 2, (b - a) / 2, c]
    assert (P[2] == as_array([[1, 0, 0], [0, 1, 0], [0, 0, 0]])).all()


def test_perp_family_rejects_zero():
    with pytest.raises(ValueError):
        perp_family(Frame([[1, 0], [0, 0]], allow_zero=True))


def test_span_criterion_on_root_two_hyperplanes():
    PF = perp_family(Frame(np.array(S7_FRAME)))
    w = span_criterion_at(PF, [1, 1, 1])
    assert w is not None and w.achieved_rank == 2
    S = Subspace(3, w.spanned)
    assert S.contains([1, 0, 0]) and S.contains([0, 1, 0])


def test_span_criterion_phi_hyperplanes():
    PF = perp_family(Frame(PHI))
    # the true projections span R^3 at (1,1,1); the deficient point is (1,1,0)
    assert span_criterion_at(PF, [1, 1, 1]) is None
    w = span_criterion_at(PF, [1, 1, 0])
    assert w is not None and w.achieved_rank == 2 and w.exact


def test_span_criterion_subspace_and_complement():
    W = Subspace(3, [[1, 0, 0], [0, 1, 0]])
    PF = ProjectionFamily((W, orthocomplement(W)))
    w = span_criterion_at(PF, [1, 2, 0])
    assert w.achieved_rank == 1


def test_span_criterion_zero_vector():
    with pytest.raises(ValueError):
        span_criterion_at(fam([1, 0], [0, 1]), [0, 0])


def test_weak_phase_check_examples():
    PF = perp_family(Frame(np.array(S7_FRAME)))
    chk = weak_phase_by_projections_check(PF, [1, 1, 3], [1, 1, -1])
    assert chk.norms_equal and chk.relation is PhaseRelation.INCOMPARABLE and chk.refutes
    chk = weak_phase_by_projections_check(PF, [1, 2, 3], [-1, -2, -3])
    assert chk.relation is PhaseRelation.OPPOSITE_SIGNS and not chk.refutes
    b = Fraction(3)
    lines = rank1_family(Frame([[1, b], [1, -b]]))
    chk = weak_phase_by_projections_check(lines, [1, 1], [b, 1 / b])
    assert chk.norms_equal and chk.relation is PhaseRelation.SAME_SIGNS
    assert norm_sq(as_array([1, 1])) == 2 != norm_sq(as_array([b, 1 / b]))


def test_rank1_equivalence_examples():
    r = rank1_equivalence(Frame([[1, 3], [1, -3]]))
    assert r.identity_holds and r.weak_phase_r2
    r = rank1_equivalence(Frame(E))
    assert r.identity_holds and not r.phase_retrieval.holds
    r = rank1_equivalence(Frame(np.array(S7_FRAME)))
    assert r.identity_holds and r.phase_retrieval.holds


def test_ip_transfer_examples():
    rep = ip_transfer_check(rank1_family(Frame([[1, 1], [1, -1]])), given_wpr=True)
    assert rep.complement_norm_retrieval.holds and rep.transfer_applies
    rep = ip_transfer_check(rank1_family(Frame([[1, 3], [1, -3]])), given_wpr=True)
    assert rep.family_wpr_r2 and rep.complement_wpr_r2
    assert not rep.family_norm_retrieval.holds and not rep.complement_norm_retrieval.holds
    W = Subspace(3, [[1, 1, 0]])
    rep = ip_transfer_check(ProjectionFamily((W, orthocomplement(W))), given_wpr=False)
    assert rep.family_norm_retrieval.holds and rep.complement_norm_retrieval.holds


def test_fusion_norm_retrieval_examples():
    six = fam([[1, 0, 0], [0, 1, 0]], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1])
    assert fusion_norm_retrieval(six).holds
    assert not fusion_norm_retrieval(fam([[1, 1, 0], [0, 1, 0]], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1]),
                                     orthogonalize=False).holds
    r = fusion_norm_retrieval(fam([1, -1, 0], [[0, 1, 0], [0, 0, 1]]))
    assert not r.holds
    PF = fam([1, -1, 0], [[0, 1, 0], [0, 0, 1]])
    assert proj_measurements(PF, r.witness.x) == proj_measurements(PF, r.witness.y)
    assert norm_sq(r.witness.x) != norm_sq(r.witness.y)


def test_two_subspace_disjoint_identity_case():
    res = two_subspace_operator(Subspace(3, [[1, 0, 0]]), Subspace(3, [[0, 1, 0], [0, 0, 1]]))
    assert res.case == "disjoint" and res.norm_retrieval.holds
    assert (res.operator == identity(3)).all()


def test_two_subspace_case1_norms():
    res = two_subspace_operator(Subspace(3, E[:2]), Subspace(3, E[1:]))
    assert res.case == "orthogonal-remainders"
    assert norm_sq(res.y1) == 6 and norm_sq(res.y2) == 9
    PF = res.details["family"]
    assert proj_measurements(PF, res.y1) == proj_measurements(PF, res.y2)


def test_two_subspace_requires_spanning_pair():
    with pytest.raises(ValueError):
        two_subspace_operator(Subspace(3, [[1, 0, 0]]), Subspace(3, [[0, 1, 0]]))


def test_two_subspace_oblique_case():
    T = as_array([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
    res = two_subspace_operator(Subspace(3, E[:2]), Subspace(3, E[1:]), T)
    assert res.case == "oblique-remainders"
    PF = res.details["family"]
    assert proj_measurements(PF, res.y1) == proj_measurements(PF, res.y2)
    assert norm_sq(res.y1) != norm_sq(res.y2)


def test_bound_advisories_examples():
    assert bound_advisories(fam(*E, [1, 1, 1])).phase_retrieval_impossible
    hyper = perp_family(Frame([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]]))
    rep = bound_advisories(hyper)
    assert rep.phase_retrieval_impossible and any("hyperplanes" in o for o in rep.objections)
    assert not bound_advisories(fam(*E, [1, 1, 1], [1, -1, 1])).phase_retrieval_impossible


@given(int_frames(max_n=4, max_m=4))
def test_projections_symmetric_idempotent(rows):
    n = len(rows[0])
    W = Subspace.span(rows, n=n)
    P = W.projection
    assert (P @ P == P).all() and (P.T == P).all()


@given(int_frames(max_n=4, max_m=4), st.data())
def test_perp_projection_kills_normal_and_fixes_complement(rows, data):
    F = Frame(rows)
    PF = perp_family(F)
    for P, v in zip(PF.projections, F.vectors):
        assert not any(P @ v)
        for w in orthocomplement([v]).basis:
            assert list(P @ w) == list(w)


@given(int_frames(max_n=4, max_m=4), st.data())
def test_rank1_identity(rows, data):
    F = Frame(rows)
    x = as_array(data.draw(st.lists(small_ints, min_size=F.dim, max_size=F.dim)))
    for m, v in zip(proj_measurements(rank1_family(F), x), F.vectors):
        assert m * norm_sq(v) == inner(x, v) ** 2


def _random_orthonormal(W: Subspace, rng):
    Q = np.linalg.qr(np.asarray(W.basis, float).T)[0][:, : W.dim]
    R = np.linalg.qr(rng.standard_normal((W.dim, W.dim)))[0]
    return (Q @ R).T


@given(st.lists(int_frames(n=3, max_m=2), min_size=2, max_size=4), st.integers(0, 10**6))
def test_fusion_norm_retrieval_basis_invariance(members, seed):
    subs = [Subspace.span(rows, n=3) for rows in members]
    assume(all(W.dim > 0 for W in subs))
    PF = ProjectionFamily(tuple(subs))
    exact = fusion_norm_retrieval(PF).holds
    rng = np.random.default_rng(seed)
    rotated = Frame(np.vstack([_random_orthonormal(W, rng) for W in subs]), tol=1e-7)
    from frameret.vector_retrieval import does_norm_retrieval
    assert does_norm_retrieval(rotated).holds == exact


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1))), st.integers(0, 10**6))
def test_two_subspace_disjoint_case_is_invertible(nk, seed):
    n, k = nk
    rng = np.random.default_rng(seed)
    M = rng.integers(-3, 4, size=(n, n))
    assume(rank(M.tolist()) == n)
    res = two_subspace_operator(Subspace(n, M[:k].tolist()), Subspace(n, M[k:].tolist()))
    assert res.case == "disjoint" and rank(res.operator) == n and res.norm_retrieval.holds
