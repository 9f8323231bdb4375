"""Registry of reference examples with known numeric outcomes.

Each entry recomputes a worked example from scratch and compares it with the
expected values. ``run`` produces the regression table shown by the
``examples`` subcommand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .frames import Frame, is_full_spark, spark
from .linalg import Subspace, as_array, inner, norm_sq, rank
from .projections import (
    ProjectionFamily,
    bound_advisories,
    fusion_norm_retrieval,
    ip_transfer_check,
    perp_family,
    proj_measurements,
    span_criterion_at,
    two_subspace_operator,
)
from .search import SearchBudget, projection_pr_falsify, projection_wpr_falsify, wpr_falsify
from .vector_retrieval import does_norm_retrieval, does_phase_retrieval, side_complements
from .weak_phase import (
    PhaseRelation,
    classify_wpr_r2,
    measurements_equal,
    opposite_slopes_witness,
    phase_relation,
    same_sign_slopes_witness,
    wpr_full_spark_minimal,
    wpr_necessary_conditions,
    zero_coordinate_witness,
)


@dataclass(frozen=True)
class CheckResult:
    id: str
    passed: bool
    detail: str
    flag: str | None = None
    values: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Example:
    id: str
    summary: str
    run: Callable[[], CheckResult]


REGISTRY: dict[str, Example] = {}


def _register(id: str, summary: str):
    def deco(fn):
        def run() -> CheckResult:
            passed, detail, *rest = fn()
            flag = rest[0] if rest else None
            values = rest[1] if len(rest) > 1 else {}
            return CheckResult(id, bool(passed), detail, flag, values)

        REGISTRY[id] = Example(id, summary, run)
        return fn

    return deco


def _e(n: int, i: int) -> list[int]:
    return [1 if k == i else 0 for k in range(n)]


FULL_SPARK_NOT_WPR = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, -3]]
PHI_R3 = [[1, 1, 1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]]
SPARK3_FRAME = [[1, 1, 0], [-1, 0, 1], [1, -1, 0], [0, 1, -1]]
RIESZ_VECTORS = [[1, 1, 0], [0, 1, 0], [0, 0, 1], [0, 1, 1], [1, 0, 1]]


def hyperplane_pr_frame() -> Frame:
    """Five full spark vectors of R^3 whose perpendicular hyperplanes fail weak phase retrieval."""
    r2 = math.sqrt(2)
    return Frame(np.array([[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1 - r2, 2], [1, 1, 1]], dtype=float))


@_register("onb-fails-phase", "an orthonormal basis fails the complement property at I = {0}")
def _onb():
    F = Frame([_e(3, 0), _e(3, 1), _e(3, 2)])
    pr = does_phase_retrieval(F)
    nr = does_norm_retrieval(F)
    return (not pr.holds and pr.partition == (0,) and nr.holds,
            f"phase retrieval {pr.holds} at partition {pr.partition}; norm retrieval {nr.holds}")


@_register("four-vectors-r3-no-phase", "four vectors never do phase retrieval in R^3")
def _four():
    F = Frame(PHI_R3)
    pr = does_phase_retrieval(F)
    return not pr.holds, pr.certificate


@_register("zero-coordinate-witness", "{(1,0),(1,a)} with a = 2 fails via x=(1,1), y=(1,-2)")
def _x5():
    F = Frame([[1, 0], [1, 2]])
    x, y = zero_coordinate_witness(2)
    ok = list(y) == [1, -2] and measurements_equal(F, x, y)
    rel = phase_relation(x, y)
    return ok and rel is PhaseRelation.INCOMPARABLE, f"y = {list(map(str, y))}, relation {rel.value}"


@_register("same-sign-slopes-witness", "{(1,a),(1,b)} with a=3, b=1/2: <y,x1> = 1+a, <y,x2> = -(1+b)")
def _x6():
    a, b = Fraction(3), Fraction(1, 2)
    x, y = same_sign_slopes_witness(a, b)
    ip1, ip2 = inner(y, as_array([1, a])), inner(y, as_array([1, b]))
    return (ip1 == 1 + a and ip2 == -(1 + b)
            and phase_relation(x, y) is PhaseRelation.INCOMPARABLE), f"<y,x1> = {ip1}, <y,x2> = {ip2}"


@_register("opposite-slopes-witness", "{(1,a),(1,-b)} with a=3, b=1 fails with b1 < 0 < b2")
def _l3():
    a, b = Fraction(3), Fraction(1)
    x, y = opposite_slopes_witness(a, b)
    F = Frame([[1, a], [1, -b]])
    return (y[0] < 0 < y[1] and measurements_equal(F, x, y)
            and phase_relation(x, y) is PhaseRelation.INCOMPARABLE), f"y = ({y[0]}, {y[1]})"


@_register("r2-wpr-normal-form", "{(1,1),(1,-1)} and {(1,3),(1,-3)} do weak phase retrieval")
def _t10():
    ok = classify_wpr_r2([1, 1], [1, -1]).does_wpr and classify_wpr_r2([1, 3], [1, -3]).does_wpr
    f = wpr_falsify(Frame([[1, 1], [1, -1]]))
    return ok and not f.found and f.complete, f"classifier true; exact decider stats {f.stats}"


@_register("full-spark-not-wpr", "{e1,e2,e3,(1,1,-3)} is full spark but x=(4,3,1), y=(4,-3,-1) refute WPR")
def _ex1():
    F = Frame(FULL_SPARK_NOT_WPR)
    x, y = as_array([4, 3, 1]), as_array([4, -3, -1])
    rel = phase_relation(x, y)
    found = wpr_falsify(F)
    ok = spark(F) == 4 and measurements_equal(F, x, y, 0.0) and rel is PhaseRelation.INCOMPARABLE and found.found
    return ok, f"spark {spark(F)}, relation {rel.value}, falsifier witness {found.found}"


@_register("phi-wpr-r3", "(1,1,1),(-1,1,1),(1,-1,1),(1,1,-1) do weak phase retrieval")
def _phi():
    F = Frame(PHI_R3)
    f = wpr_falsify(F)
    ok = is_full_spark(F) and wpr_full_spark_minimal(F) and not f.found and f.complete
    return ok, f"exact decider finds no witness over {f.stats['partitions']} partitions"


@_register("phi-hyperplanes-span", "hyperplanes phi_i^perp fail phase retrieval: span{P_i(1,1,0)} has rank 2")
def _ex2_span():
    PF = perp_family(Frame(PHI_R3))
    at_ones = span_criterion_at(PF, [1, 1, 1])
    w = span_criterion_at(PF, [1, 1, 0])
    a, b, c = Fraction(2), Fraction(3), Fraction(5)
    s = [(a + b + c) / 3, (-a + b + c) / 3, (a - b + c) / 3, (a + b - c) / 3]
    expected = [
        [a - s[0], b - s[0], c - s[0]],
        [a + s[1], b - s[1], c - s[1]],
        [a - s[2], b + s[2], c - s[2]],
        [a - s[3], b - s[3], c + s[3]],
    ]
    got = [list(W.project(as_array([a, b, c]))) for W in PF.subspaces]
    ok = at_ones is None and w is not None and w.achieved_rank == 2 and got == expected
    return (ok, f"rank at (1,1,1): {at_ones.achieved_rank if at_ones else 3}; rank at (1,1,0): "
            f"{w.achieved_rank if w else 3}",
            "closed forms that negate the coordinate where phi_i is -1 are not these projections; "
            "span{P_i(1,1,1)} is all of R^3 and (1,1,0) is a deficient point instead")


@_register("phi-hyperplanes-wpr", "falsifier outcome for the claim that the hyperplanes phi_i^perp do weak phase retrieval")
def _ex2_wpr():
    PF = perp_family(Frame(PHI_R3))
    res = projection_wpr_falsify(PF, SearchBudget(trials=2000))
    outcome = "counterexample found" if res.found else "no counterexample within budget"
    return True, f"recorded only: {outcome} ({res.stats})", "claim not asserted; outcome recorded"


@_register("spark3-frame", "{(1,1,0),(-1,0,1),(1,-1,0),(0,1,-1)} has spark 3 and fails the full-spark necessity")
def _ex3():
    F = Frame(SPARK3_FRAME)
    nc = wpr_necessary_conditions(F)
    x, y = as_array([-2, -1, 0]), as_array([1, 2, 3])
    rel = phase_relation(x, y)
    ok = spark(F) == 3 and nc.definitely_not_wpr and measurements_equal(F, x, y, 0.0)
    return (ok, f"spark {spark(F)}; x=(-2,-1,0), y=(1,2,3) are measurement-equal with relation {rel.value}",
            "measurement-equality only, definitional discrepancy flagged: this pair weakly has opposite signs")


@_register("spark3-frame-falsified", "the exact decider produces a genuine witness for the spark 3 frame")
def _ex3_wit():
    f = wpr_falsify(Frame(SPARK3_FRAME))
    w = f.witness
    return f.found and w.verified, f"x = {list(map(str, w.x))}, y = {list(map(str, w.y))}" if w else "none"


@_register("spark3-hyperplanes", "closed forms of the projections onto the perpendicular hyperplanes of the spark 3 frame")
def _ex3_proj():
    PF = perp_family(Frame(SPARK3_FRAME))
    a, b, c = Fraction(2), Fraction(3), Fraction(7)
    expected = [
        [(a - b) / 2, (b - a) / 2, c],
        [(a + c) / 2, b, (a + c) / 2],
        [(a + b) / 2, (a + b) / 2, c],
        [a, (b + c) / 2, (b + c) / 2],
    ]
    got = [list(W.project(as_array([a, b, c]))) for W in PF.subspaces]
    res = projection_wpr_falsify(PF, SearchBudget(trials=2000))
    outcome = "counterexample found" if res.found else "no counterexample within budget"
    return got == expected, f"closed forms match; weak phase falsifier: {outcome}"


@_register("hyperplanes-fail-wpr", "perp hyperplanes of a full spark 5-frame: span{P_i x5} = span{e1,e2}")
def _s7ex1():
    F = hyperplane_pr_frame()
    PF = perp_family(F)
    w = span_criterion_at(PF, F.vectors[4])
    S = Subspace(3, w.spanned, 1e-9) if w else None
    plane = Subspace(3, [[1.0, 0, 0], [0, 1.0, 0]], 1e-9)
    same_plane = S is not None and S.dim == 2 and all(plane.contains(b) for b in S.basis)
    mx = proj_measurements(PF, [1.0, 1, 3], squared=False)
    my = proj_measurements(PF, [1.0, 1, -1], squared=False)
    norms = all(abs(p - q) <= 1e-9 for p, q in zip(mx, my))
    rel = phase_relation(as_array([1, 1, 3]), as_array([1, 1, -1]))
    ok = is_full_spark(F) and same_plane and norms and rel is PhaseRelation.INCOMPARABLE
    return ok, f"rank {w.achieved_rank if w else 3}; ||P_i(1,1,3)|| = ||P_i(1,1,-1)||: {norms}; relation {rel.value}"


@_register("hyperplanes-pr-falsifier", "the projection falsifier rediscovers a rank-deficient point for the 5-frame")
def _s7ex1_search():
    PF = perp_family(hyperplane_pr_frame())
    res = projection_pr_falsify(PF, SearchBudget(trials=4000))
    return res.found and res.witness.achieved_rank < 3, f"stats {res.stats}"


@_register("wpr-without-norm-retrieval", "{(1,3),(1,-3)}: x=(1,1), y=(3,1/3) measurement-equal with 2 != 82/9")
def _s7ex2():
    F = Frame([[1, 3], [1, -3]])
    x, y = as_array([1, 1]), as_array([3, Fraction(1, 3)])
    ok = (measurements_equal(F, x, y, 0.0) and norm_sq(x) == 2 and norm_sq(y) == Fraction(82, 9)
          and classify_wpr_r2([1, 3], [1, -3]).does_wpr and not does_norm_retrieval(F).holds)
    return ok, f"||x||^2 = {norm_sq(x)}, ||y||^2 = {norm_sq(y)}"


@_register("perp-lines-r2", "lines and their perpendiculars for {(1,3),(1,-3)} both do weak phase retrieval")
def _t12():
    PF = ProjectionFamily((Subspace(2, [[1, 3]]), Subspace(2, [[1, -3]])))
    rep = ip_transfer_check(PF, given_wpr=True)
    return rep.family_wpr_r2 and rep.complement_wpr_r2, f"family {rep.family_wpr_r2}, complements {rep.complement_wpr_r2}"


@_register("subspace-and-complement", "[e1] and [e2,e3] do norm retrieval in R^3")
def _t1():
    PF = ProjectionFamily((Subspace(3, [_e(3, 0)]), Subspace(3, [_e(3, 1), _e(3, 2)])))
    nr = fusion_norm_retrieval(PF)
    return nr.holds, nr.certificate


@_register("fusion-six-subspaces", "[e1,e2],[e2],[e3],[e1+e2],[e2+e3],[e1+e3] do norm retrieval")
def _c1():
    subs = [[_e(3, 0), _e(3, 1)], [_e(3, 1)], [_e(3, 2)], [[1, 1, 0]], [[0, 1, 1]], [[1, 0, 1]]]
    PF = ProjectionFamily(tuple(Subspace(3, b) for b in subs))
    nr = fusion_norm_retrieval(PF)
    return nr.holds, nr.certificate


@_register("riesz-norm-retrieval", "a non-orthogonal Riesz basis of [e1,e2] breaks norm retrieval: <e1, e1-e2-e3> = 1")
def _riesz():
    F = Frame(RIESZ_VECTORS)
    nr = does_norm_retrieval(F)
    U, V = side_complements(F, (1, 2, 3))
    u, v = U.basis[0], V.basis[0]
    ip = inner(u, v)
    ok = (not nr.holds and list(u) == [1, 0, 0] and list(v) == [1, -1, -1] and ip == 1
          and nr.witness is not None and inner(nr.witness.u, nr.witness.v) != 0)
    return ok, f"partition (1,2,3): u = {list(map(str, u))}, v = {list(map(str, v))}, <u,v> = {ip}", None, {"inner": ip}


@_register("two-subspace-case1", "W1=[e1,e2], W2=[e2,e3]: equal projected norms, ||y1||^2 = 6, ||y2||^2 = 9")
def _case1():
    W1 = Subspace(3, [_e(3, 0), _e(3, 1)])
    W2 = Subspace(3, [_e(3, 1), _e(3, 2)])
    res = two_subspace_operator(W1, W2)
    PF = res.details["family"]
    m1 = proj_measurements(PF, res.y1)
    m2 = proj_measurements(PF, res.y2)
    n1, n2 = norm_sq(res.y1), norm_sq(res.y2)
    ok = res.case == "orthogonal-remainders" and m1 == m2 and n1 == 6 and n2 == 9
    return ok, f"||P_i y1||^2 = {m1}, ||P_i y2||^2 = {m2}, ||y1||^2 = {n1}, ||y2||^2 = {n2}", None, {"y1": n1, "y2": n2}


@_register("two-subspace-disjoint", "W1=[e1+e2], W2=[e2,e3]: an invertible T makes the pair do norm retrieval")
def _disjoint():
    res = two_subspace_operator(Subspace(3, [[1, 1, 0]]), Subspace(3, [_e(3, 1), _e(3, 2)]))
    return res.case == "disjoint" and res.norm_retrieval.holds and rank(res.operator) == 3, res.norm_retrieval.certificate


@_register("operator-breaks-norm-retrieval", "T maps [e1],[e2,e3] to [e1-e2],[e2,e3], which fail norm retrieval")
def _operator():
    T = as_array([[1, 0, 0], [-1, 1, 0], [0, 0, 1]])  # columns are T e_i
    before = ProjectionFamily((Subspace(3, [_e(3, 0)]), Subspace(3, [_e(3, 1), _e(3, 2)])))
    after = ProjectionFamily((Subspace(3, [T[:, 0]]), Subspace(3, [T[:, 1], T[:, 2]])))
    b, a = fusion_norm_retrieval(before), fusion_norm_retrieval(after)
    return b.holds and not a.holds, f"before {b.holds}, after {a.holds}"


@_register("bound-mersenne", "n = 3 with 4 subspaces cannot do phase retrieval")
def _t12_bound():
    PF = ProjectionFamily(tuple(Subspace(3, [v]) for v in PHI_R3))
    rep = bound_advisories(PF)
    return rep.phase_retrieval_impossible, "; ".join(rep.objections)


@_register("bound-hyperplanes", "n = 4 with 5 hyperplanes cannot do phase retrieval")
def _t13_bound():
    normals = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 1, 1]]
    PF = perp_family(Frame(normals))
    rep = bound_advisories(PF)
    return rep.phase_retrieval_impossible, "; ".join(rep.objections)


def run(ids: list[str] | None = None) -> list[CheckResult]:
    if ids:
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise KeyError(f"unknown example id(s): {', '.join(unknown)}")
    out = []
    for key, ex in REGISTRY.items():
        if ids and key not in ids:
            continue
        try:
            out.append(ex.run())
        except Exception as exc:  # a crashing check is reported, not raised
            out.append(CheckResult(key, False, f"{type(exc).__name__}: {exc}"))
    return out
