"""Counterexample search for weak phase, norm and projection phase retrieval.

All randomness is drawn from generators keyed by ``(seed, stream, index)`` so
a given budget and seed always reproduce the same outcome.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .frames import Frame, FusionFrame
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    as_array,
    common_mode,
    inner,
    is_exact,
    is_zero,
    norm_sq,
    orthocomplement,
    rationalize,
    to_float,
)
from .projections import span_criterion_at, weak_phase_by_projections_check
from .vector_retrieval import (
    PartitionWitness,
    _check_cap,
    _mask,
    complement_indices,
    partitions,
    side_complements,
    spanning_table,
)
from .weak_phase import (
    PhaseRelation,
    WeakWitness,
    nonspanning_counterexample,
    phase_relation,
    verify_witness,
)

_PARTITION_STREAM = 1
_SPHERE_STREAM = 2
_ORACLE_STREAM = 3
_PROJ_WPR_STREAM = 4


@dataclass(frozen=True)
class SearchBudget:
    trials: int = 10_000
    seed: int = 0
    samples: int = 64

    def __post_init__(self):
        if self.trials < 1 or self.samples < 1:
            raise ValueError("trials and samples must be positive")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")

    def rng(self, *stream: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, *stream])


@dataclass(frozen=True, eq=False)
class FalsifyResult:
    """Outcome of a counterexample search.

    ``stats`` separates partitions decided exactly from those only sampled,
    so an empty result can be told apart from a complete decision.
    """

    witness: object = None
    stats: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def exhausted(self) -> bool:
        return self.witness is None

    @property
    def complete(self) -> bool:
        return bool(self.stats.get("complete"))


def _breakpoint_alphas(u: np.ndarray, v: np.ndarray, tol: float) -> list:
    """One ``alpha > 0`` inside every interval where the sign pattern of ``(x, y)`` is constant."""
    exact = is_exact(u)
    pts = sorted({abs(b / a) for a, b in zip(u, v) if not is_zero(a, tol) and not is_zero(b, tol)})
    one = Fraction(1) if exact else 1.0
    if not pts:
        return [one]
    alphas = [pts[0] / 2]
    alphas += [(p + q) / 2 for p, q in zip(pts, pts[1:])]
    alphas.append(pts[-1] + one)
    return alphas


def one_parameter_witness(F: Frame, I, u, v) -> WeakWitness | None:
    """Exact search along ``x = (alpha u + v)/2``, ``y = (v - alpha u)/2``.

    Applies when both complements of the partition are lines spanned by
    ``u`` and ``v``. The product ``x_k y_k`` changes sign only where
    ``alpha = |v_k / u_k|``, so one test point per interval decides the
    partition completely.
    """
    u, v = common_mode(as_array(u), as_array(v))
    tol = 0.0 if F.exact else F.tol
    for alpha in _breakpoint_alphas(u, v, tol):
        for a in (alpha, -alpha):
            x, y = (a * u + v) / 2, (v - a * u) / 2
            if phase_relation(x, y, tol) is PhaseRelation.INCOMPARABLE:
                w = verify_witness(F, x, y, "partition-exact", partition=tuple(I), details={"alpha": a})
                if w.verified:
                    return w
    return None


def _random_direction(rng: np.random.Generator, S: Subspace, exact: bool) -> np.ndarray:
    """Uniform direction in ``S``; rational coefficients on an exact basis when ``exact``."""
    g = rng.standard_normal(S.dim)
    g /= np.linalg.norm(g)
    Q = S.ortho_basis
    norms = np.sqrt(np.array([float(norm_sq(q)) for q in Q]))
    coeffs = g / norms
    if exact:
        c = rationalize(coeffs, 10**4)
        return sum((ci * q for ci, q in zip(c, Q)), np.array([Fraction(0)] * S.ambient_dim, dtype=object))
    return to_float(Q).T @ coeffs


def _random_scale(rng: np.random.Generator, exact: bool):
    s = float(np.exp(rng.normal(0.0, 1.5)))
    return Fraction(s).limit_denominator(10**4) if exact else s


def wpr_falsify(F: Frame, budget: SearchBudget | None = None, cap: int | None = None) -> FalsifyResult:
    """Search for a pair refuting weak phase retrieval.

    Partitions whose two complements are at most one-dimensional are decided
    exactly by :func:`one_parameter_witness`; larger complements are sampled.
    A non-spanning frame is answered directly by the non-spanning construction.
    """
    budget = budget or SearchBudget()
    if not F.spans():
        if F.dim < 2:
            return FalsifyResult(None, {"complete": True, "reason": "R^1"})
        return FalsifyResult(nonspanning_counterexample(F), {"complete": True, "nonspanning": True})
    _check_cap(F, cap)
    stats = {"partitions": 0, "trivial": 0, "exact": 0, "sampled": 0, "trials": 0, "budget_cut": False}
    tol = 0.0 if F.exact else F.tol
    table = spanning_table(F)
    full = (1 << F.m) - 1
    for p_index, I in enumerate(partitions(F.m)):
        stats["partitions"] += 1
        if table[_mask(I)] or table[full ^ _mask(I)]:
            stats["trivial"] += 1
            continue
        U, V = side_complements(F, I)
        if U.dim == 0 or V.dim == 0:
            stats["trivial"] += 1
            continue
        if U.dim == 1 and V.dim == 1:
            stats["exact"] += 1
            w = one_parameter_witness(F, I, U.basis[0], V.basis[0])
            if w is not None:
                return FalsifyResult(w, stats)
            continue
        stats["sampled"] += 1
        rng = budget.rng(_PARTITION_STREAM, p_index)
        for _ in range(budget.samples):
            if stats["trials"] >= budget.trials:
                stats["budget_cut"] = True
                break
            stats["trials"] += 1
            u = _random_direction(rng, U, F.exact) * _random_scale(rng, F.exact)
            v = _random_direction(rng, V, F.exact)
            x, y = (u + v) / 2, (v - u) / 2
            if phase_relation(x, y, tol) is PhaseRelation.INCOMPARABLE:
                w = verify_witness(F, x, y, "partition-sampled", partition=tuple(I))
                if w.verified:
                    return FalsifyResult(w, stats)
    stats["complete"] = stats["sampled"] == 0
    return FalsifyResult(None, stats)


# ---------------------------------------------------------------------------
# Projection families
# ---------------------------------------------------------------------------

def _sigma_min(Ps: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Smallest singular value of ``[P_1 x ... P_m x]`` for each row ``x`` of ``X``."""
    M = np.einsum("kij,tj->tik", Ps, X)  # (t, n, m)
    n, m = Ps.shape[1], Ps.shape[0]
    if m < n:
        return np.zeros(len(X))
    return np.linalg.svd(M, compute_uv=False)[:, -1]


def _refine(Ps: np.ndarray, x: np.ndarray, iterations: int = 200, target: float = 1e-8) -> tuple[np.ndarray, float]:
    """Coordinate descent on the unit sphere with a halving step."""
    x = x / np.linalg.norm(x)
    best = float(_sigma_min(Ps, x[None])[0])
    step = 0.25
    for _ in range(iterations):
        if best < target:
            break
        improved = False
        for k in range(len(x)):
            for d in (step, -step):
                c = x.copy()
                c[k] += d
                c /= np.linalg.norm(c)
                s = float(_sigma_min(Ps, c[None])[0])
                if s < best:
                    x, best, improved = c, s, True
        if not improved:
            step *= 0.5
    return x, best


def _deficient_points(PF: FusionFrame, budget: SearchBudget, keep: int = 4) -> list[tuple[np.ndarray, float]]:
    Ps = np.array([to_float(W.projection) for W in PF.subspaces])
    n = PF.dim
    rng = budget.rng(_SPHERE_STREAM)
    X = rng.standard_normal((budget.trials, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    s = _sigma_min(Ps, X)
    order = np.argsort(s, kind="stable")[:keep]
    return [_refine(Ps, X[i]) for i in order]


def _rational_candidate(x: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(x)))
    return rationalize(x / x[k], 1000)


def projection_pr_falsify(PF: FusionFrame, budget: SearchBudget | None = None) -> FalsifyResult:
    """Search for ``x != 0`` with ``rank{P_i x} < n``.

    Random unit vectors are ranked by the smallest singular value of
    ``[P_1 x ... P_m x]``; the best few are refined by coordinate descent.
    Candidates are re-verified with a rational rounding first, exactly when
    the family is rational.
    """
    budget = budget or SearchBudget()
    points = _deficient_points(PF, budget)
    best = min(s for _, s in points)
    stats = {"trials": budget.trials, "refined": len(points), "best_sigma_min": best}
    for x, s in sorted(points, key=lambda p: p[1]):
        q = _rational_candidate(x)
        exact_family = all(W.exact for W in PF.subspaces)
        xq = q if exact_family else to_float(q)
        w = span_criterion_at(PF, xq)
        if w is not None:
            return FalsifyResult(w, {**stats, "rational": True})
        if s < 1e-8:
            w = span_criterion_at(PF, x, tol=1e-6)
            if w is not None:
                return FalsifyResult(w, {**stats, "rational": False})
    return FalsifyResult(None, stats)


def projection_wpr_falsify(PF: FusionFrame, budget: SearchBudget | None = None) -> FalsifyResult:
    """Search for a pair refuting weak phase retrieval by a projection family.

    ``||P_i x|| = ||P_i y||`` for all ``i`` exactly when ``u = x - y`` and
    ``v = x + y`` satisfy ``<P_i u, v> = 0``, so nontrivial pairs only come
    from ``u`` where ``{P_i u}`` fails to span. Such points are located as in
    :func:`projection_pr_falsify` and ``v`` is sampled from
    ``span{P_i u}^perp``.
    """
    budget = budget or SearchBudget()
    exact_family = all(W.exact for W in PF.subspaces)
    rng = budget.rng(_PROJ_WPR_STREAM)
    stats = {"seeds": 0, "pairs": 0}
    for x, s in sorted(_deficient_points(PF, budget), key=lambda p: p[1]):
        candidates = [_rational_candidate(x)]
        if not exact_family:
            candidates = [to_float(candidates[0]), x]
        for u in candidates:
            images = np.array([W.project(u) for W in PF.subspaces])
            tol = DEFAULT_TOL if is_exact(u) else 1e-6
            V = orthocomplement(images, n=PF.dim, tol=tol)
            if V.dim == 0:
                continue
            stats["seeds"] += 1
            for _ in range(budget.samples):
                stats["pairs"] += 1
                v = _random_direction(rng, V, is_exact(u))
                a = _random_scale(rng, is_exact(u))
                x1, y1 = (v + a * u) / 2, (v - a * u) / 2
                check = weak_phase_by_projections_check(PF, x1, y1, tol=1e-7)
                if check.refutes:
                    return FalsifyResult(WeakWitness(x1, y1, "projection-sampled", True), stats)
            break
    return FalsifyResult(None, stats)


# ---------------------------------------------------------------------------
# Norm retrieval oracle
# ---------------------------------------------------------------------------

def _float_complement(A: np.ndarray, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    if len(A) == 0:
        return np.eye(n)
    _, s, vt = np.linalg.svd(A)
    r = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return vt[r:]


def norm_retrieval_sampling_oracle(F: Frame, budget: SearchBudget | None = None, gap_tol: float = 1e-8) -> FalsifyResult:
    """Cross-check norm retrieval by sampling measurement-equal pairs.

    Each trial draws a random partition and random ``u, v`` orthogonal to its
    two sides, forms ``x = (u+v)/2, y = (v-u)/2`` and looks for
    ``||x|| != ||y||``. A hit on a rational frame is re-verified exactly.
    """
    budget = budget or SearchBudget()
    rng = budget.rng(_ORACLE_STREAM)
    m, n = F.m, F.dim
    Vf = to_float(F.vectors)
    masks = rng.integers(0, 1 << m, size=budget.trials)
    cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    hits = 0
    for mask in np.unique(masks):
        count = int(np.sum(masks == mask))
        I = tuple(i for i in range(m) if mask >> i & 1)
        Ic = complement_indices(m, I)
        if mask not in cache:
            cache[mask] = (_float_complement(Vf[list(I)], n), _float_complement(Vf[list(Ic)], n))
        U, V = cache[mask]
        if len(U) == 0 or len(V) == 0:
            continue
        cu = rng.standard_normal((count, len(U)))
        cv = rng.standard_normal((count, len(V)))
        alpha = np.exp(rng.normal(0.0, 1.0, size=(count, 1)))
        u, v = alpha * (cu @ U), cv @ V
        x, y = (u + v) / 2, (v - u) / 2
        gap = np.sum(x * x, axis=1) - np.sum(y * y, axis=1)
        scale = np.linalg.norm(u, axis=1) * np.linalg.norm(v, axis=1)
        bad = np.nonzero(np.abs(gap) > gap_tol * np.maximum(scale, 1e-300))[0]
        if len(bad) == 0:
            continue
        hits += len(bad)
        k = int(bad[0])
        witness = _confirm_gap(F, I, u[k], v[k], U, V, cu[k], cv[k])
        if witness is not None:
            return FalsifyResult(witness, {"trials": budget.trials, "hits": hits})
    return FalsifyResult(None, {"trials": budget.trials, "hits": hits})


def _confirm_gap(F: Frame, I, u, v, U, V, cu, cv) -> PartitionWitness | None:
    if not F.exact:
        return PartitionWitness(tuple(I), u, v)
    Ue, Ve = side_complements(F, I)
    # express the sampled directions on exact orthogonal bases, then round
    def exact_in(S: Subspace, w: np.ndarray) -> np.ndarray:
        Q = S.ortho_basis
        coeffs = [float(np.dot(to_float(q), w)) / float(norm_sq(q)) for q in Q]
        c = rationalize(np.array(coeffs), 10**6)
        return sum((ci * q for ci, q in zip(c, Q)), np.array([Fraction(0)] * F.dim, dtype=object))

    ue, ve = exact_in(Ue, u), exact_in(Ve, v)
    if inner(ue, ve) != 0:
        return PartitionWitness(tuple(I), ue, ve)
    return None
