"""Retrieval properties of families of orthogonal projections."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .frames import Frame, FusionFrame
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    as_array,
    common_mode,
    exact_sqrt,
    identity,
    inner,
    invert,
    is_exact,
    is_zero,
    mat_vec,
    norm_sq,
    orthocomplement,
    rank,
    to_float,
)
from .vector_retrieval import RetrievalResult, does_norm_retrieval, does_phase_retrieval
from .weak_phase import PhaseRelation, classify_wpr_r2, phase_relation


class ProjectionFamily(FusionFrame):
    """Subspaces of R^n together with their cached orthogonal projections.

    Construction checks ``P^2 = P`` and ``P^T = P`` for every member, exactly
    for rational subspaces and to tolerance otherwise.
    """

    def __post_init__(self):
        super().__post_init__()
        for k, W in enumerate(self.subspaces):
            P = W.projection
            if is_exact(P):
                ok = (P @ P == P).all() and (P.T == P).all()
            else:
                ok = np.allclose(P @ P, P, atol=10 * W.tol) and np.allclose(P.T, P, atol=10 * W.tol)
            if not ok:
                raise ValueError(f"member {k} does not give an orthogonal projection")  # pragma: no cover

    @classmethod
    def from_bases(cls, bases: Sequence, weights=(), label=None, tol: float = DEFAULT_TOL) -> "ProjectionFamily":
        subs = []
        for B in bases:
            B = as_array(B)
            if B.ndim == 1:
                B = B.reshape(1, -1)
            subs.append(Subspace(B.shape[1], B, tol))
        return cls(tuple(subs), tuple(weights), label)

    @property
    def member_dims(self) -> list[int]:
        return [W.dim for W in self.subspaces]

    def complements(self) -> "ProjectionFamily":
        """The family ``{I - P_i}``."""
        return ProjectionFamily(tuple(orthocomplement(W) for W in self.subspaces), self.weights)

    def line_generators(self) -> Frame | None:
        """If every member is a line, the frame of their spanning vectors."""
        if any(W.dim != 1 for W in self.subspaces):
            return None
        return Frame(np.array([W.basis[0] for W in self.subspaces]))

    def orthogonal_expansion(self, orthogonalize: bool = True) -> Frame:
        """Concatenate a basis of every member into one vector frame.

        Exact members contribute orthogonal (not unit) bases; float members
        contribute orthonormal bases. ``orthogonalize=False`` uses the stored
        bases as given.
        """
        rows = []
        for W in self.subspaces:
            rows.extend(W.ortho_basis if orthogonalize else W.basis)
        if not rows:
            raise ValueError("all members are the zero subspace")
        exact = all(is_exact(r) for r in rows)
        V = np.array(rows, dtype=object if exact else float)
        return Frame(V, tol=self.subspaces[0].tol)


def perp_family(F: Frame) -> ProjectionFamily:
    """Hyperplanes ``x_i^perp`` with projections ``I - x_i x_i^T / ||x_i||^2``."""
    subs = []
    for i, v in enumerate(F.vectors):
        if all(is_zero(c) for c in v):
            raise ValueError(f"vector {i} is zero")
        subs.append(orthocomplement([v], tol=F.tol))
    return ProjectionFamily(tuple(subs))


def rank1_family(F: Frame) -> ProjectionFamily:
    """Lines ``span{x_i}``."""
    return ProjectionFamily(tuple(Subspace(F.dim, [v], F.tol) for v in F.vectors))


def proj_measurements(PF: FusionFrame, x, squared: bool | None = None) -> list:
    """``(||P_i x||)_i``; squared norms by default for exact input."""
    x = as_array(x)
    if len(x) != PF.dim:
        raise ValueError("dimension mismatch")
    out = [norm_sq(W.project(x)) for W in PF.subspaces]
    if squared is None:
        squared = all(isinstance(v, Fraction) for v in out)
    if squared:
        return out
    return [float(np.sqrt(float(v))) for v in out]


@dataclass(frozen=True, eq=False)
class SpanWitness:
    """A nonzero ``x`` whose projections ``{P_i x}`` fail to span R^n."""

    x: np.ndarray
    achieved_rank: int
    spanned: np.ndarray = field(repr=False)
    exact: bool = False


def span_criterion_at(PF: FusionFrame, x, tol: float = DEFAULT_TOL) -> SpanWitness | None:
    """Return a witness if ``span{P_i x} != R^n``, else None."""
    x = as_array(x)
    if all(is_zero(c) for c in x):
        raise ValueError("x must be nonzero")
    images = np.array([W.project(x) for W in PF.subspaces])
    r = rank(images, tol)
    if r >= PF.dim:
        return None
    spanned = Subspace.span(images, n=PF.dim, tol=tol)
    return SpanWitness(x, r, spanned.basis, is_exact(images))


@dataclass(frozen=True, eq=False)
class WeakPhaseCheck:
    norms_equal: bool
    relation: PhaseRelation | None

    @property
    def refutes(self) -> bool:
        """Equal norms together with incomparable signs refute weak phase retrieval."""
        return self.norms_equal and self.relation is PhaseRelation.INCOMPARABLE


def weak_phase_by_projections_check(PF: FusionFrame, x, y, tol: float = DEFAULT_TOL) -> WeakPhaseCheck:
    x, y = common_mode(as_array(x), as_array(y))
    mx = proj_measurements(PF, x, squared=True)
    my = proj_measurements(PF, y, squared=True)
    exact = all(isinstance(v, Fraction) for v in (*mx, *my))
    scale = max(1.0, float(norm_sq(x)), float(norm_sq(y)))
    equal = all(is_zero(a - b, 0.0 if exact else tol * scale) for a, b in zip(mx, my))
    if not equal:
        return WeakPhaseCheck(False, None)
    return WeakPhaseCheck(True, phase_relation(x, y, 0.0 if exact else tol))


@dataclass(frozen=True, eq=False)
class Rank1Report:
    family: ProjectionFamily
    identity_holds: bool
    phase_retrieval: RetrievalResult
    norm_retrieval: RetrievalResult
    weak_phase_r2: bool | None


def rank1_equivalence(F: Frame, probes: Sequence | None = None) -> Rank1Report:
    """Transfer vector-frame verdicts to the family of lines through ``x_i``.

    ``||P_i x||^2 * ||x_i||^2 = <x, x_i>^2`` makes measurement equality for
    the frame and norm equality for the family the same condition. The
    identity is checked on ``probes`` (standard basis plus ``(1,...,1)`` by
    default) and the frame's verdicts are reported for the family.
    """
    PF = rank1_family(F)
    n = F.dim
    if probes is None:
        probes = [identity(n)[k] for k in range(n)] + [as_array([1] * n)]
    ok = True
    for p in probes:
        p = as_array(p)
        for W, v in zip(PF.subspaces, F.vectors):
            lhs = norm_sq(W.project(p)) * norm_sq(v)
            rhs = inner(p, v) ** 2
            if not is_zero(lhs - rhs, 0.0 if isinstance(lhs, Fraction) else F.tol * max(1.0, abs(rhs))):
                ok = False
    wpr = None
    if n == 2 and F.m == 2:
        wpr = classify_wpr_r2(F.vectors[0], F.vectors[1]).does_wpr
    return Rank1Report(PF, ok, does_phase_retrieval(F), does_norm_retrieval(F), wpr)


def fusion_norm_retrieval(FF: FusionFrame, orthogonalize: bool = True, cap: int | None = None) -> RetrievalResult:
    """Norm retrieval of a subspace family via an orthogonal basis expansion.

    Any choice of orthogonal bases gives the same verdict; exact families use
    unnormalized bases, which is harmless because positive rescaling of
    vectors does not change norm retrieval. A failing witness ``(x, y)`` has
    equal ``||P_i x||`` and ``||P_i y||`` for all members.
    """
    PF = FF if isinstance(FF, ProjectionFamily) else ProjectionFamily(FF.subspaces, FF.weights)
    return does_norm_retrieval(PF.orthogonal_expansion(orthogonalize), cap)


@dataclass(frozen=True, eq=False)
class TransferReport:
    family_norm_retrieval: RetrievalResult
    complement_norm_retrieval: RetrievalResult
    transfer_applies: bool
    complement_family: ProjectionFamily
    complement_falsifier: object = None
    family_wpr_r2: bool | None = None
    complement_wpr_r2: bool | None = None


def ip_transfer_check(PF: ProjectionFamily, given_wpr: bool, budget=None) -> TransferReport:
    """Check when weak phase retrieval passes from ``{P_i}`` to ``{I - P_i}``.

    If ``{P_i}`` does weak phase retrieval (asserted by the caller) and the
    complementary family does norm retrieval, the complementary family does
    weak phase retrieval too. The falsifier is then run on the complementary
    family as a consistency check.
    """
    from .search import SearchBudget, projection_wpr_falsify

    comp = PF.complements()
    nr_family = fusion_norm_retrieval(PF)
    nr_comp = fusion_norm_retrieval(comp)
    applies = bool(given_wpr and nr_comp.holds)
    falsifier = None
    if applies:
        falsifier = projection_wpr_falsify(comp, budget or SearchBudget(trials=2000))
        if falsifier.found:
            raise RuntimeError("transfer predicts weak phase retrieval but a counterexample was found")
    fam_r2 = comp_r2 = None
    if PF.dim == 2 and len(PF) == 2:
        lines, clines = PF.line_generators(), comp.line_generators()
        if lines is not None and clines is not None:
            fam_r2 = classify_wpr_r2(*lines.vectors).does_wpr
            comp_r2 = classify_wpr_r2(*clines.vectors).does_wpr
    return TransferReport(nr_family, nr_comp, applies, comp, falsifier, fam_r2, comp_r2)


# ---------------------------------------------------------------------------
# Two subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class TwoSubspaceResult:
    """Outcome for a pair ``{W1, W2}``.

    ``case`` is ``"disjoint"`` (an operator making the pair do norm retrieval
    was built), ``"orthogonal-remainders"`` or ``"oblique-remainders"`` (a norm
    retrieval failure for ``{T W1, T W2}`` was produced).
    """

    case: str
    operator: np.ndarray
    norm_retrieval: RetrievalResult | None = None
    y1: np.ndarray | None = None
    y2: np.ndarray | None = None
    details: dict = field(default_factory=dict)


def _apply(T: np.ndarray, W: Subspace) -> Subspace:
    B = np.array([mat_vec(T, b) for b in W.basis])
    return Subspace(W.ambient_dim, B, W.tol)


def _intersection(W1: Subspace, W2: Subspace) -> Subspace:
    # W1 ∩ W2 = (W1^perp + W2^perp)^perp
    perp = np.vstack([orthocomplement(W1).basis, orthocomplement(W2).basis])
    if len(perp) == 0:
        return Subspace(W1.ambient_dim, identity(W1.ambient_dim, W1.exact), W1.tol)
    return orthocomplement(perp, n=W1.ambient_dim, tol=W1.tol)


def _relative_complement(A: Subspace, B: Subspace) -> Subspace:
    """Orthogonal complement of ``B`` inside ``A`` (``B`` a subspace of ``A``)."""
    if A.dim == B.dim:
        return Subspace(A.ambient_dim, np.empty((0, A.ambient_dim), dtype=A.basis.dtype), A.tol)
    rows = list(B.basis) + list(orthocomplement(A).basis)
    perp = orthocomplement(np.array(rows), n=A.ambient_dim, tol=A.tol) if rows else A
    return perp


def _unit(v: np.ndarray) -> np.ndarray:
    nv = norm_sq(v)
    if isinstance(nv, Fraction):
        r = exact_sqrt(nv)
        if r is not None:
            return v / r
    return to_float(v) / np.sqrt(float(nv))


def two_subspace_operator(W1: Subspace, W2: Subspace, T=None) -> TwoSubspaceResult:
    """Norm retrieval of ``{T W1, T W2}`` for invertible ``T``.

    If ``W1 ∩ W2 = {0}``, builds ``T`` mapping a basis of ``W1`` to the first
    standard basis vectors and a basis of ``W2`` to the rest, and confirms
    norm retrieval. Otherwise no invertible operator works; for the given
    ``T`` (identity by default) a pair ``y1, y2`` with equal projected norms
    and different norms is returned.
    """
    n = W1.ambient_dim
    if W2.ambient_dim != n:
        raise ValueError("subspaces live in different ambient spaces")
    both = np.vstack([W1.basis, W2.basis]) if W1.dim + W2.dim else W1.basis
    if W1.dim + W2.dim == 0 or rank(both, W1.tol) < n:
        raise ValueError("{W1, W2} does not span R^n, so it is not a fusion frame")
    W3 = _intersection(W1, W2)
    if W3.dim == 0:
        B = both.T  # columns: basis of W1 then basis of W2
        Top = invert(B)
        k = W1.dim
        TW1, TW2 = _apply(Top, W1), _apply(Top, W2)
        PF = ProjectionFamily((TW1, TW2))
        nr = fusion_norm_retrieval(PF)
        return TwoSubspaceResult("disjoint", Top, nr, details={"k": k})
    if W1.dim == n or W2.dim == n:
        raise ValueError("one subspace is all of R^n; norm retrieval then holds trivially")
    if n < 3:
        raise ValueError("intersecting proper subspaces that span need n >= 3")  # pragma: no cover
    Top = identity(n, W1.exact and W2.exact) if T is None else as_array(T)
    if rank(Top, W1.tol) < n:
        raise ValueError("T is not invertible")
    TW1, TW2, TW3 = _apply(Top, W1), _apply(Top, W2), _apply(Top, W3)
    W1p = _relative_complement(TW1, TW3)
    W2p = _relative_complement(TW2, TW3)
    orthogonal = all(is_zero(inner(a, b), 0.0 if W1.exact else W1.tol) for a in W1p.basis for b in W2p.basis)
    PF = ProjectionFamily((TW1, TW2))
    if orthogonal:
        x1 = _unit(W1p.ortho_basis[0])
        x2 = _unit(TW3.ortho_basis[0])
        x3 = _unit(W2p.ortho_basis[0])
        x1, x2, x3 = common_mode(x1, x2, x3)
        y1 = x1 + 2 * x2 + x3
        y2 = 2 * x1 + x2 + 2 * x3
        return TwoSubspaceResult("orthogonal-remainders", Top, None, y1, y2,
                                 {"x1": x1, "x2": x2, "x3": x3, "family": PF})
    nr = fusion_norm_retrieval(PF)
    if nr.holds:
        raise RuntimeError("intersecting pair unexpectedly does norm retrieval")  # pragma: no cover
    w = nr.witness
    return TwoSubspaceResult("oblique-remainders", Top, nr, w.x, w.y, {"family": PF})


# ---------------------------------------------------------------------------
# Count bounds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundReport:
    objections: tuple[str, ...]

    @property
    def phase_retrieval_impossible(self) -> bool:
        return bool(self.objections)


def _is_mersenne(n: int) -> bool:
    return n >= 1 and (n + 1) & n == 0


def bound_advisories(family: FusionFrame) -> BoundReport:
    """Count-based obstructions to phase retrieval by a subspace family.

    When ``n = 2^k - 1`` at least ``2n - 1`` subspaces are needed, and any
    family of hyperplanes needs at least ``2n - 2`` members.
    """
    n, count = family.dim, len(family)
    objections = []
    if _is_mersenne(n) and count < 2 * n - 1:
        objections.append(f"n = {n} is of the form 2^k - 1 and {count} < 2n - 1 = {2 * n - 1} subspaces")
    if all(W.dim == n - 1 for W in family.subspaces) and count < 2 * n - 2:
        objections.append(f"{count} hyperplanes < 2n - 2 = {2 * n - 2}")
    return BoundReport(tuple(objections))
