"""Weak phase relations, the complete R^2 classifier and counterexample generators.

Two vectors weakly have the same phase when a single global sign relates
their entries on every coordinate where both are nonzero. A frame does weak
phase retrieval when equal measurement magnitudes always force that.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .frames import Frame, is_full_spark
from .linalg import (
    as_array,
    common_mode,
    exact_sqrt,
    inner,
    is_exact,
    is_zero,
    norm_sq,
    orthocomplement,
    sign,
)
from .vector_retrieval import side_complements


class PhaseRelation(enum.Enum):
    SAME_SIGNS = "same-signs"
    OPPOSITE_SIGNS = "opposite-signs"
    TRIVIALLY_SAME = "trivially-same"
    INCOMPARABLE = "incomparable"

    @property
    def weakly_same(self) -> bool:
        return self is not PhaseRelation.INCOMPARABLE


def phase_relation(x, y, tol: float = 0.0) -> PhaseRelation:
    """Classify the sign relation between ``x`` and ``y``.

    Only coordinates where both entries are nonzero are inspected. Entries
    with magnitude at most ``tol`` count as zero.
    """
    x, y = common_mode(as_array(x), as_array(y))
    if x.shape != y.shape:
        raise ValueError("dimension mismatch")
    products = {sign(a, tol) * sign(b, tol) for a, b in zip(x, y)} - {0}
    if not products:
        return PhaseRelation.TRIVIALLY_SAME
    if products == {1}:
        return PhaseRelation.SAME_SIGNS
    if products == {-1}:
        return PhaseRelation.OPPOSITE_SIGNS
    return PhaseRelation.INCOMPARABLE


def weakly_same_phase(x, y, tol: float = 0.0) -> bool:
    return phase_relation(x, y, tol).weakly_same


def sign_products_consistent(x, y, tol: float = 0.0) -> bool:
    """``sgn(a_i a_j) == sgn(b_i b_j)`` for all ``i != j``.

    Pairs where either product vanishes are skipped.
    """
    x, y = common_mode(as_array(x), as_array(y))
    sx = [sign(a, tol) for a in x]
    sy = [sign(b, tol) for b in y]
    for i, j in combinations(range(len(sx)), 2):
        p, q = sx[i] * sx[j], sy[i] * sy[j]
        if p and q and p != q:
            return False
    return True


def measurements(F: Frame, x) -> list:
    """Signed frame coefficients ``<x, x_i>``."""
    return [inner(x, xi) for xi in F.vectors]


def measurements_equal(F: Frame, x, y, tol: float | None = None) -> bool:
    """``|<x, x_i>| == |<y, x_i>|`` for every frame vector."""
    x, y = common_mode(as_array(x), as_array(y))
    exact = is_exact(x) and F.exact
    if tol is None:
        tol = 0.0 if exact else F.tol
    scale = max(1.0, float(np.max(np.abs(np.asarray(F.vectors, float)))) * max(
        float(np.max(np.abs(np.asarray(x, float)))), float(np.max(np.abs(np.asarray(y, float)))), 1.0))
    return all(
        is_zero(abs(a) - abs(b), tol * scale) for a, b in zip(measurements(F, x), measurements(F, y))
    )


@dataclass(frozen=True, eq=False)
class WeakWitness:
    """A measurement-equal pair that does not weakly share a phase."""

    x: np.ndarray
    y: np.ndarray
    construction: str
    verified: bool = False
    partition: tuple[int, ...] | None = None
    details: dict = field(default_factory=dict)

    @property
    def relation(self) -> PhaseRelation:
        return phase_relation(self.x, self.y)


def verify_witness(F: Frame, x, y, construction: str, **kw) -> WeakWitness:
    x, y = common_mode(as_array(x), as_array(y))
    tol = 0.0 if (is_exact(x) and F.exact) else F.tol
    ok = measurements_equal(F, x, y) and phase_relation(x, y, tol) is PhaseRelation.INCOMPARABLE
    return WeakWitness(x, y, construction, ok, **kw)


@dataclass(frozen=True)
class ScaledDecomposition:
    """``x = a * y`` on coordinates ``I`` and ``x = y / a`` elsewhere."""

    a: Fraction | float
    I: tuple[int, ...]

    def apply(self, y) -> np.ndarray:
        y = as_array(y)
        inside = set(self.I)
        return np.array([self.a * c if i in inside else c / self.a for i, c in enumerate(y)], dtype=y.dtype)


# ---------------------------------------------------------------------------
# R^2 classifier
# ---------------------------------------------------------------------------

def zero_coordinate_witness(a) -> tuple[np.ndarray, np.ndarray]:
    """Witness for ``{(1, 0), (1, a)}`` with ``a != 0``."""
    a = Fraction(a) if not isinstance(a, float) else a
    if a == 0:
        raise ValueError("a must be nonzero")
    if a > 0:
        x, y = [1, 1], [1, -2 / a - 1]
    else:
        x, y = [1, -1], [1, -2 / a + 1]
    return as_array(x), as_array(y)


def same_sign_slopes_witness(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Witness for ``{(1, a), (1, b)}`` with ``a > b > 0``.

    ``<y, (1, a)> = 1 + a`` and ``<y, (1, b)> = -(1 + b)`` against
    ``x = (1, 1)``.
    """
    if not a > b > 0:
        raise ValueError("need a > b > 0")
    d = a - b
    y = [1 + a - (2 * a + a * a + a * b) / d, (2 + a + b) / d]
    return as_array([1, 1]), as_array(y)


def opposite_slopes_witness(a, b) -> tuple[np.ndarray, np.ndarray]:
    """Witness for ``{(1, a), (1, -b)}`` with ``a > b > 0``.

    The free parameter is fixed at ``(a - b) / (4ab)``, which keeps
    ``2ab * t < a - b`` strictly.
    """
    if not a > b > 0:
        raise ValueError("need a > b > 0")
    t = (a - b) / (4 * a * b)
    c = 2 + a * t - t * b
    y = [1 + a * t - a / (a + b) * c, c / (a + b)]
    return as_array([1, t]), as_array(y)


def _swap(v: np.ndarray) -> np.ndarray:
    return v[::-1].copy()


def _flip_second(v: np.ndarray) -> np.ndarray:
    w = v.copy()
    w[1] = -w[1]
    return w


@dataclass(frozen=True, eq=False)
class R2Classification:
    does_wpr: bool
    normal_form: tuple
    witness: WeakWitness | None = None

    def __bool__(self) -> bool:
        return self.does_wpr


def _r2_witness(p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray, str]:
    """Witness pair for two non-proportional vectors of R^2 outside the WPR class."""
    if not any(is_zero(c) for c in p) and any(is_zero(c) for c in q):
        p, q = q, p
    if any(is_zero(c) for c in p):
        if is_zero(p[0]):
            # move the zero into the second coordinate
            x, y, tag = _r2_witness(_swap(p), _swap(q))
            return _swap(x), _swap(y), tag
        # p ~ (1, 0); q = (q0, q1) with q1 != 0
        if is_zero(q[0]):
            return as_array([1, 1]), as_array([1, -1]), "orthogonal-axes"
        x, y = zero_coordinate_witness(q[1] / q[0])
        return x, y, "zero-coordinate"
    s, t = p[1] / p[0], q[1] / q[0]
    if s > 0 and t > 0:
        a, b = max(s, t), min(s, t)
        if a < 1:
            x, y, tag = _r2_witness(_swap(p), _swap(q))
            return _swap(x), _swap(y), tag
        x, y = same_sign_slopes_witness(a, b)
        return x, y, "same-sign-slopes"
    if s < 0 and t < 0:
        x, y, tag = _r2_witness(_flip_second(p), _flip_second(q))
        return _flip_second(x), _flip_second(y), tag
    a, b = (s, -t) if s > 0 else (t, -s)
    if a < b:
        x, y, tag = _r2_witness(_swap(p), _swap(q))
        return _swap(x), _swap(y), tag
    x, y = opposite_slopes_witness(a, b)
    return x, y, "opposite-sign-slopes"


def classify_wpr_r2(x1, x2) -> R2Classification:
    """Decide weak phase retrieval for two vectors of R^2.

    The pair does it exactly when, after scaling each vector by its first
    coordinate, it reads ``(1, b), (1, -b)`` with ``b != 0``. Otherwise a
    verified counterexample pair is attached.
    """
    p, q = common_mode(as_array(x1), as_array(x2))
    if p.shape != (2,) or q.shape != (2,):
        raise ValueError("classify_wpr_r2 takes two vectors of R^2")
    if all(is_zero(c) for c in p) or all(is_zero(c) for c in q):
        raise ValueError("zero vector")
    F = Frame(np.array([p, q]))
    tol = 0.0 if F.exact else F.tol
    dense = not any(is_zero(c, tol) for c in (*p, *q))
    normal = (
        (p[1] / p[0], q[1] / q[0]) if not (is_zero(p[0], tol) or is_zero(q[0], tol)) else None
    )
    if dense and is_zero(p[0] * q[1] + p[1] * q[0], tol * float(np.abs(np.asarray([*p, *q], float)).max() ** 2)):
        return R2Classification(True, normal)
    if not F.spans():
        return R2Classification(False, normal, nonspanning_counterexample(F))
    x, y, tag = _r2_witness(p, q)
    return R2Classification(False, normal, verify_witness(F, x, y, tag))


def rot90(v) -> np.ndarray:
    v = as_array(v)
    return np.array([-v[1], v[0]], dtype=v.dtype)


# ---------------------------------------------------------------------------
# Non-spanning frames
# ---------------------------------------------------------------------------

def _overlap_witness(x: np.ndarray, z: np.ndarray, tol: float):
    """``(a z + x, x)`` flipping the sign product of ``x`` on two coordinates."""
    common = [k for k in range(len(x)) if not is_zero(x[k], tol) and not is_zero(z[k], tol)]
    i = next(k for k in common if z[k] * x[k] > 0)
    j = next(k for k in common if z[k] * x[k] < 0)
    a = 2 * abs(x[j] / z[j])
    return a * z + x, x, {"a": a, "coordinates": (i, j)}


def nonspanning_counterexample(F: Frame, x=None, z=None) -> WeakWitness:
    """Counterexample for a frame whose span is a proper subspace.

    With ``z`` orthogonal to the span and ``x`` in it: if their supports share
    two coordinates, ``(a z + x, x)`` works for a large enough ``a > 0``;
    otherwise the supports are disjoint and ``(x + z, x - z)`` works.
    Candidates default to the frame vectors and a basis of the complement.
    """
    n = F.dim
    if F.spans():
        raise ValueError("frame spans R^n; no non-spanning counterexample exists")
    if n < 2:
        raise ValueError("every pair of vectors in R^1 weakly has the same phase")
    tol = 0.0 if F.exact else F.tol
    comp = orthocomplement(F.vectors, tol=F.tol)
    xs = [as_array(x)] if x is not None else [v for v in F.vectors if not all(is_zero(c, tol) for c in v)]
    zs = [as_array(z)] if z is not None else list(comp.basis)
    if not xs:
        # span is {0}: every pair is measurement-equal
        e = np.array([1, 1] + [0] * (n - 2), dtype=object)
        f = np.array([1, -1] + [0] * (n - 2), dtype=object)
        return verify_witness(F, as_array(e), as_array(f), "nonspanning-zero-span")
    for xc in xs:
        for zc in zs:
            xc, zc = common_mode(xc, zc)
            if x is not None or z is not None:
                if not is_zero(inner(xc, zc), tol) or not comp.contains(zc):
                    raise ValueError("z must be orthogonal to the span of the frame")
            shared = sum(1 for a, b in zip(xc, zc) if not is_zero(a, tol) and not is_zero(b, tol))
            if shared >= 2:
                p, q, info = _overlap_witness(xc, zc, tol)
                return verify_witness(F, p, q, "nonspanning-overlap", details=info)
            if shared == 0:
                return verify_witness(F, xc + zc, xc - zc, "nonspanning-disjoint")
    raise RuntimeError("no usable (x, z) candidate")  # pragma: no cover


# ---------------------------------------------------------------------------
# Necessary conditions and structure of measurement-equal pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class NecessaryConditions:
    failed: tuple[str, ...]
    witness: WeakWitness | None = None

    @property
    def definitely_not_wpr(self) -> bool:
        return bool(self.failed)


def wpr_necessary_conditions(F: Frame) -> NecessaryConditions:
    """Check necessary conditions for weak phase retrieval.

    They are: at least ``2n - 2`` vectors, full spark when exactly ``2n - 2``,
    and spanning. Passing all of them proves nothing.
    """
    n, m = F.dim, F.m
    failed = []
    witness = None
    if m < 2 * n - 2:
        failed.append(f"count: m = {m} < 2n - 2 = {2 * n - 2}")
    if m == 2 * n - 2 and not is_full_spark(F):
        failed.append("full-spark: m = 2n - 2 but the frame is not full spark")
    if not F.spans():
        failed.append("spanning: the frame does not span R^n")
        if n >= 2:
            witness = nonspanning_counterexample(F)
    return NecessaryConditions(tuple(failed), witness)


def decompose_scaled(F: Frame, x, y) -> ScaledDecomposition | None:
    """Find ``a != 0`` and coordinates ``I`` with ``x = a y_I + y_{I^c} / a``.

    ``F`` must be a full spark frame of ``2n - 2`` vectors and ``x, y`` must
    have equal measurement magnitudes. ``None`` means no such decomposition
    exists, which for these frames happens only if weak phase retrieval
    fails, or in the degenerate case ``||x + y|| == ||x - y||``.
    """
    n = F.dim
    if F.m != 2 * n - 2 or not is_full_spark(F):
        raise ValueError("decompose_scaled needs a full spark frame with 2n - 2 vectors")
    x, y = common_mode(as_array(x), as_array(y))
    if not measurements_equal(F, x, y):
        raise ValueError("x and y do not have equal measurement magnitudes")
    exact = is_exact(x) and F.exact
    tol = 0.0 if exact else F.tol
    everything = tuple(range(n))
    one = Fraction(1) if exact else 1.0
    if all(is_zero(a - b, tol) for a, b in zip(x, y)):
        return ScaledDecomposition(one, everything)
    if all(is_zero(a + b, tol) for a, b in zip(x, y)):
        return ScaledDecomposition(-one, everything)
    u, v = x - y, x + y
    ratio_sq = norm_sq(u) / norm_sq(v)
    if exact:
        r = exact_sqrt(ratio_sq)
        if r is None:
            return None
    else:
        r = float(np.sqrt(ratio_sq))
    if is_zero(r - 1, tol):
        return None
    a = (1 - r) / (1 + r)
    I = []
    scale = max(1.0, float(np.abs(np.asarray(v, float)).max()))
    for i in range(n):
        if is_zero(u[i] + r * v[i], tol * scale):
            I.append(i)
        elif not is_zero(u[i] - r * v[i], tol * scale):
            return None
    return ScaledDecomposition(a, tuple(I))


def _unit_support_pattern(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    """``u/||u|| + v/||v||`` and ``u/||u|| - v/||v||`` have disjoint supports."""
    nu, nv = norm_sq(u), norm_sq(v)
    return all(is_zero(a * a * nv - b * b * nu, tol) for a, b in zip(u, v))


@dataclass(frozen=True, eq=False)
class DisjointSupportReport:
    holds: bool
    pairs: tuple = ()
    vacuous: bool = False

    def __bool__(self) -> bool:
        return self.holds


def disjoint_support_check(F: Frame, I: Sequence[int]) -> DisjointSupportReport:
    """Check the disjoint-support pattern on one partition.

    For ``u`` orthogonal to ``{x_i : i in I}`` and ``v`` orthogonal to the rest,
    tests whether ``u/||u|| + v/||v||`` and ``u/||u|| - v/||v||`` are disjointly
    supported. When a complement has dimension above one every pair of basis
    vectors is tested and reported.
    """
    U, V = side_complements(F, tuple(I))
    if U.dim == 0 or V.dim == 0:
        return DisjointSupportReport(True, (), True)
    tol = 0.0 if F.exact else F.tol
    pairs = []
    for u in U.basis:
        for v in V.basis:
            pairs.append((u, v, _unit_support_pattern(u, v, tol)))
    return DisjointSupportReport(all(p[2] for p in pairs), tuple(pairs))


def orthogonal_incomparability(x, y, tol: float = 0.0) -> bool:
    """Orthogonal vectors sharing a nonzero coordinate never weakly share a phase."""
    x, y = common_mode(as_array(x), as_array(y))
    if not is_zero(inner(x, y), tol):
        raise ValueError("x and y are not orthogonal")
    if not any(not is_zero(a * b, tol) for a, b in zip(x, y)):
        raise ValueError("x and y share no coordinate where both are nonzero")
    return phase_relation(x, y, tol) not in (PhaseRelation.SAME_SIGNS, PhaseRelation.OPPOSITE_SIGNS)


def wpr_full_spark_minimal(F: Frame) -> bool:
    """Exact weak phase retrieval test for full spark frames of ``2n - 2`` vectors.

    Such a frame does weak phase retrieval exactly when every partition into
    ``n - 1`` and ``n - 1`` indices passes :func:`disjoint_support_check`.
    """
    n = F.dim
    if F.m != 2 * n - 2 or not is_full_spark(F):
        raise ValueError("needs a full spark frame with 2n - 2 vectors")
    for I in combinations(range(F.m - 1), n - 1):
        if not disjoint_support_check(F, I).holds:
            return False
    return True
