"""Phase and norm retrieval decisions for vector frames.

A pair ``x, y`` has equal measurement magnitudes against a frame exactly when,
for some index set ``I``, ``u = x - y`` is orthogonal to ``{x_i : i in I}``
and ``v = x + y`` is orthogonal to ``{x_i : i not in I}``. Both deciders below
sweep these partitions. Indices are 0-based throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .errors import CapExceededError
from .frames import Frame, is_full_spark
from .linalg import (
    Subspace,
    as_array,
    common_mode,
    inner,
    is_exact,
    is_zero,
    norm_sq,
    orthocomplement,
    to_float,
)

PARTITION_CAP = 22


def partitions(m: int) -> Iterator[tuple[int, ...]]:
    """Index sets ``I`` of ``range(m)`` up to swapping ``I`` and its complement.

    The last index always falls in the complement. Order is by increasing
    bitmask, which fixes which failing partition gets reported first.
    """
    for mask in range(1 << max(m - 1, 0)):
        yield tuple(i for i in range(m - 1) if mask >> i & 1)


def complement_indices(m: int, I: Sequence[int]) -> tuple[int, ...]:
    s = set(I)
    return tuple(i for i in range(m) if i not in s)


_CERTIFY_RATIO = 1e-10
_CHUNK = 1 << 16


def spanning_table(F: Frame) -> np.ndarray:
    """``table[mask]`` is True when the vectors selected by ``mask`` certainly span R^n.

    Each subset's Gram sum ``sum x_i x_i^T`` (unit-normalized rows) is
    diagonalized in floating point. A smallest eigenvalue above ``1e-10``
    times the largest is far outside rounding error, so the exact rank (or
    the tolerance-based float rank) is ``n`` as well. False entries are
    inconclusive and callers fall back to the exact rank.
    """
    m, n = F.m, F.dim
    X = to_float(F.vectors)
    X = X / np.linalg.norm(X, axis=1, keepdims=True)
    outers = np.einsum("ij,ik->ijk", X, X).reshape(m, n * n)
    out = np.zeros(1 << m, dtype=bool)
    shifts = np.arange(m)
    for start in range(0, 1 << m, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << m))
        bits = ((masks[:, None] >> shifts) & 1).astype(float)
        ev = np.linalg.eigvalsh((bits @ outers).reshape(-1, n, n))
        out[start : start + len(masks)] = ev[:, 0] > _CERTIFY_RATIO * np.maximum(ev[:, -1], 1e-300)
    return out


def _mask(I: Sequence[int]) -> int:
    return sum(1 << i for i in I)


def _check_cap(F: Frame, cap: int | None) -> None:
    cap = PARTITION_CAP if cap is None else cap
    if F.m > cap:
        raise CapExceededError(f"partition sweep over {F.m} vectors exceeds the cap of {cap}")


def side_complements(F: Frame, I: Sequence[int]) -> tuple[Subspace, Subspace]:
    """``(span{x_i : i in I})^perp`` and the same for the complement of ``I``."""
    Ic = complement_indices(F.m, I)
    U = orthocomplement(F.subset(I) if I else [], n=F.dim, tol=F.tol)
    V = orthocomplement(F.subset(Ic) if Ic else [], n=F.dim, tol=F.tol)
    if not F.exact:
        U = Subspace(F.dim, U.basis.astype(float), F.tol)
        V = Subspace(F.dim, V.basis.astype(float), F.tol)
    return U, V


@dataclass(frozen=True, eq=False)
class PartitionWitness:
    """Vectors ``u`` and ``v`` orthogonal to the two sides of a partition.

    ``x = (u + v) / 2`` and ``y = (v - u) / 2`` then have equal measurement
    magnitudes, with ``<x, x_i> = <y, x_i>`` on ``I`` and opposite signs off it.
    """

    partition: tuple[int, ...]
    u: np.ndarray
    v: np.ndarray

    @property
    def x(self) -> np.ndarray:
        return (self.u + self.v) / 2

    @property
    def y(self) -> np.ndarray:
        return (self.v - self.u) / 2

    @property
    def norm_gap(self):
        """``||x||^2 - ||y||^2``, which always equals ``<u, v>``."""
        return norm_sq(self.x) - norm_sq(self.y)


@dataclass(frozen=True, eq=False)
class RetrievalResult:
    holds: bool
    certificate: str
    partition: tuple[int, ...] | None = None
    witness: PartitionWitness | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def measurement_pair(F: Frame, I: Sequence[int], u, v, check: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """The pair ``x = (u+v)/2, y = (v-u)/2`` for a partition ``I``.

    Requires ``u`` orthogonal to the frame vectors indexed by ``I`` and ``v``
    orthogonal to the rest.
    """
    u, v = common_mode(as_array(u), as_array(v))
    if check:
        tol = 0.0 if is_exact(u) and F.exact else F.tol
        in_I = set(I)
        for i, xi in enumerate(F.vectors):
            w = u if i in in_I else v
            scale = max(1.0, float(np.linalg.norm(np.asarray(w, dtype=float)) * np.linalg.norm(np.asarray(xi, dtype=float))))
            if not is_zero(inner(w, xi), tol * scale):
                side = "u" if i in in_I else "v"
                raise ValueError(f"{side} is not orthogonal to frame vector {i}")
    return (u + v) / 2, (v - u) / 2


def has_complement_property(F: Frame, cap: int | None = None) -> RetrievalResult:
    """For every partition, one side spans R^n.

    On failure the result carries the first offending ``I`` together with a
    :class:`PartitionWitness` built from the two nonzero complements.
    """
    _check_cap(F, cap)
    n = F.dim
    table = spanning_table(F)
    full = (1 << F.m) - 1
    for I in partitions(F.m):
        mask = _mask(I)
        if table[mask] or table[full ^ mask]:
            continue
        Ic = complement_indices(F.m, I)
        if len(I) >= n and F.rank(I) == n:
            continue
        if len(Ic) >= n and F.rank(Ic) == n:
            continue
        U, V = side_complements(F, I)
        w = PartitionWitness(I, U.basis[0], V.basis[0])
        return RetrievalResult(False, f"neither side of partition {list(I)} spans", I, w)
    return RetrievalResult(True, "complement property verified over all partitions")


def does_phase_retrieval(F: Frame, cap: int | None = None) -> RetrievalResult:
    """Decide phase retrieval through the complement property.

    When ``m == 2n - 1`` the verdict must coincide with full spark and the
    two are cross-checked.
    """
    result = has_complement_property(F, cap)
    details = {"m": F.m, "n": F.dim}
    if F.m == 2 * F.dim - 1:
        fs = is_full_spark(F)
        details["full_spark"] = fs
        if fs != result.holds:
            raise RuntimeError(
                "complement property and full spark disagree at m = 2n - 1; "
                "tolerance is probably too loose or too tight for this input"
            )
    return RetrievalResult(result.holds, result.certificate, result.partition, result.witness, details)


def _first_nonorthogonal_pair(U: Subspace, V: Subspace, tol: float):
    for u in U.basis:
        for v in V.basis:
            ip = inner(u, v)
            scale = tol * float(np.sqrt(float(norm_sq(u)) * float(norm_sq(v))))
            if not is_zero(ip, scale):
                return u, v
    return None


def does_norm_retrieval(F: Frame, cap: int | None = None) -> RetrievalResult:
    """Decide norm retrieval: the two complements of every partition are orthogonal.

    Since ``||x||^2 - ||y||^2 = <u, v>`` for the pair built from ``u`` and
    ``v``, a non-orthogonal pair of complements is exactly a failure.
    """
    _check_cap(F, cap)
    tol = 0.0 if F.exact else F.tol
    table = spanning_table(F)
    full = (1 << F.m) - 1
    for I in partitions(F.m):
        mask = _mask(I)
        if table[mask] or table[full ^ mask]:
            continue
        U, V = side_complements(F, I)
        if U.dim == 0 or V.dim == 0:
            continue
        hit = _first_nonorthogonal_pair(U, V, tol)
        if hit is not None:
            u, v = hit
            w = PartitionWitness(I, u, v)
            return RetrievalResult(
                False,
                f"complements of partition {list(I)} are not orthogonal: <u, v> = {inner(u, v)}",
                I,
                w,
            )
    return RetrievalResult(True, "complements orthogonal for every partition")


def is_orthogonal_set(vectors, tol: float = 0.0) -> bool:
    V = as_array(vectors)
    if not is_exact(V) and tol == 0.0:
        tol = 1e-9
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            scale = tol * float(np.sqrt(float(norm_sq(V[i])) * float(norm_sq(V[j]))))
            if not is_zero(inner(V[i], V[j]), scale):
                return False
    return True


@dataclass(frozen=True)
class OrthogonalityReport:
    orthogonal: bool
    norm_retrieval: bool
    consistent: bool


def orthogonality_necessity(F: Frame) -> OrthogonalityReport:
    """For a basis of R^n, norm retrieval forces orthogonality.

    Raises ``ValueError`` unless ``F`` is a basis. For bases the two
    predicates coincide; ``consistent`` records that they did.
    """
    if F.m != F.dim or not F.spans():
        raise ValueError("expected exactly n linearly independent vectors")
    orth = is_orthogonal_set(F.vectors, 0.0 if F.exact else F.tol)
    nr = does_norm_retrieval(F).holds
    return OrthogonalityReport(orth, nr, orth == nr)
