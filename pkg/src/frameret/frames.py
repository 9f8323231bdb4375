"""Frames, fusion frames, frame bounds and spark."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import CapExceededError
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    as_array,
    is_exact,
    is_zero,
    outer,
    rank,
    to_float,
    to_scalar,
    zeros,
)

SPARK_CAP = 24


@dataclass(frozen=True, eq=False)
class Frame:
    """An ordered list of ``m`` vectors in R^n.

    Zero vectors are rejected unless ``allow_zero`` is set. ``promoted`` is
    True when rational and float literals were mixed and the frame fell back
    to float arithmetic.
    """

    vectors: np.ndarray
    label: str | None = None
    allow_zero: bool = False
    tol: float = DEFAULT_TOL
    promoted: bool = field(default=False, init=False)

    def __post_init__(self):
        raw = self.vectors
        if len(raw) == 0:
            raise ValueError("a frame needs at least one vector")
        V = as_array(raw)
        if V.ndim != 2:
            raise ValueError("vectors must all have the same dimension")
        if V.shape[1] < 1:
            raise ValueError("dimension must be positive")
        if not is_exact(V):
            kinds = {type(to_scalar(v)) for v in np.asarray(raw, dtype=object).flat}
            object.__setattr__(self, "promoted", len(kinds) > 1)
        if not self.allow_zero:
            for i, v in enumerate(V):
                if all(is_zero(e, self.tol) for e in v):
                    raise ValueError(f"vector {i} is zero")
        object.__setattr__(self, "vectors", V)

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def m(self) -> int:
        return self.vectors.shape[0]

    @property
    def exact(self) -> bool:
        return is_exact(self.vectors)

    def __len__(self) -> int:
        return self.m

    def __getitem__(self, i) -> np.ndarray:
        return self.vectors[i]

    def __iter__(self):
        return iter(self.vectors)

    def subset(self, indices: Sequence[int]) -> np.ndarray:
        return self.vectors[list(indices)]

    def rank(self, indices: Sequence[int] | None = None) -> int:
        if indices is None:
            return rank(self.vectors, self.tol)
        if len(indices) == 0:
            return 0
        return rank(self.subset(indices), self.tol)

    def spans(self) -> bool:
        return self.rank() == self.dim

    def scaled(self, factors: Sequence) -> "Frame":
        V = np.array([to_scalar(a) * v for a, v in zip(factors, self.vectors)], dtype=self.vectors.dtype)
        return Frame(V, self.label, self.allow_zero, self.tol)


@dataclass(frozen=True, eq=False)
class FusionFrame:
    """Weighted subspaces ``(W_i, v_i)`` of R^n; weights default to 1."""

    subspaces: tuple[Subspace, ...]
    weights: tuple = ()
    label: str | None = None

    def __post_init__(self):
        subs = tuple(self.subspaces)
        if not subs:
            raise ValueError("a fusion frame needs at least one subspace")
        n = subs[0].ambient_dim
        if any(W.ambient_dim != n for W in subs):
            raise ValueError("subspaces live in different ambient spaces")
        weights = tuple(to_scalar(w) for w in self.weights) if self.weights else (1,) * len(subs)
        weights = tuple(to_scalar(w) for w in weights)
        if len(weights) != len(subs):
            raise ValueError("need one weight per subspace")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be strictly positive")
        object.__setattr__(self, "subspaces", subs)
        object.__setattr__(self, "weights", weights)

    @property
    def dim(self) -> int:
        return self.subspaces[0].ambient_dim

    @property
    def exact(self) -> bool:
        return all(W.exact for W in self.subspaces) and all(not isinstance(w, float) for w in self.weights)

    def __len__(self) -> int:
        return len(self.subspaces)

    def __iter__(self):
        return iter(self.subspaces)

    def __getitem__(self, i) -> Subspace:
        return self.subspaces[i]

    @property
    def projections(self) -> list[np.ndarray]:
        return [W.projection for W in self.subspaces]


@dataclass(frozen=True)
class FrameBounds:
    lower: float
    upper: float
    tol: float = DEFAULT_TOL

    @property
    def is_frame(self) -> bool:
        return self.lower > self.tol

    @property
    def is_tight(self) -> bool:
        return self.is_frame and abs(self.upper - self.lower) <= self.tol * self.upper

    @property
    def is_parseval(self) -> bool:
        return self.is_tight and abs(self.lower - 1) <= self.tol and abs(self.upper - 1) <= self.tol


def frame_operator(F: Frame) -> np.ndarray:
    """``S = sum_i x_i x_i^T``."""
    S = zeros((F.dim, F.dim), F.exact)
    for v in F.vectors:
        S = S + outer(v, v)
    return S


def fusion_operator(FF: FusionFrame) -> np.ndarray:
    """``S = sum_i v_i^2 P_i``."""
    S = zeros((FF.dim, FF.dim), FF.exact)
    for w, W in zip(FF.weights, FF.subspaces):
        P = W.projection
        S = (S + (w * w) * P) if FF.exact else (to_float(S) + float(w) ** 2 * to_float(P))
    return S


def frame_bounds(F: Frame | FusionFrame) -> FrameBounds:
    """Optimal frame bounds, the extreme eigenvalues of the frame operator."""
    S = frame_operator(F) if isinstance(F, Frame) else fusion_operator(F)
    tol = F.tol if isinstance(F, Frame) else F.subspaces[0].tol
    ev = np.linalg.eigvalsh(to_float(S))
    lower = max(float(ev[0]), 0.0)
    return FrameBounds(lower, float(ev[-1]), tol)


def spark(F: Frame, cap: int = SPARK_CAP) -> int:
    """Size of the smallest linearly dependent subset; ``m + 1`` if none.

    Subsets are enumerated by increasing size and the search stops at the
    first dependent one.
    """
    if F.exact and F.m > cap:
        raise CapExceededError(f"spark enumeration over {F.m} vectors exceeds the cap of {cap}")
    for k in range(1, min(F.m, F.dim) + 1):
        for idx in combinations(range(F.m), k):
            if F.rank(idx) < k:
                return k
    return F.dim + 1 if F.m > F.dim else F.m + 1


def is_full_spark(F: Frame, cap: int = SPARK_CAP) -> bool:
    """Every n-element subset spans R^n."""
    if F.m < F.dim:
        return False
    if F.exact and F.m > cap:
        raise CapExceededError(f"spark enumeration over {F.m} vectors exceeds the cap of {cap}")
    return all(F.rank(idx) == F.dim for idx in combinations(range(F.m), F.dim))


@dataclass(frozen=True)
class RieszCheck:
    is_riesz: bool
    lower: float
    upper: float

    def __bool__(self) -> bool:
        return self.is_riesz


def is_riesz_sequence(vectors, tol: float = DEFAULT_TOL) -> RieszCheck:
    """Linear independence test with Gram-matrix eigenvalue bounds."""
    V = as_array(vectors)
    if V.ndim == 1:
        V = V.reshape(1, -1)
    G = to_float(V) @ to_float(V).T
    ev = np.linalg.eigvalsh(G)
    independent = rank(V, tol) == len(V)
    return RieszCheck(independent, max(float(ev[0]), 0.0), float(ev[-1]))
