"""Dense real linear algebra over exact rationals or floats.

Vectors and matrices are numpy arrays. Exact arrays have ``dtype=object``
and hold :class:`fractions.Fraction` entries; float arrays are ``float64``.
Every routine here accepts either kind and stays exact when all of its
inputs are exact. Mixing the two promotes to float.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt, lcm
from numbers import Integral, Rational, Real
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

Scalar = Fraction | float


def to_scalar(value) -> Scalar:
    """Coerce ``value`` to a Fraction (integers, rationals) or a float."""
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (Integral, np.integer)):
        return Fraction(int(value))
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, (Real, np.floating)):
        return float(value)
    raise TypeError(f"cannot interpret {value!r} as a real scalar")


def is_exact(a: np.ndarray) -> bool:
    return a.dtype == object


def as_array(values, exact: bool | None = None) -> np.ndarray:
    """Build a vector or matrix from nested sequences.

    With ``exact=None`` the mode is inferred: exact if every entry is an
    integer or rational, float otherwise. ``exact=True`` with a float entry
    raises ``ValueError``.
    """
    if isinstance(values, np.ndarray) and exact is None:
        if values.dtype == object:
            if all(isinstance(v, Fraction) for v in values.flat):
                return values
        elif np.issubdtype(values.dtype, np.floating):
            return values
    raw = np.asarray(values, dtype=object)
    if any(isinstance(v, (list, tuple, np.ndarray)) for v in raw.flat):
        raise ValueError("rows must all have the same length")
    entries = [to_scalar(v) for v in raw.flat]
    all_rational = all(isinstance(v, Fraction) for v in entries)
    if exact is None:
        exact = all_rational
    if exact:
        if not all_rational:
            raise ValueError("exact mode requested but input contains float literals")
        out = np.empty(raw.shape, dtype=object)
        out.flat[:] = entries
        return out
    return np.array([float(v) for v in entries], dtype=float).reshape(raw.shape)


def to_float(a: np.ndarray) -> np.ndarray:
    return a.astype(float) if is_exact(a) else a


def common_mode(*arrays: np.ndarray) -> tuple[np.ndarray, ...]:
    """Promote all arrays to float if any of them is float."""
    if all(is_exact(a) for a in arrays):
        return arrays
    return tuple(to_float(a) for a in arrays)


def zeros(shape, exact: bool = True) -> np.ndarray:
    if not exact:
        return np.zeros(shape)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def identity(n: int, exact: bool = True) -> np.ndarray:
    out = zeros((n, n), exact)
    for i in range(n):
        out[i, i] = Fraction(1) if exact else 1.0
    return out


def unit_vector(n: int, i: int, exact: bool = True) -> np.ndarray:
    out = zeros(n, exact)
    out[i] = Fraction(1) if exact else 1.0
    return out


def is_zero(s, tol: float = 0.0) -> bool:
    if isinstance(s, Fraction) or tol == 0.0:
        return s == 0
    return abs(s) <= tol


def sign(s, tol: float = 0.0) -> int:
    if is_zero(s, tol):
        return 0
    return 1 if s > 0 else -1


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Square root of a non-negative rational, or None if it is irrational."""
    if q < 0:
        raise ValueError("negative argument")
    p, d = q.numerator, q.denominator
    rp, rd = isqrt(p), isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


def inner(x: np.ndarray, y: np.ndarray) -> Scalar:
    """Euclidean inner product; exact when both inputs are exact."""
    x, y = common_mode(as_array(x), as_array(y))
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    if is_exact(x):
        return sum((a * b for a, b in zip(x, y)), Fraction(0))
    return float(x @ y)


def norm_sq(x: np.ndarray) -> Scalar:
    return inner(x, x)


def mat_vec(M: np.ndarray, x: np.ndarray) -> np.ndarray:
    M, x = common_mode(as_array(M), as_array(x))
    if M.shape[1] != x.shape[0]:
        raise ValueError(f"dimension mismatch: {M.shape} @ {x.shape}")
    return M @ x


def outer(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x, y = common_mode(as_array(x), as_array(y))
    return np.outer(x, y)


# ---------------------------------------------------------------------------
# Rank, determinant, null space
# ---------------------------------------------------------------------------

def _integer_rows(M: np.ndarray) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; returns the rows and the product of scales."""
    rows, scale = [], 1
    for row in M:
        den = lcm(*(q.denominator for q in row)) if len(row) else 1
        rows.append([int(q * den) for q in row])
        scale *= den
    return rows, scale


def _bareiss(A: list[list[int]]) -> tuple[int, int, int]:
    """Fraction-free elimination in place.

    Returns (rank, last pivot, row-swap parity). For a square nonsingular
    input the last pivot is the determinant up to the parity sign.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    r, prev, swaps = 0, 1, 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            swaps += 1
        pr = A[r]
        for i in range(r + 1, m):
            row = A[i]
            f = row[c]
            for j in range(c + 1, n):
                row[j] = (row[j] * pr[c] - f * pr[j]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
        if r == m:
            break
    return r, prev, swaps


def _svd_rank(M: np.ndarray, tol: float) -> int:
    if M.size == 0:
        return 0
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def rank(M, tol: float = DEFAULT_TOL) -> int:
    """Row rank of ``M``.

    Exact input uses fraction-free Gaussian elimination. Float input counts
    singular values above ``tol`` times the largest one.
    """
    M = as_array(M)
    if M.ndim == 1:
        M = M.reshape(1, -1)
    if M.size == 0:
        return 0
    if is_exact(M):
        rows, _ = _integer_rows(M)
        return _bareiss(rows)[0]
    return _svd_rank(M, tol)


def det(M) -> Scalar:
    M = as_array(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"det requires a square matrix, got shape {M.shape}")
    n = M.shape[0]
    if n == 0:
        return Fraction(1)
    if not is_exact(M):
        return float(np.linalg.det(M))
    rows, scale = _integer_rows(M)
    r, last, swaps = _bareiss(rows)
    if r < n:
        return Fraction(0)
    return Fraction((-1) ** swaps * last, scale)


def _rref(M: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = M.copy()
    m, n = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i, c] != 0), None)
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] / A[r, c]
        for i in range(m):
            if i != r and A[i, c] != 0:
                A[i] = A[i] - A[i, c] * A[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots


def _canonical_sign(v: np.ndarray, tol: float) -> np.ndarray:
    for e in v:
        if not is_zero(e, tol):
            return v if e > 0 else -v
    return v


def null_space(M, n: int | None = None, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Basis (as rows) of ``{x : M x = 0}``.

    Each basis vector has its first nonzero entry positive. ``n`` gives the
    ambient dimension when ``M`` has no rows.
    """
    M = as_array(M) if len(M) else M
    if len(M) == 0:
        if n is None:
            raise ValueError("ambient dimension required for an empty matrix")
        return identity(n, exact=not (isinstance(M, np.ndarray) and M.dtype == float))
    if M.ndim == 1:
        M = M.reshape(1, -1)
    n = M.shape[1]
    if is_exact(M):
        R, pivots = _rref(M)
        free = [c for c in range(n) if c not in pivots]
        basis = zeros((len(free), n))
        for k, f in enumerate(free):
            basis[k, f] = Fraction(1)
            for row, p in enumerate(pivots):
                basis[k, p] = -R[row, f]
            basis[k] = _canonical_sign(basis[k], 0.0)
        return basis
    r = _svd_rank(M, tol)
    _, _, vt = np.linalg.svd(M)
    basis = vt[r:].copy()
    for k in range(basis.shape[0]):
        basis[k] = _canonical_sign(basis[k], tol)
    return basis


# ---------------------------------------------------------------------------
# Orthogonalization and subspaces
# ---------------------------------------------------------------------------

def gram_schmidt(vectors, tol: float = DEFAULT_TOL, normalize: bool | None = None) -> np.ndarray:
    """Modified Gram-Schmidt; dependent vectors are dropped.

    Exact input is orthogonalized without normalization so entries stay
    rational. Float input is orthonormalized unless ``normalize=False``.
    """
    V = as_array(vectors)
    exact = is_exact(V)
    if normalize is None:
        normalize = not exact
    if normalize and exact:
        raise ValueError("cannot normalize exactly; pass float input")
    out: list[np.ndarray] = []
    for v in V:
        w = v.copy()
        for q in out:
            qq = norm_sq(q)
            w = w - (inner(w, q) / qq) * q
        nw = norm_sq(w)
        if exact:
            if nw == 0:
                continue
        elif np.sqrt(nw) <= tol * max(1.0, float(np.sqrt(norm_sq(v)))):
            continue
        if normalize:
            w = w / np.sqrt(nw)
        out.append(w)
    if not out:
        return zeros((0, V.shape[1] if V.ndim == 2 else 0), exact)
    return np.array(out, dtype=object if exact else float)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of R^n held by a basis.

    ``ortho_basis`` is orthogonal (exact mode) or orthonormal (float mode)
    and spans the same space as ``basis``.
    """

    ambient_dim: int
    basis: np.ndarray = field(repr=False)
    tol: float = field(default=DEFAULT_TOL, repr=False)

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        B = self.basis
        if len(B) == 0:
            B = zeros((0, self.ambient_dim), exact=not (isinstance(B, np.ndarray) and B.dtype == float))
        else:
            B = as_array(B)
            if B.ndim == 1:
                B = B.reshape(1, -1)
        if B.shape[1] != self.ambient_dim:
            raise ValueError(f"basis vectors must have dimension {self.ambient_dim}")
        if len(B) and rank(B, self.tol) != len(B):
            raise ValueError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", B)

    @classmethod
    def span(cls, vectors, n: int | None = None, tol: float = DEFAULT_TOL) -> "Subspace":
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        V = as_array(vectors) if len(vectors) else vectors
        if len(V) == 0:
            if n is None:
                raise ValueError("ambient dimension required for an empty span")
            return cls(n, zeros((0, n)), tol)
        if V.ndim == 1:
            V = V.reshape(1, -1)
        if is_exact(V):
            R, pivots = _rref(V)
            return cls(V.shape[1], R[: len(pivots)], tol)
        return cls(V.shape[1], gram_schmidt(V, tol), tol)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    @cached_property
    def ortho_basis(self) -> np.ndarray:
        if self.dim == 0:
            return self.basis
        return gram_schmidt(self.basis, self.tol)

    @cached_property
    def projection(self) -> np.ndarray:
        """Orthogonal projection matrix onto the subspace."""
        n = self.ambient_dim
        P = zeros((n, n), self.exact)
        for q in self.ortho_basis:
            P = P + outer(q, q) / norm_sq(q)
        return P

    def project(self, x) -> np.ndarray:
        return mat_vec(self.projection, as_array(x))

    def complement(self) -> "Subspace":
        return orthocomplement(self)

    def contains(self, x) -> bool:
        x = as_array(x)
        if not self.exact:
            x = to_float(x)
        r = x - self.project(x)
        if is_exact(r):
            return all(e == 0 for e in r)
        return float(np.linalg.norm(r)) <= 10 * self.tol * max(1.0, float(np.linalg.norm(to_float(x))))

    def __contains__(self, x) -> bool:
        return self.contains(x)


def orthocomplement(S: Subspace | Sequence, n: int | None = None, tol: float = DEFAULT_TOL) -> Subspace:
    """Orthogonal complement of a subspace or of the span of a vector list.

    The complement of the empty list is all of R^n (``n`` required then).
    """
    if isinstance(S, Subspace):
        n, tol, vectors = S.ambient_dim, S.tol, S.basis
        if S.dim == 0:
            return Subspace(n, identity(n, exact=S.exact), tol)
    else:
        vectors = S
        if len(vectors) == 0:
            if n is None:
                raise ValueError("ambient dimension required for an empty vector list")
            return Subspace(n, identity(n), tol)
        vectors = as_array(vectors)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1)
        if n is not None and vectors.shape[1] != n:
            raise ValueError("vectors do not live in the stated ambient space")
        n = vectors.shape[1]
    return Subspace(n, null_space(vectors, n, tol), tol)


def project_subspace(S: Subspace, x) -> np.ndarray:
    return S.project(x)


def project_hyperplane(normal, x) -> np.ndarray:
    """Project ``x`` onto the hyperplane orthogonal to ``normal``."""
    normal, x = common_mode(as_array(normal), as_array(x))
    if normal.shape != x.shape:
        raise ValueError("dimension mismatch")
    nn = norm_sq(normal)
    if is_zero(nn):
        raise ValueError("zero normal vector")
    return x - (inner(x, normal) / nn) * normal


def hyperplane_projection(normal) -> np.ndarray:
    """Matrix ``I - n n^T / <n, n>``."""
    normal = as_array(normal)
    nn = norm_sq(normal)
    if is_zero(nn):
        raise ValueError("zero normal vector")
    return identity(len(normal), is_exact(normal)) - outer(normal, normal) / nn


def invert(M) -> np.ndarray:
    M = as_array(M)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("inverse requires a square matrix")
    if not is_exact(M):
        return np.linalg.inv(M)
    R, pivots = _rref(np.hstack([M, identity(n)]))
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def rationalize(x: np.ndarray, max_denominator: int = 10**6) -> np.ndarray:
    """Nearest small-denominator rational vector to a float vector."""
    out = np.empty(np.shape(x), dtype=object)
    out.flat[:] = [Fraction(float(v)).limit_denominator(max_denominator) for v in np.ravel(x)]
    return out


def format_scalar(s) -> str:
    if isinstance(s, Fraction):
        return str(s.numerator) if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
    return repr(float(s))


def format_vector(v: Iterable) -> str:
    return "(" + ", ".join(format_scalar(s) for s in v) + ")"
