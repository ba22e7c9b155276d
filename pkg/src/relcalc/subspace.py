"""
Orthonormal-frame arithmetic for subspaces of C^d.

A subspace is always carried as a :class:`Frame`, a ``d x r`` matrix with
orthonormal columns. Frames are unique only up to unitary mixing of the
columns, so equality of subspaces is decided through projectors and
principal angles, never by comparing basis matrices.

All rank decisions go through :func:`numerical_rank`, which applies the
relative singular-value cutoff ``sigma_max * rank_rtol * max(rows, cols)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import DimensionMismatchError


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical thresholds used for rank and comparison decisions.

    Attributes:
        rank_rtol: relative singular-value cutoff for rank decisions.
        cmp_atol: absolute tolerance for scalar comparisons.
        containment_tol: largest principal-angle sine accepted by subset tests.
    """

    rank_rtol: float = 1e-10
    cmp_atol: float = 1e-9
    containment_tol: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rtol", "cmp_atol", "containment_tol"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be a finite nonnegative real, got {value!r}")

    def as_dict(self):
        return {
            "rank_rtol": self.rank_rtol,
            "cmp_atol": self.cmp_atol,
            "containment_tol": self.containment_tol,
        }


DEFAULT_TOL = TolerancePolicy()


def numerical_rank(s, shape, tol=DEFAULT_TOL, scale=None):
    """Number of singular values ``s`` (sorted descending) above the cutoff.

    The cutoff is relative to ``s[0]`` unless ``scale`` is given; blocks cut
    out of an orthonormal frame pass ``scale=1`` so that a block of pure
    rounding noise is not mistaken for a full-rank one.
    """
    s = np.asarray(s)
    ref = s[0] if (scale is None and s.size) else scale
    if s.size == 0 or not ref:
        return 0
    cutoff = ref * tol.rank_rtol * max(shape)
    return int(np.count_nonzero(s > cutoff))


def _svd(A):
    """Full SVD tolerant of empty matrices."""
    rows, cols = A.shape
    if rows == 0 or cols == 0:
        return (np.eye(rows, dtype=complex), np.zeros(0),
                np.eye(cols, dtype=complex))
    return np.linalg.svd(A, full_matrices=True)


def range_basis(A, tol=DEFAULT_TOL, scale=None):
    """Orthonormal basis of the column space of ``A``."""
    A = np.asarray(A, dtype=complex)
    U, s, _ = _svd(A)
    r = numerical_rank(s, A.shape, tol, scale)
    return U[:, :r]


def null_basis(A, tol=DEFAULT_TOL):
    """Orthonormal basis of the null space of ``A``."""
    A = np.asarray(A, dtype=complex)
    _, s, Vh = _svd(A)
    r = numerical_rank(s, A.shape, tol)
    return Vh[r:].conj().T


@dataclass(frozen=True, eq=False)
class Frame:
    """An orthonormal basis of a subspace of C^d, stored as columns.

    Construct frames through :func:`orthonormalize` unless the columns are
    already known to be orthonormal.
    """

    basis: np.ndarray = field(repr=False)

    def __post_init__(self):
        B = np.array(self.basis, dtype=complex, copy=True)
        if B.ndim != 2:
            raise ValueError("frame basis must be a 2-d array")
        d, r = B.shape
        if d < 1:
            raise ValueError("ambient dimension must be positive")
        if r > d:
            raise ValueError(f"frame has {r} columns in dimension {d}")
        if r:
            G = B.conj().T @ B
            G[np.diag_indices(r)] -= 1.0
            if np.abs(G).max() > DEFAULT_TOL.cmp_atol:
                raise ValueError("frame columns are not orthonormal")
        B.flags.writeable = False
        object.__setattr__(self, "basis", B)

    @property
    def ambient_dim(self):
        return self.basis.shape[0]

    @property
    def rank(self):
        return self.basis.shape[1]

    @property
    def projector(self):
        return self.basis @ self.basis.conj().T

    def project(self, v):
        v = _as_vector(v, self.ambient_dim)
        return self.basis @ (self.basis.conj().T @ v)

    def __repr__(self):
        return f"Frame(ambient_dim={self.ambient_dim}, rank={self.rank})"

    @classmethod
    def zero(cls, d):
        return cls(np.zeros((d, 0), dtype=complex))

    @classmethod
    def full(cls, d):
        return cls(np.eye(d, dtype=complex))


def _as_vector(v, d):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != d:
        raise DimensionMismatchError(f"vector has length {v.shape[0]}, expected {d}")
    return v


def _check_same_ambient(F1, F2):
    if F1.ambient_dim != F2.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {F1.ambient_dim} vs {F2.ambient_dim}")


def orthonormalize(vectors, dim=None, tol=DEFAULT_TOL):
    """Frame spanning the given vectors.

    ``vectors`` is either a sequence of length-d vectors or a ``d x k``
    array whose columns are the generators. ``dim`` is required when the
    sequence is empty.
    """
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        A = np.asarray(vectors, dtype=complex)
        if dim is not None and A.shape[0] != dim:
            raise DimensionMismatchError(
                f"generators have length {A.shape[0]}, expected {dim}")
    else:
        vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in vectors]
        if not vecs:
            if dim is None:
                raise ValueError("dim is required for an empty generator list")
            return Frame.zero(dim)
        lengths = {v.shape[0] for v in vecs}
        if len(lengths) > 1 or (dim is not None and lengths != {dim}):
            raise DimensionMismatchError(f"inconsistent vector lengths {sorted(lengths)}")
        A = np.column_stack(vecs)
    return Frame(range_basis(A, tol))


def complement(F):
    """Orthogonal complement of ``F`` in C^d."""
    if F.rank == 0:
        return Frame.full(F.ambient_dim)
    # columns are orthonormal, so every singular value of F^H is 1
    _, _, Vh = np.linalg.svd(F.basis.conj().T, full_matrices=True)
    return Frame(Vh[F.rank:].conj().T)


def span_sum(F1, F2, tol=DEFAULT_TOL):
    """The subspace F1 + F2."""
    _check_same_ambient(F1, F2)
    return Frame(range_basis(np.hstack([F1.basis, F2.basis]), tol))


def intersect(F1, F2, tol=DEFAULT_TOL):
    """The subspace F1 ∩ F2.

    Computed from the null space of ``[B1, -B2]``; that matrix has the same
    singular values as ``[B1, B2]``, so the dimension formula against
    :func:`span_sum` holds exactly under the shared rank rule.
    """
    _check_same_ambient(F1, F2)
    d, r1 = F1.basis.shape
    if r1 == 0 or F2.rank == 0:
        return Frame.zero(d)
    N = null_basis(np.hstack([F1.basis, -F2.basis]), tol)
    k = N.shape[1]
    if k == 0:
        return Frame.zero(d)
    W = 0.5 * (F1.basis @ N[:r1] + F2.basis @ N[r1:])
    U, _, _ = np.linalg.svd(W, full_matrices=False)
    return Frame(U[:, :k])


def distance(v, F):
    """Euclidean distance from ``v`` to the subspace ``F``."""
    v = _as_vector(v, F.ambient_dim)
    return float(np.linalg.norm(v - F.project(v)))


def containment_sine(F1, F2):
    """Largest principal-angle sine of F1 measured against F2.

    Zero exactly when F1 ⊆ F2. Computed as ``||(I - P2) B1||``, which stays
    accurate for tiny angles where cosine-based formulas do not.
    """
    _check_same_ambient(F1, F2)
    if F1.rank == 0:
        return 0.0
    R = F1.basis - F2.basis @ (F2.basis.conj().T @ F1.basis)
    return float(np.linalg.norm(R, 2))


def projector_gap(F1, F2):
    """Operator norm of ``P1 - P2``."""
    _check_same_ambient(F1, F2)
    D = F1.projector - F2.projector
    return float(np.max(np.abs(np.linalg.eigvalsh(D))))


@dataclass(frozen=True)
class Comparison:
    is_subset: bool
    is_equal: bool
    gap: float


def compare(F1, F2, tol=DEFAULT_TOL):
    """Subset/equality verdicts and projector gap for a pair of frames."""
    _check_same_ambient(F1, F2)
    sub = containment_sine(F1, F2) <= tol.containment_tol
    sup = containment_sine(F2, F1) <= tol.containment_tol
    return Comparison(is_subset=sub, is_equal=sub and sup, gap=projector_gap(F1, F2))


def is_subset(F1, F2, tol=DEFAULT_TOL):
    return containment_sine(F1, F2) <= tol.containment_tol


def is_equal(F1, F2, tol=DEFAULT_TOL):
    return is_subset(F1, F2, tol) and is_subset(F2, F1, tol)


def contains_vector(F, v, tol=DEFAULT_TOL):
    """Whether ``v`` lies in ``F`` up to ``containment_tol`` (relative to ``||v||``)."""
    v = _as_vector(v, F.ambient_dim)
    return distance(v, F) <= tol.containment_tol * max(1.0, float(np.linalg.norm(v)))
