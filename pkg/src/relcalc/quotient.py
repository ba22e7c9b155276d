"""
Quotient by the multivalued part, operator parts and relation norms.

For a relation T the operator part sends ``x in D(T)`` to the unique element
of ``T(x)`` orthogonal to ``T(0)``. Its norm at ``x`` is the distance from
any ``y in T(x)`` to ``T(0)``; the relation norm is the supremum of that over
the unit ball of ``D(T)``. Both are finite for every relation here, since
all spaces are finite-dimensional.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import relation as rel
from . import subspace as sp
from .exceptions import DimensionMismatchError, DomainMembershipError
from .relation import Relation
from .subspace import DEFAULT_TOL, Frame


def quotient_rep(v, E):
    """Representative of ``[v] = v + E`` orthogonal to ``E``."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != E.ambient_dim:
        raise DimensionMismatchError(f"vector has length {v.shape[0]}, expected {E.ambient_dim}")
    return v - E.project(v)


def quotient_inner(x, y, E):
    """Inner product of the classes ``[x]`` and ``[y]`` in ``C^n / E``."""
    return complex(np.vdot(quotient_rep(y, E), quotient_rep(x, E)))


@dataclass(frozen=True, eq=False)
class OperatorPart:
    """Single-valued part of a relation.

    ``matrix[:, j]`` is the image of ``domain_frame.basis[:, j]``; every
    column lies in ``mv_frame``'s orthogonal complement.
    """

    parent: Relation
    domain_frame: Frame
    mv_frame: Frame
    matrix: np.ndarray

    @property
    def standard(self):
        """``n x n`` matrix acting as the operator part on D(T) and as zero on D(T)^⊥."""
        return self.matrix @ self.domain_frame.basis.conj().T

    def __call__(self, x):
        x = np.asarray(x, dtype=complex).reshape(-1)
        return self.matrix @ (self.domain_frame.basis.conj().T @ x)

    @property
    def norm(self):
        if self.matrix.size == 0:
            return 0.0
        return float(np.linalg.norm(self.matrix, 2))


@rel.memoized
def operator_part(T, tol=DEFAULT_TOL):
    """Operator part of ``T`` in the coordinates of an orthonormal basis of D(T).

    With ``X = U S V^H`` the x-block of the graph basis, a domain vector
    ``U[:, j]`` is reached by the coefficients ``V[:, j] / s_j``; the f-block
    maps those to one element of ``T(U[:, j])``, which is then projected off
    ``T(0)``.
    """
    X, F = T.x_block, T.f_block
    U, s, Vh = sp._svd(X)
    r = sp.numerical_rank(s, X.shape, tol, scale=1.0)
    killed = F @ Vh[r:].conj().T
    if killed.shape[1]:
        Q, _ = np.linalg.qr(killed)
        mv = Frame(Q[:, : killed.shape[1]])
    else:
        mv = Frame.zero(T.n)
    reps = F @ (Vh[:r].conj().T / s[:r])
    reps = reps - mv.basis @ (mv.basis.conj().T @ reps)
    return OperatorPart(parent=T, domain_frame=Frame(U[:, :r]), mv_frame=mv, matrix=reps)


def _onto_domain(op, x, tol):
    x = np.asarray(x, dtype=complex).reshape(-1)
    if x.shape[0] != op.parent.n:
        raise DimensionMismatchError(f"vector has length {x.shape[0]}, expected {op.parent.n}")
    if not sp.contains_vector(op.domain_frame, x, tol):
        raise DomainMembershipError(
            f"vector is at distance {sp.distance(x, op.domain_frame):.3e} from D(T)")
    return op.domain_frame.project(x)


def norm_at(T, x, tol=DEFAULT_TOL):
    """``||T(x)||``, the norm of the operator part at ``x in D(T)``.

    Vectors within the containment tolerance of D(T) are projected onto it
    first.
    """
    op = T if isinstance(T, OperatorPart) else operator_part(T, tol)
    x = _onto_domain(op, x, tol)
    return float(np.linalg.norm(op(x)))


def relation_norm(T, tol=DEFAULT_TOL):
    """``||T|| = sup ||T(x)||`` over unit ``x in D(T)``."""
    return operator_part(T, tol).norm


def restricted_operator(T, D, tol=DEFAULT_TOL):
    """Operator part of ``T`` applied to the basis columns of a subframe ``D`` of D(T).

    Returns an ``n x rank(D)`` matrix; callers must ensure ``D ⊆ D(T)``.
    """
    op = operator_part(T, tol)
    return op.matrix @ (op.domain_frame.basis.conj().T @ D.basis)


def norm_triangle_residual(T, S, x, tol=DEFAULT_TOL):
    """``||(S+T)(x)|| - ||S(x)|| - ||T(x)||``; nonpositive on ``D(T) ∩ D(S)``."""
    return norm_at(rel.op_sum(S, T, tol), x, tol) - norm_at(S, x, tol) - norm_at(T, x, tol)
