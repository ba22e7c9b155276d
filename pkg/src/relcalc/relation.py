"""
Linear relations T ⊆ C^n x C^n.

A :class:`Relation` stores its graph as a :class:`~relcalc.subspace.Frame`
in C^{2n}; rows ``0..n-1`` hold the x-part and rows ``n..2n-1`` the f-part.
Ordinary matrices enter through :func:`from_operator`.

Inner products are linear in the first argument and conjugate-linear in the
second: ``<u, v> = v^H u``.
"""

from __future__ import annotations

from dataclasses import dataclass
import functools
import weakref

import numpy as np

from . import subspace as sp
from .exceptions import DimensionMismatchError
from .subspace import DEFAULT_TOL, Frame


def inner(u, v):
    """``<u, v>``, linear in ``u``."""
    return complex(np.vdot(np.asarray(v), np.asarray(u)))


@dataclass(frozen=True, eq=False)
class Relation:
    n: int
    graph: Frame

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.n:
            raise DimensionMismatchError(
                f"graph lives in C^{self.graph.ambient_dim}, expected C^{2 * self.n}")

    @property
    def dim(self):
        return self.graph.rank

    @property
    def x_block(self):
        return self.graph.basis[: self.n]

    @property
    def f_block(self):
        return self.graph.basis[self.n:]

    def contains(self, x, f, tol=DEFAULT_TOL):
        return sp.contains_vector(self.graph, np.concatenate([_vec(x, self.n), _vec(f, self.n)]), tol)

    def __repr__(self):
        return f"Relation(n={self.n}, dim={self.dim})"


_CACHE = weakref.WeakKeyDictionary()


def memoized(fn):
    """Cache ``fn(T, tol)`` on the relation instance.

    Relations and their frames are immutable, so derived data can be shared;
    entries disappear with the relation.
    """

    @functools.wraps(fn)
    def wrapper(T, tol=DEFAULT_TOL):
        slot = _CACHE.setdefault(T, {})
        key = (fn.__qualname__, fn.__module__, tol)
        if key not in slot:
            slot[key] = fn(T, tol)
        return slot[key]

    return wrapper


def _vec(v, n):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.shape[0] != n:
        raise DimensionMismatchError(f"vector has length {v.shape[0]}, expected {n}")
    return v


def _check_pair(T, S):
    if T.n != S.n:
        raise DimensionMismatchError(f"relations act on C^{T.n} and C^{S.n}")


def from_generators(generators, n=None, tol=DEFAULT_TOL):
    """Relation spanned by pairs given as length-2n vectors (or columns of a 2n x k array)."""
    if isinstance(generators, np.ndarray) and generators.ndim == 2:
        two_n = generators.shape[0]
    else:
        generators = list(generators)
        if generators:
            two_n = np.asarray(generators[0]).size
        elif n is None:
            raise ValueError("n is required for an empty generator list")
        else:
            two_n = 2 * n
    if two_n % 2:
        raise DimensionMismatchError(f"generator length {two_n} is odd")
    if n is not None and two_n != 2 * n:
        raise DimensionMismatchError(f"generators have length {two_n}, expected {2 * n}")
    return Relation(two_n // 2, sp.orthonormalize(generators, dim=two_n, tol=tol))


def from_blocks(X, F, tol=DEFAULT_TOL, scale=None):
    """Relation spanned by the columns of ``[X; F]``.

    ``scale`` fixes the reference for the rank cutoff; pass it when the
    blocks are derived from an orthonormal graph basis.
    """
    X = np.asarray(X, dtype=complex)
    F = np.asarray(F, dtype=complex)
    if X.shape != F.shape:
        raise DimensionMismatchError(f"block shapes differ: {X.shape} vs {F.shape}")
    return Relation(X.shape[0], sp.Frame(sp.range_basis(np.vstack([X, F]), tol, scale)))


def from_operator(M, domain=None, tol=DEFAULT_TOL):
    """Graph ``{(x, Mx) : x in domain}``; the domain defaults to all of C^n."""
    M = np.atleast_2d(np.asarray(M, dtype=complex))
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionMismatchError(f"operator matrix must be square, got {M.shape}")
    if domain is None:
        domain = Frame.full(n)
    elif not isinstance(domain, Frame):
        domain = sp.orthonormalize(domain, dim=n, tol=tol)
    if domain.ambient_dim != n:
        raise DimensionMismatchError(f"domain lives in C^{domain.ambient_dim}, expected C^{n}")
    D = domain.basis
    return from_blocks(D, M @ D, tol)


def build(operator=None, domain=None, generators=None, n=None, tol=DEFAULT_TOL):
    """Build a relation from an operator matrix (plus optional domain) or from generators."""
    if (operator is None) == (generators is None):
        raise ValueError("give exactly one of operator= or generators=")
    if operator is not None:
        R = from_operator(operator, domain, tol)
        if n is not None and R.n != n:
            raise DimensionMismatchError(f"operator acts on C^{R.n}, expected C^{n}")
        return R
    return from_generators(generators, n=n, tol=tol)


def identity(n):
    return Relation(n, Frame(np.vstack([np.eye(n), np.eye(n)]) / np.sqrt(2)))


def trivial(n):
    """The relation {(0, 0)}."""
    return Relation(n, Frame.zero(2 * n))


@dataclass(frozen=True)
class Parts:
    domain: Frame
    range: Frame
    null: Frame
    mv: Frame


def _split(block, other, tol):
    """SVD split of one graph block.

    Returns the block's column space, and the image under ``other`` of the
    coefficient directions that ``block`` kills. Both come from one SVD, so
    ``rank(block) + rank(killed image) = dim(graph)`` exactly.
    """
    U, s, Vh = sp._svd(block)
    r = sp.numerical_rank(s, block.shape, tol, scale=1.0)
    killed = other @ Vh[r:].conj().T
    # columns of `killed` have norm ~1 because graph columns are orthonormal
    if killed.shape[1]:
        Q, _ = np.linalg.qr(killed)
        killed = Q[:, : killed.shape[1]]
    return U[:, :r], killed


@memoized
def parts(T, tol=DEFAULT_TOL):
    """Domain, range, null space and multivalued part T(0) of ``T``."""
    X, F = T.x_block, T.f_block
    dom, mv = _split(X, F, tol)
    ran, null = _split(F, X, tol)
    return Parts(domain=Frame(dom), range=Frame(ran), null=Frame(null), mv=Frame(mv))


def domain(T, tol=DEFAULT_TOL):
    return parts(T, tol).domain


def mv_part(T, tol=DEFAULT_TOL):
    return parts(T, tol).mv


def inverse(T):
    """``{(f, x) : (x, f) in T}``; swapping blocks keeps the frame orthonormal."""
    return Relation(T.n, Frame(np.vstack([T.f_block, T.x_block])))


def scalar_mul(alpha, T, tol=DEFAULT_TOL):
    """``{(x, alpha f) : (x, f) in T}``."""
    return from_blocks(T.x_block, complex(alpha) * T.f_block, tol, scale=max(1.0, abs(alpha)))


def shift(T, lam, tol=DEFAULT_TOL):
    """``T - lam I = {(x, f - lam x) : (x, f) in T}``."""
    X = T.x_block
    return from_blocks(X, T.f_block - complex(lam) * X, tol, scale=max(1.0, abs(lam)))


def _lifted_pair(n, first, second, tol):
    L1 = sp.Frame(sp.range_basis(first, tol))
    L2 = sp.Frame(sp.range_basis(second, tol))
    return sp.intersect(L1, L2, tol).basis


def lifted_sum_space(T, S, tol=DEFAULT_TOL):
    """Orthonormal basis of ``{(x, f, g) : (x, f) in T, (x, g) in S}`` in C^{3n}."""
    _check_pair(T, S)
    n = T.n
    Z = np.zeros((n, n), dtype=complex)
    I = np.eye(n)
    zt = np.zeros((n, T.dim), dtype=complex)
    zs = np.zeros((n, S.dim), dtype=complex)
    # (x, f) in T with g free; (x, g) in S with f free
    first = np.block([[T.x_block, Z], [T.f_block, Z], [zt, I]])
    second = np.block([[S.x_block, Z], [zs, I], [S.f_block, Z]])
    return _lifted_pair(n, first, second, tol)


def op_sum(T, S, tol=DEFAULT_TOL):
    """``T + S = {(x, f + g) : (x, f) in T, (x, g) in S}``."""
    n = T.n
    L = lifted_sum_space(T, S, tol)
    return from_blocks(L[:n], L[n:2 * n] + L[2 * n:], tol, scale=1.0)


def compose(S, T, tol=DEFAULT_TOL):
    """``ST = {(x, g) : (x, f) in T, (f, g) in S for some f}``."""
    _check_pair(T, S)
    n = T.n
    Z = np.zeros((n, n), dtype=complex)
    I = np.eye(n)
    zt = np.zeros((n, T.dim), dtype=complex)
    zs = np.zeros((n, S.dim), dtype=complex)
    # lifted coordinates (x, f, g)
    first = np.block([[T.x_block, Z], [T.f_block, Z], [zt, I]])
    second = np.block([[zs, I], [S.x_block, Z], [S.f_block, Z]])
    L = _lifted_pair(n, first, second, tol)
    return from_blocks(L[:n], L[2 * n:], tol, scale=1.0)


def adjoint(T):
    """``T* = {(y, g) : <g, x> = <y, f> for all (x, f) in T}``.

    ``(y, g)`` is orthogonal in C^{2n} to ``(-f, x)`` exactly when
    ``<g, x> - <y, f> = 0``, so ``T*`` is the complement of the rotated graph.
    """
    rotated = Frame(np.vstack([-T.f_block, T.x_block]))
    return Relation(T.n, sp.complement(rotated))


def hermitian_defect(T):
    """Largest ``|<f, y> - <x, g>|`` over orthonormal graph generators."""
    if T.dim == 0:
        return 0.0
    X, F = T.x_block, T.f_block
    # entry (j, k) = <f_k, y_j> - <x_k, g_j>
    G = X.conj().T @ F - F.conj().T @ X
    return float(np.max(np.abs(G)))


@dataclass(frozen=True)
class Classification:
    is_operator: bool
    is_densely_defined: bool
    is_hermitian: bool
    is_selfadjoint: bool


@memoized
def classify(T, tol=DEFAULT_TOL):
    p = parts(T, tol)
    cmp = sp.compare(T.graph, adjoint(T).graph, tol)
    return Classification(
        is_operator=p.mv.rank == 0,
        is_densely_defined=p.domain.rank == T.n,
        is_hermitian=cmp.is_subset,
        is_selfadjoint=cmp.is_equal,
    )


def equal(T, S, tol=DEFAULT_TOL):
    """Whether two relations are the same subspace of C^{2n}."""
    _check_pair(T, S)
    return sp.is_equal(T.graph, S.graph, tol)


def is_subrelation(T, S, tol=DEFAULT_TOL):
    _check_pair(T, S)
    return sp.is_subset(T.graph, S.graph, tol)


def restrict(T, subspace_frame, tol=DEFAULT_TOL):
    """``{(x, f) in T : x in subspace_frame}``."""
    n = T.n
    lifted = Frame(np.vstack([subspace_frame.basis, np.zeros_like(subspace_frame.basis)]))
    fiber = sp.span_sum(lifted, Frame(np.vstack([np.zeros((n, n)), np.eye(n)])), tol)
    return Relation(n, sp.intersect(T.graph, fiber, tol))
