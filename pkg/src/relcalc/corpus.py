"""
Seeded generators of structured relations and perturbation pairs.

Randomness comes from numpy's Philox counter-based bit generator seeded with
the 64-bit integer in the spec, so a given :class:`CorpusSpec` always yields
the same relation. Complex Gaussian matrices are drawn as
``standard_normal + 1j * standard_normal`` in that order, and unitaries are
the Q factor of their QR decomposition with the phases of ``diag(R)``
divided out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from . import relation as rel
from . import subspace as sp
from .quotient import operator_part
from .relation import Relation
from .subspace import DEFAULT_TOL, Frame

KINDS = ("cayley", "restriction", "pair", "jacobi")
PROFILES = ("zero", "multiple", "bounded-random", "mv-matching-random")


def rng_for(seed):
    return np.random.Generator(np.random.Philox(int(seed) & 0xFFFFFFFFFFFFFFFF))


def complex_gaussian(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_unitary(n, rng):
    Q, R = np.linalg.qr(complex_gaussian(rng, (n, n)))
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def random_hermitian(n, rng, scale=1.0):
    G = complex_gaussian(rng, (n, n))
    H = 0.5 * (G + G.conj().T)
    return scale * H / np.linalg.norm(H, 2)


def cayley_relation(W, tol=DEFAULT_TOL):
    """``{((I - W)v, i(I + W)v) : v in C^n}`` for a unitary ``W``; always self-adjoint."""
    W = np.asarray(W, dtype=complex)
    n = W.shape[0]
    I = np.eye(n)
    return rel.from_blocks(I - W, 1j * (I + W), tol)


def cayley_selfadjoint(n, seed, mv_dim=0, null_dim=0, tol=DEFAULT_TOL):
    """Self-adjoint relation from a seeded unitary.

    Eigenvalue 1 of the unitary produces the multivalued part and eigenvalue
    -1 the null space, so ``mv_dim`` and ``null_dim`` pin those eigenvalues;
    the remaining eigenphases are drawn uniformly away from both.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if mv_dim < 0 or null_dim < 0 or mv_dim + null_dim > n:
        raise ValueError("mv_dim + null_dim must lie in [0, n]")
    rng = rng_for(seed)
    Q = random_unitary(n, rng)
    free = n - mv_dim - null_dim
    phases = rng.uniform(0.15, math.pi - 0.15, size=free) * rng.choice([-1.0, 1.0], size=free)
    eig = np.concatenate([np.ones(mv_dim), -np.ones(null_dim), np.exp(1j * phases)])
    W = (Q * eig) @ Q.conj().T
    return cayley_relation(W, tol)


def hermitian_restriction(T_sa, m, seed, tol=DEFAULT_TOL):
    """Restriction of ``T_sa`` to a seeded random m-dimensional subspace of its graph."""
    r = T_sa.dim
    if not 0 <= m <= r:
        raise ValueError(f"m must lie in [0, {r}], got {m}")
    if m == r:
        return T_sa
    if m == 0:
        return rel.trivial(T_sa.n)
    G = complex_gaussian(rng_for(seed), (r, m))
    return Relation(T_sa.n, sp.orthonormalize(T_sa.graph.basis @ G, tol=tol))


def domain_restriction(T, keep, seed, tol=DEFAULT_TOL):
    """``T`` restricted to a random ``keep``-dimensional subspace of D(T); keeps T(0)."""
    D = rel.domain(T, tol)
    if not 0 <= keep <= D.rank:
        raise ValueError(f"keep must lie in [0, {D.rank}]")
    G = complex_gaussian(rng_for(seed), (D.rank, keep))
    sub = sp.orthonormalize(D.basis @ G, dim=T.n, tol=tol) if keep else Frame.zero(T.n)
    return rel.restrict(T, sub, tol)


def _operator_on(E, H, tol):
    """Graph of ``x -> P_E H x`` on the subspace E; Hermitian when H is."""
    B = E.basis
    return rel.from_blocks(B, B @ (B.conj().T @ (H @ B)), tol)


def perturbation_pair(T, profile, seed, kappa=1.0 / 3.0, scale=None, tol=DEFAULT_TOL):
    """A Hermitian S with ``D(T) ⊆ D(S)`` and ``S(0) ⊆ T(0)``.

    Profiles:
        ``zero``               the zero operator on D(T)
        ``multiple``           ``kappa * T`` (kappa real)
        ``bounded-random``     a random Hermitian operator compressed to a
                               random superspace of D(T) inside T(0)^⊥
        ``mv-matching-random`` the same plus a random multivalued part inside T(0)
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    if profile == "zero":
        return rel.scalar_mul(0.0, T, tol)
    if profile == "multiple":
        return rel.scalar_mul(float(kappa), T, tol)

    rng = rng_for(seed)
    p = rel.parts(T, tol)
    n = T.n
    # Hermitian S needs D(S) ⊥ S(0); D(S) is kept inside T(0)^⊥ ⊇ D(T)
    room = sp.complement(sp.span_sum(p.domain, p.mv, tol))
    extra = int(rng.integers(0, room.rank + 1)) if room.rank else 0
    gens = room.basis @ complex_gaussian(rng, (room.rank, extra)) if extra else np.zeros((n, 0))
    E = sp.span_sum(p.domain, sp.orthonormalize(gens, dim=n, tol=tol), tol)
    if scale is None:
        scale = float(rng.uniform(0.2, 2.0))
    S = _operator_on(E, random_hermitian(n, rng, scale), tol)
    if profile == "mv-matching-random" and p.mv.rank:
        k = int(rng.integers(1, p.mv.rank + 1))
        M = sp.orthonormalize(p.mv.basis @ complex_gaussian(rng, (p.mv.rank, k)), dim=n, tol=tol)
        mv_gens = np.vstack([np.zeros((n, M.rank)), M.basis])
        S = Relation(n, sp.span_sum(S.graph, Frame(mv_gens), tol))
    return S


def jacobi_matrix(diag, offdiag):
    diag = np.asarray(diag, dtype=float)
    offdiag = np.asarray(offdiag, dtype=float)
    return np.diag(diag) + np.diag(offdiag, 1) + np.diag(offdiag, -1)


def jacobi_relation(n, diag, offdiag, restrict_ends=False, tol=DEFAULT_TOL):
    """Graph of a real symmetric tridiagonal matrix.

    With ``restrict_ends`` the domain is cut down to vectors vanishing at the
    first and last coordinate, which gives a Hermitian relation that is not
    densely defined.
    """
    diag = np.asarray(diag, dtype=float).reshape(-1)
    offdiag = np.asarray(offdiag, dtype=float).reshape(-1)
    if diag.shape[0] != n or offdiag.shape[0] != max(n - 1, 0):
        raise ValueError(f"need {n} diagonal and {max(n - 1, 0)} off-diagonal entries")
    J = jacobi_matrix(diag, offdiag)
    if not restrict_ends:
        return rel.from_operator(J, tol=tol)
    interior = np.eye(n)[:, 1:n - 1]
    domain = Frame(interior) if interior.shape[1] else Frame.zero(n)
    return rel.from_operator(J, domain, tol)


@dataclass(frozen=True)
class CorpusSpec:
    """Reproducible description of one generated relation (or pair).

    ``params`` by kind:
        cayley       mv_dim, null_dim
        restriction  m, mv_dim, null_dim (restriction of a cayley relation)
        pair         profile, kappa, base (a nested CorpusSpec dict for T)
        jacobi       diag, offdiag, restrict_ends
    """

    kind: str
    ambient_dim: int
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be positive")

    def as_dict(self):
        return {"kind": self.kind, "ambient_dim": self.ambient_dim, "seed": self.seed,
                "params": dict(self.params)}

    @classmethod
    def from_dict(cls, d):
        return cls(kind=d["kind"], ambient_dim=int(d["ambient_dim"]),
                   seed=int(d.get("seed", 0)), params=dict(d.get("params", {})))


def generate(spec, tol=DEFAULT_TOL):
    """Relation for a spec; ``pair`` specs return ``(T, S)``."""
    n, p = spec.ambient_dim, spec.params
    if spec.kind == "cayley":
        return cayley_selfadjoint(n, spec.seed, p.get("mv_dim", 0), p.get("null_dim", 0), tol)
    if spec.kind == "restriction":
        T = cayley_selfadjoint(n, spec.seed, p.get("mv_dim", 0), p.get("null_dim", 0), tol)
        return hermitian_restriction(T, int(p.get("m", max(n - 1, 0))), spec.seed + 1, tol)
    if spec.kind == "jacobi":
        diag = p.get("diag", [0.0] * n)
        off = p.get("offdiag", [1.0] * (n - 1))
        return jacobi_relation(n, diag, off, bool(p.get("restrict_ends", False)), tol)
    base = p.get("base") or {"kind": "cayley", "ambient_dim": n, "seed": spec.seed}
    T = generate(CorpusSpec.from_dict(base), tol)
    S = perturbation_pair(T, p.get("profile", "bounded-random"), spec.seed + 7,
                          kappa=p.get("kappa", 1.0 / 3.0), tol=tol)
    return T, S


# ---------------------------------------------------------------------------
# default suite

SIZES = (1, 2, 3, 4, 8, 16)


@dataclass(frozen=True, eq=False)
class Item:
    name: str
    relation: Relation
    selfadjoint: bool
    spec: CorpusSpec | None = None


def hermitian_items(n, seed, tol=DEFAULT_TOL):
    """Hermitian relations in C^n covering mv parts, non-dense domains and null spaces."""
    items = []

    def add(name, spec, selfadjoint):
        items.append(Item(f"{name}[n={n},seed={spec.seed}]", generate(spec, tol), selfadjoint, spec))

    add("cayley", CorpusSpec("cayley", n, seed), True)
    add("cayley-mv", CorpusSpec("cayley", n, seed + 1, {"mv_dim": max(1, n // 3)}), True)
    if n >= 2:
        add("cayley-mv-null", CorpusSpec("cayley", n, seed + 2,
                                         {"mv_dim": 1, "null_dim": max(1, n // 4)}), True)
    else:
        add("cayley-null", CorpusSpec("cayley", n, seed + 2, {"null_dim": 1}), True)
    add("restriction", CorpusSpec("restriction", n, seed + 3, {"m": max(0, n - 1)}), False)
    add("restriction-mv", CorpusSpec("restriction", n, seed + 4,
                                     {"m": max(0, n - 1), "mv_dim": max(1, n // 2)}), False)
    add("restriction-half", CorpusSpec("restriction", n, seed + 5,
                                       {"m": n // 2, "null_dim": n // 2}), False)
    rng = rng_for(seed + 6)
    diag = rng.uniform(-2, 2, n).round(6).tolist()
    off = rng.uniform(0.5, 1.5, max(n - 1, 0)).round(6).tolist()
    add("jacobi", CorpusSpec("jacobi", n, seed + 6, {"diag": diag, "offdiag": off}), True)
    add("jacobi-ends", CorpusSpec("jacobi", n, seed + 6,
                                  {"diag": diag, "offdiag": off, "restrict_ends": True}), False)
    # domain restriction that keeps the multivalued part
    Tm = cayley_selfadjoint(n, seed + 8, mv_dim=max(1, n // 3))
    D = rel.domain(Tm, tol)
    if D.rank:
        R = domain_restriction(Tm, D.rank - 1, seed + 9, tol)
        items.append(Item(f"domain-restriction-mv[n={n},seed={seed + 8}]", R, False))
    return items


def default_hermitian_corpus(seed=0, sizes=SIZES, repeats=2, tol=DEFAULT_TOL):
    out = []
    for r in range(repeats):
        for n in sizes:
            out.extend(hermitian_items(n, seed + 1000 * r + 31 * n, tol))
    return out


@dataclass(frozen=True, eq=False)
class PairItem:
    name: str
    T: Relation
    S: Relation


def default_pairs(seed=0, sizes=SIZES, tol=DEFAULT_TOL):
    """Hermitian pairs satisfying the inclusion hypotheses, one per (base, profile)."""
    pairs = []
    for n in sizes:
        for item in hermitian_items(n, seed + 17 * n, tol):
            for j, profile in enumerate(PROFILES):
                S = perturbation_pair(item.relation, profile, seed + 101 * n + j, tol=tol)
                pairs.append(PairItem(f"{item.name}+{profile}", item.relation, S))
    return pairs


def lemma29_triples(seed=0, sizes=SIZES, tol=DEFAULT_TOL):
    """Triples ``(A, B, c)`` with ``D(A) ⊆ D(B)``, ``B(0) ⊆ A(0)``, ``||B(x)|| <= c||A(x)||``."""
    from .perturbation import bounding_constant

    triples = []
    for n in sizes:
        for item in hermitian_items(n, seed + 13 * n, tol):
            A = item.relation
            for j, profile in enumerate(("multiple", "bounded-random", "mv-matching-random")):
                B = perturbation_pair(A, profile, seed + 7 * n + j, kappa=0.5, tol=tol)
                c = bounding_constant(A, B, tol)
                if math.isfinite(c):
                    triples.append((f"{item.name}+{profile}", A, B, c * (1 + 1e-9)))
    return triples


def operator_matrix(T, tol=DEFAULT_TOL):
    """Standard-coordinate matrix of the operator part of T."""
    return operator_part(T, tol).standard
