import numpy as np
import pytest
from hypothesis import given

from relcalc import corpus as C
from relcalc import relation as rel
from relcalc import subspace as sp
from relcalc.exceptions import DimensionMismatchError, DomainMembershipError
from relcalc.quotient import (
    norm_at, norm_triangle_residual, operator_part, quotient_inner, quotient_rep, relation_norm,
)
from relcalc.subspace import Frame

from conftest import cgauss, random_relation, seeds

e1, e2 = np.eye(2)


def sample_domain(T, rng, k=1):
    D = rel.domain(T)
    return [D.basis @ cgauss(rng, D.rank) for _ in range(k)] if D.rank else []


# -- quotient_rep ----------------------------------------------------------------

def test_rep_trivial_cases(rng):
    v = cgauss(rng, 3)
    np.testing.assert_array_equal(quotient_rep(v, Frame.zero(3)), v)
    E = sp.orthonormalize(cgauss(rng, (3, 2)))
    w = E.basis @ cgauss(rng, 2)
    assert np.linalg.norm(quotient_rep(w, E)) < 1e-14


def test_quotient_inner_projector_oracle(rng):
    E = sp.orthonormalize(cgauss(rng, (4, 2)))
    x, y = cgauss(rng, 4), cgauss(rng, 4)
    P = np.eye(4) - E.basis @ E.basis.conj().T
    assert abs(quotient_inner(x, y, E) - np.vdot(y, P @ x)) < 1e-12


def test_quotient_inner_class_invariant(rng):
    E = sp.orthonormalize(cgauss(rng, (4, 2)))
    x, y = cgauss(rng, 4), cgauss(rng, 4)
    x2 = x + E.basis @ cgauss(rng, 2)
    assert abs(quotient_inner(x, y, E) - quotient_inner(x2, y, E)) < 1e-12


def test_rep_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        quotient_rep(np.ones(3), Frame.zero(2))


# -- operator_part -------------------------------------------------------------------

def test_operator_part_full_graph(rng):
    M = cgauss(rng, (3, 3))
    op = operator_part(rel.from_operator(M))
    np.testing.assert_allclose(op.standard, M, atol=1e-12)


def test_operator_part_pure_mv():
    op = operator_part(rel.build(generators=[[0, 1]], n=1))
    assert op.domain_frame.rank == 0 and op.matrix.shape == (1, 0)
    assert op.norm == 0.0


def test_operator_part_projects_off_mv():
    T = rel.from_generators([np.r_[e1, e1 + e2], np.r_[0, 0, e2]], n=2)
    op = operator_part(T)
    np.testing.assert_allclose(op(e1), e1, atol=1e-14)


@given(random_relation())
def test_operator_part_invariants(T):
    op = operator_part(T)
    mv = rel.mv_part(T)
    if op.matrix.size:
        assert np.abs(mv.basis.conj().T @ op.matrix).max(initial=0) < 1e-9
    for j in range(op.domain_frame.rank):
        d = op.domain_frame.basis[:, j]
        assert T.contains(d, op.matrix[:, j])


@given(random_relation(), seeds())
def test_operator_part_basis_independent(T, seed):
    rng = np.random.default_rng(seed)
    k = T.dim
    if k == 0:
        return
    Q, _ = np.linalg.qr(cgauss(rng, (k, k)))
    T2 = rel.Relation(T.n, Frame(T.graph.basis @ Q))
    A, B = operator_part(T).standard, operator_part(T2).standard
    assert np.abs(A - B).max() < 1e-8 * max(1.0, np.abs(A).max())


# -- norm_at / relation_norm -----------------------------------------------------------

def test_norm_at_examples():
    T = rel.from_generators([np.r_[e1, e1 + e2], np.r_[0, 0, e2]], n=2)
    # distance of e1 + e2 to span{e2}
    assert norm_at(T, e1) == pytest.approx(1.0, abs=1e-14)
    D = rel.from_operator(np.diag([3.0, 4.0]))
    assert norm_at(D, e2) == pytest.approx(4.0)
    assert norm_at(D, np.zeros(2)) == 0.0


def test_norm_at_outside_domain():
    T = rel.from_operator(np.eye(2), [e1])
    with pytest.raises(DomainMembershipError):
        norm_at(T, e2)
    # near-members are projected
    assert norm_at(T, e1 + 1e-12 * e2) == pytest.approx(1.0)


def test_relation_norm_examples(rng):
    D = rel.from_operator(np.diag([3.0, 4.0]))
    assert relation_norm(D) == pytest.approx(np.linalg.svd(np.diag([3.0, 4.0]), compute_uv=False)[0])
    assert relation_norm(rel.from_operator(np.zeros((3, 3)))) == 0.0
    T = C.cayley_selfadjoint(4, 3, mv_dim=1)
    assert relation_norm(rel.scalar_mul(2j, T)) == pytest.approx(2 * relation_norm(T), rel=1e-10)


@given(random_relation(), seeds())
def test_norm_is_distance_to_mv(T, seed):
    rng = np.random.default_rng(seed)
    mv = rel.mv_part(T)
    for x in sample_domain(T, rng):
        y = np.linalg.lstsq(T.x_block, x, rcond=1e-9)[0]
        f = T.f_block @ y
        assert norm_at(T, x) == pytest.approx(sp.distance(f, mv), rel=1e-7, abs=1e-9)


@given(random_relation(), seeds())
def test_triangle_law(T, seed):
    rng = np.random.default_rng(seed)
    n = T.n
    S = rel.from_generators(cgauss(rng, (2 * n, n + 1)), n=n)
    if rel.domain(rel.op_sum(S, T)).rank == 0:
        return
    for x in sample_domain(rel.op_sum(S, T), rng, 3):
        assert norm_triangle_residual(T, S, x) <= 1e-9 * (1 + np.linalg.norm(x))


@given(seeds())
def test_pairing_supremum(seed):
    rng = np.random.default_rng(seed)
    T = C.cayley_selfadjoint(4, seed, mv_dim=int(rng.integers(0, 3)))
    op = operator_part(T)
    perp = sp.complement(rel.mv_part(T))
    for x in sample_domain(T, rng):
        rep, value = op(x), norm_at(T, x)
        Y = perp.basis @ cgauss(rng, (perp.rank, 10_000))
        Y /= np.linalg.norm(Y, axis=0)
        assert np.abs(Y.conj().T @ rep).max() <= value * (1 + 1e-12)
        ph = np.exp(2j * np.pi * rng.random(10_000))
        Z = np.outer(rep / value, ph)
        assert np.abs(Z.conj().T @ rep).max() == pytest.approx(value, abs=1e-8)


@given(seeds())
def test_hermitian_symmetry(seed):
    rng = np.random.default_rng(seed)
    T = C.cayley_selfadjoint(4, seed, mv_dim=1)
    op = operator_part(T)
    mv = rel.mv_part(T)
    x1, x2 = sample_domain(T, rng, 2)
    lhs = np.vdot(quotient_rep(x1, mv), op(x2))
    rhs = np.vdot(op(x1), quotient_rep(x2, mv))
    assert abs(lhs - rhs) < 1e-9
