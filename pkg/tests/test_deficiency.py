import numpy as np
import pytest
from hypothesis import given, strategies as st

from relcalc import corpus as C
from relcalc import relation as rel
from relcalc.deficiency import (
    IM_MAX, IM_MIN, RE_MAX,
    deficiency_index, deficiency_indices, deficiency_profile, deficiency_space,
    pythagoras_residual, resolvent_norm, sample_half_plane,
)
from relcalc.exceptions import HypothesisError

from conftest import cgauss, seeds


def rank_oracle(T, lam):
    # n - rank [F - lam X], straight from the graph basis
    M = T.f_block - lam * T.x_block
    return T.n - (np.linalg.matrix_rank(M, tol=1e-8) if M.size else 0)


def test_space_examples(rng):
    H = C.random_hermitian(3, rng)
    assert deficiency_space(rel.from_operator(H), 1j).rank == 0
    assert deficiency_index(rel.trivial(1), 2 - 3j) == 1
    T = rel.build(generators=[[1, 0, 0, 0]], n=2)
    D = deficiency_space(T, 1j)
    assert D.rank == 1 == rank_oracle(T, 1j)
    assert abs(D.basis[1, 0]) == pytest.approx(1.0)


def test_indices_selfadjoint():
    r = deficiency_indices(C.cayley_selfadjoint(5, 2, mv_dim=2))
    assert r.pair == (0, 0) and r.constancy_ok


def test_indices_pure_mv():
    T = rel.build(generators=[[0, 1]], n=1)
    r = deficiency_indices(T, sample_count=5, seed=3)
    assert r.pair == (0, 0) and r.constancy_ok
    assert all(d == rank_oracle(T, lam) for lam, d in zip(r.lambdas, r.indices))


@pytest.mark.parametrize("n,m", [(2, 1), (4, 2), (8, 5), (3, 0)])
def test_indices_restriction(n, m):
    T = C.hermitian_restriction(C.cayley_selfadjoint(n, n + m, mv_dim=1), m, 7)
    assert T.dim == m
    r = deficiency_indices(T, sample_count=6, seed=1)
    assert r.pair == (n - m, n - m) and r.constancy_ok
    assert all(d == rank_oracle(T, lam) for lam, d in zip(r.lambdas, r.indices))


def test_samples_avoid_real_axis():
    r = deficiency_indices(C.cayley_selfadjoint(2, 0), sample_count=20, seed=5)
    assert len(r.lambdas) == 42
    assert all(lam.imag != 0 for lam in r.lambdas)
    z = sample_half_plane(np.random.default_rng(0), 100, upper=False)
    assert np.all((-IM_MAX <= z.imag) & (z.imag <= -IM_MIN)) and np.all(np.abs(z.real) <= RE_MAX)


def test_non_hermitian_rejected():
    T = rel.from_operator([[1j]])
    with pytest.raises(HypothesisError):
        deficiency_indices(T)
    # raw mode still answers
    prof = deficiency_profile(T, [1j, -1j])
    assert [d for _, d in prof] == [1, 0]


def test_bad_sample_count():
    with pytest.raises(ValueError):
        deficiency_indices(rel.identity(1), sample_count=0)


def test_report_dict():
    d = deficiency_indices(rel.identity(2), sample_count=1, seed=4).as_dict()
    assert d["d_plus"] == 0 and len(d["samples"]) == 4
    assert d["samples"][0]["lambda"] == [0.0, 1.0]


@given(seeds(), st.integers(1, 6), st.data())
def test_finite_dimension_identity(seed, n, data):
    T = C.cayley_selfadjoint(n, seed, mv_dim=data.draw(st.integers(0, n)))
    T = C.hermitian_restriction(T, data.draw(st.integers(0, n)), seed + 1)
    r = deficiency_indices(T, sample_count=3, seed=seed)
    assert r.d_plus == r.d_minus == n - T.dim


@given(seeds(), st.integers(1, 5))
def test_pythagoras(seed, n):
    rng = np.random.default_rng(seed)
    T = C.cayley_selfadjoint(n, seed, mv_dim=int(rng.integers(0, n)))
    D = rel.domain(T)
    if D.rank == 0:
        return
    x = D.basis @ cgauss(rng, D.rank)
    z = complex(*rng.uniform(-3, 3, 2))
    if z.imag == 0:
        return
    assert abs(pythagoras_residual(T, x, z)) <= 1e-9 * (1 + np.vdot(x, x).real)


@given(seeds(), st.integers(1, 5))
def test_resolvent_bound_and_no_eigenvalues(seed, n):
    rng = np.random.default_rng(seed)
    T = C.cayley_selfadjoint(n, seed, mv_dim=int(rng.integers(0, n + 1)))
    z = sample_half_plane(rng, 1, upper=bool(seed % 2))[0]
    assert resolvent_norm(T, z) <= 1 / abs(z.imag) + 1e-9
    assert rel.parts(rel.shift(T, z)).null.rank == 0
