"""Acceptance criteria, one test per criterion.

Each test is named ``test_criterion_NN_*``; conftest prints a PASS/FAIL line
per criterion at the end of the run.
"""

import math

import numpy as np
import pytest
from scipy import linalg as sla

from relcalc import cli
from relcalc import corpus as C
from relcalc import fileformat as ff
from relcalc import perturbation as pt
from relcalc import relation as rel
from relcalc import subspace as sp
from relcalc.deficiency import (
    deficiency_indices, pythagoras_residual, resolvent_norm, sample_half_plane,
)
from relcalc.invariance import indices, invariance_report
from relcalc.perturbation import RelBoundCertificate as Cert
from relcalc.quotient import norm_at, operator_part
from relcalc.suites import analytic_gap_example, run_suite

SEED = 20240601
RCOND = 1e-9


@pytest.fixture(scope="module")
def hermitian_corpus():
    return C.default_hermitian_corpus(seed=0, repeats=3)


@pytest.fixture(scope="module")
def pairs():
    return C.default_pairs(0)


def unit_domain_vector(T, rng):
    D = rel.domain(T)
    x = D.basis @ C.complex_gaussian(rng, D.rank)
    return x / np.linalg.norm(x)


def test_criterion_01_pythagoras_identity(hermitian_corpus):
    rng = np.random.default_rng(SEED)
    tested = 0
    for it in hermitian_corpus:
        T = it.relation
        if rel.domain(T).rank == 0:
            continue
        tested += 1
        for _ in range(20):
            x = unit_domain_vector(T, rng) * rng.uniform(0.1, 10)
            z = complex(rng.uniform(-5, 5), rng.choice([-1, 1]) * rng.uniform(0.05, 5))
            r = pythagoras_residual(T, x, z)
            assert abs(r) <= 1e-9 * (1 + np.vdot(x, x).real), (it.name, r)
    assert tested >= 100


def test_criterion_02_resolvent_bound(hermitian_corpus):
    rng = np.random.default_rng(SEED + 1)
    for it in hermitian_corpus:
        zs = np.concatenate([sample_half_plane(rng, 10, True), sample_half_plane(rng, 10, False)])
        for z in zs:
            assert resolvent_norm(it.relation, z) <= 1 / abs(z.imag) + 1e-9, (it.name, z)
    assert len(hermitian_corpus) >= 100


def test_criterion_03_projector_gap_bound():
    rng = np.random.default_rng(SEED + 3)
    triples = C.lemma29_triples(0)
    assert len(triples) >= 100
    for name, A, B, c in triples:
        kmax = 1 / (2 * c) if c > 0 else 10.0
        r = kmax * np.sqrt(rng.uniform(0, 1, 6))
        ks = list(r * np.exp(2j * np.pi * rng.uniform(0, 1, 6))) + [kmax, -kmax, 1j * kmax]
        fam = pt.projector_family(A, B, c, ks)
        assert fam.hypotheses_ok, name
        for k, g in fam.points:
            assert g <= 2 * c * abs(k) + 1e-8, (name, k, g)
    A, B, c = analytic_gap_example()
    ks = [0.5 * np.exp(1j * t) * s for t in np.linspace(0, 2 * np.pi, 9) for s in (0.01, 0.2, 1.0)]
    fam = pt.projector_family(A, B, c, ks)
    for k, g in fam.points:
        assert abs(g - abs(k) / math.sqrt(1 + abs(k) ** 2)) <= 1e-10
        assert g <= 2 * c * abs(k) + 1e-8


def test_criterion_04_index_invariance(pairs):
    passed = 0
    for p in pairs:
        v = invariance_report(p.T, p.S, "thm31")
        assert v.status != "fail", p.name
        if v.status == "skip":
            continue
        passed += 1
        assert v.d_other == v.d_T
        tr = pt.homotopy_sweep(p.T, p.S)
        assert tr.converged and tr.rank_constant, p.name
        assert tr.endpoint_ranks == (indices(p.T), indices(rel.op_sum(p.T, p.S)))
    assert passed >= 200


def test_criterion_05_index_inequality(pairs):
    certified = 0
    for p in pairs:
        v = invariance_report(p.T, p.S, "thm32")
        assert v.status != "fail", p.name
        if v.status == "pass":
            certified += 1
            assert all(o <= t for o, t in zip(v.d_other, v.d_T))
    assert certified >= 1
    for seed in range(5):
        T = rel.from_operator(C.random_hermitian(4, np.random.default_rng(seed)))
        v = invariance_report(T, rel.scalar_mul(-1, T), "thm32", cert=Cert(0.0, 1.0))
        assert v.status == "pass" and v.d_T == v.d_other == (0, 0)


def test_criterion_06_selfadjoint_equivalence(pairs):
    seen = set()
    for p in pairs:
        v = invariance_report(p.T, p.S, "cor32")
        assert v.status != "fail", p.name
        if v.status == "pass":
            sa_T = rel.classify(p.T).is_selfadjoint
            assert rel.classify(rel.op_sum(p.T, p.S)).is_selfadjoint == sa_T
            seen.add(sa_T)
    assert seen == {True, False}


@pytest.mark.parametrize("suite", ["lemma21", "lemma22", "lemma24", "lemma25", "lemma26"])
def test_criterion_07_law_suites(suite):
    checks = run_suite(suite, seed=0)
    assert checks
    for c in checks:
        assert c.status == "pass", c.as_dict()
        assert c.details["instances"] >= 50, c.name


def test_criterion_08_finite_dimension_identity(hermitian_corpus):
    for it in hermitian_corpus:
        T = it.relation
        rep = deficiency_indices(T, sample_count=10, seed=SEED)
        assert rep.constancy_ok, it.name
        assert rep.d_plus == rep.d_minus == T.n - T.dim, it.name
        assert len(rep.lambdas) == 22
        for lam, d in zip(rep.lambdas, rep.indices):
            # rank of [F - lam X] via an independent SVD
            M = T.f_block - lam * T.x_block
            s = sla.svdvals(M) if M.size else np.zeros(0)
            r = int(np.sum(s > 1e-8 * max(1.0, s[0] if s.size else 0)))
            assert d == T.n - r, (it.name, lam)


def test_criterion_09_bound_conversion(pairs):
    count = 0
    for k, p in enumerate(pairs[::2]):
        for b in (0.0, 0.5, 2.0):
            ((_, a),) = pt.quadratic_frontier(p.T, p.S, [b])
            q = Cert(a, b, pt.QUADRATIC, p.T, p.S)
            assert pt.certify_bound(p.T, p.S, q).holds
            lin = pt.to_linear(q)
            assert (lin.a, lin.b) == (q.a, q.b)
            assert pt.certify_bound(p.T, p.S, lin, samples=2000, seed=k).holds
            for eps in pt.EPS_GRID:
                assert pt.certify_bound(p.T, p.S, pt.to_quadratic(lin, float(eps))).holds, (p.name, eps)
            count += 1
    assert count >= 50


def coset_norm(T, x):
    # min ||F c|| over X c = x, straight from the graph basis
    X, F = T.x_block, T.f_block
    c0 = sla.lstsq(X, x, cond=RCOND)[0]
    N = sla.null_space(X, rcond=RCOND)
    if N.shape[1] == 0:
        return float(np.linalg.norm(F @ c0))
    w = sla.lstsq(F @ N, -F @ c0, cond=RCOND)[0]
    return float(np.linalg.norm(F @ (c0 + N @ w)))


def test_criterion_10_norm_oracles(hermitian_corpus):
    rng = np.random.default_rng(SEED + 10)
    rels = [it.relation for it in hermitian_corpus if rel.domain(it.relation).rank]
    rels += [it.S for it in C.default_pairs(1) if rel.domain(it.S).rank][:100]
    sampled = 0
    for j in range(500):
        T = rels[j % len(rels)]
        x = unit_domain_vector(T, rng)
        value = norm_at(T, x)
        assert abs(value - coset_norm(T, x)) <= 1e-9, j
        sampled += 1
    assert sampled == 500
    for T in rels[:60]:
        op = operator_part(T)
        perp = sp.complement(rel.mv_part(T))
        x = unit_domain_vector(T, rng)
        rep, value = op(x), norm_at(T, x)
        Y = perp.basis @ C.complex_gaussian(rng, (perp.rank, 10_000))
        Y /= np.linalg.norm(Y, axis=0)
        assert np.abs(Y.conj().T @ rep).max() <= value * (1 + 1e-12) + 1e-15
        if value > 0:
            Z = np.outer(rep / value, np.exp(2j * np.pi * rng.random(10_000)))
            assert abs(np.abs(Z.conj().T @ rep).max() - value) <= 1e-6


def test_criterion_11_cli_contract(tmp_path):
    for it in C.default_hermitian_corpus(seed=3, repeats=1):
        path = tmp_path / "r.json"
        ff.write_relation_file(path, it.relation, it.spec)
        S = ff.parse_relation_file(path)
        assert sp.projector_gap(S.graph, it.relation.graph) <= 1e-12, it.name
    status, doc = cli.run_command(["verify", "--suite", "all"])
    failing = [c["name"] for c in doc["checks"] if c["status"] != "pass"]
    assert status == 0 and not failing, failing
