"""
Verification suites behind ``relcalc verify``.

Each suite returns a list of :class:`Check` records. A check aggregates one
law over many generated instances; it fails on the first instance that
violates it and keeps that instance as the witness. Results depend only on
the seed, the size list and the tolerance policy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np
from scipy import linalg as sla

from . import corpus as C
from . import relation as rel
from . import subspace as sp
from .deficiency import (
    deficiency_indices,
    pythagoras_residual,
    resolvent_norm,
    sample_half_plane,
)
from .exceptions import TransformUndefinedError
from .invariance import MODES, invariance_report
from .perturbation import (
    EPS_GRID,
    LINEAR,
    QUADRATIC,
    RelBoundCertificate,
    certify_bound,
    domination_residual,
    homotopy_sweep,
    inclusion_report,
    lemma32_shift,
    projector_family,
    quadratic_frontier,
    to_linear,
    to_quadratic,
)
from .quotient import norm_at, operator_part, quotient_rep, relation_norm
from .subspace import DEFAULT_TOL

PASS, FAIL, SKIP = "pass", "fail", "skip"

ORACLE_RCOND = 1e-9


@dataclass
class Check:
    name: str
    paper_anchor: str
    status: str = PASS
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    def as_dict(self):
        return {"name": self.name, "paper_anchor": self.paper_anchor, "status": self.status,
                "witness": self.witness, "details": self.details}


class _Tally:
    """Accumulates one law over instances."""

    def __init__(self, name, anchor, min_instances=1):
        self.check = Check(name, anchor)
        self.count = 0
        self.worst = -math.inf
        self.min_instances = min_instances

    def add(self, ok, residual=None, witness=None):
        self.count += 1
        if residual is not None and math.isfinite(residual):
            self.worst = max(self.worst, float(residual))
        if not ok and self.check.status != FAIL:
            self.check.status = FAIL
            self.check.witness = witness

    def done(self, **extra):
        self.check.details["instances"] = self.count
        if self.worst > -math.inf:
            self.check.details["worst_residual"] = self.worst
        self.check.details.update(extra)
        self.check.details["min_instances"] = self.min_instances
        if self.count == 0:
            self.check.status = SKIP
        elif self.count < self.min_instances:
            # small --sizes runs; the law held where it was tested
            self.check.details["under_sampled"] = True
        return self.check


def _jv(v):
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=complex).reshape(-1)]


# ---------------------------------------------------------------------------
# instance generators


def random_relations(seed, sizes, per_size=4, tol=DEFAULT_TOL):
    """Unstructured relations: generic subspaces and operator-plus-mv constructions."""
    rng = C.rng_for(seed ^ 0x5EED)
    out = []
    for n in sizes:
        for j in range(per_size):
            if j % 2 == 0:
                k = int(rng.integers(0, 2 * n + 1))
                G = C.complex_gaussian(rng, (2 * n, k))
                T = rel.from_blocks(G[:n], G[n:], tol) if k else rel.trivial(n)
            else:
                p = int(rng.integers(0, n + 1))
                q = int(rng.integers(0, n - p + 1)) if n - p else 0
                D = C.complex_gaussian(rng, (n, p))
                M = C.complex_gaussian(rng, (n, n))
                E = C.complex_gaussian(rng, (n, q))
                X = np.hstack([D, np.zeros((n, q))])
                F = np.hstack([M @ D, E])
                T = rel.from_blocks(X, F, tol) if p + q else rel.trivial(n)
            out.append((f"random[n={n},j={j}]", T))
    return out


def _all_relations(seed, sizes, tol):
    items = [(it.name, it.relation) for it in C.default_hermitian_corpus(seed, sizes, repeats=1, tol=tol)]
    return items + random_relations(seed, sizes, tol=tol)


def _coset_oracle(T, x):
    """Independent description of T(x): one member and a basis of its direction space.

    Uses scipy's own rank cutoff (relative 1e-9) instead of the package rule.
    """
    X, F = T.x_block, T.f_block
    c = np.linalg.lstsq(X, x, rcond=ORACLE_RCOND)[0]
    N = sla.null_space(X, rcond=ORACLE_RCOND) if X.shape[1] else np.zeros((0, 0))
    return F @ c, (F @ N if N.size else np.zeros((T.n, 0)))


def _domain_samples(T, rng, count, tol):
    D = rel.domain(T, tol)
    if D.rank == 0:
        return []
    return [D.basis @ C.complex_gaussian(rng, D.rank) for _ in range(count)]


# ---------------------------------------------------------------------------
# relation laws


def suite_lemma21(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed)
    coset = _Tally("coset-law", "T(x) = {y} + T(0) for every y in T(x)", 50)
    tt = _Tally("T-Tinv-law", "(T T^-1)(y) = {y} + T(0) on R(T)", 50)
    inv_t = _Tally("Tinv-T-law", "(T^-1 T)(x) = {x} + T^-1(0) on D(T)", 50)
    for name, T in _all_relations(seed, sizes, tol):
        p = rel.parts(T, tol)
        for x in _domain_samples(T, rng, 3, tol):
            y, Ndir = _coset_oracle(T, x)
            members = [y] + [y + p.mv.basis[:, j] for j in range(p.mv.rank)]
            ok_members = all(T.contains(x, f, tol) for f in members)
            dir_rank = np.linalg.matrix_rank(Ndir, tol=1e-8) if Ndir.size else 0
            ok_dim = dir_rank == p.mv.rank
            ok_dir = sp.is_equal(sp.orthonormalize(Ndir, dim=T.n, tol=tol), p.mv, tol)
            coset.add(ok_members and ok_dim and ok_dir,
                      witness={"relation": name, "x": _jv(x), "dim_direction": int(dir_rank),
                               "dim_mv": p.mv.rank})
        R = rel.compose(T, rel.inverse(T), tol)
        pR = rel.parts(R, tol)
        ok = sp.is_equal(pR.domain, p.range, tol) and sp.is_equal(pR.mv, p.mv, tol)
        ys = [p.range.basis @ C.complex_gaussian(rng, p.range.rank) for _ in range(2)] if p.range.rank else []
        ok = ok and all(R.contains(v, v, tol) for v in ys)
        tt.add(ok, witness={"relation": name, "dim_domain": pR.domain.rank, "dim_range_T": p.range.rank,
                            "dim_mv": pR.mv.rank, "dim_T0": p.mv.rank})
        L = rel.compose(rel.inverse(T), T, tol)
        pL = rel.parts(L, tol)
        ok = sp.is_equal(pL.domain, p.domain, tol) and sp.is_equal(pL.mv, p.null, tol)
        ok = ok and all(L.contains(v, v, tol) for v in _domain_samples(T, rng, 2, tol))
        inv_t.add(ok, witness={"relation": name, "dim_mv": pL.mv.rank, "dim_null_T": p.null.rank})
    return [coset.done(), tt.done(), inv_t.done()]


def suite_lemma22(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed + 1)
    dist = _Tally("norm-as-distance", "||T(x)|| = d(y, T(0)) for any y in T(x)", 50)
    homog = _Tally("norm-homogeneity", "||alpha T|| = |alpha| ||T||", 50)
    tri = _Tally("norm-triangle", "||S(x) + T(x)|| <= ||S(x)|| + ||T(x)||", 50)
    rels = _all_relations(seed, sizes, tol)
    for name, T in rels:
        for x in _domain_samples(T, rng, 3, tol):
            y, Ndir = _coset_oracle(T, x)
            # least squares over the coset y + T(0)
            if Ndir.size:
                m = np.linalg.lstsq(Ndir, y, rcond=None)[0]
                direct = float(np.linalg.norm(y - Ndir @ m))
            else:
                direct = float(np.linalg.norm(y))
            got = norm_at(T, x, tol)
            err = abs(got - direct)
            dist.add(err <= 1e-9 * max(1.0, direct), err,
                     {"relation": name, "x": _jv(x), "norm_at": got, "least_squares": direct})
        alpha = complex(*rng.standard_normal(2)) * 2
        lhs, rhs = relation_norm(rel.scalar_mul(alpha, T, tol), tol), abs(alpha) * relation_norm(T, tol)
        homog.add(abs(lhs - rhs) <= 1e-9 * max(1.0, rhs), abs(lhs - rhs),
                  {"relation": name, "alpha": [alpha.real, alpha.imag], "lhs": lhs, "rhs": rhs})
    for name, T in rels:
        n = T.n
        H = C.random_hermitian(n, rng, 1.0) + 1j * C.random_hermitian(n, rng, 1.0)
        S = rel.from_operator(H, tol=tol)
        R = rel.op_sum(S, T, tol)
        for x in _domain_samples(R, rng, 2, tol):
            r = norm_at(R, x, tol) - norm_at(S, x, tol) - norm_at(T, x, tol)
            scale = max(1.0, float(np.linalg.norm(x)) * (relation_norm(T, tol) + relation_norm(S, tol)))
            tri.add(r <= 1e-9 * scale, r, {"relation": name, "x": _jv(x), "residual": r})
    return [dist.done(), homog.done(), tri.done()]


def suite_lemma24(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    law = _Tally("recompose-law", "T = T - S + S iff D(T) in D(S) and S(0) in T(0)", 50)
    seen = {True: 0, False: 0}
    pairs = C.default_pairs(seed, sizes, tol)
    rels = random_relations(seed + 2, sizes, tol=tol)
    candidates = [(p.name, p.T, p.S) for p in pairs[::3]]
    candidates += [(f"swap:{p.name}", p.S, p.T) for p in pairs[1::3]]
    by_n = {}
    for name, T in rels:
        by_n.setdefault(T.n, []).append((name, T))
    for n, group in by_n.items():
        for (a, T), (b, S) in zip(group, group[1:] + group[:1]):
            candidates.append((f"{a}|{b}", T, S))
    for name, T, S in candidates:
        inc = inclusion_report(T, S, tol)
        expect = inc.dom_ok and inc.mv_ok
        seen[expect] += 1
        law.add(inc.recompose_ok == expect,
                witness={"pair": name, **inc.as_dict()})
    c = law.done(hypotheses_true=seen[True], hypotheses_false=seen[False])
    if c.status == PASS and not (seen[True] and seen[False]):
        c.status, c.witness = FAIL, {"reason": "only one direction exercised"}
    return [c]


def suite_lemma25(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    law = _Tally("selfadjoint-mv-law",
                 "T self-adjoint, S Hermitian, D(T) in D(S) implies S(0) in T(0)", 50)
    rng = C.rng_for(seed + 25)
    skipped = 0
    for n in sizes:
        for j in range(4):
            T = C.cayley_selfadjoint(n, seed + 97 * n + j, mv_dim=j % max(1, n), tol=tol)
            cands = [
                ("hermitian-operator", rel.from_operator(C.random_hermitian(n, rng), tol=tol)),
                ("other-cayley", C.cayley_selfadjoint(n, seed + 131 * n + j, mv_dim=j % 2, tol=tol)),
                ("perturbed", rel.op_sum(T, rel.from_operator(C.random_hermitian(n, rng), tol=tol), tol)),
                ("bounded-random", C.perturbation_pair(T, "bounded-random", seed + j, tol=tol)),
                ("mv-matching", C.perturbation_pair(T, "mv-matching-random", seed + j, tol=tol)),
            ]
            # a Hermitian S cannot carry an mv vector outside T(0) next to D(T); try anyway
            p = rel.parts(T, tol)
            out = sp.complement(p.mv)
            if out.rank:
                v = out.basis[:, 0]
                gens = np.hstack([T.graph.basis, np.concatenate([np.zeros(n), v])[:, None]])
                cands.append(("mv-outside", rel.from_generators(gens, n=n, tol=tol)))
            for cname, S in cands:
                cS = rel.classify(S, tol)
                inc = inclusion_report(T, S, tol)
                if not (cS.is_hermitian and inc.dom_ok):
                    skipped += 1
                    continue
                law.add(inc.mv_ok, witness={"n": n, "j": j, "candidate": cname})
    return [law.done(hypotheses_failed=skipped)]


def suite_lemma26(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed + 26)
    orth = _Tally("domain-orthogonal-to-mv", "T Hermitian implies D(T) orthogonal to T(0)", 50)
    sym = _Tally("operator-part-symmetry",
                 "<T_s x2, [x1]> = <[x2], T_s x1> for Hermitian T", 50)
    for it in C.default_hermitian_corpus(seed, sizes, repeats=1, tol=tol):
        T = it.relation
        p = rel.parts(T, tol)
        s = float(np.linalg.norm(p.mv.basis.conj().T @ p.domain.basis, 2)) if p.mv.rank and p.domain.rank else 0.0
        orth.add(s <= tol.containment_tol, s, {"relation": it.name, "sine": s})
        op = operator_part(T, tol)
        xs = _domain_samples(T, rng, 4, tol)
        for x1, x2 in zip(xs[::2], xs[1::2]):
            lhs = rel.inner(op(x2), quotient_rep(x1, p.mv))
            rhs = rel.inner(quotient_rep(x2, p.mv), op(x1))
            scale = max(1.0, float(np.linalg.norm(x1) * np.linalg.norm(x2)) * max(1.0, op.norm))
            err = abs(lhs - rhs)
            sym.add(err <= tol.cmp_atol * scale, err / scale, {"relation": it.name, "x1": _jv(x1), "x2": _jv(x2)})
    return [orth.done(), sym.done()]


def suite_lemma27(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    rng = C.rng_for(seed + 27)
    law = _Tally("gap-rank-transfer", "||P - Q|| < 1 implies dim R(P) = dim R(Q)", 50)
    for d in sizes:
        for j in range(10):
            r1 = int(rng.integers(0, d + 1))
            r2 = r1 if j % 2 == 0 else int(rng.integers(0, d + 1))
            F1 = sp.orthonormalize(C.complex_gaussian(rng, (d, r1)), dim=d, tol=tol)
            # small perturbation of F1 for equal ranks, independent frame otherwise
            if r2 == r1 and j % 4 == 0:
                F2 = sp.orthonormalize(F1.basis + 1e-2 * C.complex_gaussian(rng, (d, r1)), dim=d, tol=tol)
            else:
                F2 = sp.orthonormalize(C.complex_gaussian(rng, (d, r2)), dim=d, tol=tol)
            g = sp.projector_gap(F1, F2)
            # contrapositive form: different ranks force a gap of 1
            law.add(F1.rank == F2.rank or g >= 1 - tol.cmp_atol, g,
                    {"d": d, "ranks": [F1.rank, F2.rank], "gap": g})
    return [law.done()]


def suite_lemma28(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL, samples=10_000):
    """Norm as a supremum of pairings against T(0)-orthogonal vectors."""
    rng = np.random.default_rng(seed + 28)
    never = _Tally("pairing-never-exceeds", "|<T(x), y>| <= ||T(x)|| for unit y orthogonal to T(0)", 50)
    reach = _Tally("pairing-reaches-norm", "sup |<T(x), y>| over unit y attains ||T(x)||", 50)
    indep = _Tally("pairing-well-defined", "<f, y> is the same for every f in T(x) when y is orthogonal to T(0)", 50)
    for name, T in _all_relations(seed, sizes, tol):
        p = rel.parts(T, tol)
        op = operator_part(T, tol)
        perp = sp.complement(p.mv)
        for x in _domain_samples(T, rng, 1, tol):
            value = norm_at(op, x, tol)
            rep = op(x)
            # unit vectors in T(0)^perp
            if perp.rank:
                Y = perp.basis @ C.complex_gaussian(rng, (perp.rank, samples))
                Y /= np.linalg.norm(Y, axis=0)
                best = float(np.max(np.abs(Y.conj().T @ rep)))
                never.add(best <= value * (1 + 1e-12) + 1e-15, best - value,
                          {"relation": name, "x": _jv(x), "sup": best, "norm": value})
                # a representative shifted inside T(0) pairs identically
                for _ in range(4 if p.mv.rank else 0):
                    f = rep + p.mv.basis @ C.complex_gaussian(rng, p.mv.rank)
                    err = float(np.max(np.abs(Y[:, :50].conj().T @ (f - rep))))
                    indep.add(err <= 1e-9 * max(1.0, float(np.linalg.norm(f))), err,
                              {"relation": name, "x": _jv(x)})
            if value > 0:
                # unit vectors in the span of the representative
                ph = np.exp(2j * np.pi * rng.random(samples))
                best = float(np.max(np.abs(np.outer(rep / value, ph).conj().T @ rep)))
                reach.add(abs(best - value) <= 1e-6 * max(1.0, value), abs(best - value),
                          {"relation": name, "x": _jv(x), "sup": best, "norm": value})
    return [never.done(), reach.done(), indep.done()]


# ---------------------------------------------------------------------------
# perturbation laws


def _k_grid(c, rng):
    kmax = 1.0 / (2.0 * c) if c > 0 else 10.0
    radii = np.array([0.0, 0.01, 0.1, 0.25, 0.5, 0.9, 1.0]) * kmax
    return [r * np.exp(1j * rng.uniform(0, 2 * np.pi)) for r in radii]


def analytic_gap_example(tol=DEFAULT_TOL):
    """``A = span{(e1, e2)}``, ``B = span{(e1, e1)}`` on C^2; gap(k) = |k| / sqrt(1 + |k|^2)."""
    e1, e2 = np.eye(2)
    A = rel.from_generators([np.concatenate([e1, e2])], tol=tol)
    B = rel.from_generators([np.concatenate([e1, e1])], tol=tol)
    return A, B, 1.0


def suite_lemma29(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    rng = np.random.default_rng(seed + 29)
    bound = _Tally("projector-gap-bound", "||P_k - P_0|| <= 2c|k| for |k| <= 1/(2c)", 50)
    dom = _Tally("sum-domination", "||B(x)|| <= 2c ||(A + kB)(x)|| for |k| <= 1/(2c)", 50)
    analytic = _Tally("analytic-gap", "gap(k) = |k|/sqrt(1+|k|^2) for A = span{(e1,e2)}, B = span{(e1,e1)}", 1)
    hyp = _Tally("hypotheses", "D(A) in D(B), B(0) in A(0), ||B(x)|| <= c||A(x)||", 1)
    for name, A, B, c in C.lemma29_triples(seed, sizes, tol):
        ks = _k_grid(c, rng)
        fam = projector_family(A, B, c, ks, tol)
        hyp.add(fam.hypotheses_ok, witness={"triple": name, **fam.hypotheses})
        if not fam.hypotheses_ok:
            continue
        for k, g in fam.points:
            limit = 2 * c * abs(k)
            bound.add(g <= limit + 1e-8, g - limit,
                      {"triple": name, "c": c, "k": [k.real, k.imag], "gap": g, "bound": limit})
        kb = ks[-1]
        r = domination_residual(A, B, c, kb, samples=200, seed=seed, tol=tol)
        scale = max(1.0, c * relation_norm(A, tol))
        dom.add(r <= 1e-9 * scale, r, {"triple": name, "k": [kb.real, kb.imag], "residual": r})
    A, B, c = analytic_gap_example(tol)
    ks = [0.0, 0.05, 0.2j, 0.3 - 0.3j, 0.5, -0.5j]
    fam = projector_family(A, B, c, ks, tol)
    for k, g in fam.points:
        exact = abs(k) / math.sqrt(1 + abs(k) ** 2)
        analytic.add(abs(g - exact) <= 1e-10 and g <= 2 * c * abs(k) + 1e-8, abs(g - exact),
                     {"k": [k.real, k.imag], "gap": g, "exact": exact})
    return [hyp.done(), bound.done(), dom.done(), analytic.done()]


def suite_lemma31(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL, per_relation=20):
    rng = np.random.default_rng(seed + 31)
    pyth = _Tally("pythagoras-identity",
                  "||(T-zI)(x)||^2 = ||(T-aI)(x)||^2 + b^2||x||^2 for z = a + ib, T Hermitian", 100)
    resolv = _Tally("resolvent-bound", "||(T-zI)^-1|| <= 1/|Im z| for T Hermitian", 100)
    for it in C.default_hermitian_corpus(seed, sizes, tol=tol):
        T = it.relation
        D = rel.domain(T, tol)
        worst = -math.inf
        for j in range(per_relation):
            upper = bool(j % 2)
            z = sample_half_plane(rng, 1, upper)[0]
            x = D.basis @ C.complex_gaussian(rng, D.rank) if D.rank else np.zeros(T.n, dtype=complex)
            r = abs(pythagoras_residual(T, x, z, tol))
            worst = max(worst, r / (1 + float(np.vdot(x, x).real)))
            if r > 1e-9 * (1 + float(np.vdot(x, x).real)):
                pyth.add(False, r, {"relation": it.name, "x": _jv(x), "z": [z.real, z.imag], "residual": r})
                break
        else:
            pyth.add(True, worst)
        zs = sample_half_plane(rng, 2, True) + sample_half_plane(rng, 2, False)
        for z in zs:
            v = resolvent_norm(T, z, tol)
            lim = 1 / abs(z.imag)
            if v > lim + 1e-9:
                resolv.add(False, v - lim, {"relation": it.name, "z": [z.real, z.imag], "norm": v, "bound": lim})
                break
        else:
            resolv.add(True)
    return [pyth.done(), resolv.done()]


def suite_deficiency(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    ident = _Tally("finite-dimension-index", "d+ = d- = n - dim T for Hermitian T", 100)
    excl = _Tally("eigenvalue-exclusion", "N(T - lambda I) = {0} for Hermitian T and nonreal lambda", 100)
    for k, it in enumerate(C.default_hermitian_corpus(seed, sizes, tol=tol)):
        T = it.relation
        rep = deficiency_indices(T, sample_count=10, seed=seed + k, tol=tol, relation_id=it.name)
        expect = T.n - T.dim
        ident.add(rep.constancy_ok and rep.pair == (expect, expect),
                  witness={"relation": it.name, "report": rep.as_dict(), "expected": expect})
        lam = rep.lambdas[1]
        excl.add(rel.parts(rel.shift(T, lam, tol), tol).null.rank == 0,
                 witness={"relation": it.name, "lambda": [lam.real, lam.imag]})
    return [ident.done(), excl.done()]


def suite_remark21(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    lq = _Tally("linear-to-quadratic",
                "linear (a, b) gives quadratic a'^2 = (1+1/eps)a^2, b'^2 = (1+eps)b^2 for every eps", 50)
    ql = _Tally("quadratic-to-linear", "quadratic (a', b') gives linear a = a', b = b'", 50)
    for k, pi in enumerate(C.default_pairs(seed, sizes, tol)[::2]):
        for b in (0.0, 0.5, 2.0):
            ((_, a),) = quadratic_frontier(pi.T, pi.S, [b], tol)
            q = RelBoundCertificate(a, b, QUADRATIC, pi.T, pi.S)
            lin = to_linear(q)
            chk = certify_bound(pi.T, pi.S, lin, samples=2000, seed=seed + k, tol=tol)
            ql.add(chk.holds and lin.a == q.a and lin.b == q.b, chk.worst_residual,
                   {"pair": pi.name, "a": a, "b": b, **chk.as_dict()})
            bad = []
            for eps in EPS_GRID:
                qc = to_quadratic(lin, float(eps))
                res = certify_bound(pi.T, pi.S, qc, tol=tol)
                if not res.holds:
                    bad.append(float(eps))
            lq.add(not bad, witness={"pair": pi.name, "a": a, "b": b, "failing_eps": bad})
    return [lq.done(), ql.done()]


def suite_lemma32(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    shift = _Tally("shifted-certificate", "S is (T+tS)-bounded with (a/(1-b), b/(1-b))", 50)
    ex = _Tally("transform-values", "(a, b) = (1, 1/2) maps to (2, 1); b >= 1 is rejected", 1)
    c = lemma32_shift(RelBoundCertificate(1.0, 0.5), 0.3, tol)
    try:
        lemma32_shift(RelBoundCertificate(1.0, 1.0), 0.3, tol)
        raised = False
    except TransformUndefinedError:
        raised = True
    ex.add(c.a == 2.0 and c.b == 1.0 and raised, witness={"a": c.a, "b": c.b, "rejected_b1": raised})
    for k, pi in enumerate(C.default_pairs(seed, sizes, tol)[::2]):
        for b in (0.0, 0.4, 0.5):
            ((_, a),) = quadratic_frontier(pi.T, pi.S, [b], tol)
            cert = RelBoundCertificate(a, b, LINEAR, pi.T, pi.S)
            for t in (0.0, 0.7, 1.0):
                new = lemma32_shift(cert, t, tol)
                chk = certify_bound(new.base, pi.S, new, samples=2000, seed=seed + k, tol=tol)
                shift.add(chk.holds, chk.worst_residual,
                          {"pair": pi.name, "a": a, "b": b, "t": t, **chk.as_dict()})
    return [ex.done(), shift.done()]


# ---------------------------------------------------------------------------
# theorems and corollaries


def homotopy_example():
    """``T = span{(e1, 0)}``, ``S = span{(e1, e1)}`` on C^2."""
    e1 = np.array([1.0, 0.0])
    z = np.zeros(2)
    T = rel.from_generators([np.concatenate([e1, z])])
    S = rel.from_generators([np.concatenate([e1, e1])])
    return T, S


def _verdict_witness(name, v):
    return {"pair": name, **v.as_dict()}


def suite_thm31(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    eq = _Tally("index-equality", "d(T+S) = d(T) for Hermitian T, S under the inclusion hypotheses", 50)
    hom = _Tally("homotopy-rank-constant", "deficiency projector ranks stay constant along T + tS", 50)
    pairs = [("homotopy-example", *homotopy_example())]
    pairs += [(p.name, p.T, p.S) for p in C.default_pairs(seed, sizes, tol)]
    skipped = 0
    for name, T, S in pairs:
        v = invariance_report(T, S, "thm31", seed=seed, tol=tol)
        if v.status == SKIP:
            skipped += 1
            continue
        eq.add(v.status == PASS, witness=_verdict_witness(name, v))
        tr = homotopy_sweep(T, S, tol=tol)
        (s0, s1) = tr.endpoint_ranks
        ok = tr.rank_constant and s0 == v.d_T and s1 == v.d_other
        hom.add(ok, witness={"pair": name, "d_T": list(v.d_T), "d_T_plus_S": list(v.d_other),
                             **tr.as_dict()})
    return [eq.done(skipped=skipped), hom.done()]


def suite_thm32(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    ineq = _Tally("index-inequality", "d(T+S) <= d(T) under a bound ||S(x)|| <= a||x|| + ||T(x)||", 50)
    neg = _Tally("negative-perturbation", "S = -T satisfies the b = 1 bound with a = 0 and d(T+S) = d(T)", 10)
    skipped = 0
    for p in C.default_pairs(seed, sizes, tol):
        v = invariance_report(p.T, p.S, "thm32", seed=seed, tol=tol)
        if v.status == SKIP:
            skipped += 1
            continue
        ineq.add(v.status == PASS, witness=_verdict_witness(p.name, v))
    for it in C.default_hermitian_corpus(seed, sizes, repeats=1, tol=tol):
        T = it.relation
        c = rel.classify(T, tol)
        if not (c.is_selfadjoint and c.is_operator):
            continue
        S = rel.scalar_mul(-1.0, T, tol)
        cert = RelBoundCertificate(0.0, 1.0, LINEAR, T, S)
        v = invariance_report(T, S, "thm32", cert=cert, seed=seed, tol=tol)
        ok = v.status == PASS and v.d_T == v.d_other == (0, 0)
        neg.add(ok, witness=_verdict_witness(it.name, v))
    return [ineq.done(skipped=skipped), neg.done()]


COROLLARY_MODES = tuple(m for m in MODES if m.startswith("cor"))

COROLLARY_ANCHORS = {
    "cor31": "d(T+S) = d(T) under a linear bound with b < 1",
    "cor32": "T+S self-adjoint iff T self-adjoint under a bound with b < 1",
    "cor33": "d(T+S) = d(T) when N(T) in N(S) and ||S T^-1|| < 1",
    "cor34": "S T^-1 is an operator for a Hermitian operator S with N(T) in N(S)",
    "cor35": "d(T+S) = d(T) for bounded T and accretive coupling Re<f, g> >= 0",
    "cor36": "d(V) = d(T) under ||(V-T)(x)|| <= a||x|| + b(||T(x)|| + ||V(x)||), b < 1",
    "cor37": "T+S self-adjoint for self-adjoint T and a symmetric S with a b = 1 bound",
    "cor38": "d(T+S) = d(T) under a b = 1 bound with S bounded against T+S",
}


def suite_corollaries(seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    tallies = {m: _Tally(m, COROLLARY_ANCHORS[m], 1) for m in COROLLARY_MODES}
    skipped = {m: 0 for m in COROLLARY_MODES}
    directions = set()
    for p in C.default_pairs(seed, sizes, tol):
        for mode in COROLLARY_MODES:
            other = rel.op_sum(p.T, p.S, tol) if mode == "cor36" else p.S
            v = invariance_report(p.T, other, mode, seed=seed, tol=tol)
            if v.status == SKIP:
                skipped[mode] += 1
                continue
            tallies[mode].add(v.status == PASS, witness=_verdict_witness(p.name, v))
            if mode == "cor32":
                directions.add(v.details["selfadjoint"]["T"])
    checks = [tallies[m].done(skipped=skipped[m]) for m in COROLLARY_MODES]
    both = _Tally("cor32-both-directions", "self-adjoint and non-self-adjoint T both exercised", 1)
    both.add(directions == {True, False}, witness={"seen": sorted(directions)})
    return checks + [both.done()]


SUITES = {
    "lemma21": suite_lemma21,
    "lemma22": suite_lemma22,
    "lemma24": suite_lemma24,
    "lemma25": suite_lemma25,
    "lemma26": suite_lemma26,
    "lemma27": suite_lemma27,
    "lemma28": suite_lemma28,
    "lemma29": suite_lemma29,
    "lemma31": suite_lemma31,
    "lemma32": suite_lemma32,
    "remark21": suite_remark21,
    "deficiency": suite_deficiency,
    "thm31": suite_thm31,
    "thm32": suite_thm32,
    "corollaries": suite_corollaries,
}


def run_suite(name, seed=0, sizes=C.SIZES, tol=DEFAULT_TOL):
    """Checks of one suite, or of every suite for ``name == "all"``."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for s in names:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
        for c in SUITES[s](seed=seed, sizes=tuple(sizes), tol=tol):
            c.name = f"{s}/{c.name}"
            out.append(c)
    return out
