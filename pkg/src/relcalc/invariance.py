"""
Hypothesis-checked invariance reports for deficiency indices.

Each mode checks the hypotheses of one invariance statement mechanically,
computes the indices on both sides, and only then checks the conclusion.
A failed hypothesis produces a ``"skip"`` verdict, never a claim.

Modes and their conclusions:

``thm31``  Hermitian T, S with inclusions and S bounded against every
           ``T + tS``: ``d(T+S) = d(T)``.
``cor31``  as thm31 with a linear bound ``b < 1``.
``cor32``  cor31 hypotheses: ``T + S`` self-adjoint iff T is.
``cor33``  adds ``N(T) ⊆ N(S)`` and ``||S T^{-1}|| < 1``.
``cor34``  Hermitian operator S, ``N(T) ⊆ N(S)``: ``S T^{-1}`` is an operator.
``cor35``  accretive coupling ``Re <f, g> >= 0``.
``cor36``  second argument is V with ``D(V) = D(T)``, ``V(0) = T(0)`` and
           ``||(V-T)(x)|| <= a||x|| + b(||T(x)|| + ||V(x)||)``, ``b < 1``:
           ``d(V) = d(T)``.
``cor37``  self-adjoint T, symmetric operator S with a ``b = 1`` bound:
           ``T + S`` self-adjoint.
``cor38``  ``b = 1`` bound and S bounded against ``T + S``.
``thm32``  Hermitian T, symmetric operator S with a ``b = 1`` bound:
           ``d(T+S) <= d(T)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

from . import relation as rel
from . import subspace as sp
from .deficiency import deficiency_index
from .exceptions import DimensionMismatchError
from .perturbation import (
    LINEAR,
    RelBoundCertificate,
    accretivity_min,
    certify_bound,
    inclusion_report,
    quadratic_frontier,
    st_inverse_analysis,
)
from .quotient import operator_part, relation_norm
from .subspace import DEFAULT_TOL

MODES = ("thm31", "cor31", "cor32", "cor33", "cor34", "cor35", "cor36", "cor37", "cor38", "thm32")

PATH_SAMPLES = (0.0, 0.25, 0.5, 0.75, 1.0)

ACCRETIVITY_NOTE = ("accretivity is checked over the whole lifted space {(x, f, g)}, "
                    "so multivalued components of T and S are included")


@dataclass
class InvarianceVerdict:
    mode: str
    hypotheses: dict
    d_T: tuple
    d_other: tuple
    conclusion: str
    conclusion_ok: bool | None
    details: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def hypotheses_ok(self):
        return all(self.hypotheses.values())

    @property
    def status(self):
        if not self.hypotheses_ok:
            return "skip"
        return "pass" if self.conclusion_ok else "fail"

    def as_dict(self):
        return {
            "mode": self.mode,
            "status": self.status,
            "hypotheses": dict(self.hypotheses),
            "d_T": list(self.d_T),
            "d_other": list(self.d_other),
            "conclusion": self.conclusion,
            "conclusion_ok": self.conclusion_ok,
            "details": self.details,
            "notes": list(self.notes),
        }


@rel.memoized
def indices(T, tol=DEFAULT_TOL):
    return (deficiency_index(T, 1j, tol), deficiency_index(T, -1j, tol))


def _pair_hypotheses(T, S, tol):
    cT, cS = rel.classify(T, tol), rel.classify(S, tol)
    inc = inclusion_report(T, S, tol)
    return {
        "T_hermitian": cT.is_hermitian,
        "S_hermitian": cS.is_hermitian,
        "domain_inclusion": inc.dom_ok,
        "mv_inclusion": inc.mv_ok,
    }, inc


def _symmetric_operator(S, tol):
    c = rel.classify(S, tol)
    return c.is_operator and c.is_densely_defined and c.is_hermitian


def _bounded_along_path(T, S, tol):
    """S bounded against ``T + tS`` at sampled ``t``; always true once ``D(T) ⊆ D(S)``."""
    out = {}
    for t in PATH_SAMPLES:
        R = rel.op_sum(T, rel.scalar_mul(t, S, tol), tol)
        ((_, a),) = quadratic_frontier(R, S, [1.0], tol)
        out[t] = a
    return all(math.isfinite(a) for a in out.values()), out


def _linear_cert(T, S, b, cert, tol, seed):
    """User certificate or a frontier-built one with the given ``b``, then certified."""
    if cert is None:
        ((_, a),) = quadratic_frontier(T, S, [b], tol)
        cert = RelBoundCertificate(a, b, LINEAR, T, S)
    check = certify_bound(T, S, cert, seed=seed, tol=tol)
    return cert, check


def _b1_cert(T, S, cert, tol, seed):
    """A ``b = 1`` linear certificate ``||S(x)|| <= a||x|| + ||T(x)||``."""
    if cert is None:
        ((_, a),) = quadratic_frontier(T, S, [0.0], tol)
        cert = RelBoundCertificate(a, 1.0, LINEAR, T, S)
    check = certify_bound(T, S, cert, seed=seed, tol=tol)
    return cert, check


def _cor36_bound(T, V, tol, seed, samples=2000):
    """Constants for ``||(V-T)(x)|| <= a||x|| + b(||T(x)|| + ||V(x)||)`` with ``b = 0``.

    ``a`` is the relation norm of ``V - T``, the exact supremum; a sampled
    residual over unit ``x in D`` is recorded as an independent check.
    """
    W = rel.op_sum(V, rel.scalar_mul(-1.0, T, tol), tol)
    a = relation_norm(W, tol)
    D = operator_part(T, tol).domain_frame
    worst = 0.0
    if D.rank:
        rng = np.random.default_rng(seed)
        C = rng.standard_normal((D.rank, samples)) + 1j * rng.standard_normal((D.rank, samples))
        C /= np.linalg.norm(C, axis=0)
        opW = operator_part(W, tol)
        X = D.basis @ C
        worst = float(np.max(np.linalg.norm(opW.matrix @ (opW.domain_frame.basis.conj().T @ X), axis=0)) - a)
    return a, 0.0, worst


def invariance_report(T, S, mode, cert=None, seed=0, tol=DEFAULT_TOL):
    """Check one invariance statement on the pair ``(T, S)``.

    For ``cor36`` the second argument is the relation V. ``cert`` optionally
    supplies the linear certificate for the modes that need one; otherwise a
    frontier certificate is constructed and verified.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    if T.n != S.n:
        raise DimensionMismatchError(f"relations act on C^{T.n} and C^{S.n}")

    notes = []
    details = {}
    d_T = indices(T, tol)

    if mode == "cor36":
        V = S
        cT, cV = rel.classify(T, tol), rel.classify(V, tol)
        pT, pV = rel.parts(T, tol), rel.parts(V, tol)
        hyp = {
            "T_hermitian": cT.is_hermitian,
            "V_hermitian": cV.is_hermitian,
            "equal_domains": sp.is_equal(pT.domain, pV.domain, tol),
            "equal_mv": sp.is_equal(pT.mv, pV.mv, tol),
        }
        if all(hyp.values()):
            a, b, worst = _cor36_bound(T, V, tol, seed)
            details["bound"] = {"a": a, "b": b, "sampled_residual": worst}
            hyp["difference_bound_b_lt_1"] = b < 1 and worst <= tol.cmp_atol * max(1.0, a)
        d_V = indices(V, tol)
        ok = d_V == d_T if all(hyp.values()) else None
        return InvarianceVerdict(mode, hyp, d_T, d_V, "d(V) == d(T)", ok, details, notes)

    if mode in ("thm32", "cor37"):
        cT = rel.classify(T, tol)
        hyp = {
            "T_hermitian": cT.is_hermitian,
            "S_symmetric_operator": _symmetric_operator(S, tol),
        }
        if mode == "cor37":
            hyp["T_selfadjoint"] = cT.is_selfadjoint
        inc = inclusion_report(T, S, tol)
        hyp["domain_inclusion"] = inc.dom_ok
        if inc.dom_ok:
            c, chk = _b1_cert(T, S, cert, tol, seed)
            hyp["b1_bound"] = c.variant == LINEAR and c.b == 1.0 and chk.holds
            details["certificate"] = {"a": c.a, "b": c.b, **chk.as_dict()}
        TS = rel.op_sum(T, S, tol)
        d_TS = indices(TS, tol)
        if not all(hyp.values()):
            return InvarianceVerdict(mode, hyp, d_T, d_TS, "", None, details, notes)
        if mode == "thm32":
            ok = d_TS[0] <= d_T[0] and d_TS[1] <= d_T[1]
            return InvarianceVerdict(mode, hyp, d_T, d_TS, "d(T+S) <= d(T)", ok, details, notes)
        sa = rel.classify(TS, tol).is_selfadjoint
        details["T_plus_S_selfadjoint"] = sa
        return InvarianceVerdict(mode, hyp, d_T, d_TS, "T+S self-adjoint", sa, details, notes)

    if mode == "cor34":
        cT, cS = rel.classify(T, tol), rel.classify(S, tol)
        inc = inclusion_report(T, S, tol)
        hyp = {
            "T_hermitian": cT.is_hermitian,
            "S_hermitian_operator": cS.is_hermitian and cS.is_operator,
            "domain_inclusion": inc.dom_ok,
            "null_inclusion": inc.null_ok,
        }
        st = st_inverse_analysis(T, S, tol)
        details["st_inverse"] = {"is_operator": st.is_operator, "norm": st.norm}
        d_TS = indices(rel.op_sum(T, S, tol), tol)
        if not all(hyp.values()):
            return InvarianceVerdict(mode, hyp, d_T, d_TS, "", None, details, notes)
        ok = st.is_operator
        conclusion = "S T^-1 is an operator"
        if st.norm < 1:
            conclusion += "; d(T+S) == d(T)"
            ok = ok and d_TS == d_T
        return InvarianceVerdict(mode, hyp, d_T, d_TS, conclusion, ok, details, notes)

    hyp, inc = _pair_hypotheses(T, S, tol)
    TS = rel.op_sum(T, S, tol)
    d_TS = indices(TS, tol)
    conclusion = "d(T+S) == d(T)"

    if inc.dom_ok:
        if mode == "thm31":
            ok, path = _bounded_along_path(T, S, tol)
            hyp["bounded_along_path"] = ok
            details["path_frontier_a"] = {str(t): a for t, a in path.items()}
        elif mode in ("cor31", "cor32"):
            c, chk = _linear_cert(T, S, 0.5, cert, tol, seed)
            hyp["bound_b_lt_1"] = c.variant == LINEAR and c.b < 1 and chk.holds
            details["certificate"] = {"a": c.a, "b": c.b, **chk.as_dict()}
        elif mode == "cor33":
            st = st_inverse_analysis(T, S, tol)
            hyp["null_inclusion"] = inc.null_ok
            hyp["st_inverse_bound_lt_1"] = st.is_operator and st.norm < 1
            details["st_inverse"] = {"is_operator": st.is_operator, "norm": st.norm}
        elif mode == "cor35":
            ((_, a),) = quadratic_frontier(T, S, [0.0], tol)
            hyp["T_bounded"] = math.isfinite(a)
            m = accretivity_min(T, S, tol)
            hyp["accretive"] = m >= -tol.cmp_atol * max(1.0, relation_norm(TS, tol) ** 2)
            details["accretivity_min"] = m
            notes.append(ACCRETIVITY_NOTE)
        elif mode == "cor38":
            c, chk = _b1_cert(T, S, cert, tol, seed)
            hyp["b1_bound"] = c.b == 1.0 and chk.holds
            details["certificate"] = {"a": c.a, "b": c.b, **chk.as_dict()}
            ((_, a),) = quadratic_frontier(TS, S, [1.0], tol)
            hyp["bounded_against_sum"] = math.isfinite(a)

    if not all(hyp.values()):
        return InvarianceVerdict(mode, hyp, d_T, d_TS, "", None, details, notes)

    if mode == "cor32":
        sa_T = rel.classify(T, tol).is_selfadjoint
        sa_TS = rel.classify(TS, tol).is_selfadjoint
        details["selfadjoint"] = {"T": sa_T, "T+S": sa_TS}
        return InvarianceVerdict(mode, hyp, d_T, d_TS, "T+S self-adjoint iff T self-adjoint",
                                 sa_T == sa_TS, details, notes)
    return InvarianceVerdict(mode, hyp, d_T, d_TS, conclusion, d_TS == d_T, details, notes)

