"""
Command-line interface.

Every command emits one JSON report on stdout (or to ``--report FILE``)
and a short human summary on stderr. Exit status is derived from the
report alone: 2 if it carries an error, 1 if any check failed, else 0.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from . import corpus as C
from . import relation as rel
from . import subspace as sp
from .deficiency import deficiency_index, deficiency_indices, deficiency_profile, sample_half_plane
from .exceptions import HypothesisError, RelcalcError
from .fileformat import RelationFileError, parse_relation_file, relation_to_dict, write_relation_file
from .perturbation import (
    QUADRATIC,
    RelBoundCertificate,
    certify_bound,
    homotopy_sweep,
    inclusion_report,
    quadratic_frontier,
)
from .quotient import relation_norm
from .subspace import TolerancePolicy
from .suites import FAIL, PASS, SKIP, SUITES, Check, run_suite

SEED_ENV = "RELCALC_SEED"
SUITE_CHOICES = sorted(SUITES) + ["all"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# report plumbing


def _clean(obj):
    """JSON-safe copy: complex as [re, im], non-finite floats as strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return [_clean(float(obj.real)), _clean(float(obj.imag))]
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def exit_status(report):
    if report.get("error"):
        return 2
    if any(c["status"] == FAIL for c in report.get("checks", [])):
        return 1
    return 0


def _report(command, argv, seed, tol, checks=(), result=None, error=None):
    doc = {
        "tool": "relcalc",
        "version": __version__,
        "command": command,
        "argv": list(argv),
        "seed": seed,
        "tolerance": tol.as_dict() if tol is not None else None,
        "checks": [c.as_dict() for c in checks],
        "result": result or {},
        "error": error,
    }
    doc = _clean(doc)
    doc["exit_status"] = exit_status(doc)
    doc["status"] = {0: PASS, 1: FAIL, 2: "error"}[doc["exit_status"]]
    return doc


def _check(name, anchor, ok, witness=None, **details):
    return Check(name, anchor, PASS if ok else FAIL, None if ok else witness, details)


# ---------------------------------------------------------------------------
# commands


def _parts_summary(T, tol):
    p = rel.parts(T, tol)
    return {"domain": p.domain.rank, "range": p.range.rank, "null": p.null.rank, "mv": p.mv.rank}


def cmd_analyze(args, tol, seed):
    T = parse_relation_file(args.file, tol)
    c = rel.classify(T, tol)
    dims = _parts_summary(T, tol)
    result = {
        "ambient": T.n,
        "dim": T.dim,
        "parts": dims,
        "classification": vars(c),
        "relation_norm": relation_norm(T, tol),
        "hermitian_defect": rel.hermitian_defect(T),
    }
    checks = [_check("rank-nullity", "dim T = dim D(T) + dim T(0)",
                     T.dim == dims["domain"] + dims["mv"], dims)]
    return checks, result


def cmd_adjoint(args, tol, seed):
    T = parse_relation_file(args.file, tol)
    A = rel.adjoint(T)
    # <g, x> - <y, f> for every pair of generators (x, f) in T, (y, g) in T*
    P = T.x_block.conj().T @ A.f_block - T.f_block.conj().T @ A.x_block
    defect = float(np.max(np.abs(P))) if P.size else 0.0
    back = rel.adjoint(A)
    gap = sp.projector_gap(back.graph, T.graph)
    checks = [
        _check("pairing-identity", "<g, x> = <y, f> for all (x, f) in T, (y, g) in T*",
               defect <= tol.cmp_atol, {"max_defect": defect}, max_defect=defect),
        _check("involution", "T** = T", rel.equal(back, T, tol), {"gap": gap}, gap=gap),
    ]
    result = {"dim": A.dim, "parts": _parts_summary(A, tol)}
    if args.out:
        write_relation_file(args.out, A)
        result["written"] = args.out
    else:
        result["relation"] = relation_to_dict(A)
    return checks, result


def cmd_deficiency(args, tol, seed):
    T = parse_relation_file(args.file, tol)
    try:
        rep = deficiency_indices(T, sample_count=args.samples, seed=seed, tol=tol,
                                 relation_id=str(args.file))
    except HypothesisError:
        rng = np.random.default_rng(seed)
        lams = [1j, -1j, *sample_half_plane(rng, args.samples, True),
                *sample_half_plane(rng, args.samples, False)]
        raw = [{"lambda": z, "index": d} for z, d in deficiency_profile(T, lams, tol)]
        chk = _check("hermitian", "indices are constant on half-planes only for Hermitian T",
                     False, {"hermitian_defect": rel.hermitian_defect(T)})
        return [chk], {"raw_profile": raw}
    checks = [
        _check("hermitian", "indices are constant on half-planes only for Hermitian T", True),
        _check("half-plane-constancy", "d(lambda) is constant on each open half-plane",
               rep.constancy_ok, {"samples": rep.as_dict()["samples"]}),
    ]
    result = rep.as_dict()
    result["d"] = [rep.d_plus, rep.d_minus]
    return checks, result


def _require_inclusions(T, S, tol):
    inc = inclusion_report(T, S, tol)
    return inc, _check("domain-inclusion", "D(T) is contained in D(S)", inc.dom_ok, inc.as_dict())


def cmd_frontier(args, tol, seed):
    T = parse_relation_file(args.file_t, tol)
    S = parse_relation_file(args.file_s, tol)
    inc, dom = _require_inclusions(T, S, tol)
    if not inc.dom_ok:
        return [dom], {"inclusion": inc.as_dict()}
    grid = args.b_grid if args.b_grid else [float(b) for b in np.linspace(0.0, 2.0, 9)]
    if any(b < 0 for b in grid):
        raise UsageError("b-grid values must be nonnegative")
    pts = quadratic_frontier(T, S, sorted(grid), tol)
    a_vals = [a for _, a in pts]
    drops = [a_vals[i + 1] - a_vals[i] for i in range(len(a_vals) - 1)]
    mono = all(d <= tol.cmp_atol * max(1.0, a_vals[0]) for d in drops)
    certs = []
    for b, a in pts:
        chk = certify_bound(T, S, RelBoundCertificate(a, b, QUADRATIC, T, S), seed=seed, tol=tol)
        certs.append({"b": b, "a": a, **chk.as_dict()})
    bad = [c for c in certs if not c["holds"]]
    checks = [
        dom,
        _check("frontier-monotone", "minimal a' is nonincreasing in b'", mono, {"a": a_vals}),
        _check("frontier-certifies", "every frontier point is a valid quadratic bound",
               not bad, bad[0] if bad else None),
    ]
    return checks, {"inclusion": inc.as_dict(), "frontier": [[b, a] for b, a in pts],
                    "certificates": certs}


def cmd_homotopy(args, tol, seed):
    T = parse_relation_file(args.file_t, tol)
    S = parse_relation_file(args.file_s, tol)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    try:
        tr = homotopy_sweep(T, S, initial_grid=args.grid, tol=tol)
    except HypothesisError as exc:
        chk = _check("hypotheses", "T, S Hermitian with D(T) in D(S) and S(0) in T(0)",
                     False, {"failed": list(exc.failed)})
        return [chk], {}
    (s0, s1) = tr.endpoint_ranks
    TS = rel.op_sum(T, S, tol)
    d_T = [deficiency_index(T, 1j, tol), deficiency_index(T, -1j, tol)]
    d_TS = [deficiency_index(TS, 1j, tol), deficiency_index(TS, -1j, tol)]
    checks = [
        _check("hypotheses", "T, S Hermitian with D(T) in D(S) and S(0) in T(0)", True),
        _check("refinement-converged", "consecutive projector gaps below 1 along the grid",
               tr.converged, {"max_depth_reached": tr.max_depth_reached}),
        _check("rank-constant", "rank of the deficiency projector is constant in t",
               tr.rank_constant, {"ranks": [[p.t, p.rank_plus, p.rank_minus] for p in tr.points]}),
        _check("endpoints", "trace endpoints match d(T) and d(T+S) computed directly",
               list(s0) == d_T and list(s1) == d_TS,
               {"trace": [list(s0), list(s1)], "direct": [d_T, d_TS]}),
    ]
    result = tr.as_dict()
    result.update({"rank_constant": tr.rank_constant, "d_T": d_T, "d_T_plus_S": d_TS})
    return checks, result


def cmd_verify(args, tol, seed):
    sizes = tuple(args.sizes) if args.sizes else C.SIZES
    if any(n < 1 for n in sizes):
        raise UsageError("--sizes must be positive integers")
    checks = run_suite(args.suite, seed=seed, sizes=sizes, tol=tol)
    return checks, {"suite": args.suite, "sizes": list(sizes),
                    "counts": {s: sum(c.status == s for c in checks) for s in (PASS, FAIL, SKIP)}}


def _gen_spec(args, seed):
    params = {}
    if args.kind in ("cayley", "restriction"):
        params["mv_dim"] = args.mv_dim
        params["null_dim"] = args.null_dim
    if args.kind == "restriction":
        params["m"] = args.m if args.m is not None else max(args.n - 1, 0)
    if args.kind == "jacobi":
        params["diag"] = args.diag if args.diag is not None else [0.0] * args.n
        params["offdiag"] = args.offdiag if args.offdiag is not None else [1.0] * (args.n - 1)
        params["restrict_ends"] = args.restrict_ends
    if args.kind == "pair":
        params["profile"] = args.profile
        params["kappa"] = args.kappa
        params["base"] = {"kind": "cayley", "ambient_dim": args.n, "seed": seed,
                          "params": {"mv_dim": args.mv_dim, "null_dim": args.null_dim}}
    return C.CorpusSpec(args.kind, args.n, seed, params)


def _out_s_path(path):
    root, ext = os.path.splitext(path)
    return f"{root}_S{ext or '.json'}"


def cmd_gen(args, tol, seed):
    if args.n < 1:
        raise UsageError("--n must be positive")
    spec = _gen_spec(args, seed)
    try:
        made = C.generate(spec, tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result = {"corpus_spec": spec.as_dict()}
    if spec.kind == "pair":
        T, S = made
        inc = inclusion_report(T, S, tol)
        cT, cS = rel.classify(T, tol), rel.classify(S, tol)
        ok = cT.is_hermitian and cS.is_hermitian and inc.dom_ok and inc.mv_ok
        checks = [_check("advertised-hypotheses", "S Hermitian with D(T) in D(S) and S(0) in T(0)",
                         ok, {**inc.as_dict(), "T_hermitian": cT.is_hermitian,
                              "S_hermitian": cS.is_hermitian})]
        if args.out:
            out_s = args.out_s or _out_s_path(args.out)
            write_relation_file(args.out, T)
            write_relation_file(out_s, S)
            result["written"] = [args.out, out_s]
        else:
            result["T"] = relation_to_dict(T)
            result["S"] = relation_to_dict(S)
        return checks, result
    T = made
    c = rel.classify(T, tol)
    want_sa = spec.kind == "cayley" or (spec.kind == "jacobi" and not args.restrict_ends)
    ok = c.is_selfadjoint if want_sa else c.is_hermitian
    checks = [_check("advertised-classification",
                     "self-adjoint" if want_sa else "Hermitian", ok, vars(c))]
    if args.out:
        write_relation_file(args.out, T, spec)
        result["written"] = [args.out]
    else:
        result["relation"] = relation_to_dict(T, spec)
    return checks, result


COMMANDS = {
    "analyze": cmd_analyze,
    "adjoint": cmd_adjoint,
    "deficiency": cmd_deficiency,
    "frontier": cmd_frontier,
    "homotopy": cmd_homotopy,
    "verify": cmd_verify,
    "gen": cmd_gen,
}


# ---------------------------------------------------------------------------
# argument parsing


def _seed(text):
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if v < 0 or v >= 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v >= 0):
        raise argparse.ArgumentTypeError(f"must be finite and nonnegative: {text!r}")
    return v


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--rank-rtol", type=_nonneg_float, default=None,
                        help="relative singular-value cutoff for rank decisions")
    common.add_argument("--atol", type=_nonneg_float, default=None,
                        help="absolute tolerance for scalar comparisons")
    common.add_argument("--containment-tol", type=_nonneg_float, default=None,
                        help="largest principal-angle sine accepted as containment")
    common.add_argument("--report", metavar="FILE", help="write the JSON report here instead of stdout")
    common.add_argument("-q", "--quiet", action="store_true", help="no summary on stderr")

    p = _Parser(prog="relcalc", description="Linear relations, deficiency indices and perturbation checks.")
    p.add_argument("--version", action="version", version=f"relcalc {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="parts, classification and norm of a relation")
    a.add_argument("file")

    a = sub.add_parser("adjoint", parents=[common], help="adjoint relation")
    a.add_argument("file")
    a.add_argument("-o", "--out", help="write the adjoint as a relation file")

    a = sub.add_parser("deficiency", parents=[common], help="deficiency indices of a Hermitian relation")
    a.add_argument("file")
    a.add_argument("--samples", type=int, default=10, help="random points per half-plane")
    a.add_argument("--seed", type=_seed, default=None)

    a = sub.add_parser("frontier", parents=[common], help="quadratic bound frontier of S against T")
    a.add_argument("file_t", metavar="FILE_T")
    a.add_argument("file_s", metavar="FILE_S")
    a.add_argument("--b-grid", type=_nonneg_float, nargs="+", default=None)
    a.add_argument("--seed", type=_seed, default=None)

    a = sub.add_parser("homotopy", parents=[common], help="deficiency projector sweep along T + tS")
    a.add_argument("file_t", metavar="FILE_T")
    a.add_argument("file_s", metavar="FILE_S")
    a.add_argument("--grid", type=int, default=5, help="initial number of grid points")

    a = sub.add_parser("verify", parents=[common], help="run a verification suite")
    a.add_argument("--suite", required=True, choices=SUITE_CHOICES)
    a.add_argument("--seed", type=_seed, default=None)
    a.add_argument("--sizes", type=int, nargs="+", default=None)

    a = sub.add_parser("gen", parents=[common], help="generate a corpus relation or pair")
    a.add_argument("--kind", required=True, choices=C.KINDS)
    a.add_argument("--n", type=int, required=True, help="ambient dimension")
    a.add_argument("--seed", type=_seed, default=None)
    a.add_argument("--mv-dim", type=int, default=0)
    a.add_argument("--null-dim", type=int, default=0)
    a.add_argument("--m", type=int, default=None, help="graph dimension for restrictions")
    a.add_argument("--profile", choices=C.PROFILES, default="bounded-random")
    a.add_argument("--kappa", type=float, default=1.0 / 3.0)
    a.add_argument("--diag", type=float, nargs="+", default=None)
    a.add_argument("--offdiag", type=float, nargs="*", default=None)
    a.add_argument("--restrict-ends", action="store_true")
    a.add_argument("-o", "--out", help="output file (T for pairs)")
    a.add_argument("--out-s", help="output file for S of a pair (default: OUT with _S suffix)")
    return p


def _tolerance(args):
    d = {}
    if getattr(args, "rank_rtol", None) is not None:
        d["rank_rtol"] = args.rank_rtol
    if getattr(args, "atol", None) is not None:
        d["cmp_atol"] = args.atol
    if getattr(args, "containment_tol", None) is not None:
        d["containment_tol"] = args.containment_tol
    return TolerancePolicy(**d)


def _default_seed():
    text = os.environ.get(SEED_ENV)
    if text is None or text == "":
        return 0
    try:
        return _seed(text)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}") from None


def _execute(argv):
    argv = list(argv)
    command = argv[0] if argv else None
    tol = seed = args = None
    try:
        args = build_parser().parse_args(argv)
        command = args.command
        tol = _tolerance(args)
        seed = args.seed if getattr(args, "seed", None) is not None else _default_seed()
        checks, result = COMMANDS[command](args, tol, seed)
        doc = _report(command, argv, seed, tol, checks, result)
    except UsageError as exc:
        doc = _report(command, argv, seed, tol, error={"code": "usage", "message": str(exc)})
    except RelationFileError as exc:
        doc = _report(command, argv, seed, tol, error={
            "code": exc.code, "message": str(exc), "path": None if exc.path is None else str(exc.path),
            "field": exc.field, "line": exc.line})
    except RelcalcError as exc:
        doc = _report(command, argv, seed, tol, error={"code": type(exc).__name__, "message": str(exc)})
    return doc, args


def run_command(argv):
    """Run one command; returns ``(exit_status, report)`` without printing."""
    doc, _ = _execute(argv)
    return doc["exit_status"], doc


def summarize(doc):
    lines = []
    for c in doc["checks"]:
        lines.append(f"{c['status'].upper():4s}  {c['name']}  ({c['paper_anchor']})")
    if doc.get("error"):
        lines.append(f"error [{doc['error']['code']}]: {doc['error']['message']}")
    n_fail = sum(c["status"] == FAIL for c in doc["checks"])
    lines.append(f"{doc['command']}: {doc['status']} ({len(doc['checks'])} checks, {n_fail} failed), "
                 f"exit {doc['exit_status']}")
    return "\n".join(lines)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return 0 if argv else 2
    if argv[0] == "--version":
        print(f"relcalc {__version__}")
        return 0
    doc, args = _execute(argv)
    text = json.dumps(doc, indent=1)
    target = getattr(args, "report", None)
    if target:
        try:
            with open(target, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"cannot write report: {exc}", file=sys.stderr)
            return 2
    else:
        print(text)
    if not getattr(args, "quiet", False):
        print(summarize(doc), file=sys.stderr)
    return doc["exit_status"]


if __name__ == "__main__":
    sys.exit(main())
