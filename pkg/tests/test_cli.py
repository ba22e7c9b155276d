import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from relcalc import cli
from relcalc import corpus as C
from relcalc import fileformat as ff
from relcalc import relation as rel
from relcalc.suites import homotopy_example

REPORT_KEYS = {"tool", "version", "command", "argv", "seed", "tolerance", "checks",
               "result", "error", "exit_status", "status"}


@pytest.fixture
def files(tmp_path):
    def write(name, T):
        path = tmp_path / name
        ff.write_relation_file(path, T)
        return str(path)
    return write


def run(*argv):
    status, doc = cli.run_command(list(argv))
    assert set(doc) == REPORT_KEYS
    assert status == doc["exit_status"] == cli.exit_status(doc)
    json.dumps(doc)  # the report is plain JSON data
    return status, doc


def test_analyze(files):
    status, doc = run("analyze", files("t.json", C.cayley_selfadjoint(3, 1, mv_dim=1)))
    assert status == 0
    assert doc["checks"][0]["status"] == "pass"
    assert doc["tolerance"]["rank_rtol"] == 1e-10


def test_adjoint_writes_file(files, tmp_path):
    out = tmp_path / "adj.json"
    status, _ = run("adjoint", files("t.json", rel.from_operator([[1j]])), "-o", str(out))
    assert status == 0
    assert rel.equal(ff.parse_relation_file(out), rel.from_operator([[-1j]]))


def test_deficiency_selfadjoint(files):
    status, doc = run("deficiency", files("t.json", C.cayley_selfadjoint(4, 2)), "--seed", "3")
    assert status == 0 and doc["result"]["d"] == [0, 0] and doc["seed"] == 3


def test_deficiency_non_hermitian(files):
    status, doc = run("deficiency", files("t.json", rel.from_operator([[1j]])))
    assert status == 1
    failed = [c for c in doc["checks"] if c["status"] == "fail"]
    assert failed and failed[0]["name"] == "hermitian" and failed[0]["witness"] is not None


def test_frontier(files):
    T = C.cayley_selfadjoint(3, 4)
    S = C.perturbation_pair(T, "bounded-random", 4)
    status, doc = run("frontier", files("t.json", T), files("s.json", S), "--b-grid", "0", "0.5", "2")
    assert status == 0
    assert {c["name"] for c in doc["checks"]} >= {"frontier-monotone", "frontier-certifies"}


def test_frontier_domain_failure(files):
    status, doc = run("frontier", files("t.json", rel.identity(2)),
                      files("s.json", rel.from_operator(np.eye(2), [[1, 0]])))
    assert status == 1
    assert any(c["name"] == "domain-inclusion" and c["status"] == "fail" for c in doc["checks"])


def test_homotopy_example(files):
    T, S = homotopy_example()
    status, doc = run("homotopy", files("t.json", T), files("s.json", S))
    assert status == 0
    assert doc["result"]["rank_constant_plus"] and doc["result"]["rank_constant_minus"]


def test_verify_lemma29():
    status, doc = run("verify", "--suite", "lemma29", "--seed", "7")
    assert status == 0 and doc["seed"] == 7
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert all(c["name"].startswith("lemma29/") for c in doc["checks"])


def test_verify_sizes():
    status, doc = run("verify", "--suite", "lemma21", "--sizes", "1", "2")
    assert status == 0 and doc["result"]["sizes"] == [1, 2]


@pytest.mark.parametrize("kind,extra", [
    ("cayley", ["--mv-dim", "1"]),
    ("restriction", ["--m", "2"]),
    ("jacobi", ["--restrict-ends"]),
])
def test_gen_relation(kind, extra, tmp_path):
    out = tmp_path / f"{kind}.json"
    status, doc = run("gen", "--kind", kind, "--n", "4", "--seed", "5", "-o", str(out), *extra)
    assert status == 0
    T = ff.parse_relation_file(out)
    spec = C.CorpusSpec.from_dict(doc["result"]["corpus_spec"])
    assert rel.equal(T, C.generate(spec))


def test_gen_pair(tmp_path):
    out = tmp_path / "p.json"
    status, doc = run("gen", "--kind", "pair", "--n", "3", "--seed", "2", "-o", str(out))
    assert status == 0
    assert doc["result"]["written"] == [str(out), str(tmp_path / "p_S.json")]
    T, S = ff.parse_relation_file(out), ff.parse_relation_file(tmp_path / "p_S.json")
    assert rel.classify(T).is_hermitian and rel.classify(S).is_hermitian
    status, _ = run("homotopy", str(out), str(tmp_path / "p_S.json"))
    assert status == 0


def test_missing_file_exit_2(tmp_path):
    status, doc = run("analyze", str(tmp_path / "none.json"))
    assert status == 2 and doc["error"]["code"] == ff.MISSING_FILE


def test_schema_error_exit_2(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"format_version": 1, "ambient": 1, "generators": [[[0, 0], "x"]]}')
    status, doc = run("analyze", str(p))
    assert status == 2 and doc["error"]["code"] == ff.SCHEMA and doc["error"]["line"] == 1


@pytest.mark.parametrize("argv", [
    ["nonsense"], ["verify", "--suite", "lemma99"], ["analyze"],
    ["gen", "--kind", "cayley", "--n", "0"], ["verify", "--suite", "lemma21", "--sizes", "0"],
])
def test_usage_errors(argv):
    status, doc = run(*argv)
    assert status == 2 and doc["error"]["code"] == "usage"


def test_seed_env(monkeypatch):
    monkeypatch.setenv("RELCALC_SEED", "11")
    _, doc = run("verify", "--suite", "lemma21", "--sizes", "1")
    assert doc["seed"] == 11
    monkeypatch.setenv("RELCALC_SEED", "eleven")
    status, doc = run("verify", "--suite", "lemma21", "--sizes", "1")
    assert status == 2


def test_tolerance_flags():
    _, doc = run("verify", "--suite", "lemma21", "--sizes", "1", "--rank-rtol", "1e-9", "--atol", "1e-8")
    assert doc["tolerance"]["rank_rtol"] == 1e-9 and doc["tolerance"]["cmp_atol"] == 1e-8


def test_reproducible_from_report():
    _, first = run("verify", "--suite", "lemma22", "--seed", "5", "--sizes", "2", "3")
    _, again = run(*first["argv"])
    assert first["checks"] == again["checks"]


@given(st.lists(st.sampled_from(["pass", "fail", "skip"]), max_size=5), st.booleans())
def test_exit_status_pure(statuses, err):
    doc = {"checks": [{"status": s} for s in statuses], "error": {"code": "x"} if err else None}
    expect = 2 if err else (1 if "fail" in statuses else 0)
    assert cli.exit_status(doc) == expect


def test_main_writes_report(tmp_path, capsys):
    out = tmp_path / "rep.json"
    code = cli.main(["verify", "--suite", "lemma21", "--sizes", "1", "--report", str(out), "-q"])
    assert code == 0
    assert json.loads(out.read_text())["status"] == "pass"
    assert capsys.readouterr().err == ""


def test_main_summary(capsys):
    assert cli.main(["verify", "--suite", "lemma21", "--sizes", "1"]) == 0
    captured = capsys.readouterr()
    assert json.loads(captured.out)["command"] == "verify"
    assert "exit 0" in captured.err


def test_main_no_args(capsys):
    assert cli.main([]) == 2
