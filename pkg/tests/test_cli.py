import json

import pytest

from raagpal.cli import main

from conftest import path3, edgeless3


@pytest.fixture
def path_file(tmp_path):
    p = tmp_path / "path.json"
    p.write_text(path3().to_json())
    return str(p)


@pytest.fixture
def edgeless_file(tmp_path):
    p = tmp_path / "edgeless.json"
    p.write_text(edgeless3().to_json())
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    return code, out


def test_word_reduce(capsys, path_file):
    code, out = run(capsys, "word", "reduce", "--graph", path_file, "--word", "b a b^-1")
    assert code == 0 and out == "a"


def test_word_palindrome(capsys, path_file):
    code, out = run(capsys, "word", "palindrome", "--graph", path_file, "--word", "b a b")
    assert code == 0 and out == "true"
    code, out = run(capsys, "word", "palindrome", "--graph", path_file, "--word", "b c a")
    assert code == 0 and out == "false"


def test_word_rank_and_cpnf(capsys, path_file):
    code, out = run(capsys, "word", "rank", "--graph", path_file, "--word", "b")
    assert code == 0 and out == "3"
    code, out = run(capsys, "word", "cpnf", "--graph", path_file, "--word", "a c b c a")
    assert code == 0 and json.loads(out) == ["a", "c^2 b"]


def test_graph_info(capsys, path_file):
    code, out = run(capsys, "graph", "info", "--graph", path_file)
    rep = json.loads(out)
    assert rep["schema"] == "raagpal/1"
    assert rep["result"]["vertex_order"] == ["a", "c", "b"]
    assert rep["result"]["has_adjacent_domination"] is True


def test_aut_check_and_illegal(capsys, path_file):
    code, out = run(capsys, "aut", "check", "--graph", path_file,
                    "--aut", '{"generators":"P(a,b)"}')
    rep = json.loads(out)
    assert code == 0 and rep["result"]["isPure"] is True
    code, out = run(capsys, "aut", "check", "--graph", path_file,
                    "--aut", '{"generators":"tau(b,a)"}')
    rep = json.loads(out)
    assert code == 2 and rep["error"]["code"] == "IllegalGenerator"


def test_aut_apply_and_compose(capsys, path_file):
    code, out = run(capsys, "aut", "apply", "--graph", path_file,
                    "--aut", '{"generators":"P(a,c)"}', "--word", "a")
    assert code == 0 and out == "c a c"
    code, out = run(capsys, "aut", "compose", "--graph", path_file,
                    "--aut", '{"generators":"inv(a)"}',
                    "--aut", '{"generators":"inv(a)"}')
    rep = json.loads(out)
    assert code == 0 and rep["result"]["images"]["a"] == "a"


def test_aut_factor(capsys, path_file):
    code, out = run(capsys, "aut", "factor", "--graph", path_file,
                    "--aut", '{"generators":"P(a,b) inv(c)"}')
    rep = json.loads(out)
    assert code == 0
    assert rep["result"]["residual"] is None
    assert rep["result"]["word"]


def test_verify_relators(capsys):
    code, out = run(capsys, "verify", "relators", "--n", "4")
    rep = json.loads(out)
    assert code == 0 and rep["result"]["failures"] == 0


def test_verify_suites(capsys, path_file, edgeless_file):
    for sub in ("blocks", "exactseq", "splittings", "adjdom"):
        code, out = run(capsys, "verify", sub, "--graph", path_file, "--count", "25")
        assert code == 0, (sub, out)
    code, out = run(capsys, "verify", "torelli", "--graph", edgeless_file)
    rep = json.loads(out)
    assert code == 0 and rep["result"]["nontrivial_lifts"] > 0


def test_invalid_input_exit_codes(capsys, path_file, tmp_path):
    code, out = run(capsys, "word", "reduce", "--graph", path_file, "--word", "q")
    rep = json.loads(out)
    assert code == 2 and rep["error"]["code"] == "UnknownVertex"
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out = run(capsys, "graph", "info", "--graph", str(bad))
    assert code == 2
    code, _ = run(capsys, "word", "nonsense", "--graph", path_file, "--word", "a")
    assert code == 2


def test_report_reproducible(capsys, path_file, tmp_path):
    outs = []
    f = tmp_path / "report.json"
    for _ in range(2):
        run(capsys, "verify", "blocks", "--graph", path_file, "--count", "10",
            "--seed", "3", "--out", str(f))
        rep = json.loads(f.read_text())
        rep.pop("elapsed", None)
        outs.append(rep)
    assert outs[0] == outs[1]
