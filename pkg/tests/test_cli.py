import json
import subprocess
import sys

import pytest

from cogkit.cli import main
from cogkit.complexes import BipartiteGraph


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


@pytest.fixture
def k22(tmp_path):
    path = tmp_path / "k22.json"
    path.write_text(json.dumps(BipartiteGraph.complete(2, 2).to_json()))
    return str(path)


def test_cover_gamma_report(capsys):
    code, out = run(capsys, "cover-gamma", "--m", "3", "--q1", "2", "--q2", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["sheets"] == 4
    assert rep["condition1"] == "ok" and rep["condition2"] == "ok"
    assert rep["euler"]["chiX"] == -2 and rep["euler"]["chiOrb"] == "-1/2"
    assert rep["euler"]["ratio"] == 4
    assert rep["minimal"]


def test_cover_w_from_graph_file(capsys, k22):
    code, out = run(capsys, "cover-w", "--m", "3", "--graph", k22)
    assert code == 0 and json.loads(out)["sheets"] == 6


def test_cover_search(capsys, k22):
    code, out = run(capsys, "cover-search", "--m", "2", "--graph", k22, "--which", "k")
    assert code == 0 and json.loads(out)["sheets"] == 4
    code, out = run(capsys, "cover-w", "--m", "2", "--graph", k22, "--seed-phi", "search")
    assert code == 0


def test_present(capsys):
    code, out = run(capsys, "present", "--m", "2", "--q1", "2", "--q2", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["H"]["relators"] == [["x1^1", "y1^1", "x1^1(-1)", "y1^1(-1)"]]
    code, out = run(capsys, "present", "--m", "2", "--q1", "2", "--q2", "2", "--format", "text")
    assert out.startswith("H = < x1^1, y1^1 |")


def test_amalgam(capsys):
    code, out = run(capsys, "amalgam", "--m", "3", "--q1", "2", "--q2", "3")
    assert code == 0 and json.loads(out)["equals_presentation_h"]


@pytest.mark.parametrize("cmd", ["build-x", "chamber", "cog", "euler", "kg1", "hyperbolicity"])
def test_subcommands_succeed(capsys, cmd):
    code, out = run(capsys, cmd, "--m", "3", "--q1", "2", "--q2", "3")
    assert code == 0
    assert json.loads(out)


def test_cog_which(capsys):
    code, out = run(capsys, "cog", "--m", "3", "--q1", "2", "--q2", "2", "--which", "p")
    rep = json.loads(out)
    assert rep["chi_orb"] == {"num": -1, "den": 2} and rep["sheet_lower_bound"] == 4


def test_dot_export(capsys):
    code, out = run(capsys, "build-x", "--m", "2", "--q1", "2", "--q2", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out = run(capsys, "kg1", "--m", "3", "--q1", "2", "--q2", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["chi"] == -2


def test_input_errors(capsys, tmp_path):
    assert main(["present", "--m", "2", "--q1", "2"]) == 2
    assert main(["build-x", "--m", "1", "--q1", "2", "--q2", "2"]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"left": ["x1", "x2"], "right": ["y1", "y2"],
                               "edges": [["x1", "y1"], ["x2", "y2"]]}))
    assert main(["cover-w", "--m", "2", "--graph", str(bad)]) == 2
    assert main(["cover-w", "--m", "2", "--graph", str(tmp_path / "missing.json")]) == 2
    assert main(["cover-gamma", "--m", "2", "--graph", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2


def test_deterministic_output(capsys):
    _, first = run(capsys, "cover-w", "--m", "3", "--q1", "2", "--q2", "3")
    _, second = run(capsys, "cover-w", "--m", "3", "--q1", "2", "--q2", "3")
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cogkit", "hyperbolicity", "--m", "2",
                           "--q1", "2", "--q2", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"hyperbolic": False, "witness": ["x1", "y1", "x2", "y2"]}


def test_verification_failure_exits_1(capsys, monkeypatch):
    from cogkit import covering as cov
    real = cov.build_phi_gamma

    def broken(m, q1, q2):
        data = real(m, q1, q2)
        a = sorted(data.phi, key=str)[0]
        return data.with_phi(a, (data.phi[a] + 1) % data.target_group(a).order)

    monkeypatch.setattr(cov, "build_phi_gamma", broken)
    code, out = run(capsys, "cover-gamma", "--m", "2", "--q1", "2", "--q2", "2")
    rep = json.loads(out)
    assert code == 1 and not rep["ok"] and rep["diagnostics"]
