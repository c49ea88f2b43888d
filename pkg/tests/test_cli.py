import io as _stdio
import json
import subprocess
import sys

import pytest

from graphtwistor import io
from graphtwistor.cli import run
from graphtwistor.gaussian import GaussianRational as Q


def call(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", _stdio.StringIO(stdin))
    capsys.readouterr()
    code = run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def cli(capsys, monkeypatch):
    monkeypatch.delenv("DT_SEED", raising=False)
    return lambda argv, stdin=None: call(capsys, monkeypatch, argv, stdin)


def test_cube_pipeline(cli):
    code, out, _ = cli(["generate", "cube"])
    assert code == 0
    code, rep, _ = cli(["verify", "--mode", "holomorphic"], out)
    assert code == 0
    doc = json.loads(rep)
    assert list(doc)[0] == "config" and doc["ok"] and not doc["exact"]


def test_figure1_exact_all_zero(cli):
    _, out, _ = cli(["generate", "figure1"])
    code, rep, _ = cli(["verify", "--mode", "holomorphic", "--exact"], out)
    assert code == 0
    doc = json.loads(rep)
    assert doc["exact"] and all(v == [0, 0] for v in doc["residuals"].values())


def test_perturbed_figure1_fails(cli):
    _, out, _ = cli(["generate", "figure1"])
    doc = json.loads(out)
    doc["values"]["a"] = [1, 1]
    code, rep, _ = cli(["verify", "--exact"], json.dumps(doc))
    assert code == 1
    assert json.loads(rep)["ok"] is False


def test_exact_on_irrational_input(cli):
    _, out, _ = cli(["generate", "cube"])
    code, _, err = cli(["verify", "--exact"], out)
    assert code == 2 and "values" in err


@pytest.mark.parametrize("text, where", [
    ('{"vertices": ["a", "b"], "edges": [{"u": "a"}]}', "edges[0]"),
    ('{"vertices": ["a", "b"], "edges": [', "line 1"),
    ('{"vertices": "ab", "edges": []}', "vertices"),
    ('{"vertices": ["a"], "edges": [], "values": {"a": [1, 2, 3]}}', "values.a"),
])
def test_malformed_documents(cli, text, where):
    code, _, err = cli(["verify"], text)
    assert code == 2 and where in err


def test_usage_errors(cli):
    assert cli(["frobnicate"])[0] == 2
    assert cli(["generate", "cube", "--format", "dot", "--tol", "-1"])[0] == 2
    _, out, _ = cli(["generate", "cube"])
    assert cli(["verify", "--format", "dot"], out)[0] == 2


def test_dodecahedron_budget_exhausted(cli):
    _, out, _ = cli(["generate", "dodecahedron"])
    code, rep, _ = cli(["solve", "--restarts", "10"], out)
    assert code == 3
    doc = json.loads(rep)
    assert doc["message"] == "none found within budget" and doc["solutions"] == []
    assert doc["config"]["solver"]["restarts"] == 10


def test_solve_cycle_and_round_trip(cli, tmp_path):
    _, out, _ = cli(["generate", "cycle", "--n", "4"])
    code, rep, _ = cli(["solve", "--seed", "7"], out)
    assert code == 0
    doc = json.loads(rep)
    assert doc["config"]["seed"] == 7 and doc["found"]
    g = io.read_graph_document(json.loads(out)).graph
    vals = io.read_graph_document({**json.loads(out), "values": doc["solutions"][0]["values"]}).values
    assert vals.graph == g


def test_solve_config_file(cli, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"restarts": 5, "max_iter": 100}')
    _, out, _ = cli(["generate", "cycle", "--n", "4"])
    code, rep, _ = cli(["solve", "--config", str(cfg)], out)
    assert code == 0
    assert json.loads(rep)["config"]["solver"]["max_iter"] == 100
    cfg.write_text('{"bogus": 1}')
    assert cli(["solve", "--config", str(cfg)], out)[0] == 2


def test_dt_seed(cli, monkeypatch):
    _, out, _ = cli(["generate", "cycle", "--n", "5"])
    monkeypatch.setenv("DT_SEED", "11")
    a = cli(["solve", "--restarts", "3"], out)[1]
    assert json.loads(a)["config"]["seed"] == 11
    assert a == cli(["solve", "--restarts", "3", "--seed", "11"], out)[1]
    monkeypatch.setenv("DT_SEED", "eleven")
    assert cli(["solve"], out)[0] == 2


VERBS = [
    (["generate", "figure1"], None),
    (["verify"], "cube"),
    (["solve", "--restarts", "20", "--seed", "3"], "cube"),
    (["solve", "--kind", "isotropic", "--restarts", "5"], "cube"),
    (["linegraph"], "figure1"),
    (["rootgraph"], "L"),
    (["dual"], "figure1"),
    (["spinor"], "cube_table"),
    (["evolve", "--steps", "1"], "cube_table"),
    (["color"], "hypercube"),
    (["export", "--format", "dot"], "figure1"),
]


@pytest.mark.parametrize("argv, source", VERBS)
def test_byte_identical_outputs(cli, argv, source):
    stdin = None
    if source == "L":
        stdin = cli(["linegraph"], cli(["generate", "figure1"])[1])[1]
    elif source is not None:
        stdin = cli(["generate", source] + (["--n", "3"] if source == "hypercube" else []))[1]
    first = cli(argv, stdin)
    second = cli(argv, stdin)
    assert first[0] in (0, 1, 3)
    assert first == second


def test_emitted_documents_round_trip(cli):
    for fam in ("figure1", "cube", "cube_table", "claw"):
        out = cli(["generate", fam])[1]
        data = io.read_graph_document(io.loads(out))
        again = {"config": json.loads(out)["config"]}
        again.update(io.graph_document(data.graph, data.values, data.coloring))
        assert io.dumps(again) == out


def test_floats_use_17_digits():
    assert io.format_float(0.1) == "0.10000000000000001"
    assert io.format_float(2.0) == "2.0"
    assert io.format_float(1e300) == "1.0000000000000001e+300"
    with pytest.raises(ValueError):
        io.format_float(float("nan"))
    assert io.dumps({"x": [1.0 / 3, 2]}) == '{\n  "x": [0.33333333333333331, 2]\n}\n'


def test_exact_values_round_trip():
    z = Q(3, -2) / 7
    enc = io.encode_value(z)
    assert enc == ["3/7", "-2/7"]
    assert io.decode_value(enc, "v") == z
    assert io.decode_value([1.5, 0], "v") == 1.5
    assert io.decode_value([2.0, 0], "v", exact=True) == Q(2)
    with pytest.raises(io.DocumentError):
        io.decode_value([0.1, 0], "v", exact=True)


def test_dot_output(cli):
    _, out, _ = cli(["generate", "cube_table", "--format", "dot"])
    assert out.startswith("// config:")
    assert "graph \"G\" {" in out and out.count(" -- ") == 12
    assert "colorscheme" in out


def test_linegraph_rootgraph(cli):
    _, out, _ = cli(["generate", "figure1"])
    code, line, _ = cli(["linegraph"], out)
    doc = json.loads(line)
    assert code == 0 and len(doc["vertices"]) == 12 and len(doc["edges"]) == 28
    code, root, _ = cli(["rootgraph"], line)
    rdoc = json.loads(root)
    assert code == 0 and rdoc["line_graph"] and len(rdoc["vertices"]) == 8
    _, claw, _ = cli(["generate", "claw"])
    code, rep, _ = cli(["rootgraph"], claw)
    assert code == 1 and json.loads(rep)["line_graph"] is False


def test_dual_and_inverse(cli):
    _, out, _ = cli(["generate", "figure1"])
    code, dual, _ = cli(["dual", "--exact"], out)
    doc = json.loads(dual)
    assert code == 0 and doc["clique_ok"] and len(doc["psi"]) == 12
    code, rep, _ = cli(["verify", "--mode", "clique", "--exact"], dual)
    assert code == 0
    code, back, _ = cli(["dual", "--inverse", "--exact"], dual)
    assert code == 0
    bdoc = json.loads(back)
    omega = io.read_form(bdoc, io.read_graph_document(bdoc).graph)
    data = io.read_graph_document(json.loads(out))
    for (u, v), w in omega.items():
        assert w == data.values[v] - data.values[u]
    doc["psi"][next(iter(doc["psi"]))] = [5, 0]
    assert cli(["dual", "--inverse"], json.dumps(doc))[0] == 1
    assert cli(["verify", "--mode", "clique"], json.dumps(doc))[0] == 1


def test_spinor_and_evolve(cli):
    _, out, _ = cli(["generate", "cube_table"])
    code, sp, _ = cli(["spinor"], out)
    doc = json.loads(sp)
    assert code == 0 and len(doc["xi"]) == 8
    for u in doc["U"].values():
        assert abs(sum(c * c for c in u) - 1) < 1e-12
    code, ev, _ = cli(["evolve", "--steps", "1"], out)
    doc = json.loads(ev)
    assert code == 0 and doc["trace"][1]["consistent"]
    assert doc["trace"][1]["holomorphic_residual"] < 1e-9
    _, fig2, _ = cli(["generate", "cube"])
    code, ev, _ = cli(["evolve"], fig2)
    assert code == 1 and not json.loads(ev)["trace"][-1]["consistent"]


def test_color(cli):
    _, out, _ = cli(["generate", "complete", "--n", "4"])
    code, col, _ = cli(["color"], out)
    assert code == 0 and all("color" in e for e in json.loads(col)["edges"])
    assert cli(["color", "--colors", "2"], out)[0] == 1


def test_lattice_rows(cli, tmp_path):
    rows = tmp_path / "rows.json"
    rows.write_text(json.dumps({"g0": [[0, 0], [1, 0], [2, 0], [3, 0]],
                                "g1": [[0, 1], [1, 1], [2, 1], [3, 1]]}))
    code, out, _ = cli(["generate", "lattice_window", "--dims", "4,4", "--rows", str(rows)])
    assert code == 0
    assert cli(["verify"], out)[0] in (0, 1)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "graphtwistor", "generate", "figure1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    gen = proc.stdout
    proc = subprocess.run([sys.executable, "-m", "graphtwistor", "verify", "--exact", "-"],
                          input=gen, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
