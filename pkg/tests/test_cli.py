import csv
import io
import json

import pytest
from click.testing import CliRunner

from streamgraph.bench import CSV_COLUMNS
from streamgraph.cli import main
from streamgraph.gadgets import build_gadget, verify_dichotomy
from streamgraph.graph import Graph, read_graph, write_graph


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def invoke(*args, env=None):
        return runner.invoke(main, [str(a) for a in args], env=env)

    return invoke


def write(path, g):
    write_graph(g, path)
    return str(path)


def test_generate_with_seed(run, tmp_path):
    res = run("generate", "--kind", "simple-al", "--n", 100, "--seed", 7)
    assert res.exit_code == 0, res.output
    out = json.loads(res.output)
    assert read_graph(tmp_path / out["graph"]).n == 203
    side = json.loads((tmp_path / out["sidecar"]).read_text())
    assert set(side) >= {"kind", "n", "input", "claim", "witnesses"}


def test_generate_explicit_inputs(run, tmp_path):
    res = run("generate", "--kind", "cycles", "--n", 3, "--x", "101", "--y", "010", "--out", "c.graph")
    assert res.exit_code == 0, res.output
    assert read_graph(tmp_path / "c.graph").n == 28
    res = run("generate", "--kind", "cycles-perm", "--n", 2, "--pi", "2,1", "--j", 1, "--out", "p.graph")
    assert res.exit_code == 0 and read_graph(tmp_path / "p.graph").n == 36


def test_generate_errors(run):
    assert run("generate", "--kind", "nope", "--n", 3, "--seed", 1).exit_code == 2
    assert run("generate", "--kind", "cycles", "--n", 3).exit_code == 2
    assert run("generate", "--kind", "cycles", "--n", 3, "--x", "10", "--y", "01").exit_code == 2
    assert run("generate", "--kind", "simple-al", "--n", 2, "--x", "00", "--y", "01").exit_code == 2


def test_generate_is_deterministic(run, tmp_path):
    run("generate", "--kind", "windmill", "--n", 20, "--seed", 3, "--out", "a.graph")
    run("generate", "--kind", "windmill", "--n", 20, "--seed", 3, "--out", "b.graph")
    assert (tmp_path / "a.graph").read_bytes() == (tmp_path / "b.graph").read_bytes()
    assert (tmp_path / "a.graph.json").read_text() == (tmp_path / "b.graph.json").read_text()


def test_round_trip_matches_dichotomy(run, tmp_path):
    for x, y in (("10010", "01001"), ("10010", "00010")):
        inst = build_gadget("simple-va", x=x, y=y)
        run("generate", "--kind", "simple-va", "--n", 5, "--x", x, "--y", y, "--out", "g.graph")
        (tmp_path / "X").write_text(" ".join(map(str, inst.witnesses["vertex_cover"])) + "\n")
        res = run("solve", "--algorithm", "diameter-vc", "--graph", "g.graph", "--modulator", "X")
        assert res.exit_code == 0, res.output
        assert json.loads(res.output)["diameter"] == verify_dichotomy(inst).value
        inst = build_gadget("cycles", x=x, y=y)
        run("generate", "--kind", "cycles", "--n", 5, "--x", x, "--y", y, "--out", "c.graph")
        res = run("solve", "--algorithm", "connectivity-unionfind", "--graph", "c.graph", "--model", "ea")
        assert json.loads(res.output)["connected"] == verify_dichotomy(inst).value


def test_solve_reports(run, tmp_path):
    p10 = write(tmp_path / "p10.g", Graph(10, [(i, i + 1) for i in range(1, 10)]))
    res = run("solve", "--problem", "connectivity", "--algorithm", "connectivity-unionfind", "--graph", p10)
    out = json.loads(res.output)
    assert out["connected"] is True and out["passes"] == 1
    assert {"peak_bits", "pass_budget", "bit_budget", "ms"} <= set(out)
    dis = write(tmp_path / "d.g", Graph(4, [(1, 2)]))
    (tmp_path / "X").write_text("1\n")
    res = run("solve", "--algorithm", "diameter-vc-onepass", "--graph", dis, "--modulator", "X")
    assert json.loads(res.output)["diameter"] == "infinite"


def test_solve_exit_codes(run, tmp_path):
    p = write(tmp_path / "p.g", Graph(5, [(i, i + 1) for i in range(1, 5)]))
    (tmp_path / "X").write_text("2 4\n")
    assert run("solve", "--algorithm", "diameter-vc", "--graph", p, "--modulator", "X", "--model", "ea").exit_code == 3
    env = {"STREAMGRAPH_BUDGET_C": "0.001"}
    assert run("solve", "--algorithm", "diameter-vc", "--graph", p, "--modulator", "X", env=env).exit_code == 4
    assert run("solve", "--algorithm", "diameter-vc", "--graph", "missing.g", "--modulator", "X").exit_code == 5
    assert run("solve", "--algorithm", "diameter-vc", "--graph", p).exit_code == 2
    assert run("solve", "--algorithm", "no-such", "--graph", p).exit_code == 2
    assert run("solve", "--problem", "connectivity", "--algorithm", "diameter-vc", "--graph", p).exit_code == 2
    (tmp_path / "bad.g").write_text("3 1\n3 1\n")
    assert run("solve", "--algorithm", "connectivity-unionfind", "--graph", "bad.g").exit_code == 5


def test_kernelize_command(run, tmp_path):
    k5 = write(tmp_path / "k5.g", Graph(5, [(u, v) for u in range(1, 6) for v in range(u + 1, 6)]))
    res = run("kernelize", "--graph", k5, "--k", 2)
    assert res.exit_code == 0 and json.loads(res.output)["verdict"] == "NO"
    empty = write(tmp_path / "e.g", Graph(3))
    res = run("kernelize", "--graph", empty, "--k", 0, "--out", "ker.g")
    prov = json.loads(res.output)
    assert prov["verdict"] == "KERNEL" and prov["k_prime"] == 0
    assert read_graph(tmp_path / "ker.g").n == 0
    assert json.loads((tmp_path / "ker.g.json").read_text()) == prov
    g = Graph(9, [(1, i) for i in range(2, 8)] + [(8, 9)])
    res = run("kernelize", "--graph", write(tmp_path / "s.g", g), "--k", 2, "--model", "ea")
    assert json.loads(res.output)["kernel_vertices"] <= 4


def test_bench(run, tmp_path):
    (tmp_path / "empty.json").write_text("[]")
    res = run("bench", "--suite", "empty.json")
    assert res.exit_code == 0 and res.output == ",".join(CSV_COLUMNS) + "\n"
    suite = [
        {"generator": "planted-vc", "sizes": [40], "k": [1, 2, 3], "algorithms": ["diameter-vc", "connectivity-vc"]},
        {"generator": "random-vc", "sizes": [30], "k": [2], "algorithms": ["kernelize"], "model": "EA"},
        {"generator": "planted-vc", "sizes": [10], "k": [2], "algorithms": ["diameter-cliques"], "ell": 1},
    ]
    (tmp_path / "s.json").write_text(json.dumps(suite))
    res = run("bench", "--suite", "s.json")
    assert res.exit_code == 0, res.output
    # planted-vc leaves up to n-k singleton cliques, more than ell = 1: that row fails and the run goes on
    assert res.output.rstrip().splitlines()[-1].split(",")[5].startswith("error: PartitionError")
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert len(rows) == 8
    assert list(rows[0]) == CSV_COLUMNS
    for r in rows:
        if r["algorithm"] == "diameter-vc":
            k = int(r["k"])
            assert int(r["passes"]) <= (2**k + k) * (2 * k + 2)
    assert rows[-1]["algorithm"] == "diameter-cliques"
