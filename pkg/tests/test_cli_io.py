import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p6mwis.cli import run_cli
from p6mwis.fileio import InstanceError, dumps, emit_instance, envelope, parse_instance
from p6mwis.generators import GenSpec, generate
from p6mwis.result import SolveResult
from p6mwis.solvers import solve_p6_banner

from oracles import random_graph

K2 = "p mwis 2 1\nn 1 5\nn 2 9\ne 1 2\n"
C5 = "p mwis 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
BANNER = "p mwis 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 1\ne 1 5\n"


def test_parse_k2():
    G = parse_instance(K2.encode())
    assert G.n == 2 and G.m == 1 and G.weights == (5, 9) and G.labels == (1, 2)


def test_default_weights():
    G = parse_instance("p mwis 3 0\n")
    assert G.n == 3 and G.m == 0 and G.weights == (1, 1, 1)


@pytest.mark.parametrize(
    "text, line",
    [
        ("p mwis 3 1\ne 1 4\n", 2),
        ("c hi\np mwis 3 0\nn 2 -1\n", 3),
        ("e 1 2\n", 1),
        ("p mwis 3 0\np mwis 3 0\n", 2),
        ("p mwis 3 1\ne 2 2\n", 2),
        ("p mwis 3 0\nx 1 2\n", 2),
        ("p mwis 3 0\nn 1 2\nn 1 3\n", 3),
        ("p mwis 3 0\nn one 2\n", 2),
    ],
)
def test_parse_errors_name_the_line(text, line):
    with pytest.raises(InstanceError) as info:
        parse_instance(text)
    assert info.value.lineno == line
    assert f"line {line}" in str(info.value)


def test_parse_whole_file_errors():
    with pytest.raises(InstanceError):
        parse_instance("c nothing\n")
    with pytest.raises(InstanceError):
        parse_instance("p mwis 3 2\ne 1 2\n")
    # a repeated edge is merged, so the count must match the distinct edges
    assert parse_instance("p mwis 3 1\ne 1 2\ne 2 1\n").m == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 14))
def test_round_trip(seed, n):
    G = random_graph(n, 0.4, seed)
    H = parse_instance(emit_instance(G, ["round trip"]))
    assert H.adj == G.adj and H.weights == G.weights
    assert H.labels == tuple(range(1, n + 1))


def test_envelope_refuses_invalid_results():
    G = parse_instance(K2)
    with pytest.raises(AssertionError):
        envelope(G, SolveResult(frozenset({1, 2}), 14))
    env = envelope(G, solve_p6_banner(G))
    assert env["weight"] == 9 and env["chosen"] == [2]
    assert "wall_time" not in env


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("k2", K2), ("c5", C5), ("banner", BANNER), ("bad", "p mwis 2 0\ne 1 3\n")):
        p = tmp_path / f"{name}.mwis"
        p.write_text(text)
        out[name] = str(p)
    return out


def test_cli_solve(files, capsys):
    assert run_cli(["solve", files["k2"]]) == 0
    out = capsys.readouterr().out
    assert "weight 9" in out and "chosen 2" in out
    assert run_cli(["solve", files["k2"], "--json"]) == 0
    env = json.loads(capsys.readouterr().out)
    assert env["weight"] == 9 and env["chosen"] == [2]


def test_cli_solve_exit_codes(files, capsys):
    assert run_cli(["solve", files["banner"]]) == 2
    assert run_cli(["solve", files["banner"], "--mode", "permissive"]) == 0
    assert run_cli(["solve", files["bad"]]) == 65
    assert run_cli(["solve", "/nonexistent/file.mwis"]) == 65
    assert run_cli(["solve"]) == 64
    assert run_cli(["frobnicate"]) == 64
    assert run_cli(["solve", files["k2"], "--layer", "l7"]) == 64
    capsys.readouterr()


def test_cli_check(files, capsys):
    assert run_cli(["check", files["c5"], "--patterns", "p6,banner"]) == 0
    assert run_cli(["check", files["banner"], "--patterns", "p6,banner", "--json"]) == 1
    out = capsys.readouterr().out
    assert '"banner"' in out


def test_cli_decompose(files, capsys):
    assert run_cli(["decompose", files["c5"], "--what", "modular", "--json"]) == 0
    tree = json.loads(capsys.readouterr().out)
    assert tree["kind"] == "prime"
    assert run_cli(["decompose", files["k2"], "--what", "atoms", "--json"]) == 0
    atoms = json.loads(capsys.readouterr().out)
    assert atoms["components"][0]["atoms"][0]["vertices"] == [1, 2]


def test_cli_gen_and_solve(tmp_path, capsys):
    out = tmp_path / "g.mwis"
    assert run_cli(["gen", "--family", "p6-banner", "-n", "12", "--seed", "3", "-o", str(out)]) == 0
    G = parse_instance(out.read_text())
    ref = generate(GenSpec("p6-banner", 12, 0.3, 3))
    assert G.adj == ref.adj and G.weights == ref.weights
    assert run_cli(["solve", str(out), "--json"]) == 0
    capsys.readouterr()


def test_cli_fuzz(tmp_path, capsys):
    assert run_cli(["fuzz", "--layer", "l4", "--trials", "20", "--nmax", "12", "--seed", "7",
                    "--out", str(tmp_path / "cx.mwis")]) == 0
    assert "agree" in capsys.readouterr().out
    assert not (tmp_path / "cx.mwis").exists()


def test_cli_audit(files, capsys):
    assert run_cli(["audit", files["c5"]]) == 0
    out = capsys.readouterr().out
    assert "prime: True" in out


def test_cli_bench(capsys):
    assert run_cli(["bench", "--family", "p6-banner", "--sizes", "8,12", "--seed", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3 and lines[0].split()[:2] == ["n", "m"]


def test_cli_json_is_deterministic(files, capsys):
    outs = []
    for _ in range(3):
        assert run_cli(["solve", files["c5"], "--json"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]
    assert outs[0] == dumps(json.loads(outs[0])) + "\n"
