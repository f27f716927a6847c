"""
End-to-end tests of the command-line interface: reports on stdout, exit
codes, reproducibility and the instance generator.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pytest

from graphs import dump_graph, load_graph, read_graph
from instances import complete, cycle
from main import main


@pytest.fixture
def write_graph(tmp_path):
    def write(graph, name="g.txt"):
        path = tmp_path / name
        path.write_text(dump_graph(graph), encoding="utf-8")
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None), out


# ============================================================================
# exact
# ============================================================================

@pytest.mark.parametrize("graph, expected", [(cycle(5), 5), (complete(4), 4)])
def test_exact_connected_triples(capsys, write_graph, graph, expected):
    code, report, _ = run(capsys, "exact", "-g", write_graph(graph), "--property", "connected", "-k", "3", "-q")
    assert code == 0
    assert report["count"] == expected
    assert report["labelled_count"] == expected * 6
    assert report["config"]["command"] == "exact"
    assert "wall_time_ms" not in report


def test_exact_with_pattern_file(capsys, write_graph, tmp_path):
    patterns = tmp_path / "tri.txt"
    patterns.write_text("3 1\n1-2,2-3,1-3\n", encoding="utf-8")
    code, report, _ = run(capsys, "exact", "-g", write_graph(complete(5)), "--pattern-file", str(patterns), "-q")
    assert code == 0
    assert report["k"] == 3
    assert report["count"] == 10


def test_timing_flag_adds_wall_time(capsys, write_graph):
    code, report, _ = run(capsys, "exact", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "2",
                          "--timing", "-q")
    assert code == 0
    assert report["wall_time_ms"] >= 0


def test_report_goes_to_output_file(capsys, write_graph, tmp_path):
    target = tmp_path / "report.json"
    code, report, _ = run(capsys, "exact", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "3",
                          "-o", str(target), "-q")
    assert code == 0 and report is None
    assert json.loads(target.read_text(encoding="utf-8"))["count"] == 5


# ============================================================================
# approx
# ============================================================================

def test_approx_is_close_and_reproducible(capsys, write_graph):
    path = write_graph(cycle(5))
    argv = ("approx", "-g", path, "--property", "connected", "-k", "3", "--seed", "7", "-q")
    code, report, first = run(capsys, *argv)
    assert code == 0
    assert abs(report["value"] - 5) <= 0.5
    assert report["estimate"]["divisor"] == 6
    assert report["seed"] == 7
    assert run(capsys, *argv)[2] == first


def test_approx_labelled(capsys, write_graph):
    code, report, _ = run(capsys, "approx", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "3",
                          "--labelled", "-q")
    assert code == 0
    assert abs(report["value"] - 30) <= 3
    assert report["estimate"]["divisor"] == 1


def test_approx_saves_the_family(capsys, write_graph, tmp_path):
    family = tmp_path / "family.json"
    code, _, _ = run(capsys, "approx", "-g", write_graph(cycle(6)), "--property", "connected", "-k", "3",
                     "--save-family", str(family), "-q")
    assert code == 0
    saved = json.loads(family.read_text(encoding="utf-8"))
    assert saved["n"] == 6 and saved["k"] == 3


def test_trial_rule_is_reported(capsys, write_graph):
    code, report, _ = run(capsys, "approx", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "3",
                          "--trial-rule", "multiplicity", "-q")
    assert code == 0
    details = report["estimate"]
    assert details["trial_rule"] == "multiplicity"
    assert details["multiplicity"] < details["sets"]
    assert report["config"]["trial_rule"] == "multiplicity"
    assert abs(report["value"] - 5) <= 0.5


def test_random_seed_is_recorded(capsys, write_graph):
    code, report, _ = run(capsys, "approx", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "3",
                          "--seed", "random", "--eps", "0.3", "-q")
    assert code == 0
    assert isinstance(report["config"]["seed"], int)
    assert report["seed"] == report["config"]["seed"]


# ============================================================================
# motif
# ============================================================================

def test_star_motif(capsys, tmp_path):
    graph = str(tmp_path / "star.txt")
    coloring = str(tmp_path / "star.col")
    assert run(capsys, "gen", "--named", "star", "-o", graph, "--coloring-output", coloring, "-q")[0] == 0

    code, report, _ = run(capsys, "motif", "-g", graph, "-c", coloring, "-m", "red:1,blue:2", "-q")
    assert code == 0
    assert report["value"] == 3 and report["method"] == "exact"
    assert report["motif"] == {"red": 1, "blue": 2}

    code, report, _ = run(capsys, "motif", "-g", graph, "-c", coloring, "-m", "red:1,blue:2", "--approximate",
                          "--eps", "0.25", "-q")
    assert code == 0
    assert abs(report["value"] - 3) <= 0.75
    assert report["estimate"]["trial_rule"] == "sets"
    assert report["method"] == "approximate"

    code, report, _ = run(capsys, "motif", "-g", graph, "-c", coloring, "-m", "blue:3", "-q")
    assert report["value"] == 0


# ============================================================================
# verify
# ============================================================================

def test_verify_passes(capsys):
    code, report, _ = run(capsys, "verify", "--k-max", "3", "--instances", "2", "-q")
    assert code == 0
    assert report["passed"] is True
    assert report["failed"] == 0
    assert report["checked"] == len(report["results"])


def test_verify_fails_with_injected_fault(capsys):
    code, report, _ = run(capsys, "verify", "--k-max", "3", "--instances", "2", "--inject-fault", "-q")
    assert code == 1
    assert report["passed"] is False
    assert report["failed"] == 1


@pytest.mark.slow
def test_verify_defaults(capsys):
    code, report, _ = run(capsys, "verify", "-q")
    assert code == 0 and report["passed"] is True


# ============================================================================
# gen
# ============================================================================

def test_gen_random_graph(capsys, tmp_path):
    path = str(tmp_path / "g.txt")
    code, report, _ = run(capsys, "gen", "--n", "8", "--p", "0.4", "--seed", "3", "-o", path, "-q")
    assert code == 0
    graph = read_graph(path)
    assert report["n"] == graph.n == 8
    assert report["m"] == graph.m
    again = str(tmp_path / "h.txt")
    run(capsys, "gen", "--n", "8", "--p", "0.4", "--seed", "3", "-o", again, "-q")
    assert load_graph(open(again, encoding="utf-8").read()) == graph


def test_gen_with_coloring(capsys, tmp_path):
    path = str(tmp_path / "g.txt")
    colors = str(tmp_path / "g.col")
    code, report, _ = run(capsys, "gen", "--n", "6", "--colors", "3", "-o", path, "--coloring-output", colors, "-q")
    assert code == 0
    assert report["coloring_path"] == colors
    assert len(open(colors, encoding="utf-8").read().splitlines()) == 6


# ============================================================================
# Exit codes
# ============================================================================

def test_missing_graph_file_is_a_usage_error(capsys, tmp_path):
    code = main(["exact", "-g", str(tmp_path / "absent.txt"), "--property", "connected", "-k", "2"])
    captured = capsys.readouterr()
    assert code == 2
    assert captured.out == ""
    assert "file not found" in captured.err


def test_malformed_graph_is_a_parse_error(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 1\n0 3\n", encoding="utf-8")
    code, report, _ = run(capsys, "exact", "-g", str(path), "--property", "connected", "-k", "2", "-q")
    assert code == 2 and report is None


def test_non_monotone_property_cannot_be_approximated(capsys, write_graph):
    code, _, _ = run(capsys, "approx", "-g", write_graph(cycle(5)), "--property", "edgeless", "-k", "2", "-q")
    assert code == 2


def test_non_symmetric_property_needs_labelled(capsys, write_graph):
    path = write_graph(cycle(5))
    assert run(capsys, "approx", "-g", path, "--property", "path", "-k", "3", "-q")[0] == 2
    code, report, _ = run(capsys, "approx", "-g", path, "--property", "path", "-k", "3", "--labelled", "-q")
    assert code == 0
    assert abs(report["value"] - 10) <= 1


def test_k_above_n_is_a_usage_error(capsys, write_graph):
    code, _, _ = run(capsys, "approx", "-g", write_graph(cycle(3)), "--property", "connected", "-k", "4", "-q")
    assert code == 2


def test_resource_cap_exit_code(capsys, write_graph):
    code, _, _ = run(capsys, "exact", "-g", write_graph(cycle(25)), "--property", "connected", "-k", "3", "-q")
    assert code == 3


def test_bad_epsilon_is_rejected(capsys, write_graph):
    code, _, _ = run(capsys, "approx", "-g", write_graph(cycle(5)), "--property", "connected", "-k", "3",
                     "--eps", "0", "-q")
    assert code == 2
