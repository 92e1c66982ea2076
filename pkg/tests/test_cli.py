"""End-to-end tests for the command-line interface."""

import json
import subprocess
import sys

import pytest

from oddorient.cli import main
from oddorient.io import write_instance
from oddorient.pdgraph import OrientationProblem, PartiallyDirectedGraph


def run(*argv):
    return main([str(a) for a in argv])


def _instance_file(tmp_path, name, vertices, edges, arcs=(), odd=()):
    g = PartiallyDirectedGraph.build(vertices, edges, arcs)
    p = OrientationProblem.build(g, odd)
    path = tmp_path / name
    path.write_bytes(write_instance(p))
    return path


class TestPipeline:
    def test_gen_reduce_solve_check(self, tmp_path):
        f = tmp_path / "f.cnf"
        art = tmp_path / "art.json"
        wit = tmp_path / "w.json"
        assert run("gen", "--seed", 3, "-n", 6, "-m", 7, "-o", f) == 0
        assert run("reduce", f, "-o", art) == 0
        assert run("solve", art, "--witness", wit) == 0
        assert run("solve", art, "--check-witness", wit) == 0

    def test_gen_deterministic(self, tmp_path):
        a, b = tmp_path / "a.cnf", tmp_path / "b.cnf"
        assert run("gen", "--seed", 11, "-n", 7, "-m", 9, "-o", a) == 0
        assert run("gen", "--seed", 11, "-n", 7, "-m", 9, "-o", b) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_gen_minimal(self, tmp_path):
        f = tmp_path / "tiny.cnf"
        assert run("gen", "--seed", 1, "-n", 3, "-m", 1, "-o", f) == 0
        assert run("verify", f) == 0

    def test_gen_infeasible_layout(self, tmp_path):
        assert run("gen", "--seed", 1, "-n", 3, "-m", 9,
                   "-o", tmp_path / "x.cnf") == 2


class TestSolve:
    def test_parity_infeasible(self, tmp_path, capsys):
        inst = _instance_file(tmp_path, "p.json", [0, 1, 2],
                              [(0, 1), (1, 2)], odd=[1])
        assert run("solve", inst) == 1
        assert "parity" in capsys.readouterr().out

    def test_tree_feasible_with_witness(self, tmp_path):
        inst = _instance_file(tmp_path, "t.json", [0, 1, 2],
                              [(0, 1), (1, 2)], odd=[0, 1])
        wit = tmp_path / "w.json"
        assert run("solve", inst, "--witness", wit) == 0
        assert run("solve", inst, "--check-witness", wit) == 0

    def test_missing_file(self, tmp_path, capsys):
        assert run("solve", tmp_path / "nope.json") == 2
        assert "error" in capsys.readouterr().err

    def test_json_report(self, tmp_path, capsys):
        inst = _instance_file(tmp_path, "t.json", [0, 1], [(0, 1)], odd=[0])
        assert run("solve", inst, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["status"] == "feasible"


class TestReduce:
    def test_requires_rotation_lines(self, tmp_path, capsys):
        f = tmp_path / "bare.cnf"
        f.write_bytes(b"p cnf 3 1\n1 2 3 0\n")
        assert run("reduce", f) == 2
        assert "embedding required" in capsys.readouterr().err

    def test_artifact_reloads(self, tmp_path, capsys):
        f = tmp_path / "f.cnf"
        art = tmp_path / "art.json"
        run("gen", "--seed", 5, "-n", 6, "-m", 7, "-o", f)
        assert run("reduce", f, "-o", art, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["structural"] == "ok"
        assert run("solve", art) == 0


class TestVerify:
    def test_batch_agreement(self, capsys):
        assert run("verify", "--batch", 3, "--seed", 40, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["agree"] == "3/3"

    def test_needs_input(self):
        assert run("verify") == 2


class TestGadget:
    def test_base_counts(self, capsys):
        assert run("gadget", "base", "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["orientations"] == 2
        assert report["explored"] == 2 ** 12

    def test_variable_ring(self, capsys):
        assert run("gadget", "variable", "--copies", 2, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["orientations"] == 2
        assert report["boundaries"] == "uniform and opposite"

    def test_variable_over_budget(self):
        assert run("gadget", "variable", "--copies", 3) == 2

    def test_clause_classes(self, capsys):
        assert run("gadget", "clause", "--polarities", "++-", "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["a_0"] == "2 completions, 0 acyclic"
        for key in ("a_1", "a_2", "a_3"):
            assert report[key] == "2 completions, 2 acyclic"

    def test_clause_single_class(self, capsys):
        assert run("gadget", "clause", "--boundary-class", 0, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["a_0"] == "2 completions, 0 acyclic"
        assert "a_1" not in report

    def test_bad_polarities(self):
        assert run("gadget", "clause", "--polarities", "+*-") == 2

    def test_gadget_file_output(self, tmp_path):
        out = tmp_path / "base.json"
        assert run("gadget", "base", "-o", out) == 0
        from oddorient.io import read_instance

        bundle = read_instance(out.read_bytes())
        # ten core vertices plus the four boundary stubs
        assert len(bundle.problem.graph.vertices) == 14
        assert bundle.registry is not None
        assert bundle.registry.to_vertex["M.u"] in bundle.problem.graph.vertices


class TestExportDot:
    def test_oriented_export(self, tmp_path):
        f, art = tmp_path / "f.cnf", tmp_path / "a.json"
        wit, dot = tmp_path / "w.json", tmp_path / "a.dot"
        run("gen", "--seed", 7, "-n", 6, "-m", 7, "-o", f)
        run("reduce", f, "-o", art)
        run("solve", art, "--witness", wit)
        assert run("export-dot", art, "--witness", wit, "-o", dot) == 0
        text = dot.read_text()
        assert "dir=none" not in text
        assert "subgraph" in text

    def test_undirected_export(self, tmp_path):
        inst = _instance_file(tmp_path, "i.json", [0, 1, 2],
                              [(0, 1)], [(1, 2)], odd=[2])
        dot = tmp_path / "i.dot"
        assert run("export-dot", inst, "-o", dot) == 0
        text = dot.read_text()
        assert " 0 -> 1 [dir=none];" in text
        assert " 1 -> 2;" in text


class TestTransforms:
    def test_normalize_then_solve(self, tmp_path, capsys):
        inst = _instance_file(
            tmp_path, "six.json", range(6),
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)], odd=[1, 4],
        )
        norm = tmp_path / "norm.json"
        assert run("normalize", inst, "-o", norm, "--json") == 0
        report = json.loads(capsys.readouterr().out)
        assert report["contractions"] == 2
        assert report["marked"] == 0
        assert run("solve", norm) == 0

    def test_normalize_rejects_parallel_collision(self, tmp_path):
        inst = _instance_file(
            tmp_path, "cyc.json", [0, 1, 2, 3],
            [(0, 1), (1, 2), (2, 3), (0, 3)], odd=[0, 2],
        )
        assert run("normalize", inst, "-o", tmp_path / "n.json") == 2

    def test_apex_default_and_variant(self, tmp_path):
        inst = _instance_file(
            tmp_path, "cyc.json", [0, 1, 2, 3],
            [(0, 1), (1, 2), (2, 3), (0, 3)], odd=[0, 2],
        )
        assert run("apex", inst) in (0, 1)
        assert run("apex", inst, "--variant") == 0

    def test_apex_rejects_fixed_arcs(self, tmp_path):
        inst = _instance_file(tmp_path, "a.json", [0, 1], [], [(0, 1)])
        assert run("apex", inst) == 2


class TestEntryPoint:
    def test_module_invocation(self, tmp_path):
        out = subprocess.run(
            [sys.executable, "-m", "oddorient.cli", "gadget", "base", "--json"],
            capture_output=True, text=True, timeout=120,
        )
        assert out.returncode == 0
        assert json.loads(out.stdout)["orientations"] == 2
