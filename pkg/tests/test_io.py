"""Tests for document parsing, canonical writing, and DOT export."""

import json
import pathlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddorient.io import (
    FormatError,
    export_dot,
    read_formula,
    read_instance,
    read_witness,
    write_formula,
    write_instance,
    write_witness,
)
from oddorient.p3sat import PlanarFormula
from oddorient.pdgraph import (
    GraphError,
    OrientationProblem,
    PartiallyDirectedGraph,
)
from oddorient.reduction import (
    GadgetRegistry,
    assemble,
    build_base_gadget,
    orientation_from_assignment,
)
from oddorient.samples import sample_planar_formula

DATA = pathlib.Path(__file__).parent / "data"


def _problem(vertices, edges, arcs=(), odd=()):
    g = PartiallyDirectedGraph.build(vertices, edges, arcs)
    return OrientationProblem.build(g, odd)


class TestInstanceRoundTrip:
    def test_artifact_with_all_sections(self):
        red = assemble(sample_planar_formula())
        blob = write_instance(
            red.problem,
            rotation=red.rotation,
            registry=red.registry,
            formula=red.formula,
        )
        bundle = read_instance(blob)
        assert bundle.problem == red.problem
        assert bundle.rotation == red.rotation
        assert bundle.registry == red.registry
        assert bundle.formula == red.formula

    def test_write_is_idempotent(self):
        p = _problem([0, 1, 2], [(0, 1)], [(1, 2)], [2])
        blob = write_instance(p)
        assert write_instance(read_instance(blob).problem) == blob

    def test_canonical_bytes_ignore_input_order(self):
        a = _problem([2, 0, 1], [(1, 0), (2, 1)], odd=[1, 0])
        b = _problem([0, 1, 2], [(1, 2), (0, 1)], odd=[0, 1])
        assert write_instance(a) == write_instance(b)

    def test_empty_document(self):
        p = _problem([], [])
        bundle = read_instance(write_instance(p))
        assert bundle.problem == p
        assert bundle.rotation is None
        assert bundle.registry is None

    def test_rejects_foreign_documents(self):
        with pytest.raises(FormatError):
            read_instance(b"{}")
        with pytest.raises(FormatError):
            read_instance(b"not json")
        doc = json.loads(write_instance(_problem([], [])))
        doc["version"] = 99
        with pytest.raises(FormatError):
            read_instance(json.dumps(doc))

    def test_rejects_duplicate_vertex_ids(self):
        doc = json.loads(write_instance(_problem([], [])))
        doc["vertices"] = [{"id": 0, "in_T": False}, {"id": 0, "in_T": True}]
        with pytest.raises(FormatError):
            read_instance(json.dumps(doc))


def _doc_with_links(edges, arcs):
    doc = json.loads(write_instance(_problem([], [])))
    ids = sorted({v for pair in list(edges) + list(arcs) for v in pair})
    doc["vertices"] = [{"id": v, "in_T": False} for v in ids]
    doc["edges"] = [list(e) for e in edges]
    doc["arcs"] = [list(a) for a in arcs]
    return json.dumps(doc)


class TestNormalizeMulti:
    def test_odd_bundle_collapses(self):
        b = read_instance(_doc_with_links([(0, 1)] * 3, []), normalize_multi=True)
        assert b.problem.graph.edges == frozenset({(0, 1)})

    def test_even_bundle_drops(self):
        b = read_instance(
            _doc_with_links([(0, 1), (1, 0), (1, 2)], []), normalize_multi=True
        )
        assert b.problem.graph.edges == frozenset({(1, 2)})

    def test_duplicates_rejected_without_flag(self):
        with pytest.raises(FormatError):
            read_instance(_doc_with_links([(0, 1), (0, 1)], []))

    def test_odd_arc_bundle_collapses(self):
        b = read_instance(_doc_with_links([], [(0, 1)] * 3), normalize_multi=True)
        assert b.problem.graph.arcs == frozenset({(0, 1)})

    def test_even_arc_bundle_rejected(self):
        with pytest.raises(FormatError):
            read_instance(_doc_with_links([], [(0, 1)] * 2), normalize_multi=True)

    def test_opposite_arcs_rejected(self):
        with pytest.raises(FormatError):
            read_instance(_doc_with_links([], [(0, 1), (1, 0)]), normalize_multi=True)

    def test_mixed_edge_and_arc_rejected(self):
        with pytest.raises(FormatError):
            read_instance(
                _doc_with_links([(0, 1)], [(1, 0)]), normalize_multi=True
            )

    def test_self_loop_rejected(self):
        with pytest.raises(FormatError):
            read_instance(_doc_with_links([(0, 0)], []), normalize_multi=True)


class TestWitness:
    def test_round_trip(self):
        red = assemble(sample_planar_formula())
        o = orientation_from_assignment(red, (False, False, True, False, False))
        blob = write_witness(o)
        assert read_witness(blob, red.problem) == o

    def test_fixed_arcs_must_match(self):
        p = _problem([0, 1], [(0, 1)])
        o_doc = write_witness(
            orientation_from_assignment(
                assemble(sample_planar_formula()),
                (False, False, True, False, False),
            )
        )
        with pytest.raises((FormatError, GraphError)):
            read_witness(o_doc, p)


class TestFormulaText:
    def test_dimacs_semantics(self):
        f = read_formula(b"p cnf 3 1\n1 -2 3 0\n")
        assert f.variable_count == 3
        assert f.clauses == (((0, True), (1, False), (2, True)),)

    def test_comments_and_blanks_ignored(self):
        f = read_formula(b"c intro\n\np cnf 3 1\nc mid\n1 -2 3 0\n")
        assert len(f.clauses) == 1

    def test_complementary_pair_rejected(self):
        with pytest.raises(FormatError, match="negation"):
            read_formula(b"p cnf 2 1\n1 -1 2 0\n")

    def test_repeated_variable_rejected(self):
        with pytest.raises(FormatError, match="repeated"):
            read_formula(b"p cnf 2 1\n1 1 2 0\n")

    @pytest.mark.parametrize("body", ["1 2 0", "1 2 3 4 0", "1 2 3"])
    def test_bad_clause_shapes_rejected(self, body):
        with pytest.raises(FormatError):
            read_formula(f"p cnf 4 1\n{body}\n".encode())

    def test_header_required_and_counted(self):
        with pytest.raises(FormatError):
            read_formula(b"1 2 3 0\n")
        with pytest.raises(FormatError):
            read_formula(b"p cnf 3 2\n1 2 3 0\n")
        with pytest.raises(FormatError):
            read_formula(b"p cnf 3 1\np cnf 3 1\n1 2 3 0\n")

    def test_round_trip_with_rotation(self):
        pf = sample_planar_formula()
        back = read_formula(write_formula(pf))
        assert isinstance(back, PlanarFormula)
        assert back.formula == pf.formula
        assert back.rotation == pf.rotation

    def test_round_trip_bare_formula(self):
        pf = sample_planar_formula()
        back = read_formula(write_formula(pf.formula))
        assert back == pf.formula

    def test_rotation_lines_must_cover_incidence(self):
        text = write_formula(sample_planar_formula()).decode()
        lines = [l for l in text.splitlines() if not l.startswith("r 9")]
        with pytest.raises(FormatError, match="cover"):
            read_formula("\n".join(lines).encode())

    def test_malformed_rotation_line(self):
        with pytest.raises(FormatError):
            read_formula(b"p cnf 3 1\n1 2 3 0\nr zero 1 2\n")


class TestExportDot:
    def test_golden_base_gadget(self):
        gad = build_base_gadget()
        reg = GadgetRegistry.build(
            [(v, f"M.{name}") for name, v in gad.ids.items()]
        )
        golden = (DATA / "base_gadget.dot").read_bytes()
        assert export_dot(gad.problem, registry=reg) == golden

    def test_single_arc(self):
        p = _problem([0, 1], [], [(0, 1)], odd=[1])
        text = export_dot(p).decode()
        assert " 0 -> 1;" in text
        assert text.count("fillcolor=black") == 1
        assert "dir=none" not in text

    def test_orientation_directs_everything(self):
        red = assemble(sample_planar_formula())
        o = orientation_from_assignment(red, (False, False, True, False, False))
        text = export_dot(red.problem, orientation=o).decode()
        assert "dir=none" not in text
        undirected = export_dot(red.problem).decode()
        assert undirected.count("dir=none") == len(red.problem.graph.edges)

    def test_clusters_per_gadget(self):
        red = assemble(sample_planar_formula())
        text = export_dot(red.problem, registry=red.registry).decode()
        assert text.count("subgraph") == 5 + 5   # one per variable and clause
        assert 'label="x0"' in text
        assert 'label="c4"' in text


@st.composite
def _problems(draw):
    n = draw(st.integers(min_value=0, max_value=7))
    vertices = list(range(n))
    pairs = [(u, v) for u in vertices for v in vertices if u < v]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs))) if pairs else set()
    rest = [p for p in pairs if p not in edges]
    arc_pairs = draw(st.sets(st.sampled_from(rest), max_size=len(rest))) if rest else set()
    arcs = {(v, u) if draw(st.booleans()) else (u, v) for u, v in arc_pairs}
    odd = draw(st.sets(st.sampled_from(vertices), max_size=n)) if n else set()
    return _problem(vertices, edges, arcs, odd)


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(_problems())
    def test_read_write_inverse(self, p):
        blob = write_instance(p)
        assert read_instance(blob).problem == p
        assert write_instance(read_instance(blob).problem) == blob
