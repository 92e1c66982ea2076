"""Tests for the gadget builders, the assembly, and the semantic bridge."""

import itertools

import pytest

from oddorient import solver
from oddorient.p3sat import generate, sat_oracle, validate_embedding
from oddorient.pdgraph import (
    GraphError,
    Orientation,
    is_acyclic,
    is_T_odd_on,
)
from oddorient.reduction import (
    CORE_EDGES,
    CORE_NAMES,
    GadgetError,
    GadgetRegistry,
    assemble,
    assignment_from_orientation,
    attach_stubs,
    build_base_gadget,
    build_clause_gadget,
    build_variable_gadget,
    clause_boundary_class,
    orientation_from_assignment,
    structural_check,
    verify_equivalence,
)
from oddorient.samples import sample_planar_formula, unsat_samples


class TestRegistry:
    def test_round_trip(self):
        reg = GadgetRegistry.build([(0, "x0.k0.u"), (1, "x0.k0.a")])
        assert reg.label(0) == "x0.k0.u"
        assert reg.vertex("x0.k0.a") == 1
        assert reg.bijective

    def test_collisions_rejected(self):
        with pytest.raises(GadgetError):
            GadgetRegistry.build([(0, "a"), (0, "b")])
        with pytest.raises(GadgetError):
            GadgetRegistry.build([(0, "a"), (1, "a")])


class TestBaseGadget:
    def test_shape(self):
        g = build_base_gadget()
        graph = g.problem.graph
        assert len(graph.vertices) == 10
        assert len(graph.edges) == 8
        assert len(graph.arcs) == 4
        # every vertex except uh carries the parity constraint
        assert len(g.problem.odd_set) == 9
        assert g.ids["uh"] not in g.problem.odd_set

    def test_two_orientations_mutual_flips(self):
        g = build_base_gadget()
        boundary = [g.ids[x] for x in ("u", "uh", "s", "t")]
        prob, _ = attach_stubs(g.problem, boundary)
        rep = solver.enumerate(prob, scope=set(g.ids.values()))
        assert rep.total_valid == 2
        first, second = rep.witnesses
        core = {
            (g.ids[x], g.ids[y]) for x, y in CORE_EDGES
        } | {(g.ids[y], g.ids[x]) for x, y in CORE_EDGES}
        flipped = {(b, a) for a, b in first.arcs if (a, b) in core}
        assert flipped == {d for d in second.arcs if d in core}

    def test_stub_at_missing_vertex(self):
        g = build_base_gadget()
        with pytest.raises(GraphError):
            attach_stubs(g.problem, [99])


class TestVariableGadget:
    @pytest.mark.parametrize("copies", [1, 2])
    def test_two_modes_uniform_opposite(self, copies):
        gad = build_variable_gadget(copies)
        stubs = [v for pair in gad.stub_pairs for v in pair]
        prob, outside = attach_stubs(gad.problem, stubs)
        scope = {v for c in gad.ids for v in c.values()}
        rep = solver.enumerate(prob, scope=scope)
        assert rep.total_valid == 2
        patterns = set()
        for w in rep.witnesses:
            outward = [w.directs(s, o) for s, o in zip(stubs, outside)]
            assert len(set(outward)) == 1   # uniform boundary
            patterns.add(outward[0])
        assert patterns == {True, False}    # and opposite between the two

    def test_counts(self):
        gad = build_variable_gadget(4)
        graph = gad.problem.graph
        assert len(graph.vertices) == 40
        assert len(graph.edges) == 8 * 4 + 4     # cores plus ring links
        assert len(graph.arcs) == 16
        assert len(gad.link_edges) == 4

    def test_zero_copies_rejected(self):
        with pytest.raises(GadgetError):
            build_variable_gadget(0)


class TestClauseGadget:
    def test_shape_and_marks(self):
        gad = build_clause_gadget((True, False, True))
        graph = gad.problem.graph
        assert len(graph.vertices) == 12
        assert len(graph.edges) == 12
        assert not graph.arcs
        assert set(gad.hexagon) <= gad.problem.odd_set
        v2, vh2 = gad.port_pairs[1]
        assert v2 not in gad.problem.odd_set
        assert vh2 not in gad.problem.odd_set
        v1, vh1 = gad.port_pairs[0]
        assert {v1, vh1} <= gad.problem.odd_set

    def test_bad_arity(self):
        with pytest.raises(GadgetError):
            build_clause_gadget((True, False))


class TestAssemble:
    def test_sample_counts(self):
        red = assemble(sample_planar_formula())
        graph = red.problem.graph
        copies = sum(red.degree_of_variable(i) for i in range(5))
        assert copies == 15
        assert len(graph.vertices) == 10 * copies + 12 * 5
        assert len(graph.edges) == 9 * copies + 18 * 5
        assert len(graph.arcs) == 4 * copies
        assert len(red.problem.odd_set) == 185

    def test_sample_structural(self):
        red = assemble(sample_planar_formula())
        rep = structural_check(red)
        assert rep.ok, rep.problems
        assert rep.faces == 77

    def test_slots_match_formula(self):
        red = assemble(sample_planar_formula())
        for j, clause in enumerate(red.formula.clauses):
            got = sorted((var, pol) for var, _, pol in red.slots[j])
            assert got == sorted(clause)

    def test_generated_corpus_structural(self):
        for seed, n, m in [(3, 6, 7), (11, 7, 9), (19, 8, 11), (27, 6, 8)]:
            red = assemble(generate(seed, n, m))
            rep = structural_check(red)
            assert rep.ok, (seed, rep.problems)

    def test_unsat_samples_structural(self):
        for pf in unsat_samples():
            rep = structural_check(assemble(pf))
            assert rep.ok, rep.problems


def _satisfying_assignments(formula):
    n = formula.variable_count
    for bits in itertools.product([False, True], repeat=n):
        if all(
            any(bits[v] == pol for v, pol in clause)
            for clause in formula.clauses
        ):
            yield bits


class TestOrientationBridge:
    def test_round_trip_all_models(self):
        red = assemble(sample_planar_formula())
        models = list(_satisfying_assignments(red.formula))
        assert models
        for bits in models:
            o = orientation_from_assignment(red, bits)
            assert is_T_odd_on(red.problem, o)
            assert is_acyclic(o.arcs).acyclic
            assert assignment_from_orientation(red, o) == tuple(bits)

    def test_boundary_class_counts_satisfied_literals(self):
        red = assemble(sample_planar_formula())
        for bits in _satisfying_assignments(red.formula):
            o = orientation_from_assignment(red, bits)
            for j, clause in enumerate(red.formula.clauses):
                satisfied = sum(bits[v] == pol for v, pol in clause)
                assert clause_boundary_class(red, o, j) == satisfied

    def test_unsatisfied_assignment_rejected(self):
        red = assemble(sample_planar_formula())
        with pytest.raises(GadgetError):
            orientation_from_assignment(red, (False,) * 5)

    def test_flipped_connector_rejected(self):
        red = assemble(sample_planar_formula())
        bits = next(_satisfying_assignments(red.formula))
        o = orientation_from_assignment(red, bits)
        u = red.variable_ids[0][0]["u"]
        port = next(
            w for w in red.problem.graph.adjacency()[u]
            if red.registry.label(w).startswith("c")
        )
        directed = set(o.arcs) - red.problem.graph.arcs
        swap = (u, port) if (u, port) in directed else (port, u)
        directed.remove(swap)
        directed.add((swap[1], swap[0]))
        broken = Orientation.of(red.problem.graph, directed)
        with pytest.raises(GadgetError):
            assignment_from_orientation(red, broken)

    def test_split_port_pair_rejected(self):
        red = assemble(sample_planar_formula())
        bits = next(_satisfying_assignments(red.formula))
        o = orientation_from_assignment(red, bits)
        ids = red.clause_ids[0]
        v1, w1 = ids["v1"], ids["w1"]
        directed = set(o.arcs) - red.problem.graph.arcs
        swap = (v1, w1) if (v1, w1) in directed else (w1, v1)
        directed.remove(swap)
        directed.add((swap[1], swap[0]))
        broken = Orientation.of(red.problem.graph, directed)
        with pytest.raises(GadgetError):
            clause_boundary_class(red, broken, 0)


class TestVerifyEquivalence:
    def test_sample_agrees_sat(self):
        out = verify_equivalence(sample_planar_formula())
        assert out["agree"]
        assert out["sat"] is True
        assert out["orientation_feasible"] is True
        assert out["assignment"] is not None

    def test_unsat_samples_agree(self):
        for pf in unsat_samples():
            assert sat_oracle(pf.formula) is None
            out = verify_equivalence(pf)
            assert out["agree"]
            assert out["sat"] is False
            assert out["orientation_feasible"] is False

    def test_generated_instances_agree(self):
        for seed, n, m in [(5, 6, 7), (7, 7, 9), (13, 8, 11)]:
            out = verify_equivalence(generate(seed, n, m))
            assert out["agree"], (seed, n, m)


class TestEmbeddingOfArtifact:
    def test_rotation_covers_artifact(self):
        red = assemble(sample_planar_formula())
        rep = validate_embedding(red.problem.graph, red.rotation)
        assert rep.valid
        assert len(rep.components) == 1
