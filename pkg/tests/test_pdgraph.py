"""Graph type invariants, boundaries, acyclicity, and parity checks."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddorient.pdgraph import (
    GraphError,
    Orientation,
    OrientationProblem,
    PartiallyDirectedGraph,
    boundary,
    canonical_edge,
    extends,
    flip_all,
    gamma_subgraph,
    is_T_odd_on,
    is_acyclic,
    is_uniform,
    parity_feasible,
    restrict,
    reverse_graph,
    validate,
)


def small_graph():
    return PartiallyDirectedGraph.build(
        vertices=[1, 2, 3, 4],
        edges=[(1, 2), (2, 3)],
        arcs=[(4, 1)],
    )


class TestConstruction:
    def test_build_canonicalizes_edges(self):
        g = PartiallyDirectedGraph.build([1, 2], edges=[(2, 1)])
        assert g.edges == frozenset({(1, 2)})

    def test_loop_rejected(self):
        with pytest.raises(GraphError, match="loop"):
            PartiallyDirectedGraph.build([1], edges=[(1, 1)])
        with pytest.raises(GraphError, match="loop"):
            PartiallyDirectedGraph.build([1], arcs=[(1, 1)])

    def test_parallel_links_rejected(self):
        # two copies of the same edge collapse in a frozenset, so the
        # interesting parallels are edge+arc and arc+reversed-arc
        with pytest.raises(GraphError, match="parallel"):
            PartiallyDirectedGraph.build([1, 2], edges=[(1, 2)], arcs=[(1, 2)])
        with pytest.raises(GraphError, match="parallel"):
            PartiallyDirectedGraph.build([1, 2], edges=[(1, 2)], arcs=[(2, 1)])
        with pytest.raises(GraphError, match="parallel"):
            PartiallyDirectedGraph.build([1, 2], arcs=[(1, 2), (2, 1)])

    def test_dangling_endpoint_rejected(self):
        with pytest.raises(GraphError, match="dangling"):
            PartiallyDirectedGraph.build([1], edges=[(1, 2)])

    def test_validate_reports_without_raising(self):
        raw = PartiallyDirectedGraph(
            vertices=frozenset({1}),
            edges=frozenset({(1, 1), (1, 2)}),
            arcs=frozenset(),
        )
        problems = validate(raw)
        assert any("loop" in p for p in problems)
        assert any("dangling" in p for p in problems)

    def test_degree_counts_both_kinds(self):
        g = small_graph()
        assert g.degree(1) == 2   # edge 1-2 and arc 4->1
        assert g.degree(2) == 2
        assert g.degree(4) == 1
        assert g.fixed_in_degree(1) == 1
        assert g.fixed_in_degree(4) == 0


class TestOrientation:
    def test_of_requires_total_cover(self):
        g = small_graph()
        with pytest.raises(GraphError, match="left over"):
            Orientation.of(g, [(1, 2)])

    def test_of_rejects_unknown_direction(self):
        g = small_graph()
        with pytest.raises(GraphError, match="does not match"):
            Orientation.of(g, [(1, 2), (1, 3)])

    def test_of_rejects_double_direction(self):
        g = small_graph()
        with pytest.raises(GraphError, match="twice"):
            Orientation.of(g, [(1, 2), (2, 1), (2, 3)])

    def test_extends(self):
        g = small_graph()
        o = Orientation.of(g, [(2, 1), (2, 3)])
        assert extends(g, o)
        assert o.directs(2, 1) and not o.directs(1, 2)
        assert o.directs(4, 1)
        # dropping the fixed arc breaks extension
        assert not extends(g, Orientation(arcs=o.arcs - {(4, 1)}))

    def test_in_degrees(self):
        g = small_graph()
        o = Orientation.of(g, [(2, 1), (2, 3)])
        assert o.in_degrees(g.vertices) == {1: 2, 2: 0, 3: 1, 4: 0}


class TestBoundary:
    def test_unoriented_boundary(self):
        g = small_graph()
        view = boundary(g, [1])
        assert view.edge_boundary == frozenset({(1, 2)})
        assert view.in_arcs == frozenset({(4, 1)})
        assert view.out_arcs == frozenset()
        assert not is_uniform(view)

    def test_oriented_boundary_uniform(self):
        g = small_graph()
        o = Orientation.of(g, [(2, 1), (2, 3)])
        view = boundary(g, [1], o)
        assert view.edge_boundary == frozenset()
        assert view.in_arcs == frozenset({(2, 1), (4, 1)})
        assert is_uniform(view)

    def test_oriented_boundary_mixed(self):
        g = small_graph()
        o = Orientation.of(g, [(1, 2), (2, 3)])
        view = boundary(g, [1], o)
        assert view.out_arcs == frozenset({(1, 2)})
        assert view.in_arcs == frozenset({(4, 1)})
        assert not is_uniform(view)

    def test_gamma_subgraph_keeps_external_endpoints(self):
        g = small_graph()
        sub = gamma_subgraph(g, [1])
        assert sub.vertices == frozenset({1, 2, 4})
        assert sub.edges == frozenset({(1, 2)})
        assert sub.arcs == frozenset({(4, 1)})

    def test_gamma_subgraph_keeps_isolated_core(self):
        g = PartiallyDirectedGraph.build([1, 2, 3], edges=[(2, 3)])
        sub = gamma_subgraph(g, [1])
        assert sub.vertices == frozenset({1})
        assert not sub.edges and not sub.arcs


class TestAcyclicity:
    def test_acyclic_order_is_deterministic_and_valid(self):
        rep = is_acyclic([(3, 1), (3, 2), (1, 2)])
        assert rep.acyclic
        assert rep.order == (3, 1, 2)

    def test_cycle_witness(self):
        rep = is_acyclic([(5, 6), (1, 2), (2, 3), (3, 1)])
        assert not rep.acyclic
        assert rep.cycle == (1, 2, 3)

    def test_cycle_witness_is_a_real_cycle(self):
        arcs = [(1, 2), (2, 3), (3, 4), (4, 2), (4, 5)]
        rep = is_acyclic(arcs)
        assert not rep.acyclic
        cyc = rep.cycle
        arcset = set(arcs)
        for i, v in enumerate(cyc):
            assert (v, cyc[(i + 1) % len(cyc)]) in arcset

    def test_empty_is_acyclic(self):
        assert is_acyclic([]).acyclic


class TestParity:
    def test_is_T_odd_on_full_scope(self):
        g = small_graph()
        prob = OrientationProblem.build(g, [1, 3])
        o = Orientation.of(g, [(2, 1), (2, 3)])
        # in-degrees: 1:2, 2:0, 3:1, 4:0 -> odd exactly at 3
        assert not is_T_odd_on(prob, o)
        assert is_T_odd_on(prob, o, scope=[2, 3, 4])

    def test_parity_feasible_counts_all_links(self):
        g = small_graph()   # 2 edges + 1 arc
        assert parity_feasible(OrientationProblem.build(g, [1]))
        assert not parity_feasible(OrientationProblem.build(g, [1, 2]))

    def test_odd_set_must_be_vertices(self):
        g = small_graph()
        with pytest.raises(GraphError, match="non-vertices"):
            OrientationProblem.build(g, [9])


class TestTransformsAndRestriction:
    def test_flip_all_reverses(self):
        o = Orientation(arcs=frozenset({(1, 2), (3, 1)}))
        assert flip_all(o).arcs == frozenset({(2, 1), (1, 3)})

    def test_reverse_graph(self):
        g = small_graph()
        r = reverse_graph(g)
        assert r.arcs == frozenset({(1, 4)})
        assert r.edges == g.edges

    def test_restrict_matches_either_direction(self):
        g = small_graph()
        o = Orientation.of(g, [(2, 1), (2, 3)])
        assert restrict(o, [(1, 2)]) == frozenset({(2, 1)})
        assert restrict(o, [(4, 1)]) == frozenset({(4, 1)})
        with pytest.raises(GraphError, match="not covered"):
            restrict(o, [(1, 3)])


# -- property tests ------------------------------------------------------------


def graphs(max_n=8):
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_n))
        verts = list(range(n))
        pairs = [(u, v) for u in verts for v in verts if u < v]
        chosen = draw(st.sets(st.sampled_from(pairs), max_size=len(pairs)) if pairs else st.just(set()))
        as_arc = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
        rev = draw(st.lists(st.booleans(), min_size=len(chosen), max_size=len(chosen)))
        edges, arcs = [], []
        for (u, v), is_arc, flip in zip(sorted(chosen), as_arc, rev):
            if is_arc:
                arcs.append((v, u) if flip else (u, v))
            else:
                edges.append((u, v))
        return PartiallyDirectedGraph.build(verts, edges, arcs)

    return build()


def orientations_of(g):
    picks = st.tuples(*(st.sampled_from([(u, v), (v, u)]) for u, v in sorted(g.edges)))
    return picks.map(lambda chosen: Orientation.of(g, list(chosen)))


@st.composite
def oriented_instances(draw):
    g = draw(graphs())
    o = draw(orientations_of(g))
    return g, o


@given(oriented_instances())
@settings(max_examples=120, deadline=None)
def test_total_in_degree_equals_link_count(inst):
    g, o = inst
    assert sum(o.in_degrees(g.vertices).values()) == len(g.edges) + len(g.arcs)


@given(oriented_instances())
@settings(max_examples=120, deadline=None)
def test_realized_odd_set_is_parity_feasible(inst):
    g, o = inst
    degs = o.in_degrees(g.vertices)
    odd = frozenset(v for v, d in degs.items() if d % 2 == 1)
    prob = OrientationProblem.build(g, odd)
    assert is_T_odd_on(prob, o)
    assert parity_feasible(prob)


@given(oriented_instances())
@settings(max_examples=120, deadline=None)
def test_flip_all_preserves_acyclicity(inst):
    g, o = inst
    assert is_acyclic(o.arcs).acyclic == is_acyclic(flip_all(o).arcs).acyclic


@given(oriented_instances(), st.data())
@settings(max_examples=120, deadline=None)
def test_boundary_partitions_crossing_links(inst, data):
    g, o = inst
    verts = sorted(g.vertices)
    inside = data.draw(st.sets(st.sampled_from(verts), max_size=len(verts)))
    view = boundary(g, inside, o)
    crossing = {
        canonical_edge(u, v)
        for u, v in g.links()
        if (u in inside) != (v in inside)
    }
    classified = {canonical_edge(u, v) for u, v in view.out_arcs | view.in_arcs}
    assert classified == crossing
    assert not view.edge_boundary


@given(oriented_instances())
@settings(max_examples=120, deadline=None)
def test_topo_order_respects_every_arc(inst):
    _, o = inst
    rep = is_acyclic(o.arcs)
    if rep.acyclic:
        pos = {v: i for i, v in enumerate(rep.order)}
        for t, h in o.arcs:
            assert pos[t] < pos[h]
    else:
        cyc = rep.cycle
        for i, v in enumerate(cyc):
            assert (v, cyc[(i + 1) % len(cyc)]) in o.arcs
