"""Reduction from planar 3-SAT to acyclic parity-constrained orientation.

Every variable becomes a ring of 10-vertex gadget copies, one copy per
clause slot in the variable's rotation; every clause becomes a hexagon with
six ports.  Crossed connector edges tie each copy's two outward vertices to
the matching port pair, so the assembled graph inherits a genus-0 embedding
from the formula's.  The decision transfer: the formula is satisfiable iff
the assembled instance admits an acyclic orientation with odd in-degree
exactly on its marked set.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from oddorient.p3sat import (
    Formula,
    PlanarFormula,
    RotationSystem,
    clause_vertex,
    eval_formula,
    incidence_graph,
    sat_oracle,
    validate_embedding,
    variable_vertex,
)
from oddorient.pdgraph import (
    GraphError,
    Orientation,
    OrientationProblem,
    PartiallyDirectedGraph,
    Vertex,
    is_acyclic,
    is_T_odd_on,
)
from oddorient.solver import SolveResult, decide, enumerate as sweep, solve_exact


class GadgetError(ValueError):
    """Raised when an orientation does not decompose along gadget lines."""


# one gadget copy: two outward vertices (u, uh), a six-vertex chain between
# them, and a four-vertex return chain closing the parity plumbing
CORE_NAMES = ("u", "a", "b", "c", "d", "uh", "s", "e", "f", "t")
CORE_EDGES = (
    ("u", "a"), ("a", "b"), ("b", "c"), ("c", "d"), ("d", "uh"),
    ("s", "e"), ("e", "f"), ("f", "t"),
)
CORE_ARCS = (("a", "s"), ("e", "b"), ("f", "c"), ("d", "t"))
CORE_ODD = ("u", "a", "b", "c", "d", "s", "e", "f", "t")   # everything but uh

HEX_NAMES = ("w1", "wh1", "w2", "wh2", "w3", "wh3")
PORT_NAMES = ("v1", "vh1", "v2", "vh2", "v3", "vh3")
HEX_EDGES = (
    ("w1", "wh1"), ("wh1", "w2"), ("w2", "wh2"),
    ("wh2", "w3"), ("w3", "wh3"), ("wh3", "w1"),
)
MATCH_EDGES = (
    ("v1", "w1"), ("vh1", "wh1"), ("v2", "w2"),
    ("vh2", "wh2"), ("v3", "w3"), ("vh3", "wh3"),
)


@dataclass(frozen=True)
class GadgetRegistry:
    """Bijective map between artifact vertex ids and human-readable labels."""

    to_label: dict[Vertex, str]
    to_vertex: dict[str, Vertex]

    @classmethod
    def build(cls, pairs: Iterable[tuple[Vertex, str]]) -> "GadgetRegistry":
        to_label: dict[Vertex, str] = {}
        to_vertex: dict[str, Vertex] = {}
        for v, s in pairs:
            if v in to_label or s in to_vertex:
                raise GadgetError(f"registry collision at {v} / {s}")
            to_label[v] = s
            to_vertex[s] = v
        return cls(to_label=to_label, to_vertex=to_vertex)

    def label(self, v: Vertex) -> str:
        return self.to_label[v]

    def vertex(self, label: str) -> Vertex:
        return self.to_vertex[label]

    def bijective(self) -> bool:
        return all(self.to_vertex[s] == v for v, s in self.to_label.items()) and len(
            self.to_label
        ) == len(self.to_vertex)


def _names_to_ids(names: Sequence[str], base: int) -> dict[str, Vertex]:
    return {name: base + i for i, name in zip(range(len(names)), names)}


def attach_stubs(
    problem: OrientationProblem, attach: Sequence[Vertex]
) -> tuple[OrientationProblem, tuple[Vertex, ...]]:
    """Add one fresh outside neighbor per listed vertex, as undirected edges.

    The outside vertices are not in the odd set; scoped enumeration over the
    result sweeps all boundary patterns of the original core.
    """
    g = problem.graph
    nxt = max(g.vertices) + 1
    outside = []
    edges = set(g.edges)
    for v in attach:
        if v not in g.vertices:
            raise GraphError(f"cannot attach a stub at missing vertex {v}")
        edges.add((v, nxt) if v < nxt else (nxt, v))
        outside.append(nxt)
        nxt += 1
    graph = PartiallyDirectedGraph.build(
        set(g.vertices) | set(outside), edges, g.arcs
    )
    return OrientationProblem.build(graph, problem.odd_set), tuple(outside)


@dataclass(frozen=True)
class BaseGadget:
    problem: OrientationProblem
    ids: dict[str, Vertex]

    @property
    def outward(self) -> tuple[Vertex, Vertex]:
        return (self.ids["u"], self.ids["uh"])


@functools.cache
def build_base_gadget() -> BaseGadget:
    """The 10-vertex core on ids 0..9, self-checked at first construction.

    The self-check attaches four stubs (at u, uh, s, t) and sweeps all 2^12
    orientations: exactly two are acyclic with odd in-degree on the core's
    marked set, and they are flips of each other.
    """
    ids = _names_to_ids(CORE_NAMES, 0)
    graph = PartiallyDirectedGraph.build(
        ids.values(),
        [(ids[x], ids[y]) for x, y in CORE_EDGES],
        [(ids[x], ids[y]) for x, y in CORE_ARCS],
    )
    problem = OrientationProblem.build(graph, [ids[x] for x in CORE_ODD])
    gamma, _ = attach_stubs(problem, [ids["u"], ids["uh"], ids["s"], ids["t"]])
    report = sweep(gamma, scope=set(ids.values()), witness_cap=4)
    if report.total_valid != 2:
        raise AssertionError(
            f"base gadget sanity sweep found {report.total_valid} orientations"
        )
    return BaseGadget(problem=problem, ids=ids)


@dataclass(frozen=True)
class VariableGadget:
    problem: OrientationProblem
    copies: int
    # per copy: name -> vertex id
    ids: tuple[dict[str, Vertex], ...]
    link_edges: tuple[tuple[Vertex, Vertex], ...]

    @property
    def stub_pairs(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return tuple((c["u"], c["uh"]) for c in self.ids)


def build_variable_gadget(copies: int) -> VariableGadget:
    """A ring of `copies` gadget cores, consecutive copies joined t -> next s.

    With one stub on every outward vertex, the ring has exactly two
    orientations that are acyclic and odd exactly on its marked set, and
    their boundaries are uniform and opposite: all stubs outward, or all
    inward.
    """
    if copies < 1:
        raise GadgetError("a variable gadget needs at least one copy")
    base = build_base_gadget()
    ids = tuple(_names_to_ids(CORE_NAMES, 10 * k) for k in range(copies))
    edges = []
    arcs = []
    odd = []
    for k in range(copies):
        edges.extend((ids[k][x], ids[k][y]) for x, y in CORE_EDGES)
        arcs.extend((ids[k][x], ids[k][y]) for x, y in CORE_ARCS)
        odd.extend(ids[k][x] for x in CORE_ODD)
    links = tuple(
        (ids[k]["t"], ids[(k + 1) % copies]["s"]) for k in range(copies)
    )
    edges.extend(links)
    graph = PartiallyDirectedGraph.build(
        [v for c in ids for v in c.values()], edges, arcs
    )
    return VariableGadget(
        problem=OrientationProblem.build(graph, odd),
        copies=copies,
        ids=ids,
        link_edges=links,
    )


@dataclass(frozen=True)
class ClauseGadget:
    problem: OrientationProblem
    polarities: tuple[bool, bool, bool]
    ids: dict[str, Vertex]

    @property
    def port_pairs(self) -> tuple[tuple[Vertex, Vertex], ...]:
        return tuple(
            (self.ids[f"v{p}"], self.ids[f"vh{p}"]) for p in (1, 2, 3)
        )

    @property
    def hexagon(self) -> tuple[Vertex, ...]:
        return tuple(self.ids[x] for x in HEX_NAMES)


def build_clause_gadget(polarities: Sequence[bool]) -> ClauseGadget:
    """A hexagon with a pendant port pair per slot, on ids 0..11.

    Hexagon vertices are always marked; a slot's two ports are marked iff its
    literal is positive.  A satisfied literal shows up as the port pair
    directing both matching edges into the hexagon.
    """
    pols = tuple(bool(p) for p in polarities)
    if len(pols) != 3:
        raise GadgetError("a clause gadget has exactly three slots")
    ids = _names_to_ids(HEX_NAMES + PORT_NAMES, 0)
    edges = [(ids[x], ids[y]) for x, y in HEX_EDGES + MATCH_EDGES]
    odd = [ids[x] for x in HEX_NAMES]
    for p, positive in zip((1, 2, 3), pols):
        if positive:
            odd.extend([ids[f"v{p}"], ids[f"vh{p}"]])
    graph = PartiallyDirectedGraph.build(ids.values(), edges, [])
    return ClauseGadget(
        problem=OrientationProblem.build(graph, odd),
        polarities=pols,
        ids=ids,
    )


# -- assembly --------------------------------------------------------------


@dataclass(frozen=True)
class Reduction:
    """The assembled instance, its embedding, and the naming needed to read
    orientations back as assignments."""

    formula: Formula
    source: PlanarFormula
    problem: OrientationProblem
    rotation: RotationSystem
    registry: GadgetRegistry
    # variable i -> copy k -> (name -> vertex)
    variable_ids: tuple[tuple[dict[str, Vertex], ...], ...]
    # clause j -> (name -> vertex)
    clause_ids: tuple[dict[str, Vertex], ...]
    # clause j -> slot p -> (variable, copy, polarity)
    slots: tuple[tuple[tuple[int, int, bool], ...], ...]

    def degree_of_variable(self, i: int) -> int:
        return len(self.variable_ids[i])


def assemble(planar: PlanarFormula) -> Reduction:
    """Build the orientation instance for a planar formula.

    Copy k of variable i serves the clause at position k of the variable's
    stored rotation; slot p of clause j serves the variable at position p of
    the clause's rotation.  Connectors are crossed (u to the hatted port, uh
    to the plain one) so the corridor between a copy and its clause stays
    planar.
    """
    formula = planar.formula
    rot = planar.rotation
    n = formula.variable_count
    m = formula.clause_count

    labels: list[tuple[Vertex, str]] = []
    variable_ids: list[tuple[dict[str, Vertex], ...]] = []
    nxt = 0
    for i in range(n):
        d = len(rot.orders[variable_vertex(formula, i)])
        copies = []
        for k in range(d):
            ids = _names_to_ids(CORE_NAMES, nxt)
            nxt += len(CORE_NAMES)
            copies.append(ids)
            labels.extend((ids[name], f"x{i}.k{k}.{name}") for name in CORE_NAMES)
        variable_ids.append(tuple(copies))
    clause_ids: list[dict[str, Vertex]] = []
    for j in range(m):
        ids = _names_to_ids(HEX_NAMES + PORT_NAMES, nxt)
        nxt += 12
        clause_ids.append(ids)
        labels.extend(
            (ids[name], f"c{j}.{name}") for name in HEX_NAMES + PORT_NAMES
        )

    edges: list[tuple[Vertex, Vertex]] = []
    arcs: list[tuple[Vertex, Vertex]] = []
    odd: list[Vertex] = []
    for i in range(n):
        copies = variable_ids[i]
        d = len(copies)
        for k in range(d):
            ids = copies[k]
            edges.extend((ids[x], ids[y]) for x, y in CORE_EDGES)
            arcs.extend((ids[x], ids[y]) for x, y in CORE_ARCS)
            odd.extend(ids[x] for x in CORE_ODD)
        edges.extend(
            (copies[k]["t"], copies[(k + 1) % d]["s"]) for k in range(d)
        )
    for j in range(m):
        ids = clause_ids[j]
        edges.extend((ids[x], ids[y]) for x, y in HEX_EDGES + MATCH_EDGES)
        odd.extend(ids[x] for x in HEX_NAMES)

    # connectors and port marks, one slot per literal
    polarity: list[dict[int, bool]] = [dict(cl) for cl in formula.clauses]
    slots: list[tuple[tuple[int, int, bool], ...]] = []
    for j in range(m):
        cv = clause_vertex(formula, j)
        row = []
        for p, vv in zip((1, 2, 3), rot.orders[cv]):
            i = vv
            k = rot.position(variable_vertex(formula, i), cv)
            copy = variable_ids[i][k]
            ports = clause_ids[j]
            edges.append((copy["u"], ports[f"vh{p}"]))
            edges.append((copy["uh"], ports[f"v{p}"]))
            positive = polarity[j][i]
            if positive:
                odd.extend([ports[f"v{p}"], ports[f"vh{p}"]])
            row.append((i, k, positive))
        slots.append(tuple(row))

    graph = PartiallyDirectedGraph.build(range(nxt), edges, arcs)
    problem = OrientationProblem.build(graph, odd)

    # rotation system: fixed chirality templates inside every gadget; all
    # cross-gadget junctions pass through degree-2 vertices
    orders: dict[Vertex, Sequence[Vertex]] = {}
    for i in range(n):
        copies = variable_ids[i]
        d = len(copies)
        for k in range(d):
            c = copies[k]
            prev_t = copies[(k - 1) % d]["t"]
            next_s = copies[(k + 1) % d]["s"]
            orders[c["a"]] = (c["b"], c["u"], c["s"])
            orders[c["b"]] = (c["c"], c["a"], c["e"])
            orders[c["c"]] = (c["d"], c["b"], c["f"])
            orders[c["d"]] = (c["uh"], c["c"], c["t"])
            orders[c["s"]] = (c["e"], c["a"], prev_t)
            orders[c["e"]] = (c["f"], c["b"], c["s"])
            orders[c["f"]] = (c["t"], c["c"], c["e"])
            orders[c["t"]] = (next_s, c["d"], c["f"])
    for j in range(m):
        ids = clause_ids[j]
        # the hexagon winds against the copy template's chirality; with the
        # crossed connectors this keeps every corridor twist-free
        for p in (1, 2, 3):
            prev_wh = ids[f"wh{(p - 2) % 3 + 1}"]
            orders[ids[f"w{p}"]] = (ids[f"wh{p}"], ids[f"v{p}"], prev_wh)
            orders[ids[f"wh{p}"]] = (
                ids[f"w{p % 3 + 1}"], ids[f"vh{p}"], ids[f"w{p}"],
            )
    adjacency = graph.adjacency()
    for v in range(nxt):
        if v not in orders:
            orders[v] = tuple(adjacency[v])   # degree <= 2: order is immaterial
    rotation = RotationSystem.build(orders)

    return Reduction(
        formula=formula,
        source=planar,
        problem=problem,
        rotation=rotation,
        registry=GadgetRegistry.build(labels),
        variable_ids=tuple(variable_ids),
        clause_ids=tuple(clause_ids),
        slots=tuple(slots),
    )


# -- structural validation ---------------------------------------------------


@dataclass(frozen=True)
class StructuralReport:
    ok: bool
    problems: tuple[str, ...]
    vertices: int
    edges: int
    arcs: int
    marked: int
    faces: int


def structural_check(red: Reduction) -> StructuralReport:
    """Invariants every assembled instance must satisfy, reported not assumed."""
    problems: list[str] = []
    g = red.problem.graph
    n = red.formula.variable_count
    m = red.formula.clause_count
    total_copies = sum(len(c) for c in red.variable_ids)

    if len(g.vertices) != 10 * total_copies + 12 * m:
        problems.append("vertex count off")
    if len(g.edges) != 9 * total_copies + 18 * m:
        problems.append("edge count off")
    if len(g.arcs) != 4 * total_copies:
        problems.append("arc count off")
    if total_copies != 3 * m:
        problems.append("copy count is not three per clause")

    if (len(g.edges) + len(g.arcs) + len(red.problem.odd_set)) % 2 != 0:
        problems.append("parity gate violated")

    for v in sorted(g.vertices):
        deg = g.degree(v)
        if deg > 3:
            problems.append(f"degree {deg} at {red.registry.label(v)}")
        if v not in red.problem.odd_set and deg != 2:
            problems.append(f"unmarked vertex {red.registry.label(v)} has degree {deg}")

    if not red.registry.bijective():
        problems.append("registry is not bijective")
    if sorted(red.registry.to_label) != sorted(g.vertices):
        problems.append("registry does not cover the vertex set")

    report = validate_embedding(g, red.rotation)
    if not report.valid:
        problems.append("rotation system is not genus zero")

    # connectors may only join outward copy vertices to ports
    owner: dict[Vertex, tuple[str, int]] = {}
    for i, copies in zip(range(n), red.variable_ids):
        for ids in copies:
            for v in ids.values():
                owner[v] = ("x", i)
    for j, ids in zip(range(m), red.clause_ids):
        for v in ids.values():
            owner[v] = ("c", j)
    for u, v in sorted(g.edges):
        ku, kv = owner[u][0], owner[v][0]
        if ku == kv == "c" and owner[u][1] != owner[v][1]:
            problems.append(f"edge joins two clauses: {u}-{v}")
        if ku == kv == "x" and owner[u][1] != owner[v][1]:
            problems.append(f"edge joins two variables: {u}-{v}")
        if ku != kv:
            lu, lv = red.registry.label(u), red.registry.label(v)
            names = {lu.rsplit(".", 1)[1], lv.rsplit(".", 1)[1]}
            if not (names <= {"u", "vh1", "vh2", "vh3"} or
                    names <= {"uh", "v1", "v2", "v3"}):
                problems.append(f"stray connector {lu}-{lv}")

    return StructuralReport(
        ok=not problems,
        problems=tuple(problems),
        vertices=len(g.vertices),
        edges=len(g.edges),
        arcs=len(g.arcs),
        marked=len(red.problem.odd_set),
        faces=report.face_count,
    )


# -- orientations from assignments and back ----------------------------------


@functools.cache
def _mode_template() -> dict[str, tuple[str, str]]:
    """Arc directions inside one copy when every stub points outward.

    Derived once by solving a two-copy ring with its four stubs fixed
    outward; the solution is copy-uniform, and the all-inward mode is its
    flip.  Keys are undirected name pairs plus "link" for t -> next-s.
    """
    gadget = build_variable_gadget(2)
    gamma, outside = attach_stubs(
        gadget.problem, [v for pair in gadget.stub_pairs for v in pair]
    )
    fixed = list(gamma.graph.arcs)
    stubs = [v for pair in gadget.stub_pairs for v in pair]
    for sv, ov in zip(stubs, outside):
        fixed.append((sv, ov))
    graph = PartiallyDirectedGraph.build(gamma.graph.vertices, [
        e for e in gamma.graph.edges
        if e not in {tuple(sorted(p)) for p in zip(stubs, outside)}
    ], fixed)
    res = solve_exact(OrientationProblem.build(graph, gamma.odd_set),
                      scope=set(gadget.problem.graph.vertices))
    if not res.feasible:
        raise AssertionError("outward mode did not solve")
    directed = {}
    for t, h in res.witness.arcs:
        directed[(t, h)] = True
    name_of = {}
    for k, ids in zip(range(2), gadget.ids):
        for name, v in ids.items():
            name_of[v] = (k, name)
    template: dict[str, tuple[str, str]] = {}
    for x, y in CORE_EDGES:
        a, b = gadget.ids[0][x], gadget.ids[0][y]
        template[f"{x}-{y}"] = (x, y) if (a, b) in directed else (y, x)
        a1, b1 = gadget.ids[1][x], gadget.ids[1][y]
        other = (x, y) if (a1, b1) in directed else (y, x)
        if other != template[f"{x}-{y}"]:
            raise AssertionError(f"mode template not copy-uniform at {x}-{y}")
    t0, s1 = gadget.link_edges[0]
    template["link"] = ("t", "s") if (t0, s1) in directed else ("s", "t")
    t1, s0 = gadget.link_edges[1]
    second = ("t", "s") if (t1, s0) in directed else ("s", "t")
    if second != template["link"]:
        raise AssertionError("mode template not copy-uniform at the ring link")
    return template


def _copy_arcs(ids: dict[str, Vertex], next_s: Vertex, out_mode: bool):
    """Directed core and link edges of one copy in the requested mode."""
    template = _mode_template()
    out = []
    for x, y in CORE_EDGES:
        a, b = template[f"{x}-{y}"]
        if not out_mode:
            a, b = b, a
        out.append((ids[a], ids[b]))
    a, b = template["link"]
    pair = (ids["t"], next_s) if (a, b) == ("t", "s") else (next_s, ids["t"])
    if not out_mode:
        pair = (pair[1], pair[0])
    out.append(pair)
    return out


def orientation_from_assignment(
    red: Reduction, assignment: Sequence[bool]
) -> Orientation:
    """The canonical witness orientation for a satisfying assignment.

    True variables run in outward mode, false ones inward; each port passes
    its literal's value to the hexagon, and each hexagon takes the smallest
    completion that is odd at every hexagon vertex and does not close the
    ring.  Raises GadgetError when some clause is unsatisfied, since no
    completion exists there.
    """
    formula = red.formula
    if len(assignment) != formula.variable_count:
        raise GadgetError("assignment must be total")
    directed: list[tuple[Vertex, Vertex]] = []
    for i in range(formula.variable_count):
        copies = red.variable_ids[i]
        d = len(copies)
        for k in range(d):
            next_s = copies[(k + 1) % d]["s"]
            directed.extend(_copy_arcs(copies[k], next_s, bool(assignment[i])))

    adjacency = red.problem.graph.adjacency()
    for j in range(formula.clause_count):
        ids = red.clause_ids[j]
        satisfied = []
        for p, (i, k, positive) in zip((1, 2, 3), red.slots[j]):
            value = bool(assignment[i]) == positive
            satisfied.append(value)
            copy = red.variable_ids[i][k]
            v, vh, w, wh = ids[f"v{p}"], ids[f"vh{p}"], ids[f"w{p}"], ids[f"wh{p}"]
            if assignment[i]:
                # outward mode pushes both connectors into the ports
                directed.extend([(copy["u"], vh), (copy["uh"], v)])
            else:
                directed.extend([(vh, copy["u"]), (v, copy["uh"])])
            if value:
                directed.extend([(v, w), (vh, wh)])     # satisfied: pair points in
            else:
                directed.extend([(w, v), (wh, vh)])
        if not any(satisfied):
            raise GadgetError(f"assignment leaves clause {j} unsatisfied")
        hex_ids = [ids[x] for x in HEX_NAMES]
        ring = [(hex_ids[p], hex_ids[(p + 1) % 6]) for p in range(6)]
        in_from_match = {
            ids[x]: 0 for x in HEX_NAMES
        }
        for t, h in directed[-12:]:
            if h in in_from_match:
                in_from_match[h] += 1
        best: Optional[list[tuple[Vertex, Vertex]]] = None
        for mask in range(64):
            arcs = [
                (a, b) if (mask >> p) & 1 else (b, a)
                for p, (a, b) in zip(range(6), ring)
            ]
            if mask in (0b111111,) or all((mask >> p) & 1 == 0 for p in range(6)):
                continue   # a consistently directed ring is a cycle
            deg = dict(in_from_match)
            for t, h in arcs:
                deg[h] += 1
            if all(d % 2 == 1 for d in deg.values()):
                cand = sorted(arcs)
                if best is None or cand < best:
                    best = cand
        if best is None:
            raise GadgetError(f"no hexagon completion for clause {j}")
        directed.extend(best)

    return Orientation.of(red.problem.graph, directed)


def assignment_from_orientation(
    red: Reduction, orientation: Orientation
) -> tuple[bool, ...]:
    """Read each variable's mode off its stub arcs.

    Raises GadgetError when any copy's stubs disagree, i.e. the orientation
    is not in gadget normal form.
    """
    directs = set(orientation.arcs)
    adjacency = red.problem.graph.adjacency()
    out: list[bool] = []
    for i in range(red.formula.variable_count):
        votes: set[bool] = set()
        for ids in red.variable_ids[i]:
            for name in ("u", "uh"):
                v = ids[name]
                ports = [
                    x for x in adjacency[v]
                    if red.registry.label(x).startswith("c")
                ]
                if len(ports) != 1:
                    raise GadgetError(
                        f"outward vertex {red.registry.label(v)} has no port link"
                    )
                if (v, ports[0]) in directs:
                    votes.add(True)
                elif (ports[0], v) in directs:
                    votes.add(False)
                else:
                    raise GadgetError("connector left undirected in witness")
        if votes == {True}:
            out.append(True)
        elif votes == {False}:
            out.append(False)
        else:
            raise GadgetError(
                f"variable {i} has mixed stub directions; not a gadget witness"
            )
    return tuple(out)


def clause_boundary_class(
    red: Reduction, orientation: Orientation, j: int
) -> int:
    """How many of clause j's slots point their full port pair inward."""
    directs = set(orientation.arcs)
    ids = red.clause_ids[j]
    inward = 0
    for p in (1, 2, 3):
        a = (ids[f"v{p}"], ids[f"w{p}"]) in directs
        b = (ids[f"vh{p}"], ids[f"wh{p}"]) in directs
        if a != b:
            raise GadgetError(
                f"clause {j} slot {p} has a split port pair; not a gadget witness"
            )
        inward += 1 if a else 0
    return inward


def verify_equivalence(planar: PlanarFormula, *, budget: int = 10_000_000) -> dict:
    """Decide the formula twice: by assignment sweep and by orientation.

    Returns {"sat", "orientation_feasible", "agree"} plus witness detail.
    When both sides produce witnesses, each is checked in full: the
    assignment satisfies the formula, the orientation is acyclic, odd
    exactly on the marked set, and reads back to a satisfying assignment.
    """
    red = assemble(planar)
    witness = sat_oracle(planar.formula)
    res: SolveResult = decide(red.problem, budget=budget)
    sat = witness is not None
    feasible = res.feasible
    agree = sat == feasible

    if sat:
        built = orientation_from_assignment(red, witness)
        if not is_T_odd_on(red.problem, built):
            agree = False
        if not is_acyclic(built.arcs).acyclic:
            agree = False
    if feasible and res.witness is not None:
        back = assignment_from_orientation(red, res.witness)
        if not eval_formula(planar.formula, back):
            agree = False

    return {
        "sat": sat,
        "orientation_feasible": feasible,
        "agree": agree,
        "assignment": witness,
        "decisions": res.decisions,
    }
