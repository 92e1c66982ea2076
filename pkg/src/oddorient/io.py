"""Reading and writing instances, formulas, witnesses, and DOT exports.

Instances travel as JSON documents with a canonical writer: vertex records
sorted by id, links in lexicographic order, so structurally equal problems
serialize to identical bytes.  Formulas travel as DIMACS CNF text extended
with ``r`` rotation lines (one per incidence vertex, neighbors in cyclic
order) that standard DIMACS consumers ignore.
"""

import json
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from .p3sat import (
    Formula,
    PlanarFormula,
    RotationSystem,
    clause_vertex,
)
from .pdgraph import (
    Orientation,
    OrientationProblem,
    PartiallyDirectedGraph,
    Vertex,
    canonical_edge,
)
from .reduction import GadgetRegistry

INSTANCE_FORMAT = "oddorient-instance"
WITNESS_FORMAT = "oddorient-witness"
FORMAT_VERSION = 1


class FormatError(ValueError):
    """A document failed to parse or validate."""


@dataclass(frozen=True)
class InstanceBundle:
    """An instance document's payload: the problem plus optional extras."""

    problem: OrientationProblem
    rotation: Optional[RotationSystem] = None
    registry: Optional[GadgetRegistry] = None
    formula: Optional[Formula] = None


# -- instance JSON ----------------------------------------------------------------


def write_instance(
    problem: OrientationProblem,
    *,
    rotation: Optional[RotationSystem] = None,
    registry: Optional[GadgetRegistry] = None,
    formula: Optional[Formula] = None,
) -> bytes:
    """Canonical JSON bytes for the problem and any attached sections."""
    g = problem.graph
    vertices = []
    for v in sorted(g.vertices):
        rec: dict = {"id": v, "in_T": v in problem.odd_set}
        if registry is not None and v in registry.to_label:
            rec["label"] = registry.to_label[v]
        vertices.append(rec)
    doc: dict = {
        "format": INSTANCE_FORMAT,
        "version": FORMAT_VERSION,
        "vertices": vertices,
        "edges": [list(e) for e in sorted(g.edges)],
        "arcs": [list(a) for a in sorted(g.arcs)],
    }
    if rotation is not None:
        doc["rotation"] = [
            [v, list(rotation.orders[v])] for v in sorted(rotation.orders)
        ]
    if formula is not None:
        doc["formula"] = {
            "variables": formula.variable_count,
            "clauses": [
                [[var, bool(pol)] for var, pol in clause]
                for clause in formula.clauses
            ],
        }
    return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode()


def _normalize_links(raw_edges, raw_arcs, normalize_multi: bool):
    """Collapse parallel links per the multigraph reduction, or reject them.

    An even bundle of parallel edges is parity-neutral and removable; an odd
    bundle collapses to a single edge.  Fixed arcs cannot be dropped, so only
    odd same-direction bundles collapse; anything else is an error.
    """
    edge_count: Counter = Counter()
    for u, v in raw_edges:
        if u == v:
            raise FormatError(f"self-loop at vertex {u}")
        edge_count[canonical_edge(u, v)] += 1
    arc_count: Counter = Counter()
    for u, v in raw_arcs:
        if u == v:
            raise FormatError(f"self-loop arc at vertex {u}")
        arc_count[(u, v)] += 1

    for (u, v), k in sorted(arc_count.items()):
        if (v, u) in arc_count:
            raise FormatError(f"opposite fixed arcs between {u} and {v}")
        if canonical_edge(u, v) in edge_count:
            raise FormatError(f"both an edge and an arc between {u} and {v}")

    if not normalize_multi:
        for pair, k in sorted(edge_count.items()):
            if k > 1:
                raise FormatError(f"duplicate edge {pair} (use normalize_multi)")
        for pair, k in sorted(arc_count.items()):
            if k > 1:
                raise FormatError(f"duplicate arc {pair} (use normalize_multi)")
        return set(edge_count), set(arc_count)

    edges = {pair for pair, k in edge_count.items() if k % 2 == 1}
    arcs = set()
    for pair, k in sorted(arc_count.items()):
        if k % 2 == 0:
            raise FormatError(
                f"even bundle of {k} fixed arcs {pair} has no simple equivalent"
            )
        arcs.add(pair)
    return edges, arcs


def read_instance(data: Union[bytes, str], *, normalize_multi: bool = False) -> InstanceBundle:
    """Parse and validate an instance document.

    With ``normalize_multi`` the document may contain parallel links, which
    are collapsed to an equivalent simple instance before validation.
    """
    if isinstance(data, bytes):
        data = data.decode()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: line {exc.lineno} col {exc.colno}") from exc
    if not isinstance(doc, dict) or doc.get("format") != INSTANCE_FORMAT:
        raise FormatError("not an instance document")
    if doc.get("version") != FORMAT_VERSION:
        raise FormatError(f"unrecognized format version {doc.get('version')!r}")

    try:
        records = list(doc["vertices"])
        raw_edges = [tuple(e) for e in doc["edges"]]
        raw_arcs = [tuple(a) for a in doc["arcs"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"missing or malformed section: {exc}") from exc

    ids = []
    odd = []
    labels = []
    for rec in records:
        if not isinstance(rec, dict) or "id" not in rec:
            raise FormatError(f"malformed vertex record {rec!r}")
        v = rec["id"]
        ids.append(v)
        if rec.get("in_T"):
            odd.append(v)
        if "label" in rec:
            labels.append((v, rec["label"]))
    if len(set(ids)) != len(ids):
        raise FormatError("duplicate vertex ids")

    edges, arcs = _normalize_links(raw_edges, raw_arcs, normalize_multi)
    graph = PartiallyDirectedGraph.build(ids, edges, arcs)
    problem = OrientationProblem.build(graph, odd)

    rotation = None
    if "rotation" in doc:
        rotation = RotationSystem.build(
            {v: tuple(order) for v, order in doc["rotation"]}
        )
    registry = None
    if labels:
        registry = GadgetRegistry.build(labels)
    formula = None
    if "formula" in doc:
        sec = doc["formula"]
        formula = Formula.build(
            sec["variables"],
            [tuple((var, bool(pol)) for var, pol in clause) for clause in sec["clauses"]],
        )
    return InstanceBundle(problem, rotation, registry, formula)


# -- witness JSON -----------------------------------------------------------------


def write_witness(orientation: Orientation) -> bytes:
    doc = {
        "format": WITNESS_FORMAT,
        "version": FORMAT_VERSION,
        "arcs": [list(a) for a in sorted(orientation.arcs)],
    }
    return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode()


def read_witness(data: Union[bytes, str], problem: OrientationProblem) -> Orientation:
    """Parse a witness document and bind it to the problem's graph."""
    if isinstance(data, bytes):
        data = data.decode()
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: line {exc.lineno} col {exc.colno}") from exc
    if not isinstance(doc, dict) or doc.get("format") != WITNESS_FORMAT:
        raise FormatError("not a witness document")
    arcs = {tuple(a) for a in doc.get("arcs", ())}
    directed = [a for a in arcs if a not in problem.graph.arcs]
    fixed = arcs - set(directed)
    if fixed != set(problem.graph.arcs):
        raise FormatError("witness does not include the instance's fixed arcs")
    return Orientation.of(problem.graph, directed)


# -- formula text -----------------------------------------------------------------


def write_formula(formula: Union[Formula, PlanarFormula]) -> bytes:
    """DIMACS body (1-based signed literals) plus ``r`` rotation lines.

    Rotation lines use incidence-graph vertex ids: variables are 0..n-1 and
    clause j is n+j, matching the embedding produced by the generator.
    """
    rotation = None
    if isinstance(formula, PlanarFormula):
        rotation = formula.rotation
        formula = formula.formula
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for clause in formula.clauses:
        lits = " ".join(
            str(var + 1 if pol else -(var + 1)) for var, pol in clause
        )
        lines.append(f"{lits} 0")
    if rotation is not None:
        for v in sorted(rotation.orders):
            order = " ".join(str(w) for w in rotation.orders[v])
            lines.append(f"r {v} {order}")
    return ("\n".join(lines) + "\n").encode()


def read_formula(data: Union[bytes, str]) -> Union[Formula, PlanarFormula]:
    """Parse a formula document; with rotation lines, validate the embedding."""
    if isinstance(data, bytes):
        data = data.decode()
    header = None
    clauses = []
    orders: dict[Vertex, tuple[Vertex, ...]] = {}
    for lineno, raw in enumerate(data.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise FormatError(f"line {lineno}: second header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"line {lineno}: malformed header {line!r}")
            header = (int(parts[2]), int(parts[3]))
            continue
        if line.startswith("r"):
            parts = line.split()
            try:
                v, order = int(parts[1]), tuple(int(w) for w in parts[2:])
            except (IndexError, ValueError) as exc:
                raise FormatError(f"line {lineno}: malformed rotation line") from exc
            if v in orders:
                raise FormatError(f"line {lineno}: repeated rotation for {v}")
            orders[v] = order
            continue
        if header is None:
            raise FormatError(f"line {lineno}: clause before header")
        try:
            lits = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FormatError(f"line {lineno}: malformed literal") from exc
        if not lits or lits[-1] != 0:
            raise FormatError(f"line {lineno}: clause missing trailing 0")
        lits = lits[:-1]
        if len(lits) != 3:
            raise FormatError(f"line {lineno}: clause arity {len(lits)}, need 3")
        if 0 in lits:
            raise FormatError(f"line {lineno}: literal 0 inside clause")
        seen = {abs(l) for l in lits}
        if len(seen) != 3:
            if any(-l in lits for l in lits):
                raise FormatError(
                    f"line {lineno}: clause has a variable and its negation"
                )
            raise FormatError(f"line {lineno}: repeated variable in clause")
        clauses.append(tuple((abs(l) - 1, l > 0) for l in lits))
    if header is None:
        raise FormatError("no header line")
    n, m = header
    if len(clauses) != m:
        raise FormatError(f"header promises {m} clauses, found {len(clauses)}")
    formula = Formula.build(n, clauses)
    if not orders:
        return formula
    expected = set(range(n)) | {clause_vertex(formula, j) for j in range(m)}
    if set(orders) != expected:
        raise FormatError("rotation lines do not cover the incidence vertices")
    return PlanarFormula.build(formula, RotationSystem.build(orders))


# -- DOT export -------------------------------------------------------------------


def _dot_quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(
    problem: OrientationProblem,
    orientation: Optional[Orientation] = None,
    registry: Optional[GadgetRegistry] = None,
) -> bytes:
    """Graphviz rendering: marked vertices filled black, others white.

    Fixed arcs are always drawn directed; undirected edges are drawn without
    arrowheads unless an orientation supplies their directions.  With a
    registry, vertices group into clusters by label prefix (up to the first
    dot), which separates the gadgets of an assembled artifact.
    """
    g = problem.graph
    lines = ["digraph oddorient {", " node [shape=circle];"]

    def node_line(v: Vertex) -> str:
        if v in problem.odd_set:
            style = "style=filled fillcolor=black fontcolor=white"
        else:
            style = "style=filled fillcolor=white"
        label = ""
        if registry is not None and v in registry.to_label:
            label = f" label={_dot_quote(registry.to_label[v])}"
        return f" {v} [{style}{label}];"

    if registry is None:
        for v in sorted(g.vertices):
            lines.append(node_line(v))
    else:
        groups: dict[str, list[Vertex]] = {}
        loose = []
        for v in sorted(g.vertices):
            if v in registry.to_label:
                prefix = registry.to_label[v].split(".", 1)[0]
                groups.setdefault(prefix, []).append(v)
            else:
                loose.append(v)
        for prefix in sorted(groups):
            lines.append(f" subgraph {_dot_quote('cluster_' + prefix)} {{")
            lines.append(f"  label={_dot_quote(prefix)};")
            for v in groups[prefix]:
                lines.append(" " + node_line(v))
            lines.append(" }")
        for v in loose:
            lines.append(node_line(v))

    for u, v in sorted(g.edges):
        if orientation is None:
            lines.append(f" {u} -> {v} [dir=none];")
        elif orientation.directs(u, v):
            lines.append(f" {u} -> {v};")
        else:
            lines.append(f" {v} -> {u};")
    for u, v in sorted(g.arcs):
        lines.append(f" {u} -> {v};")
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()
