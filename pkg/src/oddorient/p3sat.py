"""Planar 3-SAT instances: formulas, incidence graphs, rotation systems,
embedding validation, a brute-force satisfiability oracle, and a planar
instance generator.

A literal is a pair (variable index, polarity); variables are 0-based.  The
incidence graph puts variable i at vertex i and clause j at vertex n + j.
Embeddings are combinatorial maps: a cyclic neighbor order per vertex,
validated against Euler's formula by face tracing (no coordinates anywhere).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from oddorient.pdgraph import PartiallyDirectedGraph, Vertex
from oddorient.solver import BudgetError

Literal = tuple[int, bool]
Clause = tuple[Literal, Literal, Literal]


class FormulaError(ValueError):
    """Raised for malformed formulas or rotation systems."""


class GenerationError(ValueError):
    """Raised when no planar layout satisfies the requested parameters."""


@dataclass(frozen=True)
class Formula:
    """A 3-CNF formula: every clause has three distinct variables."""

    variable_count: int
    clauses: tuple[Clause, ...]

    @classmethod
    def build(
        cls, variable_count: int, clauses: Iterable[Sequence[Literal]]
    ) -> "Formula":
        packed = []
        for idx, clause in zip(range(10**9), clauses):
            lits = tuple((int(v), bool(p)) for v, p in clause)
            if len(lits) != 3:
                raise FormulaError(f"clause {idx} must have exactly 3 literals")
            vars_seen = [v for v, _ in lits]
            if len(set(vars_seen)) != 3:
                raise FormulaError(
                    f"clause {idx} repeats a variable (complementary or equal"
                    " literals are not allowed)"
                )
            for v, _ in lits:
                if not 0 <= v < variable_count:
                    raise FormulaError(f"clause {idx} names variable {v} out of range")
            packed.append(lits)
        return cls(variable_count=variable_count, clauses=tuple(packed))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)


def eval_formula(formula: Formula, assignment: Sequence[bool]) -> bool:
    """True iff every clause contains a true literal."""
    if len(assignment) != formula.variable_count:
        raise FormulaError("assignment must be total")
    return all(
        any(assignment[v] == pos for v, pos in clause) for clause in formula.clauses
    )


def sat_oracle(formula: Formula, budget: int = 24) -> Optional[tuple[bool, ...]]:
    """Exhaustive satisfiability check; returns the lowest-index witness.

    Sweeps all 2^n assignments (bit v of the sweep index is variable v).
    Raises BudgetError-style ValueError when n exceeds ``budget`` so a partial
    sweep is never mistaken for a proof of unsatisfiability.
    """
    n = formula.variable_count
    if n > budget:
        raise BudgetError(
            f"satisfiability sweep over {n} variables exceeds the 2**{budget} budget"
        )
    total = 1 << n
    chunk = 1 << 20
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        masks = np.arange(start, stop, dtype=np.uint64)
        ok = np.ones(masks.shape, dtype=bool)
        for clause in formula.clauses:
            hit = np.zeros(masks.shape, dtype=bool)
            for v, pos in clause:
                bit = (masks >> np.uint64(v)) & np.uint64(1)
                hit |= bit == np.uint64(1 if pos else 0)
            ok &= hit
        where = np.nonzero(ok)[0]
        if where.size:
            m = int(masks[where[0]])
            return tuple(bool((m >> v) & 1) for v in range(n))
    return None


def incidence_graph(formula: Formula) -> PartiallyDirectedGraph:
    """Bipartite graph joining each variable vertex to the clauses using it."""
    n = formula.variable_count
    edges = set()
    for j, clause in zip(range(len(formula.clauses)), formula.clauses):
        for v, _ in clause:
            edges.add((v, n + j))
    return PartiallyDirectedGraph.build(
        range(n + len(formula.clauses)), edges, ()
    )


def variable_vertex(formula: Formula, i: int) -> Vertex:
    return i


def clause_vertex(formula: Formula, j: int) -> Vertex:
    return formula.variable_count + j


# -- rotation systems --------------------------------------------------------------


def _normalize_cycle(order: Sequence[Vertex]) -> tuple[Vertex, ...]:
    if not order:
        return ()
    t = tuple(order)
    shift = t.index(min(t))
    return t[shift:] + t[:shift]


@dataclass(frozen=True)
class RotationSystem:
    """A cyclic order of neighbors at each vertex (a combinatorial map).

    Orders are stored rotated to start at the smallest neighbor, so equal
    embeddings compare equal and serialize identically.
    """

    orders: dict[Vertex, tuple[Vertex, ...]]

    @classmethod
    def build(cls, mapping: Mapping[Vertex, Sequence[Vertex]]) -> "RotationSystem":
        orders = {}
        for v in sorted(mapping):
            cycle = _normalize_cycle(mapping[v])
            if len(set(cycle)) != len(cycle):
                raise FormulaError(f"rotation at {v} repeats a neighbor")
            orders[v] = cycle
        return cls(orders=orders)

    def neighbors(self, v: Vertex) -> tuple[Vertex, ...]:
        return self.orders[v]

    def succ(self, v: Vertex, u: Vertex) -> Vertex:
        """Neighbor immediately after u in the cyclic order at v."""
        cycle = self.orders[v]
        return cycle[(cycle.index(u) + 1) % len(cycle)]

    def position(self, v: Vertex, u: Vertex) -> int:
        """Index of u in the stored order at v (an inverse rotation lookup,
        made concrete by the start-at-minimum normalization)."""
        return self.orders[v].index(u)


@dataclass(frozen=True)
class ComponentCheck:
    vertices: int
    edges: int
    faces: int

    @property
    def euler_ok(self) -> bool:
        return self.vertices - self.edges + self.faces == 2


@dataclass(frozen=True)
class EmbeddingReport:
    valid: bool
    components: tuple[ComponentCheck, ...]
    face_count: int
    darts_traced: int


def next_dart(
    rotation: RotationSystem, dart: tuple[Vertex, Vertex]
) -> tuple[Vertex, Vertex]:
    """Face-trace successor: from u->v continue to (v, successor of u at v)."""
    u, v = dart
    return (v, rotation.succ(v, u))


def validate_embedding(
    graph: PartiallyDirectedGraph, rotation: RotationSystem
) -> EmbeddingReport:
    """Trace all faces and test Euler's formula on every component.

    The rotation must cover every vertex with exactly its neighbor set
    (direction of arcs is irrelevant here); genus-0 means each connected
    component satisfies V - E + F = 2, counting one face for an isolated
    vertex.
    """
    adjacency = graph.adjacency()
    for v in sorted(graph.vertices):
        if v not in rotation.orders:
            raise FormulaError(f"rotation missing vertex {v}")
        if sorted(rotation.orders[v]) != adjacency[v]:
            raise FormulaError(
                f"rotation at {v} is not a permutation of its neighbors"
            )

    # component labels over the underlying graph
    comp: dict[Vertex, Vertex] = {}
    for v in sorted(graph.vertices):
        if v in comp:
            continue
        stack = [v]
        comp[v] = v
        while stack:
            x = stack.pop()
            for y in adjacency[x]:
                if y not in comp:
                    comp[y] = v
                    stack.append(y)

    darts = sorted(
        d
        for u, v in graph.undirected_pairs()
        for d in ((u, v), (v, u))
    )
    faces_per_comp: dict[Vertex, int] = {c: 0 for c in set(comp.values())}
    seen: set[tuple[Vertex, Vertex]] = set()
    traced = 0
    for start in darts:
        if start in seen:
            continue
        faces_per_comp[comp[start[0]]] += 1
        d = start
        while True:
            seen.add(d)
            traced += 1
            d = next_dart(rotation, d)
            if d == start:
                break

    counts: dict[Vertex, list[int]] = {c: [0, 0] for c in faces_per_comp}
    for v, c in comp.items():
        counts[c][0] += 1
    for u, v in graph.undirected_pairs():
        counts[comp[u]][1] += 1
    checks = []
    for c in sorted(faces_per_comp):
        n_c, e_c = counts[c]
        f_c = faces_per_comp[c] if e_c else 1   # isolated vertex: one face
        checks.append(ComponentCheck(vertices=n_c, edges=e_c, faces=f_c))
    return EmbeddingReport(
        valid=all(ch.euler_ok for ch in checks),
        components=tuple(checks),
        face_count=sum(ch.faces for ch in checks),
        darts_traced=traced,
    )


@dataclass(frozen=True)
class PlanarFormula:
    """A formula together with a genus-0 rotation system for its incidence
    graph."""

    formula: Formula
    rotation: RotationSystem

    @classmethod
    def build(cls, formula: Formula, rotation: RotationSystem) -> "PlanarFormula":
        report = validate_embedding(incidence_graph(formula), rotation)
        if not report.valid:
            raise FormulaError(
                "rotation system is not a planar embedding "
                f"(components: {report.components})"
            )
        return cls(formula=formula, rotation=rotation)


# -- planar instance generator --------------------------------------------------------

_LEFT = -1    # sentinel spine endpoints, never attached to a clause
_RIGHT = -2


@dataclass
class _FaceSide:
    """One side (upper or lower) of one face of the working map.

    ``corners`` maps each spine position exposed on this side of the face to
    (index of its arrival dart in ``walk``, arrival neighbor).
    """

    up: bool
    positions: tuple[int, ...]
    corners: dict[int, tuple[int, Vertex]]
    walk: list[tuple[Vertex, Vertex]]


class _SpineMap:
    """Working combinatorial map for the generator: variables sit on a spine
    path (with sentinel ends), clause vertices are inserted one face at a
    time, and the scaffolding is removed at the end.

    Face records are rebuilt from scratch after every insertion, so they are
    never stale; each clause attaches at three corners of a single traced
    face, which keeps the map planar by construction.
    """

    def __init__(self, n: int):
        self.n = n
        self.sigma: dict[Vertex, list[Vertex]] = {_LEFT: [0], _RIGHT: [n - 1]}
        for p in range(n):
            west = p - 1 if p > 0 else _LEFT
            east = p + 1 if p + 1 < n else _RIGHT
            self.sigma[p] = [west, east]

    def _succ(self, v: Vertex, u: Vertex) -> Vertex:
        cycle = self.sigma[v]
        return cycle[(cycle.index(u) + 1) % len(cycle)]

    def _trace(self, start: tuple[Vertex, Vertex]) -> list[tuple[Vertex, Vertex]]:
        walk = [start]
        u, v = start
        guard = 2 * sum(len(s) for s in self.sigma.values()) + 4
        while True:
            u, v = v, self._succ(v, u)
            if (u, v) == start:
                return walk
            walk.append((u, v))
            if len(walk) > guard:
                raise AssertionError("face trace failed to close")

    def _corner_is_up(self, p: int, arrival: Vertex) -> bool:
        # the corner entered via `arrival` lies above the spine iff `arrival`
        # sits in the stretch of sigma_p from the west neighbor to the east one
        west = p - 1 if p > 0 else _LEFT
        east = p + 1 if p + 1 < self.n else _RIGHT
        cycle = self.sigma[p]
        i = cycle.index(west)
        while True:
            if cycle[i] == arrival:
                return True
            i = (i + 1) % len(cycle)
            if cycle[i] == east:
                return False

    def face_sides(self) -> list[_FaceSide]:
        """All (face, side) records with at least one exposed position."""
        darts = sorted((u, v) for u in self.sigma for v in self.sigma[u])
        seen: set[tuple[Vertex, Vertex]] = set()
        records = []
        for d0 in darts:
            if d0 in seen:
                continue
            walk = self._trace(d0)
            seen.update(walk)
            for up in (True, False):
                corners: dict[int, tuple[int, Vertex]] = {}
                clean = True
                for idx, (a, b) in zip(range(len(walk)), walk):
                    if 0 <= b < self.n and self._corner_is_up(b, a) == up:
                        if b in corners:
                            clean = False   # defensive: skip odd faces
                            break
                        corners[b] = (idx, a)
                if clean and corners:
                    records.append(
                        _FaceSide(up, tuple(sorted(corners)), corners, walk)
                    )
        return records

    def insert_clause(self, c: Vertex, record: _FaceSide, triple: tuple[int, ...]):
        """Attach a fresh clause vertex at three corners of one face."""
        by_walk = sorted(triple, key=lambda p: record.corners[p][0])
        # the new vertex sees its neighbors in reverse walk order
        self.sigma[c] = [by_walk[2], by_walk[1], by_walk[0]]
        for p in triple:
            _, arrival = record.corners[p]
            cycle = self.sigma[p]
            cycle.insert(cycle.index(arrival) + 1, c)

    def finish(self) -> dict[Vertex, list[Vertex]]:
        """Drop the spine scaffolding; only variable-clause edges remain."""
        final: dict[Vertex, list[Vertex]] = {}
        for v in sorted(self.sigma):
            if v in (_LEFT, _RIGHT):
                continue
            if v < self.n:
                final[v] = [w for w in self.sigma[v] if w >= self.n]
            else:
                final[v] = list(self.sigma[v])
        return final


def generate(seed: int, n: int, m: int, *, max_attempts: int = 400) -> PlanarFormula:
    """Deterministic planar formula: n variables on a spine, m clauses nested
    above and below it without crossings.

    Each clause claims three exposed spine positions on one side of a single
    face, so planarity holds by construction; the emitted rotation system is
    still pushed through validate_embedding before returning.  Raises
    GenerationError when no layout covering every variable is found within
    the attempt budget.
    """
    if n < 3:
        raise GenerationError("need at least 3 variables")
    if m < 1:
        raise GenerationError("need at least 1 clause")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        smap = _SpineMap(n)
        triples: list[tuple[int, ...]] = []
        for j in range(m):
            eligible = [r for r in smap.face_sides() if len(r.positions) >= 3]
            if not eligible:
                break
            record = rng.choice(eligible)
            triple = tuple(sorted(rng.sample(record.positions, 3)))
            smap.insert_clause(n + j, record, triple)
            triples.append(triple)
        if len(triples) < m:
            continue
        used = {p for t in triples for p in t}
        if used != set(range(n)):
            continue

        perm = list(range(n))
        rng.shuffle(perm)
        clauses = []
        for triple in triples:
            lits = sorted((perm[p], rng.random() < 0.5) for p in triple)
            clauses.append(tuple(lits))
        formula = Formula.build(n, clauses)

        final_sigma = smap.finish()
        orders: dict[Vertex, list[Vertex]] = {}
        for p in range(n):
            orders[perm[p]] = final_sigma[p]
        for j in range(m):
            orders[n + j] = [perm[p] for p in final_sigma[n + j]]
        rotation = RotationSystem.build(orders)
        return PlanarFormula.build(formula, rotation)
    raise GenerationError(
        f"no layout found for n={n}, m={m} after {max_attempts} attempts"
    )
