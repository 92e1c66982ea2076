"""Decision procedures for acyclic T-odd orientation.

Four solvers with one contract ("is there an acyclic orientation, extending
the fixed arcs, whose odd-in-degree set is exactly the requested one?"):

* ``enumerate``      exhaustive sweep over all 2^k edge directions (oracle),
* ``solve_tree``     leaf peeling on forests (the unique-orientation case),
* ``solve_degree_two``  path/cycle propagation for max degree 2,
* ``solve_exact``    complete backtracking with parity and cycle propagation,

plus ``decide`` (dispatcher) and the two instance transforms
(``apex_transform``, ``normalize_empty_T``).
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from oddorient.pdgraph import (
    Arc,
    Edge,
    GraphError,
    Orientation,
    OrientationProblem,
    PartiallyDirectedGraph,
    Vertex,
    canonical_edge,
    is_T_odd_on,
    is_acyclic,
    parity_feasible,
    reverse_graph,
)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
ABORTED = "aborted"


class BudgetError(RuntimeError):
    """Raised when an exhaustive operation would exceed its configured budget."""


class NormalizeError(GraphError):
    """Raised when the T=∅ normalization cannot be applied."""

    def __init__(self, message: str, vertex: Optional[Vertex] = None):
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class SolveResult:
    """Outcome of a decision procedure.

    ``status`` is one of feasible / infeasible / aborted.  A feasible result
    carries a witness that passes both is_acyclic and full-scope is_T_odd_on.
    ``enumerated`` counts complete solutions encountered (at most 1 unless the
    solver ran in counting mode).
    """

    status: str
    witness: Optional[Orientation] = None
    decisions: int = 0
    propagations: int = 0
    enumerated: int = 0
    detail: str = ""

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


@dataclass(frozen=True)
class EnumerationReport:
    """Exhaustive count of orientations matching the parity constraint on the
    requested scope (and acyclicity unless waived)."""

    total_valid: int
    witnesses: tuple[Orientation, ...]
    explored: int


# -- exhaustive oracle ----------------------------------------------------------


def enumerate(
    problem: OrientationProblem,
    scope: Optional[Iterable[Vertex]] = None,
    witness_cap: Optional[int] = 16,
    *,
    require_acyclic: bool = True,
    max_edges: int = 26,
) -> EnumerationReport:
    """Sweep all 2^k direction choices for the k undirected edges.

    Parity is enforced only on ``scope`` (default: every vertex).  With
    ``require_acyclic=False`` the count ignores directed cycles, which is how
    per-class completion counts are measured.  Witnesses are returned in
    ascending sweep order, at most ``witness_cap`` of them (None = all).

    Raises BudgetError when k exceeds ``max_edges``; a partial count is never
    returned.
    """
    g = problem.graph
    edge_list = sorted(g.edges)
    k = len(edge_list)
    if k > max_edges:
        raise BudgetError(
            f"enumeration over {k} edges exceeds the 2**{max_edges} budget"
        )
    if scope is None:
        scoped = sorted(g.vertices)
    else:
        scoped = sorted(set(scope))
        stray = set(scoped) - g.vertices
        if stray:
            raise GraphError(f"scope contains non-vertices: {sorted(stray)}")

    # bit i set means edge_list[i] runs lo -> hi
    inc = {v: 0 for v in scoped}
    lo_count = {v: 0 for v in scoped}
    for i in range(k):
        u, v = edge_list[i]
        if u in inc:
            inc[u] |= 1 << i
            lo_count[u] += 1
        if v in inc:
            inc[v] |= 1 << i
    fixed_in = {v: 0 for v in scoped}
    for _, h in g.arcs:
        if h in fixed_in:
            fixed_in[h] += 1

    inc_arr = np.array([inc[v] for v in scoped], dtype=np.uint64)
    # popcount(mask & inc_v) must equal this parity for v's in-degree to match
    tgt_arr = np.array(
        [
            ((v in problem.odd_set) ^ (lo_count[v] & 1) ^ (fixed_in[v] & 1)) & 1
            for v in scoped
        ],
        dtype=np.uint64,
    )

    explored = 1 << k
    fixed_arcs = tuple(g.arcs)
    total_valid = 0
    witnesses: list[Orientation] = []
    one = np.uint64(1)
    chunk = 1 << 20
    for start in range(0, explored, chunk):
        stop = min(start + chunk, explored)
        masks = np.arange(start, stop, dtype=np.uint64)
        ok = np.ones(masks.shape, dtype=bool)
        for j in range(len(scoped)):
            ok &= (np.bitwise_count(masks & inc_arr[j]) & one) == tgt_arr[j]
        for m in masks[ok]:
            m = int(m)
            chosen = [
                edge_list[i] if (m >> i) & 1 else (edge_list[i][1], edge_list[i][0])
                for i in range(k)
            ]
            if require_acyclic and not is_acyclic(chosen + list(fixed_arcs)).acyclic:
                continue
            total_valid += 1
            if witness_cap is None or len(witnesses) < witness_cap:
                witnesses.append(Orientation(arcs=frozenset(chosen) | g.arcs))
    return EnumerationReport(
        total_valid=total_valid, witnesses=tuple(witnesses), explored=explored
    )


# -- structure helpers ----------------------------------------------------------


def underlying_is_forest(graph: PartiallyDirectedGraph) -> bool:
    """True when edges and arcs together (direction ignored) contain no cycle."""
    parent = {v: v for v in graph.vertices}

    def find(x: Vertex) -> Vertex:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in sorted(graph.links()):
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def max_degree(graph: PartiallyDirectedGraph) -> int:
    deg = {v: 0 for v in graph.vertices}
    for u, v in graph.links():
        deg[u] += 1
        deg[v] += 1
    return max(deg.values(), default=0)


# -- forest solver ---------------------------------------------------------------


def solve_tree(problem: OrientationProblem) -> SolveResult:
    """Leaf peeling: each leaf's parity demand forces its only link.

    On a forest the T-odd orientation is unique when it exists, and any
    orientation of a forest is acyclic, so no cycle checking is needed.
    """
    g = problem.graph
    if not underlying_is_forest(g):
        raise GraphError("solve_tree requires a forest (underlying links acyclic)")

    # link model: id -> (endpoints, fixed direction or None)
    link_ends: list[tuple[Vertex, Vertex]] = []
    link_dir: list[Optional[Arc]] = []
    at: dict[Vertex, set[int]] = {v: set() for v in g.vertices}
    for u, v in sorted(g.edges):
        at[u].add(len(link_ends))
        at[v].add(len(link_ends))
        link_ends.append((u, v))
        link_dir.append(None)
    for t, h in sorted(g.arcs):
        at[t].add(len(link_ends))
        at[h].add(len(link_ends))
        link_ends.append((t, h))
        link_dir.append((t, h))

    in_par = {v: 0 for v in g.vertices}
    target = {v: v in problem.odd_set for v in g.vertices}
    chosen: dict[int, Arc] = {}
    removed = [False] * len(link_ends)
    degree = {v: len(at[v]) for v in g.vertices}

    for v in g.vertices:
        if degree[v] == 0 and target[v]:
            return SolveResult(
                INFEASIBLE, detail=f"isolated vertex {v} cannot have odd in-degree"
            )

    ready = [v for v in g.vertices if degree[v] == 1]
    heapq.heapify(ready)
    propagations = 0
    while ready:
        v = heapq.heappop(ready)
        if degree[v] != 1:
            continue
        li = next(i for i in at[v] if not removed[i])
        a, b = link_ends[li]
        other = b if a == v else a
        need_in = in_par[v] != target[v]
        fixed = link_dir[li]
        if fixed is None:
            arc = (other, v) if need_in else (v, other)
        else:
            if (fixed[1] == v) != need_in:
                return SolveResult(
                    INFEASIBLE,
                    propagations=propagations,
                    detail=f"fixed arc {fixed[0]}->{fixed[1]} contradicts parity at {v}",
                )
            arc = fixed
        chosen[li] = arc
        removed[li] = True
        in_par[arc[1]] ^= 1
        propagations += 1
        for x in (a, b):
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(ready, x)
            elif degree[x] == 0 and in_par[x] != target[x]:
                return SolveResult(
                    INFEASIBLE,
                    propagations=propagations,
                    detail=f"parity cannot be met at vertex {x}",
                )

    directed = [chosen[i] for i in range(len(link_ends)) if link_dir[i] is None]
    witness = Orientation.of(g, directed)
    _check_witness(problem, witness)
    return SolveResult(
        FEASIBLE, witness=witness, propagations=propagations, enumerated=1
    )


# -- max-degree-2 solver -----------------------------------------------------------


def solve_degree_two(problem: OrientationProblem) -> SolveResult:
    """Solve instances whose every vertex has degree at most 2.

    Path components reduce to the forest solver.  Each cycle component is
    solved by seeding its lowest link in both directions, propagating the
    parity demand around the cycle, discarding seeds inconsistent with fixed
    arcs, and rejecting circularly directed candidates.
    """
    g = problem.graph
    if max_degree(g) > 2:
        raise GraphError("solve_degree_two requires maximum degree 2")

    adj: dict[Vertex, list[Vertex]] = g.adjacency()
    seen: set[Vertex] = set()
    directed: list[Arc] = []
    propagations = 0

    link_kind: dict[Edge, Optional[Arc]] = {}
    for u, v in g.edges:
        link_kind[canonical_edge(u, v)] = None
    for t, h in g.arcs:
        link_kind[canonical_edge(t, h)] = (t, h)

    path_vertices: set[Vertex] = set()
    for v0 in sorted(g.vertices):
        if v0 in seen:
            continue
        comp = {v0}
        stack = [v0]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        if all(len(adj[x]) == 2 for x in comp):
            outcome = _solve_cycle_component(problem, adj, link_kind, comp)
            if isinstance(outcome, SolveResult):
                return outcome
            arcs, steps = outcome
            directed.extend(arcs)
            propagations += steps
        else:
            path_vertices |= comp

    if path_vertices:
        sub = PartiallyDirectedGraph(
            vertices=frozenset(path_vertices),
            edges=frozenset(
                e for e in g.edges if e[0] in path_vertices and e[1] in path_vertices
            ),
            arcs=frozenset(
                a for a in g.arcs if a[0] in path_vertices and a[1] in path_vertices
            ),
        )
        sub_result = solve_tree(
            OrientationProblem(sub, problem.odd_set & frozenset(path_vertices))
        )
        propagations += sub_result.propagations
        if not sub_result.feasible:
            return SolveResult(
                sub_result.status,
                propagations=propagations,
                detail=sub_result.detail,
            )
        directed.extend(a for a in sub_result.witness.arcs if a not in sub.arcs)

    witness = Orientation.of(g, directed)
    _check_witness(problem, witness)
    return SolveResult(
        FEASIBLE, witness=witness, propagations=propagations, enumerated=1
    )


def _solve_cycle_component(problem, adj, link_kind, comp):
    """Return (chosen edge arcs, steps) for one cycle component, or an
    infeasible SolveResult."""
    target = {v: v in problem.odd_set for v in comp}
    c0 = min(comp)
    ring = [c0, min(adj[c0])]
    while True:
        prev, cur = ring[-2], ring[-1]
        nxt = next(y for y in adj[cur] if y != prev)
        if nxt == c0:
            break
        ring.append(nxt)
    r = len(ring)
    links = [link_kind[canonical_edge(ring[i], ring[(i + 1) % r])] for i in range(r)]

    seed_fixed = links[0]
    if seed_fixed is None:
        # toward the lower endpoint first
        lo, hi = canonical_edge(ring[0], ring[1])
        seeds = [(hi, lo), (lo, hi)]
    else:
        seeds = [seed_fixed]

    steps = 0
    for seed in seeds:
        arcs: list[Arc] = [seed]
        ok = True
        for i in range(1, r):
            v = ring[i]
            prev_in = arcs[i - 1][1] == v
            need_in = target[v] != prev_in
            nxt = ring[(i + 1) % r]
            want = (nxt, v) if need_in else (v, nxt)
            fixed = links[i]
            steps += 1
            if fixed is not None and fixed != want:
                ok = False
                break
            arcs.append(want)
        if not ok:
            continue
        # wrap-around parity at the seed vertex
        v = ring[0]
        in_deg = (arcs[0][1] == v) + (arcs[-1][1] == v)
        if (in_deg % 2 == 1) != target[v]:
            continue
        forward = sum(1 for i in range(r) if arcs[i][0] == ring[i])
        if forward in (0, r):
            continue   # circularly directed
        chosen = [arcs[i] for i in range(r) if links[i] is None]
        return chosen, steps
    return SolveResult(
        INFEASIBLE,
        propagations=steps,
        detail=f"cycle component at {c0} admits no acyclic T-odd orientation",
    )


# -- complete backtracking solver ----------------------------------------------------


class _ExactSearch:
    """Backtracking over undirected edges with parity forcing, cycle forcing,
    and a cycle-component probe.

    Parity forcing: a scoped vertex with exactly one undecided link and a
    known residue forces that link.  Cycle forcing: at quiescence, an edge
    with one direction closing a directed cycle among decided arcs is forced
    the other way (both directions closing is a conflict).  The probe tests
    both directions of one edge in each pure cycle component of the undecided
    subgraph; if both fail the state is conflicting, if one fails the other is
    forced.  All three rules are sound, so exhausted search remains a proof of
    infeasibility.
    """

    def __init__(self, problem: OrientationProblem, budget: int, scope, count_all: bool):
        g = problem.graph
        self.graph = g
        self.problem = problem
        self.budget = budget
        self.count_all = count_all

        self.verts = sorted(g.vertices)
        index = {v: i for i, v in zip(range(len(self.verts)), self.verts)}
        self.n = len(self.verts)
        edge_list = sorted(g.edges)
        self.edge_list = edge_list
        self.m = len(edge_list)
        self.ends = [(index[u], index[v]) for u, v in edge_list]

        if scope is None:
            self.scoped = [True] * self.n
        else:
            scoped_set = set(scope)
            stray = scoped_set - g.vertices
            if stray:
                raise GraphError(f"scope contains non-vertices: {sorted(stray)}")
            self.scoped = [v in scoped_set for v in self.verts]
        self.target = [v in problem.odd_set for v in self.verts]

        self.out_adj: list[set[int]] = [set() for _ in range(self.n)]
        self.in_par = [0] * self.n
        for t, h in g.arcs:
            self.out_adj[index[t]].add(index[h])
            self.in_par[index[h]] ^= 1

        self.und = [0] * self.n
        self.edge_at: list[list[int]] = [[] for _ in range(self.n)]
        for i in range(self.m):
            u, v = self.ends[i]
            self.und[u] += 1
            self.und[v] += 1
            self.edge_at[u].append(i)
            self.edge_at[v].append(i)

        self.decided: list[Optional[Arc]] = [None] * self.m
        self.undecided_total = self.m
        self.trail: list[tuple[int, int, int]] = []
        self.force_q: deque[int] = deque()
        self.decisions = 0
        self.propagations = 0
        self.enumerated = 0
        self.first_witness: Optional[Orientation] = None

    # -- state updates ------------------------------------------------------

    def closes_cycle(self, t: int, h: int) -> bool:
        # arc t->h closes a cycle iff t is reachable from h
        seen = {h}
        stack = [h]
        while stack:
            x = stack.pop()
            if x == t:
                return True
            for y in self.out_adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def apply_arc(self, e: int, t: int, h: int, decision: bool = False) -> bool:
        if self.closes_cycle(t, h):
            return False
        if not decision:
            self.propagations += 1
        self.decided[e] = (t, h)
        self.out_adj[t].add(h)
        self.in_par[h] ^= 1
        self.und[t] -= 1
        self.und[h] -= 1
        self.undecided_total -= 1
        self.trail.append((e, t, h))
        for x in (t, h):
            if not self.scoped[x]:
                continue
            if self.und[x] == 0 and self.in_par[x] != self.target[x]:
                return False
            if self.und[x] == 1:
                self.force_q.append(x)
        return True

    def undo_to(self, mark: int) -> None:
        while len(self.trail) > mark:
            e, t, h = self.trail.pop()
            self.decided[e] = None
            self.out_adj[t].discard(h)
            self.in_par[h] ^= 1
            self.und[t] += 1
            self.und[h] += 1
            self.undecided_total += 1

    # -- propagation rules ----------------------------------------------------

    def propagate(self) -> bool:
        while self.force_q:
            x = self.force_q.popleft()
            if self.und[x] != 1:
                continue
            e = next(i for i in self.edge_at[x] if self.decided[i] is None)
            u, v = self.ends[e]
            other = v if u == x else u
            need_in = self.in_par[x] != self.target[x]
            t, h = (other, x) if need_in else (x, other)
            if not self.apply_arc(e, t, h):
                return False
        return True

    def _closure(self) -> list[int]:
        # reachability bitmasks over decided arcs (always a DAG here)
        indeg = [0] * self.n
        for x in range(self.n):
            for y in self.out_adj[x]:
                indeg[y] += 1
        order = [x for x in range(self.n) if indeg[x] == 0]
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for y in self.out_adj[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    order.append(y)
        reach = [0] * self.n
        for x in reversed(order):
            r = 1 << x
            for y in self.out_adj[x]:
                r |= reach[y]
            reach[x] = r
        return reach

    def cycle_force_pass(self) -> tuple[bool, bool]:
        """One scan of the cycle-forcing rule; returns (changed, ok).

        The closure may go stale as forcings are applied; stale reachability
        only under-approximates, so every forcing it justifies stays valid.
        """
        reach = self._closure()
        changed = False
        for e in range(self.m):
            if self.decided[e] is not None:
                continue
            u, v = self.ends[e]
            uv_closes = (reach[v] >> u) & 1
            vu_closes = (reach[u] >> v) & 1
            if uv_closes and vu_closes:
                return changed, False
            if uv_closes or vu_closes:
                t, h = (v, u) if uv_closes else (u, v)
                if not self.apply_arc(e, t, h):
                    return changed, False
                if not self.propagate():
                    return changed, False
                changed = True
        return changed, True

    def _pure_cycle_reps(self) -> list[int]:
        """Lowest edge id of each undecided component whose vertices all have
        exactly two undecided links (such a component is a single cycle)."""
        seen: set[int] = set()
        reps: list[int] = []
        for e in range(self.m):
            if self.decided[e] is not None:
                continue
            u, _ = self.ends[e]
            if u in seen:
                continue
            comp_v = {u}
            comp_e: set[int] = set()
            stack = [u]
            pure = True
            while stack:
                x = stack.pop()
                live = [i for i in self.edge_at[x] if self.decided[i] is None]
                if len(live) != 2:
                    pure = False
                for i in live:
                    comp_e.add(i)
                    a, b = self.ends[i]
                    y = b if a == x else a
                    if y not in comp_v:
                        comp_v.add(y)
                        stack.append(y)
            seen |= comp_v
            if pure and comp_e:
                reps.append(min(comp_e))
        return reps

    def probe_pass(self) -> tuple[bool, bool]:
        """Test both directions of one representative edge per pure cycle
        component; force the survivor when exactly one direction works."""
        changed = False
        for e in self._pure_cycle_reps():
            if self.decided[e] is not None:
                continue
            u, v = self.ends[e]
            lo, hi = (u, v) if u < v else (v, u)
            outcomes = []
            mark = len(self.trail)
            for t, h in ((hi, lo), (lo, hi)):
                ok = self.apply_arc(e, t, h) and self.propagate()
                self.undo_to(mark)
                self.force_q.clear()
                outcomes.append(ok)
            if not outcomes[0] and not outcomes[1]:
                return changed, False
            if outcomes[0] != outcomes[1]:
                t, h = (hi, lo) if outcomes[0] else (lo, hi)
                if not (self.apply_arc(e, t, h) and self.propagate()):
                    return changed, False
                changed = True
        return changed, True

    def quiesce(self) -> bool:
        while True:
            if not self.propagate():
                return False
            changed, ok = self.cycle_force_pass()
            if not ok:
                return False
            if changed:
                continue
            changed, ok = self.probe_pass()
            if not ok:
                return False
            if not changed:
                return True

    # -- search ------------------------------------------------------------

    def pick_edge(self) -> int:
        best = None
        best_key = None
        for e in range(self.m):
            if self.decided[e] is not None:
                continue
            u, v = self.ends[e]
            key = (min(self.und[u], self.und[v]), e)
            if best_key is None or key < best_key:
                best, best_key = e, key
        return best

    def build_witness(self) -> Orientation:
        directed = [
            (self.verts[t], self.verts[h])
            for e, (t, h) in zip(range(self.m), self.decided)
        ]
        return Orientation.of(self.graph, directed)

    def result(self, status: str, detail: str = "") -> SolveResult:
        return SolveResult(
            status,
            witness=self.first_witness if status == FEASIBLE else None,
            decisions=self.decisions,
            propagations=self.propagations,
            enumerated=self.enumerated,
            detail=detail,
        )

    def run(self) -> SolveResult:
        if not is_acyclic(self.graph.arcs).acyclic:
            return self.result(INFEASIBLE, "fixed arcs contain a directed cycle")
        for x in range(self.n):
            if not self.scoped[x]:
                continue
            if self.und[x] == 0 and self.in_par[x] != self.target[x]:
                return self.result(
                    INFEASIBLE, f"parity cannot be met at vertex {self.verts[x]}"
                )
            if self.und[x] == 1:
                self.force_q.append(x)
        ok = self.quiesce()
        frames: list[tuple[int, list[Arc], int]] = []
        while True:
            if ok and self.undecided_total == 0:
                self.enumerated += 1
                if self.first_witness is None:
                    self.first_witness = self.build_witness()
                if not self.count_all:
                    return self.result(FEASIBLE)
                ok = False   # keep exhausting
            if ok:
                if self.decisions >= self.budget:
                    return self.result(ABORTED, "decision budget exceeded")
                e = self.pick_edge()
                u, v = self.ends[e]
                lo, hi = (u, v) if u < v else (v, u)
                frames.append((e, [(lo, hi)], len(self.trail)))
                self.decisions += 1
                ok = self.apply_arc(e, hi, lo, decision=True) and self.quiesce()
            else:
                while frames:
                    e, alts, mark = frames[-1]
                    self.undo_to(mark)
                    self.force_q.clear()
                    if alts:
                        t, h = alts.pop()
                        if self.decisions >= self.budget:
                            return self.result(ABORTED, "decision budget exceeded")
                        self.decisions += 1
                        ok = self.apply_arc(e, t, h, decision=True) and self.quiesce()
                        break
                    frames.pop()
                else:
                    if self.count_all and self.enumerated:
                        return self.result(FEASIBLE)
                    return self.result(INFEASIBLE, "search space exhausted")


def solve_exact(
    problem: OrientationProblem,
    budget: int = 10_000_000,
    *,
    scope: Optional[Iterable[Vertex]] = None,
    count_all: bool = False,
) -> SolveResult:
    """Complete backtracking search; infeasible answers are proofs.

    ``budget`` caps branch decisions; overruns return status "aborted", never
    a wrong answer.  ``scope`` restricts the parity constraint (full vertex
    set by default).  With ``count_all`` the search exhausts the space and
    reports the number of solutions in ``enumerated``.
    """
    search = _ExactSearch(problem, budget, scope, count_all)
    outcome = search.run()
    if outcome.feasible and scope is None:
        _check_witness(problem, outcome.witness)
    return outcome


def decide(problem: OrientationProblem, *, budget: int = 10_000_000) -> SolveResult:
    """Dispatcher: parity gate, then the cheapest applicable solver."""
    if not parity_feasible(problem):
        return SolveResult(INFEASIBLE, detail="parity: |E|+|A|+|T| is odd")
    if underlying_is_forest(problem.graph):
        return solve_tree(problem)
    if max_degree(problem.graph) <= 2:
        return solve_degree_two(problem)
    return solve_exact(problem, budget=budget)


def _check_witness(problem: OrientationProblem, witness: Orientation) -> None:
    # solvers never hand back an unverified witness
    if not is_acyclic(witness.arcs).acyclic:
        raise RuntimeError("solver produced a cyclic witness")
    if not is_T_odd_on(problem, witness):
        raise RuntimeError("solver produced a parity-violating witness")


# -- apex transform -----------------------------------------------------------------


def apex_transform(problem: OrientationProblem) -> OrientationProblem:
    """Join one new apex vertex to every vertex outside the odd set; the
    transformed instance demands odd in-degree at every original vertex.

    The input must be all-undirected.  The apex is the only vertex of the
    result allowed even in-degree.
    """
    g = problem.graph
    if g.arcs:
        raise GraphError("apex transform requires an all-undirected instance")
    apex = max(g.vertices) + 1 if g.vertices else 0
    new_edges = set(g.edges)
    for v in g.vertices - problem.odd_set:
        new_edges.add(canonical_edge(apex, v))
    g2 = PartiallyDirectedGraph(
        vertices=g.vertices | {apex},
        edges=frozenset(new_edges),
        arcs=frozenset(),
    )
    return OrientationProblem(graph=g2, odd_set=g.vertices)


def apex_feasible_variant(
    problem: OrientationProblem, *, budget: int = 10_000_000
) -> SolveResult:
    """Alternative reading of the apex equivalence: the transformed graph is
    feasible if SOME vertex w can serve as the unique even one.  Tries every
    w in ascending order and reports the first feasible choice."""
    g2 = apex_transform(problem).graph
    last = SolveResult(INFEASIBLE, detail="no vertex admits an all-but-one odd set")
    for w in sorted(g2.vertices):
        outcome = decide(
            OrientationProblem(g2, g2.vertices - {w}), budget=budget
        )
        if outcome.feasible:
            return SolveResult(
                FEASIBLE,
                witness=outcome.witness,
                decisions=outcome.decisions,
                propagations=outcome.propagations,
                enumerated=outcome.enumerated,
                detail=f"feasible with even vertex {w}",
            )
        if outcome.status == ABORTED:
            return outcome
    return last


# -- T = ∅ normalization ---------------------------------------------------------------


@dataclass(frozen=True)
class ContractionStep:
    """One degree-2 vertex replaced by a single link between its neighbors."""

    vertex: Vertex
    left: Vertex
    right: Vertex


@dataclass(frozen=True)
class NormalizeBackMap:
    """Replays a witness of the normalized instance back onto the original.

    Restoration first reverses every arc (undoing the final flip), then
    expands the contractions newest-first: the direction of each merged link
    determines the pass-through directions of the two links it replaced.
    """

    steps: tuple[ContractionStep, ...]

    def restore(self, orientation: Orientation) -> Orientation:
        arcs = {(h, t) for t, h in orientation.arcs}
        for step in self.steps[::-1]:
            a, b, v = step.left, step.right, step.vertex
            if (a, b) in arcs:
                arcs.remove((a, b))
                arcs.add((a, v))
                arcs.add((v, b))
            elif (b, a) in arcs:
                arcs.remove((b, a))
                arcs.add((b, v))
                arcs.add((v, a))
            else:
                raise GraphError(
                    f"witness does not cover the merged link {a}-{b}"
                )
        return Orientation(arcs=frozenset(arcs))


def normalize_empty_T(
    problem: OrientationProblem,
) -> tuple[OrientationProblem, NormalizeBackMap]:
    """Rewrite an instance into an equivalent one with an empty odd set.

    Degree-2 vertices of the odd set are contracted away in ascending id
    order (each must pass its single in-arc through, so its two links merge
    into one).  The surviving odd set must then coincide with the odd-degree
    vertex set, at which point reversing every fixed arc yields an instance
    whose T-odd orientations are exactly the flips of the original's: the
    returned problem has odd_set = ∅ and the back-map restores witnesses.
    """
    g = problem.graph
    links: dict[Edge, Optional[Arc]] = {}
    for u, v in g.edges:
        links[canonical_edge(u, v)] = None
    for t, h in g.arcs:
        links[canonical_edge(t, h)] = (t, h)
    adj: dict[Vertex, set[Vertex]] = {v: set() for v in g.vertices}
    for u, v in links:
        adj[u].add(v)
        adj[v].add(u)

    remaining = set(g.vertices)
    odd_left = set(problem.odd_set)
    steps: list[ContractionStep] = []
    for v in sorted(problem.odd_set):
        if len(adj[v]) != 2:
            continue
        a, b = sorted(adj[v])
        pair = canonical_edge(a, b)
        if pair in links:
            raise NormalizeError(
                f"contracting {v} would create a parallel link {a}-{b}", vertex=v
            )
        la = links.pop(canonical_edge(a, v))
        lb = links.pop(canonical_edge(v, b))
        # the through-direction: at most one orientation lets v pass its
        # single in-arc through, so fixed directions must compose
        into_v = {a: None, b: None}
        if la is not None:
            into_v[a] = la[1] == v
        if lb is not None:
            into_v[b] = lb[1] == v
        if into_v[a] is not None and into_v[b] is not None and into_v[a] == into_v[b]:
            raise NormalizeError(
                f"arcs at {v} do not compose (both point "
                f"{'in' if into_v[a] else 'out'})",
                vertex=v,
            )
        if into_v[a] is None and into_v[b] is None:
            merged: Optional[Arc] = None
        elif into_v[a] is True or into_v[b] is False:
            merged = (a, b)
        else:
            merged = (b, a)
        links[pair] = merged
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
        del adj[v]
        remaining.discard(v)
        odd_left.discard(v)
        steps.append(ContractionStep(vertex=v, left=a, right=b))

    degree = {v: 0 for v in remaining}
    for u, v in links:
        degree[u] += 1
        degree[v] += 1
    odd_degree = {v for v in remaining if degree[v] % 2 == 1}
    if odd_left != odd_degree:
        off = sorted(odd_left ^ odd_degree)
        raise NormalizeError(
            "after contraction the odd set must equal the odd-degree set "
            f"(mismatch at {off[:4]})",
            vertex=off[0] if off else None,
        )

    contracted = PartiallyDirectedGraph(
        vertices=frozenset(remaining),
        edges=frozenset(p for p, d in links.items() if d is None),
        arcs=frozenset(d for d in links.values() if d is not None),
    )
    normalized = OrientationProblem(
        graph=reverse_graph(contracted), odd_set=frozenset()
    )
    return normalized, NormalizeBackMap(steps=tuple(steps))
