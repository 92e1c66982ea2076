"""
Instance transforms: apex and the empty odd set
===============================================

Two rewrites connect differently-shaped instances.  The apex transform joins
a new vertex to everything outside T, turning "odd exactly on T" into "odd
everywhere but the apex".  The T=empty normalization contracts marked
degree-2 vertices and flips all arcs, producing an instance with no parity
marks at all whose solutions replay onto the original.
"""

from oddorient import (
    OrientationProblem,
    PartiallyDirectedGraph,
    apex_transform,
    decide,
    is_T_odd_on,
    is_acyclic,
    normalize_empty_T,
)

# -- apex ---------------------------------------------------------------------

square = PartiallyDirectedGraph.build(
    [0, 1, 2, 3], [(0, 1), (1, 2), (2, 3), (0, 3)], []
)
problem = OrientationProblem.build(square, odd_set=[0, 2])
apexed = apex_transform(problem)
print("original:", decide(problem).status)
print("apexed:  ", decide(apexed).status,
      f"({len(apexed.graph.vertices)} vertices, "
      f"{len(apexed.odd_set)} marked)")

# -- normalization ------------------------------------------------------------

# a 6-cycle with two marked degree-2 vertices contracts down to a 4-cycle
six = PartiallyDirectedGraph.build(
    range(6), [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)], []
)
marked = OrientationProblem.build(six, odd_set=[1, 4])
normalized, back = normalize_empty_T(marked)
print("\ncontractions:", len(back.steps))
print("normalized:", sorted(normalized.graph.edges),
      "with |T| =", len(normalized.odd_set))

result = decide(normalized)
lifted = back.restore(result.witness)
print("lifted witness valid:",
      is_T_odd_on(marked, lifted) and is_acyclic(lifted.arcs).acyclic)
print("lifted arcs:", sorted(lifted.arcs))
