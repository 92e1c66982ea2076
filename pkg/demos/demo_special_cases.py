"""
Polynomial special cases: forests and degree-2 graphs
=====================================================

Two graph families avoid the exponential search entirely.  On a forest the
orientation is forced leaf-upward, so it is unique when it exists.  On a
degree-<=2 graph every component is a path or a cycle and each is decided
locally.
"""

import random

from oddorient import (
    OrientationProblem,
    PartiallyDirectedGraph,
    solve_degree_two,
    solve_tree,
)
from oddorient import solver

# -- forests: at most one orientation ever ---------------------------------

star = PartiallyDirectedGraph.build(
    [0, 1, 2, 3, 4], [(0, 1), (0, 2), (0, 3), (0, 4)], []
)
problem = OrientationProblem.build(star, odd_set=[0, 1, 2, 3])
result = solve_tree(problem)
print("star:", result.status)
print("witness:", sorted(result.witness.arcs))

# exhaustive sweep confirms uniqueness
report = solver.enumerate(problem)
print("orientations found by sweep:", report.total_valid)

# -- cycles: zero or exactly two ---------------------------------------------

rng = random.Random(7)
for trial in range(3):
    n = rng.randint(4, 7)
    edges = [(v, (v + 1) % n) for v in range(n)]
    g = PartiallyDirectedGraph.build(range(n), edges, [])
    marks = [v for v in range(n) if rng.random() < 0.5]
    p = OrientationProblem.build(g, marks)
    fast = solve_degree_two(p)
    slow = solver.enumerate(p)
    print(f"cycle n={n} |T|={len(marks)}: {fast.status}, "
          f"sweep count={slow.total_valid}")
