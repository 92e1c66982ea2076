"""
From formula to orientation instance and back
=============================================

Assembling an instance replaces each variable vertex of the incidence graph
with a ring gadget (one block per occurrence) and each clause vertex with a
hexagon gadget, stitched along the embedding.  Satisfying assignments and
acyclic odd orientations then translate into each other mechanically.
"""

from oddorient import (
    assemble,
    assignment_from_orientation,
    clause_boundary_class,
    decide,
    orientation_from_assignment,
    sat_oracle,
    structural_check,
    verify_equivalence,
)
from oddorient.samples import sample_planar_formula, unsat_samples

planar = sample_planar_formula()
red = assemble(planar)

check = structural_check(red)
print(f"artifact: {check.vertices} vertices, {check.edges} edges, "
      f"{check.arcs} arcs, {check.marked} marked, {check.faces} faces")
print("structural checks:", "ok" if check.ok else check.problems)

# assignment -> orientation: clause hexagons complete without cycles exactly
# because every clause has a satisfied literal feeding them in-degree
assignment = sat_oracle(planar.formula)
orientation = orientation_from_assignment(red, assignment)
print("\nassignment:", assignment)
for j in range(len(red.formula.clauses)):
    print(f"  clause {j}: boundary class a_{clause_boundary_class(red, orientation, j)}")

# orientation -> assignment: read each ring's boundary direction
print("read back:", assignment_from_orientation(red, orientation))

# the solver agrees end to end, on satisfiable and unsatisfiable inputs
print("\nsolver on the artifact:", decide(red.problem).status)
for i, upf in enumerate(unsat_samples()):
    out = verify_equivalence(upf)
    print(f"unsat sample {i}: sat={out['sat']} "
          f"artifact feasible={out['orientation_feasible']} agree={out['agree']}")
