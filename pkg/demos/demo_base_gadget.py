"""
The rigid building block
========================

The base gadget is a 10-vertex block with 8 undirected edges, 4 fixed arcs,
and every vertex but one carrying the odd-parity mark.  Hang a fresh stub
off each of its four outward vertices and sweep all 2^12 direction choices:
exactly two survive, and they are full flips of each other.  That rigidity
is what the larger constructions lean on.
"""

from oddorient import build_base_gadget
from oddorient.reduction import attach_stubs
from oddorient import solver

gadget = build_base_gadget()
print("vertices:", sorted(gadget.ids.items()))

boundary = [gadget.ids[name] for name in ("u", "uh", "s", "t")]
stubbed, outside = attach_stubs(gadget.problem, boundary)

report = solver.enumerate(stubbed, scope=set(gadget.ids.values()))
print(f"\nswept {report.explored} orientations, "
      f"{report.total_valid} acyclic and odd on the block")

first, second = report.witnesses
core_edges = stubbed.graph.edges - {
    tuple(sorted((b, o))) for b, o in zip(boundary, outside)
}
for u, v in sorted(core_edges):
    d1 = "->" if first.directs(u, v) else "<-"
    d2 = "->" if second.directs(u, v) else "<-"
    print(f"  {u} {d1} {v}    {u} {d2} {v}")
print("(the two columns disagree on every edge: mutual flips)")
