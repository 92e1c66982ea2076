"""
Variable rings and clause hexagons
==================================

A variable gadget is a ring of base blocks.  Its two orientations push every
boundary stub uniformly outward or uniformly inward - a one-bit memory.
A clause gadget is a marked hexagon with three pendant port pairs; once the
boundary fixes how many port pairs point in (the class a_0..a_3), exactly
two completions of the hexagon remain, and they contain a directed cycle
precisely in the starved class a_0.
"""

from oddorient import build_clause_gadget, build_variable_gadget, is_acyclic
from oddorient.reduction import attach_stubs
from oddorient import solver

# -- the two modes of a 2-copy ring -----------------------------------------

ring = build_variable_gadget(2)
stubs = [v for pair in ring.stub_pairs for v in pair]
stubbed, outside = attach_stubs(ring.problem, stubs)
scope = {v for copy in ring.ids for v in copy.values()}
report = solver.enumerate(stubbed, scope=scope)
print("ring orientations:", report.total_valid)
for w in report.witnesses:
    flags = [w.directs(s, o) for s, o in zip(stubs, outside)]
    mode = "all-out (True)" if flags[0] else "all-in (False)"
    print("  boundary:", flags, "->", mode)

# -- clause completions per boundary class -----------------------------------

gadget = build_clause_gadget((True, True, True))
full = solver.enumerate(
    gadget.problem, scope=set(gadget.hexagon),
    witness_cap=None, require_acyclic=False,
)
print(f"\nclause sweep: {full.explored} orientations, "
      f"{full.total_valid} odd on the hexagon")

for inward in range(4):
    wanted = {}
    for p, (v, vh) in enumerate(gadget.port_pairs, start=1):
        w, wh = gadget.ids[f"w{p}"], gadget.ids[f"wh{p}"]
        wanted[(v, w)] = p <= inward
        wanted[(vh, wh)] = p <= inward
    matching = [
        w for w in full.witnesses
        if all(w.directs(*pair) == into for pair, into in wanted.items())
    ]
    kinds = ["cyclic" if not is_acyclic(w.arcs).acyclic else "acyclic"
             for w in matching]
    print(f"  class a_{inward}: {len(matching)} completions, {kinds}")
