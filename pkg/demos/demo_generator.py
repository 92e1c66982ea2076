"""
Seeded planar formulas
======================

The generator lays variables on a spine and fans three-literal clauses into
the faces above and below it, so the clause-variable incidence graph comes
with a genus-0 rotation system by construction.  Same seed, same formula,
byte for byte.
"""

from oddorient import generate, incidence_graph, sat_oracle, validate_embedding
from oddorient.samples import sample_planar_formula, unsat_samples

pf = generate(seed=3, n=6, m=7)
print("clauses:")
for clause in pf.formula.clauses:
    lits = ", ".join(f"{'' if pol else '~'}x{v}" for v, pol in clause)
    print("  (", lits, ")")

report = validate_embedding(incidence_graph(pf.formula), pf.rotation)
print("embedding valid:", report.valid, "- faces:", report.face_count)

witness = sat_oracle(pf.formula)
print("satisfying assignment:", witness)

# reruns are identical
again = generate(seed=3, n=6, m=7)
print("deterministic:", again == pf)

# the frozen five-clause instance used across the test suite
sample = sample_planar_formula()
print("\nsample formula:", len(sample.formula.clauses), "clauses,",
      sample.formula.variable_count, "variables,",
      "sat:", sat_oracle(sample.formula))

# three hand-laid unsatisfiable instances: paired clauses differing in one
# helper literal pin a variable to both truth values at once
for i, upf in enumerate(unsat_samples()):
    n = upf.formula.variable_count
    m = len(upf.formula.clauses)
    print(f"unsat sample {i}: n={n} m={m} sat={sat_oracle(upf.formula)}")
