"""Acyclic orientations of partially directed graphs under in-degree parity
constraints: exact and special-case solvers, instance transforms, and a
planar-formula reduction with verification oracles."""

from oddorient.io import (
    FormatError,
    InstanceBundle,
    export_dot,
    read_formula,
    read_instance,
    read_witness,
    write_formula,
    write_instance,
    write_witness,
)
from oddorient.p3sat import (
    Formula,
    FormulaError,
    GenerationError,
    PlanarFormula,
    RotationSystem,
    generate,
    incidence_graph,
    sat_oracle,
    validate_embedding,
)
from oddorient.pdgraph import (
    AcyclicityReport,
    BoundaryView,
    GraphError,
    Orientation,
    OrientationProblem,
    PartiallyDirectedGraph,
    boundary,
    canonical_edge,
    extends,
    flip_all,
    gamma_subgraph,
    is_T_odd_on,
    is_acyclic,
    is_uniform,
    parity_feasible,
    restrict,
    validate,
)
from oddorient.reduction import (
    GadgetError,
    GadgetRegistry,
    Reduction,
    assemble,
    assignment_from_orientation,
    build_base_gadget,
    build_clause_gadget,
    build_variable_gadget,
    clause_boundary_class,
    orientation_from_assignment,
    structural_check,
    verify_equivalence,
)
from oddorient.samples import sample_planar_formula, unsat_samples
from oddorient.solver import (
    BudgetError,
    NormalizeError,
    SolveResult,
    apex_feasible_variant,
    apex_transform,
    decide,
    normalize_empty_T,
    solve_degree_two,
    solve_exact,
    solve_tree,
)

__version__ = "0.1.0"

__all__ = [
    "AcyclicityReport",
    "BoundaryView",
    "BudgetError",
    "FormatError",
    "Formula",
    "FormulaError",
    "GadgetError",
    "GadgetRegistry",
    "GenerationError",
    "GraphError",
    "InstanceBundle",
    "NormalizeError",
    "Orientation",
    "OrientationProblem",
    "PartiallyDirectedGraph",
    "PlanarFormula",
    "Reduction",
    "RotationSystem",
    "SolveResult",
    "apex_feasible_variant",
    "apex_transform",
    "assemble",
    "assignment_from_orientation",
    "boundary",
    "build_base_gadget",
    "build_clause_gadget",
    "build_variable_gadget",
    "canonical_edge",
    "clause_boundary_class",
    "decide",
    "export_dot",
    "extends",
    "flip_all",
    "gamma_subgraph",
    "generate",
    "incidence_graph",
    "is_T_odd_on",
    "is_acyclic",
    "is_uniform",
    "normalize_empty_T",
    "orientation_from_assignment",
    "parity_feasible",
    "read_formula",
    "read_instance",
    "read_witness",
    "restrict",
    "sample_planar_formula",
    "sat_oracle",
    "solve_degree_two",
    "solve_exact",
    "solve_tree",
    "structural_check",
    "unsat_samples",
    "validate",
    "validate_embedding",
    "verify_equivalence",
    "write_formula",
    "write_instance",
    "write_witness",
]
