"""A small worked instance shared by tests and demos.

Five clauses over five variables; the incidence graph (10 vertices, 15
edges) is planar with seven faces.  The rotation system below is the unique
genus-0 completion once the cyclic orders at clause 3 and variable 4 are
fixed; it was found by exhaustive search over the remaining orders and is
frozen here, with the Euler validator re-checking it on every build.
"""

from __future__ import annotations

from oddorient.p3sat import Formula, PlanarFormula, RotationSystem

_CLAUSES = (
    ((0, True), (1, True), (2, True)),
    ((0, False), (1, True), (4, True)),
    ((1, True), (3, False), (4, True)),
    ((1, False), (3, True), (4, True)),
    ((1, False), (2, False), (4, True)),
)

_ROTATION = {
    0: (5, 6),
    1: (5, 6, 8, 7, 9),
    2: (5, 9),
    3: (7, 8),
    4: (6, 9, 7, 8),
    5: (0, 1, 2),
    6: (0, 4, 1),
    7: (1, 3, 4),
    8: (1, 4, 3),
    9: (1, 4, 2),
}


def sample_formula() -> Formula:
    """The five-clause formula; variables 0..4, clause vertices 5..9."""
    return Formula.build(5, _CLAUSES)


def sample_rotation() -> RotationSystem:
    return RotationSystem.build(_ROTATION)


def sample_planar_formula() -> PlanarFormula:
    """The formula with its frozen embedding, revalidated on construction."""
    return PlanarFormula.build(sample_formula(), sample_rotation())


# Three unsatisfiable planar instances.  Each one pins a variable to both
# truth values through paired clauses that differ only in one helper literal:
# (x|a|b) and (x|a|~b) together force x|a, and stacking the four sign
# patterns over two helpers forces x outright.  Doing that on both sides of
# x (or of a pinched middle pair) leaves no assignment.  The embeddings were
# laid out on a spine and are revalidated on construction.

_UNSAT = (
    (
        7,
        (
            ((0, True), (1, True), (3, True)),
            ((1, False), (2, True), (3, True)),
            ((3, False), (4, True), (5, True)),
            ((3, False), (5, False), (6, True)),
            ((0, False), (1, True), (3, True)),
            ((1, False), (2, False), (3, True)),
            ((3, False), (4, False), (5, True)),
            ((3, False), (5, False), (6, False)),
        ),
        {
            0: (7, 11),
            1: (7, 8, 12, 11),
            2: (8, 12),
            3: (7, 10, 9, 13, 14, 11, 12, 8),
            4: (9, 13),
            5: (9, 10, 14, 13),
            6: (10, 14),
            7: (0, 3, 1),
            8: (1, 3, 2),
            9: (3, 5, 4),
            10: (3, 6, 5),
            11: (0, 1, 3),
            12: (1, 2, 3),
            13: (3, 4, 5),
            14: (3, 5, 6),
        },
    ),
    (
        9,
        (
            ((0, True), (1, True), (3, True)),
            ((1, False), (2, True), (3, True)),
            ((3, False), (4, True), (5, False)),
            ((5, True), (6, True), (7, True)),
            ((5, True), (7, False), (8, True)),
            ((0, False), (1, True), (3, True)),
            ((1, False), (2, False), (3, True)),
            ((3, False), (4, False), (5, False)),
            ((5, True), (6, False), (7, True)),
            ((5, True), (7, False), (8, False)),
        ),
        {
            0: (9, 14),
            1: (9, 10, 15, 14),
            2: (10, 15),
            3: (9, 11, 16, 14, 15, 10),
            4: (11, 16),
            5: (11, 13, 12, 17, 18, 16),
            6: (12, 17),
            7: (12, 13, 18, 17),
            8: (13, 18),
            9: (0, 3, 1),
            10: (1, 3, 2),
            11: (3, 5, 4),
            12: (5, 7, 6),
            13: (5, 8, 7),
            14: (0, 1, 3),
            15: (1, 2, 3),
            16: (3, 4, 5),
            17: (5, 6, 7),
            18: (5, 7, 8),
        },
    ),
    (
        7,
        (
            ((0, True), (1, True), (3, False)),
            ((1, False), (2, True), (3, False)),
            ((3, True), (4, True), (5, True)),
            ((3, True), (5, False), (6, True)),
            ((0, False), (1, True), (3, False)),
            ((1, False), (2, False), (3, False)),
            ((3, True), (4, False), (5, True)),
            ((3, True), (5, False), (6, False)),
        ),
        {
            0: (7, 11),
            1: (7, 8, 12, 11),
            2: (8, 12),
            3: (7, 10, 9, 13, 14, 11, 12, 8),
            4: (9, 13),
            5: (9, 10, 14, 13),
            6: (10, 14),
            7: (0, 3, 1),
            8: (1, 3, 2),
            9: (3, 5, 4),
            10: (3, 6, 5),
            11: (0, 1, 3),
            12: (1, 2, 3),
            13: (3, 4, 5),
            14: (3, 5, 6),
        },
    ),
)


def unsat_samples() -> tuple[PlanarFormula, ...]:
    """Three frozen unsatisfiable instances with valid embeddings."""
    out = []
    for n, clauses, orders in _UNSAT:
        f = Formula.build(n, clauses)
        out.append(PlanarFormula.build(f, RotationSystem.build(orders)))
    return tuple(out)
