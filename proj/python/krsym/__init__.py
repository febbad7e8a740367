"""Combinatorial symmetry groups of functions on surfaces.

Expressions are plain strings such as ``"(Z2 x Z2) wr Z3"``; models use
the ``.krt`` text format and tree actions the ``.act`` format.
"""

from ._krsym import (
    KrsymError,
    analyze,
    assemble,
    decompose,
    fixture,
    fixture_names,
    is_solvable,
    jordan,
    normal_form,
    oracle_agrees,
    oracle_order,
    order,
    realize,
    reeb,
    roundtrip,
)

__all__ = [
    "KrsymError",
    "analyze",
    "assemble",
    "decompose",
    "fixture",
    "fixture_names",
    "is_solvable",
    "jordan",
    "normal_form",
    "oracle_agrees",
    "oracle_order",
    "order",
    "realize",
    "reeb",
    "roundtrip",
]
