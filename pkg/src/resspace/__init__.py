"""resspace: pebbling formulas, k-DNF resolution checking, and
length/space measurement tools, with brute-force oracles at desk scale."""

from .logic import (
    Clause,
    CnfFormula,
    EMPTY_CLAUSE,
    EMPTY_DNF,
    EMPTY_TERM,
    KDnfFormula,
    Restriction,
    Term,
    evaluate,
    implies,
    implication_counterexample,
    is_satisfiable,
    negating_restriction,
    restrict,
)

__version__ = "0.1.0"
