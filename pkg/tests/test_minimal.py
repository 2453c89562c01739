import itertools

import pytest

from resspace.errors import CapExceededError, NotMinimalError
from resspace.logic import (
    Clause,
    CnfFormula,
    KDnfFormula,
    Term,
    all_clauses_over,
    restrict,
)
from resspace.minimal import (
    _canonical_set,
    block_substituted_min_unsat,
    enumerate_min_unsat,
    is_minimally_unsatisfiable,
    is_minimally_unsatisfiable_cnf,
    shrink_witness_restriction,
    minimally_implies,
    scan_min_unsat_cnf,
)


def clauses_as_set(clauses):
    return [KDnfFormula.from_clause(Clause(c)) for c in clauses]


def test_eq23_minimal():
    # the n+1 clause contradiction over n variables
    for n in (1, 2, 3):
        s = clauses_as_set([list(range(1, n + 1))] + [[-i] for i in range(1, n + 1)])
        assert is_minimally_unsatisfiable(s)


def test_eq22_not_minimal():
    # shrinking (~x ^ y1) to ~x keeps the set unsatisfiable
    s = [
        KDnfFormula([Term([1])], k=2),
        KDnfFormula([Term([-1, 2]), Term([-1, 3])], k=2),
    ]
    assert not is_minimally_unsatisfiable(s)


def test_satisfiable_set_not_minimal():
    assert not is_minimally_unsatisfiable(clauses_as_set([[1], [2]]))


def test_cnf_minimality():
    assert is_minimally_unsatisfiable_cnf(CnfFormula([[1], [-1]]))
    assert not is_minimally_unsatisfiable_cnf(CnfFormula([[1], [-1], [1, 2]]))


def test_cnf_agreement_with_term_minimality():
    # on 1-DNF sets the two notions coincide; exhaustive over small sets
    universe = all_clauses_over([1, 2])
    for m in range(1, 4):
        for combo in itertools.combinations(universe, m):
            f = CnfFormula(combo)
            if len(f) != m:
                continue
            as_set = [KDnfFormula.from_clause(c) for c in f]
            assert is_minimally_unsatisfiable(as_set) == is_minimally_unsatisfiable_cnf(
                f
            )


def test_block_construction_shapes():
    for k, n in [(2, 1), (2, 2), (3, 1), (1, 2)]:
        s = block_substituted_min_unsat(k, n)
        assert len(s) == n + 1
        vs = set().union(*(set(f.variables()) for f in s))
        assert len(vs) == k * k * n
        assert all(f.max_term_width() <= k for f in s)


def test_block_construction_minimal():
    for k, n in [(2, 1), (2, 2), (3, 1)]:
        assert is_minimally_unsatisfiable(block_substituted_min_unsat(k, n))


def test_block_construction_k1_reduces_to_clause_set():
    s = block_substituted_min_unsat(1, 2)
    assert s[0] == KDnfFormula.from_clause(Clause([1, 2]))
    assert s[1:] == [
        KDnfFormula.from_clause(Clause([-1])),
        KDnfFormula.from_clause(Clause([-2])),
    ]


def test_shrink_witness_restriction_unit_pair():
    s = clauses_as_set([[1], [-1]])
    rho = shrink_witness_restriction(s, 1, Term([-1]), -1)
    assert len(rho) <= 1 * len(s)
    # satisfies the other formula and the shrunken (empty) term
    assert restrict(s[0], rho) is True
    # the goal (empty DNF) stays unfixed-or-false
    assert restrict(KDnfFormula((), k=1), rho) is not True


def test_shrink_witness_restriction_block_instance():
    s = block_substituted_min_unsat(2, 1)
    d = s[1]
    t = d.terms[0]
    rho = shrink_witness_restriction(s, 1, t, t.lits[0])
    assert len(rho) <= 2 * len(s)
    for other in s[:1]:
        assert restrict(other, rho) is True
    assert restrict(t.without(t.lits[0]), rho) is True


def test_shrink_witness_restriction_rejects_non_minimal():
    s = clauses_as_set([[1], [-1], [2]])
    with pytest.raises(NotMinimalError):
        shrink_witness_restriction(s, 2, Term([2]), 2)


def test_minimally_implies_general_goal():
    # {x, ~x v y} minimally implies y: every unit-term shrink to the empty
    # term makes the corresponding formula true and breaks the implication
    s = [KDnfFormula([Term([1])]), KDnfFormula([Term([-1]), Term([2])])]
    goal = KDnfFormula([Term([2])])
    assert minimally_implies(s, goal)
    bigger = s + [KDnfFormula([Term([2])])]
    assert not minimally_implies(bigger, goal)


def test_enumerate_cnf_2vars():
    got = list(enumerate_min_unsat(1, 2, 3))
    as_sets = [tuple(tuple(t.lits[0] for t in f.terms) for f in s) for s in got]
    # the unit pair and the or-chain both appear, up to renaming
    assert ((-1,), (1,)) in as_sets
    assert any(len(s) == 3 and any(len(c) == 2 for c in s) for s in as_sets)


def test_enumerate_cnf_deterministic():
    a = list(enumerate_min_unsat(1, 3, 5))
    b = list(enumerate_min_unsat(1, 3, 5))
    assert a == b


def test_enumerate_cnf_thm213_bound():
    for s in enumerate_min_unsat(1, 3, 8):
        vs = set().union(*(set(f.variables()) for f in s))
        assert len(vs) < len(s)


def test_scan_cnf_3vars_no_violations():
    n, violations, counts, max_vars = scan_min_unsat_cnf(3, 8)
    assert n == 869
    assert violations == 0
    assert max(max_vars) == 3


def test_enumerate_kdnf_small():
    got = list(enumerate_min_unsat(2, 3, 2, max_terms=3))
    assert got
    for s in got:
        assert is_minimally_unsatisfiable(list(s))
        vs = set().union(*(set(f.variables()) for f in s))
        assert len(vs) <= (2 * len(s)) ** 3


def test_enumerate_kdnf_finds_block_instance():
    got = list(enumerate_min_unsat(2, 4, 2, max_terms=4))
    assert _canonical_set(block_substituted_min_unsat(2, 1), 2) in got


def test_enumerate_kdnf_oracle_agreement():
    # the mask-arithmetic minimality filter agrees with the brute-force
    # checker on everything it yields
    got = list(enumerate_min_unsat(2, 3, 3, max_terms=2))
    assert got
    for s in got:
        assert is_minimally_unsatisfiable(list(s))


def test_enumeration_caps():
    with pytest.raises(CapExceededError):
        list(enumerate_min_unsat(1, 9, 3))
    with pytest.raises(CapExceededError):
        list(enumerate_min_unsat(2, 4, 4, max_terms=2))
    with pytest.raises(CapExceededError):
        list(enumerate_min_unsat(2, 4, 2, max_terms=9))
