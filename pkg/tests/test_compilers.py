import pytest

from resspace.boolfunc import (
    canonical_clauses,
    or_function,
    threshold_function,
    xor_function,
)
from resspace.compilers import (
    compile_pebbling,
    compile_pebbling_rk,
    derive_dnf_from_cnf,
    dnf_representation,
    pebbling_formula,
    refute_dnf_pair,
)
from resspace.errors import InvalidPebblingError
from resspace.graphs import make_graph, path_graph, pyramid_graph
from resspace.logic import EMPTY_DNF, CnfFormula, KDnfFormula, Term, implies
from resspace.pebbling import Move, trivial_black_pebbling
from resspace.proofs import Inference, check_refutation, replay


def test_pebbling_formula_pyramid1():
    fm = pebbling_formula(pyramid_graph(1))
    assert fm.base == CnfFormula([[1], [2], [-1, -2, 3], [-3]])
    assert len(fm.base) == fm.graph.n + 1


def test_pebbling_formula_path2():
    fm = pebbling_formula(path_graph(2))
    assert fm.base == CnfFormula([[1], [-1, 2], [-2]])


def test_pebbling_formula_unsat():
    for family, p in [("path", 3), ("pyramid", 2), ("bit_reversal", 1)]:
        fm = pebbling_formula(make_graph(family, p))
        assert implies(list(fm.base), [EMPTY_DNF])
        fx = pebbling_formula(make_graph(family, p), xor_function(2))
        assert implies(list(fx.cnf), [EMPTY_DNF])


def test_pebbling_formula_width():
    g = pyramid_graph(2)
    fm = pebbling_formula(g)
    assert fm.base.width() == 3  # 1 + indegree


def test_compile_identity_accepted():
    g = pyramid_graph(1)
    d = compile_pebbling(g, trivial_black_pebbling(g))
    m = check_refutation(pebbling_formula(g).cnf, d)
    assert m.width <= 3


def test_compile_xor_accepted_with_width_bound():
    for g in (path_graph(3), pyramid_graph(1)):
        f = xor_function(2)
        d = compile_pebbling(g, trivial_black_pebbling(g), f)
        m = check_refutation(pebbling_formula(g, f).cnf, d)
        ell = max(g.indegree(v) for v in range(1, g.n + 1))
        assert m.width <= f.d * (ell + 1)


def test_compile_rejects_white_moves():
    g = path_graph(2)
    moves = (Move("pw", 2), Move("pb", 1), Move("pb", 2), Move("rw", 2))
    with pytest.raises(InvalidPebblingError):
        compile_pebbling(g, moves)


def test_compile_rejects_incomplete():
    g = path_graph(2)
    with pytest.raises(InvalidPebblingError):
        compile_pebbling(g, (Move("pb", 1),))


def test_compile_total_space_tracks_pebbling_space():
    # TotSp(output) <= c * space(P) with a stable per-function constant
    f = xor_function(2)
    ratios = []
    from resspace.pebbling import validate_pebbling

    for g in (path_graph(2), path_graph(3), path_graph(4)):
        moves = trivial_black_pebbling(g)
        sp = validate_pebbling(g, moves).space
        m = check_refutation(
            pebbling_formula(g, f).cnf, compile_pebbling(g, moves, f)
        )
        ratios.append(m.total_space / sp)
    assert max(ratios) <= 40  # frozen regression constant for (xor2, path)


def test_rk_compile_path2():
    f = xor_function(2)
    g = path_graph(2)
    d = compile_pebbling_rk(g, trivial_black_pebbling(g), f)
    m = check_refutation(pebbling_formula(g, f).cnf, d)
    ell = max(g.indegree(v) for v in range(1, g.n + 1))
    assert m.max_terms <= (ell + 1) * (1 << (f.d - 1))
    assert d.k == f.d


def test_rk_compile_single_line_per_vertex():
    # Each vertex is represented by one DNF line: formula space stays within
    # pebbling space + 2^d + frozen constant
    f = xor_function(2)
    from resspace.pebbling import validate_pebbling

    for g in (path_graph(2), path_graph(3), pyramid_graph(1)):
        moves = trivial_black_pebbling(g)
        sp = validate_pebbling(g, moves).space
        m = check_refutation(
            pebbling_formula(g, f).cnf, compile_pebbling_rk(g, moves, f)
        )
        assert m.formula_space <= sp + (1 << f.d) + 10


def test_rk_compile_threshold():
    f = threshold_function(3, 2)
    g = path_graph(2)
    d = compile_pebbling_rk(g, trivial_black_pebbling(g), f)
    check_refutation(pebbling_formula(g, f).cnf, d)


def test_dnf_representation_semantics():
    from resspace.logic import Restriction, evaluate

    for f in (xor_function(2), xor_function(3), or_function(3), threshold_function(4, 2)):
        rep = dnf_representation(f, 1, positive=True)
        neg = dnf_representation(f, 1, positive=False)
        for bits in range(1 << f.d):
            alpha = Restriction(
                [(i + 1) if (bits >> i) & 1 else -(i + 1) for i in range(f.d)]
            )
            assert evaluate(rep, alpha) == f.value(bits)
            assert evaluate(neg, alpha) == (not f.value(bits))


def test_xor_walkthrough_ladder():
    # derive the xor DNF from the xor clause set using and-introductions
    f = xor_function(2)
    d = derive_dnf_from_cnf(canonical_clauses(f, True), dnf_representation(f, 1, True), 2)
    log = replay(d)
    assert any(
        isinstance(s, Inference) and s.rule == "andi" for s in d.steps
    )
    assert dnf_representation(f, 1, True) in set().union(*log.configs)


def test_xor3_walkthrough_ladder():
    f = xor_function(3)
    d = derive_dnf_from_cnf(
        canonical_clauses(f, True), dnf_representation(f, 1, True), 3
    )
    log = replay(d)
    assert dnf_representation(f, 1, True).with_k(3) in set().union(*log.configs)


def test_refute_dnf_pair_lengths():
    f = xor_function(2)
    d1 = dnf_representation(f, 1, True)
    d2 = dnf_representation(f, 1, False)
    d = refute_dnf_pair(d1, d2)
    log = replay(d)
    assert log.refuted
    assert log.measures.length <= len(d1) * (len(d2) + 1)


def test_refute_dnf_pair_exact_tight_count():
    # a pair where each term of d2 holds exactly one usable unit: the
    # elimination skips it, giving exactly |d1| * |d2| inference steps
    d1 = KDnfFormula([Term([1, 2])], k=2)
    d2 = KDnfFormula([Term([-1]), Term([-2, 3])], k=2)
    d = refute_dnf_pair(d1, d2)
    log = replay(d)
    assert log.refuted
    assert log.measures.length == len(d1) * len(d2)


def test_refute_dnf_pair_rejects_satisfiable():
    from resspace.errors import NotImpliedError

    with pytest.raises(NotImpliedError):
        refute_dnf_pair(
            KDnfFormula([Term([1])], k=1), KDnfFormula([Term([2])], k=1)
        )


def test_rk_compile_arity_three():
    from resspace.boolfunc import majority_function

    g = path_graph(2)
    for f in (xor_function(3), majority_function(3)):
        deriv = compile_pebbling_rk(g, trivial_black_pebbling(g), f)
        m = check_refutation(pebbling_formula(g, f).cnf, deriv)
        assert deriv.k == 3
        assert m.formula_space <= 2 + (1 << 3) + 20
