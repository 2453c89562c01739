"""Projections of configurations over substituted variables onto clauses
over the original variables, the refutation translator built on them, and
the refutation-to-pebbling extractor.

A configuration D over Vars(F[f]) projects a clause C over Vars(F) when a
subset of D implies "the disjunction of the f-values named by C" precisely:
dropping any literal of C breaks the implication (subset mode).  Whole-set
mode quantifies over D itself instead of its subsets.

The subset-mode check avoids enumerating all subsets: a witness subset S
exists if and only if one can pick, for every dropped literal, an
assignment falsifying the reduced target such that the members satisfied by
all picked assignments still imply the full target.  Only the maximal
satisfied-member sets matter per dropped literal, so the search multiplies
small antichains instead of walking the subset lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .boolfunc import (
    BooleanFunction,
    SubstitutionVarMap,
    identity_function,
    is_k_non_authoritarian,
    substitute_clause,
)
from .caps import get_cap
from .errors import (
    AuthoritarianFunctionError,
    CapExceededError,
    InvalidInputError,
)
from .logic import Clause, CnfFormula, KDnfFormula
from .pebbling import Move
from .proofs import Derivation, DerivationBuilder, replay
from .transforms import eliminate_weakening, make_frugal

_SUB_VAR_CAP = 18


class Projector:
    """Projection of configurations derived from base_formula[f]."""

    def __init__(self, base_formula: CnfFormula, f: BooleanFunction):
        self.base = base_formula
        self.f = f
        self.varmap = SubstitutionVarMap(f.d)
        base_vars = sorted(base_formula.variables())
        if len(base_vars) > get_cap("PROJECT_BASE_VARS"):
            raise CapExceededError(
                f"{len(base_vars)} base variables exceed projection cap"
            )
        self.base_vars = base_vars

    def _space(self, shadow_vars):
        """Assignment space over the blocks of the given original variables:
        (ordered sub vars, bit lookup, assignment count)."""
        sub_vars = [v for x in shadow_vars for v in self.varmap.block(x)]
        if len(sub_vars) > _SUB_VAR_CAP:
            raise CapExceededError(
                f"{len(sub_vars)} substituted variables exceed projection cap"
            )
        bit = {v: i for i, v in enumerate(sub_vars)}
        return sub_vars, bit, 1 << len(sub_vars)

    def _formula_mask(self, formula, bit, size):
        a = np.arange(size, dtype=np.int64)

        def lit_mask(lit):
            col = (a >> bit[abs(lit)]) & 1
            return col.astype(bool) if lit > 0 else ~col.astype(bool)

        if isinstance(formula, Clause):
            out = np.zeros(size, dtype=bool)
            for l in formula.lits:
                out |= lit_mask(l)
            return out
        if isinstance(formula, KDnfFormula):
            out = np.zeros(size, dtype=bool)
            for t in formula.terms:
                tm = np.ones(size, dtype=bool)
                for l in t.lits:
                    tm &= lit_mask(l)
                out |= tm
            return out
        raise InvalidInputError(f"cannot project {type(formula).__name__}")

    def _f_value_mask(self, x, bit, size):
        a = np.arange(size, dtype=np.int64)
        idx = np.zeros(size, dtype=np.int64)
        for j, v in enumerate(self.varmap.block(x)):
            idx |= ((a >> bit[v]) & 1) << j
        table = np.asarray(self.f.table, dtype=bool)
        return table[idx]

    def _target_mask(self, clause: Clause, fvals):
        size = next(iter(fvals.values())).shape[0] if fvals else 1
        out = np.zeros(size, dtype=bool)
        for l in clause.lits:
            out |= fvals[abs(l)] if l > 0 else ~fvals[abs(l)]
        return out

    @staticmethod
    def _maximal(values):
        """Maximal elements of an iterable of bitmask ints."""
        vals = sorted(set(values), key=lambda s: (bin(s).count("1"), s), reverse=True)
        out = []
        for s in vals:
            if not any(s & keep == s for keep in out):
                out.append(s)
        return out

    def project(self, formulas, mode="subset"):
        """The set of projected clauses of a configuration.

        ``formulas``: clauses (subset mode) or k-DNF lines (either mode).
        """
        members = []
        for formula in formulas:
            if isinstance(formula, KDnfFormula) and mode == "subset":
                formula = formula.as_clause()
            members.append(formula)
        members = sorted(set(members))
        cap = get_cap(
            "PROJECT_SUBSET_FORMULAS" if mode == "subset" else "PROJECT_WHOLESET_FORMULAS"
        )
        if len(members) > cap:
            raise CapExceededError(f"{len(members)} formulas exceed projection cap")
        if mode == "subset" and len(members) > 63:
            raise CapExceededError("subset mode supports at most 63 formulas")

        shadow = sorted(
            self.varmap.shadow(
                set().union(*(set(m.variables()) for m in members), set())
            )
            & set(self.base_vars)
        )
        sub_vars, bit, size = self._space(shadow)
        masks = [self._formula_mask(m, bit, size) for m in members]
        fvals = {x: self._f_value_mask(x, bit, size) for x in shadow}
        full_sat = np.ones(size, dtype=bool)
        for m in masks:
            full_sat &= m

        # satisfied-member bitmask per assignment (subset mode only)
        svec = None
        if mode == "subset":
            svec = np.zeros(size, dtype=np.int64)
            for i, m in enumerate(masks):
                svec |= m.astype(np.int64) << i

        sat_memo: dict[int, np.ndarray] = {}

        def subset_sat(s):
            if s in sat_memo:
                return sat_memo[s]
            out = np.ones(size, dtype=bool)
            i = 0
            while s >> i:
                if (s >> i) & 1:
                    out &= masks[i]
                i += 1
            sat_memo[s] = out
            return out

        projected = []
        for width in range(0, len(shadow) + 1):
            for combo in itertools.combinations(shadow, width):
                for signs in itertools.product((1, -1), repeat=width):
                    c = Clause([s * x for s, x in zip(signs, combo)])
                    target = (
                        self._target_mask(c, fvals)
                        if width
                        else np.zeros(size, dtype=bool)
                    )
                    if np.any(full_sat & ~target):
                        continue  # not even the whole set implies the target
                    if mode == "whole_set":
                        ok = all(
                            np.any(full_sat & ~self._target_mask(c.without(l), fvals))
                            for l in c.lits
                        )
                        if ok:
                            projected.append(c)
                        continue
                    if not c.lits:
                        projected.append(c)  # some subset is unsatisfiable
                        continue
                    choice_sets = []
                    feasible = True
                    for l in c.lits:
                        reduced = self._target_mask(c.without(l), fvals)
                        cand = svec[~reduced]
                        if cand.size == 0:
                            feasible = False
                            break
                        choice_sets.append(self._maximal(cand.tolist()))
                    if not feasible:
                        continue
                    found = False
                    for picks in itertools.product(*choice_sets):
                        s = picks[0]
                        for p in picks[1:]:
                            s &= p
                        if not np.any(subset_sat(s) & ~target):
                            found = True
                            break
                    if found:
                        projected.append(c)
        return frozenset(projected)


def project(formulas, base_formula: CnfFormula, f: BooleanFunction, mode="subset"):
    """Projected clauses of a single configuration; see Projector.project."""
    return Projector(base_formula, f).project(formulas, mode=mode)


# ---------------------------------------------------------------------------
# translating refutations of substituted formulas


@dataclass(frozen=True)
class TranslationResult:
    derivation: Derivation
    projected: tuple  # the projected clause set per configuration


def _axiom_of(base_formula, f):
    """Map each substituted clause to a base axiom producing it."""
    out = {}
    for a in base_formula:
        for d in substitute_clause(a, f):
            out.setdefault(d, a)
    return out


def translate_refutation(
    deriv: Derivation, base_formula: CnfFormula, f: BooleanFunction
) -> TranslationResult:
    """Turn a refutation of base_formula[f] into a resolution refutation of
    base_formula by following the projected clause sets.

    Inferences and erasures only move clauses in and out of the projection;
    new clauses appearing on an axiom download of D in A[f] are derived by
    downloading A once, weakening projected clauses into the required
    side-clauses, and resolving away the literals of A outside the target.
    The output downloads at most one axiom per input download.
    """
    log = replay(deriv)
    if not log.refuted:
        raise InvalidInputError("input does not refute the substituted formula")
    axmap = _axiom_of(base_formula, f)
    projector = Projector(base_formula, f)
    out = DerivationBuilder(base_formula, k=1)
    board: dict[Clause, int] = {}
    prev = frozenset()
    sequence = [prev]

    def weaken_from_board(c: Clause) -> int:
        sub = next(
            (b for b in sorted(board) if set(b.lits) <= set(c.lits)), None
        )
        if sub is None:
            return None
        if sub == c:
            return board[c]
        return out.infer_clause("weak", [board[sub]], c)

    def derive_on_download(c: Clause, axiom: Clause, axiom_id: int):
        """The weaken-then-resolve schedule for a clause first projected on
        an axiom download."""
        outside = [a for a in axiom.lits if a not in c.lits]
        for a in outside:
            assert -a not in c.lits, "axiom and projected clause clash"
        if not outside:
            if c == axiom:
                return axiom_id
            return out.infer_clause("weak", [axiom_id], c)
        cur_clause = Clause(c.lits + tuple(outside))
        cur_id = out.infer_clause("weak", [axiom_id], cur_clause)
        for a in outside:
            helper = next(
                (
                    b
                    for b in sorted(board)
                    if -a in b.lits and set(b.without(-a).lits) <= set(c.lits)
                ),
                None,
            )
            assert helper is not None, "projection lost a side clause"
            want = Clause(c.lits + (-a,))
            if helper == want:
                side, borrowed = board[helper], True
            else:
                side, borrowed = out.infer_clause("weak", [board[helper]], want), False
            next_clause = Clause(
                [l for l in cur_clause.lits if l != a]
                + [l for l in want.lits if l != -a]
            )
            nid = out.infer_clause("cut", [cur_id, side], next_clause)
            out.erase(cur_id)
            if not borrowed:
                out.erase(side)
            cur_id, cur_clause = nid, next_clause
        assert cur_clause == c, "resolve schedule missed the projected clause"
        return cur_id

    zero = Clause()
    for t, ev in enumerate(log.events):
        cfg = log.configs[t + 1]
        cur = projector.project(cfg, mode="subset")
        sequence.append(cur)
        added = sorted(cur - prev)
        removed = sorted(prev - cur)
        if ev.kind == "erase":
            assert not added, "projection grew on an erasure"
            for c in removed:
                out.erase(board.pop(c))
        else:
            assert not removed, "projection shrank on a download or inference"
            axiom_id = None
            keep_axiom = False
            axiom = axmap.get(ev.formula.as_clause()) if ev.kind == "axiom" else None
            for c in added:
                line = weaken_from_board(c)
                if line is None:
                    assert axiom is not None, "new clause without axiom support"
                    if axiom_id is None:
                        axiom_id = out.download(axiom)
                    line = derive_on_download(c, axiom, axiom_id)
                    if line == axiom_id:
                        keep_axiom = True
                board[c] = line
            if axiom_id is not None and not keep_axiom:
                out.erase(axiom_id)
        prev = cur
        if zero in cur:
            break
    if zero not in prev:
        raise AssertionError("projected sequence never reaches the empty clause")
    return TranslationResult(out.build(), tuple(sequence))


# ---------------------------------------------------------------------------
# extracting pebblings from refutations


@dataclass(frozen=True)
class ExtractionResult:
    moves: tuple
    time: int
    space: int
    frugal_variable_space: int
    input_formula_space: int
    input_axiom_downloads: int


def extract_pebbling(
    deriv: Derivation, dag, f: BooleanFunction | None = None, require_space_bound=False
) -> ExtractionResult:
    """A complete black-white pebbling extracted from a refutation of the
    (substituted) pebbling contradiction.

    The refutation is first translated down to the plain contradiction (for
    a non-identity substitution), stripped of weakenings, and made frugal.
    Each configuration then maps to a pebble configuration: a variable
    carried over from the black set stays black, a variable occurring
    positively is black, one occurring only negatively is white.  Axiom
    downloads place the (at most indegree+1) new pebbles; erasures drop
    pebbles; the sink keeps its black pebble once placed.
    """
    from .compilers import pebbling_formula

    f = f or identity_function()
    if require_space_bound and not is_k_non_authoritarian(f, 1):
        raise AuthoritarianFunctionError(
            f"{f.name} is authoritarian: the space bound does not transfer"
        )
    fm = pebbling_formula(dag, f)
    if f.name == "identity":
        base_deriv = deriv
        input_log = replay(deriv)
    else:
        input_log = replay(deriv)
        base_deriv = translate_refutation(deriv, fm.base, f).derivation
    frugal = make_frugal(eliminate_weakening(base_deriv))
    log = replay(frugal)

    moves = []
    black: set[int] = set()
    white: set[int] = set()
    z = dag.sink
    z_locked = False

    def retarget(new_black, new_white):
        nonlocal black, white
        place_white = sorted(new_white - black - white)
        flips = sorted(new_black & white)
        place_black = sorted(new_black - black - white - set(flips))
        for v in place_white:
            moves.append(Move("pw", v))
        for v in flips:
            moves.append(Move("rw", v))
            moves.append(Move("pb", v))
        for v in place_black:
            moves.append(Move("pb", v))
        gone = (black | white) - new_black - new_white
        for v in sorted(gone & black):
            moves.append(Move("rb", v))
        for v in sorted(gone & white):
            moves.append(Move("rw", v))
        black, white = set(new_black), set(new_white)

    for t, ev in enumerate(log.events):
        cfg = log.configs[t + 1]
        pos = set()
        neg = set()
        for line in cfg:
            for term in line.terms:
                for l in term.lits:
                    (pos if l > 0 else neg).add(abs(l))
        variables = pos | neg
        new_black = (variables & black) | pos
        new_white = variables - new_black
        if z_locked:
            new_black |= {z}
            new_white -= {z}
        if ev.kind == "infer":
            assert new_black == black and new_white == white
            continue
        retarget(new_black, new_white)
        if not z_locked and z in black:
            z_locked = True
    retarget({z}, set())

    from .pebbling import validate_pebbling

    metrics = validate_pebbling(dag, tuple(moves))
    return ExtractionResult(
        moves=tuple(moves),
        time=metrics.time,
        space=metrics.space,
        frugal_variable_space=log.measures.variable_space,
        input_formula_space=input_log.measures.formula_space,
        input_axiom_downloads=input_log.measures.axiom_downloads,
    )


# ---------------------------------------------------------------------------
# the projection invariant audit


@dataclass(frozen=True)
class AuditReport:
    configurations: int
    audited: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def project_invariant_audit(
    deriv: Derivation, base_formula: CnfFormula, f: BooleanFunction
) -> AuditReport:
    """Check, per configuration with a nonempty projection, that the line
    count strictly exceeds the projected variable count and that every
    projected variable's block is mentioned by the configuration."""
    if not is_k_non_authoritarian(f, 1):
        raise AuthoritarianFunctionError(
            f"{f.name} is authoritarian: the audit preconditions fail"
        )
    log = replay(deriv)
    projector = Projector(base_formula, f)
    mode = "subset" if deriv.k == 1 else "whole_set"
    varmap = SubstitutionVarMap(f.d)
    violations = []
    audited = 0
    for t, cfg in enumerate(log.configs):
        if not cfg:
            continue
        projected = projector.project(cfg, mode=mode)
        if not projected:
            continue
        audited += 1
        proj_vars = set().union(*(set(c.variables()) for c in projected), set())
        cfg_vars = set().union(*(set(v.variables()) for v in cfg), set())
        if deriv.k == 1:
            if not len(cfg) > len(proj_vars):
                violations.append((t, "line count not above projected variables"))
        else:
            bound = (4 ** (deriv.k * deriv.k * f.d)) * (deriv.k * len(cfg)) ** (
                deriv.k + 1
            )
            if len(proj_vars) > bound:
                violations.append((t, "projected variables exceed the size bound"))
        for x in sorted(proj_vars):
            if not set(varmap.block(x)) & cfg_vars:
                violations.append((t, f"no block variable of {x} on the board"))
    return AuditReport(
        configurations=len(log.configs), audited=audited, violations=tuple(violations)
    )
