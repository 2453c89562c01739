"""k-DNF resolution derivations: step legality (syntactic and semantic),
replay, the five measures, and the implicationally-complete clause
derivation used as a building block by the compilers.

A derivation is a sequence of steps over configurations ("the blackboard"):
axiom downloads add a clause of the target CNF as a 1-DNF line, inferences
add a consequence of lines already on the board, erasures remove a line.
Lines added by downloads and inferences get stable ids in arrival order;
erasures name the id.  Configurations are sets of formulas: measures are
computed over distinct line values, and ids are bookkeeping only.

Syntactic rules (lines are k-DNFs; T, T' terms; a_i literals):

  cut          (a_1^...^a_k') v B  and  ~a_1 v ... v ~a_k' v C  give  B v C
  andi         A v T  and  A v T'  give  A v (T ^ T')  when |T u T'| <= k
  ande         A v T  gives  A v T'  for any subterm T' of T
  weak         A  gives  A v B  for any k-DNF B

In semantic mode any k-DNF implied by the current configuration may be
derived; the checker verifies the implication by brute force and requires
the new line to stay over the variables of the target formula and board
(a checker convention; the rule itself does not bound the consequence).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadPremisesError,
    NotAnAxiomError,
    NotARefutationError,
    NotImpliedError,
    RuleMismatchError,
    WidthExceededError,
)
from .logic import (
    Clause,
    CnfFormula,
    KDnfFormula,
    Term,
    implies,
    negating_restriction,
    restrict_clause,
)

SYNTACTIC, SEMANTIC = "syntactic", "semantic"


@dataclass(frozen=True)
class AxiomDownload:
    clause: Clause


@dataclass(frozen=True)
class Inference:
    formula: KDnfFormula
    rule: str
    premises: tuple[int, ...]


@dataclass(frozen=True)
class Erasure:
    target: int


@dataclass(frozen=True)
class Derivation:
    """A step sequence over a target CNF.  ``assumptions`` seed the board
    before the first step (used for derivations from k-DNF sets rather than
    from a formula's axioms); they get ids 1..len(assumptions)."""

    formula: CnfFormula
    k: int
    mode: str
    steps: tuple
    assumptions: tuple = ()


def zero_formula(k: int = 1) -> KDnfFormula:
    """The empty DNF 0, the refutation goal."""
    return KDnfFormula((), k=k)


@dataclass(frozen=True)
class MeasureReport:
    """Length counts axiom downloads and inferences; the space measures are
    maxima over configurations of distinct line values.  Width is reported
    for resolution (k=1) only; k >= 2 derivations report the largest term
    count and line size instead."""

    length: int
    axiom_downloads: int
    formula_space: int
    total_space: int
    variable_space: int
    width: int | None = None
    max_terms: int | None = None
    max_formula_size: int | None = None


# ---------------------------------------------------------------------------
# rule shape matching


def _formula_with(formula: KDnfFormula, extra: Term) -> KDnfFormula:
    return KDnfFormula(formula.terms + (extra,), k=formula.k)


def _formula_without(formula: KDnfFormula, terms) -> KDnfFormula:
    drop = set(terms)
    return KDnfFormula([t for t in formula.terms if t not in drop], k=formula.k)


def match_cut(d1: KDnfFormula, d2: KDnfFormula, cons: KDnfFormula):
    """A term T of d1 whose negated literals appear as unit terms of d2 such
    that cons lies between (d1 \\ T) u (d2 \\ negs) and d1 u d2."""
    d1t, d2t, et = set(d1.terms), set(d2.terms), set(cons.terms)
    if not et <= d1t | d2t:
        return None
    for t in d1.terms:
        negs = {Term([-a]) for a in t.lits}
        if not negs <= d2t:
            continue
        lower = (d1t - {t}) | (d2t - negs)
        if lower <= et:
            return t
    return None


def match_andi(d1: KDnfFormula, d2: KDnfFormula, cons: KDnfFormula, k: int):
    for t in d1.terms:
        for t2 in d2.terms:
            lits = set(t.lits) | set(t2.lits)
            if len(lits) > k:
                continue
            u = Term(lits)
            if u.is_trivial():
                candidates = [cons]
            elif u in cons:
                candidates = [_formula_without(cons, [u]), cons]
            else:
                continue
            for a in candidates:
                if _formula_with(a, t) == d1 and _formula_with(a, t2) == d2:
                    return t, t2
    return None


def match_ande(d1: KDnfFormula, cons: KDnfFormula):
    for t in d1.terms:
        for t2 in cons.terms:
            if not t2.is_subterm_of(t):
                continue
            for a in (_formula_without(cons, [t2]), cons):
                if _formula_with(a, t) == d1:
                    return t, t2
    return None


# ---------------------------------------------------------------------------
# replay


class Configuration:
    """Live lines indexed by stable id; the configuration proper is the set
    of distinct values."""

    def __init__(self):
        self.lines: dict[int, KDnfFormula] = {}
        self.next_id = 1

    def add(self, formula: KDnfFormula) -> int:
        i = self.next_id
        self.lines[i] = formula
        self.next_id += 1
        return i

    def values(self) -> frozenset[KDnfFormula]:
        return frozenset(self.lines.values())


@dataclass
class ReplayEvent:
    kind: str  # "axiom" | "infer" | "erase"
    new_id: int | None
    formula: KDnfFormula | None
    rule: str | None = None
    premises: tuple[int, ...] = ()
    premise_values: tuple[KDnfFormula, ...] = ()
    pivot: int | None = None  # k=1 cut: the literal resolved on
    pos_premise: int | None = None  # id of the premise holding the pivot


@dataclass
class ReplayLog:
    derivation: Derivation
    events: list
    configs: list  # frozensets of line values, configs[0] = empty
    measures: MeasureReport
    first_zero: int | None  # index of the first configuration containing 0

    @property
    def refuted(self) -> bool:
        return self.first_zero is not None


def _check_inference(deriv, config, step, index):
    for p in step.premises:
        if p not in config.lines:
            raise BadPremisesError(f"step {index}: premise {p} not on the board")
    vals = tuple(config.lines[p] for p in step.premises)
    cons = step.formula
    if cons.max_term_width() > deriv.k:
        raise WidthExceededError(f"step {index}: term wider than k={deriv.k}")
    if cons.k != deriv.k:
        cons = cons.with_k(deriv.k)
    rule = step.rule
    if deriv.mode == SEMANTIC:
        if rule != "sem":
            raise RuleMismatchError(f"step {index}: semantic derivations use rule sem")
        allowed = deriv.formula.variables() | frozenset().union(
            *(v.variables() for v in config.values()), frozenset()
        )
        if not cons.variables() <= allowed:
            raise RuleMismatchError(
                f"step {index}: consequence mentions variables outside the board"
            )
        if not implies(list(config.values()), [cons]):
            raise NotImpliedError(f"step {index}: consequence is not implied")
        return ReplayEvent(
            "infer", None, cons, rule, step.premises, vals
        )
    if rule == "sem":
        raise RuleMismatchError(f"step {index}: rule sem needs semantic mode")
    if rule == "weak":
        if len(vals) != 1:
            raise BadPremisesError(f"step {index}: weakening takes one premise")
        if not set(vals[0].terms) <= set(cons.terms):
            raise RuleMismatchError(f"step {index}: weakening must keep all terms")
        return ReplayEvent("infer", None, cons, rule, step.premises, vals)
    if rule == "ande":
        if len(vals) != 1:
            raise BadPremisesError(f"step {index}: ande takes one premise")
        if match_ande(vals[0], cons) is None:
            raise RuleMismatchError(f"step {index}: not an ande consequence")
        return ReplayEvent("infer", None, cons, rule, step.premises, vals)
    if rule == "andi":
        if len(vals) != 2:
            raise BadPremisesError(f"step {index}: andi takes two premises")
        if (
            match_andi(vals[0], vals[1], cons, deriv.k) is None
            and match_andi(vals[1], vals[0], cons, deriv.k) is None
        ):
            raise RuleMismatchError(f"step {index}: not an andi consequence")
        return ReplayEvent("infer", None, cons, rule, step.premises, vals)
    if rule == "cut":
        if len(vals) != 2:
            raise BadPremisesError(f"step {index}: cut takes two premises")
        t = match_cut(vals[0], vals[1], cons)
        pos = step.premises[0]
        if t is None:
            t = match_cut(vals[1], vals[0], cons)
            pos = step.premises[1]
        if t is None:
            raise RuleMismatchError(f"step {index}: not a cut consequence")
        pivot = t.lits[0] if len(t) == 1 else None
        return ReplayEvent(
            "infer", None, cons, rule, step.premises, vals, pivot=pivot, pos_premise=pos
        )
    raise RuleMismatchError(f"step {index}: unknown rule {rule!r}")


def replay(deriv: Derivation) -> ReplayLog:
    """Validate every step and account the measures."""
    config = Configuration()
    for assumption in deriv.assumptions:
        config.add(assumption.with_k(deriv.k))
    events = []
    configs = [config.values()]
    first_zero = None
    length = downloads = 0
    max_fs = max_ts = max_vs = 0
    max_width = 0
    max_terms = max_size = 0
    zero = zero_formula(deriv.k)
    if deriv.assumptions:
        seeded = configs[0]
        max_fs = len(seeded)
        max_ts = sum(v.size() for v in seeded)
        max_vs = len(frozenset().union(*(v.variables() for v in seeded), frozenset()))
        for v in seeded:
            if deriv.k == 1:
                max_width = max(max_width, len(v.terms))
            max_terms = max(max_terms, len(v.terms))
            max_size = max(max_size, v.size())
        if zero in seeded:
            first_zero = 0
    for index, step in enumerate(deriv.steps):
        if isinstance(step, AxiomDownload):
            if step.clause not in deriv.formula:
                raise NotAnAxiomError(
                    f"step {index}: clause {step.clause.lits} is not an axiom"
                )
            line = KDnfFormula.from_clause(step.clause, k=deriv.k)
            new_id = config.add(line)
            events.append(ReplayEvent("axiom", new_id, line))
            length += 1
            downloads += 1
        elif isinstance(step, Inference):
            ev = _check_inference(deriv, config, step, index)
            cons = ev.formula
            ev.new_id = config.add(cons)
            events.append(ev)
            length += 1
        elif isinstance(step, Erasure):
            if step.target not in config.lines:
                raise BadPremisesError(f"step {index}: erasing missing id {step.target}")
            gone = config.lines.pop(step.target)
            events.append(ReplayEvent("erase", step.target, gone))
        else:
            raise RuleMismatchError(f"step {index}: unknown step kind")
        values = config.values()
        configs.append(values)
        if first_zero is None and zero in values:
            first_zero = len(configs) - 1
        max_fs = max(max_fs, len(values))
        max_ts = max(max_ts, sum(v.size() for v in values))
        max_vs = max(
            max_vs, len(frozenset().union(*(v.variables() for v in values), frozenset()))
        )
        for v in values:
            if deriv.k == 1:
                max_width = max(max_width, len(v.terms))
            max_terms = max(max_terms, len(v.terms))
            max_size = max(max_size, v.size())
    measures = MeasureReport(
        length=length,
        axiom_downloads=downloads,
        formula_space=max_fs,
        total_space=max_ts,
        variable_space=max_vs,
        width=max_width if deriv.k == 1 else None,
        max_terms=None if deriv.k == 1 else max_terms,
        max_formula_size=None if deriv.k == 1 else max_size,
    )
    return ReplayLog(deriv, events, configs, measures, first_zero)


def check_refutation(formula: CnfFormula, deriv: Derivation) -> MeasureReport:
    """Replay a claimed refutation; the empty DNF must appear on the board."""
    if deriv.formula != formula:
        raise NotARefutationError("derivation targets a different formula")
    log = replay(deriv)
    if not log.refuted:
        raise NotARefutationError("the empty DNF never appears")
    return log.measures


def check_step(formula, config: Configuration, step, k: int, mode: str):
    """Apply one step to a configuration in place; returns the new line id
    (None for erasures).  Exposed for interactive/streaming checking."""
    deriv = Derivation(formula, k, mode, (step,))
    if isinstance(step, AxiomDownload):
        if step.clause not in formula:
            raise NotAnAxiomError(f"clause {step.clause.lits} is not an axiom")
        return config.add(KDnfFormula.from_clause(step.clause, k=k))
    if isinstance(step, Inference):
        ev = _check_inference(deriv, config, step, 0)
        return config.add(ev.formula)
    if isinstance(step, Erasure):
        if step.target not in config.lines:
            raise BadPremisesError(f"erasing missing id {step.target}")
        config.lines.pop(step.target)
        return None
    raise RuleMismatchError("unknown step kind")


# ---------------------------------------------------------------------------
# building derivations


class DerivationBuilder:
    """Step/id bookkeeping for the proof compilers.

    The builder tracks live line values alongside ids so callers can splice
    in derivation fragments with their downloads bound to lines already on
    the board.
    """

    def __init__(self, formula: CnfFormula, k: int = 1, mode: str = SYNTACTIC):
        self.formula = formula
        self.k = k
        self.mode = mode
        self.steps = []
        self.live: dict[int, KDnfFormula] = {}
        self._next = 1

    def _new_id(self, value) -> int:
        i = self._next
        self._next += 1
        self.live[i] = value
        return i

    def download(self, clause: Clause) -> int:
        self.steps.append(AxiomDownload(clause))
        return self._new_id(KDnfFormula.from_clause(clause, k=self.k))

    def infer(self, rule: str, premises, formula: KDnfFormula) -> int:
        if formula.k != self.k:
            formula = formula.with_k(self.k)
        self.steps.append(Inference(formula, rule, tuple(premises)))
        return self._new_id(formula)

    def infer_clause(self, rule: str, premises, clause: Clause) -> int:
        return self.infer(rule, premises, KDnfFormula.from_clause(clause, k=self.k))

    def erase(self, line_id: int):
        self.steps.append(Erasure(line_id))
        del self.live[line_id]

    def value(self, line_id: int) -> KDnfFormula:
        return self.live[line_id]

    def clause_value(self, line_id: int) -> Clause:
        return self.live[line_id].as_clause()

    def inline(self, fragment: Derivation, bindings: dict[Clause, int]) -> dict:
        """Splice a fragment's steps, binding its downloads of clauses in
        ``bindings`` to existing board lines (those are borrowed: their
        erasures inside the fragment are dropped).  Returns the id map."""
        idmap = {}
        borrowed = set()
        frag_next = 1
        for step in fragment.steps:
            if isinstance(step, AxiomDownload):
                fid = frag_next
                frag_next += 1
                if step.clause in bindings:
                    idmap[fid] = bindings[step.clause]
                    borrowed.add(fid)
                else:
                    idmap[fid] = self.download(step.clause)
            elif isinstance(step, Inference):
                fid = frag_next
                frag_next += 1
                idmap[fid] = self.infer(
                    step.rule, [idmap[p] for p in step.premises], step.formula
                )
            else:
                if step.target in borrowed:
                    continue
                self.erase(idmap[step.target])
        return idmap

    def build(self) -> Derivation:
        return Derivation(self.formula, self.k, self.mode, tuple(self.steps))


# ---------------------------------------------------------------------------
# implicational completeness: deriving an implied clause


def derive_implied_clause(premises, target: Clause, cap=None) -> Derivation:
    """A resolution derivation of ``target`` from the premise clauses, built
    from a decision tree that queries variables in ascending order.

    The tree branches on each variable in turn; as soon as the partial
    assignment falsifies a premise clause, that clause becomes a leaf.
    Folding the tree bottom-up with resolutions yields the empty clause
    under the restriction that falsifies ``target``; lifting the
    restriction back pairs every download with one weakening.  Length stays
    below 2^(n+1)-1 and total space below n(n+2) for n distinct variables.
    """
    premises = [c if isinstance(c, Clause) else Clause(c) for c in premises]
    source = CnfFormula(premises)
    if not implies(list(source), [target], cap=cap):
        raise NotImpliedError(f"premises do not imply {target.lits}")
    builder = DerivationBuilder(source, k=1)
    if target.lits:
        rho0 = negating_restriction(target)
        lift = tuple(target.lits)
    else:
        rho0 = None
        lift = ()

    # restricted premises paired with their originals; satisfied ones drop
    work = []
    for c in source:
        if rho0 is None:
            work.append((c, c))
            continue
        r = restrict_clause(c, rho0)
        if r is True:
            continue
        work.append((Clause() if r is False else r, c))
    variables = sorted(set().union(*(set(rc.variables()) for rc, _ in work), set()))

    def leaf(rho: set):
        """Download the first premise falsified by the path (rho holds the
        literals the path made true); weaken into the lifted form when a
        restriction is in play."""
        for rc, orig in work:
            if all(-l in rho for l in rc.lits):
                if rho0 is None:
                    return builder.download(orig), rc
                lifted = Clause(rc.lits + lift)
                a = builder.download(orig)
                if lifted == orig:
                    return a, lifted
                w = builder.infer_clause("weak", [a], lifted)
                builder.erase(a)
                return w, lifted
        raise AssertionError("unsatisfiable restricted set has a falsified clause")

    def grow(rho: set, depth: int):
        if depth == len(variables):
            return leaf(rho)
        for rc, orig in work:  # close the branch as soon as a premise dies
            if all(-l in rho for l in rc.lits):
                return leaf(rho)
        x = variables[depth]
        lid, lc = grow(rho | {-x}, depth + 1)
        if x not in lc:
            return lid, lc
        rid, rc_ = grow(rho | {x}, depth + 1)
        if -x not in rc_:
            builder.erase(lid)
            return rid, rc_
        resolvent = Clause(
            [l for l in lc.lits if l != x] + [l for l in rc_.lits if l != -x]
        )
        out = builder.infer_clause("cut", [lid, rid], resolvent)
        builder.erase(lid)
        builder.erase(rid)
        return out, resolvent

    root_id, root_clause = grow(set(), 0)
    if root_clause != target:
        builder.infer_clause("weak", [root_id], target)
        builder.erase(root_id)
    return builder.build()
