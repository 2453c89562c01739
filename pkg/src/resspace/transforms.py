"""Structural transformations of resolution refutations: weakening
elimination, restriction, and conversion to frugal form.

All three are measure-dominating: the output never exceeds the input in
length, width, clause space, total space, or variable space.  They work on
k=1 syntactic derivations whose inferences are cuts (resolution steps) and,
for weakening elimination and restriction, weakenings.
"""

from __future__ import annotations

from .errors import (
    FormulaSatisfiedError,
    InvalidInputError,
    NotARefutationError,
)
from .logic import Clause, CnfFormula, KDnfFormula, Restriction, restrict_clause
from .proofs import (
    Derivation,
    DerivationBuilder,
    Inference,
    SYNTACTIC,
    replay,
    zero_formula,
)

_SAT = "satisfied"


def _require_resolution(deriv: Derivation, allow_weakening: bool):
    if deriv.k != 1 or deriv.mode != SYNTACTIC:
        raise InvalidInputError("expected a syntactic resolution derivation")
    allowed = {"cut", "weak"} if allow_weakening else {"cut"}
    for i, step in enumerate(deriv.steps):
        if not isinstance(step, Inference):
            continue
        if step.rule not in allowed:
            raise InvalidInputError(f"step {i}: rule {step.rule} not supported")
        if any(not t.lits for t in step.formula.terms):
            # an empty term makes the line tautological, not a clause
            raise InvalidInputError(f"step {i}: line carries an empty term")


# ---------------------------------------------------------------------------
# weakening elimination


def eliminate_weakening(deriv: Derivation) -> Derivation:
    """Drop all weakening steps, keeping the retained subclauses.

    Forward induction: every input line maps to a live output line holding
    a subclause of it.  Weakenings alias their premise's line; resolutions
    whose strengthened premise lost the pivot alias that premise instead of
    resolving.  Output lines are reference-counted so an erasure fires only
    when the last alias dies.
    """
    _require_resolution(deriv, allow_weakening=True)
    log = replay(deriv)
    out = DerivationBuilder(deriv.formula, k=1)
    alias: dict[int, int] = {}
    refcount: dict[int, int] = {}

    def adopt(input_id, out_id):
        alias[input_id] = out_id
        refcount[out_id] = refcount.get(out_id, 0) + 1

    for ev in log.events:
        if ev.kind == "axiom":
            adopt(ev.new_id, out.download(ev.formula.as_clause()))
        elif ev.kind == "erase":
            o = alias[ev.new_id]
            refcount[o] -= 1
            if refcount[o] == 0:
                out.erase(o)
        elif ev.rule == "weak":
            adopt(ev.new_id, alias[ev.premises[0]])
        else:  # cut
            if ev.pivot is None:
                raise InvalidInputError("cut without a unit pivot term")
            pos_in = ev.pos_premise
            neg_in = ev.premises[1] if ev.premises[0] == pos_in else ev.premises[0]
            a = out.clause_value(alias[pos_in])
            b = out.clause_value(alias[neg_in])
            x = ev.pivot
            if x in a and -x in b:
                resolvent = Clause(
                    [l for l in a.lits if l != x] + [l for l in b.lits if l != -x]
                )
                adopt(
                    ev.new_id,
                    out.infer_clause("cut", [alias[pos_in], alias[neg_in]], resolvent),
                )
            elif x not in a:
                adopt(ev.new_id, alias[pos_in])
            else:
                adopt(ev.new_id, alias[neg_in])
    return out.build()


# ---------------------------------------------------------------------------
# restriction


def residual_formula(formula: CnfFormula, rho: Restriction) -> CnfFormula:
    """The clause-wise restriction: satisfied clauses drop, surviving
    clauses lose their falsified literals (a fully falsified clause becomes
    the empty clause)."""
    out = []
    for c in formula:
        r = restrict_clause(c, rho)
        if r is True:
            continue
        out.append(Clause() if r is False else r)
    if not out and len(formula):
        raise FormulaSatisfiedError("the restriction satisfies the formula")
    return CnfFormula(out, keep_trivial=True)


def restrict_refutation(deriv: Derivation, rho: Restriction) -> Derivation:
    """The refutation under a restriction: lines satisfied by rho disappear,
    the rest shed their falsified literals.  A cut whose pivot is fixed by
    rho degenerates into a weakening from the surviving premise."""
    _require_resolution(deriv, allow_weakening=True)
    log = replay(deriv)
    target = residual_formula(deriv.formula, rho)
    out = DerivationBuilder(target, k=1)
    status: dict[int, object] = {}

    def line_residual(formula: KDnfFormula):
        r = restrict_clause(formula.as_clause(), rho)
        if r is True:
            return _SAT
        return Clause() if r is False else r

    for ev in log.events:
        if ev.kind == "axiom":
            r = line_residual(ev.formula)
            status[ev.new_id] = r if r is _SAT else out.download(r)
        elif ev.kind == "erase":
            s = status[ev.new_id]
            if s is not _SAT:
                out.erase(s)
        elif ev.rule == "weak":
            r = line_residual(ev.formula)
            if r is _SAT:
                status[ev.new_id] = _SAT
            else:
                status[ev.new_id] = out.infer_clause(
                    "weak", [status[ev.premises[0]]], r
                )
        else:  # cut
            r = line_residual(ev.formula)
            if r is _SAT:
                status[ev.new_id] = _SAT
                continue
            if ev.pivot is None:
                raise InvalidInputError("cut without a unit pivot term")
            x = ev.pivot
            pos_in = ev.pos_premise
            neg_in = ev.premises[1] if ev.premises[0] == pos_in else ev.premises[0]
            if rho.satisfies(x):
                status[ev.new_id] = out.infer_clause("weak", [status[neg_in]], r)
            elif rho.falsifies(x):
                status[ev.new_id] = out.infer_clause("weak", [status[pos_in]], r)
            else:
                status[ev.new_id] = out.infer_clause(
                    "cut", [status[pos_in], status[neg_in]], r
                )
    return out.build()


# ---------------------------------------------------------------------------
# frugality


def _resolution_log(deriv: Derivation):
    _require_resolution(deriv, allow_weakening=False)
    log = replay(deriv)
    if not log.refuted:
        raise NotARefutationError("derivation never reaches the empty clause")
    return log


def make_frugal(deriv: Derivation) -> Derivation:
    """Rebuild the refutation so that every configuration is essential.

    Backward pass from the first empty-clause configuration: keep an
    inference only if its conclusion is still needed, replacing it by its
    premises; keep a download only if its clause is needed.  Forward
    emission inserts the inference and immediately erases premises that are
    no longer wanted, then elides no-op steps.
    """
    log = _resolution_log(deriv)
    s = log.first_zero
    zero = zero_formula(1)
    cur = {zero}
    ops_rev = []
    for t in range(s, 0, -1):
        ev = log.events[t - 1]
        if ev.kind == "axiom":
            if ev.formula in cur:
                ops_rev.append(("axiom", ev.formula))
                cur.discard(ev.formula)
        elif ev.kind == "infer":
            d = ev.formula
            if d in cur:
                c1, c2 = ev.premise_values
                ops_rev.append(("infer", d, c1, c2, frozenset(cur)))
                cur.discard(d)
                cur.add(c1)
                cur.add(c2)
        # erasures are ignored: the emission erases at last use
    if cur:
        raise AssertionError("essential clauses must be grounded in downloads")

    out = DerivationBuilder(deriv.formula, k=1)
    ids: dict[KDnfFormula, int] = {}
    for op in reversed(ops_rev):
        if op[0] == "axiom":
            line = op[1]
            ids[line] = out.download(line.as_clause())
        else:
            _, d, c1, c2, after = op
            ids[d] = out.infer("cut", [ids[c1], ids[c2]], d)
            for premise in sorted({c1, c2}, key=lambda f: f.terms):
                if premise not in after and premise != d:
                    out.erase(ids.pop(premise))
    return out.build()


def is_frugal(deriv: Derivation) -> bool:
    """Essential clauses by backward induction from the first empty-clause
    configuration, then the forward essential-configuration predicate."""
    log = _resolution_log(deriv)
    s = log.first_zero
    zero = zero_formula(1)
    essential = {t: set() for t in range(len(log.configs))}
    essential[s] = {zero}
    for t in range(s, 0, -1):
        ev = log.events[t - 1]
        here = essential[t]
        below = essential[t - 1]
        if ev.kind == "infer" and ev.formula in here:
            below.update(ev.premise_values)
        for d in here:
            if d in log.configs[t - 1]:
                below.add(d)
    ok_prev = True
    for t in range(1, len(log.configs)):
        cfg = log.configs[t]
        ev = log.events[t - 1]
        if all(v in essential[t] for v in cfg):
            ok = True
        elif (
            ev.kind == "infer"
            and ev.formula in essential[t]
            and all(v in essential[t - 1] for v in log.configs[t - 1])
        ):
            ok = True
        elif ev.kind == "erase" and ok_prev:
            ok = True
        else:
            return False
        ok_prev = ok
    return True
