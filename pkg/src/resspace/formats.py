"""Text formats: DIMACS CNF, DNF/term strings, proof traces, pebbling
traces, graph edge lists, and k-DNF set files.

All emitters are deterministic: objects are canonical, so serializing the
same value twice yields byte-identical output.

DNF strings join terms with ``|`` and the literals inside a term with
``^``; literals are signed integers, a lone signed integer is a unit term,
and ``F`` denotes the empty DNF 0.  Clauses reuse the DNF form (a clause is
a 1-DNF of unit terms).
"""

from __future__ import annotations

from .errors import FormatError
from .logic import Clause, CnfFormula, KDnfFormula, Term

# ---------------------------------------------------------------------------
# DNF / clause text


def dnf_to_text(formula: KDnfFormula) -> str:
    if formula.is_empty():
        return "F"
    parts = []
    for t in formula.terms:
        if not t.lits:
            raise FormatError("empty term is not serializable")
        parts.append("^".join(str(l) for l in t.lits))
    return "|".join(parts)


def dnf_from_text(text: str, k: int) -> KDnfFormula:
    text = text.strip()
    if not text:
        raise FormatError("empty DNF string")
    if text == "F":
        return KDnfFormula((), k=k)
    terms = []
    for part in text.split("|"):
        lits = []
        for tok in part.split("^"):
            try:
                lit = int(tok)
            except ValueError:
                raise FormatError(f"bad literal token {tok!r}") from None
            if lit == 0:
                raise FormatError("literal 0 is not allowed")
            lits.append(lit)
        terms.append(Term(lits))
    try:
        return KDnfFormula(terms, k=k)
    except ValueError as e:
        raise FormatError(str(e)) from None


def clause_to_text(clause: Clause) -> str:
    return dnf_to_text(KDnfFormula.from_clause(clause))


def clause_from_text(text: str) -> Clause:
    return dnf_from_text(text, k=1).as_clause()


# ---------------------------------------------------------------------------
# DIMACS


def cnf_to_dimacs(formula: CnfFormula, comments=(), nvars=None) -> str:
    nvars = nvars if nvars is not None else max(formula.variables(), default=0)
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {nvars} {len(formula.clauses)}")
    for clause in formula.clauses:
        lines.append(" ".join(str(l) for l in clause.lits) + " 0")
    return "\n".join(lines) + "\n"


def cnf_from_dimacs(text: str):
    """Parse DIMACS; returns (formula, nvars, comments)."""
    clauses = []
    comments = []
    nvars = None
    declared = None
    cur = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormatError(f"bad problem line {line!r}")
            nvars, declared = int(parts[2]), int(parts[3])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(Clause(cur))
                cur = []
            else:
                cur.append(lit)
    if cur:
        raise FormatError("unterminated clause")
    if nvars is None:
        raise FormatError("missing problem line")
    if declared is not None and declared != len(clauses):
        raise FormatError(f"declared {declared} clauses, found {len(clauses)}")
    return CnfFormula(clauses, keep_trivial=True), nvars, comments


def substitution_comment(name: str, d: int, base_vars: int) -> str:
    return f"substitution f={name} d={d} base_vars={base_vars}"


def parse_substitution_comment(comments):
    """Extract (name, d, base_vars) from DIMACS comments, or None."""
    for c in comments:
        parts = c.split()
        if parts and parts[0] == "substitution":
            fields = dict(p.split("=", 1) for p in parts[1:])
            return fields["f"], int(fields["d"]), int(fields["base_vars"])
    return None


# ---------------------------------------------------------------------------
# proof traces
#
#   p proof k=<k> mode=<syntactic|semantic>
#   a <clause>                 axiom download
#   i <rule> <ids> : <dnf>     inference (rule in cut/andi/ande/weak/sem)
#   e <id>                     erasure
#
# ids are assigned by arrival order (downloads and inferences), never reused.

RULE_NAMES = ("cut", "andi", "ande", "weak", "sem")


def derivation_to_text(derivation) -> str:
    from .proofs import AxiomDownload, Erasure, Inference

    if derivation.assumptions:
        raise FormatError("derivations with assumptions are not serializable")
    lines = [f"p proof k={derivation.k} mode={derivation.mode}"]
    for step in derivation.steps:
        if isinstance(step, AxiomDownload):
            lines.append(f"a {clause_to_text(step.clause)}")
        elif isinstance(step, Inference):
            ids = " ".join(str(p) for p in step.premises)
            ids = f"{ids} " if ids else ""
            lines.append(f"i {step.rule} {ids}: {dnf_to_text(step.formula)}")
        elif isinstance(step, Erasure):
            lines.append(f"e {step.target}")
        else:
            raise FormatError(f"unknown step {step!r}")
    return "\n".join(lines) + "\n"


def derivation_from_text(text: str, formula: CnfFormula):
    from .proofs import AxiomDownload, Derivation, Erasure, Inference

    header = None
    steps = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        if line.startswith("p "):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "proof":
                raise FormatError(f"bad proof header {line!r}")
            fields = dict(p.split("=", 1) for p in parts[2:])
            header = (int(fields["k"]), fields["mode"])
            continue
        if header is None:
            raise FormatError("step before proof header")
        k = header[0]
        if line.startswith("a "):
            steps.append(AxiomDownload(clause_from_text(line[2:])))
        elif line.startswith("e "):
            steps.append(Erasure(int(line[2:])))
        elif line.startswith("i "):
            head, _, body = line[2:].partition(":")
            toks = head.split()
            if not toks or toks[0] not in RULE_NAMES:
                raise FormatError(f"bad inference line {line!r}")
            rule = toks[0]
            premises = tuple(int(t) for t in toks[1:])
            steps.append(Inference(dnf_from_text(body, k=k), rule, premises))
        else:
            raise FormatError(f"bad trace line {line!r}")
    if header is None:
        raise FormatError("missing proof header")
    return Derivation(formula=formula, k=header[0], mode=header[1], steps=tuple(steps))


# ---------------------------------------------------------------------------
# pebbling traces: one move per line ("pb v" / "rb v" / "pw v" / "rw v")


def pebbling_to_text(moves) -> str:
    return "\n".join(f"{m.kind} {m.vertex}" for m in moves) + ("\n" if moves else "")


def pebbling_from_text(text: str):
    from .pebbling import MOVE_KINDS, Move

    moves = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in MOVE_KINDS:
            raise FormatError(f"bad move line {line!r}")
        moves.append(Move(parts[0], int(parts[1])))
    return tuple(moves)


# ---------------------------------------------------------------------------
# graph files: "e <from> <to>" lines, comments with "c"


def graph_to_text(dag) -> str:
    lines = [f"c n={dag.n} sink={dag.sink}"]
    lines += [f"e {u} {v}" for u, v in dag.edges]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str):
    from .graphs import Dag

    edges = []
    mx = 0
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "e":
            raise FormatError(f"bad edge line {line!r}")
        u, v = int(parts[1]), int(parts[2])
        edges.append((u, v))
        mx = max(mx, u, v)
    return Dag(n=mx, edges=tuple(edges))


# ---------------------------------------------------------------------------
# k-DNF set files: "p kdnf k=<k> m=<formulas>" then one DNF per line


def kdnf_set_to_text(formulas, k: int) -> str:
    lines = [f"p kdnf k={k} m={len(formulas)}"]
    lines += [dnf_to_text(f) for f in formulas]
    return "\n".join(lines) + "\n"


def kdnf_set_from_text(text: str):
    k = None
    formulas = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p "):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "kdnf":
                raise FormatError(f"bad kdnf header {line!r}")
            fields = dict(p.split("=", 1) for p in parts[2:])
            k = int(fields["k"])
            continue
        if k is None:
            raise FormatError("formula before kdnf header")
        formulas.append(dnf_from_text(line, k=k))
    if k is None:
        raise FormatError("missing kdnf header")
    return formulas, k
