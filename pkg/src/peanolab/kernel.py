"""Trusted checker for Hilbert-style PA proofs.

The axiom base is Mendelson's system K for first-order logic (schemata
L1..L5) together with the eight proper axioms PA1..PA8 and the induction
schema, with modus ponens and generalisation as the only rules.  Proper
axioms are matched up to injective renaming of their variables; induction
instances must be declared explicitly (formula plus induction variable),
since the schema ranges over all formulas and cannot be pattern-matched
safely.

The checker is a single pass over the lines; it does no search and trusts
nothing produced elsewhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .syntax import (
    Add, CaptureError, Eq, ForAll, Formula, Implies, Mul, Not, Num, Succ,
    Term, Var, free_vars, substitute, succ, succ_view,
)

# ---------------------------------------------------------------------------
# Justifications and proofs
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class LogicalAxiom:
    schema: str  # L1..L5; the instantiation is recovered by matching


@dataclass(frozen=True, slots=True)
class PAAxiom:
    index: int  # 1..8


@dataclass(frozen=True, slots=True)
class InductionInstance:
    formula: Formula
    var: str


@dataclass(frozen=True, slots=True)
class ModusPonens:
    antecedent: int   # line proving A
    implication: int  # line proving A -> B


@dataclass(frozen=True, slots=True)
class Generalisation:
    premise: int
    var: str


Justification = Union[LogicalAxiom, PAAxiom, InductionInstance,
                      ModusPonens, Generalisation]


@dataclass(frozen=True, slots=True)
class ProofLine:
    index: int
    formula: Formula
    justification: Justification


@dataclass(frozen=True, slots=True)
class Proof:
    lines: tuple[ProofLine, ...]

    @property
    def conclusion(self) -> Formula:
        return self.lines[-1].formula


@dataclass(frozen=True, slots=True)
class CheckReport:
    verdict: str  # 'accepted' | 'rejected'
    first_failure: Optional[tuple[int, str]] = None
    conclusion: Optional[Formula] = None

    @property
    def accepted(self) -> bool:
        return self.verdict == "accepted"


REASON_EMPTY = "proof must be nonempty"
REASON_INDEX = "line indices must be contiguous from 1"
REASON_DANGLING = "dangling reference"
REASON_SCHEMA = "bad schema instance"
REASON_CAPTURE = "capture-illegal L4 instance"
REASON_MP = "MP shape mismatch"
REASON_GEN = "GEN shape mismatch"


# ---------------------------------------------------------------------------
# Proper axioms PA1..PA8
# ---------------------------------------------------------------------------

_X1, _X2, _X3 = Var("x1"), Var("x2"), Var("x3")
ZERO = Num(0)

PA_AXIOMS: dict[int, Formula] = {
    1: Implies(Eq(_X1, _X2), Implies(Eq(_X1, _X3), Eq(_X2, _X3))),
    2: Implies(Eq(_X1, _X2), Eq(Succ(_X1), Succ(_X2))),
    3: Not(Eq(ZERO, Succ(_X1))),
    4: Implies(Eq(Succ(_X1), Succ(_X2)), Eq(_X1, _X2)),
    5: Eq(Add(_X1, ZERO), _X1),
    6: Eq(Add(_X1, Succ(_X2)), Succ(Add(_X1, _X2))),
    7: Eq(Mul(_X1, ZERO), ZERO),
    8: Eq(Mul(_X1, Succ(_X2)), Add(Mul(_X1, _X2), _X1)),
}


def pa_axiom(index: int) -> Formula:
    return PA_AXIOMS[index]


def induction_axiom(formula: Formula, var: str) -> Formula:
    """PA9 instance: F(0) -> ((forall x (F(x) -> F(x'))) -> forall x F(x))."""
    base = substitute(formula, var, ZERO)
    step_conc = substitute(formula, var, succ(Var(var)))
    return Implies(base,
                   Implies(ForAll(var, Implies(formula, step_conc)),
                           ForAll(var, formula)))


def _match_renaming(pattern: Term | Formula, instance: Term | Formula,
                    mapping: dict[str, str]) -> bool:
    """Match up to injective renaming of the pattern's variables."""
    if isinstance(pattern, Var):
        if not isinstance(instance, Var):
            return False
        bound = mapping.get(pattern.name)
        if bound is None:
            if instance.name in mapping.values():
                return False
            mapping[pattern.name] = instance.name
            return True
        return bound == instance.name
    if isinstance(pattern, Num):
        return isinstance(instance, Num) and pattern.value == instance.value
    if isinstance(pattern, Succ):
        inner = succ_view(instance) if isinstance(instance, (Succ, Num)) else None
        return inner is not None and _match_renaming(pattern.inner, inner, mapping)
    if isinstance(pattern, (Add, Mul)):
        if type(instance) is not type(pattern):
            return False
        return (_match_renaming(pattern.left, instance.left, mapping)
                and _match_renaming(pattern.right, instance.right, mapping))
    if isinstance(pattern, Eq):
        if not isinstance(instance, Eq):
            return False
        return (_match_renaming(pattern.left, instance.left, mapping)
                and _match_renaming(pattern.right, instance.right, mapping))
    if isinstance(pattern, Not):
        return isinstance(instance, Not) and _match_renaming(pattern.inner, instance.inner, mapping)
    if isinstance(pattern, Implies):
        if not isinstance(instance, Implies):
            return False
        return (_match_renaming(pattern.antecedent, instance.antecedent, mapping)
                and _match_renaming(pattern.consequent, instance.consequent, mapping))
    raise TypeError(f"unexpected pattern node {pattern!r}")


def matches_pa_axiom(f: Formula, index: int) -> bool:
    return _match_renaming(PA_AXIOMS[index], f, {})


# ---------------------------------------------------------------------------
# Logical schemata L1..L5
# ---------------------------------------------------------------------------

def _match_l1(f: Formula) -> bool:
    # B -> (C -> B)
    return (isinstance(f, Implies)
            and isinstance(f.consequent, Implies)
            and f.consequent.consequent == f.antecedent)


def _match_l2(f: Formula) -> bool:
    # (B -> (C -> D)) -> ((B -> C) -> (B -> D))
    if not (isinstance(f, Implies) and isinstance(f.antecedent, Implies)
            and isinstance(f.antecedent.consequent, Implies)
            and isinstance(f.consequent, Implies)
            and isinstance(f.consequent.antecedent, Implies)
            and isinstance(f.consequent.consequent, Implies)):
        return False
    b = f.antecedent.antecedent
    c = f.antecedent.consequent.antecedent
    d = f.antecedent.consequent.consequent
    return (f.consequent.antecedent == Implies(b, c)
            and f.consequent.consequent == Implies(b, d))


def _match_l3(f: Formula) -> bool:
    # (~C -> ~B) -> ((~C -> B) -> C)
    if not (isinstance(f, Implies) and isinstance(f.antecedent, Implies)
            and isinstance(f.antecedent.antecedent, Not)
            and isinstance(f.antecedent.consequent, Not)
            and isinstance(f.consequent, Implies)
            and isinstance(f.consequent.antecedent, Implies)):
        return False
    c = f.antecedent.antecedent.inner
    b = f.antecedent.consequent.inner
    return (f.consequent.antecedent == Implies(Not(c), b)
            and f.consequent.consequent == c)


class _ExtractMismatch(Exception):
    pass


def _extract_instantiation(pattern: Formula | Term, instance: Formula | Term,
                           var: str, bound: frozenset[str],
                           out: list[Term]) -> None:
    """Collect the term standing where ``var`` occurs free in ``pattern``."""
    if isinstance(pattern, Var):
        if pattern.name == var and var not in bound:
            out.append(instance)  # type: ignore[arg-type]
            return
        if pattern != instance:
            raise _ExtractMismatch
        return
    if isinstance(pattern, Num):
        if pattern != instance:
            raise _ExtractMismatch
        return
    if isinstance(pattern, Succ):
        inner = succ_view(instance) if isinstance(instance, (Succ, Num)) else None
        if inner is None:
            raise _ExtractMismatch
        _extract_instantiation(pattern.inner, inner, var, bound, out)
        return
    if isinstance(pattern, (Add, Mul)):
        if type(instance) is not type(pattern):
            raise _ExtractMismatch
        _extract_instantiation(pattern.left, instance.left, var, bound, out)
        _extract_instantiation(pattern.right, instance.right, var, bound, out)
        return
    if isinstance(pattern, Eq):
        if not isinstance(instance, Eq):
            raise _ExtractMismatch
        _extract_instantiation(pattern.left, instance.left, var, bound, out)
        _extract_instantiation(pattern.right, instance.right, var, bound, out)
        return
    if isinstance(pattern, Not):
        if not isinstance(instance, Not):
            raise _ExtractMismatch
        _extract_instantiation(pattern.inner, instance.inner, var, bound, out)
        return
    if isinstance(pattern, Implies):
        if not isinstance(instance, Implies):
            raise _ExtractMismatch
        _extract_instantiation(pattern.antecedent, instance.antecedent, var, bound, out)
        _extract_instantiation(pattern.consequent, instance.consequent, var, bound, out)
        return
    if isinstance(pattern, ForAll):
        if not isinstance(instance, ForAll) or instance.var != pattern.var:
            raise _ExtractMismatch
        _extract_instantiation(pattern.body, instance.body, var,
                               bound | {pattern.var}, out)
        return
    raise TypeError(f"unexpected node {pattern!r}")


def _match_l4(f: Formula) -> Optional[str]:
    """None when f instantiates L4; otherwise a rejection reason."""
    # forall x B(x) -> B(t), t free for x in B
    if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)):
        return REASON_SCHEMA
    x = f.antecedent.var
    body = f.antecedent.body
    target = f.consequent
    candidates: list[Term] = []
    try:
        _extract_instantiation(body, target, x, frozenset(), candidates)
    except _ExtractMismatch:
        return REASON_SCHEMA
    if not candidates:
        return None if body == target else REASON_SCHEMA
    t = candidates[0]
    if any(c != t for c in candidates[1:]):
        return REASON_SCHEMA
    try:
        instantiated = substitute(body, x, t)
    except CaptureError:
        return REASON_CAPTURE
    return None if instantiated == target else REASON_SCHEMA


def _match_l5(f: Formula) -> bool:
    # forall x (B -> C) -> (B -> forall x C), x not free in B
    if not (isinstance(f, Implies) and isinstance(f.antecedent, ForAll)
            and isinstance(f.antecedent.body, Implies)
            and isinstance(f.consequent, Implies)
            and isinstance(f.consequent.consequent, ForAll)):
        return False
    x = f.antecedent.var
    b = f.antecedent.body.antecedent
    c = f.antecedent.body.consequent
    return (f.consequent.antecedent == b
            and f.consequent.consequent == ForAll(x, c)
            and x not in free_vars(b))


def matches_logical_axiom(f: Formula, schema: str) -> Optional[str]:
    """None when f instantiates the schema; otherwise a rejection reason."""
    if schema == "L1":
        return None if _match_l1(f) else REASON_SCHEMA
    if schema == "L2":
        return None if _match_l2(f) else REASON_SCHEMA
    if schema == "L3":
        return None if _match_l3(f) else REASON_SCHEMA
    if schema == "L4":
        return _match_l4(f)
    if schema == "L5":
        return None if _match_l5(f) else REASON_SCHEMA
    return REASON_SCHEMA


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def validate_line(line: ProofLine, earlier: list[Formula]) -> Optional[str]:
    """None when the line is a correct instance of its justification,
    given the formulas of the strictly earlier lines; else the reason."""
    j = line.justification
    f = line.formula
    if isinstance(j, LogicalAxiom):
        return matches_logical_axiom(f, j.schema)
    if isinstance(j, PAAxiom):
        if j.index not in PA_AXIOMS:
            return REASON_SCHEMA
        return None if matches_pa_axiom(f, j.index) else REASON_SCHEMA
    if isinstance(j, InductionInstance):
        expected = induction_axiom(j.formula, j.var)
        return None if f == expected else REASON_SCHEMA
    if isinstance(j, ModusPonens):
        for ref in (j.antecedent, j.implication):
            if not 1 <= ref < line.index:
                return REASON_DANGLING
        impl = earlier[j.implication - 1]
        ante = earlier[j.antecedent - 1]
        if isinstance(impl, Implies) and impl.antecedent == ante and impl.consequent == f:
            return None
        return REASON_MP
    if isinstance(j, Generalisation):
        if not 1 <= j.premise < line.index:
            return REASON_DANGLING
        premise = earlier[j.premise - 1]
        if f == ForAll(j.var, premise):
            return None
        return REASON_GEN
    return REASON_SCHEMA


def check_proof(proof: Proof) -> CheckReport:
    if not proof.lines:
        return CheckReport("rejected", (0, REASON_EMPTY))
    formulas: list[Formula] = []
    for pos, line in enumerate(proof.lines, start=1):
        if line.index != pos:
            return CheckReport("rejected", (pos, REASON_INDEX))
        reason = validate_line(line, formulas)
        if reason is not None:
            return CheckReport("rejected", (pos, reason))
        formulas.append(line.formula)
    return CheckReport("accepted", None, proof.conclusion)


# ---------------------------------------------------------------------------
# Untrusted classification helper
# ---------------------------------------------------------------------------

def induction_decomposition(f: Formula) -> Optional[tuple[Formula, str]]:
    """Recover (formula, var) when f has the induction-instance shape."""
    if not (isinstance(f, Implies) and isinstance(f.consequent, Implies)
            and isinstance(f.consequent.consequent, ForAll)):
        return None
    var = f.consequent.consequent.var
    formula = f.consequent.consequent.body
    if f == induction_axiom(formula, var):
        return formula, var
    return None


def classify_schema(f: Formula) -> set[str]:
    """Every axiom-schema tag the formula instantiates.  Tooling only."""
    tags: set[str] = set()
    for schema in ("L1", "L2", "L3", "L4", "L5"):
        if matches_logical_axiom(f, schema) is None:
            tags.add(schema)
    for i in PA_AXIOMS:
        if matches_pa_axiom(f, i):
            tags.add(f"PA{i}")
    if induction_decomposition(f) is not None:
        tags.add("Induction")
    return tags
