"""Line-oriented proof files.

Each line is ``<index> | <formula> | <justification>`` where the
justification is one of::

    L1 .. L5
    PA1 .. PA8
    IND <var> : <formula>
    MP <i> <j>
    GEN <i> <var>

Blank lines and '#' comments are ignored.  A file is accepted exactly when
its parsed proof is accepted by the kernel.

A formula may itself contain '|' (disjunction sugar), so the field split
finds the first '|' followed by a justification keyword; the keywords are
reserved words that can never occur inside a formula.
"""

from __future__ import annotations

from .kernel import (
    Generalisation, InductionInstance, Justification, LogicalAxiom,
    ModusPonens, PAAxiom, Proof, ProofLine,
)
from .parser import ParseError, parse_formula, render

_JUST_KEYWORDS = (
    {f"L{i}" for i in range(1, 6)}
    | {f"PA{i}" for i in range(1, 9)}
    | {"IND", "MP", "GEN"}
)


class ProofFileError(Exception):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _parse_justification(text: str, lineno: int) -> Justification:
    parts = text.split(None, 1)
    if not parts:
        raise ProofFileError("missing justification", lineno)
    head = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    if head.startswith("L") and head in _JUST_KEYWORDS:
        if rest:
            raise ProofFileError(f"unexpected text after {head}", lineno)
        return LogicalAxiom(head)
    if head.startswith("PA") and head in _JUST_KEYWORDS:
        if rest:
            raise ProofFileError(f"unexpected text after {head}", lineno)
        return PAAxiom(int(head[2:]))
    if head == "MP":
        try:
            i, j = rest.split()
            return ModusPonens(int(i), int(j))
        except ValueError:
            raise ProofFileError("MP needs two line numbers", lineno) from None
    if head == "GEN":
        try:
            i, var = rest.split()
            return Generalisation(int(i), var)
        except ValueError:
            raise ProofFileError("GEN needs a line number and a variable", lineno) from None
    if head == "IND":
        var, sep, formula_text = rest.partition(":")
        var = var.strip()
        if not sep or not var:
            raise ProofFileError("IND needs '<var> : <formula>'", lineno)
        try:
            formula = parse_formula(formula_text)
        except ParseError as exc:
            raise ProofFileError(f"bad IND formula: {exc}", lineno) from None
        return InductionInstance(formula, var)
    raise ProofFileError(f"unknown justification {head!r}", lineno)


def _split_fields(body: str, lineno: int) -> tuple[str, str]:
    """Split '<formula> | <justification>' at the justification keyword."""
    start = 0
    while True:
        bar = body.find("|", start)
        if bar == -1:
            raise ProofFileError("missing justification field", lineno)
        tail = body[bar + 1:].strip()
        head = tail.split(None, 1)[0] if tail else ""
        if head in _JUST_KEYWORDS:
            return body[:bar], tail
        start = bar + 1


def parse_proof(text: str) -> Proof:
    lines: list[ProofLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        index_text, sep, body = stripped.partition("|")
        if not sep:
            raise ProofFileError("expected '<index> | <formula> | <justification>'", lineno)
        try:
            index = int(index_text.strip())
        except ValueError:
            raise ProofFileError(f"bad line index {index_text.strip()!r}", lineno) from None
        formula_text, just_text = _split_fields(body, lineno)
        try:
            formula = parse_formula(formula_text)
        except ParseError as exc:
            raise ProofFileError(f"bad formula: {exc}", lineno) from None
        lines.append(ProofLine(index, formula, _parse_justification(just_text, lineno)))
    return Proof(tuple(lines))


def _justification_text(j: Justification) -> str:
    if isinstance(j, LogicalAxiom):
        return j.schema
    if isinstance(j, PAAxiom):
        return f"PA{j.index}"
    if isinstance(j, InductionInstance):
        return f"IND {j.var} : {render(j.formula)}"
    if isinstance(j, ModusPonens):
        return f"MP {j.antecedent} {j.implication}"
    return f"GEN {j.premise} {j.var}"


def serialize_proof(proof: Proof) -> str:
    out = []
    for line in proof.lines:
        out.append(f"{line.index} | {render(line.formula)} | {_justification_text(line.justification)}")
    return "\n".join(out) + "\n"
