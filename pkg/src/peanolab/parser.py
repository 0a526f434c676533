"""Concrete syntax: parsing and canonical rendering.

Grammar (UTF-8, '#' starts a line comment):

    formula := or ('->' formula)?            implication, right associative
    or      := and ('|' or)?
    and     := neg ('&' and)?
    neg     := '~' neg | atom
    atom    := '(' formula ')' | quant | term ('='|'<') term
    quant   := ('forall' | 'exists') IDENT '.' formula
    term    := mul ('+' mul)*                left associative
    mul     := prim ('*' prim)*              left associative
    prim    := NAT | IDENT | 'S' '(' term ')' | '(' term ')'

A quantifier body extends maximally to the right.  NAT literals are sugar
for iterated successors: ``3`` parses to the same tree as ``S(S(S(0)))``.
``exists``, ``&``, ``|`` and ``<`` are sugar that expands into the core
connectives on construction.

Rendering is canonical: one spelling per formula, with minimal parentheses,
numerals printed unary up to UNARY_RENDER_MAX successors and decimal above.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Num, Succ, Term, Var,
    conj, disj, exists, less, succ,
)

UNARY_RENDER_MAX = 8

KEYWORDS = {"forall", "exists", "S"}
# Identifiers that would collide with the proof-file justification syntax are
# excluded from the variable alphabet outright.
RESERVED = KEYWORDS | {"IND", "MP", "GEN"} | {f"L{i}" for i in range(1, 6)} | {
    f"PA{i}" for i in range(1, 9)
}

_PUNCT = ("->", "(", ")", "+", "*", "=", "<", "~", "&", "|", ".")


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        loc = f"{line}:{col}"
        if expected:
            message = f"{message} (expected one of: {', '.join(expected)})"
        super().__init__(f"{loc}: {message}")
        self.line = line
        self.col = col
        self.expected = expected


@dataclass(frozen=True, slots=True)
class _Token:
    kind: str  # 'ident', 'nat', punctuation literal, or 'eof'
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and src[i] != "\n":
                i += 1
            continue
        if src.startswith("->", i):
            toks.append(_Token("->", "->", line, col))
            i += 2
            col += 2
            continue
        if ch in "()+*=<~&|.":
            toks.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(_Token("nat", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Token("ident", src[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("eof", "", line, col))
    return toks


@dataclass
class _Parser:
    toks: list[_Token]
    pos: int = 0
    furthest: ParseError | None = field(default=None, repr=False)

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def error(self, message: str, expected: tuple[str, ...] = ()) -> ParseError:
        t = self.peek()
        err = ParseError(f"{message}, found {t.text or 'end of input'!r}",
                         t.line, t.col, expected)
        if self.furthest is None or (err.line, err.col) >= (self.furthest.line, self.furthest.col):
            self.furthest = err
        return err

    def expect(self, kind: str) -> _Token:
        if self.peek().kind != kind:
            raise self.error(f"expected {kind!r}", (kind,))
        return self.next()

    # formulas ------------------------------------------------------------

    def formula(self) -> Formula:
        left = self.or_f()
        if self.peek().kind == "->":
            self.next()
            return Implies(left, self.formula())
        return left

    def or_f(self) -> Formula:
        left = self.and_f()
        if self.peek().kind == "|":
            self.next()
            return disj(left, self.or_f())
        return left

    def and_f(self) -> Formula:
        left = self.neg()
        if self.peek().kind == "&":
            self.next()
            return conj(left, self.and_f())
        return left

    def neg(self) -> Formula:
        if self.peek().kind == "~":
            self.next()
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        t = self.peek()
        if t.kind == "ident" and t.text in ("forall", "exists"):
            self.next()
            v = self.variable()
            self.expect(".")
            body = self.formula()
            return ForAll(v, body) if t.text == "forall" else exists(v, body)
        if t.kind == "(":
            # Could open either a formula or a term; try the formula reading
            # first and fall back to a parenthesised term in a comparison.
            mark = self.pos
            try:
                self.next()
                inner = self.formula()
                self.expect(")")
                return inner
            except ParseError:
                self.pos = mark
        return self.comparison()

    def comparison(self) -> Formula:
        left = self.term()
        t = self.peek()
        if t.kind == "=":
            self.next()
            return Eq(left, self.term())
        if t.kind == "<":
            self.next()
            return less(left, self.term())
        raise self.error("expected comparison operator", ("=", "<"))

    def variable(self) -> str:
        t = self.peek()
        if t.kind != "ident":
            raise self.error("expected variable name", ("identifier",))
        if t.text in RESERVED:
            raise self.error(f"reserved word {t.text!r} cannot be a variable")
        return self.next().text

    # terms ---------------------------------------------------------------

    def term(self) -> Term:
        left = self.mul()
        while self.peek().kind == "+":
            self.next()
            left = Add(left, self.mul())
        return left

    def mul(self) -> Term:
        left = self.prim()
        while self.peek().kind == "*":
            self.next()
            left = Mul(left, self.prim())
        return left

    def prim(self) -> Term:
        t = self.peek()
        if t.kind == "nat":
            self.next()
            return Num(int(t.text))
        if t.kind == "ident" and t.text == "S":
            self.next()
            self.expect("(")
            inner = self.term()
            self.expect(")")
            return succ(inner)
        if t.kind == "ident":
            if t.text in RESERVED:
                raise self.error(f"reserved word {t.text!r} cannot be a variable")
            self.next()
            return Var(t.text)
        if t.kind == "(":
            self.next()
            inner = self.term()
            self.expect(")")
            return inner
        raise self.error("expected term", ("0", "number", "identifier", "S(", "("))


def parse_formula(text: str) -> Formula:
    p = _Parser(_tokenize(text))
    try:
        f = p.formula()
    except ParseError:
        raise p.furthest if p.furthest is not None else ParseError("syntax error", 1, 1)
    if p.peek().kind != "eof":
        raise p.error("trailing input after formula", ("end of input",))
    return f


def parse_term(text: str) -> Term:
    p = _Parser(_tokenize(text))
    t = p.term()
    if p.peek().kind != "eof":
        raise p.error("trailing input after term", ("end of input",))
    return t


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def render_term(t: Term, level: int = 0) -> str:
    """level 0: sum context, 1: product context, 2: atom context."""
    if isinstance(t, Num):
        if t.value <= UNARY_RENDER_MAX:
            return "S(" * t.value + "0" + ")" * t.value
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"S({render_term(t.inner, 0)})"
    if isinstance(t, Add):
        s = f"{render_term(t.left, 0)} + {render_term(t.right, 1)}"
        return f"({s})" if level > 0 else s
    s = f"{render_term(t.left, 1)} * {render_term(t.right, 2)}"
    return f"({s})" if level > 1 else s


def _render_formula(f: Formula, tail: bool) -> str:
    if isinstance(f, Eq):
        return f"{render_term(f.left)} = {render_term(f.right)}"
    if isinstance(f, Not):
        if isinstance(f.inner, Not):
            return "~" + _render_formula(f.inner, tail)
        return "~(" + _render_formula(f.inner, True) + ")"
    if isinstance(f, Implies):
        a = f.antecedent
        if isinstance(a, (Implies, ForAll)):
            left = "(" + _render_formula(a, True) + ")"
        else:
            left = _render_formula(a, False)
        return f"{left} -> {_render_formula(f.consequent, tail)}"
    body = f"forall {f.var}. {_render_formula(f.body, True)}"
    return body if tail else f"({body})"


def render(f: Formula) -> str:
    return _render_formula(f, True)
