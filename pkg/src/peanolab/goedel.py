"""Arithmetization: formulas and proof sequences as natural numbers.

A formula is flattened to a prefix string of symbol numbers over the fixed
table below; a proof is the concatenation of its line formulas with a
separator symbol (justifications are excluded: they are re-derivable by
search).  Two schemes turn a symbol string into a single natural:

* ``prime-v1``: the classical product of consecutive primes raised to the
  symbol numbers, ``code = prod p_i ** s_i``.  Faithful to the cited
  construction and the default for formulas.
* ``pack-v1``: a varint byte packing of the same symbol string.  Proof
  codes default to this scheme: a prime-exponent code of a realistic proof
  has millions of bits and is infeasible to build or factor.

Symbol table (version 1):

    1 '='   2 '~'   3 '->'   4 'forall'   5 '0'
    6 'S'   7 '+'   8 '*'    9 line separator
    10/11 numeral literal brackets, 12..21 decimal digits 0..9
    22+enc(name) variables, enc = bijective base-63 over [a-z A-Z 0-9 _]

Packed numerals are coded as decimal digit blocks, which keeps codes of
formulas mentioning astronomically large numerals at desk scale.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import MalformedCodeError

# codes serialize as decimal strings; realistic proof codes run to
# hundreds of thousands of digits, far past the interpreter's default cap
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(max(20_000_000, sys.get_int_max_str_digits()))
from .kernel import (
    Generalisation, InductionInstance, LogicalAxiom, ModusPonens, PAAxiom,
    Proof, ProofLine, check_proof, induction_decomposition,
    matches_logical_axiom, matches_pa_axiom, validate_line,
)
from .syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Num, Succ, Term, Var,
)

SYM_EQ, SYM_NOT, SYM_IMPLIES, SYM_FORALL = 1, 2, 3, 4
SYM_ZERO, SYM_SUCC, SYM_ADD, SYM_MUL = 5, 6, 7, 8
SYM_SEP, SYM_NUM_OPEN, SYM_NUM_CLOSE = 9, 10, 11
SYM_DIGIT_BASE = 12          # 12..21 are the decimal digits
SYM_VAR_BASE = 22

SCHEME_PRIME = "prime-v1"
SCHEME_PACK = "pack-v1"
SCHEMES = (SCHEME_PRIME, SCHEME_PACK)

_IDENT_ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_"
_IDENT_INDEX = {ch: i for i, ch in enumerate(_IDENT_ALPHABET)}


@dataclass(frozen=True, slots=True)
class GoedelCode:
    value: int
    kind: str    # 'formula' | 'proof'
    scheme: str  # SCHEME_PRIME | SCHEME_PACK


def _encode_name(name: str) -> int:
    # bijective base-63: positive for nonempty identifiers
    value = 0
    for ch in reversed(name):
        value = value * 63 + _IDENT_INDEX[ch] + 1
    return value


def _decode_name(value: int) -> str:
    chars = []
    while value > 0:
        value, digit = divmod(value - 1, 63)
        chars.append(_IDENT_ALPHABET[digit])
    return "".join(chars)


# ---------------------------------------------------------------------------
# Formula <-> symbol string
# ---------------------------------------------------------------------------

def _term_symbols(t: Term, out: list[int]) -> None:
    if isinstance(t, Num):
        if t.value == 0:
            out.append(SYM_ZERO)
        else:
            out.append(SYM_NUM_OPEN)
            out.extend(SYM_DIGIT_BASE + int(d) for d in str(t.value))
            out.append(SYM_NUM_CLOSE)
    elif isinstance(t, Var):
        out.append(SYM_VAR_BASE + _encode_name(t.name))
    elif isinstance(t, Succ):
        out.append(SYM_SUCC)
        _term_symbols(t.inner, out)
    elif isinstance(t, Add):
        out.append(SYM_ADD)
        _term_symbols(t.left, out)
        _term_symbols(t.right, out)
    else:
        out.append(SYM_MUL)
        _term_symbols(t.left, out)
        _term_symbols(t.right, out)


def formula_symbols(f: Formula) -> list[int]:
    out: list[int] = []

    def go(g: Formula) -> None:
        if isinstance(g, Eq):
            out.append(SYM_EQ)
            _term_symbols(g.left, out)
            _term_symbols(g.right, out)
        elif isinstance(g, Not):
            out.append(SYM_NOT)
            go(g.inner)
        elif isinstance(g, Implies):
            out.append(SYM_IMPLIES)
            go(g.antecedent)
            go(g.consequent)
        else:
            out.append(SYM_FORALL)
            out.append(SYM_VAR_BASE + _encode_name(g.var))
            go(g.body)

    go(f)
    return out


class _SymbolReader:
    def __init__(self, symbols: list[int]):
        self.symbols = symbols
        self.pos = 0

    def next(self) -> int:
        if self.pos >= len(self.symbols):
            raise MalformedCodeError("unexpected end of symbol string", self.pos)
        s = self.symbols[self.pos]
        self.pos += 1
        return s

    def term(self) -> Term:
        at = self.pos
        s = self.next()
        if s == SYM_ZERO:
            return Num(0)
        if s == SYM_NUM_OPEN:
            digits = []
            while True:
                d = self.next()
                if d == SYM_NUM_CLOSE:
                    break
                if not SYM_DIGIT_BASE <= d < SYM_DIGIT_BASE + 10:
                    raise MalformedCodeError("bad digit in numeral literal",
                                             self.pos - 1)
                digits.append(d - SYM_DIGIT_BASE)
            if not digits or digits[0] == 0:
                raise MalformedCodeError("empty or zero-padded numeral literal", at)
            return Num(int("".join(map(str, digits))))
        if s == SYM_SUCC:
            inner = self.term()
            if isinstance(inner, Num):
                raise MalformedCodeError("non-canonical successor of a numeral", at)
            return Succ(inner)
        if s == SYM_ADD:
            return Add(self.term(), self.term())
        if s == SYM_MUL:
            return Mul(self.term(), self.term())
        if s >= SYM_VAR_BASE:
            name = _decode_name(s - SYM_VAR_BASE)
            if not name or name[0].isdigit():
                raise MalformedCodeError(f"invalid variable encoding {s}", at)
            return Var(name)
        raise MalformedCodeError(f"symbol {s} cannot start a term", at)

    def formula(self) -> Formula:
        at = self.pos
        s = self.next()
        if s == SYM_EQ:
            return Eq(self.term(), self.term())
        if s == SYM_NOT:
            return Not(self.formula())
        if s == SYM_IMPLIES:
            return Implies(self.formula(), self.formula())
        if s == SYM_FORALL:
            v = self.next()
            if v < SYM_VAR_BASE:
                raise MalformedCodeError("quantifier must bind a variable",
                                         self.pos - 1)
            name = _decode_name(v - SYM_VAR_BASE)
            if not name or name[0].isdigit():
                raise MalformedCodeError(f"invalid variable encoding {v}", at)
            return ForAll(name, self.formula())
        raise MalformedCodeError(f"symbol {s} cannot start a formula", at)


def symbols_to_formula(symbols: list[int]) -> Formula:
    reader = _SymbolReader(symbols)
    f = reader.formula()
    if reader.pos != len(symbols):
        raise MalformedCodeError("trailing symbols after formula", reader.pos)
    return f


# ---------------------------------------------------------------------------
# Symbol string <-> natural number
# ---------------------------------------------------------------------------

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def _is_prime_by_table(n: int) -> bool:
    for p in _PRIMES:
        if p * p > n:
            return True
        if n % p == 0:
            return False
    return True


def _prime(i: int) -> int:
    while len(_PRIMES) <= i:
        candidate = _PRIMES[-1] + 2
        while not _is_prime_by_table(candidate):
            candidate += 2
        _PRIMES.append(candidate)
    return _PRIMES[i]


def _balanced_product(factors: list[int]) -> int:
    if not factors:
        return 1
    while len(factors) > 1:
        factors = [factors[i] * factors[i + 1] if i + 1 < len(factors)
                   else factors[i]
                   for i in range(0, len(factors), 2)]
    return factors[0]


def _prime_encode(symbols: list[int]) -> int:
    return _balanced_product([pow(_prime(i), s) for i, s in enumerate(symbols)])


def _prime_decode(value: int) -> list[int]:
    if value <= 1:
        raise MalformedCodeError("0 and 1 are reserved non-codes", 0)
    symbols = []
    i = 0
    while value > 1:
        p = _prime(i)
        exponent = 0
        while value % p == 0:
            value //= p
            exponent += 1
        if exponent == 0:
            raise MalformedCodeError(
                "leftover factor not matching the next prime", i)
        symbols.append(exponent)
        i += 1
    return symbols


def _varint_encode(symbols: list[int]) -> int:
    out = bytearray([1])  # sentinel keeps the code nonzero and length-exact
    for s in symbols:
        if s <= 0:
            raise MalformedCodeError("symbols must be positive", 0)
        group = []
        while True:
            group.append(s & 0x7F)
            s >>= 7
            if not s:
                break
        for g in reversed(group[1:]):
            out.append(0x80 | g)
        out.append(group[0])
    return int.from_bytes(bytes(out), "big")


def _varint_decode(value: int) -> list[int]:
    if value <= 0:
        raise MalformedCodeError("0 is a reserved non-code", 0)
    raw = value.to_bytes((value.bit_length() + 7) // 8, "big")
    if raw[0] != 1:
        raise MalformedCodeError("missing packing sentinel", 0)
    symbols = []
    acc = 0
    pending = False
    for i, byte in enumerate(raw[1:], start=1):
        acc = (acc << 7) | (byte & 0x7F)
        if byte & 0x80:
            pending = True
            continue
        if acc == 0:
            raise MalformedCodeError("zero symbol in packed string", i)
        symbols.append(acc)
        acc = 0
        pending = False
    if pending:
        raise MalformedCodeError("truncated varint group", len(raw))
    return symbols


def _encode_symbols(symbols: list[int], scheme: str) -> int:
    if scheme == SCHEME_PRIME:
        return _prime_encode(symbols)
    if scheme == SCHEME_PACK:
        return _varint_encode(symbols)
    raise MalformedCodeError(f"unknown scheme {scheme!r}")


def _decode_symbols(value: int, scheme: str) -> list[int]:
    if scheme == SCHEME_PRIME:
        return _prime_decode(value)
    if scheme == SCHEME_PACK:
        return _varint_decode(value)
    raise MalformedCodeError(f"unknown scheme {scheme!r}")


# ---------------------------------------------------------------------------
# Public encoding API
# ---------------------------------------------------------------------------

def encode_formula(f: Formula, scheme: str = SCHEME_PRIME) -> GoedelCode:
    return GoedelCode(_encode_symbols(formula_symbols(f), scheme), "formula", scheme)


def decode_formula(code: GoedelCode) -> Formula:
    if code.kind != "formula":
        raise MalformedCodeError(f"code has kind {code.kind!r}, not formula")
    return symbols_to_formula(_decode_symbols(code.value, code.scheme))


def proof_symbols(formulas: list[Formula]) -> list[int]:
    out: list[int] = []
    for i, f in enumerate(formulas):
        if i:
            out.append(SYM_SEP)
        out.extend(formula_symbols(f))
    return out


def encode_proof(proof: Proof, scheme: str = SCHEME_PACK) -> GoedelCode:
    symbols = proof_symbols([line.formula for line in proof.lines])
    return GoedelCode(_encode_symbols(symbols, scheme), "proof", scheme)


def decode_proof_formulas(code: GoedelCode) -> list[Formula]:
    """The formula sequence of a proof code (justifications are not coded)."""
    if code.kind != "proof":
        raise MalformedCodeError(f"code has kind {code.kind!r}, not proof")
    symbols = _decode_symbols(code.value, code.scheme)
    chunks: list[list[int]] = [[]]
    for s in symbols:
        if s == SYM_SEP:
            chunks.append([])
        else:
            chunks[-1].append(s)
    return [symbols_to_formula(chunk) for chunk in chunks]


def decode_proof(code: GoedelCode) -> Proof:
    """Rebuild a checkable Proof from a proof code by reconstructing
    justifications; raises MalformedCodeError when no justification fits."""
    formulas = decode_proof_formulas(code)
    proof = reconstruct_justifications(formulas)
    if proof is None:
        raise MalformedCodeError("no justification reconstruction found")
    return proof


# ---------------------------------------------------------------------------
# Justification reconstruction and the proof relation
# ---------------------------------------------------------------------------

def _candidate_justifications(f: Formula, earlier: list[Formula],
                              first_index: dict[Formula, int],
                              implications: dict[Formula, list[int]]):
    for schema in ("L1", "L2", "L3", "L4", "L5"):
        if matches_logical_axiom(f, schema) is None:
            yield LogicalAxiom(schema)
    for index in range(1, 9):
        if matches_pa_axiom(f, index):
            yield PAAxiom(index)
    ind = induction_decomposition(f)
    if ind is not None:
        yield InductionInstance(ind[0], ind[1])
    if isinstance(f, ForAll):
        premise = first_index.get(f.body)
        if premise is not None:
            yield Generalisation(premise, f.var)
    for j in implications.get(f, ()):
        impl = earlier[j - 1]
        assert isinstance(impl, Implies)
        i = first_index.get(impl.antecedent)
        if i is not None:
            yield ModusPonens(i, j)


def reconstruct_justifications(formulas: list[Formula]) -> Proof | None:
    """Bounded search for a justification per line; None when a line has none."""
    lines: list[ProofLine] = []
    earlier: list[Formula] = []
    first_index: dict[Formula, int] = {}
    implications: dict[Formula, list[int]] = {}
    for pos, f in enumerate(formulas, start=1):
        found = None
        for candidate in _candidate_justifications(f, earlier, first_index,
                                                   implications):
            line = ProofLine(pos, f, candidate)
            if validate_line(line, earlier) is None:
                found = line
                break
        if found is None:
            return None
        lines.append(found)
        earlier.append(f)
        if f not in first_index:
            first_index[f] = pos
        if isinstance(f, Implies):
            implications.setdefault(f.consequent, []).append(pos)
    if not lines:
        return None
    return Proof(tuple(lines))


def is_proof_code_of(x: GoedelCode, y: GoedelCode) -> bool:
    """The decidable relation: x codes a proof sequence that checks out and
    whose last formula is coded by y.  Total: every failure is False."""
    try:
        formulas = decode_proof_formulas(x)
        conclusion = decode_formula(y)
    except MalformedCodeError:
        return False
    if not formulas or formulas[-1] != conclusion:
        return False
    proof = reconstruct_justifications(formulas)
    if proof is None:
        return False
    return check_proof(proof).accepted
