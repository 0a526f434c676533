"""Abstract syntax for first-order Peano Arithmetic.

Terms are built from 0, named variables, successor, + and *.  Formulas are
built from term equality, negation, implication and universal quantification;
existentials, conjunction, disjunction and strict order are provided as
derived constructors that expand into this core.

Numerals are kept in a packed form: a run of successors applied to 0 is a
single ``Num`` node carrying its value, so a numeral with 10**30 successors
is an O(1) object.  The ``succ`` smart constructor maintains the canonical
form (``Succ`` never wraps a ``Num``), which keeps structural equality exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Union


class CaptureError(Exception):
    """Substituting a term would capture one of its variables."""

    def __init__(self, var: str, term: "Term", binder: str):
        super().__init__(
            f"substituting for '{var}' would capture '{binder}' bound at the site"
        )
        self.var = var
        self.term = term
        self.binder = binder


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Num:
    """The numeral S^value(0), stored packed."""

    value: int

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError("numerals are naturals")


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class Succ:
    inner: "Term"

    def __post_init__(self) -> None:
        # canonical form: successor chains over 0 live in Num
        if isinstance(self.inner, Num):
            raise ValueError("use succ() to build successors of numerals")


@dataclass(frozen=True, slots=True)
class Add:
    left: "Term"
    right: "Term"


@dataclass(frozen=True, slots=True)
class Mul:
    left: "Term"
    right: "Term"


Term = Union[Num, Var, Succ, Add, Mul]

ZERO = Num(0)
ONE = Num(1)
TWO = Num(2)


def succ(t: Term) -> Term:
    """Successor with numeral packing: succ(Num(k)) == Num(k+1)."""
    if isinstance(t, Num):
        return Num(t.value + 1)
    return Succ(t)


def succ_view(t: Term) -> Optional[Term]:
    """If t is a successor S(u), return u; otherwise None."""
    if isinstance(t, Succ):
        return t.inner
    if isinstance(t, Num) and t.value > 0:
        return Num(t.value - 1)
    return None


@dataclass(frozen=True, slots=True)
class Numeral:
    """A natural number together with its PA term S^value(0)."""

    value: int

    @property
    def term(self) -> Term:
        return Num(self.value)

    def succ_count(self) -> int:
        return self.value


def numeral(n: int) -> Numeral:
    if n < 0:
        raise ValueError("numerals denote naturals")
    return Numeral(n)


# ---------------------------------------------------------------------------
# Formulas
# ---------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Not:
    inner: "Formula"


@dataclass(frozen=True, slots=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


@dataclass(frozen=True, slots=True)
class ForAll:
    var: str
    body: "Formula"


Formula = Union[Eq, Not, Implies, ForAll]


# Derived connectives: all sugar expands into the core on construction.

def exists(var: str, body: Formula) -> Formula:
    """(exists x)F  ==  ~(forall x)~F"""
    return Not(ForAll(var, Not(body)))


def conj(a: Formula, b: Formula) -> Formula:
    """A & B  ==  ~(A -> ~B)"""
    return Not(Implies(a, Not(b)))


def disj(a: Formula, b: Formula) -> Formula:
    """A | B  ==  ~A -> B"""
    return Implies(Not(a), b)


def less(t: Term, s: Term, *, witness_base: str = "v") -> Formula:
    """t < s  ==  exists v. t + S(v) = s, with v fresh for t and s."""
    avoid = term_vars(t) | term_vars(s)
    v = fresh_name(witness_base, avoid)
    return exists(v, Eq(Add(t, succ(Var(v))), s))


# ---------------------------------------------------------------------------
# Variable bookkeeping
# ---------------------------------------------------------------------------

def term_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Num):
        return frozenset()
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Succ):
        return term_vars(t.inner)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, Eq):
        return term_vars(f.left) | term_vars(f.right)
    if isinstance(f, Not):
        return free_vars(f.inner)
    if isinstance(f, Implies):
        return free_vars(f.antecedent) | free_vars(f.consequent)
    return free_vars(f.body) - {f.var}


def bound_binders(f: Formula) -> tuple[str, ...]:
    """The multiset of binder names, in tree order."""
    if isinstance(f, Eq):
        return ()
    if isinstance(f, Not):
        return bound_binders(f.inner)
    if isinstance(f, Implies):
        return bound_binders(f.antecedent) + bound_binders(f.consequent)
    return (f.var,) + bound_binders(f.body)


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    if base not in avoid:
        return base
    n = 1
    while f"{base}{n}" in avoid:
        n += 1
    return f"{base}{n}"


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def subst_term(t: Term, var: str, replacement: Term) -> Term:
    if isinstance(t, Num):
        return t
    if isinstance(t, Var):
        return replacement if t.name == var else t
    if isinstance(t, Succ):
        return succ(subst_term(t.inner, var, replacement))
    if isinstance(t, Add):
        return Add(subst_term(t.left, var, replacement),
                   subst_term(t.right, var, replacement))
    return Mul(subst_term(t.left, var, replacement),
               subst_term(t.right, var, replacement))


def substitute(f: Formula, var: str, replacement: Term) -> Formula:
    """Replace free occurrences of var; raise CaptureError instead of capturing."""
    repl_vars = term_vars(replacement)

    def go(g: Formula, bound: frozenset[str]) -> Formula:
        if isinstance(g, Eq):
            if var in term_vars(g.left) | term_vars(g.right):
                hit = bound & repl_vars
                if hit:
                    raise CaptureError(var, replacement, sorted(hit)[0])
            return Eq(subst_term(g.left, var, replacement),
                      subst_term(g.right, var, replacement))
        if isinstance(g, Not):
            return Not(go(g.inner, bound))
        if isinstance(g, Implies):
            return Implies(go(g.antecedent, bound), go(g.consequent, bound))
        if g.var == var:
            return g
        if var in free_vars(g.body):
            return ForAll(g.var, go(g.body, bound | {g.var}))
        return g

    return go(f, frozenset())


# ---------------------------------------------------------------------------
# Deterministic ordering helpers (used for canonical output)
# ---------------------------------------------------------------------------

def term_key(t: Term) -> tuple:
    if isinstance(t, Num):
        return (0, t.value)
    if isinstance(t, Var):
        return (1, t.name)
    if isinstance(t, Succ):
        return (2, term_key(t.inner))
    if isinstance(t, Add):
        return (3, term_key(t.left), term_key(t.right))
    return (4, term_key(t.left), term_key(t.right))


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from iter_subformulas(f.inner)
    elif isinstance(f, Implies):
        yield from iter_subformulas(f.antecedent)
        yield from iter_subformulas(f.consequent)
    elif isinstance(f, ForAll):
        yield from iter_subformulas(f.body)
