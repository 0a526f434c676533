import pytest
from hypothesis import given

from conftest import formula_strategy, term_strategy
from peanolab.syntax import (
    Add, CaptureError, Eq, ForAll, Implies, Mul, Not, Num, Succ, Var,
    bound_binders, conj, disj, exists, free_vars, less, numeral, substitute,
    succ, term_vars,
)


def test_numeral_structure():
    assert numeral(0).term == Num(0)
    assert numeral(2).term == Num(2)
    assert numeral(2).term == succ(succ(Num(0)))
    assert numeral(25).succ_count() == 25


def test_numeral_25_succ_nodes_by_source():
    # independent count: spell out 25 successor applications and parse
    from peanolab.parser import parse_term
    source = "S(" * 25 + "0" + ")" * 25
    assert parse_term(source) == numeral(25).term
    assert parse_term("S(" * 24 + "0" + ")" * 24) != numeral(25).term


def test_numeral_injective():
    for m in range(10):
        for n in range(10):
            assert (numeral(m).term == numeral(n).term) == (m == n)


def test_succ_packs_numerals():
    assert succ(Num(3)) == Num(4)
    # non-numeral cores keep an explicit successor node
    t = succ(Add(Var("x"), Num(1)))
    assert isinstance(t, Succ)
    with pytest.raises(ValueError):
        Succ(Num(0))


def test_negative_numeral_rejected():
    with pytest.raises(ValueError):
        Num(-1)


def test_derived_connectives_expand():
    a, b = Eq(Num(0), Num(0)), Eq(Var("x"), Num(1))
    assert exists("x", b) == Not(ForAll("x", Not(b)))
    assert conj(a, b) == Not(Implies(a, Not(b)))
    assert disj(a, b) == Implies(Not(a), b)


def test_less_expands_with_fresh_witness():
    f = less(Num(1), Num(3))
    assert f == Not(ForAll("v", Not(Eq(Add(Num(1), Succ(Var("v"))), Num(3)))))
    # the witness dodges variables of the operands
    g = less(Var("v"), Var("v1"))
    assert isinstance(g, Not)
    binder = g.inner.var
    assert binder not in ("v", "v1")


def test_free_vars():
    assert free_vars(Eq(Num(0), Num(0))) == frozenset()
    assert free_vars(ForAll("x", Eq(Var("x"), Var("y")))) == {"y"}
    assert term_vars(Mul(Add(Var("a"), Num(2)), Var("b"))) == {"a", "b"}


def test_substitute_free_occurrences():
    f = Eq(Var("x"), Num(0))
    assert substitute(f, "x", numeral(1).term) == Eq(Num(1), Num(0))


def test_substitute_skips_bound():
    f = ForAll("x", Eq(Var("x"), Var("x")))
    assert substitute(f, "x", Num(0)) == f


def test_substitute_capture_detected():
    f = ForAll("y", Eq(Var("x"), Var("y")))
    with pytest.raises(CaptureError):
        substitute(f, "x", Var("y"))


@given(formula_strategy())
def test_substitute_removes_variable(f):
    g = substitute(f, "x", Num(0))
    assert "x" not in free_vars(g)


@given(formula_strategy(), term_strategy(2))
def test_substitute_preserves_binders(f, t):
    try:
        g = substitute(f, "x", t)
    except CaptureError:
        return
    assert sorted(bound_binders(f)) == sorted(bound_binders(g))
