import pytest
from hypothesis import given, settings

from conftest import formula_strategy
from peanolab.errors import PreconditionError, UnboundVariableError
from peanolab.kernel import pa_axiom
from peanolab.parser import parse_formula
from peanolab.semantics import (
    eval_bounded, eval_qf, eval_term, is_quantifier_free, linear_form,
    universal_closure,
)
from peanolab.syntax import (
    Add, Eq, ForAll, Mul, Not, Num, Succ, Var, free_vars, is_closed, numeral,
    substitute,
)


def test_eval_term_examples():
    assert eval_term(numeral(7).term, {}) == 7
    assert eval_term(Add(Succ(Var("x")), Num(1)), {"x": 2}) == 4
    for y in range(5):
        assert eval_term(Mul(Var("x"), Var("y")), {"x": 0, "y": y}) == 0


def test_eval_term_unbound():
    with pytest.raises(UnboundVariableError):
        eval_term(Var("q"), {})


def test_eval_qf_examples():
    assert eval_qf(parse_formula("S(S(0)) + S(S(0)) = S(S(S(S(0))))"))
    assert not eval_qf(parse_formula("~(0 = 0)"))


def test_eval_qf_preconditions():
    with pytest.raises(PreconditionError):
        eval_qf(parse_formula("forall x. x = x"))
    with pytest.raises(PreconditionError):
        eval_qf(parse_formula("x = 0"))


@settings(max_examples=200, deadline=None)
@given(formula_strategy(3))
def test_double_negation_agreement(f):
    closed = f
    for v in sorted(free_vars(f)):
        closed = substitute(closed, v, Num(1))
    if not is_quantifier_free(closed) or not is_closed(closed):
        return
    assert eval_qf(closed) == eval_qf(Not(Not(closed)))


def test_bounded_universal_verified():
    f = parse_formula("forall x. x + 0 = x")
    verdict = eval_bounded(f, cutoff=25, mode="verifiable")
    assert verdict.kind == "verified_to"
    assert verdict.cutoff == 25


def test_bounded_universal_counterexample():
    f = parse_formula("forall x. x = 0")
    for cutoff in (1, 5, 25):
        verdict = eval_bounded(f, cutoff=cutoff)
        assert verdict.is_false
        assert verdict.counterexample_assignment() == {"x": 1}


def test_bounded_existential_found_witness():
    from peanolab.beta import beta_formula_at
    f = beta_formula_at(13, 2, 1, 3)
    for mode in ("verifiable", "computable"):
        assert eval_bounded(f, cutoff=5, mode=mode).is_true


def test_existential_beyond_cutoff_is_undecided_without_solver():
    # matrix the witness solvers do not recognise: x * x = 36
    f = parse_formula("exists x. x * x = S(S(S(S(0)))) * S(S(S(S(S(S(S(S(S(0)))))))))")
    verdict = eval_bounded(f, cutoff=3)
    assert verdict.kind == "undecided"
    assert eval_bounded(f, cutoff=7).is_true


def test_linear_solver_finds_huge_witness():
    # witness far beyond any cutoff: x + 1 = 10^12
    big = 10 ** 12
    f = Not(ForAll("x", Not(Eq(Add(Var("x"), Num(1)), Num(big)))))
    assert eval_bounded(f, cutoff=3).is_true
    g = Not(ForAll("x", Not(Eq(Mul(Num(2), Var("x")), Num(big + 1)))))
    assert eval_bounded(g, cutoff=3).is_false   # odd target, coefficient 2


def test_computable_mode_linear_comparison():
    f = parse_formula("forall x. x + 0 = x")
    verdict = eval_bounded(f, cutoff=25, mode="computable")
    assert verdict.is_true
    g = parse_formula("forall x. x + x = x * S(S(0))")
    assert eval_bounded(g, cutoff=10, mode="computable").is_true


def test_computable_mode_undecided_without_procedure():
    f = parse_formula("forall x. ~(x * x = S(S(0)))")
    verdict = eval_bounded(f, cutoff=25, mode="computable")
    assert verdict.kind == "undecided"
    assert eval_bounded(f, cutoff=25, mode="verifiable").kind == "verified_to"


def test_monotone_counterexample():
    f = parse_formula("forall x. forall y. x + y = y")
    first = eval_bounded(f, cutoff=2)
    assert first.is_false
    for cutoff in (3, 10, 25):
        again = eval_bounded(f, cutoff=cutoff)
        assert again.is_false
        assert again.counterexample == first.counterexample


def test_pi1_matches_finite_conjunction():
    f = parse_formula("forall x. ~(x * x = S(S(S(S(S(S(0))))))) ")
    cutoff = 6
    brute = all(eval_qf(substitute(f.body, "x", Num(n)))
                for n in range(cutoff + 1))
    verdict = eval_bounded(f, cutoff=cutoff)
    assert brute == (verdict.kind == "verified_to")


def test_pa_axioms_verified_at_cutoff():
    for i in range(1, 9):
        closure = universal_closure(pa_axiom(i))
        verdict = eval_bounded(closure, cutoff=25)
        assert verdict.kind == "verified_to", (i, verdict)


def test_induction_instances_verified_at_cutoff():
    from peanolab.kernel import induction_axiom
    family = [
        parse_formula("x + 0 = x"),
        parse_formula("0 + x = x"),
        parse_formula("x * S(0) = x"),
        parse_formula("x + y = y + x"),
        parse_formula("~(S(x) = 0)"),
    ]
    for f in family:
        closure = universal_closure(induction_axiom(f, "x"))
        verdict = eval_bounded(closure, cutoff=25)
        assert not verdict.is_false, (f, verdict)


def test_nested_quantifier_closure_counterexample_is_least():
    f = parse_formula("forall x. forall y. x = y")
    verdict = eval_bounded(f, cutoff=25)
    assert verdict.is_false
    assert verdict.counterexample_assignment() == {"x": 0, "y": 1}


def test_linear_form_extraction():
    t = Add(Mul(Num(3), Var("w")), Num(5))
    assert linear_form(t, "w") == (5, 3)
    assert linear_form(Mul(Var("w"), Var("w")), "w") is None


def test_eval_bounded_preconditions():
    with pytest.raises(PreconditionError):
        eval_bounded(parse_formula("x = 0"))
    with pytest.raises(PreconditionError):
        eval_bounded(parse_formula("0 = 0"), mode="quantum")
