import pytest

from peanolab.beta import beta_formula_at, beta_value
from peanolab.errors import PreconditionError, ResourceLimitError
from peanolab.kernel import check_proof
from peanolab.parser import parse_formula, render
from peanolab.prover import (
    prove_add_fact, prove_beta_instance, prove_exists, prove_mul_fact,
    prove_neq_fact,
)
from peanolab.syntax import (
    Add, Eq, Num, Var, free_vars, numeral, substitute,
)


def accepted(proof):
    report = check_proof(proof)
    assert report.accepted, report.first_failure
    return report.conclusion


def test_add_zero_zero():
    proof = prove_add_fact(0, 0)
    assert accepted(proof) == parse_formula("0 + 0 = 0")


def test_add_two_two():
    proof = prove_add_fact(2, 2)
    assert accepted(proof) == parse_formula("S(S(0)) + S(S(0)) = S(S(S(S(0))))")


def test_mul_by_zero():
    proof = prove_mul_fact(5, 0)
    assert accepted(proof) == parse_formula("S(S(S(S(S(0))))) * 0 = 0")


def test_mul_two_three():
    proof = prove_mul_fact(2, 3)
    assert accepted(proof) == Eq(parse_formula("S(S(0)) * S(S(S(0))) = 0").left,
                                 numeral(6).term)


def test_neq_base_case():
    proof = prove_neq_fact(0, 1)
    assert accepted(proof) == parse_formula("~(0 = S(0))")


def test_neq_requires_distinct():
    with pytest.raises(PreconditionError):
        prove_neq_fact(3, 3)


def test_neq_symmetric_side():
    assert accepted(prove_neq_fact(1, 0)) == parse_formula("~(S(0) = 0)")


def test_conclusions_are_closed():
    for proof in (prove_add_fact(3, 4), prove_mul_fact(3, 2),
                  prove_neq_fact(2, 5), prove_beta_instance(13, 2, 1, 3)):
        assert not free_vars(proof.conclusion)


def test_exists_intro_reflexive_witness():
    # body "v = 0" with witness 0 on top of a proof of "0 = 0"
    from peanolab.prover import Derivations
    d = Derivations()
    d.refl(Num(0))
    zero_refl = d.b.to_proof()
    assert zero_refl.conclusion == Eq(Num(0), Num(0))
    proof = prove_exists(0, "v", Eq(Var("v"), Num(0)), zero_refl)
    assert accepted(proof) == parse_formula("exists v. v = 0")


def test_exists_wrong_witness_rejected():
    body = Eq(Add(Num(0), Var("v")), Num(0))
    with pytest.raises(PreconditionError):
        prove_exists(1, "v", body, prove_add_fact(0, 0))


def test_beta_instance_examples():
    proof = prove_beta_instance(13, 2, 1, 3)
    conclusion = accepted(proof)
    assert conclusion == beta_formula_at(13, 2, 1, 3)

    zero = prove_beta_instance(0, 5, 2, 0)
    assert accepted(zero) == beta_formula_at(0, 5, 2, 0)


def test_beta_instance_precondition():
    assert beta_value(13, 2, 1) == 3
    with pytest.raises(PreconditionError):
        prove_beta_instance(13, 2, 1, 4)


def test_beta_instance_budget_guard():
    with pytest.raises(ResourceLimitError):
        prove_beta_instance(2 ** 200, 40320, 3, beta_value(2 ** 200, 40320, 3),
                            line_budget=10_000)


def test_add_sweep_small():
    for m in range(7):
        for n in range(7):
            proof = prove_add_fact(m, n)
            assert accepted(proof) == Eq(Add(Num(m), Num(n)), Num(m + n))


def test_beta_instance_random_feasible_sweep():
    import random
    rng = random.Random(31)
    for _ in range(40):
        b = rng.randrange(0, 4000)
        c = rng.randrange(0, 7)
        i = rng.randrange(0, 5)
        d = beta_value(b, c, i)
        proof = prove_beta_instance(b, c, i, d)
        assert accepted(proof) == beta_formula_at(b, c, i, d)


THEOREM_LIBRARY = (
    "refl", "eq_sym", "eq_trans", "zero_plus", "succ_plus", "comm_plus",
    "plus_cong_left", "plus_cong_right", "assoc_plus", "swap_plus",
    "mul_one", "mul_two", "zero_mul", "succ_mul", "comm_mul",
    "mul_cong_left", "mul_cong_right", "distrib", "distrib_right",
    "assoc_mul",
)


@pytest.mark.parametrize("name", THEOREM_LIBRARY)
def test_theorem_library_kernel_checked(name):
    from peanolab.prover import Derivations
    from peanolab.semantics import eval_bounded, universal_closure
    d = Derivations()
    line = d.theorem(name)
    proof = d.b.to_proof()
    report = check_proof(proof)
    assert report.accepted, (name, report.first_failure)
    theorem = d.b.formula_at(line)
    verdict = eval_bounded(universal_closure(theorem), cutoff=12)
    assert not verdict.is_false, (name, verdict)


def test_conclusion_restated_when_not_last():
    # a proof whose requested conclusion was derived before other lines
    # still ends on it (restated through an identity implication)
    from peanolab.prover import Derivations, _finish
    d = Derivations()
    target = d.fact_add(1, 1)
    d.refl(Num(7))   # trailing unrelated derivation
    proof = _finish(d, target)
    assert proof.conclusion == parse_formula("S(0) + S(0) = S(S(0))")
    assert check_proof(proof).accepted


def test_substituted_conclusion_matches_exists():
    body = Eq(Add(Num(1), Var("w")), Num(3))
    instance = substitute(body, "w", numeral(2).term)
    inner = prove_add_fact(1, 2)
    assert inner.conclusion == instance
    proof = prove_exists(2, "w", body, inner)
    assert accepted(proof)
    assert render(proof.conclusion) == "~(forall w. ~(S(0) + w = S(S(S(0)))))"
