import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile(
    "peanolab", deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("peanolab")

from peanolab.syntax import (
    Add, Eq, ForAll, Implies, Mul, Not, Num, Var, succ,
)

VAR_NAMES = ("x", "y", "z", "u")


def term_strategy(max_depth=3):
    leaves = st.one_of(
        st.integers(min_value=0, max_value=12).map(Num),
        st.sampled_from(VAR_NAMES).map(Var),
    )

    def extend(children):
        return st.one_of(
            children.map(succ),
            st.tuples(children, children).map(lambda p: Add(*p)),
            st.tuples(children, children).map(lambda p: Mul(*p)),
        )

    return st.recursive(leaves, extend, max_leaves=2 ** max_depth)


def formula_strategy(max_depth=4):
    atoms = st.tuples(term_strategy(2), term_strategy(2)).map(lambda p: Eq(*p))

    def extend(children):
        return st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda p: Implies(*p)),
            st.tuples(st.sampled_from(VAR_NAMES), children).map(
                lambda p: ForAll(*p)),
        )

    return st.recursive(atoms, extend, max_leaves=2 ** max_depth)


def random_term(rng: random.Random, depth: int):
    if depth == 0:
        if rng.random() < 0.5:
            return Num(rng.randrange(6))
        return Var(rng.choice(VAR_NAMES))
    pick = rng.randrange(4)
    if pick == 0:
        return succ(random_term(rng, depth - 1))
    if pick == 1:
        return Add(random_term(rng, depth - 1), random_term(rng, depth - 1))
    if pick == 2:
        return Mul(random_term(rng, depth - 1), random_term(rng, depth - 1))
    return random_term(rng, depth - 1)


def random_formula(rng: random.Random, depth: int):
    if depth == 0:
        return Eq(random_term(rng, 1), random_term(rng, 1))
    pick = rng.randrange(4)
    if pick == 0:
        return Not(random_formula(rng, depth - 1))
    if pick == 1:
        return Implies(random_formula(rng, depth - 1),
                       random_formula(rng, depth - 1))
    if pick == 2:
        return ForAll(rng.choice(VAR_NAMES), random_formula(rng, depth - 1))
    return random_formula(rng, depth - 1)


@pytest.fixture(scope="session")
def proof_corpus():
    """A spread of kernel-accepted proofs used by soundness and code tests."""
    from peanolab.kernel import check_proof
    from peanolab.prover import (
        prove_add_fact, prove_beta_instance, prove_mul_fact, prove_neq_fact,
    )

    proofs = [
        prove_add_fact(0, 0),
        prove_add_fact(2, 2),
        prove_add_fact(5, 3),
        prove_mul_fact(2, 2),
        prove_mul_fact(3, 2),
        prove_neq_fact(0, 1),
        prove_neq_fact(4, 2),
        prove_beta_instance(13, 2, 1, 3),
        prove_beta_instance(0, 5, 2, 0),
    ]
    for proof in proofs:
        assert check_proof(proof).accepted
    return proofs
