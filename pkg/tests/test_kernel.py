import random

import pytest

from peanolab.kernel import (
    REASON_CAPTURE, REASON_EMPTY, REASON_GEN, REASON_MP, Generalisation,
    InductionInstance, LogicalAxiom, ModusPonens, PAAxiom, Proof, ProofLine,
    check_proof, classify_schema, induction_axiom, matches_logical_axiom,
    matches_pa_axiom, pa_axiom,
)
from peanolab.parser import parse_formula
from peanolab.prooffile import ProofFileError, parse_proof, serialize_proof
from peanolab.syntax import (
    Eq, ForAll, Implies, Not, Num, Succ, Var, substitute,
)


def line(i, f, j):
    return ProofLine(i, f, j)


def test_pa3_one_liner_accepted():
    f = parse_formula("~(0 = S(x1))")
    proof = Proof((line(1, f, PAAxiom(3)),))
    report = check_proof(proof)
    assert report.accepted
    assert report.conclusion == f


def test_pa_axioms_match_themselves_and_renamings():
    for i in range(1, 9):
        assert matches_pa_axiom(pa_axiom(i), i)
    renamed = parse_formula("(a = b) -> ((a = c) -> (b = c))")
    assert matches_pa_axiom(renamed, 1)
    collapsed = parse_formula("(a = a) -> ((a = c) -> (a = c))")
    assert not matches_pa_axiom(collapsed, 1)   # renaming must be injective
    at_terms = parse_formula("(S(0) + 0) = S(0)")
    assert not matches_pa_axiom(at_terms, 5)    # instances need Gen + L4


def test_empty_proof_rejected():
    report = check_proof(Proof(()))
    assert not report.accepted
    assert report.first_failure == (0, REASON_EMPTY)


def test_mp_index_swap_rejected():
    a = parse_formula("0 = 0 -> (0 = 0 -> 0 = 0)")
    b = Implies(a, a)

    good = Proof((
        line(1, a, LogicalAxiom("L1")),
        line(2, Implies(a, b), LogicalAxiom("L1")),
        line(3, b, ModusPonens(1, 2)),
    ))
    assert check_proof(good).accepted

    swapped = Proof((
        good.lines[0],
        good.lines[1],
        line(3, b, ModusPonens(2, 1)),
    ))
    report = check_proof(swapped)
    assert not report.accepted
    assert report.first_failure == (3, REASON_MP)


def test_gen_shape_checked():
    f = parse_formula("~(0 = S(x1))")
    good = Proof((
        line(1, f, PAAxiom(3)),
        line(2, ForAll("x1", f), Generalisation(1, "x1")),
    ))
    assert check_proof(good).accepted
    bad = Proof((
        line(1, f, PAAxiom(3)),
        line(2, ForAll("x2", f), Generalisation(1, "x1")),
    ))
    report = check_proof(bad)
    assert report.first_failure == (2, REASON_GEN)


def test_dangling_reference():
    f = parse_formula("0 = 0")
    proof = Proof((line(1, f, ModusPonens(0, 1)),))
    assert check_proof(proof).first_failure[1] == "dangling reference"


def test_l4_instance_and_capture():
    body = parse_formula("exists y. x = y")   # ~forall y ~(x = y)
    quantified = ForAll("x", body)
    ok = Implies(quantified, substitute(body, "x", Num(3)))
    assert matches_logical_axiom(ok, "L4") is None
    # instantiating x with the bound y must be flagged as capture
    captured = Implies(quantified, Not(ForAll("y", Not(Eq(Var("y"), Var("y"))))))
    assert matches_logical_axiom(captured, "L4") == REASON_CAPTURE


def test_l4_shadowed_binder():
    # forall x (forall x F(x)) -> forall x F(x): no free occurrence outside
    inner = ForAll("x", Eq(Var("x"), Num(0)))
    ok = Implies(ForAll("x", inner), inner)
    assert matches_logical_axiom(ok, "L4") is None
    bad = Implies(ForAll("x", inner), ForAll("x", Eq(Var("x"), Num(1))))
    assert matches_logical_axiom(bad, "L4") is not None


def test_l4_no_free_occurrence():
    f = parse_formula("0 = 0")
    assert matches_logical_axiom(Implies(ForAll("x", f), f), "L4") is None
    g = parse_formula("0 = S(0)")
    assert matches_logical_axiom(Implies(ForAll("x", f), g), "L4") is not None


def test_capture_illegal_l4_rejected_by_kernel():
    body = parse_formula("exists y. x = y")
    captured = Implies(ForAll("x", body),
                       Not(ForAll("y", Not(Eq(Var("y"), Var("y"))))))
    proof = Proof((line(1, captured, LogicalAxiom("L4")),))
    report = check_proof(proof)
    assert report.first_failure == (1, REASON_CAPTURE)


def test_l5_side_condition():
    b = parse_formula("0 = 0")
    c = parse_formula("x = x")
    ok = Implies(ForAll("x", Implies(b, c)), Implies(b, ForAll("x", c)))
    assert matches_logical_axiom(ok, "L5") is None
    bad = Implies(ForAll("x", Implies(c, b)), Implies(c, ForAll("x", b)))
    assert matches_logical_axiom(bad, "L5") is not None


def test_induction_instance():
    f = parse_formula("x + 0 = x")
    inst = induction_axiom(f, "x")
    proof = Proof((line(1, inst, InductionInstance(f, "x")),))
    assert check_proof(proof).accepted
    wrong = Proof((line(1, inst, InductionInstance(f, "y")),))
    assert not check_proof(wrong).accepted


def test_classify_schema_examples():
    assert classify_schema(parse_formula("~(0 = S(x1))")) == {"PA3"}
    b = parse_formula("0 = 0")
    assert "L1" in classify_schema(Implies(b, Implies(b, b)))
    f = parse_formula("x + 0 = x")
    assert "Induction" in classify_schema(induction_axiom(f, "x"))
    assert classify_schema(b) == set()


def test_l4_matcher_agrees_with_substitution():
    # generate instances forall x B -> B[x := t] and check the matcher both
    # accepts them and recovers exactly the substitution result
    import random as rnd

    from conftest import random_formula, random_term
    from peanolab.syntax import CaptureError, substitute
    rng = rnd.Random(17)
    accepted_count = 0
    for _ in range(120):
        body = random_formula(rng, rng.randint(0, 3))
        term = random_term(rng, rng.randint(0, 2))
        try:
            instance = substitute(body, "x", term)
        except CaptureError:
            continue
        candidate = Implies(ForAll("x", body), instance)
        assert matches_logical_axiom(candidate, "L4") is None, candidate
        accepted_count += 1
    assert accepted_count >= 60


def test_pa_matcher_agrees_with_random_renamings():
    import random as rnd
    rng = rnd.Random(23)
    names = ["a", "b", "c", "d", "q"]
    for index in range(1, 9):
        for _ in range(20):
            renaming = dict(zip(("x1", "x2", "x3"), rng.sample(names, 3)))
            renamed = pa_axiom(index)
            for old, new in renaming.items():
                renamed = substitute(renamed, old, Var("tmp_" + new))
            for old, new in renaming.items():
                renamed = substitute(renamed, "tmp_" + new, Var(new))
            assert matches_pa_axiom(renamed, index), (index, renaming)
            for other in range(1, 9):
                if other != index:
                    assert not matches_pa_axiom(renamed, other), (index, other)


def test_noncontiguous_indices_rejected():
    f = parse_formula("~(0 = S(x1))")
    proof = Proof((ProofLine(2, f, PAAxiom(3)),))
    report = check_proof(proof)
    assert not report.accepted
    assert "contiguous" in report.first_failure[1]


def test_classify_agrees_with_generated_instances():
    rng = random.Random(5)
    pool = [parse_formula(s) for s in ("0 = 0", "x = S(y)", "0 + x = x")]
    for _ in range(60):
        b, c, d = (rng.choice(pool) for _ in range(3))
        assert "L1" in classify_schema(Implies(b, Implies(c, b)))
        l2 = Implies(Implies(b, Implies(c, d)),
                     Implies(Implies(b, c), Implies(b, d)))
        assert "L2" in classify_schema(l2)
        l3 = Implies(Implies(Not(c), Not(b)),
                     Implies(Implies(Not(c), b), c))
        assert "L3" in classify_schema(l3)


# ---------------------------------------------------------------------------
# Proof file format
# ---------------------------------------------------------------------------

PROOF_TEXT = """\
# a tiny proof
1 | ~(0 = S(x1)) | PA3

2 | forall x1. ~(0 = S(x1)) | GEN 1 x1
"""


def test_proof_file_parse_and_check():
    proof = parse_proof(PROOF_TEXT)
    assert len(proof.lines) == 2
    assert check_proof(proof).accepted


def test_proof_file_roundtrip(proof_corpus):
    for proof in proof_corpus:
        text = serialize_proof(proof)
        again = parse_proof(text)
        assert again == proof
        assert check_proof(again).accepted


def test_proof_file_disjunction_in_formula():
    # '|' inside the formula must not break the field split
    text = "1 | 0 = 0 | 0 = 0 -> (0 = S(0) -> 0 = 0 | 0 = 0) | L1\n"
    proof = parse_proof(text)
    assert len(proof.lines) == 1
    assert isinstance(proof.lines[0].justification, LogicalAxiom)


def test_proof_file_ind_justification_roundtrip():
    f = parse_formula("x + 0 = x | 0 = 0")
    inst = induction_axiom(f, "x")
    proof = Proof((ProofLine(1, inst, InductionInstance(f, "x")),))
    assert check_proof(proof).accepted
    assert parse_proof(serialize_proof(proof)) == proof


def test_proof_file_errors():
    with pytest.raises(ProofFileError):
        parse_proof("1 | 0 = 0\n")          # missing justification
    with pytest.raises(ProofFileError):
        parse_proof("x | 0 = 0 | PA1\n")    # bad index
    with pytest.raises(ProofFileError):
        parse_proof("1 | 0 = ) | PA1\n")    # bad formula
    with pytest.raises(ProofFileError):
        parse_proof("1 | 0 = 0 | XX 1\n")   # unknown justification


# ---------------------------------------------------------------------------
# Mutation kill
# ---------------------------------------------------------------------------

def _mutate_formula(f, rng):
    """A structurally different formula: breaks the line's own justification."""
    if isinstance(f, Eq):
        return Eq(Succ(f.left) if not isinstance(f.left, Num)
                  else Num(f.left.value + 1), f.right)
    if isinstance(f, Not):
        return f.inner if not isinstance(f.inner, Not) else Not(_mutate_formula(f.inner, rng))
    if isinstance(f, Implies):
        if rng.random() < 0.5:
            return Implies(_mutate_formula(f.antecedent, rng), f.consequent)
        return Implies(f.antecedent, _mutate_formula(f.consequent, rng))
    return ForAll(f.var, _mutate_formula(f.body, rng))


def test_mutation_kill(proof_corpus):
    # corrupt lines whose justification pins the formula through earlier
    # lines (MP, GEN, IND): the corruption must always be caught
    rng = random.Random(11)
    rejected = 0
    for _ in range(150):
        proof = rng.choice(proof_corpus)
        candidates = [
            i for i, ln in enumerate(proof.lines)
            if isinstance(ln.justification,
                          (ModusPonens, Generalisation, InductionInstance))
        ]
        pos = rng.choice(candidates)
        target = proof.lines[pos]
        mutated_formula = _mutate_formula(target.formula, rng)
        assert mutated_formula != target.formula
        lines = list(proof.lines)
        lines[pos] = ProofLine(target.index, mutated_formula, target.justification)
        report = check_proof(Proof(tuple(lines)))
        assert not report.accepted
        rejected += 1
    assert rejected >= 150


def test_check_proof_deterministic_and_pure(proof_corpus):
    proof = proof_corpus[1]
    before = proof.lines
    first = check_proof(proof)
    second = check_proof(proof)
    assert first == second
    assert proof.lines == before


def test_justification_corruption_rejected(proof_corpus):
    rng = random.Random(13)
    for _ in range(40):
        proof = rng.choice(proof_corpus)
        mp_lines = [i for i, ln in enumerate(proof.lines)
                    if isinstance(ln.justification, ModusPonens)]
        pos = rng.choice(mp_lines)
        target = proof.lines[pos]
        j = target.justification
        swapped = ModusPonens(j.implication, j.antecedent)
        lines = list(proof.lines)
        lines[pos] = ProofLine(target.index, target.formula, swapped)
        report = check_proof(Proof(tuple(lines)))
        # an implication is never its own antecedent here, so the swap breaks
        assert not report.accepted
