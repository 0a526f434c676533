"""Proof synthesis for closed arithmetic facts.

Everything here is untrusted: each public function returns a Proof that the
kernel checks from scratch.  The synthesizer works in layers:

* a ProofBuilder that accumulates kernel lines and deduplicates by formula;
* propositional derived rules over L1..L3 (identity, syllogism, double
  negation, modus tollens, conjunction introduction);
* equality rules from PA1/PA2/PA5 (reflexivity, symmetry, transitivity,
  successor congruence);
* a hypothesis layer implementing the deduction theorem, used to prove a
  fixed library of open theorems (commutativity, associativity,
  distributivity and the +/* congruences) from induction instances;
* closed numeral facts ``[a]+[b] = [a+b]`` and ``[a]*[b] = [a*b]`` by
  unrolling the recursion axioms, one successor per step.

Unrolling is linear in the smaller operand, and that is not laziness: the
only moves in this axiom set that relate a numeral to a larger one
(peeling with the + and * recursion axioms, successor congruence) advance
by exactly one successor, so closed-fact proofs cost at least the smaller
value in lines no matter how they are arranged.  Facts about genuinely
large numbers (such as canonical CRT solutions for long digit prefixes)
are therefore out of reach of any synthesizer for this calculus; the
line-budget guard turns that wall into a clean ResourceLimitError instead
of an unbounded computation.

Proof sizes below the guard are otherwise unconstrained; clarity of the
templates wins over minimality.
"""

from __future__ import annotations

from typing import Optional

from .beta import beta_formula_at, beta_value
from .errors import PreconditionError, ResourceLimitError
from .kernel import (
    Generalisation, InductionInstance, Justification, LogicalAxiom,
    ModusPonens, PAAxiom, Proof, ProofLine, induction_axiom, pa_axiom,
)
from .syntax import (
    Add, Eq, ForAll, Formula, Implies, Mul, Not, Num, Succ, Term, Var,
    free_vars, fresh_name, substitute, term_key, term_vars,
)

DEFAULT_LINE_BUDGET = 2_000_000

_X1, _X2, _X3 = Var("x1"), Var("x2"), Var("x3")
ZERO, ONE = Num(0), Num(1)


class ProofBuilder:
    """Accumulates proof lines, deduplicating repeated formulas."""

    def __init__(self, line_budget: Optional[int] = DEFAULT_LINE_BUDGET) -> None:
        self._lines: list[tuple[Formula, Justification]] = []
        self._by_formula: dict[Formula, int] = {}
        self.line_budget = line_budget

    def emit(self, formula: Formula, justification: Justification, *,
             force: bool = False) -> int:
        existing = self._by_formula.get(formula)
        if existing is not None and not force:
            return existing
        if self.line_budget is not None and len(self._lines) >= self.line_budget:
            raise ResourceLimitError(
                f"proof would exceed the line budget of {self.line_budget}; "
                "closed-fact synthesis is linear in the numerals involved")
        self._lines.append((formula, justification))
        index = len(self._lines)
        if existing is None:
            self._by_formula[formula] = index
        return index

    def formula_at(self, index: int) -> Formula:
        return self._lines[index - 1][0]

    def absorb(self, proof: Proof) -> int:
        """Append another proof's lines, remapping references; returns the
        line now holding its conclusion."""
        mapping: dict[int, int] = {}
        last = 0
        for line in proof.lines:
            j = line.justification
            if isinstance(j, ModusPonens):
                j = ModusPonens(mapping[j.antecedent], mapping[j.implication])
            elif isinstance(j, Generalisation):
                j = Generalisation(mapping[j.premise], j.var)
            last = self.emit(line.formula, j)
            mapping[line.index] = last
        return last

    def to_proof(self) -> Proof:
        return Proof(tuple(ProofLine(i + 1, f, j)
                           for i, (f, j) in enumerate(self._lines)))

    def __len__(self) -> int:
        return len(self._lines)


# ---------------------------------------------------------------------------
# Hypothesis nodes (deduction-theorem layer)
# ---------------------------------------------------------------------------

class _Node:
    __slots__ = ("formula", "uses")
    formula: Formula
    uses: frozenset[int]


class _Thm(_Node):
    __slots__ = ("line",)

    def __init__(self, line: int, formula: Formula):
        self.line = line
        self.formula = formula
        self.uses = frozenset()


class _Hyp(_Node):
    __slots__ = ("tag",)
    _counter = 0

    def __init__(self, formula: Formula):
        _Hyp._counter += 1
        self.tag = _Hyp._counter
        self.formula = formula
        self.uses = frozenset((self.tag,))


class _MP(_Node):
    __slots__ = ("ante", "impl")

    def __init__(self, ante: _Node, impl: _Node):
        if not (isinstance(impl.formula, Implies)
                and impl.formula.antecedent == ante.formula):
            raise AssertionError("node modus ponens shape mismatch")
        self.ante = ante
        self.impl = impl
        self.formula = impl.formula.consequent
        self.uses = ante.uses | impl.uses


class _Gen(_Node):
    __slots__ = ("body", "var")

    def __init__(self, body: _Node, var: str):
        self.body = body
        self.var = var
        self.formula = ForAll(var, body.formula)
        self.uses = body.uses


# ---------------------------------------------------------------------------
# Derivations
# ---------------------------------------------------------------------------

class Derivations:
    def __init__(self, builder: Optional[ProofBuilder] = None, *,
                 line_budget: Optional[int] = DEFAULT_LINE_BUDGET):
        self.b = builder if builder is not None else ProofBuilder(line_budget)
        self._memo: dict[tuple, int] = {}

    # -- kernel-level primitives ------------------------------------------

    def logical(self, schema: str, formula: Formula) -> int:
        return self.b.emit(formula, LogicalAxiom(schema))

    def pa(self, index: int) -> int:
        return self.b.emit(pa_axiom(index), PAAxiom(index))

    def mp(self, ante: int, impl: int) -> int:
        impl_f = self.b.formula_at(impl)
        assert isinstance(impl_f, Implies), "MP on a non-implication"
        assert impl_f.antecedent == self.b.formula_at(ante), "MP mismatch"
        return self.b.emit(impl_f.consequent, ModusPonens(ante, impl))

    def gen(self, line: int, var: str) -> int:
        return self.b.emit(ForAll(var, self.b.formula_at(line)),
                           Generalisation(line, var))

    def induction(self, formula: Formula, var: str) -> int:
        return self.b.emit(induction_axiom(formula, var),
                           InductionInstance(formula, var))

    # -- instantiation ------------------------------------------------------

    def specialize(self, line: int, subs: dict[str, Term]) -> int:
        """Instantiate free variables of an open (quantifier-free) theorem."""
        f = self.b.formula_at(line)
        items = [(v, t) for v, t in sorted(subs.items())
                 if v in free_vars(f) and t != Var(v)]
        if not items:
            return line
        replaced = set().union(*(term_vars(t) for _, t in items))
        if replaced & {v for v, _ in items}:
            avoid = set(free_vars(f)) | replaced | {v for v, _ in items}
            fresh = {}
            for v, _ in items:
                z = fresh_name("z", avoid)
                avoid.add(z)
                fresh[v] = z
            line = self._specialize_pass(line, [(v, Var(fresh[v])) for v, _ in items])
            items = [(fresh[v], t) for v, t in items]
        return self._specialize_pass(line, items)

    def _specialize_pass(self, line: int, items: list[tuple[str, Term]]) -> int:
        for v, t in items:
            cur = self.b.formula_at(line)
            forall_line = self.gen(line, v)
            target = substitute(cur, v, t)
            l4 = self.logical("L4", Implies(ForAll(v, cur), target))
            line = self.mp(forall_line, l4)
        return line

    # -- propositional layer ------------------------------------------------

    def identity(self, f: Formula) -> int:
        key = ("identity", f)
        if key in self._memo:
            return self._memo[key]
        ff = Implies(f, f)
        a = self.logical("L1", Implies(f, Implies(ff, f)))
        b = self.logical("L2", Implies(Implies(f, Implies(ff, f)),
                                       Implies(Implies(f, ff), ff)))
        c = self.mp(a, b)
        d = self.logical("L1", Implies(f, ff))
        out = self.mp(d, c)
        self._memo[key] = out
        return out

    def mp_under(self, impl: int, minor: int) -> int:
        """From A -> (B -> C) and B conclude A -> C."""
        f = self.b.formula_at(impl)
        assert isinstance(f, Implies) and isinstance(f.consequent, Implies)
        a, b, c = f.antecedent, f.consequent.antecedent, f.consequent.consequent
        l1 = self.logical("L1", Implies(b, Implies(a, b)))
        ab = self.mp(minor, l1)
        l2 = self.logical("L2", Implies(f, Implies(Implies(a, b), Implies(a, c))))
        return self.mp(ab, self.mp(impl, l2))

    def chain(self, ab: int, bc: int) -> int:
        """From A -> B and B -> C conclude A -> C."""
        fab = self.b.formula_at(ab)
        fbc = self.b.formula_at(bc)
        assert isinstance(fab, Implies) and isinstance(fbc, Implies)
        a, b, c = fab.antecedent, fab.consequent, fbc.consequent
        l1 = self.logical("L1", Implies(fbc, Implies(a, fbc)))
        abc = self.mp(bc, l1)
        l2 = self.logical("L2", Implies(Implies(a, Implies(b, c)),
                                        Implies(Implies(a, b), Implies(a, c))))
        return self.mp(ab, self.mp(abc, l2))

    def dne(self, f: Formula) -> int:
        """|- ~~F -> F"""
        key = ("dne", f)
        if key in self._memo:
            return self._memo[key]
        nf = Not(f)
        ident = self.identity(nf)
        l3 = self.logical("L3", Implies(Implies(nf, Not(nf)),
                                        Implies(Implies(nf, nf), f)))
        step = self.mp_under(l3, ident)
        l1 = self.logical("L1", Implies(Not(nf), Implies(nf, Not(nf))))
        out = self.chain(l1, step)
        self._memo[key] = out
        return out

    def dni(self, f: Formula) -> int:
        """|- F -> ~~F"""
        key = ("dni", f)
        if key in self._memo:
            return self._memo[key]
        d = self.dne(Not(f))
        nnn = Not(Not(Not(f)))
        l3 = self.logical("L3", Implies(Implies(nnn, Not(f)),
                                        Implies(Implies(nnn, f), Not(Not(f)))))
        t = self.mp(d, l3)
        l1 = self.logical("L1", Implies(f, Implies(nnn, f)))
        out = self.chain(l1, t)
        self._memo[key] = out
        return out

    def modus_tollens(self, impl: int, neg: int) -> int:
        """From A -> B and ~B conclude ~A."""
        f = self.b.formula_at(impl)
        assert isinstance(f, Implies)
        a, b = f.antecedent, f.consequent
        assert self.b.formula_at(neg) == Not(b)
        l1 = self.logical("L1", Implies(Not(b), Implies(Not(Not(a)), Not(b))))
        nna_nb = self.mp(neg, l1)
        nna_b = self.chain(self.dne(a), impl)
        l3 = self.logical("L3", Implies(Implies(Not(Not(a)), Not(b)),
                                        Implies(Implies(Not(Not(a)), b), Not(a))))
        return self.mp(nna_b, self.mp(nna_nb, l3))

    def conj_intro(self, p: int, q: int) -> int:
        """From P and Q conclude ~(P -> ~Q)."""
        fp = self.b.formula_at(p)
        fq = self.b.formula_at(q)
        ident = self.identity(Implies(fp, Not(fq)))
        s = self.mp_under(ident, p)
        nnq = self.mp(q, self.dni(fq))
        return self.modus_tollens(s, nnq)

    def exists_intro(self, var: str, body: Formula, witness: Term,
                     instance: int) -> int:
        """From body[var := witness] conclude ~forall var ~body."""
        inst_f = self.b.formula_at(instance)
        assert inst_f == substitute(body, var, witness)
        not_body = Not(body)
        l4 = self.logical("L4", Implies(ForAll(var, not_body), Not(inst_f)))
        nn = self.mp(instance, self.dni(inst_f))
        return self.modus_tollens(l4, nn)

    # -- equality layer -------------------------------------------------------

    def refl(self, t: Term) -> int:
        key = ("refl", t)
        if key in self._memo:
            return self._memo[key]
        out = self.specialize(self.theorem("refl"), {"x1": t})
        self._memo[key] = out
        return out

    def _eq_sides(self, line: int) -> tuple[Term, Term]:
        f = self.b.formula_at(line)
        assert isinstance(f, Eq), "expected an equation"
        return f.left, f.right

    def sym(self, line: int) -> int:
        a, b = self._eq_sides(line)
        spec = self.specialize(self.theorem("eq_sym"), {"x1": a, "x2": b})
        return self.mp(line, spec)

    def trans(self, ab: int, bc: int) -> int:
        a, b = self._eq_sides(ab)
        b2, c = self._eq_sides(bc)
        assert b == b2, "transitivity chain mismatch"
        spec = self.specialize(self.theorem("eq_trans"),
                               {"x1": a, "x2": b, "x3": c})
        return self.mp(bc, self.mp(ab, spec))

    def trans_chain(self, *lines: int) -> int:
        out = lines[0]
        for nxt in lines[1:]:
            out = self.trans(out, nxt)
        return out

    def succ_cong(self, line: int) -> int:
        a, b = self._eq_sides(line)
        pa2 = self.specialize(self.pa(2), {"x1": a, "x2": b})
        return self.mp(line, pa2)

    # congruence under + and * via the open congruence theorems

    def cong_add_left(self, eq: int, right: Term) -> int:
        a, b = self._eq_sides(eq)
        spec = self.specialize(self.theorem("plus_cong_left"),
                               {"x1": a, "x2": b, "x3": right})
        return self.mp(eq, spec)

    def cong_add_right(self, eq: int, left: Term) -> int:
        a, b = self._eq_sides(eq)
        spec = self.specialize(self.theorem("plus_cong_right"),
                               {"x1": a, "x2": b, "x3": left})
        return self.mp(eq, spec)

    def cong_mul_left(self, eq: int, right: Term) -> int:
        a, b = self._eq_sides(eq)
        spec = self.specialize(self.theorem("mul_cong_left"),
                               {"x1": a, "x2": b, "x3": right})
        return self.mp(eq, spec)

    def cong_mul_right(self, eq: int, left: Term) -> int:
        a, b = self._eq_sides(eq)
        spec = self.specialize(self.theorem("mul_cong_right"),
                               {"x1": a, "x2": b, "x3": left})
        return self.mp(eq, spec)

    # -- hypothesis layer -----------------------------------------------------

    def n_thm(self, line: int) -> _Thm:
        return _Thm(line, self.b.formula_at(line))

    def n_hyp(self, formula: Formula) -> _Hyp:
        return _Hyp(formula)

    def n_mp(self, ante: _Node, impl: _Node) -> _Node:
        if not ante.uses and not impl.uses:
            return self.n_thm(self.mp(self._compile(ante), self._compile(impl)))
        return _MP(ante, impl)

    def n_gen(self, body: _Node, var: str) -> _Node:
        if not body.uses:
            return self.n_thm(self.gen(self._compile(body), var))
        return _Gen(body, var)

    def n_sym(self, node: _Node) -> _Node:
        f = node.formula
        assert isinstance(f, Eq)
        spec = self.specialize(self.theorem("eq_sym"),
                               {"x1": f.left, "x2": f.right})
        return self.n_mp(node, self.n_thm(spec))

    def n_trans(self, ab: _Node, bc: _Node) -> _Node:
        fa, fb = ab.formula, bc.formula
        assert isinstance(fa, Eq) and isinstance(fb, Eq) and fa.right == fb.left
        spec = self.specialize(self.theorem("eq_trans"),
                               {"x1": fa.left, "x2": fa.right, "x3": fb.right})
        return self.n_mp(bc, self.n_mp(ab, self.n_thm(spec)))

    def n_trans_chain(self, *nodes: _Node) -> _Node:
        out = nodes[0]
        for nxt in nodes[1:]:
            out = self.n_trans(out, nxt)
        return out

    def n_succ_cong(self, node: _Node) -> _Node:
        f = node.formula
        assert isinstance(f, Eq)
        pa2 = self.specialize(self.pa(2), {"x1": f.left, "x2": f.right})
        return self.n_mp(node, self.n_thm(pa2))

    def n_cong(self, theorem: str, node: _Node, other: Term) -> _Node:
        f = node.formula
        assert isinstance(f, Eq)
        spec = self.specialize(self.theorem(theorem),
                               {"x1": f.left, "x2": f.right, "x3": other})
        return self.n_mp(node, self.n_thm(spec))

    def discharge(self, hyp: _Hyp, node: _Node) -> _Node:
        """Deduction theorem: from a derivation of F using hyp, one of hyp -> F."""
        memo: dict[int, _Node] = {}

        def go(n: _Node) -> _Node:
            cached = memo.get(id(n))
            if cached is not None:
                return cached
            if hyp.tag not in n.uses:
                l1 = self.logical("L1", Implies(n.formula,
                                                Implies(hyp.formula, n.formula)))
                out = self.n_mp(n, self.n_thm(l1))
            elif isinstance(n, _Hyp):
                out = self.n_thm(self.identity(hyp.formula))
            elif isinstance(n, _MP):
                x = n.ante.formula
                f = n.formula
                da = go(n.ante)
                di = go(n.impl)
                l2 = self.logical(
                    "L2",
                    Implies(Implies(hyp.formula, Implies(x, f)),
                            Implies(Implies(hyp.formula, x),
                                    Implies(hyp.formula, f))))
                out = self.n_mp(da, self.n_mp(di, self.n_thm(l2)))
            elif isinstance(n, _Gen):
                if n.var in free_vars(hyp.formula):
                    raise AssertionError(
                        "generalising over a variable free in the hypothesis")
                db = go(n.body)
                g = self.n_gen(db, n.var)
                l5 = self.logical(
                    "L5",
                    Implies(ForAll(n.var, Implies(hyp.formula, n.body.formula)),
                            Implies(hyp.formula, ForAll(n.var, n.body.formula))))
                out = self.n_mp(g, self.n_thm(l5))
            else:
                raise AssertionError("unexpected node kind")
            memo[id(n)] = out
            return out

        return go(node)

    def _compile(self, node: _Node) -> int:
        if node.uses:
            raise AssertionError("cannot compile a node with open hypotheses")
        if isinstance(node, _Thm):
            return node.line
        if isinstance(node, _MP):
            return self.mp(self._compile(node.ante), self._compile(node.impl))
        if isinstance(node, _Gen):
            return self.gen(self._compile(node.body), node.var)
        raise AssertionError("unexpected node kind")

    def compile(self, node: _Node) -> int:
        return self._compile(node)

    def by_induction(self, formula: Formula, var: str,
                     base: _Node, step: _Node) -> _Node:
        """base: F[var:=0]; step: forall var (F -> F[var:=S var]); gives F."""
        ind = self.n_thm(self.induction(formula, var))
        quantified = self.n_mp(step, self.n_mp(base, ind))
        l4 = self.logical("L4", Implies(ForAll(var, formula), formula))
        return self.n_mp(quantified, self.n_thm(l4))

    # -- the open theorem library ----------------------------------------------

    def theorem(self, name: str) -> int:
        key = ("theorem", name)
        if key in self._memo:
            return self._memo[key]
        builder = getattr(self, f"_thm_{name}")
        # seed the memo lazily; theorems may depend on one another
        line = builder()
        self._memo[key] = line
        return line

    def _pa_spec(self, index: int, **subs: Term) -> int:
        return self.specialize(self.pa(index), subs)

    def _n_pa(self, index: int, **subs: Term) -> _Node:
        return self.n_thm(self._pa_spec(index, **subs))

    def _thm_spec(self, name: str, **subs: Term) -> int:
        return self.specialize(self.theorem(name), subs)

    def _n_them(self, name: str, **subs: Term) -> _Node:
        return self.n_thm(self._thm_spec(name, **subs))

    def _thm_refl(self) -> int:
        # x1 = x1
        pa5 = self.pa(5)
        pa1 = self.specialize(self.pa(1),
                              {"x1": Add(_X1, ZERO), "x2": _X1, "x3": _X1})
        return self.mp(pa5, self.mp(pa5, pa1))

    def _thm_eq_sym(self) -> int:
        # (x1 = x2) -> (x2 = x1)
        pa1 = self.specialize(self.pa(1), {"x1": _X1, "x2": _X2, "x3": _X1})
        return self.mp_under(pa1, self.theorem("refl"))

    def _thm_eq_trans(self) -> int:
        # (x1 = x2) -> ((x2 = x3) -> (x1 = x3))
        pa1 = self.specialize(self.pa(1), {"x1": _X2, "x2": _X1, "x3": _X3})
        sym12 = self.specialize(self.theorem("eq_sym"), {"x1": _X1, "x2": _X2})
        return self.chain(sym12, pa1)

    def _thm_zero_plus(self) -> int:
        # 0 + x1 = x1
        f = Eq(Add(ZERO, _X1), _X1)
        base = self._n_pa(5, x1=ZERO)  # (0+0)=0
        h = self.n_hyp(f)
        pa6 = self._n_pa(6, x1=ZERO, x2=_X1)          # 0+S(x1) = S(0+x1)
        body = self.n_trans(pa6, self.n_succ_cong(h))  # 0+S(x1) = S(x1)
        step = self.n_gen(self.discharge(h, body), "x1")
        return self.compile(self.by_induction(f, "x1", base, step))

    def _thm_succ_plus(self) -> int:
        # S(x1) + x2 = S(x1 + x2)
        f = Eq(Add(Succ(_X1), _X2), Succ(Add(_X1, _X2)))
        sx1 = Succ(_X1)
        b1 = self._n_pa(5, x1=sx1)                        # S(x1)+0 = S(x1)
        b2 = self.n_succ_cong(self._n_pa(5, x1=_X1))      # S(x1+0) = S(x1)
        base = self.n_trans(b1, self.n_sym(b2))           # S(x1)+0 = S(x1+0)
        h = self.n_hyp(f)
        c1 = self._n_pa(6, x1=sx1, x2=_X2)                # S(x1)+S(x2) = S(S(x1)+x2)
        c2 = self.n_succ_cong(h)                          # S(S(x1)+x2) = S(S(x1+x2))
        c3 = self.n_succ_cong(self.n_sym(self._n_pa(6, x1=_X1, x2=_X2)))
        body = self.n_trans_chain(c1, c2, c3)             # ... = S(x1+S(x2))
        step = self.n_gen(self.discharge(h, body), "x2")
        return self.compile(self.by_induction(f, "x2", base, step))

    def _thm_comm_plus(self) -> int:
        # x1 + x2 = x2 + x1
        f = Eq(Add(_X1, _X2), Add(_X2, _X1))
        b1 = self._n_pa(5, x1=_X1)                        # x1+0 = x1
        b2 = self.n_sym(self._n_them("zero_plus", x1=_X1))  # x1 = 0+x1
        base = self.n_trans(b1, b2)
        h = self.n_hyp(f)
        c1 = self._n_pa(6, x1=_X1, x2=_X2)                # x1+S(x2) = S(x1+x2)
        c2 = self.n_succ_cong(h)                          # S(x1+x2) = S(x2+x1)
        c3 = self.n_sym(self._n_them("succ_plus", x1=_X2, x2=_X1))
        body = self.n_trans_chain(c1, c2, c3)             # ... = S(x2)+x1
        step = self.n_gen(self.discharge(h, body), "x2")
        return self.compile(self.by_induction(f, "x2", base, step))

    def _thm_plus_cong_left(self) -> int:
        # (x1 = x2) -> (x1 + x3 = x2 + x3)
        h = self.n_hyp(Eq(_X1, _X2))
        f = Eq(Add(_X1, _X3), Add(_X2, _X3))
        b1 = self._n_pa(5, x1=_X1)
        b2 = self.n_sym(self._n_pa(5, x1=_X2))
        base = self.n_trans_chain(b1, h, b2)              # x1+0 = x2+0
        h2 = self.n_hyp(f)
        c1 = self._n_pa(6, x1=_X1, x2=_X3)
        c2 = self.n_succ_cong(h2)
        c3 = self.n_sym(self._n_pa(6, x1=_X2, x2=_X3))
        body = self.n_trans_chain(c1, c2, c3)
        step = self.n_gen(self.discharge(h2, body), "x3")
        result = self.by_induction(f, "x3", base, step)
        return self.compile(self.discharge(h, result))

    def _thm_plus_cong_right(self) -> int:
        # (x1 = x2) -> (x3 + x1 = x3 + x2)
        h = self.n_hyp(Eq(_X1, _X2))
        c1 = self._n_them("comm_plus", x1=_X3, x2=_X1)    # x3+x1 = x1+x3
        gl = self.n_mp(h, self.n_thm(self.theorem("plus_cong_left")))
        c3 = self._n_them("comm_plus", x1=_X2, x2=_X3)    # x2+x3 = x3+x2
        body = self.n_trans_chain(c1, gl, c3)
        return self.compile(self.discharge(h, body))

    def _thm_assoc_plus(self) -> int:
        # (x1 + x2) + x3 = x1 + (x2 + x3)
        f = Eq(Add(Add(_X1, _X2), _X3), Add(_X1, Add(_X2, _X3)))
        x12 = Add(_X1, _X2)
        b1 = self._n_pa(5, x1=x12)                        # (x1+x2)+0 = x1+x2
        z = self.n_sym(self._n_pa(5, x1=_X2))             # x2 = x2+0
        b2 = self.n_cong("plus_cong_right", z, _X1)       # x1+x2 = x1+(x2+0)
        base = self.n_trans(b1, b2)
        h = self.n_hyp(f)
        c1 = self._n_pa(6, x1=x12, x2=_X3)                # (x1+x2)+S(x3) = S((x1+x2)+x3)
        c2 = self.n_succ_cong(h)
        c3 = self.n_sym(self._n_pa(6, x1=_X1, x2=Add(_X2, _X3)))
        z2 = self.n_sym(self._n_pa(6, x1=_X2, x2=_X3))    # S(x2+x3) = x2+S(x3)
        c4 = self.n_cong("plus_cong_right", z2, _X1)      # x1+S(x2+x3) = x1+(x2+S(x3))
        body = self.n_trans_chain(c1, c2, c3, c4)
        step = self.n_gen(self.discharge(h, body), "x3")
        return self.compile(self.by_induction(f, "x3", base, step))

    def _thm_swap_plus(self) -> int:
        # x1 + (x2 + x3) = x2 + (x1 + x3)
        c1 = self.n_sym(self._n_them("assoc_plus", x1=_X1, x2=_X2, x3=_X3))
        comm = self._thm_spec("comm_plus", x1=_X1, x2=_X2)
        c2 = self.n_thm(self.cong_add_left(comm, _X3))   # (x1+x2)+x3 = (x2+x1)+x3
        c3 = self._n_them("assoc_plus", x1=_X2, x2=_X1, x3=_X3)
        return self.compile(self.n_trans_chain(c1, c2, c3))

    def _thm_mul_one(self) -> int:
        # x1 * S(0) = x1
        c1 = self._n_pa(8, x1=_X1, x2=ZERO)               # x1*S(0) = x1*0 + x1
        z = self.n_thm(self.cong_add_left(self._pa_spec(7, x1=_X1), _X1))
        c3 = self._n_them("zero_plus", x1=_X1)
        return self.compile(self.n_trans_chain(c1, z, c3))

    def _thm_mul_two(self) -> int:
        # x1 * S(S(0)) = x1 + x1
        c1 = self._n_pa(8, x1=_X1, x2=ONE)                # x1*S(S(0)) = x1*S(0) + x1
        one = self._thm_spec("mul_one", x1=_X1)
        c2 = self.n_thm(self.cong_add_left(one, _X1))     # x1*S(0)+x1 = x1+x1
        return self.compile(self.n_trans(c1, c2))

    def _thm_zero_mul(self) -> int:
        # 0 * x1 = 0
        f = Eq(Mul(ZERO, _X1), ZERO)
        base = self._n_pa(7, x1=ZERO)
        h = self.n_hyp(f)
        c1 = self._n_pa(8, x1=ZERO, x2=_X1)               # 0*S(x1) = 0*x1 + 0
        c2 = self._n_pa(5, x1=Mul(ZERO, _X1))             # 0*x1+0 = 0*x1
        body = self.n_trans_chain(c1, c2, h)
        step = self.n_gen(self.discharge(h, body), "x1")
        return self.compile(self.by_induction(f, "x1", base, step))

    def _thm_succ_mul(self) -> int:
        # S(x1) * x2 = x1 * x2 + x2
        sx1 = Succ(_X1)
        f = Eq(Mul(sx1, _X2), Add(Mul(_X1, _X2), _X2))
        b1 = self._n_pa(7, x1=sx1)                        # S(x1)*0 = 0
        b2 = self._n_pa(5, x1=Mul(_X1, ZERO))             # x1*0+0 = x1*0
        b3 = self._n_pa(7, x1=_X1)                        # x1*0 = 0
        base = self.n_trans(b1, self.n_sym(self.n_trans(b2, b3)))
        h = self.n_hyp(f)
        a = Mul(_X1, _X2)
        c1 = self._n_pa(8, x1=sx1, x2=_X2)                # S(x1)*S(x2) = S(x1)*x2 + S(x1)
        c2 = self.n_cong("plus_cong_left", h, sx1)        # ... = (x1*x2+x2) + S(x1)
        # (a+x2)+S(x1) = (a+x1)+S(x2)
        d1 = self._n_pa(6, x1=Add(a, _X2), x2=_X1)        # (a+x2)+S(x1) = S((a+x2)+x1)
        shuffle = self.ac_plus_eq(Add(Add(a, _X2), _X1), Add(Add(a, _X1), _X2))
        d2 = self.n_succ_cong(self.n_thm(shuffle))
        d3 = self.n_sym(self._n_pa(6, x1=Add(a, _X1), x2=_X2))
        e1 = self.n_sym(self._n_pa(8, x1=_X1, x2=_X2))    # x1*x2+x1 = x1*S(x2)
        e2 = self.n_cong("plus_cong_left", e1, Succ(_X2))
        body = self.n_trans_chain(c1, c2, d1, d2, d3, e2)
        step = self.n_gen(self.discharge(h, body), "x2")
        return self.compile(self.by_induction(f, "x2", base, step))

    def _thm_comm_mul(self) -> int:
        # x1 * x2 = x2 * x1
        f = Eq(Mul(_X1, _X2), Mul(_X2, _X1))
        base = self.n_trans(self._n_pa(7, x1=_X1),
                            self.n_sym(self._n_them("zero_mul", x1=_X1)))
        h = self.n_hyp(f)
        c1 = self._n_pa(8, x1=_X1, x2=_X2)                # x1*S(x2) = x1*x2 + x1
        c2 = self.n_cong("plus_cong_left", h, _X1)        # ... = x2*x1 + x1
        c3 = self.n_sym(self._n_them("succ_mul", x1=_X2, x2=_X1))
        body = self.n_trans_chain(c1, c2, c3)
        step = self.n_gen(self.discharge(h, body), "x2")
        return self.compile(self.by_induction(f, "x2", base, step))

    def _thm_mul_cong_left(self) -> int:
        # (x1 = x2) -> (x1 * x3 = x2 * x3)
        h = self.n_hyp(Eq(_X1, _X2))
        f = Eq(Mul(_X1, _X3), Mul(_X2, _X3))
        base = self.n_trans(self._n_pa(7, x1=_X1), self.n_sym(self._n_pa(7, x1=_X2)))
        h2 = self.n_hyp(f)
        c1 = self._n_pa(8, x1=_X1, x2=_X3)                # x1*S(x3) = x1*x3 + x1
        c2 = self.n_cong("plus_cong_left", h2, _X1)       # ... = x2*x3 + x1
        c3 = self.n_cong("plus_cong_right", h, Mul(_X2, _X3))
        c4 = self.n_sym(self._n_pa(8, x1=_X2, x2=_X3))
        body = self.n_trans_chain(c1, c2, c3, c4)
        step = self.n_gen(self.discharge(h2, body), "x3")
        result = self.by_induction(f, "x3", base, step)
        return self.compile(self.discharge(h, result))

    def _thm_mul_cong_right(self) -> int:
        # (x1 = x2) -> (x3 * x1 = x3 * x2)
        h = self.n_hyp(Eq(_X1, _X2))
        c1 = self._n_them("comm_mul", x1=_X3, x2=_X1)
        ml = self.n_mp(h, self.n_thm(self.theorem("mul_cong_left")))
        c3 = self._n_them("comm_mul", x1=_X2, x2=_X3)
        body = self.n_trans_chain(c1, ml, c3)
        return self.compile(self.discharge(h, body))

    def _thm_distrib(self) -> int:
        # x1 * (x2 + x3) = x1 * x2 + x1 * x3
        f = Eq(Mul(_X1, Add(_X2, _X3)), Add(Mul(_X1, _X2), Mul(_X1, _X3)))
        x1x2 = Mul(_X1, _X2)
        b1 = self.n_cong("mul_cong_right", self._n_pa(5, x1=_X2), _X1)
        b2 = self.n_sym(self._n_pa(5, x1=x1x2))           # x1*x2 = x1*x2+0
        b3 = self.n_cong("plus_cong_right",
                         self.n_sym(self._n_pa(7, x1=_X1)), x1x2)
        base = self.n_trans_chain(b1, b2, b3)             # x1*(x2+0) = x1*x2+x1*0
        h = self.n_hyp(f)
        c1 = self.n_cong("mul_cong_right", self._n_pa(6, x1=_X2, x2=_X3), _X1)
        c2 = self._n_pa(8, x1=_X1, x2=Add(_X2, _X3))      # x1*S(x2+x3) = x1*(x2+x3)+x1
        c3 = self.n_cong("plus_cong_left", h, _X1)
        c4 = self._n_them("assoc_plus", x1=x1x2, x2=Mul(_X1, _X3), x3=_X1)
        c5 = self.n_cong("plus_cong_right",
                         self.n_sym(self._n_pa(8, x1=_X1, x2=_X3)), x1x2)
        body = self.n_trans_chain(c1, c2, c3, c4, c5)
        step = self.n_gen(self.discharge(h, body), "x3")
        return self.compile(self.by_induction(f, "x3", base, step))

    def _thm_distrib_right(self) -> int:
        # (x1 + x2) * x3 = x1 * x3 + x2 * x3
        x12 = Add(_X1, _X2)
        c1 = self._n_them("comm_mul", x1=x12, x2=_X3)
        c2 = self._n_them("distrib", x1=_X3, x2=_X1, x3=_X2)
        c3 = self.n_cong("plus_cong_left",
                         self._n_them("comm_mul", x1=_X3, x2=_X1), Mul(_X3, _X2))
        c4 = self.n_cong("plus_cong_right",
                         self._n_them("comm_mul", x1=_X3, x2=_X2), Mul(_X1, _X3))
        return self.compile(self.n_trans_chain(c1, c2, c3, c4))

    def _thm_assoc_mul(self) -> int:
        # (x1 * x2) * x3 = x1 * (x2 * x3)
        f = Eq(Mul(Mul(_X1, _X2), _X3), Mul(_X1, Mul(_X2, _X3)))
        x12 = Mul(_X1, _X2)
        b1 = self._n_pa(7, x1=x12)
        b2 = self.n_cong("mul_cong_right", self._n_pa(7, x1=_X2), _X1)
        b3 = self._n_pa(7, x1=_X1)
        base = self.n_trans(b1, self.n_sym(self.n_trans(b2, b3)))
        h = self.n_hyp(f)
        c1 = self._n_pa(8, x1=x12, x2=_X3)                # (x1x2)*S(x3) = (x1x2)*x3 + x1x2
        c2 = self.n_cong("plus_cong_left", h, x12)
        c3 = self.n_sym(self._n_them("distrib", x1=_X1, x2=Mul(_X2, _X3), x3=_X2))
        c4 = self.n_cong("mul_cong_right",
                         self.n_sym(self._n_pa(8, x1=_X2, x2=_X3)), _X1)
        body = self.n_trans_chain(c1, c2, c3, c4)
        step = self.n_gen(self.discharge(h, body), "x3")
        return self.compile(self.by_induction(f, "x3", base, step))

    # -- associative/commutative rearrangement of sums -------------------------

    def _flatten_sum(self, t: Term) -> list[Term]:
        if isinstance(t, Add):
            return self._flatten_sum(t.left) + self._flatten_sum(t.right)
        return [t]

    def _merge_sorted(self, a: Term, b: Term) -> tuple[Term, int]:
        """Merge two sorted right-combs; returns (result, line |- a+b = result)."""
        t = Add(a, b)
        if not isinstance(a, Add):
            if not isinstance(b, Add):
                if term_key(a) <= term_key(b):
                    return t, self.refl(t)
                swapped = Add(b, a)
                comm = self._thm_spec("comm_plus", x1=a, x2=b)
                return swapped, comm
            head, tail = b.left, b.right
            if term_key(a) <= term_key(head):
                return t, self.refl(t)
            # a + (head + tail) = head + (a + tail), then sift a into tail
            swap = self._thm_spec("swap_plus", x1=a, x2=head, x3=tail)
            merged, sub = self._merge_sorted(a, tail)
            cong = self.cong_add_right(sub, head)
            return Add(head, merged), self.trans(swap, cong)
        # (ah + at) + b = ah + (at + b), then sift ah in
        ah, at = a.left, a.right
        assoc = self._thm_spec("assoc_plus", x1=ah, x2=at, x3=b)
        inner, p_inner = self._merge_sorted(at, b)
        cong = self.cong_add_right(p_inner, ah)
        line = self.trans(assoc, cong)
        final, p_final = self._merge_sorted(ah, inner)
        return final, self.trans(line, p_final)

    def _sort_sum(self, t: Term) -> tuple[Term, int]:
        """Canonical sorted right-comb; returns (canon, line |- t = canon)."""
        if not isinstance(t, Add):
            return t, self.refl(t)
        lc, pl = self._sort_sum(t.left)
        rc, pr = self._sort_sum(t.right)
        line = self.cong_add_left(pl, t.right)       # t = lc + t.right
        line = self.trans(line, self.cong_add_right(pr, lc))  # ... = lc + rc
        merged, pm = self._merge_sorted(lc, rc)
        return merged, self.trans(line, pm)

    def ac_plus_eq(self, s: Term, t: Term) -> int:
        """|- s = t for sums equal up to associativity and commutativity."""
        if s == t:
            return self.refl(s)
        assert sorted(map(term_key, self._flatten_sum(s))) == \
            sorted(map(term_key, self._flatten_sum(t))), "sums differ"
        cs, ps = self._sort_sum(s)
        ct, pt = self._sort_sum(t)
        assert cs == ct
        return self.trans(ps, self.sym(pt))

    # -- closed numeral facts ---------------------------------------------------

    def fact_add(self, a: int, b: int) -> int:
        """|- [a] + [b] = [a+b], unrolled over the smaller operand."""
        key = ("add", a, b)
        if key in self._memo:
            return self._memo[key]
        na, nb = Num(a), Num(b)
        if b == 0:
            out = self._pa_spec(5, x1=na)
        elif a == 0:
            out = self._thm_spec("zero_plus", x1=nb)
        elif a < b:
            comm = self._thm_spec("comm_plus", x1=na, x2=nb)
            out = self.trans(comm, self.fact_add(b, a))
        else:
            # iterative peel keeps the recursion depth flat
            line = self._pa_spec(5, x1=na)                  # [a]+0 = [a]
            for j in range(b):
                peel = self._pa_spec(6, x1=na, x2=Num(j))   # [a]+[j+1] = S([a]+[j])
                line = self.trans(peel, self.succ_cong(line))
            out = line
        self._memo[key] = out
        return out

    def fact_mul(self, a: int, b: int) -> int:
        """|- [a] * [b] = [a*b], unrolled over the smaller factor."""
        key = ("mul", a, b)
        if key in self._memo:
            return self._memo[key]
        na, nb = Num(a), Num(b)
        if b == 0:
            out = self._pa_spec(7, x1=na)
        elif a < b:
            comm = self._thm_spec("comm_mul", x1=na, x2=nb)
            out = self.trans(comm, self.fact_mul(b, a))
        else:
            line = self._pa_spec(7, x1=na)                  # [a]*0 = 0
            for j in range(b):
                peel = self._pa_spec(8, x1=na, x2=Num(j))   # [a]*[j+1] = [a]*[j] + [a]
                step = self.trans(peel, self.cong_add_left(line, na))
                line = self.trans(step, self.fact_add(a * j, a))
            out = line
        self._memo[key] = out
        return out

    def fact_eval(self, t: Term) -> tuple[int, int]:
        """(value, line |- t = [value]) for a closed term."""
        key = ("eval", t)
        if key in self._memo:
            return self._memo[key]
        if isinstance(t, Num):
            out = (t.value, self.refl(t))
        elif isinstance(t, Succ):
            v, line = self.fact_eval(t.inner)
            out = (v + 1, self.succ_cong(line))
        elif isinstance(t, Add):
            vl, ll = self.fact_eval(t.left)
            vr, lr = self.fact_eval(t.right)
            line = self.cong_add_left(ll, t.right)
            line = self.trans(line, self.cong_add_right(lr, Num(vl)))
            line = self.trans(line, self.fact_add(vl, vr))
            out = (vl + vr, line)
        elif isinstance(t, Mul):
            vl, ll = self.fact_eval(t.left)
            vr, lr = self.fact_eval(t.right)
            line = self.cong_mul_left(ll, t.right)
            line = self.trans(line, self.cong_mul_right(lr, Num(vl)))
            line = self.trans(line, self.fact_mul(vl, vr))
            out = (vl * vr, line)
        else:
            raise PreconditionError("cannot evaluate a term with variables")
        self._memo[key] = out
        return out


# ---------------------------------------------------------------------------
# Public prover API
# ---------------------------------------------------------------------------

def _finish(d: Derivations, last: int) -> Proof:
    if last != len(d.b):
        # restate the conclusion so it lands on the final line
        f = d.b.formula_at(last)
        ident = d.identity(f)
        d.b.emit(f, ModusPonens(last, ident), force=True)
    return d.b.to_proof()


def prove_add_fact(m: int, n: int) -> Proof:
    """Kernel-checkable proof of [m] + [n] = [m+n]."""
    d = Derivations()
    return _finish(d, d.fact_add(m, n))


def prove_mul_fact(m: int, n: int) -> Proof:
    """Kernel-checkable proof of [m] * [n] = [m*n]."""
    d = Derivations()
    return _finish(d, d.fact_mul(m, n))


def prove_neq_fact(m: int, n: int) -> Proof:
    """Kernel-checkable proof of ~([m] = [n]) for m != n."""
    if m == n:
        raise PreconditionError("prove_neq_fact requires m != n")
    d = Derivations()
    low = min(m, n)
    p, q = m - low, n - low
    if p == 0:
        line = d.specialize(d.pa(3), {"x1": Num(q - 1)})   # ~(0 = [q])
    else:
        base = d.specialize(d.pa(3), {"x1": Num(p - 1)})   # ~(0 = [p])
        pa1 = d.specialize(d.pa(1), {"x1": Num(p), "x2": ZERO, "x3": Num(p)})
        sym_imp = d.mp_under(pa1, d.refl(Num(p)))          # ([p]=0) -> (0=[p])
        line = d.modus_tollens(sym_imp, base)              # ~([p] = 0)
    for step in range(low):
        desc = d.specialize(d.pa(4), {"x1": Num(p + step), "x2": Num(q + step)})
        line = d.modus_tollens(desc, line)
    return _finish(d, line)


def prove_exists(witness: int, var: str, body: Formula, body_proof: Proof) -> Proof:
    """From a proof of body[var := witness], prove ~forall var ~body."""
    expected = substitute(body, var, Num(witness))
    if not body_proof.lines or body_proof.conclusion != expected:
        raise PreconditionError(
            "body_proof must conclude the body instantiated at the witness")
    d = Derivations()
    inst = d.b.absorb(body_proof)
    return _finish(d, d.exists_intro(var, body, Num(witness), inst))


def prove_beta_instance(b: int, c: int, i: int, d_val: int, *,
                        line_budget: Optional[int] = DEFAULT_LINE_BUDGET) -> Proof:
    """Kernel proof of the closed representing-formula instance for
    beta(b, c, i) = d_val.

    Proof length grows linearly with the modulus and the quotient b div
    modulus; when those exceed the line budget a ResourceLimitError is
    raised rather than synthesizing an astronomical proof.
    """
    if beta_value(b, c, i) != d_val:
        raise PreconditionError(
            f"beta({b}, {c}, {i}) = {beta_value(b, c, i)} != {d_val}")
    target = beta_formula_at(b, c, i, d_val)
    modulus = 1 + (i + 1) * c
    quotient = b // modulus
    gap = modulus - d_val - 1   # d_val < modulus since it is a remainder

    if line_budget is not None:
        # peel counts: modulus evaluation, the quotient product, the remainder
        peels = (i + 1) * c + quotient * modulus + modulus
        estimate = 8 * peels + 2000
        if estimate > line_budget:
            raise ResourceLimitError(
                f"synthesizing this instance needs roughly {estimate} proof "
                f"lines (modulus {modulus}, quotient {quotient}), beyond the "
                f"budget of {line_budget}")

    d = Derivations(line_budget=line_budget)
    m_term = Add(ONE, Mul(Add(Num(i), ONE), Num(c)))
    # conjunct 1: [b] = M*[quotient] + [d]
    rhs = Add(Mul(m_term, Num(quotient)), Num(d_val))
    value, line = d.fact_eval(rhs)
    assert value == b
    p_line = d.sym(line)
    # conjunct 2: exists v. [d] + S(v) = M
    less_body = Eq(Add(Num(d_val), Succ(Var("v"))), m_term)
    lhs_fact = d.fact_add(d_val, gap + 1)                # [d]+[gap+1] = [modulus]
    m_value, m_line = d.fact_eval(m_term)
    assert m_value == modulus
    inst = d.trans(lhs_fact, d.sym(m_line))              # [d]+[gap+1] = M
    q_line = d.exists_intro("v", less_body, Num(gap), inst)
    # conjunction and the quotient witness
    both = d.conj_intro(p_line, q_line)
    p_formula = d.b.formula_at(p_line)
    q_formula = d.b.formula_at(q_line)
    matrix = Not(Implies(
        Eq(Num(b), Add(Mul(m_term, Var("w")), Num(d_val))),
        Not(q_formula)))
    assert d.b.formula_at(both) == Not(Implies(p_formula, Not(q_formula)))
    final = d.exists_intro("w", matrix, Num(quotient), both)
    assert d.b.formula_at(final) == target, "synthesized formula mismatch"
    return _finish(d, final)

