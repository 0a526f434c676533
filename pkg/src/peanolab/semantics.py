"""Evaluation of PA formulas over the natural numbers.

Closed quantifier-free formulas are decided outright.  Quantified closed
formulas are evaluated to a bounded verdict: universals are checked
exhaustively up to a cutoff, existentials (the ~forall~ pattern) search for
a witness.  Two modes reflect two readings of an exhausted universal:

* ``verifiable``: all instances up to the cutoff hold -> VerifiedToCutoff(n).
* ``computable``: a bounded sweep is never taken as a uniform decision; the
  verdict stays Undecided unless a registered decision procedure for the
  body's shape concludes.  v1 registers only closed linear comparisons.

A found witness settles an existential in both modes; a missing witness
below the cutoff never makes it False.  For single-variable linear equation
matrices the witness solvers are complete, so those existentials are decided
exactly regardless of witness magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Mapping, Optional

from .errors import PreconditionError, UnboundVariableError
from .syntax import (
    Add, Eq, ForAll, Formula, Implies, Not, Num, Succ, Term, Var,
    free_vars, is_closed,
)

DEFAULT_CUTOFF = 25

Assignment = Mapping[str, int]


@dataclass(frozen=True, slots=True)
class EvalVerdict:
    kind: str  # 'true' | 'false' | 'verified_to' | 'undecided'
    counterexample: Optional[tuple[tuple[str, int], ...]] = None
    cutoff: Optional[int] = None
    reason: Optional[str] = None

    @property
    def is_true(self) -> bool:
        return self.kind == "true"

    @property
    def is_false(self) -> bool:
        return self.kind == "false"

    @property
    def conclusive(self) -> bool:
        return self.kind in ("true", "false")

    def counterexample_assignment(self) -> dict[str, int]:
        return dict(self.counterexample or ())


TRUE = EvalVerdict("true")
FALSE = EvalVerdict("false")


def _false(cex: dict[str, int]) -> EvalVerdict:
    return EvalVerdict("false", counterexample=tuple(sorted(cex.items())))


def _verified(cutoff: int) -> EvalVerdict:
    return EvalVerdict("verified_to", cutoff=cutoff)


def _undecided(reason: str) -> EvalVerdict:
    return EvalVerdict("undecided", reason=reason)


# ---------------------------------------------------------------------------
# Terms and quantifier-free formulas
# ---------------------------------------------------------------------------

def eval_term(t: Term, assignment: Assignment) -> int:
    if isinstance(t, Num):
        return t.value
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise UnboundVariableError(f"no value for variable {t.name!r}") from None
    if isinstance(t, Succ):
        return eval_term(t.inner, assignment) + 1
    if isinstance(t, Add):
        return eval_term(t.left, assignment) + eval_term(t.right, assignment)
    return eval_term(t.left, assignment) * eval_term(t.right, assignment)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, Eq):
        return True
    if isinstance(f, Not):
        return is_quantifier_free(f.inner)
    if isinstance(f, Implies):
        return is_quantifier_free(f.antecedent) and is_quantifier_free(f.consequent)
    return False


def _eval_qf(f: Formula, assignment: Assignment) -> bool:
    if isinstance(f, Eq):
        return eval_term(f.left, assignment) == eval_term(f.right, assignment)
    if isinstance(f, Not):
        return not _eval_qf(f.inner, assignment)
    if isinstance(f, Implies):
        return (not _eval_qf(f.antecedent, assignment)) or _eval_qf(f.consequent, assignment)
    raise PreconditionError("formula contains a quantifier")


def eval_qf(f: Formula) -> bool:
    """Decide a closed quantifier-free formula."""
    if not is_quantifier_free(f):
        raise PreconditionError("eval_qf requires a quantifier-free formula")
    if not is_closed(f):
        raise PreconditionError("eval_qf requires a closed formula")
    return _eval_qf(f, {})


# ---------------------------------------------------------------------------
# Linear-shape analysis (decision procedures and witness solvers)
# ---------------------------------------------------------------------------

def linear_form(t: Term, var: str,
                env: Optional[Assignment] = None) -> Optional[tuple[int, int]]:
    """(constant, coefficient) when t = constant + coefficient*var; other
    variables are constants when the environment covers them."""
    if isinstance(t, Num):
        return (t.value, 0)
    if isinstance(t, Var):
        if t.name == var:
            return (0, 1)
        if env is not None and t.name in env:
            return (env[t.name], 0)
        return None
    if isinstance(t, Succ):
        inner = linear_form(t.inner, var, env)
        return None if inner is None else (inner[0] + 1, inner[1])
    if isinstance(t, Add):
        a, b = linear_form(t.left, var, env), linear_form(t.right, var, env)
        if a is None or b is None:
            return None
        return (a[0] + b[0], a[1] + b[1])
    a, b = linear_form(t.left, var, env), linear_form(t.right, var, env)
    if a is None or b is None:
        return None
    if a[1] == 0:
        return (a[0] * b[0], a[0] * b[1])
    if b[1] == 0:
        return (a[0] * b[0], b[0] * a[1])
    return None


def _linear_eq_solutions(f: Formula, var: str,
                         env: Optional[Assignment] = None
                         ) -> Optional[tuple[str, list[int]]]:
    """('all', [0]) / ('some', [w]) / ('none', []) for a linear equation in var."""
    if not isinstance(f, Eq):
        return None
    lhs, rhs = linear_form(f.left, var, env), linear_form(f.right, var, env)
    if lhs is None or rhs is None:
        return None
    (a1, b1), (a2, b2) = lhs, rhs
    if b1 == b2:
        return ("all", [0]) if a1 == a2 else ("none", [])
    num, den = a2 - a1, b1 - b2
    if num % den != 0 or num // den < 0:
        return ("none", [])
    return ("some", [num // den])


def _solve_linear_equation(f: Formula, var: str,
                           env: Optional[Assignment] = None
                           ) -> Optional[tuple[str, list[int]]]:
    return _linear_eq_solutions(f, var, env)


def _solve_guarded_conjunction(f: Formula, var: str,
                               env: Optional[Assignment] = None
                               ) -> Optional[tuple[str, list[int]]]:
    """Matrix ~(P -> ~Q) whose first conjunct P is a linear equation in var.

    P then pins every possible witness, so the candidate list is complete.
    """
    if not (isinstance(f, Not) and isinstance(f.inner, Implies)
            and isinstance(f.inner.consequent, Not)):
        return None
    sols = _linear_eq_solutions(f.inner.antecedent, var, env)
    if sols is None or sols[0] == "all":
        return None
    kind, witnesses = sols
    return ("none", []) if kind == "none" else ("some", witnesses)


WitnessSolver = Callable[[Formula, str, Optional[Assignment]],
                         Optional[tuple[str, list[int]]]]

#: Complete witness solvers for existential matrices, tried in order.  Each
#: returns ('some', candidates) with a complete candidate list, ('none', [])
#: when no natural satisfies the matrix, ('all', [0]) when every natural
#: does, or None when the shape is not recognised.
WITNESS_SOLVERS: tuple[WitnessSolver, ...] = (
    _solve_linear_equation,
    _solve_guarded_conjunction,
)


def _decide_linear_comparison(body: Formula, var: str,
                              env: Optional[Assignment] = None
                              ) -> Optional[EvalVerdict]:
    """Uniform decision for forall var (t1 = t2) with both sides linear."""
    sols = _linear_eq_solutions(body, var, env) if isinstance(body, Eq) else None
    if sols is None:
        return None
    kind, witnesses = sols
    if kind == "all":
        return TRUE
    if kind == "none":
        return _false({var: 0})
    only = witnesses[0]
    least = 0 if only != 0 else 1
    return _false({var: least})


UniversalProcedure = Callable[[Formula, str, Optional[Assignment]],
                              Optional[EvalVerdict]]

#: Registered decision procedures for universals in computable mode.
#: v1 covers closed linear comparisons only; everything else stays Undecided.
UNIVERSAL_DECISION_PROCEDURES: tuple[UniversalProcedure, ...] = (
    _decide_linear_comparison,
)


# ---------------------------------------------------------------------------
# Bounded evaluation (environment-passing: no substitution)
# ---------------------------------------------------------------------------

def exists_view(f: Formula) -> Optional[tuple[str, Formula]]:
    """Recognise the existential pattern ~forall v ~G."""
    if (isinstance(f, Not) and isinstance(f.inner, ForAll)
            and isinstance(f.inner.body, Not)):
        return f.inner.var, f.inner.body.inner
    return None


def _term_source(t: Term) -> str:
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return f"({_term_source(t.inner)}+1)"
    if isinstance(t, Add):
        return f"({_term_source(t.left)}+{_term_source(t.right)})"
    return f"({_term_source(t.left)}*{_term_source(t.right)})"


def _formula_source(f: Formula) -> str:
    if isinstance(f, Eq):
        return f"({_term_source(f.left)}=={_term_source(f.right)})"
    if isinstance(f, Not):
        return f"(not {_formula_source(f.inner)})"
    if isinstance(f, Implies):
        return (f"((not {_formula_source(f.antecedent)}) or "
                f"{_formula_source(f.consequent)})")
    raise PreconditionError("only quantifier-free formulas compile")


def _params_ok(params) -> bool:
    import keyword
    return not any(keyword.iskeyword(p) or p.startswith("__") for p in params)


def _compile_qf(matrix: Formula, params: tuple[str, ...]):
    """A Python callable deciding a quantifier-free matrix; None when the
    variable names cannot serve as parameter names."""
    if not _params_ok(params):
        return None
    source = f"lambda {', '.join(params)}: {_formula_source(matrix)}" \
        if params else f"lambda: {_formula_source(matrix)}"
    return eval(source, {"__builtins__": {}})  # noqa: S307 - self-built source


def _compile_block(matrix: Formula, prefix: list[str], outer: list[str],
                   cutoff: int):
    """(all_fn, witness_fn) deciding a universal block over a QF matrix.

    all_fn(*outer) is the conjunction over assignments of the prefix up to
    the cutoff; witness_fn(*outer) returns the least falsifying assignment
    tuple or None.  None when names cannot be parameters.
    """
    if not _params_ok(tuple(prefix) + tuple(outer)):
        return None
    body = _formula_source(matrix)
    loops = " ".join(f"for {v} in range({cutoff + 1})" for v in prefix)
    head = f"lambda {', '.join(outer)}:" if outer else "lambda:"
    all_fn = eval(f"{head} all({body} {loops})",  # noqa: S307
                  {"__builtins__": {"all": all, "range": range}})
    tup = ", ".join(prefix)
    witness_fn = eval(  # noqa: S307
        f"{head} next((({tup},) {loops} if not {body}), None)",
        {"__builtins__": {"next": next, "range": range}})
    return all_fn, witness_fn


class _Evaluator:
    """One bounded evaluation: carries the cutoff, the mode, a memo of
    quantified subformulas keyed by the values of their free variables, and
    compiled deciders for quantifier-free matrices."""

    def __init__(self, cutoff: int, mode: str):
        self.cutoff = cutoff
        self.mode = mode
        self._memo: dict[tuple, EvalVerdict] = {}
        self._fv: dict[int, tuple[str, ...]] = {}
        self._qf: dict[int, bool] = {}
        self._compiled: dict[int, object] = {}

    def _free(self, f: Formula) -> tuple[str, ...]:
        cached = self._fv.get(id(f))
        if cached is None:
            cached = tuple(sorted(free_vars(f)))
            self._fv[id(f)] = cached
        return cached

    def _is_qf(self, f: Formula) -> bool:
        cached = self._qf.get(id(f))
        if cached is None:
            cached = is_quantifier_free(f)
            self._qf[id(f)] = cached
        return cached

    def _decider(self, matrix: Formula):
        fn = self._compiled.get(id(matrix))
        if fn is None:
            fn = _compile_qf(matrix, self._free(matrix))
            self._compiled[id(matrix)] = fn
        return fn

    def _block(self, matrix: Formula, bound: list[str], outer: list[str]):
        key = ("block", id(matrix))
        fns = self._compiled.get(key)
        if fns is None:
            fns = _compile_block(matrix, bound, outer, self.cutoff)
            self._compiled[key] = fns
        return fns

    def eval(self, f: Formula, env: dict[str, int]) -> EvalVerdict:
        if self._is_qf(f):
            decider = self._decider(f)
            if decider is not None:
                holds = decider(*[env[v] for v in self._free(f)])
            else:
                holds = _eval_qf(f, env)
            return TRUE if holds else FALSE
        key = (id(f), tuple(env.get(v) for v in self._free(f)))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        verdict = self._eval_quantified(f, env)
        self._memo[key] = verdict
        return verdict

    def _eval_quantified(self, f: Formula, env: dict[str, int]) -> EvalVerdict:
        ex = exists_view(f)
        if ex is not None:
            return self._exists(ex[0], ex[1], env)
        if isinstance(f, ForAll):
            return self._forall(f.var, f.body, env)
        if isinstance(f, Not):
            sub = self.eval(f.inner, env)
            if sub.is_true:
                return FALSE
            if sub.is_false:
                return TRUE
            return _undecided("negation of a non-conclusive verdict")
        if isinstance(f, Implies):
            a = self.eval(f.antecedent, env)
            if a.is_false:
                return TRUE
            b = self.eval(f.consequent, env)
            if b.is_true:
                return TRUE
            if a.is_true and b.is_false:
                return FALSE
            return _undecided("conditional with non-conclusive parts")
        raise PreconditionError(f"unexpected formula node {type(f).__name__}")

    def _exists(self, var: str, body: Formula, env: dict[str, int]) -> EvalVerdict:
        saved = env.get(var)
        try:
            for n in range(self.cutoff + 1):
                env[var] = n
                if self.eval(body, env).is_true:
                    return TRUE
            if var in env:
                del env[var]
            for solver in WITNESS_SOLVERS:
                sols = solver(body, var, env)
                if sols is None:
                    continue
                kind, witnesses = sols
                if kind == "none":
                    return FALSE
                if kind == "all":
                    witnesses = [0]
                results = []
                for w in witnesses:
                    env[var] = w
                    results.append(self.eval(body, env))
                if any(r.is_true for r in results):
                    return TRUE
                if all(r.is_false for r in results) and kind == "some":
                    return FALSE
                break
            return _undecided(
                f"no witness for {var} found up to cutoff {self.cutoff}")
        finally:
            if saved is None:
                env.pop(var, None)
            else:
                env[var] = saved

    def _forall(self, var: str, body: Formula, env: dict[str, int]) -> EvalVerdict:
        # a block of universals over a quantifier-free matrix is checked by
        # direct enumeration of assignments
        prefix = [var]
        matrix = body
        while isinstance(matrix, ForAll):
            prefix.append(matrix.var)
            matrix = matrix.body
        if self._is_qf(matrix) and len(set(prefix)) == len(prefix):
            free = self._free(matrix)
            outer = [v for v in free if v not in prefix]
            bound = [v for v in prefix if v in free]
            if not bound:
                # the block is vacuous: the matrix is fixed by outer values
                sub = self.eval(matrix, env)
                if sub.is_true:
                    if self.mode == "computable":
                        return _undecided("no uniform decision")
                    return _verified(self.cutoff)
                return _false(dict.fromkeys(prefix, 0))
            compiled = self._block(matrix, bound, outer)
            if compiled is not None:
                all_fn, witness_fn = compiled
                outer_values = [env[v] for v in outer]
                if all_fn(*outer_values):
                    if self.mode == "computable":
                        if len(prefix) == 1:
                            for procedure in UNIVERSAL_DECISION_PROCEDURES:
                                verdict = procedure(matrix, var, env)
                                if verdict is not None:
                                    return verdict
                        return _undecided("no uniform decision")
                    return _verified(self.cutoff)
                witness = witness_fn(*outer_values)
                cex = dict.fromkeys(prefix, 0)
                cex.update(zip(bound, witness))
                return _false(cex)
            saved = {v: env[v] for v in prefix if v in env}
            try:
                for values in product(range(self.cutoff + 1),
                                      repeat=len(prefix)):
                    for v, n in zip(prefix, values):
                        env[v] = n
                    if not _eval_qf(matrix, env):
                        return _false(dict(zip(prefix, values)))
                for v in prefix:
                    del env[v]
                env.update(saved)
                if self.mode == "computable":
                    if len(prefix) == 1:
                        for procedure in UNIVERSAL_DECISION_PROCEDURES:
                            verdict = procedure(matrix, var, env)
                            if verdict is not None:
                                return verdict
                    return _undecided("no uniform decision")
                return _verified(self.cutoff)
            finally:
                for v in prefix:
                    env.pop(v, None)
                env.update(saved)

        saved_one = env.get(var)
        try:
            inconclusive = None
            for n in range(self.cutoff + 1):
                env[var] = n
                sub = self.eval(body, env)
                if sub.is_false:
                    cex = {var: n}
                    cex.update(sub.counterexample_assignment())
                    return _false(cex)
                if not sub.is_true and sub.kind != "verified_to":
                    inconclusive = n if inconclusive is None else inconclusive
            if var in env:
                del env[var]
            if inconclusive is not None:
                return _undecided(
                    f"instance at {var} = {inconclusive} is undecided")
            if self.mode == "computable":
                for procedure in UNIVERSAL_DECISION_PROCEDURES:
                    verdict = procedure(body, var, env)
                    if verdict is not None:
                        return verdict
                return _undecided("no uniform decision")
            return _verified(self.cutoff)
        finally:
            if saved_one is None:
                env.pop(var, None)
            else:
                env[var] = saved_one


def eval_bounded(f: Formula, cutoff: int = DEFAULT_CUTOFF,
                 mode: str = "verifiable") -> EvalVerdict:
    """Cutoff-bounded verdict for a closed formula."""
    if mode not in ("verifiable", "computable"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if not is_closed(f):
        raise PreconditionError("eval_bounded requires a closed formula")
    if cutoff < 0:
        raise PreconditionError("cutoff must be a natural")
    return _Evaluator(cutoff, mode).eval(f, {})


def universal_closure(f: Formula) -> Formula:
    for v in sorted(free_vars(f), reverse=True):
        f = ForAll(v, f)
    return f
