"""peanolab: a first-order Peano Arithmetic workbench.

Formula calculus, a Hilbert-style proof kernel, proof synthesis for closed
arithmetic facts, Goedel numbering with a decidable proof relation,
factorial/CRT sequence encoding through the remainder function, bounded
Tarski evaluation, and prefix certification of digit streams.
"""

from .beta import (
    BetaPair, beta_formula, beta_formula_at, beta_value, encode_sequence,
    moduli,
)
from .certify import (
    AuditReport, Certificate, audit_certificate, certificate_from_json,
    certificate_to_json, certify_prefix, extend_certificate,
)
from .errors import (
    MalformedCodeError, PreconditionError, ResourceLimitError,
    UnboundVariableError,
)
from .goedel import (
    GoedelCode, decode_formula, decode_proof, encode_formula, encode_proof,
    is_proof_code_of,
)
from .kernel import (
    CheckReport, Generalisation, InductionInstance, Justification,
    LogicalAxiom, ModusPonens, PAAxiom, Proof, ProofLine, check_proof,
    classify_schema, pa_axiom,
)
from .parser import ParseError, parse_formula, parse_term, render, render_term
from .prooffile import ProofFileError, parse_proof, serialize_proof
from .prover import (
    prove_add_fact, prove_beta_instance, prove_exists, prove_mul_fact,
    prove_neq_fact,
)
from .semantics import (
    EvalVerdict, eval_bounded, eval_qf, eval_term, universal_closure,
)
from .streams import DigitStream, stream_from_id
from .syntax import (
    Add, CaptureError, Eq, ForAll, Formula, Implies, Mul, Not, Num, Numeral,
    Succ, Term, Var, conj, disj, exists, free_vars, less, numeral, substitute,
    succ,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
