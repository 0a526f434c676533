"""Prefix certificates: auditable records that a digit prefix is provable.

``certify_prefix`` takes the first k digits of a stream, encodes them into
a single (b, c) pair, synthesizes a kernel proof of the representing
formula instance for every position, and packs everything (digits, pair,
proofs, codes, verdicts) into a self-contained certificate.  The
certificate claims nothing about the rest of the stream: each prefix gets
its own pair and its own proofs.

``audit_certificate`` re-derives every claim from the certificate alone:
remainder arithmetic, factorial shape of c, coprime moduli, canonical b,
kernel acceptance of each embedded proof, agreement of conclusions, code
values, and the proof relation on the code pairs.  It never consults the
stream or the synthesizer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial, gcd, prod
from typing import Optional

from .beta import BetaPair, beta_formula_at, beta_value, encode_sequence, moduli
from .errors import PreconditionError
from .goedel import (
    GoedelCode, SCHEME_PACK, SCHEME_PRIME, encode_formula, encode_proof,
    is_proof_code_of,
)
from .kernel import check_proof
from .parser import parse_formula, render
from .prooffile import parse_proof, serialize_proof
from .prover import DEFAULT_LINE_BUDGET, prove_beta_instance
from .streams import DigitStream, stream_from_id

FORMAT_NAME = "peanolab-certificate"
FORMAT_VERSION = "1"
INDEX_OFFSET_NOTE = "beta position i stores digit r(i+1)"


class CertificationError(Exception):
    """Synthesis produced something the kernel rejected (a bug, not input)."""


@dataclass(frozen=True, slots=True)
class CertificateEntry:
    position: int          # 1-based digit index
    beta_index: int        # position - 1
    digit: int
    conclusion: str        # rendered closed formula
    conclusion_code: GoedelCode
    proof_code: GoedelCode
    verdict: str
    proof_text: str


@dataclass(frozen=True, slots=True)
class Certificate:
    stream_id: str
    k: int
    digits: tuple[int, ...]
    pair: BetaPair
    entries: tuple[CertificateEntry, ...]
    version: str = FORMAT_VERSION


@dataclass(frozen=True, slots=True)
class AuditReport:
    ok: bool
    failures: tuple[str, ...]


def certify_prefix(stream: DigitStream, k: int, *,
                   max_c_bits: Optional[int] = None,
                   line_budget: Optional[int] = DEFAULT_LINE_BUDGET) -> Certificate:
    if k < 1:
        raise PreconditionError("certificates cover at least one digit")
    digits = stream.prefix(k)
    # digits r(1..k) sit at positions 0..k-1; j is floored at the digit
    # count k, matching the construction's use of the sequence lemma
    kwargs = {} if max_c_bits is None else {"max_c_bits": max_c_bits}
    pair = encode_sequence(digits, min_j=k, **kwargs)
    entries = []
    for position, digit in enumerate(digits, start=1):
        beta_index = position - 1
        proof = prove_beta_instance(pair.b, pair.c, beta_index, digit,
                                    line_budget=line_budget)
        report = check_proof(proof)
        if not report.accepted:
            raise CertificationError(
                f"kernel rejected the synthesized proof at position {position}: "
                f"{report.first_failure}")
        conclusion = beta_formula_at(pair.b, pair.c, beta_index, digit)
        if proof.conclusion != conclusion:
            raise CertificationError(
                f"conclusion mismatch at position {position}")
        entries.append(CertificateEntry(
            position=position,
            beta_index=beta_index,
            digit=digit,
            conclusion=render(conclusion),
            conclusion_code=encode_formula(conclusion, SCHEME_PRIME),
            proof_code=encode_proof(proof, SCHEME_PACK),
            verdict="accepted",
            proof_text=serialize_proof(proof),
        ))
    return Certificate(stream.id, k, tuple(digits), pair, tuple(entries))


def extend_certificate(cert: Certificate, k: int, *,
                       max_c_bits: Optional[int] = None,
                       line_budget: Optional[int] = DEFAULT_LINE_BUDGET) -> Certificate:
    """A fresh certificate for a longer prefix of the same stream.

    The pair (b, c) is recomputed from scratch; nothing from the shorter
    certificate is reused.
    """
    if k <= cert.k:
        raise PreconditionError("extension needs a strictly longer prefix")
    stream = stream_from_id(cert.stream_id)
    return certify_prefix(stream, k, max_c_bits=max_c_bits,
                          line_budget=line_budget)


# ---------------------------------------------------------------------------
# Auditing
# ---------------------------------------------------------------------------

def audit_certificate(cert: Certificate) -> AuditReport:
    failures: list[str] = []

    def fail(msg: str) -> None:
        failures.append(msg)

    if cert.version != FORMAT_VERSION:
        fail(f"unknown certificate version {cert.version!r}")
    if cert.k < 1 or len(cert.digits) != cert.k:
        fail("digit count does not match k")
    if any(not isinstance(d, int) or not 0 <= d <= 9 for d in cert.digits):
        fail("digits outside 0..9")
    if cert.pair.k != cert.k - 1:
        fail("beta pair covers the wrong number of positions")
    if cert.pair.b < 0 or cert.pair.c < 0:
        fail("beta pair must be naturals")
    if any(e.beta_index != e.position - 1 or not 1 <= e.position <= cert.k
           for e in cert.entries):
        fail("entry positions must be 1..k with the fixed index offset")
    if failures:
        # structurally broken: the arithmetic re-checks below would be
        # meaningless or ill-defined
        return AuditReport(False, tuple(failures))

    # the pair itself: factorial c, coprime moduli, canonical least b
    expected_c = factorial(max(cert.k, *cert.digits))
    if cert.pair.c != expected_c:
        fail(f"c is not the factorial fixed by the construction "
             f"({cert.pair.c} != {expected_c})")
    mods = moduli(cert.pair.c, cert.pair.k)
    for i in range(len(mods)):
        for j in range(i + 1, len(mods)):
            if gcd(mods[i], mods[j]) != 1:
                fail(f"moduli {i} and {j} share a factor")
    if not 0 <= cert.pair.b < prod(mods):
        fail("b is not the canonical least solution")

    # remainder agreement for every recorded digit
    for entry in cert.entries:
        got = beta_value(cert.pair.b, cert.pair.c, entry.beta_index)
        if got != entry.digit:
            fail(f"beta mismatch at position {entry.position}: "
                 f"remainder {got}, recorded digit {entry.digit}")

    if len(cert.entries) != cert.k:
        fail("one entry per digit position is required")

    for entry in cert.entries:
        prefix = f"position {entry.position}"
        if entry.verdict != "accepted":
            fail(f"{prefix}: verdict is {entry.verdict!r}")
        expected = beta_formula_at(cert.pair.b, cert.pair.c,
                                   entry.beta_index, entry.digit)
        try:
            recorded = parse_formula(entry.conclusion)
        except Exception as exc:
            fail(f"{prefix}: unparseable conclusion ({exc})")
            continue
        if recorded != expected:
            fail(f"{prefix}: conclusion is not the representing instance")
        try:
            proof = parse_proof(entry.proof_text)
        except Exception as exc:
            fail(f"{prefix}: unparseable proof ({exc})")
            continue
        report = check_proof(proof)
        if not report.accepted:
            fail(f"{prefix}: kernel rejected the proof at "
                 f"{report.first_failure}")
            continue
        if proof.conclusion != expected:
            fail(f"{prefix}: proof concludes something else")
        if encode_formula(expected, entry.conclusion_code.scheme).value \
                != entry.conclusion_code.value:
            fail(f"{prefix}: conclusion code mismatch")
        if encode_proof(proof, entry.proof_code.scheme).value \
                != entry.proof_code.value:
            fail(f"{prefix}: proof code mismatch")
        if not is_proof_code_of(entry.proof_code, entry.conclusion_code):
            fail(f"{prefix}: proof relation does not hold on the codes")

    return AuditReport(not failures, tuple(failures))


# ---------------------------------------------------------------------------
# Serialization (stable field order, decimal-string naturals)
# ---------------------------------------------------------------------------

def _code_to_json(code: GoedelCode) -> dict:
    return {"scheme": code.scheme, "value": str(code.value)}

def _code_from_json(obj: dict, kind: str) -> GoedelCode:
    return GoedelCode(int(obj["value"]), kind, obj["scheme"])


def certificate_to_json(cert: Certificate) -> str:
    doc = {
        "format": FORMAT_NAME,
        "version": cert.version,
        "stream_id": cert.stream_id,
        "k": cert.k,
        "digits": list(cert.digits),
        "index_offset": INDEX_OFFSET_NOTE,
        "beta_pair": {
            "b": str(cert.pair.b),
            "c": str(cert.pair.c),
            "k": cert.pair.k,
        },
        "schemes": {"formula": SCHEME_PRIME, "proof": SCHEME_PACK},
        "entries": [
            {
                "position": e.position,
                "beta_index": e.beta_index,
                "digit": e.digit,
                "conclusion": e.conclusion,
                "conclusion_code": _code_to_json(e.conclusion_code),
                "proof_code": _code_to_json(e.proof_code),
                "verdict": e.verdict,
                "proof": e.proof_text,
            }
            for e in cert.entries
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
        if doc.get("format") != FORMAT_NAME:
            raise PreconditionError("not a certificate document")
        pair = BetaPair(int(doc["beta_pair"]["b"]), int(doc["beta_pair"]["c"]),
                        int(doc["beta_pair"]["k"]))
        entries = tuple(
            CertificateEntry(
                position=e["position"],
                beta_index=e["beta_index"],
                digit=e["digit"],
                conclusion=e["conclusion"],
                conclusion_code=_code_from_json(e["conclusion_code"], "formula"),
                proof_code=_code_from_json(e["proof_code"], "proof"),
                verdict=e["verdict"],
                proof_text=e["proof"],
            )
            for e in doc["entries"]
        )
        return Certificate(doc["stream_id"], doc["k"], tuple(doc["digits"]),
                           pair, entries, doc.get("version", FORMAT_VERSION))
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"malformed certificate document: {exc}") from None
