"""Command-line surface.

Exit codes: 0 success, 1 domain rejection (proof rejected, audit failed,
evaluation inconclusive where a verdict was demanded), 2 usage or I/O
errors.  Machine-readable output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .beta import encode_sequence
from .certify import (
    audit_certificate, certificate_from_json, certificate_to_json,
    certify_prefix,
)
from .errors import (
    MalformedCodeError, PreconditionError, ResourceLimitError,
)
from .goedel import SCHEME_PACK, SCHEME_PRIME, encode_formula, encode_proof
from .kernel import check_proof
from .parser import ParseError, parse_formula, render
from .prooffile import ProofFileError, parse_proof, serialize_proof
from .prover import (
    DEFAULT_LINE_BUDGET, prove_add_fact, prove_mul_fact, prove_neq_fact,
)
from .semantics import DEFAULT_CUTOFF, eval_bounded
from .streams import stream_from_id


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_parse(args) -> int:
    text = _read_text(args.file) if args.file else args.formula
    if text is None:
        print("parse: needs a formula argument or --file", file=sys.stderr)
        return 2
    formula = parse_formula(text)
    print(render(formula))
    return 0


def _cmd_check_proof(args) -> int:
    proof = parse_proof(_read_text(args.proof_file))
    report = check_proof(proof)
    if report.accepted:
        print(f"accepted: {render(report.conclusion)}")
        return 0
    line, reason = report.first_failure
    print(f"rejected at line {line}: {reason}")
    return 1


def _cmd_prove_fact(args) -> int:
    if args.kind == "add":
        proof = prove_add_fact(args.m, args.n)
    elif args.kind == "mul":
        proof = prove_mul_fact(args.m, args.n)
    else:
        proof = prove_neq_fact(args.m, args.n)
    text = serialize_proof(proof)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {len(proof.lines)} lines: {render(proof.conclusion)}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_goedelize(args) -> int:
    if args.formula is not None:
        scheme = args.scheme or SCHEME_PRIME
        code = encode_formula(parse_formula(args.formula), scheme)
    elif args.proof is not None:
        scheme = args.scheme or SCHEME_PACK
        code = encode_proof(parse_proof(_read_text(args.proof)), scheme)
    else:
        print("goedelize: needs --formula or --proof", file=sys.stderr)
        return 2
    print(json.dumps({"kind": code.kind, "scheme": code.scheme,
                      "value": str(code.value)}))
    return 0


def _cmd_encode_seq(args) -> int:
    kwargs = {} if args.max_c_bits is None else {"max_c_bits": args.max_c_bits}
    pair = encode_sequence(args.values, **kwargs)
    print(json.dumps({"b": str(pair.b), "c": str(pair.c), "k": pair.k}))
    return 0


def _cmd_eval(args) -> int:
    formula = parse_formula(args.formula)
    verdict = eval_bounded(formula, cutoff=args.cutoff, mode=args.mode)
    out = {"verdict": verdict.kind, "cutoff": args.cutoff, "mode": args.mode}
    if verdict.counterexample is not None:
        out["counterexample"] = dict(verdict.counterexample)
    if verdict.reason is not None:
        out["reason"] = verdict.reason
    print(json.dumps(out))
    return 0 if verdict.kind in ("true", "verified_to") else 1


def _cmd_certify(args) -> int:
    stream = stream_from_id(args.stream)
    cert = certify_prefix(stream, args.k, max_c_bits=args.max_c_bits,
                          line_budget=args.line_budget)
    text = certificate_to_json(cert)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"certified {cert.stream_id} prefix k={cert.k} -> {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_audit(args) -> int:
    cert = certificate_from_json(_read_text(args.certificate))
    report = audit_certificate(cert)
    if report.ok:
        print(f"audit ok: {cert.stream_id} k={cert.k}")
        return 0
    for failure in report.failures:
        print(f"audit failure: {failure}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peanolab",
        description="first-order arithmetic workbench: parse formulas, "
                    "check and synthesize proofs, number them, encode digit "
                    "sequences, evaluate, certify stream prefixes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    p.add_argument("formula", nargs="?")
    p.add_argument("--file")
    p.set_defaults(fn=_cmd_parse)

    p = sub.add_parser("check-proof", help="check a proof file against the kernel")
    p.add_argument("proof_file")
    p.set_defaults(fn=_cmd_check_proof)

    p = sub.add_parser("prove-fact", help="synthesize a proof of a closed fact")
    p.add_argument("kind", choices=("add", "mul", "neq"))
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--out")
    p.set_defaults(fn=_cmd_prove_fact)

    p = sub.add_parser("goedelize", help="number a formula or proof file")
    p.add_argument("--formula")
    p.add_argument("--proof")
    p.add_argument("--scheme", choices=(SCHEME_PRIME, SCHEME_PACK))
    p.set_defaults(fn=_cmd_goedelize)

    p = sub.add_parser("encode-seq", help="beta-encode a sequence of naturals")
    p.add_argument("values", nargs="+", type=int)
    p.add_argument("--max-c-bits", type=int, default=None)
    p.set_defaults(fn=_cmd_encode_seq)

    p = sub.add_parser("eval", help="evaluate a closed formula to a bounded verdict")
    p.add_argument("formula")
    p.add_argument("--cutoff", type=int, default=DEFAULT_CUTOFF)
    p.add_argument("--mode", choices=("verifiable", "computable"),
                   default="verifiable")
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("certify", help="certify a digit-stream prefix")
    p.add_argument("--stream", required=True)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--out")
    p.add_argument("--max-c-bits", type=int, default=None)
    p.add_argument("--line-budget", type=int, default=DEFAULT_LINE_BUDGET)
    p.set_defaults(fn=_cmd_certify)

    p = sub.add_parser("audit", help="independently audit a certificate file")
    p.add_argument("certificate")
    p.set_defaults(fn=_cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, ProofFileError, PreconditionError,
            ResourceLimitError, MalformedCodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
