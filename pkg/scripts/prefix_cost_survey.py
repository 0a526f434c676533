#!/usr/bin/env python3
"""Survey how proof synthesis cost scales with the prefix length.

For each prefix length k of a stream, report the encoded pair, the modulus
and quotient magnitudes at the worst position, and the estimated number of
kernel lines the representing-formula proofs would need.  Closed-fact
synthesis peels one successor per line, so the estimate grows with the
quotient b div modulus; the survey makes the wall visible: the moment a
large digit enters the prefix, c jumps to a large factorial, the CRT
solution b explodes, and proofs stop being writable.
"""

import argparse
import sys

from peanolab.beta import encode_sequence, moduli
from peanolab.prover import DEFAULT_LINE_BUDGET
from peanolab.streams import stream_from_id


def survey(stream_id: str, max_k: int) -> None:
    stream = stream_from_id(stream_id)
    print(f"stream {stream.id}")
    print(f"{'k':>3} {'c':>12} {'bits(b)':>8} {'worst quotient':>22} "
          f"{'est. proof lines':>18}  feasible?")
    for k in range(1, max_k + 1):
        digits = stream.prefix(k)
        pair = encode_sequence(digits, min_j=k)
        mods = moduli(pair.c, pair.k)
        worst = 0
        for i in range(k):
            quotient = pair.b // mods[i]
            estimate = 8 * ((i + 1) * pair.c + quotient * mods[i] + mods[i])
            worst = max(worst, estimate)
        quotients = [pair.b // m for m in mods]
        feasible = "yes" if worst <= DEFAULT_LINE_BUDGET else "no"
        print(f"{k:>3} {pair.c:>12} {pair.b.bit_length():>8} "
              f"{max(quotients):>22} {worst:>18.2e}  {feasible}")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--stream", default="rational:1/7")
    parser.add_argument("--max-k", type=int, default=6)
    args = parser.parse_args()
    survey(args.stream, args.max_k)
    return 0


if __name__ == "__main__":
    sys.exit(main())
