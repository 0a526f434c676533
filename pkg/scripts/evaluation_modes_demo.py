#!/usr/bin/env python3
"""Show the two evaluation readings of a universal sentence side by side.

``verifiable`` exhausts assignments up to the cutoff and reports how far it
got; ``computable`` refuses to upgrade a bounded sweep into a uniform
decision unless a registered procedure for the shape concludes.  Linear
comparisons are the only registered procedures, so they decide, while
anything else stays undecided even when every sampled instance holds.
"""

import sys

from peanolab.parser import parse_formula
from peanolab.semantics import eval_bounded

SENTENCES = [
    "forall x. x + 0 = x",
    "forall x. x + x = x * S(S(0))",
    "forall x. x = 0",
    "forall x. ~(x * x = S(S(0)))",
    "exists w. S(S(0)) * w = 123456789012345678",
    "exists w. S(S(0)) * w = 123456789012345679",
]


def main() -> int:
    print(f"{'sentence':<50} {'verifiable':>18} {'computable':>18}")
    for text in SENTENCES:
        f = parse_formula(text)
        row = []
        for mode in ("verifiable", "computable"):
            verdict = eval_bounded(f, cutoff=25, mode=mode)
            label = verdict.kind
            if verdict.counterexample:
                label += f" {dict(verdict.counterexample)}"
            row.append(label)
        print(f"{text:<50} {row[0]:>18} {row[1]:>18}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
