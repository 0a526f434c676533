"""Sequence encoding through the remainder function beta(b, c, i).

beta(b, c, i) is the remainder of b on division by 1 + (i+1)*c.  With
c = j! for j at least as large as the sequence length and every value, the
moduli 1 + (i+1)*c are pairwise coprime, so any finite sequence of naturals
is the remainder profile of some b; the least such b is found by the
Chinese Remainder Theorem.

The four-variable PA formula returned by :func:`beta_formula` expresses
``beta(x1, x2, x3) = x4`` with a single existential witness (the quotient):

    (exists w)(x1 = (1 + (x3 + 1) * x2) * w + x4  &  x4 < 1 + (x3 + 1) * x2)

expanded into the core connectives.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial, gcd, prod

from .errors import PreconditionError, ResourceLimitError
from .syntax import Add, Eq, Formula, Mul, Num, Var, conj, exists, less, substitute

# Refuse factorials beyond a mebibit by default; the construction's cost is
# known to explode in c and certificates embed these numbers as decimals.
DEFAULT_MAX_C_BITS = 1 << 20


@dataclass(frozen=True, slots=True)
class BetaPair:
    """The (b, c) encoding of a sequence over positions 0..k."""

    b: int
    c: int
    k: int


def beta_value(b: int, c: int, i: int) -> int:
    """b mod (1 + (i+1)*c); total, the modulus is >= 1 for all naturals."""
    return b % (1 + (i + 1) * c)


def moduli(c: int, k: int) -> list[int]:
    return [1 + (i + 1) * c for i in range(k + 1)]


def _crt_least(residues: list[int], mods: list[int]) -> int:
    x, m = 0, 1
    for r, d in zip(residues, mods):
        t = ((r - x) * pow(m, -1, d)) % d
        x += m * t
        m *= d
    return x % m


def encode_sequence(values: list[int], *,
                    max_c_bits: int = DEFAULT_MAX_C_BITS,
                    min_j: int = 0) -> BetaPair:
    """Least (b, c) with beta_value(b, c, i) == values[i] for all positions.

    c is the factorial of j = max(k, values...) over positions 0..k; a
    caller mapping 1-based digits onto these positions can raise the floor
    with min_j so that j is computed from its own position count.
    """
    if not values:
        raise PreconditionError("cannot encode an empty sequence")
    if any(v < 0 for v in values):
        raise PreconditionError("sequence values must be naturals")
    k = len(values) - 1
    j = max(k, min_j, *values)
    c = factorial(j)
    if c.bit_length() > max_c_bits:
        raise ResourceLimitError(
            f"c = {j}! needs {c.bit_length()} bits (limit {max_c_bits})")
    mods = moduli(c, k)
    b = _crt_least(values, mods)
    return BetaPair(b, c, k)


def brute_force_encode(values: list[int], *, limit: int = 10 ** 6) -> int | None:
    """Search oracle for the least b; None when the modulus product exceeds limit."""
    if not values:
        raise PreconditionError("cannot encode an empty sequence")
    k = len(values) - 1
    c = factorial(max(k, *values))
    mods = moduli(c, k)
    if prod(mods) > limit:
        return None
    b = 0
    while True:
        if all(b % d == v for v, d in zip(values, mods)):
            return b
        b += 1


def coprimality_violations(j: int) -> list[tuple[int, int]]:
    """All pairs 0 <= i < i' <= j with gcd(d_i, d_i') > 1 for c = j!."""
    c = factorial(j)
    ds = moduli(c, j)
    return [(i, i2)
            for i in range(len(ds))
            for i2 in range(i + 1, len(ds))
            if gcd(ds[i], ds[i2]) != 1]


# ---------------------------------------------------------------------------
# The representing formula
# ---------------------------------------------------------------------------

BETA_VARS = ("x1", "x2", "x3", "x4")


def beta_modulus_term(c_term, i_term):
    """1 + (i + 1) * c as a PA term."""
    return Add(Num(1), Mul(Add(i_term, Num(1)), c_term))


def beta_formula() -> Formula:
    """Four free variables x1..x4; holds in N iff beta(x1, x2, x3) = x4."""
    x1, x2, x3, x4 = (Var(v) for v in BETA_VARS)
    modulus = beta_modulus_term(x2, x3)
    quotient_part = Eq(x1, Add(Mul(modulus, Var("w")), x4))
    return exists("w", conj(quotient_part, less(x4, modulus)))


def beta_formula_at(b: int, c: int, i: int, d: int) -> Formula:
    """The closed instance of beta_formula at numerals for (b, c, i, d)."""
    f = beta_formula()
    for var, value in zip(BETA_VARS, (b, c, i, d)):
        f = substitute(f, var, Num(value))
    return f
