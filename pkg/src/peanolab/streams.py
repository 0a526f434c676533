"""Digit streams: deterministic oracles yielding decimal digits r(1), r(2), ...

A stream is addressed by an id string so certificates can name their source:

    const:7          the constant digit 7
    periodic:142857  repeat the pattern
    rational:1/7     decimal expansion of the fraction (its fractional part)
    seed:42          reproducible pseudo-random digits (internal LCG)
    file:PATH        ASCII digits read from a file, other bytes ignored

File-backed streams let a user inject digits with no generating program;
the interface deliberately does not care where digits come from.
"""

from __future__ import annotations

from pathlib import Path

from .errors import PreconditionError


class DigitStream:
    """Deterministic digits indexed from 1."""

    def __init__(self, stream_id: str, digit_fn):
        self.id = stream_id
        self._digit_fn = digit_fn

    def digit(self, index: int) -> int:
        if index < 1:
            raise PreconditionError("digit positions start at 1")
        d = self._digit_fn(index)
        if not 0 <= d <= 9:
            raise PreconditionError(f"stream {self.id} produced non-digit {d}")
        return d

    def prefix(self, k: int) -> list[int]:
        if k < 1:
            raise PreconditionError("prefix length must be at least 1")
        return [self.digit(i) for i in range(1, k + 1)]


def constant_stream(digit: int) -> DigitStream:
    if not 0 <= digit <= 9:
        raise PreconditionError("constant stream needs a digit 0..9")
    return DigitStream(f"const:{digit}", lambda i: digit)


def periodic_stream(pattern: str) -> DigitStream:
    if not pattern or not pattern.isdigit():
        raise PreconditionError("periodic stream needs a nonempty digit pattern")
    digits = [int(ch) for ch in pattern]
    return DigitStream(f"periodic:{pattern}",
                       lambda i: digits[(i - 1) % len(digits)])


def rational_stream(p: int, q: int) -> DigitStream:
    """Digits of the decimal expansion of p/q (fractional part)."""
    if q <= 0 or p < 0:
        raise PreconditionError("rational stream needs p >= 0, q > 0")

    def digit(i: int) -> int:
        r = p % q
        for _ in range(i):
            r *= 10
            d, r = divmod(r, q)
        return d

    return DigitStream(f"rational:{p}/{q}", digit)


_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_LCG_MOD = 1 << 64


def seeded_stream(seed: int) -> DigitStream:
    """Pseudo-random digits from a self-contained 64-bit LCG.

    Not a model of an uncomputable sequence, just a reproducible scramble;
    the stream interface is the honest boundary.
    """

    def digit(i: int) -> int:
        x = seed % _LCG_MOD
        for _ in range(i):
            x = (_LCG_MULT * x + _LCG_INC) % _LCG_MOD
        return (x >> 33) % 10

    return DigitStream(f"seed:{seed}", digit)


def file_stream(path: str) -> DigitStream:
    text = Path(path).read_text(encoding="utf-8")
    digits = [int(ch) for ch in text if ch.isdigit()]

    def digit(i: int) -> int:
        if i > len(digits):
            raise PreconditionError(
                f"file stream {path} holds only {len(digits)} digits")
        return digits[i - 1]

    return DigitStream(f"file:{path}", digit)


def stream_from_id(stream_id: str) -> DigitStream:
    kind, sep, arg = stream_id.partition(":")
    if not sep:
        raise PreconditionError(f"malformed stream id {stream_id!r}")
    if kind == "const":
        return constant_stream(int(arg))
    if kind == "periodic":
        return periodic_stream(arg)
    if kind == "rational":
        p_text, slash, q_text = arg.partition("/")
        if not slash:
            raise PreconditionError("rational stream id is rational:P/Q")
        return rational_stream(int(p_text), int(q_text))
    if kind == "seed":
        return seeded_stream(int(arg))
    if kind == "file":
        return file_stream(arg)
    raise PreconditionError(f"unknown stream kind {kind!r}")
