"""Sequence-of-consecutive-differences (SCD) notation.

A sorted set {a1 < a2 < ... < an} is written ``(a1|a2-a1,a3-a2,...)``.
Runs of consecutive differences sum to positive elements of the
difference set, which is what makes the notation useful.
"""

from __future__ import annotations

from dataclasses import dataclass

from .setcore import IntegerSet

__all__ = ["SCD", "SCDParseError", "parse", "format", "to_set", "from_set", "run_sums"]


@dataclass(frozen=True)
class SCD:
    """Base element plus the ordered positive differences of a sorted set."""

    base: int
    diffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "diffs", tuple(self.diffs))
        if self.base < 0:
            raise ValueError(f"base must be non-negative, got {self.base}")
        for d in self.diffs:
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"differences must be positive integers, got {d!r}")

    def diameter(self) -> int:
        return sum(self.diffs)

    def __str__(self) -> str:
        return format(self)


class SCDParseError(ValueError):
    """Malformed SCD text; ``offset`` is the byte offset of the error."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


def parse(text: str) -> SCD:
    """Parse ``(base|d1,d2,...)``; whitespace between tokens is tolerated."""
    i = 0
    n = len(text)

    def skip_ws():
        nonlocal i
        while i < n and text[i] in " \t":
            i += 1

    def read_int(what: str) -> int:
        nonlocal i
        start = i
        while i < n and text[i].isdigit():
            i += 1
        if i == start:
            raise SCDParseError(f"expected {what}", start)
        return int(text[start:i])

    skip_ws()
    if i >= n or text[i] != "(":
        raise SCDParseError("expected '('", i)
    i += 1
    skip_ws()
    base = read_int("base integer")
    skip_ws()
    if i >= n or text[i] != "|":
        raise SCDParseError("expected '|'", i)
    i += 1
    skip_ws()
    diffs = []
    if i < n and text[i] != ")":
        while True:
            at = i
            d = read_int("positive difference")
            if d < 1:
                raise SCDParseError("differences must be positive", at)
            diffs.append(d)
            skip_ws()
            if i < n and text[i] == ",":
                i += 1
                skip_ws()
                continue
            break
    if i >= n or text[i] != ")":
        raise SCDParseError("expected ')'", i)
    i += 1
    skip_ws()
    if i != n:
        raise SCDParseError("trailing input after ')'", i)
    return SCD(base, tuple(diffs))


def format(scd: SCD) -> str:
    """Canonical text form; no whitespace, singletons render as ``(a|)``."""
    return f"({scd.base}|{','.join(map(str, scd.diffs))})"


def to_set(scd: SCD) -> IntegerSet:
    """The set {base, base+d1, base+d1+d2, ...}."""
    acc = scd.base
    out = [acc]
    for d in scd.diffs:
        acc += d
        out.append(acc)
    return IntegerSet(out)


def from_set(a: IntegerSet) -> SCD:
    """Inverse of to_set(); the base is min(A)."""
    if len(a) == 0:
        raise ValueError("cannot derive an SCD from an empty set")
    els = a.elements
    return SCD(els[0], tuple(els[i + 1] - els[i] for i in range(len(els) - 1)))


def run_sums(scd: SCD) -> IntegerSet:
    """Sums of all nonempty consecutive runs of differences.

    Equals the positive part of the difference set of to_set(scd).  This is
    a test oracle (prefix-sum differencing, quadratic), not a hot path.
    """
    bits = 0
    d = scd.diffs
    for i in range(len(d)):
        s = 0
        for j in range(i, len(d)):
            s += d[j]
            bits |= 1 << s
    return IntegerSet.from_mask(bits)
