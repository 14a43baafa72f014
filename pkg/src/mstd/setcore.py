"""Exact arithmetic on finite integer sets: sum sets, difference sets,
restricted sum sets, classification and normalization.

The fast paths work on Python integers used as bit vectors (bit ``i`` set
iff ``i`` is an element), which makes them unbounded-width for free.  The
``*_naive`` double-loop variants are kept as independent oracles for the
test suite and the naive search engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

__all__ = [
    "IntegerSet",
    "SignedIntegerSet",
    "Classification",
    "MSTD",
    "BALANCED",
    "DIFFERENCE_DOMINATED",
    "sumset",
    "difference_set",
    "restricted_sumset",
    "sumset_naive",
    "difference_set_naive",
    "restricted_sumset_naive",
    "classify",
    "ratio",
    "affine_normalize",
    "base_expand",
    "parse_set_literal",
    "format_set_literal",
]

MSTD = "MSTD"
BALANCED = "balanced"
DIFFERENCE_DOMINATED = "difference-dominated"


def _mask_to_elements(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


class IntegerSet:
    """Immutable, sorted, duplicate-free set of non-negative integers."""

    __slots__ = ("_elements", "_mask")

    def __init__(self, elements: Iterable[int] = ()):
        elems = sorted(set(elements))
        for x in elems:
            if not isinstance(x, int):
                raise TypeError(f"elements must be integers, got {x!r}")
        if elems and elems[0] < 0:
            raise ValueError(f"elements must be non-negative, got {elems[0]}")
        self._elements = tuple(elems)
        self._mask = None

    @classmethod
    def from_mask(cls, mask: int) -> "IntegerSet":
        """Build a set from a characteristic bit vector."""
        if mask < 0:
            raise ValueError("mask must be non-negative")
        s = cls.__new__(cls)
        s._elements = _mask_to_elements(mask)
        s._mask = mask
        return s

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    @property
    def mask(self) -> int:
        """Characteristic bit vector (bit i set iff i is an element)."""
        if self._mask is None:
            m = 0
            for x in self._elements:
                m |= 1 << x
            self._mask = m
        return self._mask

    def min(self) -> int:
        return self._elements[0]

    def max(self) -> int:
        return self._elements[-1]

    def diameter(self) -> int:
        return self._elements[-1] - self._elements[0]

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and x >= 0 and (self.mask >> x) & 1 == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerSet) and self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"IntegerSet({{{', '.join(map(str, self._elements))}}})"


class SignedIntegerSet:
    """Immutable, sorted, duplicate-free set of integers of either sign."""

    __slots__ = ("_elements",)

    def __init__(self, elements: Iterable[int] = ()):
        elems = sorted(set(elements))
        for x in elems:
            if not isinstance(x, int):
                raise TypeError(f"elements must be integers, got {x!r}")
        self._elements = tuple(elems)

    @property
    def elements(self) -> tuple[int, ...]:
        return self._elements

    def positive_part(self) -> tuple[int, ...]:
        return tuple(x for x in self._elements if x > 0)

    def is_symmetric(self) -> bool:
        return all(-x in set(self._elements) for x in self._elements)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self._elements)

    def __contains__(self, x: object) -> bool:
        return x in set(self._elements)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SignedIntegerSet) and self._elements == other._elements

    def __hash__(self) -> int:
        return hash(self._elements)

    def __repr__(self) -> str:
        return f"SignedIntegerSet({{{', '.join(map(str, self._elements))}}})"


@dataclass(frozen=True)
class Classification:
    """Sum/difference comparison of one set.

    ``gap`` is |A+A| - |A-A| and ``restricted_gap`` is |A^+A| - |A-A|;
    ``kind`` follows the sign of ``gap`` and ``rsd`` the sign of
    ``restricted_gap``.
    """

    kind: str
    rsd: bool
    gap: int
    restricted_gap: int


# -- bit-parallel kernels ----------------------------------------------------
#
# These operate on characteristic bit vectors and are shared with the search
# and fringe modules.  Empty masks are the caller's responsibility.

def _sum_bits(mask: int) -> int:
    acc = 0
    m = mask
    while m:
        low = m & -m
        acc |= mask << (low.bit_length() - 1)
        m ^= low
    return acc


def _pos_diff_bits(mask: int) -> int:
    # bit d set iff d = a - b >= 0 for some a, b in the set
    acc = 0
    m = mask
    while m:
        low = m & -m
        acc |= mask >> (low.bit_length() - 1)
        m ^= low
    return acc


def _restricted_bits(mask: int) -> int:
    acc = 0
    m = mask
    while m:
        low = m & -m
        acc |= (mask ^ low) << (low.bit_length() - 1)
        m ^= low
    return acc


def _sum_diff_counts(mask: int) -> tuple[int, int]:
    """(|A+A|, |A-A|) for a nonempty mask."""
    return _sum_bits(mask).bit_count(), 2 * _pos_diff_bits(mask).bit_count() - 1


def sumset(a: IntegerSet) -> IntegerSet:
    """A+A, all pairwise sums with repeats allowed."""
    return IntegerSet.from_mask(_sum_bits(a.mask))


def difference_set(a: IntegerSet) -> SignedIntegerSet:
    """A-A, all pairwise differences; symmetric about 0."""
    pos = _mask_to_elements(_pos_diff_bits(a.mask))
    return SignedIntegerSet([-x for x in pos] + list(pos))


def restricted_sumset(a: IntegerSet) -> IntegerSet:
    """A^+A, sums of pairs of distinct elements."""
    return IntegerSet.from_mask(_restricted_bits(a.mask))


def sumset_naive(a: IntegerSet) -> IntegerSet:
    """Double-loop oracle for sumset()."""
    return IntegerSet({x + y for x in a for y in a})


def difference_set_naive(a: IntegerSet) -> SignedIntegerSet:
    """Double-loop oracle for difference_set()."""
    return SignedIntegerSet({x - y for x in a for y in a})


def restricted_sumset_naive(a: IntegerSet) -> IntegerSet:
    """Double-loop oracle for restricted_sumset()."""
    return IntegerSet({x + y for x in a for y in a if x != y})


def classify(a: IntegerSet) -> Classification:
    """Compare |A+A|, |A-A| and |A^+A| for a nonempty set."""
    if len(a) == 0:
        raise ValueError("empty set has no classification")
    mask = a.mask
    nsum, ndiff = _sum_diff_counts(mask)
    nres = _restricted_bits(mask).bit_count()
    gap = nsum - ndiff
    if gap > 0:
        kind = MSTD
    elif gap == 0:
        kind = BALANCED
    else:
        kind = DIFFERENCE_DOMINATED
    return Classification(kind=kind, rsd=nres > ndiff, gap=gap, restricted_gap=nres - ndiff)


def ratio(a: IntegerSet) -> float:
    """log|A+A| / log|A-A| (natural log; the ratio is base independent)."""
    if len(a) < 2:
        raise ValueError("ratio undefined: need |A| >= 2 so that |A-A| >= 2")
    nsum, ndiff = _sum_diff_counts(a.mask)
    return math.log(nsum) / math.log(ndiff)


def affine_normalize(a: IntegerSet) -> IntegerSet:
    """Canonical representative of A under translation, scaling and reflection.

    Translates the minimum to 0, divides by the gcd of the (shifted)
    elements, and returns the lexicographically smaller of the result and
    its reflection.  Idempotent.
    """
    if len(a) == 0:
        raise ValueError("cannot normalize an empty set")
    mn = a.min()
    shifted = tuple(x - mn for x in a)
    g = math.gcd(*shifted) or 1
    scaled = tuple(x // g for x in shifted)
    reflected = tuple(scaled[-1] - x for x in reversed(scaled))
    return IntegerSet(min(scaled, reflected))


def base_expand(a: IntegerSet, k: int, m: int) -> IntegerSet:
    """Digit construction {sum a_i * m^(i-1) : a_i in A} over k digits.

    For m >= 2*max(A)+1 no digit interactions occur, so |result| = |A|^k
    and |result +- result| = |A +- A|^k.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    if len(a) == 0:
        return IntegerSet()
    if m < 2 * a.max() + 1:
        raise ValueError(
            f"expansion base below carry-free threshold: need m >= {2 * a.max() + 1}, got {m}"
        )
    weights = [m**i for i in range(k)]
    return IntegerSet(
        sum(d * w for d, w in zip(digits, weights))
        for digits in product(a.elements, repeat=k)
    )


def parse_set_literal(text: str) -> IntegerSet:
    """Parse ``{a1,a2,...}``; unordered and duplicated input is normalized."""
    t = text.strip()
    if not (t.startswith("{") and t.endswith("}")):
        raise ValueError(f"set literal must be wrapped in braces: {text!r}")
    body = t[1:-1].strip()
    if not body:
        return IntegerSet()
    try:
        values = [int(part) for part in body.split(",")]
    except ValueError:
        raise ValueError(f"set literal contains a non-integer entry: {text!r}") from None
    return IntegerSet(values)


def format_set_literal(a: IntegerSet) -> str:
    return "{" + ",".join(map(str, a)) + "}"
