"""Generators for the named set families and the block-grammar membership test.

The family grammar over SCDs is: prefix ``1,1,2``, then one or more blocks
``M^k = 1,4,...,4,3`` (k fours), then a tail from ``1,1`` / ``1,1,2`` /
``1,1,2,1``.  The extended tier additionally allows interior ``1,1,2``
separators between groups of blocks, which is what the named set A15
needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .scd import SCD
from .setcore import IntegerSet

__all__ = [
    "PREFIX",
    "TAILS",
    "TAIL_NAMES",
    "FMembership",
    "m_block",
    "gen_periodic",
    "gen_A",
    "gen_named",
    "gen_T",
    "gen_R",
    "gen_high_ratio",
    "is_member_F",
    "rebuild_member",
    "enumerate_F",
]

PREFIX = (1, 1, 2)
TAILS = {"S": (1, 1, 2, 1), "S'": (1, 1, 2), "S''": (1, 1)}
TAIL_NAMES = {(1, 1): "T11", (1, 1, 2): "T112", (1, 1, 2, 1): "T1121"}
_TAIL_BY_NAME = {v: k for k, v in TAIL_NAMES.items()}

_NAMED = {
    "S2": (0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17),
    "S4": (0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25),
    "A4": (0, 1, 2, 4, 5, 9, 12, 13, 14),
    "A12": (0, 1, 2, 4, 5, 9, 12, 13, 14, 16, 17),
    "A15": (0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 22, 24, 25, 29, 32, 33, 37, 40, 41, 42, 44, 45),
}


def m_block(k: int) -> tuple[int, ...]:
    """The block 1,4,...,4,3 with k fours (length k+2)."""
    if k < 1:
        raise ValueError(f"block exponent must be positive, got {k}")
    return (1,) + (4,) * k + (3,)


def _check_positive(name: str, value: int) -> None:
    if value < 1:
        raise ValueError(f"{name} must be a positive integer, got {value}")


def gen_periodic(k: int, ell: int, variant: str = "S") -> SCD:
    """The periodic member with ell copies of M^k and the variant's tail.

    Tails: S -> 1,1,2,1 (gap 2*ell), S' -> 1,1,2 (gap 2*ell-1),
    S'' -> 1,1 (gap ell).
    """
    _check_positive("k", k)
    _check_positive("ell", ell)
    if variant not in TAILS:
        raise ValueError(f"variant must be one of {sorted(TAILS)}, got {variant!r}")
    return SCD(0, PREFIX + m_block(k) * ell + TAILS[variant])


def gen_A(k: int, ell: int) -> SCD:
    """The modulo-k analogue: 1^(k-2),2, then ell copies of 1,k,(k+1)^(k-4),3,
    then 1^(k-2),2,1.  For k=4 this is exactly gen_periodic(1, ell, "S")."""
    if k < 4:
        raise ValueError(f"k must be at least 4, got {k}")
    _check_positive("ell", ell)
    wing = (1,) * (k - 2) + (2,)
    block = (1, k) + (k + 1,) * (k - 4) + (3,)
    return SCD(0, wing + block * ell + wing + (1,))


def gen_named(name: str) -> IntegerSet:
    """One of the named sets S2, S4, A4, A12, A15 (A12 equals S2)."""
    try:
        return IntegerSet(_NAMED[name.upper()])
    except KeyError:
        raise ValueError(f"unknown named set {name!r}; know {sorted(_NAMED)}") from None


def gen_T(j: int, primed: bool = True) -> IntegerSet:
    """T'_j (primed) or T_j; the unprimed variant extends the 1-residue block
    one period further."""
    _check_positive("j", j)
    top = j + 2 if not primed else j + 1
    out = {0, 2, 6 + 8 * j, 8 * (j + 1)}
    out.update(1 + 8 * i for i in range(top))
    out.update(4 + 8 * i for i in range(j + 1))
    out.update(5 + 8 * i for i in range(j + 1))
    return IntegerSet(out)


def gen_R(j: int) -> IntegerSet:
    """R_j, the high log-ratio construction on a period-12 grid."""
    _check_positive("j", j)
    out = {1, 4, 3 + 12 * j, 6 + 12 * j}
    for i in range(j + 1):
        out.update((12 * i, 2 + 12 * i, 7 + 12 * i, 8 + 12 * i))
    return IntegerSet(out)


def gen_high_ratio(ell: int, closed: bool = True) -> SCD:
    """The high log-ratio family: blocks M^1,M^2, then ell copies of M^3,
    then M^2,M^1 and tail 1,1,2(,1)."""
    _check_positive("ell", ell)
    body = PREFIX + m_block(1) + m_block(2) + m_block(3) * ell + m_block(2) + m_block(1)
    tail = TAILS["S"] if closed else TAILS["S'"]
    return SCD(0, body + tail)


@dataclass(frozen=True)
class FMembership:
    """Result of the grammar match.

    ``exponents`` concatenates the block exponents of all groups in order;
    ``group_sizes`` records how many blocks each separator-delimited group
    holds (strict members have a single group), so a member can be rebuilt
    exactly.  ``tail`` is one of T11/T112/T1121.
    """

    member: bool
    tier: str  # "strict" | "extended" | "none"
    exponents: tuple[int, ...] = ()
    group_sizes: tuple[int, ...] = ()
    tail: str | None = None


_NON_MEMBER = FMembership(member=False, tier="none")


def is_member_F(scd: SCD) -> FMembership:
    """Match an SCD against the family grammar; non-membership is a value."""
    d = scd.diffs
    if scd.base != 0 or len(d) < 3 or d[:3] != PREFIX:
        return _NON_MEMBER
    i = 3
    exponents: list[int] = []
    group_sizes: list[int] = []
    current = 0
    while True:
        if i + 1 < len(d) and d[i] == 1 and d[i + 1] == 4:
            j = i + 1
            while j < len(d) and d[j] == 4:
                j += 1
            if j >= len(d) or d[j] != 3:
                return _NON_MEMBER
            exponents.append(j - i - 1)
            current += 1
            i = j + 1
        elif (
            current
            and d[i : i + 3] == PREFIX
            and i + 4 < len(d)
            and d[i + 3] == 1
            and d[i + 4] == 4
        ):
            # interior 1,1,2 separator between block groups (extended tier)
            group_sizes.append(current)
            current = 0
            i += 3
        else:
            tailname = TAIL_NAMES.get(d[i:])
            if current == 0 or tailname is None:
                return _NON_MEMBER
            group_sizes.append(current)
            tier = "strict" if len(group_sizes) == 1 else "extended"
            return FMembership(
                member=True,
                tier=tier,
                exponents=tuple(exponents),
                group_sizes=tuple(group_sizes),
                tail=tailname,
            )


def rebuild_member(membership: FMembership) -> SCD:
    """Reconstruct the SCD a membership result was parsed from."""
    if not membership.member:
        raise ValueError("cannot rebuild a non-member")
    diffs = PREFIX
    pos = 0
    for gi, size in enumerate(membership.group_sizes):
        if gi:
            diffs += PREFIX
        for k in membership.exponents[pos : pos + size]:
            diffs += m_block(k)
        pos += size
    return SCD(0, diffs + _TAIL_BY_NAME[membership.tail])


def _compositions_min2(total: int) -> Iterator[tuple[int, ...]]:
    # ordered compositions of `total` into parts >= 2, lexicographic
    if total == 0:
        yield ()
        return
    for first in range(2, total + 1):
        for rest in _compositions_min2(total - first):
            yield (first,) + rest


def enumerate_F(max_diameter: int) -> Iterator[SCD]:
    """Yield every strict-tier member with diameter <= max_diameter, each
    exactly once, in nondecreasing diameter order.

    A strict member with exponents k_1..k_l and tail sum t has diameter
    4 + 4*sum(k_i + 1) + t; the smallest member has diameter 14.
    """
    for diam in range(14, max_diameter + 1):
        for tail, tailsum in (((1, 1), 2), ((1, 1, 2), 4), ((1, 1, 2, 1), 5)):
            rem = diam - 4 - tailsum
            if rem < 8 or rem % 4:
                continue
            for comp in _compositions_min2(rem // 4):
                blocks = ()
                for part in comp:
                    blocks += m_block(part - 1)
                yield SCD(0, PREFIX + blocks + tail)
