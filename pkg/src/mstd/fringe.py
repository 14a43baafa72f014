"""The low/high fringe pair, its restricted-sum identities, the analytic
lower bound on the RSD proportion, and Monte-Carlo density estimation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from . import setcore
from .setcore import IntegerSet

__all__ = [
    "LOW_FRINGE",
    "HIGH_FRINGE_OFFSETS",
    "FringePair",
    "FringeCheck",
    "FringeReport",
    "fringe_pair",
    "verify_fringe",
    "rsd_lower_bound",
    "format_sig_truncated",
    "DensityEstimate",
    "monte_carlo",
]

# Low fringe: (0|1,1,2,1,4,3,1,4,3,1,4,3,1,4,3,1,1,1); 19 elements, max 39.
LOW_FRINGE = IntegerSet(
    (0, 1, 2, 4, 5, 9, 12, 13, 17, 20, 21, 25, 28, 29, 33, 36, 37, 38, 39)
)
# High fringe is (n-41) + these offsets: (0|1,1,1,1,4,3,1,4,3,1,4,3,1,4,3,1,1,2,1);
# 20 elements spanning [n-41, n-1].
HIGH_FRINGE_OFFSETS = (
    0, 1, 2, 3, 4, 8, 11, 12, 16, 19, 20, 24, 27, 28, 32, 35, 36, 37, 39, 40
)

MIN_N = 81  # below this the fringes would overlap


@dataclass(frozen=True)
class FringePair:
    """Fixed boundary sets of [0, n-1] with the free middle in between."""

    n: int
    low: IntegerSet
    high: IntegerSet
    middle_span: tuple[int, int]  # inclusive interval left free between the fringes


def fringe_pair(n: int) -> FringePair:
    """The fringe pair inside [0, n-1]; requires n >= 81 so L and U clear
    each other."""
    if n < MIN_N:
        raise ValueError(f"fringes overlap below n = {MIN_N}, got {n}")
    high = IntegerSet(n - 41 + u for u in HIGH_FRINGE_OFFSETS)
    return FringePair(n=n, low=LOW_FRINGE, high=high, middle_span=(40, n - 42))


@dataclass(frozen=True)
class FringeCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class FringeReport:
    """Outcome of the four printed fringe identities at a given n.

    The interval [n-41, n+38] matches the cross sums L+U, not the
    restricted self-sums of U; ``cross_attribution`` records which of the
    two actually equals it.
    """

    n: int
    checks: tuple[FringeCheck, ...]
    cross_attribution: str
    passed: bool


def _interval(lo: int, hi: int) -> set[int]:
    return set(range(lo, hi + 1))


def verify_fringe(n: int) -> FringeReport:
    """Check the restricted-sum and missing-difference identities of the pair."""
    pair = fringe_pair(n)
    low, high = pair.low, pair.high
    checks = []

    ll = set(setcore.restricted_sumset(low))
    checks.append(
        FringeCheck(
            "low restricted sums cover [0,78] except {0,8,78}",
            ll == _interval(0, 78) - {0, 8, 78},
        )
    )

    cross = {a + b for a in low for b in high}
    span = _interval(n - 41, n + 38)
    uu = set(setcore.restricted_sumset(high))
    if cross == span:
        attribution = "low+high"
    elif uu == span:
        attribution = "high restricted sums"
    else:
        attribution = "neither"
    checks.append(
        FringeCheck(
            "cross sums fill [n-41, n+38]",
            cross == span,
            detail=f"interval matches: {attribution}",
        )
    )

    target = _interval(2 * n - 82, 2 * n - 2) - {2 * n - 2, 2 * n - 4, 2 * n - 12, 2 * n - 82}
    checks.append(
        FringeCheck(
            "high restricted sums cover [2n-82, 2n-2] except {2n-82, 2n-12, 2n-4, 2n-2}",
            uu == target,
        )
    )

    diffs = {b - a for a in low for b in high}
    missing = (n - 12, n - 20, n - 28, n - 36)
    checks.append(
        FringeCheck(
            "high-low differences miss n-12, n-20, n-28, n-36 (and mirrors)",
            all(v not in diffs for v in missing),
        )
    )

    return FringeReport(
        n=n,
        checks=tuple(checks),
        cross_attribution=attribution,
        passed=all(c.passed for c in checks),
    )


def rsd_lower_bound() -> Fraction:
    """The proportion bound (1 - 8*(2^-19 + 2^-20)) * 2^-81, exactly."""
    return (1 - 8 * (Fraction(1, 2**19) + Fraction(1, 2**20))) * Fraction(1, 2**81)


def format_sig_truncated(value: Fraction, sig: int = 4) -> str:
    """Scientific notation truncated (not rounded) to ``sig`` significant
    digits, matching how the bound is usually quoted."""
    if value <= 0:
        raise ValueError("positive values only")
    num, den = value.numerator, value.denominator
    # scale so the integer quotient carries a few guard digits
    shift = max(0, len(str(den)) - len(str(num)) + sig + 2)
    digits = num * 10**shift // den
    exponent = len(str(digits)) - 1 - shift
    text = str(digits)[:sig]
    return f"{text[0]}.{text[1:]}e{exponent:+03d}"


@dataclass(frozen=True)
class DensityEstimate:
    """Monte-Carlo estimate of a predicate's density among subsets of
    [0, n-1]; reproducible from (seed, workers)."""

    predicate: str
    n: int
    trials: int
    hits: int
    proportion: float
    seed: int
    conditioned_on_fringe: bool
    workers: int = 1


def _mix_seed(seed: int, shard: int) -> int:
    # splitmix64 step keyed by the shard index
    z = (seed + (shard + 1) * 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return z ^ (z >> 31)


def _mc_shard(args):
    predicate, n, trials, shard_seed, conditioned = args
    rng = random.Random(shard_seed)
    rsd = predicate == "RSD"
    if conditioned:
        base = LOW_FRINGE.mask
        for u in HIGH_FRINGE_OFFSETS:
            base |= 1 << (n - 41 + u)
        middle_bits = n - 81
    hits = 0
    for _ in range(trials):
        if conditioned:
            m = base
            if middle_bits:
                m |= rng.getrandbits(middle_bits) << 40
        else:
            m = rng.getrandbits(n)
        if not m:
            continue
        ndiff = 2 * setcore._pos_diff_bits(m).bit_count() - 1
        if rsd:
            if setcore._restricted_bits(m).bit_count() > ndiff:
                hits += 1
        else:
            if setcore._sum_bits(m).bit_count() > ndiff:
                hits += 1
    return hits


def monte_carlo(
    predicate: str,
    n: int,
    trials: int,
    seed: int,
    conditioned_on_fringe: bool = False,
    workers: int = 1,
) -> DensityEstimate:
    """Sample uniform subsets of [0, n-1] (uniform middles with the fringes
    forced when conditioned) and count predicate hits.

    Trials are split into ``workers`` shards with seeds derived from
    (seed, shard); the estimate is deterministic for a fixed (seed,
    workers) pair.
    """
    predicate = predicate.upper()
    if predicate not in ("MSTD", "RSD"):
        raise ValueError("predicate must be MSTD or RSD")
    if trials < 1:
        raise ValueError("trials must be positive")
    if workers < 1:
        raise ValueError("workers must be positive")
    if conditioned_on_fringe and n < MIN_N:
        raise ValueError(f"conditioned sampling needs n >= {MIN_N}")
    if n < 1:
        raise ValueError("n must be positive")

    per = trials // workers
    shards = [
        (predicate, n, per + (1 if i < trials % workers else 0), _mix_seed(seed, i),
         conditioned_on_fringe)
        for i in range(workers)
    ]
    shards = [s for s in shards if s[2] > 0]
    if len(shards) > 1:
        with Pool(len(shards)) as pool:
            hits = sum(pool.map(_mc_shard, shards))
    else:
        hits = sum(_mc_shard(s) for s in shards)
    return DensityEstimate(
        predicate=predicate,
        n=n,
        trials=trials,
        hits=hits,
        proportion=hits / trials,
        seed=seed,
        conditioned_on_fringe=conditioned_on_fringe,
        workers=workers,
    )
