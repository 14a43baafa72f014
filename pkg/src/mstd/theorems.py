"""Closed-form predictors for the periodic family, verification against brute
force, interior-block growth measurement, the gap construction, the
conjecture sweep and the ratio census."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import setcore
from .family import TAILS, enumerate_F, gen_periodic
from .scd import SCD, to_set
from .setcore import MSTD, IntegerSet, SignedIntegerSet, classify

__all__ = [
    "PredictedCards",
    "VerificationReport",
    "BlockGrowth",
    "predicted_missing_diffs",
    "predicted_missing_sums",
    "predicted_cards",
    "verify_periodic",
    "construct_for_gap",
    "block_growth",
    "check_conjecture",
    "ratio_census",
]


def _progression(lo: int, hi: int) -> range:
    # [lo, hi]_4: elements congruent to lo mod 4 within [lo, hi]
    return range(lo, hi + 1, 4)


def predicted_missing_diffs(k: int, ell: int) -> IntegerSet:
    """Positive differences missing from S_{k,ell} - S_{k,ell}; k*ell values."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be positive")
    out = []
    for i in range(1, ell + 1):
        lo = 6 + 8 * (i - 1) + 4 * (i - 1) * (k - 1)
        hi = 6 + 8 * (i - 1) + 4 * i * (k - 1)
        out.extend(_progression(lo, hi))
    return IntegerSet(out)


def predicted_missing_sums(k: int, ell: int) -> IntegerSet:
    """Sums missing from S_{k,ell} + S_{k,ell}; 2*(k-1)*ell values.

    Only proved for k >= 2; at k = 1 the sum set is a full interval (see
    predicted_cards, which extrapolates the cardinality there).
    """
    if ell < 1:
        raise ValueError("ell must be positive")
    if k < 2:
        raise ValueError("formula proved only for k >= 2")
    out = []
    shift = 12 * ell + 4 * ell * (k - 2) + 16
    for i in range(1, ell + 1):
        lo = 12 + 12 * (i - 1) + 4 * (i - 1) * (k - 2)
        out.extend(_progression(lo, lo + 4 * (k - 2)))
        lo2 = shift + 4 * (i - 1) * (k - 2) + 12 * (i - 1)
        out.extend(_progression(lo2, lo2 + 4 * (k - 2)))
    return IntegerSet(out)


@dataclass(frozen=True)
class PredictedCards:
    """Predicted |S+S|, |S-S| and their gap for a periodic family member.

    Cardinalities are only available for the S variant; the sum formula is
    proved for k >= 2 and extrapolated (brute-force confirmed) at k = 1,
    which ``sum_extrapolated`` records.
    """

    sum_card: int | None
    diff_card: int | None
    gap: int
    sum_extrapolated: bool = False


def predicted_cards(k: int, ell: int, variant: str = "S") -> PredictedCards:
    """Gap 2*ell / 2*ell-1 / ell for S / S' / S''; cardinalities for S only."""
    if k < 1 or ell < 1:
        raise ValueError("k and ell must be positive")
    if variant == "S":
        return PredictedCards(
            sum_card=19 + ell * (6 * k + 10),
            diff_card=19 + ell * (6 * k + 8),
            gap=2 * ell,
            sum_extrapolated=k == 1,
        )
    if variant == "S'":
        return PredictedCards(None, None, 2 * ell - 1)
    if variant == "S''":
        return PredictedCards(None, None, ell)
    raise ValueError(f"variant must be one of {sorted(TAILS)}, got {variant!r}")


@dataclass(frozen=True)
class VerificationReport:
    """Predicted vs. actual cardinalities and missing elements for one set.

    Missing-element fields are populated for the S variant only; the
    missing-difference sets are presented symmetrically.  ``passed`` is
    true iff every prediction present equals its actual counterpart.
    """

    subject: SCD
    variant: str
    predicted_gap: int
    actual_gap: int
    predicted_sum_card: int | None
    predicted_diff_card: int | None
    actual_sum_card: int
    actual_diff_card: int
    missing_diff_predicted: SignedIntegerSet | None
    missing_diff_actual: SignedIntegerSet | None
    missing_sum_predicted: IntegerSet | None
    missing_sum_actual: IntegerSet | None
    sum_extrapolated: bool
    passed: bool


def _mirror(a: IntegerSet) -> SignedIntegerSet:
    return SignedIntegerSet([-x for x in a] + list(a.elements))


def verify_periodic(k: int, ell: int, variant: str = "S") -> VerificationReport:
    """Build the family member, measure it, and compare with the predictors."""
    subject = gen_periodic(k, ell, variant)
    s = to_set(subject)
    nsum = len(setcore.sumset(s))
    ndiff = len(setcore.difference_set(s))
    pred = predicted_cards(k, ell, variant)

    md_pred = md_act = ms_pred = ms_act = None
    if variant == "S":
        md_pred = _mirror(predicted_missing_diffs(k, ell))
        diff_mask = setcore._pos_diff_bits(s.mask)
        md_act = _mirror(
            IntegerSet(d for d in range(1, s.max() + 1) if not (diff_mask >> d) & 1)
        )
        if k >= 2:
            ms_pred = predicted_missing_sums(k, ell)
        else:
            ms_pred = IntegerSet()  # extrapolated: the k=1 sum set is an interval
        sum_mask = setcore._sum_bits(s.mask)
        ms_act = IntegerSet(
            x for x in range(0, 2 * s.max() + 1) if not (sum_mask >> x) & 1
        )

    passed = pred.gap == nsum - ndiff
    if pred.sum_card is not None:
        passed = passed and pred.sum_card == nsum
    if pred.diff_card is not None:
        passed = passed and pred.diff_card == ndiff
    if md_pred is not None:
        passed = passed and md_pred == md_act
    if ms_pred is not None:
        passed = passed and ms_pred == ms_act

    return VerificationReport(
        subject=subject,
        variant=variant,
        predicted_gap=pred.gap,
        actual_gap=nsum - ndiff,
        predicted_sum_card=pred.sum_card,
        predicted_diff_card=pred.diff_card,
        actual_sum_card=nsum,
        actual_diff_card=ndiff,
        missing_diff_predicted=md_pred,
        missing_diff_actual=md_act,
        missing_sum_predicted=ms_pred,
        missing_sum_actual=ms_act,
        sum_extrapolated=pred.sum_extrapolated,
        passed=passed,
    )


def construct_for_gap(x: int) -> IntegerSet:
    """A set inside [0, 12+4x] with |A+A| - |A-A| exactly x.

    Even x: S_{1,x/2} with maximum 9+4x; odd x: S'_{1,(x+1)/2} with
    maximum 12+4x.
    """
    if x < 1:
        raise ValueError("gap must be a positive integer")
    if x % 2 == 0:
        return to_set(gen_periodic(1, x // 2, "S"))
    return to_set(gen_periodic(1, (x + 1) // 2, "S'"))


@dataclass(frozen=True)
class BlockGrowth:
    """Gap growth when one block of an SCD is repeated in place.

    ``gaps[r-1]`` is the gap with the block repeated r times, ``deltas`` the
    consecutive increments.  The measurement stabilizes when the final
    ``window`` increments agree and the corresponding sets are all MSTD;
    then ``increment`` is the common value and ``ratio`` = increment /
    block length as an exact rational.  ``start_rep`` is the first
    repetition count from which both conditions held.
    """

    block: tuple[int, ...]
    block_len: int
    gaps: tuple[int, ...]
    deltas: tuple[int, ...]
    stabilized: bool
    increment: int | None = None
    ratio: Fraction | None = None
    start_rep: int | None = None
    diagnostic: str | None = None


def block_growth(
    base: SCD, block_start: int, block_len: int, max_reps: int = 12, window: int = 4
) -> BlockGrowth:
    """Repeat ``base.diffs[block_start:block_start+block_len]`` 1..max_reps
    times in place and track how the gap grows."""
    d = base.diffs
    if block_len < 1 or block_start < 0 or block_start + block_len > len(d):
        raise ValueError("block must be a nonempty range inside the SCD")
    if window < 2 or max_reps < window:
        raise ValueError("need max_reps >= window >= 2")
    block = d[block_start : block_start + block_len]
    head, tail = d[:block_start], d[block_start + block_len :]

    gaps = []
    mstd = []
    for reps in range(1, max_reps + 1):
        c = classify(to_set(SCD(base.base, head + block * reps + tail)))
        gaps.append(c.gap)
        mstd.append(c.kind == MSTD)
    deltas = tuple(gaps[i + 1] - gaps[i] for i in range(len(gaps) - 1))

    if not all(mstd[-(window + 1) :]):
        return BlockGrowth(
            block, block_len, tuple(gaps), deltas, False,
            diagnostic="non-MSTD repetitions within the final window",
        )
    final = deltas[-window:]
    if len(deltas) < window or any(x != final[-1] for x in final):
        return BlockGrowth(
            block, block_len, tuple(gaps), deltas, False,
            diagnostic="gap increments not constant over the final window",
        )
    increment = final[-1]
    # first repetition count from which the increment is constant and the
    # repeated sets stay MSTD
    start = len(deltas)
    while start > 0 and deltas[start - 1] == increment and mstd[start - 1]:
        start -= 1
    return BlockGrowth(
        block,
        block_len,
        tuple(gaps),
        deltas,
        True,
        increment=increment,
        ratio=Fraction(increment, block_len),
        start_rep=start + 1,
    )


def check_conjecture(max_diameter: int) -> list[SCD]:
    """Classify every strict-tier family member up to max_diameter and
    return those that are not MSTD (counterexamples to the all-MSTD
    conjecture; the sweep does find some)."""
    return [
        scd
        for scd in enumerate_F(max_diameter)
        if classify(to_set(scd)).kind != MSTD
    ]


def ratio_census(candidates: Iterable[SCD], threshold: float) -> list[tuple[SCD, float]]:
    """(SCD, log-ratio) pairs with ratio above threshold, best first."""
    if not threshold > 1:
        raise ValueError("threshold must exceed 1")
    hits = []
    for scd in candidates:
        r = setcore.ratio(to_set(scd))
        if r > threshold:
            hits.append((scd, r))
    hits.sort(key=lambda pair: (-pair[1], str(pair[0])))
    return hits
