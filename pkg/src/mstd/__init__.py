"""Library and CLI for MSTD (more-sums-than-differences) and
restricted-sum-dominant integer sets: exact set arithmetic, family
generators, closed-form verification, exhaustive search and fringe
density estimates."""

from .setcore import (
    BALANCED,
    DIFFERENCE_DOMINATED,
    MSTD,
    Classification,
    IntegerSet,
    SignedIntegerSet,
    affine_normalize,
    base_expand,
    classify,
    difference_set,
    format_set_literal,
    parse_set_literal,
    ratio,
    restricted_sumset,
    sumset,
)
from .scd import SCD, SCDParseError, from_set, run_sums, to_set
from .family import (
    FMembership,
    enumerate_F,
    gen_A,
    gen_T,
    gen_R,
    gen_high_ratio,
    gen_named,
    gen_periodic,
    is_member_F,
    m_block,
)
from .theorems import (
    BlockGrowth,
    PredictedCards,
    VerificationReport,
    block_growth,
    check_conjecture,
    construct_for_gap,
    predicted_cards,
    predicted_missing_diffs,
    predicted_missing_sums,
    ratio_census,
    verify_periodic,
)
from .search import (
    SearchResult,
    SearchTask,
    SmallestCardinality,
    collect_sets,
    count_sets,
    enumerate_sets,
    rsd_minimum_diameter,
    smallest_cardinality,
)
from .fringe import (
    DensityEstimate,
    FringePair,
    FringeReport,
    fringe_pair,
    monte_carlo,
    rsd_lower_bound,
    verify_fringe,
)

__version__ = "0.1.0"
