"""Four-digit Kaprekar routine in any base.

Exact integer dynamics of the digit-rearrangement subtraction step, its
difference-pair reduction, closed-form predictions for worst-case distances
and convergent fractions, and a verification harness comparing the two.
"""

from .digits import (
    DigitQuad,
    from_digits,
    is_repdigit,
    join_digits,
    kaprekar_step,
    split_digits,
    step_digits,
    step_value,
    to_digits,
)
from .dynamics import (
    BaseReport,
    Cycle,
    FixedNumeral,
    PairDistanceMap,
    Terminal,
    Trajectory,
    UndeterminedOrbitError,
    ZeroSink,
    base_report,
    distance_histogram,
    fixed_numeral_value,
    integer_distance,
    pair_distance_map,
    trajectory,
)
from .pairs import (
    DifferencePair,
    PairType,
    canonical_pairs,
    classify,
    count_representatives,
    fixed_pair,
    pair_count,
    pair_of,
    pair_of_digits,
    pair_step,
    predecessors,
    predecessors_condensed,
    step_pair,
)
from .predictions import (
    BaseClass,
    FiveMultiple,
    GridLanding,
    NoFixedPoint,
    TwoOrFour,
    classify_base,
    fixed_point_digits,
    grid_landing,
    landing_bound,
    predict_convergent_fraction,
    predict_max_distance,
)
from .tables import (
    CellBound,
    GridArrival,
    LandingWitness,
    cell_step_bound,
    cycle_cells,
    grid_arrival,
    landing_witnesses,
    max_total_steps,
)
from .verify import Check, PredictionReport, verify_base

__version__ = "0.1.0"
