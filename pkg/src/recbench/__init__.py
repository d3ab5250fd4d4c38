"""Movie recommending via interval patterns, with a rating-delta baseline
and a hold-out evaluation harness."""

from .errors import (
    DimensionMismatchError,
    DuplicateRatingError,
    EmptyExtentError,
    EvaluationError,
    MovielensParseError,
    RecbenchError,
    SplitError,
    UnknownIdError,
)
from .evaluation import (
    ALGORITHMS,
    CONVENTIONS,
    EvalSplit,
    MetricsReport,
    SplitSpec,
    adjusted_metrics,
    evaluate,
    f1_score,
    make_split,
    sweep,
    sweep_bounds,
    user_outcomes,
    write_report_csv,
)
from .patterns import (
    Interval,
    IntervalVector,
    extent_of,
    intent_of,
    meet_interval,
    meet_vector,
    subsumes,
    user_description,
    vector_subsumes,
)
from .plotting import render_sweep_figure
from .raps import (
    PreferenceInterval,
    RapsDerivation,
    RapsResult,
    liked_movies,
    raps_recommend,
    top_n,
)
from .ratings import RatingEntry, RatingMatrix, dump_movielens, load_movielens
from .slope_one import Prediction, deviation, predict, slope_one_recommend

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CONVENTIONS",
    "DimensionMismatchError",
    "DuplicateRatingError",
    "EmptyExtentError",
    "EvalSplit",
    "EvaluationError",
    "Interval",
    "IntervalVector",
    "MetricsReport",
    "MovielensParseError",
    "Prediction",
    "PreferenceInterval",
    "RapsDerivation",
    "RapsResult",
    "RatingEntry",
    "RatingMatrix",
    "RecbenchError",
    "SplitError",
    "SplitSpec",
    "UnknownIdError",
    "adjusted_metrics",
    "deviation",
    "dump_movielens",
    "evaluate",
    "extent_of",
    "f1_score",
    "intent_of",
    "liked_movies",
    "load_movielens",
    "make_split",
    "meet_interval",
    "meet_vector",
    "predict",
    "raps_recommend",
    "render_sweep_figure",
    "slope_one_recommend",
    "subsumes",
    "sweep",
    "sweep_bounds",
    "top_n",
    "user_description",
    "user_outcomes",
    "vector_subsumes",
    "write_report_csv",
]
