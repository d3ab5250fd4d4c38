"""Hold-out evaluation of the recommenders.

A split samples a fraction of users as test users (seeded, uniform); each
test user's ratings are ordered by time and cut into a visible prefix and a
hidden tail.  Recommenders see the training matrix only — everyone else's
ratings plus the visible prefixes.  A hidden movie is relevant when its true
rating falls in the preference band, retrieved when the recommender suggests
it.  Precision/recall handle the empty corner cases by convention:

    relevant  retrieved    "type1"     "type2"
    none      none         P=0, R=1    P=1, R=1
    none      some         P=0, R=1    P=0, R=1
    some      none         P=0, R=0    P=1, R=0

Reported numbers are macro averages over test users, with F1 taken of the
two means.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import EvaluationError, SplitError
from .raps import PreferenceInterval, raps_recommend
from .ratings import RatingEntry, RatingMatrix
from .slope_one import predict, slope_one_recommend

__all__ = [
    "ALGORITHMS",
    "CONVENTIONS",
    "SplitSpec",
    "EvalSplit",
    "MetricsReport",
    "make_split",
    "adjusted_metrics",
    "f1_score",
    "user_outcomes",
    "evaluate",
    "sweep",
    "sweep_bounds",
    "write_report_csv",
]

ALGORITHMS = ("raps", "slope-one")
CONVENTIONS = ("type1", "type2")


def _ceil_frac(x: float) -> int:
    # guard against float residue: 0.8 * 5 == 4.000000000000001 must give 4
    return math.ceil(x - 1e-9)


@dataclass(frozen=True, slots=True)
class SplitSpec:
    """How to carve a matrix into training data and hidden test tails."""

    test_fraction: float = 0.2
    visible_fraction: float = 0.8
    seed: int = 42
    order_by_timestamp: bool = True

    def __post_init__(self):
        if not 0 < self.test_fraction <= 1:
            raise SplitError(f"test_fraction {self.test_fraction} outside (0, 1]")
        if not 0 < self.visible_fraction < 1:
            raise SplitError(f"visible_fraction {self.visible_fraction} outside (0, 1)")


@dataclass(frozen=True)
class EvalSplit:
    spec: SplitSpec
    test_users: tuple[int, ...]
    training: RatingMatrix
    visible: dict[int, tuple[RatingEntry, ...]]
    hidden: dict[int, tuple[RatingEntry, ...]]

    def hidden_movies(self, user: int) -> frozenset[int]:
        return frozenset(e.movie for e in self.hidden[user])

    def relevant_movies(self, user: int, pref: PreferenceInterval) -> frozenset[int]:
        lo, hi = pref.integer_band()
        return frozenset(e.movie for e in self.hidden[user] if lo <= e.rating <= hi)


def make_split(matrix: RatingMatrix, spec: SplitSpec | None = None) -> EvalSplit:
    """Deterministically split the matrix according to the spec.

    Test users are a uniform sample of ceil(test_fraction * |users|); each
    one keeps the earliest ceil(visible_fraction * n) of their ratings
    (ties on timestamp broken by movie id) and hides the rest.  With
    ``order_by_timestamp`` off, the per-user order is a seeded shuffle
    instead.  A sampled test user with fewer than two ratings cannot be
    cut into two parts and raises SplitError.
    """
    spec = spec or SplitSpec()
    if not matrix.users:
        raise SplitError("cannot split a matrix with no users")

    rng = random.Random(spec.seed)
    n_test = _ceil_frac(spec.test_fraction * len(matrix.users))
    test_users = tuple(sorted(rng.sample(matrix.users, n_test)))
    test_set = frozenset(test_users)

    by_user: dict[int, list[RatingEntry]] = {u: [] for u in test_users}
    training: list[RatingEntry] = []
    for e in matrix.entries:
        if e.user in test_set:
            by_user[e.user].append(e)
        else:
            training.append(e)

    visible: dict[int, tuple[RatingEntry, ...]] = {}
    hidden: dict[int, tuple[RatingEntry, ...]] = {}
    for u in test_users:
        entries = by_user[u]
        if len(entries) < 2:
            raise SplitError(
                f"test user {u} has {len(entries)} rating(s); need at least 2 to split"
            )
        if spec.order_by_timestamp:
            entries = sorted(entries, key=lambda e: (e.timestamp, e.movie))
        else:
            rng.shuffle(entries)
        cut = _ceil_frac(spec.visible_fraction * len(entries))
        visible[u] = tuple(entries[:cut])
        hidden[u] = tuple(entries[cut:])
        training.extend(visible[u])

    training_matrix = RatingMatrix(
        training,
        min_border=matrix.min_border,
        max_border=matrix.max_border,
        users=matrix.users,
        movies=matrix.movies,
    )
    return EvalSplit(spec, test_users, training_matrix, visible, hidden)


def adjusted_metrics(
    relevant: frozenset,
    retrieved: frozenset,
    convention: str,
    test: frozenset | None = None,
) -> tuple[float, float]:
    """(precision, recall) for one user, empty corners per the convention.

    ``test`` optionally restricts both sets first, so raw recommendation
    output can be scored directly against a user's hidden movies.
    """
    if convention not in CONVENTIONS:
        raise EvaluationError(f"unknown convention {convention!r}")
    if test is not None:
        relevant = frozenset(relevant) & test
        retrieved = frozenset(retrieved) & test
    if not relevant:
        if not retrieved and convention == "type2":
            return 1.0, 1.0
        return 0.0, 1.0
    if not retrieved:
        return (1.0, 0.0) if convention == "type2" else (0.0, 0.0)
    hits = len(relevant & retrieved)
    return hits / len(retrieved), hits / len(relevant)


def f1_score(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def user_outcomes(
    split: EvalSplit, algorithm: str, pref: PreferenceInterval
) -> dict[int, tuple[frozenset[int], frozenset[int]]]:
    """(relevant, retrieved) hidden movies per test user.

    Recommendations are computed from the training matrix alone; hidden
    ratings are consulted only to decide relevance.
    """
    if algorithm not in ALGORITHMS:
        raise EvaluationError(f"unknown algorithm {algorithm!r}")
    out = {}
    for u in split.test_users:
        hidden = split.hidden_movies(u)
        if algorithm == "raps":
            result = raps_recommend(split.training, u, pref, with_evidence=False)
            retrieved = frozenset(result.recommended & hidden)
        else:
            retrieved = frozenset(slope_one_recommend(split.training, u, pref, candidates=hidden))
        out[u] = (split.relevant_movies(u, pref), retrieved)
    return out


@dataclass(frozen=True)
class MetricsReport:
    """One evaluated configuration: macro precision/recall and their F1.

    ``seconds`` is the wall-clock time of the recommendation phase (splits
    and metric aggregation excluded).
    """

    algorithm: str
    convention: str
    lower_bound: float
    mean_precision: float
    mean_recall: float
    f1: float
    seconds: float
    per_user: dict[int, tuple[float, float]] = field(repr=False)


def _reports(
    algorithm: str,
    lower_bound: float,
    outcomes: dict[int, tuple[frozenset[int], frozenset[int]]],
    seconds: float,
    conventions: Sequence[str],
) -> tuple[MetricsReport, ...]:
    reports = []
    for convention in conventions:
        per_user = {
            u: adjusted_metrics(relevant, retrieved, convention)
            for u, (relevant, retrieved) in outcomes.items()
        }
        mean_p = sum(p for p, _ in per_user.values()) / len(per_user)
        mean_r = sum(r for _, r in per_user.values()) / len(per_user)
        reports.append(
            MetricsReport(
                algorithm=algorithm,
                convention=convention,
                lower_bound=lower_bound,
                mean_precision=mean_p,
                mean_recall=mean_r,
                f1=f1_score(mean_p, mean_r),
                seconds=seconds,
                per_user=per_user,
            )
        )
    return tuple(reports)


def evaluate(
    split: EvalSplit,
    algorithm: str,
    pref: PreferenceInterval,
    *,
    conventions: Sequence[str] = CONVENTIONS,
) -> tuple[MetricsReport, ...]:
    """Evaluate one algorithm on one split, reporting per convention.

    The recommendation work is shared across conventions, so the reported
    seconds is the same in each returned row.
    """
    started = time.perf_counter()
    outcomes = user_outcomes(split, algorithm, pref)
    seconds = time.perf_counter() - started
    return _reports(algorithm, float(pref.left), outcomes, seconds, conventions)


def sweep_bounds(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive arithmetic progression, rounded to kill accumulated error."""
    if step <= 0:
        raise EvaluationError(f"step must be positive, got {step}")
    if start > stop:
        raise EvaluationError(f"empty sweep: start {start} > stop {stop}")
    count = int((stop - start) / step + 1e-9) + 1
    return tuple(round(start + k * step, 10) for k in range(count))


def sweep(
    matrix: RatingMatrix,
    bounds: Iterable[float],
    spec: SplitSpec | None = None,
    *,
    right: float | None = None,
    algorithms: Sequence[str] = ALGORITHMS,
    conventions: Sequence[str] = CONVENTIONS,
) -> list[MetricsReport]:
    """Evaluate every algorithm over preference bands [bound, right].

    One split is drawn and shared by all configurations, so rows differ
    only in the preference band and algorithm.  Work shared between bounds
    (RAPS depends only on the integer band; Slope One predictions do not
    depend on the band at all) is computed once, with its wall-clock cost
    split evenly over the rows it serves.
    """
    split = make_split(matrix, spec)
    if right is None:
        right = matrix.max_border
    bounds = list(bounds)
    for bound in bounds:
        if not matrix.min_border <= bound <= matrix.max_border:
            raise EvaluationError(
                f"lower bound {bound} outside rating range "
                f"[{matrix.min_border}, {matrix.max_border}]"
            )
    for algorithm in algorithms:
        if algorithm not in ALGORITHMS:
            raise EvaluationError(f"unknown algorithm {algorithm!r}")

    # (algorithm, bound) -> (user outcomes, attributed wall-clock seconds)
    per_bound: dict = {}
    for algorithm in algorithms:
        if algorithm == "raps":
            groups: dict[tuple[int, int], list[float]] = {}
            for bound in bounds:
                band = PreferenceInterval(bound, right).integer_band()
                groups.setdefault(band, []).append(bound)
            for group in groups.values():
                started = time.perf_counter()
                outcomes = user_outcomes(split, algorithm, PreferenceInterval(group[0], right))
                share = (time.perf_counter() - started) / len(group)
                for bound in group:
                    per_bound[(algorithm, bound)] = (outcomes, share)
        else:
            started = time.perf_counter()
            predicted = {
                u: {
                    m: p.clamped
                    for m in sorted(split.hidden_movies(u))
                    if (p := predict(split.training, u, m)) is not None
                }
                for u in split.test_users
            }
            shared = (time.perf_counter() - started) / len(bounds)
            for bound in bounds:
                started = time.perf_counter()
                pref = PreferenceInterval(bound, right)
                outcomes = {
                    u: (
                        split.relevant_movies(u, pref),
                        frozenset(m for m, v in preds.items() if pref.contains_value(v)),
                    )
                    for u, preds in predicted.items()
                }
                seconds = shared + time.perf_counter() - started
                per_bound[(algorithm, bound)] = (outcomes, seconds)

    reports: list[MetricsReport] = []
    for bound in bounds:
        for algorithm in algorithms:
            outcomes, seconds = per_bound[(algorithm, bound)]
            reports.extend(_reports(algorithm, float(bound), outcomes, seconds, conventions))
    return reports


def write_report_csv(reports: Iterable[MetricsReport]) -> str:
    """Render reports as deterministic CSV (LF lines, fixed 6-decimal floats).

    Only the seconds column varies between runs of the same configuration.
    """
    lines = ["lower_bound,algorithm,convention,mean_precision,mean_recall,f1,seconds"]
    for r in reports:
        lines.append(
            f"{r.lower_bound:.6f},{r.algorithm},{r.convention},"
            f"{r.mean_precision:.6f},{r.mean_recall:.6f},{r.f1:.6f},{r.seconds:.6f}"
        )
    return "\n".join(lines) + "\n"
