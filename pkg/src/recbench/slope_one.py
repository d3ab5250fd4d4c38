"""Rating-delta predictor (the classic weightless slope-one scheme).

For movies j and i, the deviation is the average of ``r_j - r_i`` over users
who rated both — always excluding the user being predicted for, so their own
row never leaks into the statistics.  A prediction for movie j averages
``deviation(j, i) + r_i`` over the target's rated movies with at least one
co-rater, then clamps into the rating range.  A movie is recommended when
its clamped prediction lands in the preference band.

Pairwise sums and co-rater counts come from two cached matrix products, so
per-user work is a couple of row lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .raps import PreferenceInterval
from .ratings import RatingMatrix

__all__ = ["Prediction", "deviation", "predict", "slope_one_recommend"]


@dataclass(frozen=True, slots=True)
class Prediction:
    """A predicted rating before and after clamping, with the movies used."""

    movie: int
    raw: float
    clamped: float
    support: tuple[int, ...]


def _pair_stats(matrix: RatingMatrix) -> tuple[np.ndarray, np.ndarray]:
    """(counts, diffs): per movie pair, the number of co-raters and the sum
    of rating differences over them.  Exact — all sums are small integers —
    and cached per matrix."""
    try:
        return matrix._cache["pair-stats"]
    except KeyError:
        pass
    b = matrix._rated.astype(np.float64)
    r = matrix._values.astype(np.float64)  # zero where unrated
    counts = b.T @ b
    sums = r.T @ b  # sums[j, i] = sum of j-ratings over co-raters of (j, i)
    diffs = sums - sums.T
    matrix._cache["pair-stats"] = (counts, diffs)
    return counts, diffs


def deviation(matrix: RatingMatrix, movie_j: int, movie_i: int, excluded_user: int | None = None) -> float | None:
    """Mean of ``r_j - r_i`` over co-raters, or None when there are none."""
    j = matrix.movie_index(movie_j)
    i = matrix.movie_index(movie_i)
    counts, diffs = _pair_stats(matrix)
    count = counts[j, i]
    diff = diffs[j, i]
    if excluded_user is not None:
        u = matrix.user_index(excluded_user)
        if matrix._rated[u, j] and matrix._rated[u, i]:
            count -= 1
            diff -= float(matrix._values[u, j]) - float(matrix._values[u, i])
    if count == 0:
        return None
    return diff / count


def predict(matrix: RatingMatrix, target: int, movie: int) -> Prediction | None:
    """Predicted rating of the movie for the target, or None when no rated
    neighbour movie shares a co-rater with it.

    The movie must not already be rated by the target; since the target
    then never co-rates (movie, i) pairs, the cached pair statistics need
    no per-call exclusion.
    """
    t = matrix.user_index(target)
    j = matrix.movie_index(movie)
    if matrix._rated[t, j]:
        raise ValueError(f"user {target} already rated movie {movie}")
    counts, diffs = _pair_stats(matrix)

    rated_idx = np.flatnonzero(matrix._rated[t])
    if rated_idx.size == 0:
        return None

    count = counts[j, rated_idx]
    diff = diffs[j, rated_idx]
    usable = count > 0
    if not usable.any():
        return None
    terms = diff[usable] / count[usable] + matrix._values[t, rated_idx[usable]]
    # fsum: the mean must not depend on summation order, or band membership
    # of boundary predictions would be arbitrary
    raw = math.fsum(terms) / terms.size
    clamped = min(max(raw, matrix.min_border), matrix.max_border)
    support = tuple(matrix.movies[i] for i in rated_idx[usable])
    return Prediction(movie, raw, float(clamped), support)


def slope_one_recommend(
    matrix: RatingMatrix,
    target: int,
    pref: PreferenceInterval,
    candidates: Iterable[int] | None = None,
) -> dict[int, Prediction]:
    """Predictions for the target's unrated movies whose clamped value lands
    in the preference band, keyed by movie in ascending order.

    ``candidates`` restricts which movies are considered (already-rated ones
    are skipped either way); None means every unrated movie in the matrix.
    """
    rated = matrix.rated_movies(target)
    if candidates is None:
        pool = [m for m in matrix.movies if m not in rated]
    else:
        pool = sorted(set(candidates) - rated)
    out: dict[int, Prediction] = {}
    for movie in pool:
        p = predict(matrix, target, movie)
        if p is not None and pref.contains_value(p.clamped):
            out[movie] = p
    return out
