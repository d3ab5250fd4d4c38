"""Pattern-based recommender driven by per-movie rating bands.

The idea: fix a preference band of ratings the target user counts as
"liked".  Every liked movie induces the set of its other fans — users who
also rated it inside the band, the target excluded.  The common description
of that fan set (per-movie [min, max] of their ratings) votes for every
movie it pins entirely inside the band.  A movie's score is its number of
votes, and anything with a positive score is a candidate recommendation.

Scores are computed with boolean-counting matrix products over cached band
masks, so repeated calls against the same matrix and band stay cheap; the
optional trace path rebuilds the same derivation with explicit extents and
interval vectors for inspection and testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .patterns import Interval, IntervalVector, _integer_band, extent_of, intent_of
from .ratings import RatingMatrix

__all__ = [
    "PreferenceInterval",
    "RapsDerivation",
    "RapsResult",
    "liked_movies",
    "raps_recommend",
    "top_n",
]


@dataclass(frozen=True, slots=True)
class PreferenceInterval:
    """Band of ratings the target user is assumed to enjoy."""

    left: int | float | Fraction
    right: int | float | Fraction

    def __post_init__(self):
        if self.left > self.right:
            raise ValueError(f"invalid preference [{self.left}, {self.right}]")

    def contains_value(self, x) -> bool:
        """Exact real-valued membership (used for predicted scores)."""
        return self.left <= x <= self.right

    def integer_band(self) -> tuple[int, int]:
        """The integer ratings inside the band, as (lo, hi); empty if lo > hi."""
        return _integer_band(Interval(self.left, self.right))

    def __repr__(self) -> str:
        return f"[{self.left}, {self.right}]"


@dataclass(frozen=True, slots=True)
class RapsDerivation:
    """One liked movie's contribution: its fan set and their description.

    ``intent`` is None when the target was the movie's only fan.
    """

    movie: int
    extent: frozenset[int]
    intent: IntervalVector | None


@dataclass(frozen=True, slots=True)
class RapsResult:
    target: int
    pref: PreferenceInterval
    liked: frozenset[int]
    scores: dict[int, int]
    recommended: frozenset[int]
    evidence: dict[int, tuple[int, ...]] | None
    derivations: tuple[RapsDerivation, ...] | None


def _band_masks(matrix: RatingMatrix, band: tuple[int, int]):
    """(within, outside) boolean masks for the integer band, plus float32
    copies for counting matmuls.  Cached per matrix and band."""
    key = ("band-masks", band)
    try:
        return matrix._cache[key]
    except KeyError:
        pass
    lo, hi = band
    within = matrix._rated & (matrix._values >= lo) & (matrix._values <= hi)
    outside = matrix._rated & ~within
    masks = (within, outside, within.astype(np.float32), outside.astype(np.float32))
    matrix._cache[key] = masks
    return masks


def liked_movies(matrix: RatingMatrix, target: int, pref: PreferenceInterval) -> frozenset[int]:
    """Movies the target rated inside the preference band."""
    t = matrix.user_index(target)
    within = _band_masks(matrix, pref.integer_band())[0]
    return frozenset(matrix.movies[j] for j in np.flatnonzero(within[t]))


def raps_recommend(
    matrix: RatingMatrix,
    target: int,
    pref: PreferenceInterval,
    exclude_rated: bool = True,
    *,
    with_evidence: bool = True,
    with_trace: bool = False,
) -> RapsResult:
    """Score every movie by how many of the target's liked movies vote for it.

    A liked movie votes for movie ``m`` when its fan set (target excluded)
    has rated ``m`` at least once and never outside the band.  With
    ``exclude_rated`` (the default) the target's own movies are removed from
    the recommendation set, though their scores are still reported.
    """
    t = matrix.user_index(target)
    band = pref.integer_band()
    within, _, wf, of = _band_masks(matrix, band)

    liked_idx = np.flatnonzero(within[t])
    liked = tuple(matrix.movies[j] for j in liked_idx)

    # fans[i] is the indicator row of liked movie i's other fans; a movie is
    # pinned by fan set i when the set reaches it (some fan rated it within
    # the band) and never strays (no fan rated it outside).
    fans = wf[:, liked_idx].T.copy()
    fans[:, t] = 0.0
    pinned = (fans @ wf) > 0.5
    pinned &= (fans @ of) < 0.5
    score_vec = pinned.sum(axis=0)

    scores = {m: int(score_vec[j]) for j, m in enumerate(matrix.movies)}
    recommended = frozenset(m for m, s in scores.items() if s > 0)
    if exclude_rated:
        recommended -= matrix.rated_movies(target)

    evidence = None
    if with_evidence:
        evidence = {
            m: tuple(liked[i] for i in np.flatnonzero(pinned[:, j]))
            for j, m in enumerate(matrix.movies)
        }

    derivations = None
    if with_trace:
        trace = []
        for movie in liked:
            extent = extent_of(matrix, movie, Interval(band[0], band[1])) - {target}
            trace.append(RapsDerivation(movie, extent, intent_of(matrix, extent) if extent else None))
        derivations = tuple(trace)

    return RapsResult(
        target=target,
        pref=pref,
        liked=frozenset(liked),
        scores=scores,
        recommended=recommended,
        evidence=evidence,
        derivations=derivations,
    )


def top_n(result: RapsResult, n: int | None = None) -> tuple[tuple[int, int], ...]:
    """Recommendations as (movie, score) pairs, best score first, ties by id."""
    ranked = sorted(result.recommended, key=lambda m: (-result.scores[m], m))
    if n is not None:
        ranked = ranked[:n]
    return tuple((m, result.scores[m]) for m in ranked)
