"""Interval algebra over rating descriptions.

Descriptions form a meet-semilattice: the meet of two intervals is the
smallest interval covering both, and ``x`` subsumes ``y`` exactly when
``x`` covers ``y``.  A per-movie description of a user set is an interval
vector with one component per movie of the matrix; a component is None
(undefined) when nobody in the set rated that movie.  Undefined behaves as
the neutral element of the meet, which mirrors how missing ratings drop out
of min/max aggregation.

Bounds are kept as exact numbers (ints, or Fractions in tests); no
floating-point tolerance is involved in comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .errors import DimensionMismatchError, EmptyExtentError
from .ratings import RatingMatrix

__all__ = [
    "Interval",
    "IntervalVector",
    "meet_interval",
    "subsumes",
    "meet_vector",
    "vector_subsumes",
    "extent_of",
    "intent_of",
    "user_description",
]


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval [lo, hi]; a point value a is Interval(a, a)."""

    lo: int | Fraction
    hi: int | Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def meet_interval(x: Interval, y: Interval) -> Interval:
    """Smallest interval covering both operands."""
    return Interval(min(x.lo, y.lo), max(x.hi, y.hi))


def subsumes(x: Interval | None, y: Interval | None) -> bool:
    """True when x is the more general description, i.e. x covers y.

    None (undefined) is the neutral element of the meet, so everything
    subsumes None and None subsumes only itself.
    """
    if y is None:
        return True
    if x is None:
        return False
    return x.contains(y)


class IntervalVector:
    """Fixed-arity tuple of intervals, one per movie; None marks undefined."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Interval | None]):
        self.components: tuple[Interval | None, ...] = tuple(components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> Interval | None:
        return self.components[index]

    def __iter__(self) -> Iterator[Interval | None]:
        return iter(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntervalVector):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self) -> str:
        inner = ", ".join("*" if c is None else repr(c) for c in self.components)
        return f"<{inner}>"


def meet_vector(e: IntervalVector, f: IntervalVector) -> IntervalVector:
    """Componentwise meet; undefined components are neutral."""
    if len(e) != len(f):
        raise DimensionMismatchError(f"vector lengths differ: {len(e)} vs {len(f)}")
    out = []
    for a, b in zip(e, f):
        if a is None:
            out.append(b)
        elif b is None:
            out.append(a)
        else:
            out.append(meet_interval(a, b))
    return IntervalVector(out)


def vector_subsumes(e: IntervalVector, f: IntervalVector) -> bool:
    """Componentwise subsumption; equivalent to meet_vector(e, f) == e."""
    if len(e) != len(f):
        raise DimensionMismatchError(f"vector lengths differ: {len(e)} vs {len(f)}")
    return all(subsumes(a, b) for a, b in zip(e, f))


def _integer_band(interval: Interval) -> tuple[int, int]:
    # integer ratings r satisfy lo <= r <= hi iff ceil(lo) <= r <= floor(hi);
    # exact for int/Fraction bounds.  Floats get a tiny guard so accumulated
    # step error (e.g. 3.0000000000000004 from a swept bound) cannot shift
    # the band.  May come out empty (lo > hi), which callers treat as "no
    # integer matches".
    lo, hi = interval.lo, interval.hi
    lo = math.ceil(lo - 1e-9) if isinstance(lo, float) else math.ceil(lo)
    hi = math.floor(hi + 1e-9) if isinstance(hi, float) else math.floor(hi)
    return lo, hi


def extent_of(matrix: RatingMatrix, movie: int, interval: Interval) -> frozenset[int]:
    """Users whose rating of the movie falls inside the interval."""
    j = matrix.movie_index(movie)
    lo, hi = _integer_band(interval)
    col = matrix._values[:, j]
    mask = matrix._rated[:, j] & (col >= lo) & (col <= hi)
    return frozenset(matrix.users[i] for i in np.flatnonzero(mask))


def intent_of(matrix: RatingMatrix, users: Iterable[int]) -> IntervalVector:
    """Common description of a user set: per movie, the [min, max] band of
    their observed ratings; undefined where none of them rated the movie.
    """
    idx = [matrix.user_index(u) for u in set(users)]
    if not idx:
        raise EmptyExtentError("cannot take the common description of no users")
    values = matrix._values[idx]
    rated = matrix._rated[idx]
    defined = rated.any(axis=0)
    high = np.iinfo(np.int16).max
    low = np.iinfo(np.int16).min
    mins = np.where(rated, values, high).min(axis=0)
    maxs = np.where(rated, values, low).max(axis=0)
    return IntervalVector(
        Interval(int(mins[j]), int(maxs[j])) if defined[j] else None
        for j in range(len(matrix.movies))
    )


def user_description(matrix: RatingMatrix, user: int) -> IntervalVector:
    """A single user's row as a vector of point intervals."""
    return intent_of(matrix, [user])
