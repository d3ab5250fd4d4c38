"""Sparse user-movie rating matrix and MovieLens-format I/O.

The matrix is a many-valued table: each (user, movie) cell holds either an
integer rating within ``[min_border, max_border]`` or nothing at all.
Missing cells are represented by absence, never by a sentinel rating.
Instances are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass
from typing import BinaryIO, Iterable

import numpy as np

from .errors import DuplicateRatingError, MovielensParseError, UnknownIdError

__all__ = ["RatingEntry", "RatingMatrix", "load_movielens", "dump_movielens"]


@dataclass(frozen=True, slots=True)
class RatingEntry:
    """One observed rating: who rated what, the score, and when."""

    user: int
    movie: int
    rating: int
    timestamp: int


class RatingMatrix:
    """Immutable sparse rating matrix over ordered user and movie id sets.

    ``users`` and ``movies`` are sorted ascending and fixed for the lifetime
    of the matrix, so positional indices (e.g. interval-vector components)
    are well defined.  Identifiers are kept as the opaque integers found in
    the input; dense indices exist only internally.
    """

    def __init__(
        self,
        entries: Iterable[RatingEntry],
        *,
        min_border: int = 1,
        max_border: int = 5,
        users: Iterable[int] | None = None,
        movies: Iterable[int] | None = None,
    ):
        if min_border > max_border:
            raise ValueError(f"min_border {min_border} > max_border {max_border}")
        entries = tuple(sorted(entries, key=lambda e: (e.user, e.movie, e.timestamp)))

        seen: set[tuple[int, int]] = set()
        for e in entries:
            key = (e.user, e.movie)
            if key in seen:
                raise DuplicateRatingError(f"duplicate rating for user {e.user}, movie {e.movie}")
            seen.add(key)
            if not min_border <= e.rating <= max_border:
                raise ValueError(
                    f"rating {e.rating} for user {e.user}, movie {e.movie} "
                    f"outside [{min_border}, {max_border}]"
                )

        user_ids = {e.user for e in entries}
        movie_ids = {e.movie for e in entries}
        if users is not None:
            users = set(users)
            if not user_ids <= users:
                raise ValueError("explicit user set does not cover all entries")
            user_ids = users
        if movies is not None:
            movies = set(movies)
            if not movie_ids <= movies:
                raise ValueError("explicit movie set does not cover all entries")
            movie_ids = movies

        self.entries: tuple[RatingEntry, ...] = entries
        self.users: tuple[int, ...] = tuple(sorted(user_ids))
        self.movies: tuple[int, ...] = tuple(sorted(movie_ids))
        self.min_border = min_border
        self.max_border = max_border

        self._uidx = {u: i for i, u in enumerate(self.users)}
        self._midx = {m: j for j, m in enumerate(self.movies)}
        n_u, n_m = len(self.users), len(self.movies)
        self._values = np.zeros((n_u, n_m), dtype=np.int16)
        self._rated = np.zeros((n_u, n_m), dtype=bool)
        if entries:
            ui = np.fromiter((self._uidx[e.user] for e in entries), dtype=np.intp, count=len(entries))
            mi = np.fromiter((self._midx[e.movie] for e in entries), dtype=np.intp, count=len(entries))
            rv = np.fromiter((e.rating for e in entries), dtype=np.int16, count=len(entries))
            self._values[ui, mi] = rv
            self._rated[ui, mi] = True
        self._values.setflags(write=False)
        self._rated.setflags(write=False)
        # scratch space for derived structures (pair deviation sums, pattern
        # masks); keyed caches only, never part of observable state
        self._cache: dict = {}

    # -- dense-index helpers -------------------------------------------------

    def user_index(self, user: int) -> int:
        try:
            return self._uidx[user]
        except KeyError:
            raise UnknownIdError(f"unknown user {user}") from None

    def movie_index(self, movie: int) -> int:
        try:
            return self._midx[movie]
        except KeyError:
            raise UnknownIdError(f"unknown movie {movie}") from None

    # -- queries -------------------------------------------------------------

    def rating(self, user: int, movie: int) -> int | None:
        """The stored rating, or None when the cell is missing."""
        i, j = self.user_index(user), self.movie_index(movie)
        return int(self._values[i, j]) if self._rated[i, j] else None

    def rated_movies(self, user: int) -> frozenset[int]:
        """All movies the user has rated."""
        i = self.user_index(user)
        return frozenset(self.movies[j] for j in np.flatnonzero(self._rated[i]))

    def raters_of(self, movie: int) -> frozenset[int]:
        """All users who rated the movie."""
        j = self.movie_index(movie)
        return frozenset(self.users[i] for i in np.flatnonzero(self._rated[:, j]))

    def co_raters(self, movie_j: int, movie_i: int, excluded_user: int | None) -> frozenset[int]:
        """Users other than ``excluded_user`` who rated both movies."""
        j = self.movie_index(movie_j)
        i = self.movie_index(movie_i)
        both = self._rated[:, j] & self._rated[:, i]
        found = frozenset(self.users[k] for k in np.flatnonzero(both))
        if excluded_user is not None:
            found -= {excluded_user}
        return found

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatingMatrix):
            return NotImplemented
        return (
            self.entries == other.entries
            and self.users == other.users
            and self.movies == other.movies
            and self.min_border == other.min_border
            and self.max_border == other.max_border
        )

    def __hash__(self):
        return hash((self.entries, self.users, self.movies, self.min_border, self.max_border))

    def __repr__(self) -> str:
        return (
            f"RatingMatrix({len(self.entries)} ratings, {len(self.users)} users, "
            f"{len(self.movies)} movies, range [{self.min_border}, {self.max_border}])"
        )


def load_movielens(
    source: str | os.PathLike | bytes | BinaryIO,
    *,
    min_border: int = 1,
    max_border: int = 5,
) -> RatingMatrix:
    """Parse MovieLens ``u.data`` records into a RatingMatrix.

    The format is one record per LF-terminated line with four tab-separated
    decimal integers: user id, item id, rating, timestamp.  Malformed lines
    and duplicate (user, movie) pairs are rejected.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            data = fh.read()
    elif isinstance(source, bytes):
        data = source
    else:
        data = source.read()

    entries = []
    for lineno, raw in enumerate(data.split(b"\n"), start=1):
        if not raw:
            continue
        fields = raw.split(b"\t")
        if len(fields) != 4:
            raise MovielensParseError(lineno, f"expected 4 tab-separated fields, got {len(fields)}")
        try:
            user, movie, rating, timestamp = (int(f) for f in fields)
        except ValueError:
            raise MovielensParseError(lineno, f"non-integer field in {raw!r}") from None
        if not min_border <= rating <= max_border:
            raise MovielensParseError(
                lineno, f"rating {rating} outside [{min_border}, {max_border}]"
            )
        entries.append(RatingEntry(user, movie, rating, timestamp))

    return RatingMatrix(entries, min_border=min_border, max_border=max_border)


def dump_movielens(matrix: RatingMatrix, sink: BinaryIO | None = None) -> bytes | None:
    """Serialize back to the tab-separated line format (LF endings).

    Round trip: ``load_movielens(dump_movielens(m))`` reproduces the entry set.
    """
    out = io.BytesIO()
    for e in matrix.entries:
        out.write(f"{e.user}\t{e.movie}\t{e.rating}\t{e.timestamp}\n".encode())
    if sink is None:
        return out.getvalue()
    sink.write(out.getvalue())
    return None
