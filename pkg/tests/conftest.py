import os
import random
from pathlib import Path

import pytest

from recbench.ratings import RatingEntry, RatingMatrix

# Worked examples used throughout the tests.  The small grid exercises the
# rating-delta predictor, the larger one the interval-pattern recommender.
SMALL_GRID = [
    (5, 3, 2),
    (3, 4, None),
    (None, 2, 5),
]

LARGE_GRID = [
    (5, 3, 1, 3, 5, 3),
    (4, 4, 1, 5, 4, 3),
    (5, None, None, 3, None, 4),
    (None, 3, 4, None, 2, 4),
    (4, None, 4, 5, 4, None),
    (3, 4, 5, 5, None, 3),
    (5, 4, 2, None, None, None),
]


def grid_matrix(grid, *, min_border=1, max_border=5):
    """Build a matrix from a row-per-user grid, users and movies numbered from 1.

    Timestamps are synthetic but distinct so timestamp-ordered code paths
    stay deterministic.
    """
    entries = []
    for u, row in enumerate(grid, start=1):
        for m, rating in enumerate(row, start=1):
            if rating is not None:
                entries.append(RatingEntry(u, m, rating, 1000 * u + m))
    n_movies = max(len(row) for row in grid)
    return RatingMatrix(
        entries,
        min_border=min_border,
        max_border=max_border,
        users=range(1, len(grid) + 1),
        movies=range(1, n_movies + 1),
    )


def random_matrix(rng, *, n_users=8, n_movies=6, density=0.6, min_border=1, max_border=5):
    """Random matrix where every user rates at least two movies (so any
    of them can serve as a test user in a split)."""
    entries = []
    for u in range(1, n_users + 1):
        rated = [m for m in range(1, n_movies + 1) if rng.random() < density]
        while len(rated) < min(2, n_movies):
            rated = sorted(set(rated) | {rng.randrange(1, n_movies + 1)})
        for m in rated:
            entries.append(
                RatingEntry(u, m, rng.randint(min_border, max_border), 1000 * u + m)
            )
    return RatingMatrix(
        entries,
        min_border=min_border,
        max_border=max_border,
        users=range(1, n_users + 1),
        movies=range(1, n_movies + 1),
    )


@pytest.fixture
def small_matrix():
    return grid_matrix(SMALL_GRID)


@pytest.fixture
def large_matrix():
    return grid_matrix(LARGE_GRID)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def ml100k_path():
    """Path to the MovieLens 100k ratings file, or None if unavailable."""
    env = os.environ.get("RECBENCH_ML100K")
    if env and Path(env).is_file():
        return Path(env)
    local = Path(__file__).parent / "data" / "u.data"
    if local.is_file():
        return local
    return None


@pytest.fixture
def ml100k():
    path = ml100k_path()
    if path is None:
        pytest.skip(
            "MovieLens 100k not available: set RECBENCH_ML100K or place u.data "
            "under tests/data/"
        )
    return path
