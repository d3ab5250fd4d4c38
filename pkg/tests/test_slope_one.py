import math
import random

import pytest

from recbench.errors import UnknownIdError
from recbench.raps import PreferenceInterval
from recbench.slope_one import deviation, predict, slope_one_recommend

from conftest import grid_matrix, random_matrix
from oracles import as_table, brute_deviation, brute_predict, brute_slope_one_recommend


def test_deviation_known_values(small_matrix):
    assert deviation(small_matrix, 3, 2, excluded_user=2) == 1.0
    assert deviation(small_matrix, 3, 1, excluded_user=2) == -3.0
    assert deviation(small_matrix, 2, 1) == pytest.approx(-0.5)  # u1: -2, u2: +1


def test_deviation_is_antisymmetric(small_matrix):
    for j in small_matrix.movies:
        for i in small_matrix.movies:
            d = deviation(small_matrix, j, i)
            assert d == -deviation(small_matrix, i, j)
            assert d is not None


def test_deviation_none_without_coraters(small_matrix):
    # u1 is the only co-rater of movies 1 and 3
    assert deviation(small_matrix, 1, 3, excluded_user=1) is None
    assert deviation(small_matrix, 1, 3) == pytest.approx(3.0)


def test_predict_known_value(small_matrix):
    p = predict(small_matrix, 2, 3)
    assert p.raw == pytest.approx(2.5)
    assert p.clamped == pytest.approx(2.5)
    assert p.support == (1, 2)


def test_predict_clamps_to_borders(small_matrix):
    p = predict(small_matrix, 3, 1)
    assert p.raw == pytest.approx(5.25)
    assert p.clamped == 5.0


def test_predict_none_cases():
    # no user rated both movies, so no deviation exists
    m = grid_matrix([(5, None), (None, 3)])
    assert predict(m, 1, 2) is None
    # a user who rated nothing has no neighbour movies
    m2 = grid_matrix([(5, 2), (None, None)])
    assert predict(m2, 2, 1) is None
    p = predict(grid_matrix([(5, None), (4, 2)]), 1, 2)  # u2's delta: (2 - 4) + 5
    assert p.raw == pytest.approx(3.0)


def test_predict_rejects_already_rated_movie():
    m = grid_matrix([(5, 1), (4, 4)])
    with pytest.raises(ValueError, match="already rated"):
        predict(m, 1, 1)


def test_recommend_filters_by_band(small_matrix):
    assert slope_one_recommend(small_matrix, 2, PreferenceInterval(4, 5)) == {}
    got = slope_one_recommend(small_matrix, 2, PreferenceInterval(2, 3))
    assert set(got) == {3} and got[3].clamped == pytest.approx(2.5)
    top = slope_one_recommend(small_matrix, 3, PreferenceInterval(4, 5))
    assert set(top) == {1} and top[1].clamped == 5.0


def test_recommend_skips_rated_and_respects_candidates(small_matrix):
    got = slope_one_recommend(small_matrix, 2, PreferenceInterval(1, 5), candidates=[1, 2, 3])
    assert set(got) == {3}
    assert slope_one_recommend(small_matrix, 2, PreferenceInterval(1, 5), candidates=[1]) == {}


def test_unknown_ids(small_matrix):
    with pytest.raises(UnknownIdError):
        deviation(small_matrix, 9, 1)
    with pytest.raises(UnknownIdError):
        predict(small_matrix, 9, 1)


def test_matches_brute_force_on_random_matrices():
    rng = random.Random(4321)
    for _ in range(30):
        m = random_matrix(rng, n_users=rng.randint(2, 9), n_movies=rng.randint(2, 7),
                          density=rng.choice([0.3, 0.6, 0.9]))
        table = as_table(m)
        for target in m.users:
            for movie in m.movies:
                if movie in m.rated_movies(target):
                    with pytest.raises(ValueError):
                        predict(m, target, movie)
                    continue
                want = brute_predict(table, target, movie, m.min_border, m.max_border)
                got = predict(m, target, movie)
                if want is None:
                    assert got is None
                else:
                    assert got.raw == pytest.approx(want[0], rel=1e-12, abs=1e-12)
                    assert got.clamped == pytest.approx(want[1], rel=1e-12, abs=1e-12)
                    assert set(got.support) == want[2]


def test_recommend_matches_brute_force():
    rng = random.Random(888)
    for _ in range(25):
        m = random_matrix(rng)
        left = rng.randint(1, 5)
        pref = PreferenceInterval(left, rng.randint(left, 5))
        for target in m.users:
            want = brute_slope_one_recommend(
                as_table(m), m.movies, target, pref.left, pref.right, m.min_border, m.max_border
            )
            got = slope_one_recommend(m, target, pref)
            assert sorted(got) == sorted(want)
            for movie, p in got.items():
                assert math.isclose(p.clamped, want[movie], rel_tol=1e-12, abs_tol=1e-12)


def test_widening_the_band_never_drops_recommendations():
    rng = random.Random(777)
    for _ in range(20):
        m = random_matrix(rng)
        target = rng.choice(m.users)
        left = rng.randint(2, 5)
        narrow = slope_one_recommend(m, target, PreferenceInterval(left, 5))
        wide = slope_one_recommend(m, target, PreferenceInterval(rng.randint(1, left), 5))
        assert set(narrow) <= set(wide)


def test_deviation_exclusion_matches_brute_force():
    rng = random.Random(55)
    for _ in range(20):
        m = random_matrix(rng, n_users=6, n_movies=5)
        table = as_table(m)
        for j in m.movies:
            for i in m.movies:
                for u in (None, *m.users):
                    want = brute_deviation(table, j, i, u)
                    got = deviation(m, j, i, excluded_user=u)
                    if want is None:
                        assert got is None
                    else:
                        assert got == pytest.approx(want[0], rel=1e-12, abs=1e-12)
