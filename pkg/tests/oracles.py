"""Brute-force reference implementations used only by the test suite.

Everything here works on plain dict-of-dicts tables and exhaustive scans,
deliberately sharing no code with the library internals.
"""

import math


def as_table(matrix):
    """{user: {movie: rating}} view of a RatingMatrix built from its entries."""
    table = {u: {} for u in matrix.users}
    for e in matrix.entries:
        table[e.user][e.movie] = e.rating
    return table


def brute_extent(table, movie, lo, hi):
    return {u for u, row in table.items() if movie in row and lo <= row[movie] <= hi}


def brute_intent(table, movies, users):
    """Per-movie (min, max) over the users' observed ratings; None if unseen."""
    out = {}
    for m in movies:
        seen = [table[u][m] for u in users if m in table[u]]
        out[m] = (min(seen), max(seen)) if seen else None
    return out


def brute_raps(table, movies, target, left, right, exclude_rated=True):
    """Evidence counting over per-liked-movie extents, excluding the target
    from every extent (their own liked rating is the query, not evidence).

    Returns (scores, recommended, evidence) with scores keyed by movie.
    """
    row = table[target]
    liked = {m for m, r in row.items() if left <= r <= right}
    scores = {m: 0 for m in movies}
    evidence = {m: [] for m in movies}
    for t in sorted(liked):
        extent = brute_extent(table, t, left, right) - {target}
        if not extent:
            continue
        intent = brute_intent(table, movies, extent)
        for m in movies:
            band = intent[m]
            if band is not None and left <= band[0] and band[1] <= right:
                scores[m] += 1
                evidence[m].append(t)
    recommended = {m for m, s in scores.items() if s > 0}
    if exclude_rated:
        recommended -= set(row)
    return scores, recommended, evidence


def brute_deviation(table, movie_j, movie_i, excluded_user):
    diffs = [
        row[movie_j] - row[movie_i]
        for u, row in table.items()
        if u != excluded_user and movie_j in row and movie_i in row
    ]
    if not diffs:
        return None
    return math.fsum(diffs) / len(diffs), len(diffs)


def brute_predict(table, target, movie_j, min_border, max_border):
    """Slope One prediction for one unrated movie, or None."""
    row = table[target]
    terms = []
    support = []
    for movie_i in sorted(row):
        if movie_i == movie_j:
            continue
        dev = brute_deviation(table, movie_j, movie_i, target)
        if dev is None:
            continue
        terms.append(dev[0] + row[movie_i])
        support.append(movie_i)
    if not terms:
        return None
    raw = math.fsum(terms) / len(terms)
    clamped = min(max(raw, min_border), max_border)
    return raw, clamped, set(support)


def brute_slope_one_recommend(table, movies, target, left, right, min_border, max_border):
    """{movie: clamped score} for unrated movies predicted inside [left, right]."""
    out = {}
    for m in sorted(movies):
        if m in table[target]:
            continue
        pred = brute_predict(table, target, m, min_border, max_border)
        if pred is not None and left <= pred[1] <= right:
            out[m] = pred[1]
    return out
