"""Shared fixtures: catalogue corpus, random games, cached index values."""

import random
import zlib

import pytest

from powerpoly import (
    average_representation_index,
    average_weight_index,
    parse_game,
    shapley_shubik,
)
from expected_values import TABLE

_INDEX_FN = {
    "ssi": shapley_shubik,
    "avg-weight": average_weight_index,
    "avg-rep": average_representation_index,
}

# Games hash by coalition structure and the indices depend on nothing
# else, so one dict memoizes across the whole session (dual pairs and
# alternative representations collapse onto the same entry).
_index_cache = {}


def cached_index(kind, game):
    key = (kind, game)
    if key not in _index_cache:
        _index_cache[key] = _INDEX_FN[kind](game)
    return _index_cache[key]


def mc_seed(game):
    """Stable per-structure seed for Monte Carlo checks."""
    return zlib.crc32(game.to_spec().encode())


def random_games(count=20, voters=5, seed=20260819):
    """Deterministic sample of distinct games on `voters` voters."""
    rng = random.Random(seed)
    games = []
    seen = set()
    while len(games) < count:
        weights = [rng.randint(0, 4) for _ in range(voters)]
        total = sum(weights)
        if total == 0:
            continue
        quota = rng.randint(1, total)
        spec = "[%d;%s]" % (quota, ",".join(str(w) for w in weights))
        game = parse_game(spec)
        if game in seen:
            continue
        seen.add(game)
        games.append(game)
    return games


@pytest.fixture(scope="session")
def corpus():
    """All catalogued games with n <= 4, in table order."""
    return [parse_game(spec) for spec in TABLE]


@pytest.fixture(scope="session")
def random_n5():
    return random_games()
