"""Power indices: the Shapley-Shubik index and two centroid indices.

The average weight index is the barycenter of the game's weight polytope;
the average representation index is the weight part of the barycenter of
its representation polytope, which also yields an average quota. Both are
exact rationals, sum to one, and (unlike the Shapley-Shubik index in
general) are themselves feasible weight vectors for the game they score.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .game_core import WeightedGame, is_feasible_weights
from .polytope import (
    build_representation_polytope,
    build_weight_polytope,
    centroid,
)

__all__ = [
    "AxiomReport",
    "EXACT_REP_MAX_VOTERS",
    "EXACT_WEIGHT_MAX_VOTERS",
    "IndexVector",
    "KIND_AVG_REP",
    "KIND_AVG_WEIGHT",
    "KIND_SSI",
    "ScaleExceededError",
    "average_representation_index",
    "average_weight_index",
    "check_axioms",
    "dummy_revealing",
    "index_to_json",
    "is_representation_compatible_at",
    "shapley_shubik",
]

KIND_SSI = "ssi"
KIND_AVG_WEIGHT = "avg-weight"
KIND_AVG_REP = "avg-rep"

# Vertex enumeration solves every d-subset of constraints, so cost grows
# combinatorially with the voter count. Guaranteed-fast territory is
# n <= 5 (weight) and n <= 4 (representation); one voter more is allowed
# but already slow, and beyond that the exact pipeline refuses.
EXACT_WEIGHT_MAX_VOTERS = 6
EXACT_REP_MAX_VOTERS = 5


class ScaleExceededError(RuntimeError):
    """Game too large for the exact integration pipeline."""


@dataclass(frozen=True)
class IndexVector:
    """Per-voter scores summing to one.

    `avg_quota` is populated only by the average representation index
    (and its dummy-revealing variant), where the quota coordinate of the
    centroid is meaningful.
    """

    values: tuple[Fraction, ...]
    kind: str
    avg_quota: Fraction | None = None

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.values):
            raise ValueError("index values must be nonnegative")
        if sum(self.values, Fraction(0)) != 1:
            raise ValueError("index values must sum to one")


@dataclass(frozen=True)
class AxiomReport:
    symmetric: bool
    positive: bool
    efficient: bool
    dummy_property: bool
    representation_compatible: bool


def shapley_shubik(game: WeightedGame) -> IndexVector:
    """Exact Shapley-Shubik index.

    Sums marginal contributions over all coalitions with the usual
    |S|! (n-1-|S|)! / n! ordering weights. Monotonicity lets the scan
    skip coalitions that already win.
    """
    n = game.n
    fact = [factorial(k) for k in range(n + 1)]
    nums = [0] * n
    for m in range(1 << n):
        if game.is_winning(m):
            continue
        coeff = fact[m.bit_count()] * fact[n - 1 - m.bit_count()]
        for i in range(n):
            bit = 1 << i
            if m & bit:
                continue
            if game.is_winning(m | bit):
                nums[i] += coeff
    return IndexVector(
        tuple(Fraction(c, fact[n]) for c in nums), KIND_SSI
    )


def average_weight_index(game: WeightedGame) -> IndexVector:
    """Barycenter of the polytope of compatible normalized weights."""
    if game.n > EXACT_WEIGHT_MAX_VOTERS:
        raise ScaleExceededError(
            f"exact average-weight index supports at most "
            f"{EXACT_WEIGHT_MAX_VOTERS} voters; use estimate_centroid_mc "
            f"on the weight polytope instead"
        )
    c = centroid(build_weight_polytope(game))
    last = Fraction(1) - sum(c, Fraction(0))
    return IndexVector(tuple(c) + (last,), KIND_AVG_WEIGHT)


def average_representation_index(game: WeightedGame) -> IndexVector:
    """Weight part of the representation polytope's barycenter.

    The quota coordinate of the same barycenter is reported as
    `avg_quota`; together they form a representation of the game.
    """
    if game.n > EXACT_REP_MAX_VOTERS:
        raise ScaleExceededError(
            f"exact average-representation index supports at most "
            f"{EXACT_REP_MAX_VOTERS} voters; use estimate_centroid_mc "
            f"on the representation polytope instead"
        )
    c = centroid(build_representation_polytope(game))
    weights = c[1:]
    last = Fraction(1) - sum(weights, Fraction(0))
    return IndexVector(
        tuple(weights) + (last,), KIND_AVG_REP, avg_quota=c[0]
    )


_BASE_INDICES = {
    KIND_SSI: shapley_shubik,
    KIND_AVG_WEIGHT: average_weight_index,
    KIND_AVG_REP: average_representation_index,
}


def dummy_revealing(kind: str, game: WeightedGame) -> IndexVector:
    """Compute `kind` on the dummy-reduced game; dummies score exactly 0.

    On a dummy-free game the values match the base index. The reduced
    game's average quota (if any) carries over unchanged, since padding a
    representation with zero weights represents the original game.
    """
    if kind not in _BASE_INDICES:
        raise ValueError(f"unknown index kind: {kind!r}")
    reduced, id_map = game.dummy_reduced()
    base = _BASE_INDICES[kind](reduced)
    values = [Fraction(0)] * game.n
    for new_id, old_id in id_map.items():
        values[old_id - 1] = base.values[new_id - 1]
    return IndexVector(
        tuple(values), f"{kind}-dummy-revealing", avg_quota=base.avg_quota
    )


def is_representation_compatible_at(
    game: WeightedGame, index: IndexVector
) -> bool:
    """True when the index vector is a feasible weight vector for `game`."""
    return is_feasible_weights(game, index.values)


def _swap_bits(mask: int, p: int, q: int) -> int:
    if (mask >> p & 1) == (mask >> q & 1):
        return mask
    return mask ^ ((1 << p) | (1 << q))


def _transposition_automorphisms(game: WeightedGame) -> list[tuple[int, int]]:
    """Voter pairs whose swap leaves the coalition structure unchanged.

    Voters with equal weights always qualify; the structural test also
    catches symmetric voters whose given weights happen to differ.
    """
    mwc = game.minimal_winning
    out = []
    for i in range(game.n):
        for j in range(i + 1, game.n):
            if game.weights[i] != game.weights[j]:
                swapped = frozenset(_swap_bits(s, i, j) for s in mwc)
                if swapped != mwc:
                    continue
            out.append((i + 1, j + 1))
    return out


def check_axioms(game: WeightedGame, index: IndexVector) -> AxiomReport:
    """Evaluate the classic index axioms plus representation compatibility.

    Symmetry means equal scores for interchangeable voters; positivity
    means nonnegative scores with at least one positive; efficiency means
    the scores sum to one; the dummy property means dummies score zero
    (vacuously true without dummies).
    """
    values = index.values
    if len(values) != game.n:
        raise ValueError("index length does not match the game")
    symmetric = all(
        values[i - 1] == values[j - 1]
        for i, j in _transposition_automorphisms(game)
    )
    positive = all(v >= 0 for v in values) and any(v > 0 for v in values)
    efficient = sum(values, Fraction(0)) == 1
    dummy_ok = all(values[i - 1] == 0 for i in game.dummies)
    compatible = is_feasible_weights(game, values)
    return AxiomReport(symmetric, positive, efficient, dummy_ok, compatible)


def index_to_json(
    game: WeightedGame,
    index: IndexVector,
    axioms: AxiomReport | None = None,
    precision: int = 6,
) -> dict:
    """JSON document for an index result; schema is stable across kinds."""
    from .exact_math import decimal_str

    doc: dict = {
        "game": game.to_spec(),
        "kind": index.kind,
        "values": [str(v) for v in index.values],
        "decimals": [decimal_str(v, precision) for v in index.values],
    }
    if index.avg_quota is not None:
        doc["avg_quota"] = str(index.avg_quota)
    if axioms is not None:
        doc["axioms"] = {
            "symmetric": axioms.symmetric,
            "positive": axioms.positive,
            "efficient": axioms.efficient,
            "dummy_property": axioms.dummy_property,
            "representation_compatible": axioms.representation_compatible,
        }
    return doc
