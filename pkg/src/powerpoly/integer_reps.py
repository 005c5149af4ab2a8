"""Integer weight grids: exhaustive feasibility counts and convergence.

For a fixed total T, every composition of T into n nonnegative integer
parts is tested against the game's coalition structure. Averaging the
feasible vectors (relative to T) approximates the average weight index;
additionally counting the admissible integer quotas per vector
approximates the average representation index. Counts and sums are exact
integers throughout; numpy only vectorizes the innermost loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .game_core import WeightedGame, l1_distance
from .indices import (
    IndexVector,
    ScaleExceededError,
    average_representation_index,
    average_weight_index,
)

__all__ = [
    "ConvergenceRow",
    "ConvergenceTable",
    "GridSummary",
    "MAX_GRID_POINTS",
    "MAX_GRID_VOTERS",
    "convergence_experiment",
    "enumerate_integer_feasible_weights",
    "enumerate_integer_representations",
]

MAX_GRID_VOTERS = 5
MAX_GRID_POINTS = 20_000_000  # compositions scanned per call


@dataclass(frozen=True)
class GridSummary:
    """Aggregate of one grid scan.

    `average` is relative to the total (entries sum to one); it is empty
    when nothing on the grid was feasible. With `with_quota` set, `count`
    weighs each vector by its number of admissible integer quotas.
    """

    total: int
    count: int
    average: tuple[Fraction, ...]
    with_quota: bool


@dataclass(frozen=True)
class ConvergenceRow:
    summary: GridSummary
    l1_to_limit: Fraction | None


@dataclass(frozen=True)
class ConvergenceTable:
    rows: tuple[ConvergenceRow, ...]
    limit: IndexVector


def _structure_matrices(game: WeightedGame) -> tuple[np.ndarray, np.ndarray]:
    def mat(masks):
        return np.array(
            [[mask >> i & 1 for i in range(game.n)] for mask in sorted(masks)],
            dtype=np.int64,
        )

    return mat(game.minimal_winning), mat(game.maximal_losing)


def _check_scale(game: WeightedGame, total: int) -> None:
    if total < 1:
        raise ValueError("total must be positive")
    if game.n > MAX_GRID_VOTERS:
        raise ScaleExceededError(
            f"integer grid scans support at most {MAX_GRID_VOTERS} voters"
        )
    points = comb(total + game.n - 1, game.n - 1)
    if points > MAX_GRID_POINTS:
        raise ScaleExceededError(
            f"grid for total {total} has {points} points, "
            f"more than the supported {MAX_GRID_POINTS}"
        )


def _grid_scan(game: WeightedGame, total: int, with_quota: bool) -> GridSummary:
    n = game.n
    win_mat, lose_mat = _structure_matrices(game)
    count = 0
    sums = [0] * n

    def accumulate(block: np.ndarray) -> None:
        nonlocal count
        # a vector is feasible iff its lightest minimal winning coalition
        # strictly outweighs its heaviest maximal losing one
        lightest = (block @ win_mat.T).min(axis=1)
        heaviest = (block @ lose_mat.T).max(axis=1)
        mask = lightest > heaviest
        if not mask.any():
            return
        rows = block[mask]
        if with_quota:
            # admissible integer quotas per vector: heaviest+1 .. lightest
            mult = (lightest - heaviest)[mask]
            count += int(mult.sum())
            weighted = rows * mult[:, None]
            for i in range(n):
                sums[i] += int(weighted[:, i].sum())
        else:
            count += int(mask.sum())
            for i in range(n):
                sums[i] += int(rows[:, i].sum())

    if n == 1:
        accumulate(np.array([[total]], dtype=np.int64))
    else:

        def scan(prefix: tuple[int, ...], remaining: int) -> None:
            if len(prefix) == n - 2:
                tail = np.arange(remaining + 1, dtype=np.int64)
                block = np.empty((remaining + 1, n), dtype=np.int64)
                block[:, : n - 2] = prefix
                block[:, n - 2] = tail
                block[:, n - 1] = remaining - tail
                accumulate(block)
                return
            for w in range(remaining + 1):
                scan(prefix + (w,), remaining - w)

        scan((), total)

    if count == 0:
        return GridSummary(total, 0, (), with_quota)
    average = tuple(Fraction(s, count * total) for s in sums)
    return GridSummary(total, count, average, with_quota)


def enumerate_integer_feasible_weights(
    game: WeightedGame, total: int
) -> GridSummary:
    """Count and average the feasible integer weight vectors of sum `total`."""
    _check_scale(game, total)
    return _grid_scan(game, total, with_quota=False)


def enumerate_integer_representations(
    game: WeightedGame, total: int
) -> GridSummary:
    """Count integer representations (quota, weights) with weight sum `total`.

    Each feasible weight vector contributes one representation per integer
    quota between its heaviest losing and lightest winning coalition; the
    average weighs vectors by that multiplicity.
    """
    _check_scale(game, total)
    return _grid_scan(game, total, with_quota=True)


def convergence_experiment(
    game: WeightedGame, totals: Sequence[int], with_quota: bool = False
) -> ConvergenceTable:
    """Grid summaries for ascending totals plus the exact limit index.

    The limit is the average weight index, or the average representation
    index when `with_quota` is set. Each row reports the l1 distance of
    its grid average to the limit (None when the grid was empty).
    """
    if not totals:
        raise ValueError("at least one total is required")
    if any(b <= a for a, b in zip(totals, totals[1:])):
        raise ValueError("totals must be strictly ascending")
    limit = (
        average_representation_index(game)
        if with_quota
        else average_weight_index(game)
    )
    rows = []
    for total in totals:
        _check_scale(game, int(total))
        summary = _grid_scan(game, int(total), with_quota)
        dist = (
            l1_distance(summary.average, limit.values)
            if summary.count
            else None
        )
        rows.append(ConvergenceRow(summary, dist))
    return ConvergenceTable(tuple(rows), limit)
