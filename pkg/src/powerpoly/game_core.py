"""Weighted majority games: parsing, coalition structure, feasibility tests.

A game is a positive quota plus a vector of nonnegative rational weights
for voters 1..n; a coalition wins exactly when its weight reaches the
quota. Coalitions are plain int bitmasks (bit i-1 set means voter i is a
member), and the full coalition structure is derived exhaustively and
exactly at construction time.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "Coalition",
    "GameFormatError",
    "MAX_VOTERS",
    "NormalizedRepresentation",
    "WeightedGame",
    "coalition",
    "coalition_str",
    "dual_game",
    "is_feasible_weights",
    "is_representation",
    "l1_distance",
    "members",
    "parse_game",
]

Coalition = int

# Structure derivation scans all 2^n coalitions; refuse anything bigger.
MAX_VOTERS = 16

_ENTRY_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")
_GAME_RE = re.compile(r"^\s*\[([^;\[\]]+);([^\[\]]*)\]\s*$")


class GameFormatError(ValueError):
    """Malformed game spec text or invalid game parameters."""


def coalition(voters: Iterable[int]) -> Coalition:
    """Bitmask for a set of 1-based voter ids."""
    mask = 0
    for v in voters:
        if v < 1:
            raise ValueError("voter ids are 1-based")
        mask |= 1 << (v - 1)
    return mask


def members(mask: Coalition) -> tuple[int, ...]:
    """Voter ids of a coalition, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def coalition_str(mask: Coalition) -> str:
    return "{" + ",".join(str(v) for v in members(mask)) + "}"


@dataclass(frozen=True)
class NormalizedRepresentation:
    """Quota and weights rescaled so the weights sum to one."""

    quota: Fraction
    weights: tuple[Fraction, ...]


class WeightedGame:
    """A quota game on voters 1..n with nonnegative rational weights.

    Games are value objects: equality and hashing go by coalition
    structure (voter count plus the set of minimal winning coalitions),
    because many weight vectors describe the same game. The structure
    fields `minimal_winning`, `maximal_losing` and `dummies` are computed
    once in the constructor and never change.
    """

    __slots__ = (
        "n",
        "quota",
        "weights",
        "minimal_winning",
        "maximal_losing",
        "dummies",
        "_scale",
        "_int_quota",
        "_mask_weight",
    )

    def __init__(self, quota, weights) -> None:
        quota = Fraction(quota)
        ws = tuple(Fraction(w) for w in weights)
        if not ws:
            raise GameFormatError("a game needs at least one voter")
        if len(ws) > MAX_VOTERS:
            raise GameFormatError(f"at most {MAX_VOTERS} voters are supported")
        if quota <= 0:
            raise GameFormatError("quota must be positive")
        if any(w < 0 for w in ws):
            raise GameFormatError("weights must be nonnegative")
        if sum(ws) < quota:
            raise GameFormatError("the grand coalition must reach the quota")
        self.n = len(ws)
        self.quota = quota
        self.weights = ws

        # One common denominator turns every coalition-weight comparison
        # into integer arithmetic.
        scale = lcm(quota.denominator, *(w.denominator for w in ws))
        int_weights = [int(w * scale) for w in ws]
        self._scale = scale
        self._int_quota = int(quota * scale)

        size = 1 << self.n
        table = [0] * size
        for m in range(1, size):
            low = m & -m
            table[m] = table[m ^ low] + int_weights[low.bit_length() - 1]
        self._mask_weight = table

        q = self._int_quota
        full = size - 1
        mwc = []
        mlc = []
        for m in range(size):
            if table[m] >= q:
                rest = m
                minimal = True
                while rest:
                    low = rest & -rest
                    if table[m ^ low] >= q:
                        minimal = False
                        break
                    rest ^= low
                if minimal:
                    mwc.append(m)
            else:
                rest = full ^ m
                maximal = True
                while rest:
                    low = rest & -rest
                    if table[m | low] < q:
                        maximal = False
                        break
                    rest ^= low
                if maximal:
                    mlc.append(m)
        self.minimal_winning = frozenset(mwc)
        self.maximal_losing = frozenset(mlc)
        covered = 0
        for m in mwc:
            covered |= m
        self.dummies = frozenset(
            i + 1 for i in range(self.n) if not covered >> i & 1
        )

    def is_winning(self, mask: Coalition) -> bool:
        if mask < 0 or mask >> self.n:
            raise ValueError("coalition contains unknown voters")
        return self._mask_weight[mask] >= self._int_quota

    def coalition_weight(self, mask: Coalition) -> Fraction:
        if mask < 0 or mask >> self.n:
            raise ValueError("coalition contains unknown voters")
        return Fraction(self._mask_weight[mask], self._scale)

    def dummy_reduced(self) -> tuple["WeightedGame", dict[int, int]]:
        """Drop dummy voters; returns the reduced game and an id map.

        The map sends new (reduced) voter ids to the originals. A
        dummy-free game comes back as itself with the identity map.
        """
        if not self.dummies:
            return self, {i: i for i in range(1, self.n + 1)}
        keep = [i for i in range(1, self.n + 1) if i not in self.dummies]
        reduced = WeightedGame(self.quota, [self.weights[i - 1] for i in keep])
        return reduced, {new: old for new, old in enumerate(keep, start=1)}

    def dual(self) -> "WeightedGame":
        """Game whose winners are complements of this game's losers.

        The dual quota is total - quota + delta with delta chosen small
        enough not to cross any coalition weight: 1 for all-integer input,
        otherwise half the smallest positive gap between the quota and a
        coalition weight.
        """
        total = sum(self.weights, Fraction(0))
        if self._scale == 1:
            delta = Fraction(1)
        else:
            gap = min(
                abs(w - self._int_quota)
                for w in self._mask_weight
                if w != self._int_quota
            )
            delta = Fraction(gap, 2 * self._scale)
        return WeightedGame(total - self.quota + delta, self.weights)

    def normalize(self) -> NormalizedRepresentation:
        """Same game with weights scaled to sum to one."""
        total = sum(self.weights, Fraction(0))
        return NormalizedRepresentation(
            self.quota / total, tuple(w / total for w in self.weights)
        )

    def to_spec(self) -> str:
        """Canonical text form, single spaces after separators."""
        body = ", ".join(str(w) for w in self.weights)
        return f"[{self.quota}; {body}]"

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGame):
            return NotImplemented
        return self.n == other.n and self.minimal_winning == other.minimal_winning

    def __hash__(self) -> int:
        return hash((self.n, self.minimal_winning))

    def __repr__(self) -> str:
        return f"WeightedGame({self.to_spec()!r})"


def _parse_entry(token: str, what: str) -> Fraction:
    token = token.strip()
    if not _ENTRY_RE.match(token):
        raise GameFormatError(f"bad {what} entry: {token!r}")
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise GameFormatError(f"zero denominator in {what} entry {token!r}") from None


def parse_game(text: str) -> WeightedGame:
    """Parse "[q; w1, w2, ..., wn]" with integer or p/q entries."""
    m = _GAME_RE.match(text)
    if not m:
        raise GameFormatError(f"not a game spec: {text!r}")
    quota = _parse_entry(m.group(1), "quota")
    body = m.group(2)
    if not body.strip():
        raise GameFormatError("a game needs at least one voter")
    weights = [_parse_entry(tok, "weight") for tok in body.split(",")]
    return WeightedGame(quota, weights)


def _mask_sum(values: Sequence[Fraction], mask: int) -> Fraction:
    total = Fraction(0)
    i = 0
    while mask:
        if mask & 1:
            total += values[i]
        mask >>= 1
        i += 1
    return total


def _checked_vector(game: WeightedGame, vector: Sequence) -> tuple[Fraction, ...]:
    xs = tuple(Fraction(v) for v in vector)
    if len(xs) != game.n:
        raise ValueError("weight vector length mismatch")
    if any(v < 0 for v in xs):
        raise ValueError("weights must be nonnegative")
    return xs


def is_feasible_weights(game: WeightedGame, vector: Sequence) -> bool:
    """True when some quota turns `vector` into a representation of `game`.

    Equivalent test: every minimal winning coalition outweighs every
    maximal losing one, strictly. Scaling the vector by a positive factor
    does not change the answer.
    """
    xs = _checked_vector(game, vector)
    lightest_win = min(_mask_sum(xs, s) for s in game.minimal_winning)
    heaviest_loss = max(_mask_sum(xs, t) for t in game.maximal_losing)
    return lightest_win > heaviest_loss


def is_representation(game: WeightedGame, quota, vector: Sequence) -> bool:
    """True when (quota, vector) describes exactly this game.

    Winning coalitions must reach the quota and losing ones must fall
    strictly below it; by monotonicity it is enough to check minimal
    winning and maximal losing coalitions.
    """
    q = Fraction(quota)
    xs = _checked_vector(game, vector)
    if any(_mask_sum(xs, s) < q for s in game.minimal_winning):
        return False
    return all(_mask_sum(xs, t) < q for t in game.maximal_losing)


def dual_game(game: WeightedGame) -> WeightedGame:
    """Module-level spelling of WeightedGame.dual."""
    return game.dual()


def l1_distance(x: Sequence, y: Sequence) -> Fraction:
    """Sum of componentwise absolute differences, exact."""
    if len(x) != len(y):
        raise ValueError("vectors must have equal length")
    return sum((abs(Fraction(a) - Fraction(b)) for a, b in zip(x, y)), Fraction(0))
