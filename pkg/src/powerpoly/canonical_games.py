"""Catalogue of all weighted majority games with up to four voters.

There are 37 distinct coalition structures (1 + 3 + 8 + 25 for one to
four voters); each entry below is a minimum-sum integer representation.
The order groups games by voter count and is part of the public contract:
table output follows it byte for byte.
"""

from __future__ import annotations

__all__ = ["CANONICAL_GAMES", "canonical_games"]

CANONICAL_GAMES: tuple[str, ...] = (
    "[1;1]",
    "[1;1,0]",
    "[1;1,1]",
    "[2;1,1]",
    "[1;1,0,0]",
    "[1;1,1,0]",
    "[2;1,1,0]",
    "[1;1,1,1]",
    "[2;1,1,1]",
    "[3;1,1,1]",
    "[2;2,1,1]",
    "[3;2,1,1]",
    "[1;1,0,0,0]",
    "[1;1,1,0,0]",
    "[2;1,1,0,0]",
    "[1;1,1,1,0]",
    "[2;1,1,1,0]",
    "[3;1,1,1,0]",
    "[2;2,1,1,0]",
    "[3;2,1,1,0]",
    "[1;1,1,1,1]",
    "[2;1,1,1,1]",
    "[3;1,1,1,1]",
    "[4;1,1,1,1]",
    "[4;2,1,1,1]",
    "[3;2,1,1,1]",
    "[2;2,1,1,1]",
    "[3;2,2,1,1]",
    "[4;2,2,1,1]",
    "[5;2,2,1,1]",
    "[2;2,2,1,1]",
    "[4;3,1,1,1]",
    "[3;3,1,1,1]",
    "[3;3,2,1,1]",
    "[5;3,2,1,1]",
    "[4;3,2,2,1]",
    "[5;3,2,2,1]",
)


def canonical_games(max_voters: int = 4) -> list[str]:
    """Catalogue entries with at most `max_voters` voters, in order."""
    if max_voters < 1:
        raise ValueError("max_voters must be at least 1")
    return [
        spec
        for spec in CANONICAL_GAMES
        if spec.count(",") + 1 <= max_voters
    ]
