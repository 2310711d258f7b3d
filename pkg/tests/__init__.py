# Core Library
from typing import Iterable

# First party
from coinflow.grid import Configuration, Position
from coinflow.moves import Action, GameState, replay


def _config(art: str) -> Configuration:
    """Read a configuration from ASCII art; the last line is y = 0."""
    rows = [line.strip() for line in art.strip().splitlines()]
    return frozenset(
        Position(x, y)
        for y, row in enumerate(reversed(rows))
        for x, char in enumerate(row)
        if char == "o"
    )


def _reaches(
    start: Configuration, actions: Iterable[Action], target: Configuration
) -> bool:
    """Replay pure moves from start and compare with target."""
    return replay(GameState(start), actions) == GameState(target)
