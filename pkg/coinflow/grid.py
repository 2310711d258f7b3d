"""Positions, rectangles and configurations of the square grid.

The y axis points upward. Configurations are plain frozensets of positions,
compared by set equality at their absolute location.
"""

# Core Library
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, NamedTuple, Tuple

# First party
from coinflow.exceptions import GeometryError


class Position(NamedTuple):
    x: int
    y: int

    def shifted(self, dx: int, dy: int) -> "Position":
        return Position(self.x + dx, self.y + dy)


Configuration = FrozenSet[Position]


def make_config(cells: Iterable[Tuple[int, int]]) -> Configuration:
    """
    Build a configuration from coordinate pairs.

    Examples
    --------
    >>> sorted(make_config([(2, 0), (0, 0)]))
    [Position(x=0, y=0), Position(x=2, y=0)]
    """
    return frozenset(Position(int(x), int(y)) for x, y in cells)


@dataclass(frozen=True)
class Rectangle:
    x0: int
    y0: int
    m: int
    n: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.n < 1:
            raise GeometryError(
                f"rectangle sides must be positive, got {self.m}x{self.n}"
            )

    @property
    def x1(self) -> int:
        return self.x0 + self.m - 1

    @property
    def y1(self) -> int:
        return self.y0 + self.n - 1

    @property
    def half_perimeter(self) -> int:
        return self.m + self.n

    @property
    def parity(self) -> str:
        return "even" if self.half_perimeter % 2 == 0 else "odd"

    @property
    def is_even(self) -> bool:
        return self.half_perimeter % 2 == 0

    @property
    def area(self) -> int:
        return self.m * self.n

    @property
    def top_left(self) -> Position:
        return Position(self.x0, self.y1)

    @property
    def top_right(self) -> Position:
        return Position(self.x1, self.y1)

    @property
    def bottom_left(self) -> Position:
        return Position(self.x0, self.y0)

    @property
    def bottom_right(self) -> Position:
        return Position(self.x1, self.y0)

    def contains(self, p: Position) -> bool:
        return self.x0 <= p.x <= self.x1 and self.y0 <= p.y <= self.y1

    def contains_rectangle(self, other: "Rectangle") -> bool:
        return (
            self.x0 <= other.x0
            and other.x1 <= self.x1
            and self.y0 <= other.y0
            and other.y1 <= self.y1
        )

    def cells(self) -> Iterator[Position]:
        """Cells row by row, bottom row first."""
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                yield Position(x, y)

    def distance_to(self, other: "Rectangle") -> int:
        """Smallest Manhattan distance between a cell of each rectangle."""
        dx = max(0, other.x0 - self.x1, self.x0 - other.x1)
        dy = max(0, other.y0 - self.y1, self.y0 - other.y1)
        return dx + dy

    def transpose(self) -> "Rectangle":
        return Rectangle(self.y0, self.x0, self.n, self.m)

    def __str__(self) -> str:
        return f"{self.m}x{self.n}@({self.x0},{self.y0})"


def dist(p: Position, q: Position) -> int:
    """
    Manhattan distance.

    Examples
    --------
    >>> dist(Position(2, 5), Position(-1, 5))
    3
    """
    return abs(p.x - q.x) + abs(p.y - q.y)


def neighbors(p: Position) -> FrozenSet[Position]:
    x, y = p
    return frozenset(
        (
            Position(x + 1, y),
            Position(x - 1, y),
            Position(x, y + 1),
            Position(x, y - 1),
        )
    )


def neighbor_list(p: Position) -> Tuple[Position, ...]:
    """The four neighbours in a fixed order: right, left, up, down."""
    x, y = p
    return (
        Position(x + 1, y),
        Position(x - 1, y),
        Position(x, y + 1),
        Position(x, y - 1),
    )


def enclosing_rectangle(config: Iterable[Position]) -> Rectangle:
    cells = list(config)
    if not cells:
        raise GeometryError("configuration is empty", "empty")
    xs = [p.x for p in cells]
    ys = [p.y for p in cells]
    x0, y0 = min(xs), min(ys)
    return Rectangle(x0, y0, max(xs) - x0 + 1, max(ys) - y0 + 1)


def translate(config: Iterable[Position], dx: int, dy: int) -> Configuration:
    return frozenset(Position(p.x + dx, p.y + dy) for p in config)


def normalize_translation(
    config: Configuration,
) -> Tuple[Configuration, Position]:
    """Translate so the enclosing rectangle starts at (0, 0).

    Returns the translated configuration and the offset that was removed.
    """
    box = enclosing_rectangle(config)
    return translate(config, -box.x0, -box.y0), Position(box.x0, box.y0)
