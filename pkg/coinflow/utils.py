# Core Library
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

# First party
from coinflow.grid import (
    Configuration,
    Position,
    Rectangle,
    enclosing_rectangle,
)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def ceil_half(value: int) -> int:
    """
    Exact ceiling of value / 2.

    Examples
    --------
    >>> ceil_half(7), ceil_half(-3)
    (4, -1)
    """
    return -(-value // 2)


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class BoardIndex:
    """
    Bit-packed boards over a fixed rectangle.

    Cell (x, y) maps to bit (x - x0) + (y - y0) * m. Neighbour tests are
    done for all cells at once with shifts.

    Examples
    --------
    >>> index = BoardIndex(Rectangle(0, 0, 3, 1))
    >>> row = index.encode([Position(0, 0), Position(2, 0)])
    >>> index.decode(index.two_plus(row))
    frozenset({Position(x=1, y=0)})
    """

    def __init__(self, frame: Rectangle) -> None:
        self.frame = frame
        self.width = frame.m
        self.height = frame.n
        self.size = frame.m * frame.n
        self.full = (1 << self.size) - 1
        left_column = sum(1 << (y * self.width) for y in range(self.height))
        right_column = left_column << (self.width - 1)
        self._not_left = self.full & ~left_column
        self._not_right = self.full & ~right_column

    def index(self, p: Position) -> int:
        return (p.x - self.frame.x0) + (p.y - self.frame.y0) * self.width

    def bit(self, p: Position) -> int:
        return 1 << self.index(p)

    def position(self, index: int) -> Position:
        y, x = divmod(index, self.width)
        return Position(self.frame.x0 + x, self.frame.y0 + y)

    def encode(self, cells: Iterable[Position]) -> int:
        mask = 0
        for p in cells:
            if not self.frame.contains(p):
                raise ValueError(f"{p} lies outside {self.frame}")
            mask |= self.bit(p)
        return mask

    def decode(self, mask: int) -> Configuration:
        return frozenset(self.position(i) for i in iter_bits(mask))

    def positions(self, mask: int) -> List[Position]:
        return [self.position(i) for i in iter_bits(mask)]

    def _shifted(self, mask: int) -> Tuple[int, int, int, int]:
        from_left = (mask << 1) & self._not_left
        from_right = (mask >> 1) & self._not_right
        from_below = (mask << self.width) & self.full
        from_above = mask >> self.width
        return from_left, from_right, from_below, from_above

    def two_plus(self, mask: int) -> int:
        """Cells with at least two occupied neighbours."""
        a, b, c, d = self._shifted(mask)
        return (a & b) | (c & d) | ((a | b) & (c | d))

    def one_plus(self, mask: int) -> int:
        a, b, c, d = self._shifted(mask)
        return a | b | c | d

    def span(self, mask: int) -> int:
        while True:
            added = self.two_plus(mask) & ~mask
            if not added:
                return mask
            mask |= added


@dataclass(frozen=True)
class Frame:
    """Local coordinates on a rectangle, optionally transposed and turned
    by a half-turn. Local cell (u, v) has 0 <= u < width, 0 <= v < height.
    """

    rect: Rectangle
    transpose: bool = False
    half_turn: bool = False

    @property
    def width(self) -> int:
        return self.rect.n if self.transpose else self.rect.m

    @property
    def height(self) -> int:
        return self.rect.m if self.transpose else self.rect.n

    @property
    def local_rect(self) -> Rectangle:
        return Rectangle(0, 0, self.width, self.height)

    def to_grid(self, p: Position) -> Position:
        a, b = (p.y, p.x) if self.transpose else (p.x, p.y)
        if self.half_turn:
            a, b = self.rect.m - 1 - a, self.rect.n - 1 - b
        return Position(self.rect.x0 + a, self.rect.y0 + b)

    def to_local(self, p: Position) -> Position:
        a, b = p.x - self.rect.x0, p.y - self.rect.y0
        if self.half_turn:
            a, b = self.rect.m - 1 - a, self.rect.n - 1 - b
        return Position(b, a) if self.transpose else Position(a, b)

    def cells_to_grid(self, cells: Iterable[Position]) -> Configuration:
        return frozenset(self.to_grid(p) for p in cells)

    def cells_to_local(self, cells: Iterable[Position]) -> Configuration:
        return frozenset(self.to_local(p) for p in cells)

    def rect_to_grid(self, local: Rectangle) -> Rectangle:
        corners = [
            self.to_grid(Position(local.x0, local.y0)),
            self.to_grid(Position(local.x1, local.y1)),
        ]
        x0 = min(c.x for c in corners)
        y0 = min(c.y for c in corners)
        return Rectangle(
            x0,
            y0,
            max(c.x for c in corners) - x0 + 1,
            max(c.y for c in corners) - y0 + 1,
        )

    def rect_to_local(self, grid: Rectangle) -> Rectangle:
        corners = self.cells_to_local(
            [Position(grid.x0, grid.y0), Position(grid.x1, grid.y1)]
        )
        return enclosing_rectangle(corners)
