# Core Library
import itertools
import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import (
    Deque,
    Dict,
    FrozenSet,
    Iterator,
    List,
    Optional,
    Set,
    Tuple,
)

# First party
from coinflow.constants import EXHAUSTIVE_EXTRA_COINS, EXHAUSTIVE_EXTRA_K
from coinflow.exceptions import GeometryError
from coinflow.grid import (
    Configuration,
    Position,
    Rectangle,
    enclosing_rectangle,
    neighbor_list,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpanDecomposition:
    rectangles: Tuple[Rectangle, ...]

    def __iter__(self) -> Iterator[Rectangle]:
        return iter(self.rectangles)

    def __len__(self) -> int:
        return len(self.rectangles)

    def component_of(self, p: Position) -> Optional[Rectangle]:
        for rect in self.rectangles:
            if rect.contains(p):
                return rect
        return None

    def cells(self) -> Configuration:
        return frozenset(
            cell for rect in self.rectangles for cell in rect.cells()
        )


def _neighbor_counts(config: Configuration) -> Dict[Position, int]:
    counts: Dict[Position, int] = defaultdict(int)
    for coin in config:
        for q in neighbor_list(coin):
            if q not in config:
                counts[q] += 1
    return counts


def adjacent_set(config: Configuration) -> FrozenSet[Position]:
    """
    Free positions with at least two occupied neighbours.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> sorted(adjacent_set(make_config([(0, 0), (2, 0)])))
    [Position(x=1, y=0)]
    """
    counts = _neighbor_counts(config)
    return frozenset(p for p, count in counts.items() if count >= 2)


def span(config: Configuration) -> Configuration:
    """Least fixed point of adding every cell with two occupied neighbours."""
    occupied: Set[Position] = set(config)
    counts: Dict[Position, int] = dict(_neighbor_counts(config))
    worklist: Deque[Position] = deque(
        p for p, count in counts.items() if count >= 2
    )
    while worklist:
        p = worklist.popleft()
        if p in occupied:
            continue
        occupied.add(p)
        for q in neighbor_list(p):
            if q in occupied:
                continue
            counts[q] = counts.get(q, 0) + 1
            if counts[q] == 2:
                worklist.append(q)
    return frozenset(occupied)


def span_iterations(config: Configuration) -> List[Configuration]:
    """The global rounds C_0 = C, C_{i+1} = C_i + adjacent_set(C_i)."""
    rounds = [frozenset(config)]
    while True:
        added = adjacent_set(rounds[-1])
        if not added:
            return rounds
        rounds.append(rounds[-1] | added)


def _four_connected_parts(cells: Configuration) -> List[Set[Position]]:
    remaining = set(cells)
    parts = []
    while remaining:
        seed = min(remaining)
        remaining.discard(seed)
        part = {seed}
        queue = deque([seed])
        while queue:
            p = queue.popleft()
            for q in neighbor_list(p):
                if q in remaining:
                    remaining.discard(q)
                    part.add(q)
                    queue.append(q)
        parts.append(part)
    return parts


def span_components(config: Configuration) -> SpanDecomposition:
    if not config:
        raise GeometryError("configuration is empty", "empty")
    rectangles = []
    for part in _four_connected_parts(span(config)):
        box = enclosing_rectangle(part)
        if box.area != len(part):
            raise GeometryError(
                f"span component {box} is not a full rectangle",
                "not_rectangular",
            )
        rectangles.append(box)
    rectangles.sort(key=lambda r: (r.x0, r.y0))
    for first, second in itertools.combinations(rectangles, 2):
        if first.distance_to(second) < 3:
            raise GeometryError(
                f"span components {first} and {second} are too close",
                "not_rectangular",
            )
    return SpanDecomposition(tuple(rectangles))


def adjacent_pairs(config: Configuration) -> int:
    """Number of unordered pairs of coins at distance 1."""
    return sum(
        1
        for p in config
        for q in (Position(p.x + 1, p.y), Position(p.x, p.y + 1))
        if q in config
    )


def perimeter(config: Configuration) -> int:
    """
    Perimeter of the union of occupied unit squares.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> perimeter(make_config([(0, 0), (1, 0), (1, 1)]))
    8
    """
    return 4 * len(config) - 2 * adjacent_pairs(config)


def rectangle_min_cardinality(rect: Rectangle) -> int:
    return (rect.m + rect.n + 1) // 2


def min_cardinality(decomposition: SpanDecomposition) -> int:
    return sum(rectangle_min_cardinality(rect) for rect in decomposition)


def min_cardinality_of(config: Configuration) -> int:
    return min_cardinality(span_components(config))


def is_minimal(config: Configuration) -> bool:
    """Check if removing any coin shrinks the span."""
    full = span(config)
    return all(span(config - {coin}) != full for coin in config)


def is_minimum(config: Configuration) -> bool:
    return len(config) == min_cardinality_of(config)


def find_extra_coins(
    a: Configuration, relative_to: Optional[Configuration], k: int
) -> Optional[FrozenSet[Position]]:
    """Find k coins whose removal keeps the span (or covers span(B)).

    Exhaustive for small inputs, greedy otherwise; the greedy pass may
    miss a solution that exists.
    """
    if k < 0 or k > len(a):
        return None
    target = span(relative_to) if relative_to is not None else span(a)

    def keeps(rest: Configuration) -> bool:
        return span(rest) >= target

    if k <= EXHAUSTIVE_EXTRA_K and len(a) <= EXHAUSTIVE_EXTRA_COINS:
        for combo in itertools.combinations(sorted(a), k):
            if keeps(a - frozenset(combo)):
                return frozenset(combo)
        return None

    logger.debug("greedy extra-coin search for k=%d on %d coins", k, len(a))
    removed: List[Position] = []
    rest = a
    for _ in range(k):
        for coin in sorted(rest):
            if keeps(rest - {coin}):
                removed.append(coin)
                rest = rest - {coin}
                break
        else:
            return None
    return frozenset(removed)


def find_redundant_coins(
    b: Configuration, k: int
) -> Optional[Tuple[Position, ...]]:
    """Ordered coins b_1..b_k, each with two neighbours among the coins
    not yet removed. Dropping them back in reverse order is legal.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> find_redundant_coins(make_config([(0, 0), (2, 0), (4, 0)]), 1)
    """
    if k < 0 or k > len(b):
        return None
    failed: Set[Configuration] = set()

    def search(
        rest: Configuration, chosen: Tuple[Position, ...]
    ) -> Optional[Tuple[Position, ...]]:
        if len(chosen) == k:
            return chosen
        if rest in failed:
            return None
        for coin in sorted(rest):
            if sum(q in rest for q in neighbor_list(coin)) >= 2:
                found = search(rest - {coin}, chosen + (coin,))
                if found is not None:
                    return found
        failed.add(rest)
        return None

    return search(frozenset(b), ())
