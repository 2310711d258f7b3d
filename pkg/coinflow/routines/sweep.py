"""Building an arbitrary small target inside the span of an 'L'.

Every level works in a frame where the rectangle is at least as high as
wide and the lower half R1 holds no more target coins than the upper half
R2. The 'L' is swept over the lower part Q (R1 plus the row above it),
leaving the target coins of R1 behind and the mirrored 'L' of Q in place;
the rightmost column is then fixed by hand. The coins left on the left
column and on the first row of R2 are settled into the canonical 'L' of
R2 and the level recurses there.
"""

# Core Library
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple

# First party
from coinflow.canonical import (
    LShape,
    SubroutineTrace,
    TraceBuilder,
    canonical_shape,
    l_chain,
    l_coins,
    l_path,
    mirror,
    normalize_on_path,
    shape_of,
)
from coinflow.constants import LEFT_BOTTOM, TOP_RIGHT
from coinflow.exceptions import GeometryError, SubroutineError
from coinflow.grid import Configuration, Position, Rectangle, dist
from coinflow.moves import Drop, GameState, PickUp, transform_actions
from coinflow.routines.flip import column_first_swaps, flip_L
from coinflow.routines.leapfrog import leapfrog, require_on_board
from coinflow.utils import Frame, ceil_half

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepLevel:
    rect: Rectangle
    k: int
    c1: int
    l2: int
    k_next: int


def sweep_capacity(m: int, n: int, k: int) -> int:
    """Targets strictly smaller than this can be built from an m x n 'L'
    with k coins in hand."""
    return min(
        ceil_half(m + n) - ceil_half(min(m, n)) + (k - 1), 2 * (k - 1)
    )


def choose_frame(rect: Rectangle, target: Configuration) -> Frame:
    """Frame with width <= height and fewer target coins in the lower
    half; ties keep the lower half."""
    transpose = rect.m > rect.n
    frame = Frame(rect, transpose)
    lower = frame.height // 2
    below = sum(1 for p in frame.cells_to_local(target) if p.y < lower)
    if below > len(target) - below:
        return Frame(rect, transpose, half_turn=True)
    return frame


def sweep_build(
    state: GameState,
    shape: LShape,
    target: Iterable[Position],
    journal: Optional[List[SweepLevel]] = None,
) -> SubroutineTrace:
    """Replace the 'L' by target, which must lie inside its span.

    Every level checks that the target is small enough for the coins in
    hand and raises SubroutineError ("hypothesis_violated") otherwise.
    The result is one-way.
    """
    goal = frozenset(target)
    rect = shape.span
    outside = [p for p in goal if not rect.contains(p)]
    if outside:
        raise GeometryError(f"{sorted(outside)[0]} lies outside {rect}")
    require_on_board(state, shape)
    cells = frozenset(rect.cells())
    if state.board & cells != l_coins(shape):
        raise SubroutineError(
            f"{rect} holds coins besides the 'L'", "not_an_L"
        )
    builder = TraceBuilder(state)
    _build(builder, rect, goal, journal)
    return builder.finish("sweep", reversible=False)


def _build(
    builder: TraceBuilder,
    rect: Rectangle,
    target: Configuration,
    journal: Optional[List[SweepLevel]],
) -> None:
    cells = frozenset(rect.cells())
    board = builder.board & cells
    goal = target & cells
    if board == goal:
        return
    if not goal:
        for p in sorted(board):
            builder.play(PickUp(p))
        return
    k = builder.hand
    capacity = sweep_capacity(rect.m, rect.n, k)
    if len(goal) >= capacity:
        raise SubroutineError(
            f"{len(goal)} target coins on {rect} need fewer than "
            f"{capacity} with {k} in hand",
            "hypothesis_violated",
        )
    frame = choose_frame(rect, goal)
    local = TraceBuilder(GameState(frame.cells_to_local(board), k))
    upper = _sweep_level(local, frame, frame.cells_to_local(goal))
    builder.play(*transform_actions(local.actions, frame.to_grid))
    lower = frame.height // 2
    c1 = sum(1 for p in frame.cells_to_local(goal) if p.y < lower)
    if journal is not None:
        journal.append(
            SweepLevel(rect, k, c1, upper.cardinality, builder.hand)
        )
    logger.debug(
        "sweep level %s: k=%d |C1|=%d k'=%d", rect, k, c1, builder.hand
    )
    _build(builder, frame.rect_to_grid(upper.span), target, journal)


def _sweep_level(
    lb: TraceBuilder, frame: Frame, goal: Configuration
) -> LShape:
    """Run one level in local coordinates; returns the 'L' left on R2."""
    w, h = frame.width, frame.height
    lower = h // 2
    shape = shape_of(lb.board)
    if shape is None or shape.orientation not in (LEFT_BOTTOM, TOP_RIGHT):
        raise SubroutineError("level does not start from an 'L'", "not_an_L")
    if shape.orientation == TOP_RIGHT:
        flipped = flip_L(lb.state, shape)
        lb.extend(flipped)
        shape = mirror(shape)
    c1 = frozenset(p for p in goal if p.y < lower)
    if w > 1:
        # the pair goes to the top so the chain over Q is even
        if shape.pair_index:
            lb.extend(leapfrog(lb.state, shape, 0))
            shape = LShape(shape.span, LEFT_BOTTOM, 0)
        build = frozenset(p for p in c1 if p.x < w - 1)
        _flip_sweep(lb, shape, lower, build)

    # rightmost column of R1
    top_right = Position(w - 1, lower)
    if top_right not in lb.board:
        lb.play(Drop(top_right))
    column = [Position(w - 1, y) for y in range(lower - 1, -1, -1)]
    for p in column:
        if p in c1 and p not in lb.board:
            lb.play(Drop(p))
    for p in column:
        if p in lb.board and p not in c1:
            lb.play(PickUp(p))

    upper = canonical_shape(Rectangle(0, lower, w, h - lower))
    lb.extend(normalize_on_path(lb.state, l_path(upper), l_coins(upper)))
    return upper


def sweep_chains(
    shape: LShape, lower: int
) -> Tuple[Tuple[Position, ...], Tuple[Position, ...]]:
    """The even chain of a left-bottom 'L' below row ``lower`` and the chain
    it is swept onto.

    The chain starts on the left column at row ``lower``, or one row
    higher when that cell is a gap. It is swept onto row ``lower`` and
    the right column.
    """
    r = shape.span
    coins = l_chain(shape).coins
    corner = Position(r.x0, r.y0 + lower)
    above = Position(r.x0, r.y0 + lower + 1)
    start = corner if corner in coins else above
    if start not in coins:
        raise SubroutineError(f"{start} holds no coin", "not_an_L")
    chain = coins[coins.index(start) :]
    if any(dist(a, b) != 2 for a, b in zip(chain, chain[1:])):
        raise SubroutineError(
            f"the chain from {start} holds the adjacent pair", "not_even"
        )
    if start == corner:
        below = Rectangle(r.x0, r.y0, r.m, lower + 1)
        return chain, l_chain(LShape(below, TOP_RIGHT)).coins
    beside = Rectangle(r.x0 + 1, r.y0, r.m - 1, lower + 1)
    return chain, (start,) + l_chain(LShape(beside, TOP_RIGHT)).coins


def _flip_sweep(
    lb: TraceBuilder, shape: LShape, lower: int, build: Configuration
) -> None:
    """Sweep the chain over Q up and right, dropping the coins of build
    behind it.

    The swaps sorting the swept chain back are played in reverse; each
    moves one coin a cell up and right along its anti-diagonal. A cell a
    coin leaves gets its building coin while both helpers are down. A
    helper cell keeps its coin after the last swap that uses it.
    """
    chain, swept = sweep_chains(shape, lower)
    swaps = column_first_swaps(swept, -1)
    sorted_chain = list(swept)
    for swap in swaps:
        sorted_chain[sorted_chain.index(swap.source)] = swap.target
    if tuple(sorted_chain) != chain:
        raise SubroutineError(
            "the swept chain does not sort back onto the 'L'", "not_an_L"
        )
    swaps.reverse()
    last_use: Dict[Position, int] = {}
    for index, swap in enumerate(swaps):
        for cell in swap.helpers:
            last_use[cell] = index

    corner = Position(shape.span.x0, shape.span.y0)
    if corner in build and corner not in lb.board:
        lb.play(Drop(corner))
    for index, swap in enumerate(swaps):
        a, b = swap.helpers
        lb.play(Drop(b), Drop(a), PickUp(swap.target), Drop(swap.source))
        if swap.target in build:
            lb.play(Drop(swap.target))
        for cell in (b, a):
            if cell not in build or last_use[cell] != index:
                lb.play(PickUp(cell))
    missing = build - lb.board
    if missing:
        raise SubroutineError(
            f"the sweep left {sorted(missing)[0]} empty", "unbuilt"
        )
    logger.debug(
        "swept %d coins over %d swaps, %d built",
        len(chain),
        len(swaps),
        len(build),
    )
