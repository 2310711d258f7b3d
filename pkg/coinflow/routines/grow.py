"""Growing the canonical 'L' of a span component coin by coin.

The 'L' starts on a seed coin and absorbs the nearest coin outside its
span, one at a time. It always hugs either its left and bottom sides or
its top and right sides, and a flip switches between the two. A local
frame turns every absorption into one of two cases:

* a coin beside the right side walks down along the right column of the
  top-right 'L' and is appended at the bottom-right corner;
* a coin diagonally below the bottom-right corner extends the chain,
  which swap macros sort back into a left-bottom 'L'.

Further coins beside the same column walk down and are picked up. Coins
the macros cannot reach are left to the planner while the span is small.
"""

# Core Library
import logging
from typing import Callable, List, Optional, Tuple

# First party
from coinflow.canonical import (
    LShape,
    SubroutineTrace,
    TraceBuilder,
    canonical_L,
    canonical_shape,
    empty_trace,
    l_chain,
    l_coins,
    l_path,
    normalize_on_path,
)
from coinflow.constants import (
    FALLBACK_PLANNER_AREA,
    GROWTH_SEEDS,
    LEFT_BOTTOM,
    TOP_RIGHT,
)
from coinflow.exceptions import (
    CoinflowError,
    SearchExhausted,
    SubroutineError,
)
from coinflow.grid import (
    Configuration,
    Position,
    Rectangle,
    dist,
    enclosing_rectangle,
)
from coinflow.moves import (
    ActionSequence,
    Drop,
    GameState,
    PickUp,
    invert_sequence,
    replay,
    transform_actions,
)
from coinflow.routines.flip import flip_L, sort_column_first
from coinflow.routines.leapfrog import leapfrog
from coinflow.search import SearchLimits, plan_hand_sequence
from coinflow.span import span_components
from coinflow.utils import Frame

logger = logging.getLogger(__name__)

Absorb = Callable[[TraceBuilder, LShape, Position], LShape]

FRAME_TURNS: Tuple[Tuple[bool, bool], ...] = (
    (False, False),
    (True, False),
    (False, True),
    (True, True),
)


def _shapes(rect: Rectangle, orientation: str) -> List[LShape]:
    if rect.is_even:
        return [LShape(rect, orientation)]
    top = LShape(rect, orientation, 0).max_pair_index
    return [LShape(rect, orientation, j) for j in range(top + 1)]


def hugging_shape(
    board: Configuration, rect: Rectangle
) -> Optional[LShape]:
    """The left-bottom or top-right 'L' formed by the coins in rect."""
    part = board & frozenset(rect.cells())
    for orientation in (LEFT_BOTTOM, TOP_RIGHT):
        for shape in _shapes(rect, orientation):
            if l_coins(shape) == part:
                return shape
    return None


def _extend(builder: TraceBuilder, trace: SubroutineTrace) -> LShape:
    builder.extend(trace)
    assert trace.shape is not None, "hint for mypy"  # noqa
    return trace.shape


def _orient(
    builder: TraceBuilder, shape: LShape, orientation: str
) -> LShape:
    if shape.orientation == orientation:
        return shape
    return _extend(builder, flip_L(builder.state, shape))


def _settle(
    builder: TraceBuilder, rect: Rectangle, orientation: str
) -> LShape:
    """Normalize the run along one path of rect onto the nearest 'L'."""
    shapes = _shapes(rect, orientation)
    path = l_path(shapes[0])
    on_path = builder.board & frozenset(path)
    target = min(shapes, key=lambda s: len(l_coins(s) ^ on_path))
    builder.extend(normalize_on_path(builder.state, path, l_coins(target)))
    return target


def _walk_down(builder: TraceBuilder, x: int, y: int, stop: int) -> None:
    """Walk the coin at (x + 1, y) down to row stop beside column x.

    Column x is the right column of a top-right 'L'; its gaps are filled
    for one step and emptied again.
    """
    while y > stop:
        fillers: List[Position] = []
        lower, upper = Position(x, y - 1), Position(x, y)
        if lower not in builder.board:
            builder.play(Drop(lower))
            fillers.append(lower)
        builder.play(Drop(Position(x + 1, y - 1)))
        if upper not in builder.board:
            builder.play(Drop(upper))
            fillers.append(upper)
        builder.play(PickUp(Position(x + 1, y)))
        builder.play(*(PickUp(p) for p in fillers))
        y -= 1


def _collect(builder: TraceBuilder, x: int, y: int) -> None:
    """Pick up the coin at (x + 1, y), which rests on (x + 1, y - 1)."""
    support = Position(x, y)
    filled = support not in builder.board
    if filled:
        builder.play(Drop(support))
    builder.play(PickUp(Position(x + 1, y)))
    if filled:
        builder.play(PickUp(support))


def _absorb_beside(
    builder: TraceBuilder, shape: LShape, coin: Position
) -> LShape:
    q = shape.span
    reach = coin.x - q.x1
    column = sorted(
        (p for p in builder.board if p.x == coin.x and q.y0 <= p.y <= q.y1),
        key=lambda p: p.y,
    )
    grown = Rectangle(q.x0, q.y0, q.m + reach, q.n)
    if reach == 1:
        shape = _orient(builder, shape, TOP_RIGHT)
        _walk_down(builder, q.x1, column[0].y, q.y0)
        for p in column[1:]:
            _walk_down(builder, q.x1, p.y, q.y0 + 1)
            _collect(builder, q.x1, q.y0 + 1)
        _orient(builder, shape, LEFT_BOTTOM)
        return _settle(builder, grown, LEFT_BOTTOM)
    if column[0].y != q.y0:
        raise SubroutineError(
            f"{coin} is two columns from {q} above its bottom row",
            "unsupported",
        )
    _orient(builder, shape, LEFT_BOTTOM)
    settled = _settle(builder, grown, LEFT_BOTTOM)
    if len(column) > 1:
        _orient(builder, settled, TOP_RIGHT)
        settled = _settle(builder, grown, TOP_RIGHT)
    return settled


def _absorb_diagonal(
    builder: TraceBuilder, shape: LShape, coin: Position
) -> LShape:
    shape = _orient(builder, shape, LEFT_BOTTOM)
    if shape.pair_index:
        shape = _extend(builder, leapfrog(builder.state, shape, 0))
    coins = list(l_chain(shape).coins) + [coin]
    builder.play(*sort_column_first(builder.board, coins, -1))
    q = shape.span
    grown = Rectangle(q.x0, q.y0 - 1, q.m + 1, q.n + 1)
    return _settle(builder, grown, LEFT_BOTTOM)


def _placement(
    board: Configuration, frame: Frame, q: Rectangle, coin: Position
) -> Optional[Absorb]:
    local = frame.rect_to_local(q)
    p = frame.to_local(coin)
    if p.x == local.x1 + 1 and p.y == local.y0 - 1:
        return _absorb_diagonal
    if not (p.x > local.x1 and local.y0 <= p.y <= local.y1):
        return None
    corner = frame.to_grid(Position(local.x1 + 2, local.y0))
    if p.x == local.x1 + 2 and corner not in board:
        return None
    return _absorb_beside


def _absorb(
    builder: TraceBuilder,
    frame: Frame,
    q: Rectangle,
    coin: Position,
    absorb: Absorb,
) -> Rectangle:
    local = TraceBuilder(
        GameState(frame.cells_to_local(builder.board), builder.hand)
    )
    shape = hugging_shape(local.board, frame.rect_to_local(q))
    if shape is None:
        raise SubroutineError(f"coins on {q} are not an 'L'", "not_an_L")
    grown = absorb(local, shape, frame.to_local(coin))
    builder.play(*transform_actions(local.actions, frame.to_grid))
    return frame.rect_to_grid(grown.span)


def _plan_growth(
    builder: TraceBuilder,
    q: Rectangle,
    coin: Position,
    limits: Optional[SearchLimits],
) -> Rectangle:
    grown = enclosing_rectangle([q.bottom_left, q.top_right, coin])
    if grown.area > FALLBACK_PLANNER_AREA:
        raise SubroutineError(
            f"no macro absorbs {coin} into {q}", "unsupported"
        )
    part = builder.board & frozenset(grown.cells())
    builder.play(
        *plan_hand_sequence(
            part,
            builder.hand,
            canonical_L(grown),
            grown,
            reversible=True,
            limits=limits,
        )
    )
    return grown


def _grow_from(
    state: GameState,
    rect: Rectangle,
    seed: Position,
    limits: Optional[SearchLimits],
) -> SubroutineTrace:
    builder = TraceBuilder(state)
    cells = frozenset(rect.cells())
    frames = [Frame(rect, t, h) for t, h in FRAME_TURNS]
    q = Rectangle(seed.x, seed.y, 1, 1)
    while q != rect:
        outside = [p for p in builder.board & cells if not q.contains(p)]
        if not outside:
            raise SubroutineError(f"{q} holds every coin of {rect}")
        gaps = {p: q.distance_to(Rectangle(p.x, p.y, 1, 1)) for p in outside}
        nearest = min(gaps.values())
        if nearest > 2:
            raise SubroutineError(
                f"no coin within two cells of {q}", "unsupported"
            )
        candidates = sorted(p for p in outside if gaps[p] == nearest)
        step = next(
            (
                (frame, absorb, coin)
                for coin in candidates
                for frame in frames
                for absorb in [_placement(builder.board, frame, q, coin)]
                if absorb is not None
            ),
            None,
        )
        if step is None:
            q = _plan_growth(builder, q, candidates[0], limits)
        else:
            frame, absorb, coin = step
            q = _absorb(builder, frame, q, coin, absorb)
    shape = hugging_shape(builder.board, rect)
    if shape is None:
        raise SubroutineError(f"coins on {rect} are not an 'L'", "not_an_L")
    shape = _orient(builder, shape, LEFT_BOTTOM)
    goal = canonical_shape(rect)
    if goal.pair_index is not None and shape.pair_index != goal.pair_index:
        _extend(builder, leapfrog(builder.state, shape, goal.pair_index))
    return builder.finish("grow", shape=goal)


def _seeds(coins: Configuration, rect: Rectangle) -> List[Position]:
    """Coins closest to either end of the canonical 'L' first."""

    def key(p: Position) -> Tuple[int, Position]:
        return min(dist(p, rect.top_left), dist(p, rect.bottom_right)), p

    return sorted(coins, key=key)[:GROWTH_SEEDS]


def grow_L(
    state: GameState, rect: Rectangle, limits: Optional[SearchLimits] = None
) -> SubroutineTrace:
    """
    Turn the coins of the span component rect into its canonical 'L'.

    Needs two coins in hand; every step is reversible. Raises
    SubroutineError when no seed can be grown.
    """
    coins = state.board & frozenset(rect.cells())
    if coins == canonical_L(rect):
        return empty_trace("grow", state, canonical_shape(rect))
    for seed in _seeds(coins, rect):
        try:
            trace = _grow_from(state, rect, seed, limits)
            trace.verify()
        except CoinflowError as error:
            logger.debug("growing %s from %s failed: %s", rect, seed, error)
            continue
        logger.debug(
            "grew %s from %s in %d actions", rect, seed, len(trace.forward)
        )
        return trace
    raise SubroutineError(f"no seed grows an 'L' on {rect}", "unsupported")


def _plan_component(
    part: Configuration,
    hand: int,
    goal: Configuration,
    rect: Rectangle,
    limits: Optional[SearchLimits],
) -> Tuple[ActionSequence, ActionSequence]:
    try:
        forward = plan_hand_sequence(
            part, hand, goal, rect, reversible=True, limits=limits
        )
        return forward, invert_sequence(forward)
    except (SubroutineError, SearchExhausted) as error:
        logger.debug("reversible plan on %s failed: %s", rect, error)
    forward = plan_hand_sequence(
        part, hand, goal, rect, reversible=False, limits=limits
    )
    backward = plan_hand_sequence(
        goal,
        hand + len(part) - len(goal),
        part,
        rect,
        reversible=False,
        limits=limits,
    )
    return forward, backward


def canonicalize(
    state: GameState, limits: Optional[SearchLimits] = None
) -> SubroutineTrace:
    """Turn the board into its canonical configuration with 2+ coins in
    hand; the backward trace restores the original state.

    Each component is grown into its 'L'. Components the growth cannot
    handle go to the planner when their span has at most
    FALLBACK_PLANNER_AREA cells.
    """
    if state.hand < 2:
        raise SubroutineError(
            f"canonicalizing needs two coins in hand, got {state.hand}",
            "insufficient_hand",
        )
    if not state.board:
        return empty_trace("canonicalize", state)
    builder = TraceBuilder(state)
    backwards: List[ActionSequence] = []
    for rect in span_components(state.board):
        cells = frozenset(rect.cells())
        part = builder.board & cells
        goal = canonical_L(rect)
        if part == goal:
            continue
        logger.debug("canonicalizing %d coins on %s", len(part), rect)
        try:
            trace = grow_L(builder.state, rect, limits)
        except SubroutineError:
            if rect.area > FALLBACK_PLANNER_AREA:
                raise
            forward, backward = _plan_component(
                part, builder.hand, goal, rect, limits
            )
            builder.play(*forward)
            backwards.append(backward)
            continue
        assert trace.backward is not None, "hint for mypy"  # noqa
        builder.extend(trace)
        backwards.append(trace.backward)
    backward = tuple(a for seq in reversed(backwards) for a in seq)
    trace = builder.finish("canonicalize", backward=backward)
    replay(trace.final, backward)
    return trace
