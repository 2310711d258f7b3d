"""Shrinking an 'L' side by side.

Each orientation's path starts on one free side and ends on the other;
trimming there moves the pair out of the way, drops the new end coin if
it is missing and picks up everything beyond it. The two hugged sides
are trimmed on the mirrored 'L'. Trims give coins back to the hand and
cannot be undone.
"""

# Core Library
import logging
from typing import Dict, Tuple

# First party
from coinflow.canonical import (
    LShape,
    SubroutineTrace,
    TraceBuilder,
    canonical_shape,
    empty_trace,
    l_path,
)
from coinflow.constants import (
    BOTTOM_RIGHT,
    LEFT_BOTTOM,
    LEFT_TOP,
    SIDES,
    TOP_RIGHT,
)
from coinflow.exceptions import GeometryError, SubroutineError
from coinflow.grid import Rectangle
from coinflow.moves import Drop, GameState, PickUp
from coinflow.routines.flip import flip_L
from coinflow.routines.leapfrog import leapfrog, require_on_board

logger = logging.getLogger(__name__)

# (side where the path starts, side where it ends)
PATH_SIDES: Dict[str, Tuple[str, str]] = {
    LEFT_BOTTOM: ("top", "right"),
    TOP_RIGHT: ("left", "bottom"),
    LEFT_TOP: ("bottom", "right"),
    BOTTOM_RIGHT: ("left", "top"),
}


def trimmed_rectangle(rect: Rectangle, side: str, amount: int) -> Rectangle:
    """
    The rectangle left after removing amount columns or rows on side.

    Examples
    --------
    >>> print(trimmed_rectangle(Rectangle(0, 0, 7, 4), "right", 3))
    4x4@(0,0)
    """
    if side not in SIDES:
        raise ValueError(f"unknown side {side!r}")
    horizontal = side in ("left", "right")
    remaining = (rect.m if horizontal else rect.n) - amount
    if amount < 0 or remaining < 1:
        raise SubroutineError(
            f"cannot trim {amount} from the {side} of {rect}",
            "amount_too_large",
        )
    if side == "left":
        return Rectangle(rect.x0 + amount, rect.y0, remaining, rect.n)
    if side == "right":
        return Rectangle(rect.x0, rect.y0, remaining, rect.n)
    if side == "bottom":
        return Rectangle(rect.x0, rect.y0 + amount, rect.m, remaining)
    return Rectangle(rect.x0, rect.y0, rect.m, remaining)


def _trim_end(builder: TraceBuilder, shape: LShape, amount: int) -> LShape:
    if shape.pair_index is not None:
        builder.extend(leapfrog(builder.state, shape, shape.max_pair_index))
    path = l_path(shape)
    last = len(path) - amount - 1
    if path[last] not in builder.board:
        builder.play(Drop(path[last]))
    for p in reversed(path[last + 1 :]):
        if p in builder.board:
            builder.play(PickUp(p))
    rect = trimmed_rectangle(
        shape.span, PATH_SIDES[shape.orientation][1], amount
    )
    length = len(path) - amount
    pair_index = None if rect.is_even else (length - 2) // 2
    return LShape(rect, shape.orientation, pair_index)


def _trim_start(builder: TraceBuilder, shape: LShape, amount: int) -> LShape:
    if shape.pair_index is not None:
        builder.extend(leapfrog(builder.state, shape, 0))
    path = l_path(shape)
    if path[amount] not in builder.board:
        builder.play(Drop(path[amount]))
    for p in path[:amount]:
        if p in builder.board:
            builder.play(PickUp(p))
    rect = trimmed_rectangle(
        shape.span, PATH_SIDES[shape.orientation][0], amount
    )
    return LShape(rect, shape.orientation, None if rect.is_even else 0)


def _trim(
    builder: TraceBuilder, shape: LShape, side: str, amount: int
) -> LShape:
    start, end = PATH_SIDES[shape.orientation]
    if side == end:
        return _trim_end(builder, shape, amount)
    if side == start:
        return _trim_start(builder, shape, amount)
    flipped = flip_L(builder.state, shape)
    builder.extend(flipped)
    assert flipped.shape is not None, "hint for mypy"  # noqa
    trimmed = _trim(builder, flipped.shape, side, amount)
    back = flip_L(builder.state, trimmed)
    builder.extend(back)
    assert back.shape is not None, "hint for mypy"  # noqa
    return back.shape


def trim_L(
    state: GameState, shape: LShape, side: str, amount: int
) -> SubroutineTrace:
    """Shrink an 'L' by amount columns or rows on one side."""
    trimmed_rectangle(shape.span, side, amount)
    require_on_board(state, shape)
    if amount == 0:
        return empty_trace("trim", state, shape)
    if state.hand < 2:
        raise SubroutineError(
            f"trimming needs two coins in hand, got {state.hand}",
            "insufficient_hand",
        )
    builder = TraceBuilder(state)
    result = _trim(builder, shape, side, amount)
    logger.debug("trimmed %s to %s", shape.span, result.span)
    return builder.finish("trim", reversible=False, shape=result)


def shrink_L(
    state: GameState, shape: LShape, target: Rectangle
) -> SubroutineTrace:
    """Shrink a letter-L oriented 'L' to the canonical 'L' of a smaller
    rectangle inside its span."""
    rect = shape.span
    if not rect.contains_rectangle(target):
        raise GeometryError(f"{target} does not lie inside {rect}")
    if shape.orientation not in (LEFT_BOTTOM, TOP_RIGHT):
        raise SubroutineError(
            f"cannot shrink a {shape.orientation} 'L'", "not_an_L"
        )
    require_on_board(state, shape)
    if state.hand < 2:
        raise SubroutineError(
            f"shrinking needs two coins in hand, got {state.hand}",
            "insufficient_hand",
        )
    builder = TraceBuilder(state)
    current = shape
    for side, amount in (
        ("right", rect.x1 - target.x1),
        ("top", rect.y1 - target.y1),
        ("left", target.x0 - rect.x0),
        ("bottom", target.y0 - rect.y0),
    ):
        if amount:
            current = _trim(builder, current, side, amount)
    goal = canonical_shape(target)
    if current.orientation != goal.orientation:
        flipped = flip_L(builder.state, current)
        builder.extend(flipped)
        assert flipped.shape is not None, "hint for mypy"  # noqa
        current = flipped.shape
    if current.pair_index != goal.pair_index:
        assert goal.pair_index is not None, "hint for mypy"  # noqa
        builder.extend(leapfrog(builder.state, current, goal.pair_index))
    return builder.finish("shrink", reversible=False, shape=goal)
