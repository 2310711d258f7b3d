# Core Library
import logging

# First party
from coinflow.canonical import (
    LShape,
    SubroutineTrace,
    TraceBuilder,
    empty_trace,
    l_coins,
    l_path,
)
from coinflow.exceptions import GeometryError, SubroutineError
from coinflow.moves import Drop, GameState, PickUp

logger = logging.getLogger(__name__)


def require_on_board(state: GameState, shape: LShape) -> None:
    missing = l_coins(shape) - state.board
    if missing:
        raise SubroutineError(
            f"'L' on {shape.span} misses {len(missing)} coins", "not_an_L"
        )


def leapfrog(
    state: GameState, shape: LShape, target_pair_index: int
) -> SubroutineTrace:
    """
    Walk the adjacent pair of an odd 'L' to another index, one step at a
    time, with a single coin in hand.

    Going up, the step from index j drops on path cell 2j + 2 and picks up
    2j + 1; going down it drops on 2j - 1 and picks up 2j.
    """
    if shape.pair_index is None:
        raise SubroutineError(
            f"'L' on {shape.span} is even and has no pair", "not_odd"
        )
    if not 0 <= target_pair_index <= shape.max_pair_index:
        raise GeometryError(
            f"pair index {target_pair_index} out of range on {shape.span}"
        )
    require_on_board(state, shape)
    target = LShape(shape.span, shape.orientation, target_pair_index)
    if target_pair_index == shape.pair_index:
        return empty_trace("leapfrog", state, target)
    if state.hand < 1:
        raise SubroutineError(
            "a leapfrog needs one coin in hand", "insufficient_hand"
        )
    path = l_path(shape)
    builder = TraceBuilder(state)
    j = shape.pair_index
    while j != target_pair_index:
        if j < target_pair_index:
            drop, pick = path[2 * j + 2], path[2 * j + 1]
            j += 1
        else:
            drop, pick = path[2 * j - 1], path[2 * j]
            j -= 1
        if drop in builder.board:
            raise SubroutineError(f"{drop} is occupied", "blocked")
        builder.play(Drop(drop), PickUp(pick))
    logger.debug(
        "leapfrog on %s: %d -> %d", shape.span, shape.pair_index, j
    )
    return builder.finish("leapfrog", shape=target)
