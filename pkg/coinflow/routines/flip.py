"""Flipping an 'L' onto the two sides it does not hug.

Both 'L's of a span run between the same two corners. An even 'L' is
written as steps of two unit jumps from its first coin; swapping a jump
along the row with a jump along the column between neighbouring steps
takes two coins in hand. Sorting the column jumps first gives the same
chain from both 'L's, so the flip goes there and back. An odd 'L' flips
by pokes, each played as a drop and a pick-up with one coin in hand.
"""

# Core Library
import logging
from typing import List, NamedTuple, Sequence, Tuple

# First party
from coinflow.canonical import (
    LShape,
    SubroutineTrace,
    TraceBuilder,
    empty_trace,
    l_chain,
    l_coins,
    mirror,
)
from coinflow.constants import LEFT_BOTTOM, TOP_RIGHT
from coinflow.exceptions import SubroutineError
from coinflow.grid import Configuration, Position
from coinflow.moves import (
    Action,
    ActionSequence,
    Drop,
    GameState,
    PickUp,
    invert_sequence,
)
from coinflow.poking import chain_poking_solve
from coinflow.routines.leapfrog import require_on_board

logger = logging.getLogger(__name__)

Jumps = Tuple[int, int]  # (along the row, along the column)


class Swap(NamedTuple):
    """The coin on ``source`` moves to ``target`` while both helper cells
    hold a coin."""

    source: Position
    target: Position
    helpers: Tuple[Position, Position]

    def actions(self) -> ActionSequence:
        a, b = self.helpers
        return (
            Drop(a),
            Drop(b),
            PickUp(self.source),
            Drop(self.target),
            PickUp(a),
            PickUp(b),
        )


def column_first_swaps(coins: Sequence[Position], down: int) -> List[Swap]:
    """Swaps sorting a monotone chain into column jumps first.

    Steps are two jumps long; only a leading step may be a single jump.
    Every swap moves one coin a cell back along both axes, so a coin never
    leaves its anti-diagonal.
    """
    chain = list(coins)
    steps: List[Jumps] = [
        (b.x - a.x, (b.y - a.y) * down) for a, b in zip(chain, chain[1:])
    ]

    def at(base: Position, jumps: Jumps) -> Position:
        return Position(base.x + jumps[0], base.y + jumps[1] * down)

    swaps: List[Swap] = []
    while True:
        index = next(
            (
                i
                for i in range(len(steps) - 1)
                if steps[i][0] >= 1 and steps[i + 1][1] >= 1
            ),
            None,
        )
        if index is None:
            return swaps
        first, second = steps[index], steps[index + 1]
        c_prev, c_mid = chain[index], chain[index + 1]
        new_first = (first[0] - 1, first[1] + 1)
        t = at(c_prev, new_first)
        a = at(c_prev, (first[0] - 1, first[1]))
        swaps.append(Swap(c_mid, t, (a, at(c_mid, (0, 1)))))
        chain[index + 1] = t
        steps[index] = new_first
        steps[index + 1] = (second[0] + 1, second[1] - 1)


def sort_column_first(
    board: Configuration, coins: Sequence[Position], down: int
) -> ActionSequence:
    """Swap macros sorting a monotone chain into column jumps first."""
    occupied = set(board)
    actions: List[Action] = []
    for swap in column_first_swaps(coins, down):
        for cell in (*swap.helpers, swap.target):
            if cell in occupied:
                raise SubroutineError(f"{cell} is occupied", "blocked")
        actions += swap.actions()
        occupied.discard(swap.source)
        occupied.add(swap.target)
    return tuple(actions)


def flip_L(state: GameState, shape: LShape) -> SubroutineTrace:
    """Replace an 'L' by its mirror; even 'L's need two coins in hand,
    odd ones one."""
    require_on_board(state, shape)
    target = mirror(shape)
    name = "flip_even" if shape.is_even else "flip_odd"
    if shape.span.m == 1 or shape.span.n == 1:
        return empty_trace(name, state, target)
    needed = 2 if shape.is_even else 1
    if state.hand < needed:
        raise SubroutineError(
            f"flipping an {'even' if shape.is_even else 'odd'} 'L' needs "
            f"{needed} coins in hand, got {state.hand}",
            "insufficient_hand",
        )
    builder = TraceBuilder(state)
    if shape.is_even:
        down = -1 if shape.orientation in (LEFT_BOTTOM, TOP_RIGHT) else 1
        others = state.board - l_coins(shape)
        there = sort_column_first(
            state.board, list(l_chain(shape).coins), down
        )
        back = sort_column_first(
            others | l_coins(target), list(l_chain(target).coins), down
        )
        builder.play(*there, *invert_sequence(back))
    else:
        for coin, p in chain_poking_solve(l_coins(shape), l_coins(target)):
            builder.play(Drop(p), PickUp(coin))
    logger.debug(
        "%s on %s: %d actions", name, shape.span, len(builder.actions)
    )
    return builder.finish(name, shape=target)
