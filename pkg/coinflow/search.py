"""Search limits and the best-first planner over the hand model."""

# Core Library
import heapq
import itertools
import logging
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Set, Tuple

# First party
from coinflow.constants import (
    DEFAULT_MAX_STATES,
    DEFAULT_PLANNER_NODES,
    MAX_STATES_ENV,
    PLANNER_WEIGHT,
)
from coinflow.exceptions import SearchExhausted, SubroutineError
from coinflow.grid import Configuration, Rectangle
from coinflow.moves import Action, ActionSequence, Drop, PickUp
from coinflow.utils import BoardIndex, iter_bits, popcount

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchLimits:
    max_states: int = DEFAULT_MAX_STATES
    max_depth: Optional[int] = None

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise ValueError("max_states must be positive")
        if self.max_depth is not None and self.max_depth < 1:
            raise ValueError("max_depth must be positive")

    @classmethod
    def from_env(cls, max_depth: Optional[int] = None) -> "SearchLimits":
        raw = os.environ.get(MAX_STATES_ENV)
        if raw is None:
            return cls(max_depth=max_depth)
        try:
            value = int(raw)
            if value < 1:
                raise ValueError(raw)
        except ValueError:
            logger.warning(
                "ignoring %s=%r, using %d",
                MAX_STATES_ENV,
                raw,
                DEFAULT_MAX_STATES,
            )
            return cls(max_depth=max_depth)
        return cls(max_states=value, max_depth=max_depth)


@dataclass(frozen=True)
class Exhausted:
    """Returned instead of a result when a search hits its limits."""

    explored: int
    limit: int


def plan_hand_sequence(
    board: Configuration,
    hand: int,
    goal: Configuration,
    frame: Rectangle,
    reversible: bool = True,
    movable: Optional[Configuration] = None,
    limits: Optional[SearchLimits] = None,
) -> ActionSequence:
    """Find drops and pick-ups turning board into goal.

    Only cells of ``frame`` are touched, and only cells of ``movable`` when
    it is given. In reversible mode a coin is picked up only while it keeps
    two occupied neighbours, so every step can be undone. The search is a
    weighted best-first search on the number of differing cells; it raises
    SearchExhausted when its node budget runs out and SubroutineError
    ("unreachable") when the goal cannot be reached.
    """
    index = BoardIndex(frame)
    start = index.encode(board)
    target = index.encode(goal)
    total = len(board) + hand
    if len(goal) > total:
        raise SubroutineError(
            f"goal needs {len(goal)} coins, only {total} available",
            "insufficient_hand",
        )
    allowed = index.full if movable is None else index.encode(movable)
    fixed = index.full & ~allowed
    if (start ^ target) & fixed:
        raise SubroutineError(
            "goal differs from the board outside the movable cells",
            "unreachable",
        )
    budget = DEFAULT_PLANNER_NODES if limits is None else limits.max_states

    parents: Dict[int, Tuple[int, int, bool]] = {start: (-1, -1, False)}
    best_g: Dict[int, int] = {start: 0}
    tie = itertools.count()
    heap: List[Tuple[int, int, int, int, int]] = [
        (PLANNER_WEIGHT * popcount(start ^ target), 0, next(tie), 0, start)
    ]
    closed: Set[int] = set()
    while heap:
        _, _, _, g, state = heapq.heappop(heap)
        if state in closed:
            continue
        if state == target:
            logger.debug("planner reached goal after %d nodes", len(closed))
            return _unwind(index, parents, state)
        closed.add(state)
        if len(closed) > budget:
            raise SearchExhausted(len(closed), budget)
        in_hand = total - popcount(state)
        two_plus = index.two_plus(state)
        successors = []
        if in_hand > 0:
            for bit in iter_bits(two_plus & ~state & allowed):
                successors.append((state | (1 << bit), bit, True))
        pickable = state & allowed
        if reversible:
            pickable &= two_plus
        for bit in iter_bits(pickable):
            successors.append((state & ~(1 << bit), bit, False))
        for nxt, bit, dropped in successors:
            if nxt in closed or best_g.get(nxt, g + 2) <= g + 1:
                continue
            best_g[nxt] = g + 1
            parents[nxt] = (state, bit, dropped)
            h = popcount(nxt ^ target)
            heapq.heappush(
                heap, (g + 1 + PLANNER_WEIGHT * h, h, next(tie), g + 1, nxt)
            )
    raise SubroutineError(
        f"no drop/pick-up sequence reaches the goal in {frame}", "unreachable"
    )


def _unwind(
    index: BoardIndex, parents: Dict[int, Tuple[int, int, bool]], state: int
) -> ActionSequence:
    actions: List[Action] = []
    while True:
        previous, bit, dropped = parents[state]
        if previous < 0:
            break
        cell = index.position(bit)
        actions.append(Drop(cell) if dropped else PickUp(cell))
        state = previous
    actions.reverse()
    return tuple(actions)
