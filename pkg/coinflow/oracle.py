"""Exhaustive breadth-first reachability over configurations.

Boards are bit-packed over the bounding box of span(A); legal moves never
leave the span, so every reachable configuration fits in that box.
"""

# Core Library
import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, FrozenSet, List, Optional, Tuple, Union

# First party
from coinflow.exceptions import SearchExhausted
from coinflow.grid import Configuration, enclosing_rectangle
from coinflow.moves import Action, ActionSequence, Move
from coinflow.poking import PokingState, apply_poke, legal_pokes
from coinflow.search import Exhausted, SearchLimits
from coinflow.span import span
from coinflow.utils import BoardIndex, iter_bits

logger = logging.getLogger(__name__)


def _successors(index: BoardIndex, state: int) -> List[Tuple[int, int, int]]:
    """(next state, source bit, destination bit) for every legal move."""
    found = []
    for src in iter_bits(state):
        rest = state & ~(1 << src)
        targets = index.two_plus(rest) & ~state
        for dst in iter_bits(targets):
            found.append((rest | (1 << dst), src, dst))
    return found


def _index_for(a: Configuration) -> BoardIndex:
    return BoardIndex(enclosing_rectangle(span(a)))


def reachable_set(
    a: Configuration, limits: Optional[SearchLimits] = None
) -> Union[FrozenSet[Configuration], Exhausted]:
    """All configurations reachable from a by legal moves."""
    limits = limits or SearchLimits()
    if not a:
        return frozenset({a})
    index = _index_for(a)
    start = index.encode(a)
    seen = {start}
    queue: Deque[Tuple[int, int]] = deque([(start, 0)])
    while queue:
        state, depth = queue.popleft()
        if limits.max_depth is not None and depth >= limits.max_depth:
            continue
        for nxt, _, _ in _successors(index, state):
            if nxt in seen:
                continue
            seen.add(nxt)
            if len(seen) > limits.max_states:
                logger.info("reachable_set exhausted at %d states", len(seen))
                return Exhausted(len(seen), limits.max_states)
            queue.append((nxt, depth + 1))
    logger.debug("reachable_set found %d states", len(seen))
    return frozenset(index.decode(state) for state in seen)


@dataclass(frozen=True)
class SearchOutcome:
    """A shortest solution, or None, and the number of configurations
    seen. When there is no solution that number is the size of the
    reachable set; it is 0 when a quick check ruled the target out."""

    actions: Optional[ActionSequence]
    explored: int


def shortest_solution(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> Optional[ActionSequence]:
    """
    A shortest pure-move sequence from a to b, or None when unreachable.

    Raises SearchExhausted when the limits stop the search first.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> row = make_config([(0, 0), (2, 0)])
    >>> shortest_solution(row, row)
    ()
    """
    return breadth_first(a, b, limits).actions


def breadth_first(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SearchOutcome:
    """One breadth-first search from a towards b."""
    limits = limits or SearchLimits()
    if a == b:
        return SearchOutcome((), 1)
    if len(a) != len(b) or not span(b) <= span(a):
        return SearchOutcome(None, 0)
    index = _index_for(a)
    start = index.encode(a)
    goal = index.encode(b)
    parents: Dict[int, Tuple[int, int, int]] = {start: (-1, -1, -1)}
    queue: Deque[Tuple[int, int]] = deque([(start, 0)])
    truncated = False
    while queue:
        state, depth = queue.popleft()
        if limits.max_depth is not None and depth >= limits.max_depth:
            truncated = True
            continue
        for nxt, src, dst in _successors(index, state):
            if nxt in parents:
                continue
            parents[nxt] = (state, src, dst)
            if nxt == goal:
                logger.debug(
                    "shortest_solution: %d moves, %d states",
                    depth + 1,
                    len(parents),
                )
                return SearchOutcome(
                    _unwind(index, parents, goal), len(parents)
                )
            if len(parents) > limits.max_states:
                raise SearchExhausted(len(parents), limits.max_states)
            queue.append((nxt, depth + 1))
    if truncated:
        raise SearchExhausted(len(parents), limits.max_states)
    logger.debug("breadth_first: %d states, no solution", len(parents))
    return SearchOutcome(None, len(parents))


def _unwind(
    index: BoardIndex, parents: Dict[int, Tuple[int, int, int]], state: int
) -> ActionSequence:
    moves: List[Action] = []
    previous, src, dst = parents[state]
    while previous >= 0:
        moves.append(Move(index.position(src), index.position(dst)))
        state = previous
        previous, src, dst = parents[state]
    return tuple(reversed(moves))


def reachable_poking(
    m: Configuration, limits: Optional[SearchLimits] = None
) -> Union[FrozenSet[Configuration], Exhausted]:
    """Closure of m under pokes."""
    limits = limits or SearchLimits()
    start = PokingState(frozenset(m))
    seen = {start.config}
    queue: Deque[PokingState] = deque([start])
    while queue:
        state = queue.popleft()
        for poke in legal_pokes(state):
            nxt = apply_poke(state, poke)
            if nxt.config in seen:
                continue
            seen.add(nxt.config)
            if len(seen) > limits.max_states:
                return Exhausted(len(seen), limits.max_states)
            queue.append(nxt)
    return frozenset(seen)
