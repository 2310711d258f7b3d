"""The poking game on minimum configurations with one adjacent pair.

A poke slides a coin of the adjacent pair onto a free neighbour that has
another occupied neighbour. Minimum chains are handled in a word model:
walking from the first coin, every step is a block of two unit jumps
except the single-jump step between the pair, which acts as a cursor.
Pokes move the cursor one step along the chain.
"""

# Core Library
import logging
from collections import deque
from dataclasses import dataclass
from typing import Deque, Dict, List, Optional, Tuple, Union

# First party
from coinflow.exceptions import PokingError, SearchExhausted, SequenceError
from coinflow.grid import (
    Configuration,
    Position,
    dist,
    enclosing_rectangle,
    neighbor_list,
)
from coinflow.moves import (
    ActionSequence,
    GameState,
    Move,
    legal_moves,
    occupied_neighbors,
    replay,
    single_move,
)
from coinflow.search import SearchLimits
from coinflow.span import (
    adjacent_pairs,
    find_redundant_coins,
    is_minimum,
    span,
    span_components,
)
from coinflow.verdicts import (
    NecessaryCondition,
    SolveOutcome,
    Solved,
    Unknown,
    Unsolvable,
)

logger = logging.getLogger(__name__)

Poke = Tuple[Position, Position]
Step = Tuple[int, int]  # (jumps toward the far corner in x, jumps down)

RIGHT: Step = (1, 0)
DOWN: Step = (0, 1)

StateLike = Union["PokingState", Configuration]


def is_poking_state(config: Configuration) -> bool:
    return (
        len(config) >= 2
        and adjacent_pairs(config) == 1
        and is_minimum(config)
    )


@dataclass(frozen=True)
class PokingState:
    config: Configuration

    def __post_init__(self) -> None:
        if not is_poking_state(self.config):
            raise PokingError(
                "a poking state is a minimum configuration with exactly one "
                "pair of adjacent coins",
                "precondition_violated",
            )

    @property
    def pair(self) -> Tuple[Position, Position]:
        for p in sorted(self.config):
            for q in (Position(p.x + 1, p.y), Position(p.x, p.y + 1)):
                if q in self.config:
                    return p, q
        raise AssertionError("poking state without a pair")


def _as_state(m: StateLike) -> PokingState:
    return m if isinstance(m, PokingState) else PokingState(frozenset(m))


def legal_pokes(state: PokingState) -> List[Poke]:
    config = state.config
    pokes = []
    for coin in state.pair:
        for p in neighbor_list(coin):
            if p in config:
                continue
            if occupied_neighbors(config, p, mover=coin) >= 1:
                pokes.append((coin, p))
    return sorted(pokes)


def apply_poke(state: PokingState, poke: Poke) -> PokingState:
    if poke not in legal_pokes(state):
        raise PokingError(
            f"{poke[0]} -> {poke[1]} is not a poke", "illegal_poke"
        )
    coin, p = poke
    return PokingState((state.config - {coin}) | {p})


@dataclass(frozen=True)
class ChainDecomposition:
    order: Tuple[Position, ...]
    pair_index: int
    endpoints: Tuple[Position, Position]


def chain_decompose(config: Configuration) -> Optional[ChainDecomposition]:
    """Order a minimum chain with one adjacent pair from corner to corner."""
    if not is_poking_state(config):
        return None
    if len(span_components(config)) != 1:
        return None
    box = enclosing_rectangle(config)
    for sx, start, end in (
        (1, box.top_left, box.bottom_right),
        (-1, box.top_right, box.bottom_left),
    ):
        order = tuple(sorted(config, key=lambda p: (sx * p.x - p.y, p.x)))
        if order[0] != start or order[-1] != end:
            continue
        gaps = [dist(a, b) for a, b in zip(order, order[1:])]
        monotone = all(
            sx * (b.x - a.x) >= 0 and b.y - a.y <= 0
            for a, b in zip(order, order[1:])
        )
        if monotone and set(gaps) <= {1, 2} and gaps.count(1) == 1:
            return ChainDecomposition(order, gaps.index(1), (start, end))
    return None


class _ChainWord:
    """Mutable word of a chain in the frame of its first coin."""

    def __init__(self, chain: ChainDecomposition) -> None:
        self.origin = chain.order[0]
        self.sx = 1 if chain.order[-1].x >= self.origin.x else -1
        self.coins = list(chain.order)
        self.steps: List[Step] = [
            (self.sx * (b.x - a.x), a.y - b.y)
            for a, b in zip(self.coins, self.coins[1:])
        ]
        self.cursor = chain.pair_index
        self.pokes: List[Poke] = []

    def _at(self, base: Position, step: Step) -> Position:
        return Position(base.x + self.sx * step[0], base.y - step[1])

    def move_right(self) -> None:
        i = self.cursor
        u, block = self.steps[i], self.steps[i + 1]
        new_cursor = RIGHT if block[0] >= 1 else DOWN
        new_block = (
            u[0] + block[0] - new_cursor[0],
            u[1] + block[1] - new_cursor[1],
        )
        self.steps[i], self.steps[i + 1] = new_block, new_cursor
        moved = self._at(self.coins[i], new_block)
        self.pokes.append((self.coins[i + 1], moved))
        self.coins[i + 1] = moved
        self.cursor = i + 1

    def move_left(self) -> None:
        i = self.cursor
        block, u = self.steps[i - 1], self.steps[i]
        new_cursor = DOWN if block[1] >= 1 else RIGHT
        new_block = (
            u[0] + block[0] - new_cursor[0],
            u[1] + block[1] - new_cursor[1],
        )
        self.steps[i - 1], self.steps[i] = new_cursor, new_block
        moved = self._at(self.coins[i - 1], new_cursor)
        self.pokes.append((self.coins[i], moved))
        self.coins[i] = moved
        self.cursor = i - 1

    def disorder(self) -> int:
        """Pairs of a right jump written before a down jump.

        Blocks are written with their down jumps first.
        """
        units = []
        for step in self.steps:
            units.extend("D" * step[1] + "R" * step[0])
        inversions = 0
        rights = 0
        for unit in units:
            if unit == "R":
                rights += 1
            else:
                inversions += rights
        return inversions

    def to_normal_form(self) -> List[Poke]:
        while self.cursor > 0:
            self.move_left()
        while self.disorder() > 0:
            while self.cursor < len(self.steps) - 1:
                self.move_right()
            while self.cursor > 0:
                self.move_left()
        return self.pokes


def pokes_to_normal_form(chain: ChainDecomposition) -> List[Poke]:
    """Pokes taking a chain to the chain hugging the sides through its
    first coin's vertical side, with the pair at the first coin."""
    return _ChainWord(chain).to_normal_form()


def chain_poking_decide(m: StateLike, m_prime: StateLike) -> bool:
    first = _as_state(m).config
    second = _as_state(m_prime).config
    chain = chain_decompose(first)
    if chain is None:
        raise PokingError(
            f"{sorted(first)} is not a minimum chain", "not_a_chain"
        )
    other = chain_decompose(second)
    if other is None:
        return False
    same_corners = set(chain.endpoints) == set(other.endpoints)
    return same_corners and span(first) == span(second)


def chain_poking_solve(m: StateLike, m_prime: StateLike) -> List[Poke]:
    first = _as_state(m).config
    second = _as_state(m_prime).config
    if not chain_poking_decide(first, second):
        raise PokingError(
            "the target is not a minimum chain between the same corners",
            "not_reachable",
        )
    if first == second:
        return []
    chain = chain_decompose(first)
    other = chain_decompose(second)
    assert chain is not None and other is not None, "hint for mypy"  # noqa
    forward = pokes_to_normal_form(chain)
    backward = pokes_to_normal_form(other)
    return forward + [(p, coin) for coin, p in reversed(backward)]


def poke_path(
    m: StateLike,
    m_prime: StateLike,
    limits: Optional[SearchLimits] = None,
) -> Optional[List[Poke]]:
    """Breadth-first search over pokes; None when unreachable."""
    limits = limits or SearchLimits()
    start = _as_state(m)
    goal = _as_state(m_prime).config
    parents: Dict[Configuration, Optional[Tuple[Configuration, Poke]]] = {
        start.config: None
    }
    queue: Deque[Tuple[PokingState, int]] = deque([(start, 0)])
    truncated = False
    while queue:
        state, depth = queue.popleft()
        if state.config == goal:
            pokes: List[Poke] = []
            config = goal
            link = parents[config]
            while link is not None:
                config, poke = link
                pokes.append(poke)
                link = parents[config]
            return pokes[::-1]
        if limits.max_depth is not None and depth >= limits.max_depth:
            truncated = True
            continue
        for poke in legal_pokes(state):
            nxt = apply_poke(state, poke)
            if nxt.config in parents:
                continue
            parents[nxt.config] = (state.config, poke)
            if len(parents) > limits.max_states:
                raise SearchExhausted(len(parents), limits.max_states)
            queue.append((nxt, depth + 1))
    if truncated:
        raise SearchExhausted(len(parents), limits.max_states)
    return None


def assemble_min_plus1_moves(
    first_move: Tuple[Position, Position],
    a: Position,
    pokes: List[Poke],
    b: Position,
) -> ActionSequence:
    """Moves c1 -> p1, a -> p2, c2 -> p3, ..., cT -> b from the pokes
    (c2 -> p2), ..., (cT -> pT)."""
    steps = [first_move]
    mover = a
    for coin, p in pokes:
        steps.append((mover, p))
        mover = coin
    steps.append((mover, b))
    return tuple(Move(src, dst) for src, dst in steps if src != dst)


def _b_candidates(b_config: Configuration) -> List[Position]:
    found = find_redundant_coins(b_config, 1)
    if found is None:
        return []
    (b0,) = found
    candidates = [b0]
    rest = b_config - {b0}
    for p in sorted(rest):
        paired = any(q in rest for q in neighbor_list(p))
        if paired and occupied_neighbors(b_config, p) >= 2:
            candidates.append(p)
    return candidates


def min_plus1_shape(a: Configuration, b: Configuration) -> Optional[str]:
    """Parity of the common single-rectangle span when both sides are
    minimum plus one coin, else None."""
    if not a or len(a) != len(b) or span(a) != span(b):
        return None
    components = span_components(a)
    if len(components) != 1:
        return None
    (rect,) = components.rectangles
    if len(a) != (rect.m + rect.n + 1) // 2 + 1:
        return None
    region = span(a)
    for config in (a, b):
        if not any(span(config - {c}) == region for c in config):
            return None
    return rect.parity


def _pokes_between(
    m: Configuration, m_prime: Configuration, limits: Optional[SearchLimits]
) -> Optional[List[Poke]]:
    if m == m_prime:
        return []
    if chain_decompose(m) is not None:
        if not chain_poking_decide(m, m_prime):
            return None
        return chain_poking_solve(m, m_prime)
    if chain_decompose(m_prime) is not None:
        return None
    return poke_path(m, m_prime, limits)


def min_plus1_search(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> Tuple[Optional[ActionSequence], bool]:
    """Reduce a minimum+1 puzzle on an odd span to poking instances.

    Returns the move sequence when one is found, and whether every
    candidate was decided. A candidate whose moves do not replay onto b
    stays undecided, as does one cut off by the limits.
    """
    region = span(a)
    b_options = [
        coin for coin in _b_candidates(b) if is_poking_state(b - {coin})
    ]
    complete = True
    for c1, p1 in legal_moves(a):
        a1 = (a - {c1}) | {p1}
        if span(a1) != region:
            continue
        for coin in neighbor_list(p1):
            if coin not in a1 or not is_poking_state(a1 - {coin}):
                continue
            for b_coin in b_options:
                try:
                    pokes = _pokes_between(a1 - {coin}, b - {b_coin}, limits)
                except SearchExhausted:
                    complete = False
                    continue
                if pokes is None:
                    continue
                moves = assemble_min_plus1_moves(
                    (c1, p1), coin, pokes, b_coin
                )
                try:
                    final = replay(GameState(a), moves)
                except SequenceError as error:
                    logger.warning("candidate does not replay: %s", error)
                    complete = False
                    continue
                if final.board != b:
                    logger.warning("candidate ends away from the target")
                    complete = False
                    continue
                return moves, True
    return None, complete


def solve_min_plus1(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    method = "min-plus1"
    parity = min_plus1_shape(a, b)
    if parity is None:
        return SolveOutcome(
            Unknown("not a minimum+1 puzzle on one rectangle"), method
        )
    if a == b:
        return SolveOutcome(Solved(()), method)
    step = single_move(a, b)
    if step is not None:
        return SolveOutcome(Solved((Move(*step),)), method)
    if parity == "even":
        return SolveOutcome(
            Unsolvable(
                NecessaryCondition(
                    "single_move_impossible",
                    "an even minimum+1 span only allows single moves",
                )
            ),
            method,
        )
    moves, complete = min_plus1_search(a, b, limits)
    if moves is not None:
        return SolveOutcome(Solved(moves), method)
    if not complete:
        return SolveOutcome(
            Unknown("poking search left candidates undecided"), method
        )
    return SolveOutcome(
        Unsolvable(
            NecessaryCondition(
                "poking_unreachable",
                "no first move connects the two sides through pokes",
            )
        ),
        method,
    )
