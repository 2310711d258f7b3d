"""Chains, 'L' shapes and canonical configurations.

An 'L' is a minimum chain hugging two consecutive sides of its span. Its
coins sit on a path of m + n - 1 cells running from one corner through
the bend to the opposite corner: every second cell for an even 'L', and
for an odd 'L' every second cell with one adjacent pair, whose position
is the pair index.
"""

# Core Library
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

# First party
from coinflow.constants import (
    BOTTOM_RIGHT,
    LEFT_BOTTOM,
    LEFT_TOP,
    ORIENTATIONS,
    TOP_RIGHT,
)
from coinflow.exceptions import GeometryError, SubroutineError
from coinflow.grid import (
    Configuration,
    Position,
    Rectangle,
    dist,
    enclosing_rectangle,
)
from coinflow.moves import (
    Action,
    ActionSequence,
    Drop,
    GameState,
    PickUp,
    apply,
    invert_sequence,
    validate_sequence,
)
from coinflow.span import span_components

MIRRORS = {
    LEFT_BOTTOM: TOP_RIGHT,
    TOP_RIGHT: LEFT_BOTTOM,
    LEFT_TOP: BOTTOM_RIGHT,
    BOTTOM_RIGHT: LEFT_TOP,
}


@dataclass(frozen=True)
class Chain:
    coins: Tuple[Position, ...]

    def __post_init__(self) -> None:
        for first, second in zip(self.coins, self.coins[1:]):
            if dist(first, second) not in (1, 2):
                raise GeometryError(
                    f"{first} and {second} are not chained", "not_a_chain"
                )

    @property
    def endpoints(self) -> Tuple[Position, Position]:
        return self.coins[0], self.coins[-1]


@dataclass(frozen=True)
class LShape:
    span: Rectangle
    orientation: str = LEFT_BOTTOM
    pair_index: Optional[int] = None

    def __post_init__(self) -> None:
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.is_even:
            if self.pair_index is not None:
                raise GeometryError(
                    f"even 'L' on {self.span} has no adjacent pair"
                )
        elif self.pair_index is None or not (
            0 <= self.pair_index <= self.max_pair_index
        ):
            raise GeometryError(
                f"pair index {self.pair_index} out of range on {self.span}"
            )

    @property
    def is_even(self) -> bool:
        return self.span.is_even

    @property
    def path_length(self) -> int:
        return self.span.m + self.span.n - 1

    @property
    def max_pair_index(self) -> int:
        return (self.path_length - 2) // 2

    @property
    def cardinality(self) -> int:
        return (self.span.m + self.span.n + 1) // 2


def l_path(shape: LShape) -> Tuple[Position, ...]:
    r = shape.span
    down_left = [Position(r.x0, y) for y in range(r.y1, r.y0 - 1, -1)]
    up_left = [Position(r.x0, y) for y in range(r.y0, r.y1 + 1)]
    if shape.orientation == LEFT_BOTTOM:
        rest = [Position(x, r.y0) for x in range(r.x0 + 1, r.x1 + 1)]
        return tuple(down_left + rest)
    if shape.orientation == LEFT_TOP:
        rest = [Position(x, r.y1) for x in range(r.x0 + 1, r.x1 + 1)]
        return tuple(up_left + rest)
    if shape.orientation == TOP_RIGHT:
        row = [Position(x, r.y1) for x in range(r.x0, r.x1 + 1)]
        column = [Position(r.x1, y) for y in range(r.y1 - 1, r.y0 - 1, -1)]
        return tuple(row + column)
    row = [Position(x, r.y0) for x in range(r.x0, r.x1 + 1)]
    column = [Position(r.x1, y) for y in range(r.y0 + 1, r.y1 + 1)]
    return tuple(row + column)


def path_indices(length: int, pair_index: Optional[int]) -> List[int]:
    """
    Occupied indices of an 'L' path.

    Examples
    --------
    >>> path_indices(5, None)
    [0, 2, 4]
    >>> path_indices(6, 1)
    [0, 2, 3, 5]
    """
    if pair_index is None:
        return list(range(0, length, 2))
    head = list(range(0, 2 * pair_index + 1, 2))
    return head + list(range(2 * pair_index + 1, length, 2))


def l_coins(shape: LShape) -> Configuration:
    path = l_path(shape)
    return frozenset(
        path[i] for i in path_indices(len(path), shape.pair_index)
    )


def l_chain(shape: LShape) -> Chain:
    path = l_path(shape)
    return Chain(
        tuple(path[i] for i in path_indices(len(path), shape.pair_index))
    )


def mirror(shape: LShape) -> LShape:
    """The 'L' hugging the other two sides, same pair index."""
    return LShape(shape.span, MIRRORS[shape.orientation], shape.pair_index)


def shape_of(config: Configuration) -> Optional[LShape]:
    """Recognise config as an 'L', preferring the left-bottom orientation."""
    if not config:
        return None
    box = enclosing_rectangle(config)
    first = LShape(box, LEFT_BOTTOM, None if box.is_even else 0)
    if len(config) != first.cardinality:
        return None
    pair_options: Sequence[Optional[int]] = (
        [None] if box.is_even else range(first.max_pair_index + 1)
    )
    for orientation in ORIENTATIONS:
        for pair_index in pair_options:
            shape = LShape(box, orientation, pair_index)
            if l_coins(shape) == config:
                return shape
    return None


def canonical_shape(rect: Rectangle) -> LShape:
    """Letter-L orientation; an odd pair sits top-left when n is even and
    bottom-right when m is even."""
    if rect.is_even:
        return LShape(rect, LEFT_BOTTOM, None)
    length = rect.m + rect.n - 1
    pair_index = 0 if rect.n % 2 == 0 else (length - 2) // 2
    return LShape(rect, LEFT_BOTTOM, pair_index)


def canonical_L(rect: Rectangle) -> Configuration:
    """
    The canonical 'L' with span rect.

    Examples
    --------
    >>> sorted(canonical_L(Rectangle(0, 0, 3, 1)))
    [Position(x=0, y=0), Position(x=2, y=0)]
    """
    return l_coins(canonical_shape(rect))


def canonical_config(config: Configuration) -> Configuration:
    if not config:
        raise GeometryError("configuration is empty", "empty")
    return frozenset(
        p for rect in span_components(config) for p in canonical_L(rect)
    )


@dataclass(frozen=True)
class SubroutineTrace:
    """Actions of one subroutine with the states around them.

    ``backward`` undoes ``forward``; it is None for one-way subroutines.
    ``shape`` is the resulting 'L' when the subroutine produces one.
    """

    name: str
    forward: ActionSequence
    backward: Optional[ActionSequence]
    initial: GameState
    final: GameState
    shape: Optional[LShape] = None

    @property
    def reversible(self) -> bool:
        return self.backward is not None

    def verify(self) -> None:
        """Replay both directions, raising SequenceError on failure."""
        validate_sequence(self.initial, self.forward, self.final)
        if self.backward is not None:
            validate_sequence(self.final, self.backward, self.initial)


class TraceBuilder:
    """Plays actions on a state, recording them for a trace."""

    def __init__(self, state: GameState) -> None:
        self.initial = state
        self.state = state
        self.actions: List[Action] = []

    @property
    def board(self) -> Configuration:
        return self.state.board

    @property
    def hand(self) -> int:
        return self.state.hand

    def play(self, *actions: Action) -> None:
        for action in actions:
            self.state = apply(self.state, action)
            self.actions.append(action)

    def extend(self, trace: SubroutineTrace) -> None:
        if trace.initial != self.state:
            raise ValueError(f"trace {trace.name} starts elsewhere")
        self.actions.extend(trace.forward)
        self.state = trace.final

    def finish(
        self,
        name: str,
        reversible: bool = True,
        backward: Optional[ActionSequence] = None,
        shape: Optional[LShape] = None,
    ) -> SubroutineTrace:
        forward = tuple(self.actions)
        if backward is None and reversible:
            backward = invert_sequence(forward)
        return SubroutineTrace(
            name, forward, backward, self.initial, self.state, shape
        )


def empty_trace(
    name: str, state: GameState, shape: Optional[LShape] = None
) -> SubroutineTrace:
    return SubroutineTrace(name, (), (), state, state, shape)


def normalize_on_path(
    state: GameState, path: Sequence[Position], target: Iterable[Position]
) -> SubroutineTrace:
    """Settle the coins on a path onto target cells of the same path.

    Both the coins on the path and the target must occupy both ends and
    leave no two consecutive cells empty. Works through the path once,
    dropping at missing target cells and picking up coins that are not
    targets; each step is reversible.
    """
    goal = frozenset(target)
    last = len(path) - 1
    occupied = [p in state.board for p in path]
    wanted = [p in goal for p in path]
    for name, flags in (("board", occupied), ("target", wanted)):
        gap = any(not a and not b for a, b in zip(flags, flags[1:]))
        if not (flags[0] and flags[last]) or gap:
            raise SubroutineError(
                f"{name} coins do not form a run along the path", "not_an_L"
            )
    builder = TraceBuilder(state)

    def drop(p: Position) -> None:
        if builder.hand == 0:
            raise SubroutineError(
                f"no coin in hand to drop at {p}", "insufficient_hand"
            )
        builder.play(Drop(p))

    for i in range(1, last):
        if wanted[i] and not occupied[i]:
            drop(path[i])
            occupied[i] = True
        elif occupied[i] and not wanted[i]:
            if not occupied[i + 1]:
                drop(path[i + 1])
                occupied[i + 1] = True
            builder.play(PickUp(path[i]))
            occupied[i] = False
    return builder.finish("normalize")
