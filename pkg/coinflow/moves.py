"""Game states, actions and their replay.

A state is the board plus the number of coins in hand. Besides moves, a
coin may be picked up anywhere and dropped back onto a free cell with two
occupied neighbours.
"""

# Core Library
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

# First party
from coinflow.exceptions import IllegalActionError, SequenceError
from coinflow.grid import Configuration, Position, neighbor_list
from coinflow.span import span

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GameState:
    board: Configuration
    hand: int = 0

    def __post_init__(self) -> None:
        if self.hand < 0:
            raise ValueError(f"hand must be nonnegative, got {self.hand}")

    @property
    def total(self) -> int:
        return len(self.board) + self.hand


@dataclass(frozen=True)
class Move:
    src: Position
    dst: Position

    def __post_init__(self) -> None:
        if self.src == self.dst:
            raise ValueError(f"a move needs two different cells: {self.src}")

    def to_text(self) -> str:
        return f"mv {self.src.x} {self.src.y} {self.dst.x} {self.dst.y}"


@dataclass(frozen=True)
class PickUp:
    at: Position

    def to_text(self) -> str:
        return f"up {self.at.x} {self.at.y}"


@dataclass(frozen=True)
class Drop:
    at: Position

    def to_text(self) -> str:
        return f"dn {self.at.x} {self.at.y}"


Action = Union[Move, PickUp, Drop]
ActionSequence = Tuple[Action, ...]


def occupied_neighbors(
    config: Configuration, p: Position, mover: Optional[Position] = None
) -> int:
    return sum(
        1 for q in neighbor_list(p) if q in config and q != mover
    )


def is_legal_destination(
    config: Configuration, mover: Optional[Position], p: Position
) -> bool:
    """
    Check if p has two occupied neighbours other than the mover.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> board = make_config([(0, 0), (2, 0), (1, 1)])
    >>> is_legal_destination(board, Position(1, 1), Position(1, 0))
    True
    """
    return occupied_neighbors(config, p, mover) >= 2


def legal_moves(config: Configuration) -> List[Tuple[Position, Position]]:
    """All legal moves; destinations never leave span(config)."""
    region = span(config)
    moves = []
    for coin in sorted(config):
        for p in sorted(region - config):
            if is_legal_destination(config, coin, p):
                moves.append((coin, p))
    return moves


def single_move(
    a: Configuration, b: Configuration
) -> Optional[Tuple[Position, Position]]:
    """The move c -> p with A -> B in one step, if there is one."""
    gone = a - b
    new = b - a
    if not (len(gone) == 1 and len(new) == 1):
        return None
    (coin,) = gone
    (p,) = new
    if is_legal_destination(a, coin, p):
        return coin, p
    return None


def apply(state: GameState, action: Action) -> GameState:
    board = state.board
    if isinstance(action, Move):
        if action.src not in board:
            raise IllegalActionError(
                f"no coin at {action.src}", "not_occupied", action
            )
        if action.dst in board:
            raise IllegalActionError(
                f"{action.dst} is occupied", "illegal_move", action
            )
        if not is_legal_destination(board, action.src, action.dst):
            raise IllegalActionError(
                f"{action.dst} lacks two neighbours besides {action.src}",
                "illegal_move",
                action,
            )
        return GameState((board - {action.src}) | {action.dst}, state.hand)
    if isinstance(action, PickUp):
        if action.at not in board:
            raise IllegalActionError(
                f"no coin at {action.at}", "not_occupied", action
            )
        return GameState(board - {action.at}, state.hand + 1)
    assert isinstance(action, Drop), "hint for mypy"  # noqa
    if state.hand < 1:
        raise IllegalActionError(
            f"cannot drop at {action.at} with an empty hand",
            "empty_hand",
            action,
        )
    if action.at in board:
        raise IllegalActionError(
            f"{action.at} is occupied", "occupied", action
        )
    if not is_legal_destination(board, None, action.at):
        raise IllegalActionError(
            f"{action.at} lacks two occupied neighbours",
            "drop_violates_2adjacency",
            action,
        )
    return GameState(board | {action.at}, state.hand - 1)


def replay(state: GameState, actions: Iterable[Action]) -> GameState:
    """Apply actions in order, raising SequenceError at the first failure."""
    for index, action in enumerate(actions):
        try:
            state = apply(state, action)
        except IllegalActionError as error:
            raise SequenceError(
                f"action {index} ({action.to_text()}) failed: {error}",
                error.code,
                index,
            ) from error
    return state


def validate_sequence(
    initial: GameState,
    seq: Sequence[Action],
    expected_final: Optional[GameState] = None,
) -> GameState:
    final = replay(initial, seq)
    if expected_final is not None and final != expected_final:
        raise SequenceError(
            f"replay ends with {sorted(final.board)} and hand {final.hand}, "
            f"expected {sorted(expected_final.board)} "
            f"and hand {expected_final.hand}",
            "final_mismatch",
        )
    return final


def invert_action(action: Action) -> Action:
    if isinstance(action, Move):
        return Move(action.dst, action.src)
    if isinstance(action, PickUp):
        return Drop(action.at)
    return PickUp(action.at)


def invert_sequence(seq: Sequence[Action]) -> ActionSequence:
    """The sequence undoing seq; only valid when every step is reversible."""
    return tuple(invert_action(action) for action in reversed(seq))


def transform_actions(
    seq: Iterable[Action], f: Callable[[Position], Position]
) -> ActionSequence:
    """Apply a cell mapping to every position of a sequence."""
    mapped: List[Action] = []
    for action in seq:
        if isinstance(action, Move):
            mapped.append(Move(f(action.src), f(action.dst)))
        elif isinstance(action, PickUp):
            mapped.append(PickUp(f(action.at)))
        else:
            mapped.append(Drop(f(action.at)))
    return tuple(mapped)


def poke_actions(coin: Position, p: Position) -> ActionSequence:
    """A poke coin -> p played with one coin in hand."""
    return (Drop(p), PickUp(coin))


def moves_only(seq: Sequence[Action]) -> ActionSequence:
    """Rewrite a balanced sequence into pure moves.

    A picked-up coin stays on the board until the drop it is paired with;
    that drop becomes a move of the deferred coin. Pairing is last in,
    first out.
    """
    deferred: List[Position] = []
    moves: List[Action] = []
    for index, action in enumerate(seq):
        if isinstance(action, PickUp):
            deferred.append(action.at)
        elif isinstance(action, Drop):
            if action.at in deferred:
                deferred.remove(action.at)
            elif not deferred:
                raise SequenceError(
                    f"drop at action {index} has no matching pick-up",
                    "unbalanced_hand",
                    index,
                )
            else:
                moves.append(Move(deferred.pop(), action.at))
        elif action.dst in deferred:
            deferred.remove(action.dst)
            deferred.append(action.src)
        else:
            moves.append(action)
    if deferred:
        raise SequenceError(
            f"{len(deferred)} picked-up coins are never dropped",
            "unbalanced_hand",
        )
    return tuple(moves)


def format_actions(seq: Iterable[Action]) -> str:
    return "".join(action.to_text() + "\n" for action in seq)


def parse_actions(text: str) -> ActionSequence:
    """
    Parse the one-action-per-line text syntax.

    Examples
    --------
    >>> parse_actions("mv 1 1 1 0\\nup 0 0\\n")
    (Move(src=Position(x=1, y=1), dst=Position(x=1, y=0)), PickUp(at=Position(x=0, y=0)))
    """  # noqa: E501
    actions: List[Action] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        try:
            numbers = [int(word) for word in words[1:]]
        except ValueError as error:
            raise SequenceError(
                f"line {line_no}: bad coordinate in {raw!r}", "parse_error"
            ) from error
        kind = words[0]
        if kind == "mv" and len(numbers) == 4:
            actions.append(
                Move(
                    Position(numbers[0], numbers[1]),
                    Position(numbers[2], numbers[3]),
                )
            )
        elif kind == "up" and len(numbers) == 2:
            actions.append(PickUp(Position(*numbers)))
        elif kind == "dn" and len(numbers) == 2:
            actions.append(Drop(Position(*numbers)))
        else:
            raise SequenceError(
                f"line {line_no}: cannot read action {raw!r}", "parse_error"
            )
    return tuple(actions)
