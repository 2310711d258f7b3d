"""Puzzle files, diagrams and verdict serialization.

The grid format has two blocks of ``.``/``o`` rows separated by a ``---``
line: the start configuration, then the target. The bottom-left character
of each block is (0, 0) unless a ``# origin X Y`` line moves it. Other
``#`` lines are comments. JSON files hold ``{"start": [[x, y], ...],
"target": [[x, y], ...]}`` plus optional ``name`` and ``source``.
"""

# Core Library
import json
import logging
import random
from dataclasses import dataclass
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Optional,
    Sequence,
    Tuple,
    Union,
)

# First party
from coinflow.constants import BLOCK_SEPARATOR, COIN, FREE
from coinflow.exceptions import GeometryError, PuzzleFormatError
from coinflow.grid import (
    Configuration,
    Position,
    Rectangle,
    enclosing_rectangle,
)
from coinflow.infeasibility import certificate_to_dict
from coinflow.moves import Action, GameState, Move, PickUp, apply
from coinflow.span import span, span_components
from coinflow.verdicts import Solved, SolveOutcome, Unknown, Unsolvable

logger = logging.getLogger(__name__)

DROPPED = "@"
REMOVED = "x"
CELL = 20


@dataclass(frozen=True)
class PuzzleFile:
    start: Configuration
    target: Configuration
    name: Optional[str] = None
    source: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.start or not self.target:
            raise PuzzleFormatError("both configurations must hold coins")


def parse_puzzle(text: str) -> PuzzleFile:
    """
    Parse a puzzle in grid or JSON format.

    Examples
    --------
    >>> puzzle = parse_puzzle("o.o\\n---\\noo.")
    >>> sorted(puzzle.start), sorted(puzzle.target)
    ([Position(x=0, y=0), Position(x=2, y=0)], [Position(x=0, y=0), Position(x=1, y=0)])
    """  # noqa: E501
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_grid(text)


def _parse_json(text: str) -> PuzzleFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise PuzzleFormatError(
            error.msg, line=error.lineno, column=error.colno
        ) from error
    if not isinstance(data, dict):
        raise PuzzleFormatError("expected a JSON object")
    configs = []
    for key in ("start", "target"):
        if key not in data:
            raise PuzzleFormatError(f"missing key {key!r}")
        configs.append(_coins_from_json(data[key], key))
    return PuzzleFile(
        configs[0], configs[1], data.get("name"), data.get("source")
    )


def _coins_from_json(raw: Any, key: str) -> Configuration:
    if not isinstance(raw, list):
        raise PuzzleFormatError(f"{key!r} must be a list of [x, y] pairs")
    coins = set()
    for item in raw:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, int) for v in item)
        ):
            raise PuzzleFormatError(f"bad coin {item!r} in {key!r}")
        p = Position(item[0], item[1])
        if p in coins:
            raise PuzzleFormatError(
                f"coin {tuple(p)} listed twice in {key!r}", "duplicate_coin"
            )
        coins.add(p)
    return frozenset(coins)


def _parse_grid(text: str) -> PuzzleFile:
    blocks: List[List[Tuple[int, str]]] = [[]]
    origins: List[Tuple[int, int]] = [(0, 0)]
    name = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        if line.strip() == BLOCK_SEPARATOR:
            blocks.append([])
            origins.append((0, 0))
            continue
        if line.startswith("#"):
            words = line[1:].split()
            if words[:1] == ["origin"]:
                origins[-1] = _parse_origin(words[1:], line_no)
            elif words[:1] == ["name"]:
                name = " ".join(words[1:])
            continue
        if not line:
            continue
        blocks[-1].append((line_no, line))
    if len(blocks) != 2:
        raise PuzzleFormatError(
            f"expected 2 blocks separated by {BLOCK_SEPARATOR!r}, "
            f"got {len(blocks)}",
            line=1,
        )
    configs = [
        _parse_block(rows, origin) for rows, origin in zip(blocks, origins)
    ]
    return PuzzleFile(configs[0], configs[1], name)


def _parse_origin(words: List[str], line_no: int) -> Tuple[int, int]:
    try:
        x, y = (int(w) for w in words)
    except ValueError as error:
        raise PuzzleFormatError(
            "origin needs two integers", line=line_no
        ) from error
    return x, y


def _parse_block(
    rows: List[Tuple[int, str]], origin: Tuple[int, int]
) -> Configuration:
    if not rows:
        raise PuzzleFormatError("empty configuration block")
    coins = set()
    height = len(rows)
    for row, (line_no, line) in enumerate(rows):
        y = origin[1] + height - 1 - row
        for column, char in enumerate(line, start=1):
            if char == COIN:
                coins.add(Position(origin[0] + column - 1, y))
            elif char != FREE:
                raise PuzzleFormatError(
                    f"unexpected character {char!r}",
                    line=line_no,
                    column=column,
                )
    return frozenset(coins)


def grid_block(
    config: Configuration, frame: Optional[Rectangle] = None
) -> str:
    """
    Rows of the configuration over frame, top row first.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> print(grid_block(make_config([(0, 0), (1, 0), (2, 0)])))
    ooo
    """
    frame = frame or enclosing_rectangle(config)
    return "\n".join(
        "".join(
            COIN if Position(x, y) in config else FREE
            for x in range(frame.x0, frame.x1 + 1)
        )
        for y in range(frame.y1, frame.y0 - 1, -1)
    )


def format_puzzle(puzzle: PuzzleFile) -> str:
    """Canonical grid text; parse_puzzle reads it back unchanged."""
    lines = []
    if puzzle.name:
        lines.append(f"# name {puzzle.name}")
    for index, config in enumerate((puzzle.start, puzzle.target)):
        if index:
            lines.append(BLOCK_SEPARATOR)
        frame = enclosing_rectangle(config)
        if (frame.x0, frame.y0) != (0, 0):
            lines.append(f"# origin {frame.x0} {frame.y0}")
        lines.append(grid_block(config, frame))
    return "\n".join(lines) + "\n"


def puzzle_to_json(puzzle: PuzzleFile) -> str:
    data: Dict[str, Any] = {
        "start": [list(p) for p in sorted(puzzle.start)],
        "target": [list(p) for p in sorted(puzzle.target)],
    }
    if puzzle.name:
        data["name"] = puzzle.name
    if puzzle.source:
        data["source"] = puzzle.source
    return json.dumps(data, sort_keys=True)


Snapshot = Tuple[Configuration, Dict[Position, str]]


def action_frames(
    start: Configuration, actions: Sequence[Action]
) -> List[Snapshot]:
    """One frame per state; each marks the cells the next action touches."""
    frames: List[Snapshot] = []
    state = GameState(start, _hand_needed(actions))
    for action in actions:
        marks: Dict[Position, str] = {}
        if isinstance(action, Move):
            marks = {action.src: REMOVED, action.dst: DROPPED}
        elif isinstance(action, PickUp):
            marks = {action.at: REMOVED}
        else:
            marks = {action.at: DROPPED}
        frames.append((state.board, marks))
        state = apply(state, action)
    frames.append((state.board, {}))
    return frames


def _hand_needed(actions: Sequence[Action]) -> int:
    hand = lowest = 0
    for action in actions:
        if isinstance(action, PickUp):
            hand += 1
        elif not isinstance(action, Move):
            hand -= 1
        lowest = min(lowest, hand)
    return -lowest


def _bounds(frames: Iterable[Snapshot]) -> Rectangle:
    cells = [p for board, marks in frames for p in (*board, *marks)]
    return enclosing_rectangle(cells)


def _ascii(
    board: Configuration, marks: Dict[Position, str], r: Rectangle
) -> str:
    rows = []
    for y in range(r.y1, r.y0 - 1, -1):
        row = ""
        for x in range(r.x0, r.x1 + 1):
            p = Position(x, y)
            row += marks.get(p, COIN if p in board else FREE)
        rows.append(row)
    return "\n".join(rows)


def _svg_frame(
    board: Configuration, marks: Dict[Position, str], r: Rectangle, left: int
) -> List[str]:
    parts = []
    radius = CELL * 2 // 5
    for p in sorted(set(board) | set(marks)):
        cx = left + (p.x - r.x0) * CELL + CELL // 2
        cy = (r.y1 - p.y) * CELL + CELL // 2
        mark = marks.get(p)
        if p in board:
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="{radius}" fill="black"/>'
            )
        if mark == DROPPED:
            parts.append(
                f'<circle cx="{cx}" cy="{cy}" r="{radius + 2}" '
                'fill="none" stroke="red" stroke-width="2"/>'
            )
        elif mark == REMOVED:
            d = radius
            parts.append(
                f'<path d="M{cx - d} {cy - d}L{cx + d} {cy + d}'
                f'M{cx - d} {cy + d}L{cx + d} {cy - d}" '
                'stroke="red" stroke-width="2"/>'
            )
    return parts


def _svg(frames: Sequence[Snapshot], r: Rectangle) -> str:
    """Frames side by side, one cell apart, in a single document."""
    step = (r.m + 1) * CELL
    width, height = step * len(frames) - CELL, r.n * CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for index, (board, marks) in enumerate(frames):
        left = index * step
        parts.append(
            f'<rect x="{left}" width="{r.m * CELL}" height="{height}" '
            'fill="none" stroke="lightgray"/>'
        )
        parts.extend(_svg_frame(board, marks, r, left))
    parts.append("</svg>")
    return "\n".join(parts)


def render_frames(frames: Sequence[Snapshot], fmt: str = "ascii") -> str:
    if fmt not in ("ascii", "svg"):
        raise ValueError(f"unknown format {fmt!r}")
    rect = _bounds(frames)
    if fmt == "svg":
        return _svg(frames, rect)
    return "\n\n".join(_ascii(board, marks, rect) for board, marks in frames)


def render(
    content: Union[Configuration, Sequence[Action]],
    fmt: str = "ascii",
    start: Optional[Configuration] = None,
) -> str:
    """
    Draw a configuration, or the frames of a sequence played from start.

    In frames, ``@`` (an encircled coin in SVG) marks where the next
    action puts a coin and ``x`` (crossed out) where it takes one away.
    ASCII frames are separated by blank lines.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> render(make_config([(0, 0)]))
    'o'
    """
    if isinstance(content, frozenset):
        return render_frames([(content, {})], fmt)
    if start is None:
        raise ValueError("rendering a sequence needs a start")
    return render_frames(action_frames(start, list(content)), fmt)


def render_puzzle(puzzle: PuzzleFile, fmt: str = "ascii") -> str:
    """Start and target over a common frame."""
    frames: List[Snapshot] = [(puzzle.start, {}), (puzzle.target, {})]
    if fmt == "svg":
        return render_frames(frames, fmt)
    rect = _bounds(frames)
    return f"\n{BLOCK_SEPARATOR}\n".join(
        _ascii(board, marks, rect) for board, marks in frames
    )


def random_puzzle(
    m: int, n: int, k: int, seed: Optional[int] = None, tries: int = 10_000
) -> PuzzleFile:
    """Two random k-coin configurations whose span is the m x n rectangle.

    Both sides are drawn the same way, so every puzzle keeps the span.
    """
    if m < 1 or n < 1:
        raise GeometryError(f"bad rectangle size {m}x{n}")
    rect = Rectangle(0, 0, m, n)
    if not 1 <= k <= rect.area:
        raise GeometryError(f"cannot place {k} coins on {rect}")
    rng = random.Random(seed)
    cells = list(rect.cells())
    region = frozenset(cells)
    drawn: List[Configuration] = []
    for _ in range(tries):
        candidate = frozenset(rng.sample(cells, k))
        if span(candidate) == region:
            drawn.append(candidate)
            if len(drawn) == 2:
                break
    if len(drawn) < 2:
        raise GeometryError(
            f"no {k}-coin configuration spanning {rect} after {tries} draws"
        )
    logger.debug("random puzzle on %s with seed %s", rect, seed)
    start, target = drawn
    return PuzzleFile(start, target, f"random {m}x{n} k={k}", f"seed {seed}")


def outcome_to_dict(outcome: SolveOutcome) -> Dict[str, Any]:
    data: Dict[str, Any] = {"verdict": outcome.label, "method": outcome.method}
    verdict = outcome.verdict
    if isinstance(verdict, Solved):
        data["actions"] = [action.to_text() for action in verdict.actions]
    elif isinstance(verdict, Unsolvable):
        data["certificate"] = certificate_to_dict(verdict.certificate)
    elif isinstance(verdict, Unknown):
        data["reason"] = verdict.reason
    return data


def outcome_to_json(outcome: SolveOutcome) -> str:
    return json.dumps(outcome_to_dict(outcome), sort_keys=True)


def describe(config: Configuration) -> str:
    """One line summary: coin count and span components."""
    parts = ", ".join(str(r) for r in span_components(config))
    return f"{len(config)} coins, span {parts}"
