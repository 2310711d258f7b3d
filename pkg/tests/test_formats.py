# Core Library
import json

# Third party
import pytest

# First party
from coinflow.exceptions import GeometryError, PuzzleFormatError
from coinflow.formats import (
    PuzzleFile,
    action_frames,
    describe,
    format_puzzle,
    grid_block,
    outcome_to_dict,
    outcome_to_json,
    parse_puzzle,
    puzzle_to_json,
    random_puzzle,
    render,
    render_frames,
    render_puzzle,
)
from coinflow.grid import Position, Rectangle, make_config
from coinflow.moves import Drop, Move, PickUp
from coinflow.solver import solve
from coinflow.span import span

from . import _config

P = Position

TRIANGLE = _config(
    """
    .o.
    o.o
    """
)
ROW = make_config([(0, 0), (1, 0), (2, 0)])


def test_parse_grid():
    puzzle = parse_puzzle("o.o\n---\noo.\n")
    assert puzzle.start == make_config([(0, 0), (2, 0)])
    assert puzzle.target == make_config([(0, 0), (1, 0)])
    assert puzzle.name is None


def test_parse_grid_headers():
    text = "# name triangle\n.o.\no.o\n---\n# origin 4 -1\nooo\n"
    puzzle = parse_puzzle(text)
    assert puzzle.name == "triangle"
    assert puzzle.start == TRIANGLE
    assert puzzle.target == make_config([(4, -1), (5, -1), (6, -1)])


def test_parse_grid_ignores_comments_and_blank_lines():
    puzzle = parse_puzzle("# a comment\n\n.o.\n\no.o\n---\nooo\n")
    assert puzzle.start == TRIANGLE


def test_parse_grid_reports_the_position():
    with pytest.raises(PuzzleFormatError) as info:
        parse_puzzle("o.o\n---\nox.\n")
    assert info.value.code == "parse_error"
    assert info.value.line == 3
    assert info.value.column == 2
    assert "line 3, column 2" in str(info.value)


@pytest.mark.parametrize(
    "text",
    ["ooo\n", "o\n---\no\n---\no\n", "---\nooo\n", "ooo\n---\n...\n"],
    ids=["one-block", "three-blocks", "empty-block", "no-target-coins"],
)
def test_parse_grid_rejects(text):
    with pytest.raises(PuzzleFormatError):
        parse_puzzle(text)


def test_parse_origin_needs_integers():
    with pytest.raises(PuzzleFormatError) as info:
        parse_puzzle("# origin a b\no\n---\no\n")
    assert info.value.line == 1


def test_parse_json():
    text = json.dumps(
        {
            "start": [[0, 0], [2, 0], [1, 1]],
            "target": [[0, 0], [1, 0], [2, 0]],
        }
    )
    puzzle = parse_puzzle(text)
    assert puzzle.start == TRIANGLE
    assert puzzle.target == ROW


@pytest.mark.parametrize(
    "text,code",
    [
        pytest.param(
            '{"start": [[0, 0], [0, 0]], "target": [[0, 0]]}',
            "duplicate_coin",
            id="duplicate",
        ),
        pytest.param('{"start": [[0, 0]]}', "parse_error", id="no-target"),
        pytest.param(
            '{"start": [[0, "a"]], "target": [[0, 0]]}',
            "parse_error",
            id="bad-coin",
        ),
        pytest.param('{"start": ', "parse_error", id="broken"),
        pytest.param("[1, 2]", "parse_error", id="not-an-object"),
    ],
)
def test_parse_json_rejects(text, code):
    with pytest.raises(PuzzleFormatError) as info:
        parse_puzzle(text)
    assert info.value.code == code


def test_format_puzzle():
    puzzle = PuzzleFile(TRIANGLE, make_config([(5, 5)]), "demo")
    assert format_puzzle(puzzle) == (
        "# name demo\n.o.\no.o\n---\n# origin 5 5\no\n"
    )
    assert parse_puzzle(format_puzzle(puzzle)) == puzzle


def test_puzzle_to_json():
    data = json.loads(puzzle_to_json(PuzzleFile(TRIANGLE, ROW, "t", "s")))
    assert data == {
        "name": "t",
        "source": "s",
        "start": [[0, 0], [1, 1], [2, 0]],
        "target": [[0, 0], [1, 0], [2, 0]],
    }


def test_grid_block():
    assert grid_block(ROW) == "ooo"
    assert grid_block(TRIANGLE, Rectangle(0, 0, 4, 3)) == (
        "....\n.o..\no.o."
    )


def test_action_frames():
    actions = [PickUp(P(1, 1)), Drop(P(1, 0))]
    frames = action_frames(TRIANGLE, actions)
    assert len(frames) == 3
    assert frames[0] == (TRIANGLE, {P(1, 1): "x"})
    assert frames[1] == (make_config([(0, 0), (2, 0)]), {P(1, 0): "@"})
    assert frames[2] == (ROW, {})


def test_render_configuration():
    assert render(make_config([(0, 0)])) == "o"
    assert render(TRIANGLE) == ".o.\no.o"


def test_render_sequence():
    drawing = render([Move(P(1, 1), P(1, 0))], start=TRIANGLE)
    assert drawing == ".x.\no@o\n\n...\nooo"


def test_render_sequence_needs_a_start():
    with pytest.raises(ValueError):
        render([Move(P(1, 1), P(1, 0))])


def test_render_unknown_format():
    with pytest.raises(ValueError):
        render_frames([(ROW, {})], "png")


def test_render_svg():
    drawing = render([Move(P(1, 1), P(1, 0))], "svg", start=TRIANGLE)
    assert drawing.startswith("<svg")
    assert drawing.endswith("</svg>")
    assert drawing.count('fill="black"') == 6
    assert 'stroke="red"' in drawing


def test_render_puzzle():
    puzzle = PuzzleFile(TRIANGLE, ROW)
    assert render_puzzle(puzzle) == ".o.\no.o\n---\n...\nooo"
    assert render_puzzle(puzzle, "svg").startswith("<svg")


def test_random_puzzle():
    puzzle = random_puzzle(3, 3, 3, seed=7)
    assert puzzle == random_puzzle(3, 3, 3, seed=7)
    assert span(puzzle.start) == frozenset(Rectangle(0, 0, 3, 3).cells())
    assert len(puzzle.target) == 3
    assert puzzle.target <= frozenset(Rectangle(0, 0, 3, 3).cells())
    assert puzzle.source == "seed 7"


@pytest.mark.parametrize("seed", range(10))
def test_random_targets_keep_the_span(seed):
    puzzle = random_puzzle(4, 3, 5, seed=seed)
    region = frozenset(Rectangle(0, 0, 4, 3).cells())
    assert span(puzzle.start) == region
    assert span(puzzle.target) == region


@pytest.mark.parametrize(
    "m,n,k",
    [(0, 3, 1), (3, 3, 0), (2, 2, 5), (5, 5, 2)],
    ids=["no-width", "no-coins", "too-many", "cannot-span"],
)
def test_random_puzzle_rejects(m, n, k):
    with pytest.raises(GeometryError):
        random_puzzle(m, n, k, seed=1, tries=50)


def test_outcome_json():
    outcome = solve(TRIANGLE, ROW)
    assert outcome_to_dict(outcome) == {
        "verdict": "solved",
        "method": "single-move",
        "actions": ["mv 1 1 1 0"],
    }
    data = json.loads(outcome_to_json(solve(ROW, TRIANGLE)))
    assert data["verdict"] == "unsolvable"
    assert data["certificate"]["kind"] == "necessary_condition"


def test_describe():
    assert describe(TRIANGLE) == "3 coins, span 3x2@(0,0)"
    assert describe(make_config([(0, 0), (5, 0)])) == (
        "2 coins, span 1x1@(0,0), 1x1@(5,0)"
    )
