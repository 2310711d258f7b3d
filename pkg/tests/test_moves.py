# Third party
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# First party
from coinflow.exceptions import IllegalActionError, SequenceError
from coinflow.grid import Position, make_config, neighbor_list
from coinflow.moves import (
    Drop,
    GameState,
    Move,
    PickUp,
    apply,
    format_actions,
    invert_sequence,
    legal_moves,
    moves_only,
    parse_actions,
    replay,
    single_move,
    transform_actions,
    validate_sequence,
)
from coinflow.span import span

from . import _config

P = Position

cells = st.builds(Position, st.integers(0, 4), st.integers(0, 4))
boards = st.frozensets(cells, max_size=10)

TRIANGLE = _config(
    """
    .o.
    o.o
    """
)


def test_move_into_a_gap():
    state = apply(GameState(TRIANGLE), Move(P(1, 1), P(1, 0)))
    assert state.board == make_config([(0, 0), (1, 0), (2, 0)])
    assert state.hand == 0


@pytest.mark.parametrize(
    "board,action,code",
    [
        pytest.param(
            make_config([(0, 0), (1, 1)]),
            Move(P(1, 1), P(1, 0)),
            "illegal_move",
            id="mover-counts-not",
        ),
        pytest.param(
            TRIANGLE, Move(P(5, 5), P(1, 0)), "not_occupied", id="no-coin"
        ),
        pytest.param(
            TRIANGLE, Move(P(0, 0), P(2, 0)), "illegal_move", id="occupied"
        ),
        pytest.param(
            TRIANGLE, PickUp(P(1, 0)), "not_occupied", id="pick-up-nothing"
        ),
    ],
)
def test_illegal_actions(board, action, code):
    with pytest.raises(IllegalActionError) as info:
        apply(GameState(board), action)
    assert info.value.code == code
    assert info.value.action == action


@pytest.mark.parametrize(
    "hand,at,code",
    [
        (0, P(1, 0), "empty_hand"),
        (1, P(0, 0), "occupied"),
        (1, P(3, 0), "drop_violates_2adjacency"),
    ],
    ids=["empty-hand", "occupied", "one-neighbour"],
)
def test_illegal_drops(hand, at, code):
    with pytest.raises(IllegalActionError) as info:
        apply(GameState(TRIANGLE, hand), Drop(at))
    assert info.value.code == code


def test_hand_round_trip():
    state = GameState(TRIANGLE)
    picked = apply(state, PickUp(P(1, 1)))
    assert picked.hand == 1
    dropped = apply(picked, Drop(P(1, 0)))
    assert dropped == GameState(make_config([(0, 0), (1, 0), (2, 0)]))


def test_game_state_validation():
    with pytest.raises(ValueError):
        GameState(TRIANGLE, -1)
    with pytest.raises(ValueError):
        Move(P(0, 0), P(0, 0))
    assert GameState(TRIANGLE, 2).total == 5


def test_replay_reports_the_failing_index():
    actions = [Move(P(1, 1), P(1, 0)), Move(P(1, 0), P(1, 1))]
    with pytest.raises(SequenceError) as info:
        replay(GameState(TRIANGLE), actions)
    assert info.value.index == 1
    assert info.value.code == "illegal_move"


def test_validate_sequence_final_mismatch():
    with pytest.raises(SequenceError) as info:
        validate_sequence(GameState(TRIANGLE), [], GameState(TRIANGLE, 1))
    assert info.value.code == "final_mismatch"


def test_legal_moves_and_single_move():
    moves = legal_moves(TRIANGLE)
    assert (P(1, 1), P(1, 0)) in moves
    assert (P(0, 0), P(2, 1)) in moves
    row = make_config([(0, 0), (1, 0), (2, 0)])
    assert legal_moves(row) == []
    assert single_move(TRIANGLE, row) == (P(1, 1), P(1, 0))
    assert single_move(row, TRIANGLE) is None


def test_invert_sequence_undoes_reversible_steps():
    forward = (PickUp(P(1, 1)), Drop(P(1, 0)))
    end = replay(GameState(TRIANGLE), forward)
    assert replay(end, invert_sequence(forward)) == GameState(TRIANGLE)


def test_transform_actions():
    seq = (Move(P(1, 1), P(1, 0)), PickUp(P(0, 0)))

    def shift(p):
        return p.shifted(10, 0)

    assert transform_actions(seq, shift) == (
        Move(P(11, 1), P(11, 0)),
        PickUp(P(10, 0)),
    )


def test_moves_only_pairs_pick_ups_with_drops():
    seq = (PickUp(P(1, 1)), Drop(P(1, 0)))
    assert moves_only(seq) == (Move(P(1, 1), P(1, 0)),)


def test_moves_only_rejects_unbalanced_hands():
    with pytest.raises(SequenceError) as info:
        moves_only((PickUp(P(1, 1)),))
    assert info.value.code == "unbalanced_hand"
    with pytest.raises(SequenceError):
        moves_only((Drop(P(1, 0)),))


def test_text_format():
    seq = (Move(P(1, 1), P(1, 0)), PickUp(P(0, 0)), Drop(P(0, 0)))
    text = format_actions(seq)
    assert text == "mv 1 1 1 0\nup 0 0\ndn 0 0\n"
    assert parse_actions("# a comment\n\n" + text) == seq


@pytest.mark.parametrize(
    "text",
    ["jump 1 2\n", "mv 1 1 1\n", "up a b\n"],
    ids=["unknown-verb", "too-few", "not-a-number"],
)
def test_parse_errors(text):
    with pytest.raises(SequenceError) as info:
        parse_actions(text)
    assert info.value.code == "parse_error"
    assert "line 1" in str(info.value)


@settings(max_examples=200, deadline=None)
@given(boards, cells, cells)
def test_moves_follow_the_two_neighbour_rule(board, src, dst):
    if src == dst:
        return
    try:
        after = apply(GameState(board), Move(src, dst))
    except IllegalActionError:
        legal = (
            src in board
            and dst not in board
            and sum(q in board and q != src for q in neighbor_list(dst)) >= 2
        )
        assert not legal
        return
    assert sum(q in board and q != src for q in neighbor_list(dst)) >= 2
    assert len(after.board) == len(board)
    assert span(after.board) <= span(board)
