# Core Library
import logging

# Third party
import pytest

# First party
from coinflow.constants import DEFAULT_MAX_STATES, MAX_STATES_ENV
from coinflow.exceptions import SearchExhausted, SubroutineError
from coinflow.grid import Position, Rectangle, make_config
from coinflow.moves import Drop, GameState, validate_sequence
from coinflow.search import SearchLimits, plan_hand_sequence

from . import _config

TRIANGLE = _config(
    """
    .o.
    o.o
    """
)
ROW = make_config([(0, 0), (1, 0), (2, 0)])
FRAME = Rectangle(0, 0, 3, 2)


def test_limits_validation():
    with pytest.raises(ValueError):
        SearchLimits(max_states=0)
    with pytest.raises(ValueError):
        SearchLimits(max_depth=0)


def test_limits_from_env(monkeypatch):
    monkeypatch.setenv(MAX_STATES_ENV, "1234")
    assert SearchLimits.from_env().max_states == 1234
    monkeypatch.delenv(MAX_STATES_ENV)
    assert SearchLimits.from_env(max_depth=3) == SearchLimits(
        DEFAULT_MAX_STATES, 3
    )


def test_limits_from_bad_env(monkeypatch, caplog):
    monkeypatch.setenv(MAX_STATES_ENV, "lots")
    with caplog.at_level(logging.WARNING, logger="coinflow.search"):
        limits = SearchLimits.from_env()
    assert limits.max_states == DEFAULT_MAX_STATES
    assert MAX_STATES_ENV in caplog.text


def test_one_way_plan():
    plan = plan_hand_sequence(TRIANGLE, 0, ROW, FRAME, reversible=False)
    validate_sequence(GameState(TRIANGLE), plan, GameState(ROW))


def test_reversible_plan():
    goal = TRIANGLE | make_config([(1, 0)])
    plan = plan_hand_sequence(TRIANGLE, 1, goal, FRAME)
    assert plan == (Drop(Position(1, 0)),)


def test_plan_respects_movable_cells():
    with pytest.raises(SubroutineError) as info:
        plan_hand_sequence(
            TRIANGLE,
            0,
            ROW,
            FRAME,
            reversible=False,
            movable=make_config([(1, 0)]),
        )
    assert info.value.code == "unreachable"


def test_plan_needs_enough_coins():
    with pytest.raises(SubroutineError) as info:
        plan_hand_sequence(ROW, 0, ROW | TRIANGLE, FRAME)
    assert info.value.code == "insufficient_hand"


def test_plan_unreachable():
    pair = make_config([(0, 0), (2, 0)])
    goal = make_config([(0, 0), (1, 0)])
    with pytest.raises(SubroutineError) as info:
        plan_hand_sequence(
            pair, 0, goal, Rectangle(0, 0, 3, 1), reversible=False
        )
    assert info.value.code == "unreachable"


def test_plan_budget():
    with pytest.raises(SearchExhausted) as info:
        plan_hand_sequence(
            TRIANGLE,
            0,
            ROW,
            FRAME,
            reversible=False,
            limits=SearchLimits(max_states=1),
        )
    assert info.value.limit == 1
