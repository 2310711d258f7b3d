# Third party
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# First party
from coinflow.canonical import (
    Chain,
    LShape,
    SubroutineTrace,
    TraceBuilder,
    canonical_config,
    canonical_L,
    canonical_shape,
    l_coins,
    l_path,
    mirror,
    normalize_on_path,
    shape_of,
)
from coinflow.constants import (
    BOTTOM_RIGHT,
    LEFT_BOTTOM,
    LEFT_TOP,
    TOP_RIGHT,
)
from coinflow.exceptions import (
    GeometryError,
    SequenceError,
    SubroutineError,
)
from coinflow.grid import Position, Rectangle, make_config
from coinflow.moves import Drop, GameState, PickUp, replay
from coinflow.routines import canonicalize, grow_L

from . import _config

P = Position


@pytest.mark.parametrize(
    "orientation,expected",
    [
        (LEFT_BOTTOM, [(0, 1), (0, 0), (1, 0), (2, 0)]),
        (LEFT_TOP, [(0, 0), (0, 1), (1, 1), (2, 1)]),
        (TOP_RIGHT, [(0, 1), (1, 1), (2, 1), (2, 0)]),
        (BOTTOM_RIGHT, [(0, 0), (1, 0), (2, 0), (2, 1)]),
    ],
    ids=["left-bottom", "left-top", "top-right", "bottom-right"],
)
def test_l_path(orientation, expected):
    shape = LShape(Rectangle(0, 0, 3, 2), orientation, 0)
    assert l_path(shape) == tuple(P(x, y) for x, y in expected)


def test_lshape_validation():
    with pytest.raises(GeometryError):
        LShape(Rectangle(0, 0, 3, 3), LEFT_BOTTOM, 0)
    with pytest.raises(GeometryError):
        LShape(Rectangle(0, 0, 3, 2), LEFT_BOTTOM, None)
    with pytest.raises(GeometryError):
        LShape(Rectangle(0, 0, 3, 2), LEFT_BOTTOM, 2)
    with pytest.raises(ValueError):
        LShape(Rectangle(0, 0, 3, 3), "diagonal")


def test_chain_validation():
    chain = Chain((P(0, 0), P(2, 0), P(3, 0)))
    assert chain.endpoints == (P(0, 0), P(3, 0))
    with pytest.raises(GeometryError) as info:
        Chain((P(0, 0), P(3, 0)))
    assert info.value.code == "not_a_chain"


@pytest.mark.parametrize(
    "m,n,art",
    [
        (3, 3, "o..\n...\no.o"),
        (4, 3, "o...\n....\no.oo"),
        (3, 4, "o..\no..\n...\no.o"),
        (2, 1, "oo"),
        (1, 1, "o"),
    ],
    ids=["3x3", "4x3", "3x4", "2x1", "1x1"],
)
def test_canonical_L(m, n, art):
    assert canonical_L(Rectangle(0, 0, m, n)) == _config(art)


@pytest.mark.parametrize("m", range(1, 6))
@pytest.mark.parametrize("n", range(1, 6))
def test_shape_of_recognises_the_canonical_L(m, n):
    rect = Rectangle(2, -1, m, n)
    assert shape_of(canonical_L(rect)) == canonical_shape(rect)


def test_shape_of_rejects_other_configurations():
    assert shape_of(frozenset()) is None
    assert shape_of(make_config([(0, 0), (1, 1), (2, 2)])) is None


def test_mirror_of_even_l():
    shape = canonical_shape(Rectangle(0, 0, 3, 3))
    flipped = mirror(shape)
    assert flipped.orientation == TOP_RIGHT
    assert l_coins(flipped) == _config("o.o\n...\n..o")
    assert mirror(flipped) == shape


def test_canonical_config_per_component():
    config = make_config([(0, 0), (1, 0), (2, 0), (6, 0), (7, 1)])
    assert canonical_config(config) == canonical_L(
        Rectangle(0, 0, 3, 1)
    ) | canonical_L(Rectangle(6, 0, 2, 2))


def test_trace_builder_records_actions():
    board = _config(".o.\no.o")
    builder = TraceBuilder(GameState(board, 1))
    builder.play(Drop(P(1, 0)), PickUp(P(1, 1)))
    trace = builder.finish("step")
    assert trace.forward == (Drop(P(1, 0)), PickUp(P(1, 1)))
    assert trace.backward == (Drop(P(1, 1)), PickUp(P(1, 0)))
    assert trace.final == GameState(_config("ooo"), 1)
    with pytest.raises(ValueError):
        TraceBuilder(GameState(board)).extend(trace)


def test_trace_verify_catches_bad_traces():
    state = GameState(_config("o.o"))
    trace = SubroutineTrace(
        "broken", (Drop(P(1, 0)),), None, state, GameState(_config("ooo"))
    )
    with pytest.raises(SequenceError):
        trace.verify()


def test_normalize_on_path():
    path = [P(x, 0) for x in range(5)]
    state = GameState(_config("oo.oo"), 1)
    trace = normalize_on_path(state, path, _config("o.o.o"))
    assert trace.final.board == _config("o.o.o")
    assert trace.final.hand == 2
    trace.verify()


def test_normalize_on_path_rejects_gaps():
    path = [P(x, 0) for x in range(5)]
    with pytest.raises(SubroutineError) as info:
        normalize_on_path(GameState(_config("o...o"), 2), path, path)
    assert info.value.code == "not_an_L"


def test_canonicalize_needs_two_coins_in_hand():
    with pytest.raises(SubroutineError) as info:
        canonicalize(GameState(_config("ooo"), 1))
    assert info.value.code == "insufficient_hand"


def _check_canonicalize(config, hand=2):
    state = GameState(config, hand)
    trace = canonicalize(state)
    goal = canonical_config(config)
    assert trace.final == GameState(goal, hand + len(config) - len(goal))
    assert trace.backward is not None
    assert replay(trace.final, trace.backward) == state
    trace.verify()


@pytest.mark.parametrize(
    "art",
    [
        "..o\n.o.\no..",
        "ooo\nooo",
        "o.o\n...\no.o",
        "ooo...o.o",
    ],
    ids=["diagonal", "full-block", "corners", "two-components"],
)
def test_canonicalize_examples(art):
    _check_canonicalize(_config(art))


@pytest.mark.timeout(600)
@settings(max_examples=200, deadline=None)
@given(
    st.frozensets(
        st.builds(Position, st.integers(0, 4), st.integers(0, 4)),
        min_size=1,
        max_size=8,
    )
)
def test_canonicalize_random_configurations(config):
    _check_canonicalize(config)


def _refuse_planner(*args, **kwargs):
    raise SubroutineError("planner disabled", "unreachable")


def _staircase(size):
    return make_config([(i, size - 1 - i) for i in range(size)])


@pytest.mark.parametrize("size", [8, 10], ids=["8x8", "10x10"])
def test_canonicalize_large_staircase_without_planner(monkeypatch, size):
    monkeypatch.setattr(
        "coinflow.routines.grow.plan_hand_sequence", _refuse_planner
    )
    _check_canonicalize(_staircase(size))


def test_canonicalize_walks_a_coin_beside_the_l(monkeypatch):
    monkeypatch.setattr(
        "coinflow.routines.grow.plan_hand_sequence", _refuse_planner
    )
    config = _staircase(7) | {P(7, 4)}
    _check_canonicalize(config)


def test_grow_collects_coins_stacked_beside_the_l(monkeypatch):
    monkeypatch.setattr(
        "coinflow.routines.grow.plan_hand_sequence", _refuse_planner
    )
    config = _staircase(7) | {P(7, 2), P(7, 4)}
    rect = Rectangle(0, 0, 8, 7)
    trace = grow_L(GameState(config, 2), rect)
    assert trace.final == GameState(canonical_L(rect), 3)
    trace.verify()


def test_canonicalize_gives_up_on_large_spans_the_macros_miss(monkeypatch):
    monkeypatch.setattr(
        "coinflow.routines.grow.plan_hand_sequence", _refuse_planner
    )
    rising = make_config([(i, i) for i in range(8)])
    with pytest.raises(SubroutineError) as info:
        canonicalize(GameState(rising, 2))
    assert info.value.code == "unsupported"
