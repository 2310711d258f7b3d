# Third party
import pytest

# First party
from coinflow.exceptions import SearchExhausted
from coinflow.grid import Position, make_config
from coinflow.moves import Move
from coinflow.oracle import (
    SearchOutcome,
    breadth_first,
    reachable_set,
    shortest_solution,
)
from coinflow.search import Exhausted, SearchLimits
from coinflow.span import span

from . import _config, _reaches

P = Position

TRIANGLE = _config(
    """
    .o.
    o.o
    """
)
ROW = make_config([(0, 0), (1, 0), (2, 0)])


def test_stuck_configurations():
    assert reachable_set(ROW) == frozenset({ROW})
    pair = make_config([(0, 0), (2, 0)])
    assert reachable_set(pair) == frozenset({pair})


def test_reachable_set_stays_in_the_span():
    reached = reachable_set(TRIANGLE)
    assert not isinstance(reached, Exhausted)
    assert TRIANGLE in reached and ROW in reached
    region = span(TRIANGLE)
    assert all(config <= region and len(config) == 3 for config in reached)


def test_reachable_set_limit():
    assert isinstance(
        reachable_set(TRIANGLE, SearchLimits(max_states=1)), Exhausted
    )


def test_shortest_solution_one_move():
    assert shortest_solution(TRIANGLE, ROW) == (Move(P(1, 1), P(1, 0)),)


def test_shortest_solution_unreachable():
    assert shortest_solution(ROW, TRIANGLE) is None
    assert shortest_solution(TRIANGLE, ROW | {P(5, 5)}) is None


@pytest.mark.parametrize("target_index", range(4))
def test_shortest_solutions_replay(target_index):
    reached = reachable_set(TRIANGLE)
    assert not isinstance(reached, Exhausted)
    target = sorted(sorted(c) for c in reached)[target_index]
    target = frozenset(target)
    solution = shortest_solution(TRIANGLE, target)
    assert solution is not None
    assert _reaches(TRIANGLE, solution, target)


def test_shortest_solution_depth_limit():
    reached = reachable_set(TRIANGLE)
    assert not isinstance(reached, Exhausted)
    far = [
        c for c in reached if len(shortest_solution(TRIANGLE, c) or ()) > 1
    ]
    if not far:
        pytest.skip("every configuration is one move away")
    with pytest.raises(SearchExhausted):
        shortest_solution(TRIANGLE, far[0], SearchLimits(max_depth=1))


def test_breadth_first_counts_the_reachable_set():
    reached = reachable_set(TRIANGLE)
    missing = _config(
        """
        o.o
        .o.
        """
    )
    assert missing not in reached
    found = breadth_first(TRIANGLE, missing)
    assert found.actions is None
    assert found.explored == len(reached)


def test_breadth_first_quick_refusal():
    found = breadth_first(TRIANGLE, ROW | {P(5, 5)})
    assert found == SearchOutcome(None, 0)
