"""Constructive solvers for puzzles with two extra and two redundant coins.

Every constructive method has the same outline. It picks up two extra
coins of A and canonicalizes what is left. It then turns the canonical
configuration of A into the one of B. Finally it replays B's
canonicalization backwards and drops B's two redundant coins. Methods
differ only in the middle part:

* same span: nothing to do, both canonical configurations coincide
* two extra: every 'L' is shrunk onto the component of span(B) it holds
* sweep: one 'L' is replaced by an arbitrary target inside its span
"""

# Core Library
import itertools
import logging
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

# First party
from coinflow.canonical import (
    SubroutineTrace,
    TraceBuilder,
    canonical_config,
    canonical_L,
    canonical_shape,
)
from coinflow.constants import METHODS
from coinflow.exceptions import (
    CoinflowError,
    GeometryError,
    SearchExhausted,
    SequenceError,
)
from coinflow.grid import Configuration, Position
from coinflow.infeasibility import (
    check_certificate,
    necessary_conditions,
    prove_unsolvable_by_split,
    single_move_forced,
)
from coinflow.moves import (
    ActionSequence,
    Drop,
    GameState,
    Move,
    PickUp,
    single_move,
    validate_sequence,
)
from coinflow.oracle import breadth_first
from coinflow.poking import min_plus1_shape, solve_min_plus1
from coinflow.routines import canonicalize, shrink_L, sweep_build
from coinflow.search import SearchLimits
from coinflow.span import (
    find_extra_coins,
    find_redundant_coins,
    min_cardinality_of,
    rectangle_min_cardinality,
    span,
    span_components,
)
from coinflow.utils import ceil_half
from coinflow.verdicts import (
    ExhaustiveSearch,
    Solved,
    SolveOutcome,
    Unknown,
    Unsolvable,
)

logger = logging.getLogger(__name__)

# Turns the canonical configuration of A0, with coins in hand, into the
# canonical configuration of B0.
Middle = Callable[[GameState], SubroutineTrace]


def _obstruction(
    a: Configuration, b: Configuration, method: str
) -> Optional[SolveOutcome]:
    if a == b:
        return SolveOutcome(Solved(()), method)
    found = necessary_conditions(a, b)
    if found:
        return SolveOutcome(Unsolvable(found[0]), method)
    return None


def _bracket(
    a: Configuration,
    extras: Tuple[Position, ...],
    b: Configuration,
    redundant: Tuple[Position, ...],
    middle: Middle,
    limits: Optional[SearchLimits],
) -> ActionSequence:
    """Pick up extras, canonicalize, run middle, undo B's canonicalization
    and drop the redundant coins in reverse removal order."""
    a0 = a - frozenset(extras)
    b0 = b - frozenset(redundant)
    builder = TraceBuilder(GameState(a))
    builder.play(*(PickUp(p) for p in extras))
    builder.extend(canonicalize(builder.state, limits))
    builder.extend(middle(builder.state))
    towards_b = canonicalize(GameState(b0, len(redundant)), limits)
    assert towards_b.backward is not None, "hint for mypy"  # noqa
    if builder.state != towards_b.final:
        raise SequenceError(
            "middle part does not end on the canonical configuration of B",
            "final_mismatch",
        )
    builder.play(*towards_b.backward)
    builder.play(*(Drop(p) for p in reversed(redundant)))
    actions = tuple(builder.actions)
    validate_sequence(GameState(a), actions, GameState(b))
    return actions


def _identity(state: GameState) -> SubroutineTrace:
    return TraceBuilder(state).finish("identity")


def solve_same_span(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    """Solve when span(A) = span(B), A has two extra coins and B two
    redundant coins."""
    method = "same-span"
    early = _obstruction(a, b, method)
    if early is not None:
        return early
    if span(a) != span(b):
        return SolveOutcome(Unknown("spans of A and B differ"), method)
    extras = find_extra_coins(a, None, 2)
    if extras is None:
        return SolveOutcome(Unknown("A lacks two extra coins"), method)
    redundant = find_redundant_coins(b, 2)
    if redundant is None:
        return SolveOutcome(Unknown("B lacks two redundant coins"), method)
    try:
        actions = _bracket(
            a, tuple(sorted(extras)), b, redundant, _identity, limits
        )
    except CoinflowError as error:
        logger.info("same-span construction failed: %s", error)
        return SolveOutcome(Unknown(f"construction failed: {error}"), method)
    return SolveOutcome(Solved(actions), method)


def _separates(a0: Configuration, b: Configuration) -> bool:
    """span(A0) covers span(B) with at most one B component per A0
    component."""
    if not span(a0) >= span(b):
        return False
    holders = span_components(a0)
    counts = [
        sum(1 for r in span_components(b) if holder.contains_rectangle(r))
        for holder in holders
    ]
    return all(count <= 1 for count in counts)


def _shrink_each(a0: Configuration, b: Configuration) -> Middle:
    targets = list(span_components(b))

    def middle(state: GameState) -> SubroutineTrace:
        builder = TraceBuilder(state)
        for rect in span_components(a0):
            inner = [r for r in targets if rect.contains_rectangle(r)]
            if not inner:
                builder.play(*(PickUp(p) for p in sorted(canonical_L(rect))))
                continue
            builder.extend(
                shrink_L(builder.state, canonical_shape(rect), inner[0])
            )
        return builder.finish("shrink_each", reversible=False)

    return middle


def solve_two_extra(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    """Solve by shrinking each 'L' of A's canonical configuration onto the
    component of span(B) it contains."""
    method = "two-extra"
    early = _obstruction(a, b, method)
    if early is not None:
        return early
    if span(a) == span(b):
        same = solve_same_span(a, b, limits)
        return SolveOutcome(same.verdict, method)
    redundant = find_redundant_coins(b, 2)
    if redundant is None:
        return SolveOutcome(Unknown("B lacks two redundant coins"), method)
    reason = "no pair of extra coins separates the components of span(B)"
    for pair in itertools.combinations(sorted(a), 2):
        a0 = a - frozenset(pair)
        if not _separates(a0, b):
            continue
        logger.debug("two-extra candidate pair %s", pair)
        try:
            actions = _bracket(
                a, pair, b, redundant, _shrink_each(a0, b), limits
            )
        except CoinflowError as error:
            logger.info(
                "two-extra construction with %s failed: %s", pair, error
            )
            reason = f"construction failed: {error}"
            continue
        return SolveOutcome(Solved(actions), method)
    return SolveOutcome(Unknown(reason), method)


def sweep_condition(n_coins: int, min_a: int, min_b: int) -> bool:
    """
    Coin count large enough for the sweep method.

    Examples
    --------
    >>> sweep_condition(8, 4, 4)
    True
    """
    return n_coins >= Fraction(3, 2) * max(min_a, min_b) + 2


def sweep_inequalities(
    n_coins: int, min_a: int, min_b: int, m: int, n: int
) -> Tuple[bool, bool]:
    """The two inequalities the sweep construction actually needs."""
    first = n_coins > min_a + Fraction(min_b, 2) + 1
    second = n_coins > min_b + ceil_half(min(m, n)) + 1
    return first, second


def solve_sweep(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    """Solve when span(A) is one rectangle holding B and there are enough
    coins to rebuild B from a single 'L'."""
    method = "sweep"
    early = _obstruction(a, b, method)
    if early is not None:
        return early
    components = span_components(a)
    if len(components) != 1:
        return SolveOutcome(Unknown("span(A) is not one rectangle"), method)
    rect = next(iter(components))
    if not all(rect.contains(p) for p in b):
        return SolveOutcome(Unknown("B leaves span(A)"), method)
    extras = find_extra_coins(a, None, 2)
    if extras is None:
        return SolveOutcome(Unknown("A lacks two extra coins"), method)
    redundant = find_redundant_coins(b, 2)
    if redundant is None:
        return SolveOutcome(Unknown("B lacks two redundant coins"), method)
    min_a = rectangle_min_cardinality(rect)
    min_b = min_cardinality_of(b)
    first, second = sweep_inequalities(len(a), min_a, min_b, rect.m, rect.n)
    if not (first and second):
        return SolveOutcome(
            Unknown(
                f"{len(a)} coins are too few for a sweep on {rect} "
                f"with a target of minimum size {min_b}"
            ),
            method,
        )
    goal = canonical_config(b - frozenset(redundant))

    def middle(state: GameState) -> SubroutineTrace:
        return sweep_build(state, canonical_shape(rect), goal)

    try:
        actions = _bracket(
            a, tuple(sorted(extras)), b, redundant, middle, limits
        )
    except CoinflowError as error:
        logger.info("sweep construction failed: %s", error)
        return SolveOutcome(Unknown(f"construction failed: {error}"), method)
    return SolveOutcome(Solved(actions), method)


def solve_oracle(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    """Breadth-first search over pure moves, within limits."""
    method = "oracle"
    limits = limits or SearchLimits.from_env()
    try:
        found = breadth_first(a, b, limits)
    except SearchExhausted as error:
        return SolveOutcome(Unknown(str(error)), method)
    if found.actions is not None:
        return SolveOutcome(Solved(found.actions), method)
    early = _obstruction(a, b, method)
    if early is not None:
        return early
    return SolveOutcome(Unsolvable(ExhaustiveSearch(found.explored)), method)


def _solve_auto(
    a: Configuration,
    b: Configuration,
    limits: Optional[SearchLimits],
) -> SolveOutcome:
    if a == b:
        return SolveOutcome(Solved(()), "trivial")
    found = necessary_conditions(a, b)
    if found:
        logger.info("necessary condition violated: %s", found[0].name)
        return SolveOutcome(Unsolvable(found[0]), "necessary")
    if single_move_forced(b):
        step = single_move(a, b)
        assert step is not None, "hint for mypy"  # noqa
        return SolveOutcome(Solved((Move(*step),)), "single-move")
    reasons: List[str] = []
    if min_plus1_shape(a, b) is not None:
        outcome = solve_min_plus1(a, b, limits)
        if not isinstance(outcome.verdict, Unknown):
            return outcome
        reasons.append(f"min-plus1: {outcome.verdict.reason}")
    for solver in (solve_two_extra, solve_sweep):
        outcome = solver(a, b, limits)
        if outcome.is_solved:
            logger.info("solved by %s", outcome.method)
            return outcome
        if isinstance(outcome.verdict, Unknown):
            reasons.append(f"{outcome.method}: {outcome.verdict.reason}")
    certificate = prove_unsolvable_by_split(a, b)
    if certificate is not None:
        logger.info(
            "split certificate on %s / %s", certificate.r1, certificate.r2
        )
        return SolveOutcome(Unsolvable(certificate), "split")
    outcome = solve_oracle(a, b, limits)
    if isinstance(outcome.verdict, Unknown):
        reasons.append(f"oracle: {outcome.verdict.reason}")
        return SolveOutcome(Unknown("; ".join(reasons)), "auto")
    return outcome


def solve(
    a: Configuration,
    b: Configuration,
    method: str = "auto",
    limits: Optional[SearchLimits] = None,
) -> SolveOutcome:
    """
    Decide A -> B with the given method; every failure is a verdict.

    Examples
    --------
    >>> from coinflow.grid import make_config
    >>> row = make_config([(0, 0), (2, 0)])
    >>> solve(row, row).label
    'solved'
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        return _solve_auto(a, b, limits)
    if method == "same-span":
        return solve_same_span(a, b, limits)
    if method == "two-extra":
        return solve_two_extra(a, b, limits)
    if method == "sweep":
        return solve_sweep(a, b, limits)
    if method == "min-plus1":
        return solve_min_plus1(a, b, limits)
    return solve_oracle(a, b, limits)


def verify_outcome(
    a: Configuration,
    b: Configuration,
    outcome: SolveOutcome,
    limits: Optional[SearchLimits] = None,
) -> bool:
    """Replay a Solved sequence or re-check an Unsolvable certificate."""
    verdict = outcome.verdict
    if isinstance(verdict, Solved):
        try:
            validate_sequence(GameState(a), verdict.actions, GameState(b))
        except SequenceError as error:
            logger.warning("solution fails replay: %s", error)
            return False
        return True
    if isinstance(verdict, Unsolvable):
        try:
            return check_certificate(a, b, verdict.certificate, limits)
        except GeometryError:
            return False
    return True
