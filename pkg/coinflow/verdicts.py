"""Verdicts returned by the solvers and the certificates behind them."""

# Core Library
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

# First party
from coinflow.grid import Rectangle
from coinflow.moves import ActionSequence

NECESSARY_CONDITIONS = (
    "cardinality_mismatch",
    "span_not_contained",
    "no_extra_coin",
    "no_redundant_coin",
    "single_move_impossible",
    "poking_unreachable",
)


@dataclass(frozen=True)
class NecessaryCondition:
    name: str
    detail: str = ""

    def __post_init__(self) -> None:
        if self.name not in NECESSARY_CONDITIONS:
            raise ValueError(f"unknown necessary condition {self.name!r}")


@dataclass(frozen=True)
class SplitBound:
    """Two components of span(B) that every solution has to separate.

    ``r1`` lies below ``r2`` with ``h`` free rows between them, after
    swapping axes when ``transposed`` is set.
    """

    r1: Rectangle
    r2: Rectangle
    h: int
    bound: Fraction
    coins: int
    refined: bool
    transposed: bool = False
    case_four_bound: Optional[Fraction] = None


@dataclass(frozen=True)
class ExhaustiveSearch:
    """Every configuration reachable from A was enumerated without B."""

    explored: int


Certificate = Union[NecessaryCondition, SplitBound, ExhaustiveSearch]


@dataclass(frozen=True)
class Solved:
    actions: ActionSequence


@dataclass(frozen=True)
class Unsolvable:
    certificate: Certificate


@dataclass(frozen=True)
class Unknown:
    reason: str


Verdict = Union[Solved, Unsolvable, Unknown]


@dataclass(frozen=True)
class SolveOutcome:
    verdict: Verdict
    method: str

    @property
    def is_solved(self) -> bool:
        return isinstance(self.verdict, Solved)

    @property
    def is_unsolvable(self) -> bool:
        return isinstance(self.verdict, Unsolvable)

    @property
    def label(self) -> str:
        if isinstance(self.verdict, Solved):
            return "solved"
        if isinstance(self.verdict, Unsolvable):
            return "unsolvable"
        return "unknown"
