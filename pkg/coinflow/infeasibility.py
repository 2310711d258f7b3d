"""Necessary conditions, split lower bounds and their certificates.

A split of A along two rectangles is a move sequence after which the
rectangles lie in different span components. Reaching B performs a split
for any two components of span(B) that share a component of span(A), and
a split needs a number of coins growing with the rectangles and the rows
between them.
"""

# Core Library
import itertools
import json
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Set, Tuple

# First party
from coinflow.canonical import canonical_L
from coinflow.exceptions import GeometryError
from coinflow.grid import Configuration, Position, Rectangle
from coinflow.moves import legal_moves, single_move
from coinflow.oracle import reachable_set
from coinflow.poking import min_plus1_search, min_plus1_shape
from coinflow.search import Exhausted, SearchLimits
from coinflow.span import (
    SpanDecomposition,
    find_extra_coins,
    find_redundant_coins,
    span,
    span_components,
)
from coinflow.verdicts import (
    Certificate,
    ExhaustiveSearch,
    NecessaryCondition,
    SplitBound,
)

logger = logging.getLogger(__name__)


def _isolated(config: Configuration) -> bool:
    return all(
        q not in config
        for p in config
        for q in (Position(p.x + 1, p.y), Position(p.x, p.y + 1))
    )


def single_move_forced(b: Configuration) -> bool:
    """Check if some coin of b leaves only isolated coins behind."""
    return any(_isolated(b - {coin}) for coin in b)


def necessary_conditions(
    a: Configuration, b: Configuration
) -> List[NecessaryCondition]:
    """Every violated condition; an empty list means no quick obstruction."""
    if a == b:
        return []
    if len(a) != len(b):
        return [
            NecessaryCondition(
                "cardinality_mismatch", f"|A| = {len(a)}, |B| = {len(b)}"
            )
        ]
    found = []
    region = span(a)
    if not span(b) <= region:
        outside = sorted(span(b) - region)
        found.append(
            NecessaryCondition(
                "span_not_contained", f"{outside[0]} lies outside span(A)"
            )
        )
    elif find_extra_coins(a, b, 1) is None:
        found.append(
            NecessaryCondition(
                "no_extra_coin", "every coin of A is needed to cover span(B)"
            )
        )
    if find_redundant_coins(b, 1) is None:
        found.append(
            NecessaryCondition(
                "no_redundant_coin", "no coin of B has two neighbours"
            )
        )
    if single_move_forced(b) and single_move(a, b) is None:
        found.append(
            NecessaryCondition(
                "single_move_impossible",
                "B can only be reached in one move, and no move does it",
            )
        )
    return found


def split_geometry(r1: Rectangle, r2: Rectangle) -> Tuple[int, bool]:
    """
    Rows between two rectangles whose x projections meet, and whether
    the axes had to be swapped to find them.

    Examples
    --------
    >>> split_geometry(Rectangle(0, 0, 3, 1), Rectangle(0, 4, 3, 1))
    (3, False)
    """
    for transposed, (p, q) in (
        (False, (r1, r2)),
        (True, (r1.transpose(), r2.transpose())),
    ):
        if p.x0 > q.x1 or q.x0 > p.x1:
            continue
        gap = max(q.y0 - p.y1, p.y0 - q.y1) - 1
        if gap >= 2:
            return gap, transposed
    raise GeometryError(
        f"{r1} and {r2} are not stacked with two free rows between them",
        "geometry_precondition",
    )


def _half_sum(r1: Rectangle, r2: Rectangle, extra: int) -> Fraction:
    h, _ = split_geometry(r1, r2)
    return Fraction(r1.m + r1.n + r2.m + r2.n + h + extra, 2)


def split_bound(r1: Rectangle, r2: Rectangle) -> Fraction:
    """
    Coins needed for any split along r1 and r2.

    Examples
    --------
    >>> split_bound(Rectangle(0, 0, 3, 1), Rectangle(0, 4, 3, 1))
    Fraction(5, 1)
    """
    return _half_sum(r1, r2, -1)


def refined_split_bound(r1: Rectangle, r2: Rectangle) -> Fraction:
    """Coins needed when no split happens within two moves."""
    return _half_sum(r1, r2, 2)


def case_four_bound(r1: Rectangle, r2: Rectangle) -> Fraction:
    return _half_sum(r1, r2, 3)


def _separated(
    config: Configuration, r1: Rectangle, r2: Rectangle
) -> bool:
    components = span_components(config)
    first = _holder(components, r1)
    second = _holder(components, r2)
    return first is not None and second is not None and first != second


def _holder(
    components: SpanDecomposition, rect: Rectangle
) -> Optional[Rectangle]:
    for component in components:
        if component.contains_rectangle(rect):
            return component
    return None


def two_ply_split_exists(
    a: Configuration, r1: Rectangle, r2: Rectangle
) -> bool:
    """Check if at most two moves separate r1 from r2."""
    if _separated(a, r1, r2):
        return True
    for coin, p in legal_moves(a):
        first = (a - {coin}) | {p}
        if _separated(first, r1, r2):
            return True
        for coin2, p2 in legal_moves(first):
            if _separated((first - {coin2}) | {p2}, r1, r2):
                return True
    return False


def _split_pairs(
    a: Configuration, b: Configuration
) -> List[Tuple[Rectangle, Rectangle]]:
    """Pairs of span(B) components sharing a component of span(A)."""
    a_components = span_components(a)
    pairs = []
    b_components = span_components(b)
    for first, second in itertools.combinations(b_components, 2):
        holder = _holder(a_components, first)
        if holder is not None and holder.contains_rectangle(second):
            pairs.append((first, second))
    return pairs


def prove_unsolvable_by_split(
    a: Configuration, b: Configuration
) -> Optional[SplitBound]:
    if not a or not b or not span(b) <= span(a):
        return None
    coins = len(a)
    refinable = []
    for r1, r2 in _split_pairs(a, b):
        try:
            h, transposed = split_geometry(r1, r2)
        except GeometryError:
            continue
        bound = split_bound(r1, r2)
        if coins < bound:
            logger.info("split %s / %s needs %s coins", r1, r2, bound)
            return SplitBound(r1, r2, h, bound, coins, False, transposed)
        if coins < refined_split_bound(r1, r2):
            refinable.append((r1, r2, h, transposed))
    for r1, r2, h, transposed in refinable:
        if two_ply_split_exists(a, r1, r2):
            continue
        return SplitBound(
            r1,
            r2,
            h,
            refined_split_bound(r1, r2),
            coins,
            True,
            transposed,
            case_four_bound(r1, r2),
        )
    return None


def gen_counterexample(n: int) -> Tuple[Configuration, Configuration]:
    """A pair with many extra and redundant coins that is unsolvable.

    A is the canonical n x n 'L' with floor((n - 2) / 2) coins added to
    its bottom row; B is a minimum chain along the top row and one along
    the bottom row with floor((n - 5) / 2) coins added.
    """
    if n < 9:
        raise GeometryError(f"n must be at least 9, got {n}", "n_too_small")
    a = set(canonical_L(Rectangle(0, 0, n, n)))
    _add_to_row(a, n, (n - 2) // 2)
    top = canonical_L(Rectangle(0, n - 1, n, 1))
    bottom = set(canonical_L(Rectangle(0, 0, n, 1)))
    _add_to_row(bottom, n, (n - 5) // 2)
    return frozenset(a), frozenset(bottom) | top


def _add_to_row(config: Set[Position], n: int, count: int) -> None:
    """Fill the leftmost free bottom-row cells, avoiding neighbours of
    coins where possible."""
    for _ in range(count):
        row = [Position(x, 0) for x in range(n)]
        free = [p for p in row if p not in config]
        lonely = [
            p
            for p in free
            if Position(p.x - 1, 0) not in config
            and Position(p.x + 1, 0) not in config
        ]
        config.add((lonely or free)[0])


def check_certificate(
    a: Configuration,
    b: Configuration,
    certificate: Certificate,
    limits: Optional[SearchLimits] = None,
) -> bool:
    """Re-derive a certificate from scratch."""
    if isinstance(certificate, NecessaryCondition):
        return _check_condition(a, b, certificate.name, limits)
    if isinstance(certificate, ExhaustiveSearch):
        reached = reachable_set(a, limits)
        return not isinstance(reached, Exhausted) and b not in reached
    try:
        h, transposed = split_geometry(certificate.r1, certificate.r2)
    except GeometryError:
        return False
    if (certificate.r1, certificate.r2) not in _split_pairs(a, b):
        return False
    bound = (
        refined_split_bound(certificate.r1, certificate.r2)
        if certificate.refined
        else split_bound(certificate.r1, certificate.r2)
    )
    consistent = (
        h == certificate.h
        and transposed == certificate.transposed
        and bound == certificate.bound
        and certificate.coins == len(a)
        and len(a) < bound
    )
    if not consistent:
        return False
    if certificate.refined:
        return not two_ply_split_exists(a, certificate.r1, certificate.r2)
    return True


def _check_condition(
    a: Configuration,
    b: Configuration,
    name: str,
    limits: Optional[SearchLimits],
) -> bool:
    if a == b:
        return False
    if name == "poking_unreachable":
        if min_plus1_shape(a, b) != "odd" or single_move(a, b) is not None:
            return False
        moves, complete = min_plus1_search(a, b, limits)
        return moves is None and complete
    return any(found.name == name for found in necessary_conditions(a, b))


def _rect_to_json(rect: Rectangle) -> List[int]:
    return [rect.x0, rect.y0, rect.m, rect.n]


def certificate_to_dict(certificate: Certificate) -> Dict[str, Any]:
    if isinstance(certificate, NecessaryCondition):
        return {
            "kind": "necessary_condition",
            "name": certificate.name,
            "detail": certificate.detail,
        }
    if isinstance(certificate, ExhaustiveSearch):
        return {"kind": "exhaustive_search", "explored": certificate.explored}
    data: Dict[str, Any] = {
        "kind": "split_bound",
        "r1": _rect_to_json(certificate.r1),
        "r2": _rect_to_json(certificate.r2),
        "h": certificate.h,
        "bound": str(certificate.bound),
        "coins": certificate.coins,
        "refined": certificate.refined,
        "transposed": certificate.transposed,
    }
    if certificate.case_four_bound is not None:
        data["case_four_bound"] = str(certificate.case_four_bound)
    return data


def certificate_from_dict(data: Dict[str, Any]) -> Certificate:
    kind = data.get("kind")
    if kind == "necessary_condition":
        return NecessaryCondition(data["name"], data.get("detail", ""))
    if kind == "exhaustive_search":
        return ExhaustiveSearch(int(data["explored"]))
    if kind != "split_bound":
        raise ValueError(f"unknown certificate kind {kind!r}")
    four = data.get("case_four_bound")
    return SplitBound(
        Rectangle(*data["r1"]),
        Rectangle(*data["r2"]),
        int(data["h"]),
        Fraction(data["bound"]),
        int(data["coins"]),
        bool(data["refined"]),
        bool(data.get("transposed", False)),
        None if four is None else Fraction(four),
    )


def certificate_to_json(certificate: Certificate) -> str:
    return json.dumps(certificate_to_dict(certificate), sort_keys=True)


def certificate_from_json(text: str) -> Certificate:
    return certificate_from_dict(json.loads(text))
