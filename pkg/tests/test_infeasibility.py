# Core Library
from fractions import Fraction

# Third party
import pytest

# First party
from coinflow.exceptions import GeometryError
from coinflow.canonical import canonical_L
from coinflow.grid import Position, Rectangle, make_config
from coinflow.infeasibility import (
    case_four_bound,
    certificate_from_json,
    certificate_to_dict,
    certificate_to_json,
    check_certificate,
    gen_counterexample,
    necessary_conditions,
    prove_unsolvable_by_split,
    refined_split_bound,
    single_move_forced,
    split_bound,
    split_geometry,
    two_ply_split_exists,
)
from coinflow.oracle import reachable_set
from coinflow.span import find_redundant_coins, span, span_components
from coinflow.verdicts import ExhaustiveSearch, NecessaryCondition

from . import _config

P = Position

TRIANGLE = _config(
    """
    .o.
    o.o
    """
)
ROW = make_config([(0, 0), (1, 0), (2, 0)])
ROW_LOW = Rectangle(0, 0, 3, 1)
ROW_HIGH = Rectangle(0, 4, 3, 1)
DIAMOND = make_config([(1, 0), (0, 1), (2, 1), (0, 3), (2, 3), (1, 4)])
TWO_ROWS = make_config([(0, 0), (1, 0), (2, 0), (0, 4), (1, 4), (2, 4)])


def _names(a, b):
    return [found.name for found in necessary_conditions(a, b)]


@pytest.mark.parametrize(
    "a,b,names",
    [
        pytest.param(ROW, ROW, [], id="identical"),
        pytest.param(TRIANGLE, ROW, [], id="one-move"),
        pytest.param(
            make_config([(0, 0)]),
            make_config([(0, 0), (1, 0)]),
            ["cardinality_mismatch"],
            id="cardinality",
        ),
        pytest.param(
            make_config([(0, 0), (2, 0), (4, 0)]),
            make_config([(0, 0), (2, 0), (4, 1)]),
            [
                "span_not_contained",
                "no_redundant_coin",
                "single_move_impossible",
            ],
            id="outside-span",
        ),
        pytest.param(
            make_config([(0, 0), (2, 0)]),
            make_config([(0, 0), (1, 0)]),
            ["no_extra_coin", "no_redundant_coin", "single_move_impossible"],
            id="no-extra-coin",
        ),
    ],
)
def test_necessary_conditions(a, b, names):
    assert _names(a, b) == names


def test_single_move_forced():
    assert single_move_forced(ROW)
    assert not single_move_forced(frozenset(Rectangle(0, 0, 2, 2).cells()))


def test_split_geometry():
    assert split_geometry(ROW_LOW, ROW_HIGH) == (3, False)
    assert split_geometry(ROW_HIGH, ROW_LOW) == (3, False)
    assert split_geometry(
        Rectangle(0, 0, 1, 3), Rectangle(5, 0, 1, 3)
    ) == (4, True)


@pytest.mark.parametrize(
    "r2",
    [Rectangle(0, 2, 3, 1), Rectangle(7, 7, 1, 1)],
    ids=["one-row-apart", "diagonal"],
)
def test_split_geometry_rejects(r2):
    with pytest.raises(GeometryError) as info:
        split_geometry(ROW_LOW, r2)
    assert info.value.code == "geometry_precondition"


def test_split_bounds():
    assert split_bound(ROW_LOW, ROW_HIGH) == 5
    assert refined_split_bound(ROW_LOW, ROW_HIGH) == Fraction(13, 2)
    assert case_four_bound(ROW_LOW, ROW_HIGH) == 7
    single, other = Rectangle(0, 0, 1, 1), Rectangle(0, 3, 1, 1)
    assert split_bound(single, other) == Fraction(5, 2)
    assert refined_split_bound(single, other) == 4


def test_two_ply_split_when_already_apart():
    a = make_config([(0, 0), (2, 0), (0, 4), (2, 4)])
    assert two_ply_split_exists(a, ROW_LOW, ROW_HIGH)


def test_no_split_for_a_single_component():
    assert prove_unsolvable_by_split(TRIANGLE, ROW) is None


def test_no_two_moves_split_the_diamond():
    assert not two_ply_split_exists(DIAMOND, ROW_LOW, ROW_HIGH)


@pytest.mark.timeout(300)
def test_refined_split_certificate():
    assert span(DIAMOND) == frozenset(Rectangle(0, 0, 3, 5).cells())
    certificate = prove_unsolvable_by_split(DIAMOND, TWO_ROWS)
    assert certificate is not None
    assert certificate.refined
    assert (certificate.r1, certificate.r2) == (ROW_LOW, ROW_HIGH)
    assert certificate.h == 3
    assert certificate.coins == 6
    assert certificate.bound == Fraction(13, 2)
    assert certificate.case_four_bound == 7
    assert check_certificate(DIAMOND, TWO_ROWS, certificate)
    assert TWO_ROWS not in reachable_set(DIAMOND)


@pytest.mark.parametrize("n", [9, 10, 11])
def test_counterexample_family(n):
    a, b = gen_counterexample(n)
    assert len(a) == len(b)
    assert len(a) == n + (n - 2) // 2
    assert list(span_components(a)) == [Rectangle(0, 0, n, n)]
    assert list(span_components(b)) == [
        Rectangle(0, 0, n, 1),
        Rectangle(0, n - 1, n, 1),
    ]
    assert span(b) <= span(a)
    assert necessary_conditions(a, b) == []


def test_counterexample_nine():
    a, b = gen_counterexample(9)
    assert len(a) == 12
    certificate = prove_unsolvable_by_split(a, b)
    assert certificate is not None
    assert certificate.bound == 13
    assert certificate.coins == 12
    assert certificate.h == 7
    assert not certificate.refined
    assert check_certificate(a, b, certificate)


def test_counterexample_ten():
    a, b = gen_counterexample(10)
    assert len(a) == 14
    certificate = prove_unsolvable_by_split(a, b)
    assert certificate is not None
    assert certificate.bound == Fraction(29, 2)


@pytest.mark.parametrize("n", [12, 13, 14])
def test_large_counterexamples(n):
    a, b = gen_counterexample(n)
    assert len(a) == len(b) == (3 * n - 2) // 2
    extra = a - canonical_L(Rectangle(0, 0, n, n))
    assert len(extra) == (n - 2) // 2
    assert all(p.y == 0 for p in extra)
    assert span(b) <= span(a - extra)
    assert find_redundant_coins(b, (n - 5) // 2) is not None
    certificate = prove_unsolvable_by_split(a, b)
    assert certificate is not None
    assert not certificate.refined
    assert certificate.h == n - 2
    assert certificate.bound == Fraction(3 * n - 1, 2)
    assert check_certificate(a, b, certificate)


def test_counterexample_needs_nine():
    with pytest.raises(GeometryError) as info:
        gen_counterexample(8)
    assert info.value.code == "n_too_small"


def test_check_certificate_rejects_other_puzzles():
    a, b = gen_counterexample(9)
    certificate = prove_unsolvable_by_split(a, b)
    assert not check_certificate(a, a, certificate)
    assert not check_certificate(TRIANGLE, ROW, certificate)


def test_check_exhaustive_search():
    target = make_config([(0, 0), (1, 0), (3, 0)])
    assert check_certificate(ROW, target, ExhaustiveSearch(1))
    assert not check_certificate(TRIANGLE, ROW, ExhaustiveSearch(5))


def test_check_necessary_condition():
    small = make_config([(0, 0)])
    certificate = NecessaryCondition("cardinality_mismatch")
    assert check_certificate(small, ROW, certificate)
    assert not check_certificate(TRIANGLE, ROW, certificate)


def test_unknown_condition_names_are_rejected():
    with pytest.raises(ValueError):
        NecessaryCondition("bad_luck")


def test_certificate_json():
    a, b = gen_counterexample(9)
    certificate = prove_unsolvable_by_split(a, b)
    data = certificate_to_dict(certificate)
    assert data["kind"] == "split_bound"
    assert data["bound"] == "13"
    assert data["r1"] == [0, 0, 9, 1]
    assert certificate_from_json(certificate_to_json(certificate)) == (
        certificate
    )


def test_certificate_from_unknown_kind():
    with pytest.raises(ValueError):
        certificate_from_json('{"kind": "hunch"}')
