"""The ``coinflow`` command line."""

# Core Library
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, NoReturn, Optional, Tuple

# First party
from coinflow import __version__
from coinflow.constants import (
    EXIT_SOLVED,
    EXIT_UNKNOWN,
    EXIT_UNSOLVABLE,
    EXIT_USAGE,
    METHODS,
)
from coinflow.exceptions import (
    CoinflowError,
    PokingError,
    PuzzleFormatError,
    SearchExhausted,
    SequenceError,
)
from coinflow.formats import (
    PuzzleFile,
    describe,
    format_puzzle,
    outcome_to_json,
    parse_puzzle,
    puzzle_to_json,
    random_puzzle,
    render,
    render_puzzle,
)
from coinflow.infeasibility import certificate_to_json, gen_counterexample
from coinflow.moves import (
    GameState,
    format_actions,
    moves_only,
    parse_actions,
    validate_sequence,
)
from coinflow.oracle import reachable_set, shortest_solution
from coinflow.poking import chain_poking_decide, chain_poking_solve, poke_path
from coinflow.search import Exhausted, SearchLimits
from coinflow.solver import solve
from coinflow.verdicts import Solved, SolveOutcome, Unknown, Unsolvable

logger = logging.getLogger(__name__)

EXIT_CODES: Dict[str, int] = {
    "solved": EXIT_SOLVED,
    "unsolvable": EXIT_UNSOLVABLE,
    "unknown": EXIT_UNKNOWN,
}

Handler = Callable[[argparse.Namespace], int]

# Error codes caused by bad input rather than by the puzzle
USAGE_CODES = ("parse_error", "duplicate_coin", "n_too_small")


class _Parser(argparse.ArgumentParser):
    """Reports usage errors with the usage exit code."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as error:
        raise PuzzleFormatError(
            f"cannot read {path}: {error.strerror}"
        ) from error


def _read_puzzle(path: str) -> PuzzleFile:
    return parse_puzzle(_read_text(path))


def _limits(args: argparse.Namespace) -> SearchLimits:
    max_states = getattr(args, "max_states", None)
    if max_states is None:
        return SearchLimits.from_env()
    return SearchLimits(max_states=max_states)


def _span_size(text: str) -> Tuple[int, int]:
    try:
        m, n = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected MxN, got {text!r}"
        ) from None
    return m, n


def _report(outcome: SolveOutcome) -> None:
    print(f"{outcome.label} ({outcome.method})")
    verdict = outcome.verdict
    if isinstance(verdict, Unsolvable):
        print(certificate_to_json(verdict.certificate))
    elif isinstance(verdict, Unknown):
        print(verdict.reason)


def cmd_solve(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    outcome = solve(puzzle.start, puzzle.target, args.method, _limits(args))
    _report(outcome)
    verdict = outcome.verdict
    if isinstance(verdict, Solved):
        actions = verdict.actions
        if args.pure:
            actions = moves_only(actions)
        text = format_actions(actions)
        if args.emit:
            Path(args.emit).write_text(text)
            logger.info("wrote %d actions to %s", len(actions), args.emit)
        else:
            sys.stdout.write(text)
    return EXIT_CODES[outcome.label]


def cmd_check(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    actions = parse_actions(_read_text(args.moves))
    try:
        validate_sequence(
            GameState(puzzle.start), actions, GameState(puzzle.target)
        )
    except SequenceError as error:
        print(f"invalid: {error}")
        return EXIT_UNSOLVABLE
    print(f"valid: {len(actions)} actions")
    return EXIT_SOLVED


def cmd_classify(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    outcome = solve(puzzle.start, puzzle.target, "auto", _limits(args))
    if args.json:
        print(outcome_to_json(outcome))
    else:
        print(f"start:  {describe(puzzle.start)}")
        print(f"target: {describe(puzzle.target)}")
        _report(outcome)
    return EXIT_CODES[outcome.label]


def cmd_oracle(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    limits = _limits(args)
    if args.shortest:
        try:
            actions = shortest_solution(puzzle.start, puzzle.target, limits)
        except SearchExhausted as error:
            print(f"unknown: {error}")
            return EXIT_UNKNOWN
        if actions is None:
            print("unreachable")
            return EXIT_UNSOLVABLE
        print(f"reachable in {len(actions)} moves")
        sys.stdout.write(format_actions(actions))
        return EXIT_SOLVED
    reached = reachable_set(puzzle.start, limits)
    if isinstance(reached, Exhausted):
        print(f"unknown: stopped after {reached.explored} states")
        return EXIT_UNKNOWN
    found = puzzle.target in reached
    print(
        f"{'reachable' if found else 'unreachable'} "
        f"({len(reached)} configurations explored)"
    )
    return EXIT_SOLVED if found else EXIT_UNSOLVABLE


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "counterexample":
        start, target = gen_counterexample(args.n)
        puzzle = PuzzleFile(start, target, f"counterexample n={args.n}")
    else:
        m, n = args.span
        puzzle = random_puzzle(m, n, args.coins, args.seed)
    if args.json:
        print(puzzle_to_json(puzzle))
    else:
        sys.stdout.write(format_puzzle(puzzle))
    return EXIT_SOLVED


def cmd_render(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    fmt = "svg" if args.svg else "ascii"
    if args.moves:
        actions = parse_actions(_read_text(args.moves))
        drawing = render(actions, fmt, start=puzzle.start)
    else:
        drawing = render_puzzle(puzzle, fmt)
    if args.svg:
        Path(args.svg).write_text(drawing + "\n")
    else:
        print(drawing)
    return EXIT_SOLVED


def cmd_poke(args: argparse.Namespace) -> int:
    puzzle = _read_puzzle(args.file)
    start, target = puzzle.start, puzzle.target
    try:
        found = chain_poking_decide(start, target)
        if not found:
            print("unreachable")
            return EXIT_UNSOLVABLE
        if args.action == "decide":
            print("reachable")
            return EXIT_SOLVED
        pokes = chain_poking_solve(start, target)
    except PokingError as error:
        if error.code != "not_a_chain":
            raise
        logger.info("falling back to a poke search: %s", error)
        try:
            path = poke_path(start, target, _limits(args))
        except SearchExhausted as exhausted:
            print(f"unknown: {exhausted}")
            return EXIT_UNKNOWN
        if path is None:
            print("unreachable")
            return EXIT_UNSOLVABLE
        if args.action == "decide":
            print("reachable")
            return EXIT_SOLVED
        pokes = path
    for coin, p in pokes:
        print(f"poke {coin.x} {coin.y} {p.x} {p.y}")
    return EXIT_SOLVED


def build_argparser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="coinflow",
        description="Coin-moving puzzles under the 2-adjacency rule.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log INFO, or DEBUG when given twice",
    )
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.required = True

    def add(
        name: str, handler: Handler, helptext: str
    ) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=helptext)
        sub.set_defaults(handler=handler)
        return sub

    def max_states(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--max-states",
            type=int,
            default=None,
            metavar="N",
            help="state limit for searches (default: $COINFLOW_MAX_STATES)",
        )

    sub = add("solve", cmd_solve, "solve a puzzle file")
    sub.add_argument("file")
    sub.add_argument("--method", choices=METHODS, default="auto")
    sub.add_argument("--emit", metavar="PATH", help="write actions here")
    sub.add_argument(
        "--pure", action="store_true", help="emit moves only, no hand"
    )
    max_states(sub)

    sub = add("check", cmd_check, "replay a move file against a puzzle")
    sub.add_argument("file")
    sub.add_argument("moves")

    sub = add("classify", cmd_classify, "verdict with its evidence")
    sub.add_argument("file")
    sub.add_argument("--json", action="store_true")
    max_states(sub)

    sub = add("oracle", cmd_oracle, "exhaustive search over moves")
    sub.add_argument("file")
    sub.add_argument("--shortest", action="store_true")
    max_states(sub)

    sub = add("gen", cmd_gen, "generate puzzles")
    families = sub.add_subparsers(dest="family", parser_class=_Parser)
    families.required = True
    family = families.add_parser("counterexample")
    family.add_argument("--n", type=int, required=True)
    family.add_argument("--json", action="store_true")
    family = families.add_parser("random")
    family.add_argument("--span", type=_span_size, required=True)
    family.add_argument("--coins", type=int, required=True)
    family.add_argument("--seed", type=int, default=None)
    family.add_argument("--json", action="store_true")

    sub = add("render", cmd_render, "draw a puzzle or a move file")
    sub.add_argument("file")
    sub.add_argument("--moves", metavar="PATH")
    sub.add_argument("--svg", metavar="PATH")

    sub = add("poke", cmd_poke, "the poking game on two configurations")
    sub.add_argument("action", choices=("decide", "solve"))
    sub.add_argument("file")
    max_states(sub)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_argparser().parse_args(argv)
    levels = [logging.WARNING, logging.INFO, logging.DEBUG]
    logging.basicConfig(
        level=levels[min(args.verbose, 2)],
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return int(args.handler(args))
    except CoinflowError as error:
        print(f"error[{error.code}]: {error.args[0]}", file=sys.stderr)
        if isinstance(error, PuzzleFormatError) or error.code in USAGE_CODES:
            return EXIT_USAGE
        return EXIT_UNKNOWN
    except ValueError as error:
        print(f"error[invalid]: {error}", file=sys.stderr)
        return EXIT_USAGE
