# Core Library
from typing import Tuple

DEFAULT_MAX_STATES = 5_000_000
MAX_STATES_ENV = "COINFLOW_MAX_STATES"

# Node budget of the best-first planner when no limits are given
DEFAULT_PLANNER_NODES = 400_000
PLANNER_WEIGHT = 2

# find_extra_coins switches to greedy removal above these sizes
EXHAUSTIVE_EXTRA_K = 2
EXHAUSTIVE_EXTRA_COINS = 64

EXIT_SOLVED = 0
EXIT_UNSOLVABLE = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 3

METHODS: Tuple[str, ...] = (
    "auto",
    "same-span",
    "two-extra",
    "sweep",
    "min-plus1",
    "oracle",
)

# 'L' orientations: the two sides of the span that are hugged
LEFT_BOTTOM = "left-bottom"
TOP_RIGHT = "top-right"
LEFT_TOP = "left-top"
BOTTOM_RIGHT = "bottom-right"
ORIENTATIONS: Tuple[str, ...] = (
    LEFT_BOTTOM,
    TOP_RIGHT,
    LEFT_TOP,
    BOTTOM_RIGHT,
)

SIDES: Tuple[str, ...] = ("left", "right", "top", "bottom")

COIN = "o"
FREE = "."
BLOCK_SEPARATOR = "---"

# Growing a component's 'L' tries this many seed coins; the plain planner
# is only used on spans up to FALLBACK_PLANNER_AREA cells
GROWTH_SEEDS = 8
FALLBACK_PLANNER_AREA = 36
