# Core Library
import logging
import sys

if sys.version_info < (3, 8):  # pragma: no cover (<PY38)
    # Third party
    import importlib_metadata
else:  # pragma: no cover (PY38+)
    # Core Library
    import importlib.metadata as importlib_metadata

try:
    __version__ = importlib_metadata.version(__name__)
except importlib_metadata.PackageNotFoundError:  # pragma: no cover
    __version__ = "0.0.0"

# First party
from coinflow.exceptions import CoinflowError  # noqa: E402
from coinflow.grid import (  # noqa: E402
    Configuration,
    Position,
    Rectangle,
    make_config,
)
from coinflow.moves import (  # noqa: E402
    Drop,
    GameState,
    Move,
    PickUp,
    replay,
    validate_sequence,
)
from coinflow.solver import solve, verify_outcome  # noqa: E402
from coinflow.span import span, span_components  # noqa: E402
from coinflow.verdicts import SolveOutcome  # noqa: E402

logger = logging.getLogger(__name__)

__all__ = [
    "CoinflowError",
    "Configuration",
    "Drop",
    "GameState",
    "Move",
    "PickUp",
    "Position",
    "Rectangle",
    "SolveOutcome",
    "__version__",
    "make_config",
    "replay",
    "solve",
    "span",
    "span_components",
    "validate_sequence",
    "verify_outcome",
]
