# Core Library
from typing import Any, Optional


class CoinflowError(Exception):
    """Base class of every error raised by coinflow."""

    code = "error"

    def __init__(self, message: str, code: Optional[str] = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {super().__str__()}"


class GeometryError(CoinflowError):
    code = "geometry_precondition"


class IllegalActionError(CoinflowError):
    code = "illegal_move"

    def __init__(self, message: str, code: str, action: Any = None) -> None:
        super().__init__(message, code)
        self.action = action


class SequenceError(CoinflowError):
    """Replay failure; ``index`` is the 0-based failing action or None."""

    def __init__(
        self, message: str, code: str, index: Optional[int] = None
    ) -> None:
        super().__init__(message, code)
        self.index = index


class SubroutineError(CoinflowError):
    code = "insufficient_hand"


class SearchExhausted(CoinflowError):
    code = "exhausted"

    def __init__(self, explored: int, limit: int) -> None:
        super().__init__(
            f"search stopped after {explored} states (limit {limit})"
        )
        self.explored = explored
        self.limit = limit


class PokingError(CoinflowError):
    code = "precondition_violated"


class PuzzleFormatError(CoinflowError):
    code = "parse_error"

    def __init__(
        self,
        message: str,
        code: str = "parse_error",
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        if line is not None:
            message = f"line {line}, column {column or 1}: {message}"
        super().__init__(message, code)
        self.line = line
        self.column = column
