"""
Error types for deficit-lab.

Validation errors subclass ValueError so callers that only care about
"bad input" can catch the builtin.
"""

from typing import Optional


class DeficitLabError(Exception):
    """Base class for all deficit-lab errors."""


class DimensionMismatchError(DeficitLabError, ValueError):
    """Operands have incompatible shapes or subsystem dimensions."""


class NotHermitianError(DeficitLabError, ValueError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class ConvergenceError(DeficitLabError, RuntimeError):
    """An iterative routine hit its iteration cap."""


class InvalidStateError(DeficitLabError, ValueError):
    """A matrix is not a valid density matrix, or a vector is not normalized."""


class InvalidEnsembleError(DeficitLabError, ValueError):
    """Weights are not a distribution or members disagree in dimension."""


class InvalidMeasurementError(DeficitLabError, ValueError):
    """Projectors or POVM elements violate completeness, positivity or orthogonality."""


class InvalidChannelError(DeficitLabError, ValueError):
    """Kraus operators are not trace preserving, or a Bloch map leaves the ball."""


class UnknownSubsystemError(DeficitLabError, ValueError):
    """A subsystem label other than 'A' or 'B' was requested."""


class ConfigurationError(DeficitLabError, ValueError):
    """The configuration file or environment holds an invalid value."""


class ParseError(DeficitLabError, ValueError):
    """A state or measurement document could not be parsed.

    Args:
        message: What went wrong
        path: Source file, if any
        field: Dotted path of the offending field inside the document
        line: 1-based line number when the decoder reports one
    """

    def __init__(
        self,
        message: str,
        path: Optional[str] = None,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        self.message = message
        self.path = path
        self.field = field
        self.line = line
        super().__init__(self._render())

    def _render(self) -> str:
        location = self.path or "<document>"
        if self.line is not None:
            location += f":{self.line}"
        if self.field:
            location += f" [{self.field}]"
        return f"{location}: {self.message}"
