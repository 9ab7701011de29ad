"""
Exception hierarchy for the coxsplit toolkit
Library code raises these; only main.py turns them into exit statuses
"""


class CoxsplitError(Exception):
    """Base class for every error raised by the toolkit"""


class InputError(CoxsplitError, ValueError):
    """Malformed system, decomposition, trace, word or subset input"""


class ResourceBoundExceeded(CoxsplitError, RuntimeError):
    """A configured cap was hit before the computation finished"""

    def __init__(self, cap: str, limit: int, detail: str = ""):
        self.cap = cap
        self.limit = limit
        message = f"resource bound exceeded: {cap} cap {limit}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class InvalidMoveError(CoxsplitError, ValueError):
    """A split move or trace step that does not apply to the current decomposition"""


class PreconditionError(CoxsplitError, ValueError):
    """An operation was called outside its precondition"""
