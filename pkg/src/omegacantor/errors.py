"""Error types shared across the package.

Every error that can escape a public operation has a stable class name; the
CLI prints that name verbatim, so renaming one is a breaking change.
"""


class OmegacantorError(Exception):
    """Base class for all package errors."""


class PreconditionError(OmegacantorError):
    """An operation was called outside its stated domain."""


class GrowthInsufficient(OmegacantorError):
    """The active scale sequence cannot justify the requested comparison.

    Raised only in profiles whose scales grow too slowly for the
    lexicographic digit rule to match the exact order on the given input.
    """


class CapacityExceeded(OmegacantorError):
    """A construction passed its configured state or enumeration cap."""


class DepthExceeded(OmegacantorError):
    """A stage or truncation depth beyond the profile's max_depth."""


class ParseError(OmegacantorError):
    """Malformed textual input (formula, combo, or automaton)."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{message} (line {line}, col {col})"
        super().__init__(message)


class SortError(OmegacantorError):
    """A formula mixes first-order and second-order variables illegally."""


class UnsupportedAcceptance(OmegacantorError):
    """An automaton file uses an acceptance condition outside the supported set."""
