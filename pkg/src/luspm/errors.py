"""Exception types shared across the package."""


class LuspmError(Exception):
    """Base class for all package errors."""


class ParseError(LuspmError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UtilityTableError(LuspmError):
    """An item appearing in the database has no external utility entry."""


class CandidateCapExceeded(LuspmError):
    """The exhaustive baseline hit its candidate-set limit."""


class EmbeddingCapExceeded(LuspmError):
    """A single pattern produced more embeddings than the configured cap."""
