"""Exception hierarchy shared across the toolkit.

The CLI maps TsfsbError subclasses to exit code 1 (domain / validation
problems) and OSError to exit code 2 (I/O problems).
"""


class TsfsbError(Exception):
    """Base class for all toolkit errors."""


class ConfigurationError(TsfsbError):
    """Invalid generator, plan or set configuration."""


class DomainError(TsfsbError):
    """Operation called with arguments outside its domain."""


class PipelineStateError(TsfsbError):
    """Pipeline stage applied out of order (e.g. double normalization)."""


class AlignmentError(TsfsbError):
    """Matrices do not share an identical, identically ordered series set."""


class ParseError(TsfsbError):
    """Malformed interchange file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(TsfsbError):
    """Interchange file violates the schema (e.g. duplicate columns)."""


class EmptyCorpusError(TsfsbError):
    """Corpus ingestion produced zero usable series."""
