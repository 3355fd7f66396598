from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class ConfigurationError(ValueError):
    """A motion or run configuration violates its invariants."""


class EstimationError(ValueError):
    """A fatigue rate cannot be estimated from the given data."""


class MeasurementParseError(ValueError):
    """A measurement file is malformed.

    ``line`` is the 1-based line number in the source, when known.
    """

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
