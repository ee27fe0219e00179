"""Exception hierarchy. Every library error derives from PathRiskError."""


class PathRiskError(Exception):
    pass


class DomainError(PathRiskError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ParseError(PathRiskError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class SizeError(PathRiskError, ValueError):
    """Not enough observations for the requested window or statistic."""

    def __init__(self, message, required=None, available=None):
        self.required = required
        self.available = available
        super().__init__(message)


class DegenerateInputError(DomainError):
    """The estimator is undefined on this input (e.g. an all-zero series)."""


class ConfigError(PathRiskError, ValueError):
    pass
