"""Exception types, split so the CLI can map them to distinct exit codes."""


class CvnetError(Exception):
    """Base class for all package errors."""


class ParameterError(CvnetError, ValueError):
    """Invalid argument to a generator, protocol or analytic formula."""


class GraphFormatError(CvnetError, ValueError):
    """Malformed graph file. Carries the offending 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NumericalError(CvnetError, RuntimeError):
    """Numerical failure: degenerate pivot, ill-conditioning, pairing failure."""


class SingularPivotError(NumericalError):
    """Measurement pivot too close to zero to invert."""
