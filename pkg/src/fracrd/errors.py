"""Exception hierarchy shared across the package."""


class FracRDError(Exception):
    """Base class for all solver errors."""


class GridError(FracRDError, ValueError):
    """Invalid grid geometry or mismatched field shapes."""


class ConfigError(FracRDError, ValueError):
    """Malformed or out-of-range configuration.

    ``line`` is the 1-based line number in the config text when known.
    """

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DivergenceError(FracRDError, RuntimeError):
    """A non-finite value (or a forbidden sign) appeared during time stepping."""

    def __init__(self, message, stage=None, step=None):
        self.stage = stage
        self.step = step
        super().__init__(message)


class OracleError(FracRDError, RuntimeError):
    """A dense reference computation failed its own residual check."""
