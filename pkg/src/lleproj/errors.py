"""Exception types raised by the library."""


class AssumptionError(ValueError):
    """A structural assumption on the data (rank, reconstructibility) fails."""


class InfeasibleStationarityError(ArithmeticError):
    """The Lagrange system for the exact barycentric weights has no solution."""

    def __init__(self, message, index=None):
        super().__init__(message if index is None else f"point {index}: {message}")
        self.index = index


class EigensolverError(RuntimeError):
    """Eigenpairs did not meet the requested residual tolerance."""

    def __init__(self, message, residuals):
        super().__init__(message)
        self.residuals = residuals


class CSVFormatError(ValueError):
    """Malformed CSV input; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line
