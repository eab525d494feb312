"""Exception hierarchy shared by the library and the CLI."""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class CommcentError(Exception):
    """Base class for all commcent errors."""

    exit_code = EXIT_DATA


class InvalidParameterError(CommcentError, ValueError):
    """An argument is outside its legal range."""

    exit_code = EXIT_USAGE


class DataError(CommcentError):
    """Input data cannot be used."""

    exit_code = EXIT_DATA


class IngestionError(DataError):
    """An edge list could not be parsed."""

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PartitionError(DataError):
    """A partition does not match its graph."""

    def __init__(self, message: str, node_label: str | None = None) -> None:
        self.node_label = node_label
        super().__init__(message)


class ManifestError(DataError):
    """A suite manifest is empty or malformed."""


class GraphError(DataError):
    """A graph violates the precondition of an operation."""


class NumericError(CommcentError):
    """A numerical procedure failed."""

    exit_code = EXIT_NUMERIC


class ConvergenceError(NumericError):
    """An iterative method did not converge within its iteration cap."""

    def __init__(self, measure: str, iterations: int, residual: float) -> None:
        self.measure = measure
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"{measure} did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class KatzDivergenceError(NumericError):
    """The Katz series diverges for the requested attenuation factor."""

    def __init__(self, attenuation: float, bound: float) -> None:
        self.attenuation = attenuation
        self.bound = bound
        super().__init__(
            f"Katz attenuation {attenuation:.6g} must be below 1/lambda_max = {bound:.6g}"
        )
