"""Exception hierarchy shared by all dilatia modules."""

from __future__ import annotations


class DilatiaError(Exception):
    """Base class for all errors raised by dilatia.

    Every subclass carries the process ``exit_code`` the command line
    interface returns when the error escapes an experiment.
    """

    exit_code = 1


class ConfigError(DilatiaError, ValueError):
    """Invalid experiment configuration or command line input."""

    exit_code = 2


class MatrixParseError(ConfigError):
    """Malformed matrix text input.

    Parameters
    ----------
    message : str
        Description of the problem.
    line : int
        1-based line number of the offending entry.
    column : int
        1-based column of the offending entry.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DimensionError(DilatiaError, ValueError):
    """Operand shapes are incompatible or unsupported."""

    exit_code = 3


class SymmetryError(DilatiaError, ValueError):
    """A matrix expected to be Hermitian is not."""

    exit_code = 3


class DomainError(DilatiaError, ValueError):
    """Input lies outside the domain of a numerical function."""

    exit_code = 3


class UnsupportedGateError(DilatiaError, ValueError):
    """A gate cannot be handled by the requested backend or exporter."""

    exit_code = 3


class ConvergenceError(DilatiaError, ArithmeticError):
    """An iterative routine hit its iteration cap.

    Parameters
    ----------
    message : str
        Description of the failure.
    residual : float
        Largest remaining off-diagonal measure at the cap.
    """

    exit_code = 3

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class InsufficientStatisticsError(DilatiaError, ArithmeticError):
    """Sampling produced too few post-selected shots for an estimate."""

    exit_code = 3


class ContractionError(DilatiaError, ValueError):
    """An operator that must be a contraction is not.

    Parameters
    ----------
    message : str
        Description of the violation.
    max_singular_value : float
        Largest singular value (or entry modulus) found.
    """

    exit_code = 4

    def __init__(self, message: str, max_singular_value: float):
        super().__init__(message)
        self.max_singular_value = max_singular_value


__all__ = [
    "ConfigError",
    "ContractionError",
    "ConvergenceError",
    "DilatiaError",
    "DimensionError",
    "DomainError",
    "InsufficientStatisticsError",
    "MatrixParseError",
    "SymmetryError",
    "UnsupportedGateError",
]
