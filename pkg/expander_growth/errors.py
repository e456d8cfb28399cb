from __future__ import annotations

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_CONVERGENCE = 3
EXIT_CONSTRUCTION = 4


class ExpanderGrowthError(Exception):
    exit_code = EXIT_INPUT


class InvalidInputError(ExpanderGrowthError, ValueError):
    """A parameter or argument violates an operation's precondition."""


class GraphInvariantError(InvalidInputError):
    """Edge data would produce a non-simple or asymmetric graph."""


class EdgeListParseError(InvalidInputError):
    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class TraversalBudgetError(ExpanderGrowthError, RuntimeError):
    pass


class ConvergenceError(ExpanderGrowthError, RuntimeError):
    exit_code = EXIT_CONVERGENCE

    def __init__(self, message: str, residual: float, oscillation: float = float("nan")) -> None:
        super().__init__(
            f"{message} (last residual {residual:.3e}, oscillation {oscillation:.3e})"
        )
        self.residual = residual
        self.oscillation = oscillation


class ConstructionError(ExpanderGrowthError, RuntimeError):
    exit_code = EXIT_CONSTRUCTION
