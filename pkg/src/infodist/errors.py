"""Exception types shared across the package."""


class InfodistError(Exception):
    """Base class for all package errors."""


class StructureError(InfodistError):
    """Malformed input: bad dimensions, invalid probabilities, mismatched state sets."""


class BudgetError(InfodistError):
    """An exhaustive computation was refused because it exceeds the configured budget."""


class ConsistencyError(InfodistError):
    """An internal certificate failed verification; results must not be trusted."""
