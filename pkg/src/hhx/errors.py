"""Shared exception types, mapped onto CLI exit statuses."""


class FormatError(ValueError):
    """Malformed or unparseable input (bad JSON shape, unknown names). CLI exit 2."""


class ValidationError(ValueError):
    """Well-formed input that violates a semantic requirement. CLI exit 1."""


class BudgetError(RuntimeError):
    """A hom-space exceeded the column budget. CLI exit 3."""

    def __init__(self, degree: int, dimension: int, budget: int):
        self.degree = degree
        self.dimension = dimension
        self.budget = budget
        super().__init__(
            f"hom-space in degree {degree} has dimension {dimension}, "
            f"exceeding the budget of {budget} columns"
        )


class InternalError(RuntimeError):
    """An invariant the engine relies on was violated; indicates a bug."""
