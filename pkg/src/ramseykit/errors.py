"""Shared exception types."""


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class BudgetExceededError(RuntimeError):
    """A search ran out of its node/size budget before reaching a verdict.

    Raised instead of returning a possibly wrong answer; callers map this
    to the distinguished "budget" verdict (CLI exit status 2).
    """


class DegenerateMatrixError(Exception):
    """The zero matrix: every vector solves the system, so the partition
    regularity question is trivial and no certificate is meaningful."""


class MpcExpansionError(InputError):
    """A generator tuple whose expansion leaves the positive integers."""

    def __init__(self, level, pattern, value):
        self.level = level
        self.pattern = tuple(pattern)
        self.value = value
        super().__init__(
            f"not expandable over the positive integers: level {level}, "
            f"coefficients {self.pattern} give value {value}"
        )
