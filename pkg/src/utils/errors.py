"""
Error types raised by carpetlab
"""


class CarpetLabError(Exception):
    """Base class for all carpetlab errors"""

    exit_status = 1


class SpecValidationError(CarpetLabError, ValueError):
    """A candidate carpet spec violates one of its invariants"""

    def __init__(self, message, field=None, digit_index=None):
        self.field = field
        self.digit_index = digit_index
        location = []
        if field is not None:
            location.append(f"field '{field}'")
        if digit_index is not None:
            location.append(f"digit #{digit_index}")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class WeightsError(CarpetLabError, ValueError):
    """A weight vector is not a valid probability vector for the spec"""


class FitError(CarpetLabError, ValueError):
    """A slope fit cannot be computed from the given series"""


class AscentError(CarpetLabError, ValueError):
    """Invalid input for the numerical ascent"""


class DepthOverflowError(CarpetLabError):
    """A cylinder level exceeds the exact-integer capacity"""

    exit_status = 2


class BudgetExceededError(CarpetLabError):
    """An enumeration would exceed the configured word budget"""

    exit_status = 2

    def __init__(self, level, words, budget):
        self.level = level
        self.words = words
        self.budget = budget
        super().__init__(
            f"level {level} needs {words} words, over the enumeration budget of {budget}"
        )
