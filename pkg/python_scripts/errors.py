"""Exceptions raised by the blow-up verification scripts."""


class BlowupError(Exception):
    """Base class for every error raised by these scripts."""


class TrivialWeightError(BlowupError, ValueError):
    """A character that should describe an isolated fixed point holds the weight 1."""


class DegenerateSpecialization(BlowupError, ZeroDivisionError):
    """A weight evaluated to 1 under the chosen specialization, so theta has a pole."""

    def __init__(self, weight, value, seed=None):
        self.weight = weight
        self.value = value
        self.seed = seed
        super().__init__(
            f"theta factor degenerated: weight {weight} evaluates to {value} "
            f"(specialization seed {seed})"
        )


class InvertNonUnit(BlowupError, ArithmeticError):
    """Series inversion requested for a series whose lowest coefficient is zero."""


class TruncationError(BlowupError, ValueError):
    """A coefficient was requested at or beyond the known truncation order."""


class IntegralityViolation(BlowupError, ArithmeticError):
    """An exponent that must be an integer came out fractional or negative."""


class CharacterRankError(BlowupError, AssertionError):
    """A tangent character failed its dimension check."""


class CacheFormatError(BlowupError, ValueError):
    """A line of the enumeration cache could not be parsed."""
