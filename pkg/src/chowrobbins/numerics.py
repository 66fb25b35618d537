"""Exact rational arithmetic and the numeric-mode policy.

Every exact quantity in the package is a ``fractions.Fraction``: game values,
probabilities, payoff atoms, and the coefficients of guessed rational
functions.  The mode object decides how stop-vs-go comparisons are made:
exactly, or in float with an asymmetric epsilon guard.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

DEFAULT_EPSILON = 1e-12
MAX_EPSILON = 1e-6


@dataclass(frozen=True)
class NumericMode:
    """Arithmetic policy for the induction engines.

    ``exact`` selects Fraction arithmetic with exact comparisons.  Otherwise
    values are float64 and "continue" must beat "stop" by at least
    ``epsilon``; rounding noise can then only err toward stopping (the
    guaranteed payoff), never falsely declare a go.
    """

    exact: bool = False
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        eps = self.epsilon
        if self.exact:
            if eps != 0.0:
                object.__setattr__(self, "epsilon", 0.0)
        elif not (0.0 <= eps <= MAX_EPSILON):
            raise DomainError(
                f"decision epsilon must lie in [0, {MAX_EPSILON}], got {eps!r}"
            )


EXACT = NumericMode(exact=True, epsilon=0.0)
FLOAT = NumericMode()


def float_mode(epsilon: float = DEFAULT_EPSILON) -> NumericMode:
    return NumericMode(exact=False, epsilon=epsilon)


def rational(num: int, den: int = 1) -> Fraction:
    """Normalized fraction with positive denominator; den must be nonzero."""
    return Fraction(num, den)


def as_fraction(x) -> Fraction:
    """Coerce a threshold/goal argument to an exact Fraction.

    Strings accept both "3/5" and decimal notation "0.6".  Floats are read
    through their shortest decimal representation, so 0.6 means 3/5 rather
    than the nearest binary double.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"cannot interpret {x!r} as an exact rational")


def prefer_continue(continue_value, stop_value, mode: NumericMode) -> bool:
    """True iff continuing beats stopping under the mode's comparison.

    Ties resolve to stop: the certain payoff is taken when the expected
    continuation is no better.
    """
    if mode.exact:
        return continue_value > stop_value
    return continue_value > stop_value + mode.epsilon
