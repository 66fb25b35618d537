"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConvergenceError(RuntimeError):
    """An iterative computation could not certify its result."""


class CutoffBeyondCap(ConvergenceError):
    """A position is still a stop at the largest horizon searched.

    Not a proof that stopping is optimal for every horizon; only that the
    go-cutoff, if it exists, exceeds the cap.
    """

    def __init__(self, position, n_cap):
        self.position = position
        self.n_cap = n_cap
        super().__init__(
            f"position {tuple(position)} is still a stop at every horizon <= {n_cap}"
        )


class NoFitError(RuntimeError):
    """No rational function within the degree budget interpolates the data."""


class ThresholdViolation(RuntimeError):
    """A formula's validity is not a clean threshold in n.

    Raised when the verification window around a candidate smallest-valid-n
    shows the formula holding and failing non-monotonically.
    """
