"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the admissible domain (parameters, points, poles)."""


class ConstructionError(RuntimeError):
    """Polynomial construction failed (singular or inconsistent ansatz)."""


class BuildError(ValueError):
    """Hamiltonian assembly hit a non-finite potential value."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class NumericError(ArithmeticError):
    """A numerical procedure failed to reach its tolerance."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate
