"""Error kinds shared across modules; PoleAtLevel lives in scalars."""


class ParityError(ValueError):
    """An index combination with odd total weight where even is required."""


class DescentStuck(RuntimeError):
    """Quantum-correction descent could not express a lower-degree residue."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"descent stuck at filtration degree {degree}")


class ResourceError(RuntimeError):
    """A computation exceeds the configured weight budget."""
