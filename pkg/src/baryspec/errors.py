"""Exception types shared across the package."""


class GraphError(ValueError):
    """Malformed graph input: self-loop, endpoint out of range, bad file."""


class CapacityError(RuntimeError):
    """A configured size cap would be exceeded."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class NumericError(ArithmeticError):
    """Eigensolver failure or a violated numerical identity."""
