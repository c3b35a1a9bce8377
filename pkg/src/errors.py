"""Exception hierarchy for the circle diagram calculus."""
from typing import Optional


class CircleCalcError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DiagramSyntaxError(CircleCalcError):
    """Raised when a diagram or form literal cannot be parsed."""

    def __init__(self, message: str, offset: Optional[int] = None):
        self.offset = offset
        if offset is not None:
            message = f"{message} at offset {offset}"
        super().__init__(message)


class DiagramValidationError(CircleCalcError):
    """Crossing arcs, bad involutions, bad region indices or arity mismatches."""


class AlgebraShapeError(CircleCalcError):
    """Structure tensors of the wrong shape or mismatched dimensions."""


class NotAFieldError(CircleCalcError):
    """A field-only computation was requested over a polynomial ring."""

    exit_code = 2


class RefusalError(CircleCalcError):
    """The computation is refused because its preconditions do not hold."""

    exit_code = 2


class BoundExceededError(CircleCalcError):
    """A configured resource bound was exceeded."""

    exit_code = 3

    def __init__(self, name: str, value: int, bound: int):
        self.name = name
        self.value = value
        self.bound = bound
        super().__init__(f"{name}={value} exceeds configured bound {bound}")


def check_bound(name: str, value: int, bound: int) -> None:
    """Raise BoundExceededError when value > bound."""
    if value > bound:
        raise BoundExceededError(name, value, bound)
