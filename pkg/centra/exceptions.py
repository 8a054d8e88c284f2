"""
Custom exceptions for the centra package.
"""

from __future__ import annotations

from typing import Any


class CentraError(Exception):
    """Base exception for group computation errors."""


class CapExceededError(CentraError):
    """Raised when a computation would exceed a configured cap."""

    def __init__(self, cap_name: str, limit: int, actual: int) -> None:
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        super().__init__(f"{cap_name} cap exceeded: {actual} > {limit}")


class DegreeMismatchError(CentraError):
    """Raised when permutations of different degrees are combined."""

    def __init__(self, expected: int, actual: int) -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Permutation degree mismatch: expected {expected}, got {actual}"
        )


class NotInGroupError(CentraError):
    """Raised when an element or subgroup is not contained in the ambient group."""

    def __init__(self, element: Any) -> None:
        self.element = element
        super().__init__(f"Element {element} is not in the ambient group")


class NotNormalError(CentraError):
    """Raised when a subgroup required to be normal is not."""

    def __init__(self, subgroup_order: int, group_order: int) -> None:
        self.subgroup_order = subgroup_order
        self.group_order = group_order
        super().__init__(
            f"Subgroup of order {subgroup_order} is not normal "
            f"in the group of order {group_order}"
        )


class TrivialGroupError(CentraError):
    """Raised when an operation is undefined on the trivial group."""

    def __init__(self, operation: str) -> None:
        self.operation = operation
        super().__init__(f"{operation} is undefined for the trivial group")


class NotAPrimeError(CentraError):
    """Raised when a prime is required."""

    def __init__(self, value: int) -> None:
        self.value = value
        super().__init__(f"{value} is not a prime")


class NotAPrimePowerError(CentraError):
    """Raised when a prime power is required."""

    def __init__(self, value: int) -> None:
        self.value = value
        super().__init__(f"{value} is not a prime power")


class NotSimpleError(CentraError):
    """Raised when a simple group is required."""

    def __init__(self, order: int) -> None:
        self.order = order
        super().__init__(f"Group of order {order} is not simple")


class UnrecognizedFactorError(CentraError):
    """Raised when a simple group is missing from the recognition table."""

    def __init__(self, order: int) -> None:
        self.order = order
        super().__init__(f"No simple group of order {order} in the recognition table")


class NotAComponentError(CentraError):
    """Raised when a subgroup is expected to be a component but is not."""

    def __init__(self, order: int) -> None:
        self.order = order
        super().__init__(f"Subgroup of order {order} is not a component")


class NotAHomomorphismError(CentraError):
    """Raised when generator images do not extend to a homomorphism."""

    def __init__(self, detail: str) -> None:
        self.detail = detail
        super().__init__(f"Generator images do not define a homomorphism: {detail}")


class InvalidParameterError(CentraError):
    """Raised when a constructor parameter is out of range."""

    def __init__(self, name: str, value: Any, reason: str) -> None:
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid {name}={value!r}: {reason}")


class GroupFormatError(CentraError):
    """Raised when a group text file cannot be parsed."""

    def __init__(self, line_number: int, line: str, reason: str) -> None:
        self.line_number = line_number
        self.line = line
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}: {line!r}")


class SteinitzFormatError(CentraError):
    """Raised when a Steinitz number or expression cannot be parsed."""

    def __init__(self, text: str, reason: str) -> None:
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse {text!r}: {reason}")


class MalformedResultError(CentraError):
    """Raised when a result record is internally inconsistent."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Malformed result: {reason}")
