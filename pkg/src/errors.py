"""
Exception hierarchy shared by every mackeykit module.

All errors derive from ValueError so that callers treating bad input as a
value problem keep working; the CLI maps them to exit codes and prints
``to_dict()`` as machine-readable JSON.
"""
from typing import Any, Dict, Optional


class MackeyKitError(ValueError):
    """Base class for mackeykit errors."""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "message": self.message,
            "details": self.details,
        }


class InvalidInput(MackeyKitError):
    """Input data is malformed or internally inconsistent."""


class ComplexInvalid(MackeyKitError):
    """A chain complex fails shape checks or boundary∘boundary = 0."""


class NotChainMap(MackeyKitError):
    """Degreewise matrices do not commute with the boundaries."""


class GroupTooLarge(MackeyKitError):
    """The group exceeds the configured enumeration bound."""

    def __init__(self, order: int, bound: int):
        super().__init__(
            f"Group of order {order} exceeds the configured bound {bound}",
            {"order": order, "bound": bound},
        )
        self.order = order
        self.bound = bound


class BudgetExceeded(MackeyKitError):
    """An enumeration would exceed the configured diagram budget."""

    def __init__(self, degree: int, count: int, budget: int, what: str = "chains"):
        super().__init__(
            f"{count} {what} in degree {degree} exceed the budget of {budget}",
            {"degree": degree, "count": count, "budget": budget, "what": what},
        )
        self.degree = degree
        self.count = count
        self.budget = budget


class NotRegular(MackeyKitError):
    """A group element fixes a simplex setwise without fixing its vertices."""

    def __init__(self, element: tuple, simplex: tuple):
        super().__init__(
            f"Element {list(element)} maps simplex {list(simplex)} to itself "
            f"without fixing its vertices",
            {"element": list(element), "simplex": list(simplex)},
        )
        self.element = element
        self.simplex = simplex


class UnsupportedRepresentation(MackeyKitError):
    """The requested representation has no sphere model."""
