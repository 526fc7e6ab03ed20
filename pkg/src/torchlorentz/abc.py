"""
Abstract base classes for subgroups and group actions.
"""
import abc
from inspect import signature
from typing import Any

__all__ = [
    "GroupAction",
    "MatrixGroup",
]


def _check_methods_match(cls: type[abc.ABC], C: type, *methods: str) -> bool:
    """
    Check if each method is present in C with the same number of
    parameters as in cls.
    """
    for m in methods:
        try:
            method = getattr(C, m)
        except AttributeError:
            return False

        if len(signature(method).parameters) != len(
            signature(getattr(cls, m)).parameters
        ):
            return False

    return True


class MatrixGroup(abc.ABC):
    """
    Abstract base class for subsets of SL(2,C) with a membership test.

    .. code:: python

        def contains(self, g: GroupElement) -> bool:
            ...

    """

    @abc.abstractmethod
    def contains(self, g) -> bool:
        """
        Returns True if the group element ``g`` is a member.
        """
        ...

    def __contains__(self, g) -> bool:
        return self.contains(g)

    @classmethod
    def __subclasshook__(cls, C):
        return _check_methods_match(cls, C, "contains")


class GroupAction(abc.ABC):
    """
    Abstract base class for left actions of SL(2,C) on a space.

    Implementations must satisfy ``act(g * h, p) == act(g, act(h, p))``.
    """

    @abc.abstractmethod
    def act(self, g, point: Any) -> Any:
        """
        Returns the image of ``point`` under the group element ``g``.
        """
        ...

    @classmethod
    def __subclasshook__(cls, C):
        return _check_methods_match(cls, C, "act")
