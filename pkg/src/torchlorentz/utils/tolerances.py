"""
Numerical tolerances shared by every module.

The active :class:`Tolerances` live in a context variable, so that a block of
code can temporarily tighten or loosen them without touching global state:

.. code-block:: python

    with use_tolerances(Tolerances.uniform(1e-6)):
        report = canonical_form(element)

"""
import contextlib
import contextvars
import dataclasses
from collections.abc import Iterator

from jsonargparse.typing import OpenUnitInterval

__all__ = [
    "Tolerances",
    "PositiveTolerance",
    "get_tolerances",
    "use_tolerances",
]

# tolerances are floats in the open unit interval
PositiveTolerance = OpenUnitInterval


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """
    Dataclass collecting the comparison tolerances.

    Args:
        det:
            Allowed deviation of a determinant from one for a matrix to be
            accepted as a group element
        alg:
            Tolerance for algebra identities, e.g. tracelessness and
            closure under the bracket
        cls:
            Tolerance on the orbit invariants when classifying an element,
            scaled by ``1 + |A|^2``
        rank:
            Relative singular-value threshold used for numerical rank
        member:
            Residual tolerance for subgroup membership, scaled by the size
            of the matrix
        series:
            Magnitude of the determinant below which the exponential of a
            traceless matrix is evaluated by its Taylor series
    """

    det: float = 1e-9
    alg: float = 1e-9
    cls: float = 1e-9
    rank: float = 1e-8
    member: float = 1e-9
    series: float = 1e-8

    def __post_init__(self) -> None:
        for field in dataclasses.fields(self):
            value = getattr(self, field.name)
            if not value > 0:
                raise ValueError(
                    f"Tolerance '{field.name}' must be positive, got {value}"
                )

    @classmethod
    def uniform(cls, tol: PositiveTolerance) -> "Tolerances":
        """
        Tolerances with every comparison threshold set to ``tol``.

        The rank threshold and the series switch are not comparisons and
        keep their defaults.
        """
        return cls(det=tol, alg=tol, cls=tol, member=tol)

    def as_dict(self) -> dict[str, float]:
        return dataclasses.asdict(self)


_ACTIVE: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "torchlorentz_tolerances", default=Tolerances()
)


def get_tolerances() -> Tolerances:
    """
    Returns the tolerances active in the current context.
    """
    return _ACTIVE.get()


@contextlib.contextmanager
def use_tolerances(tolerances: Tolerances) -> Iterator[Tolerances]:
    """
    Context manager that activates ``tolerances`` for the enclosed block.
    """
    token = _ACTIVE.set(tolerances)
    try:
        yield tolerances
    finally:
        _ACTIVE.reset(token)
