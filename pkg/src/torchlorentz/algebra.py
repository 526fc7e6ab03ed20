r"""
Arithmetic in the Lie algebra :math:`\mathfrak{sl}(2, \mathbb{C})`
and the group :math:`G = SL(2, \mathbb{C})`.

The algebra is spanned, as a real vector space, by the rotation generators
:math:`M_r` and the boost generators :math:`L_r`, which satisfy

.. math::

    [M_r, M_s] = \epsilon_{rst} M_t, \quad
    [M_r, L_s] = \epsilon_{rst} L_t, \quad
    [L_r, L_s] = -\epsilon_{rst} M_t .

A generic element is :math:`A = \alpha_r M_r + \beta_r L_r` and the
quadratic forms

.. math::

    c_1 = |\alpha|^2 - |\beta|^2, \qquad c_2 = \alpha \cdot \beta

are constant on the orbits of the adjoint representation. In terms of
matrices :math:`L_r = \sigma_r` and :math:`M_r = -i \sigma_r`, and one has
the identity

.. math::

    \det A = c_1 + 2 i c_2 .

"""
import dataclasses
import logging
from typing import Union

import torch

from torchlorentz.exceptions import NonTracelessError, NotUnimodularError
from torchlorentz.utils.tensor import (
    COMPLEX,
    IDENTITY,
    REAL,
    coords_to_matrix,
    det2,
    expm_traceless,
    frobenius,
    inv_sl2,
    invariants_of,
    lie_bracket,
    matrix_to_coords,
    trace2,
)
from torchlorentz.utils.tolerances import get_tolerances

log = logging.getLogger(__name__)

__all__ = [
    "BASIS_NAMES",
    "AlgebraElement",
    "GroupElement",
    "Invariants",
    "basis",
    "basis_element",
    "to_matrix",
    "from_matrix",
    "bracket",
    "invariants",
    "adjoint",
    "ad_operator",
    "structure_constants",
    "killing_form",
    "exp",
    "group_mul",
    "group_inv",
]

BASIS_NAMES = ("M1", "M2", "M3", "L1", "L2", "L3")

Scalar = Union[int, float]


@dataclasses.dataclass(frozen=True, eq=False)
class AlgebraElement:
    """
    Element of the algebra as a real 6-vector of coordinates.

    The first three coordinates are the rotation coordinates
    :math:`\\alpha_r`, the last three the boost coordinates
    :math:`\\beta_r`.

    Example:

        >>> A = AlgebraElement.from_parts([1, 0, 0], [0, 1, 0])  # M1 + L2
        >>> to_matrix(A)
        tensor([[0.+0.j, 0.-2.j],
                [0.+0.j, 0.+0.j]], dtype=torch.complex128)
    """

    coords: torch.Tensor

    def __post_init__(self) -> None:
        coords = torch.as_tensor(self.coords, dtype=REAL).flatten().clone()
        if coords.shape != torch.Size([6]):
            raise ValueError(
                f"Expected 6 coordinates, got shape {tuple(coords.shape)}"
            )
        if not torch.isfinite(coords).all():
            raise ValueError(f"Coordinates must be finite, got {coords}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_parts(cls, alpha, beta) -> "AlgebraElement":
        return cls(
            torch.cat(
                [
                    torch.as_tensor(alpha, dtype=REAL),
                    torch.as_tensor(beta, dtype=REAL),
                ]
            )
        )

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls(torch.zeros(6, dtype=REAL))

    @property
    def alpha(self) -> torch.Tensor:
        return self.coords[:3]

    @property
    def beta(self) -> torch.Tensor:
        return self.coords[3:]

    @property
    def norm(self) -> float:
        return float(torch.linalg.norm(self.coords))

    def allclose(self, other: "AlgebraElement", atol: float = 1e-9) -> bool:
        return torch.allclose(self.coords, other.coords, rtol=0, atol=atol)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.coords + other.coords)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement(self.coords - other.coords)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(-self.coords)

    def __mul__(self, scalar: Scalar) -> "AlgebraElement":
        return AlgebraElement(self.coords * float(scalar))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        terms = [
            f"{float(c):+.6g}*{name}"
            for c, name in zip(self.coords, BASIS_NAMES)
            if c != 0
        ]
        return f"AlgebraElement({' '.join(terms) or '0'})"


@dataclasses.dataclass(frozen=True, eq=False)
class GroupElement:
    """
    Unimodular complex 2x2 matrix.

    The determinant is checked against the active ``det`` tolerance at
    construction; :class:`NotUnimodularError` is raised otherwise.
    """

    matrix: torch.Tensor

    def __post_init__(self) -> None:
        matrix = torch.as_tensor(self.matrix, dtype=COMPLEX).clone()
        if matrix.shape != torch.Size([2, 2]):
            raise ValueError(
                f"Expected a 2x2 matrix, got shape {tuple(matrix.shape)}"
            )
        if not torch.isfinite(torch.view_as_real(matrix)).all():
            raise ValueError("Matrix entries must be finite")
        det = complex(det2(matrix))
        tol = get_tolerances().det
        if abs(det - 1) > tol * (1 + float(frobenius(matrix)) ** 2):
            raise NotUnimodularError(
                f"Determinant {det} differs from one by more than {tol}"
            )
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(IDENTITY.clone())

    @property
    def entries(self) -> tuple[complex, complex, complex, complex]:
        """
        Entries ``(a, b, c, d)`` of the matrix in row-major order.
        """
        a, b, c, d = self.matrix.flatten().tolist()
        return a, b, c, d

    @property
    def norm(self) -> float:
        return float(frobenius(self.matrix))

    def allclose(self, other: "GroupElement", atol: float = 1e-9) -> bool:
        return torch.allclose(self.matrix, other.matrix, rtol=0, atol=atol)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __neg__(self) -> "GroupElement":
        return GroupElement(-self.matrix)

    def inverse(self) -> "GroupElement":
        return group_inv(self)


@dataclasses.dataclass(frozen=True)
class Invariants:
    """
    The orbit invariants :math:`c_1` and :math:`c_2`.
    """

    c1: float
    c2: float

    @property
    def det(self) -> complex:
        """
        Determinant of the matrix image, :math:`c_1 + 2 i c_2`.
        """
        return complex(self.c1, 2 * self.c2)


def basis() -> dict[str, torch.Tensor]:
    """
    The matrices of the six basis elements, keyed by name.
    """
    return {
        name: coords_to_matrix(row)
        for name, row in zip(BASIS_NAMES, torch.eye(6, dtype=REAL))
    }


def basis_element(name: str) -> AlgebraElement:
    """
    Basis element by name, e.g. ``basis_element("L3")``.
    """
    try:
        index = BASIS_NAMES.index(name)
    except ValueError:
        raise ValueError(
            f"Unknown basis element '{name}', expected one of {BASIS_NAMES}"
        )
    return AlgebraElement(torch.eye(6, dtype=REAL)[index])


def to_matrix(A: AlgebraElement) -> torch.Tensor:
    return coords_to_matrix(A.coords)


def from_matrix(matrix: torch.Tensor) -> AlgebraElement:
    """
    Coordinates of a traceless 2x2 matrix.

    Raises:
        NonTracelessError: if the trace exceeds the ``alg`` tolerance
    """
    matrix = torch.as_tensor(matrix, dtype=COMPLEX)
    trace = complex(trace2(matrix))
    tol = get_tolerances().alg
    if abs(trace) > tol * (1 + float(frobenius(matrix))):
        raise NonTracelessError(f"Matrix has trace {trace}")
    return AlgebraElement(matrix_to_coords(matrix))


def bracket(A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(lie_bracket(A.coords, B.coords))


def invariants(A: AlgebraElement) -> Invariants:
    c1, c2 = invariants_of(A.coords)
    return Invariants(float(c1), float(c2))


def adjoint(g: GroupElement, A: AlgebraElement) -> AlgebraElement:
    r"""
    The adjoint action :math:`A \mapsto g A g^{-1}`.
    """
    X = g.matrix @ to_matrix(A) @ inv_sl2(g.matrix)
    return AlgebraElement(matrix_to_coords(X))


_STRUCTURE = torch.stack(
    [
        lie_bracket(torch.eye(6, dtype=REAL)[i], torch.eye(6, dtype=REAL))
        for i in range(6)
    ]
)


def structure_constants() -> torch.Tensor:
    """
    Tensor ``C`` of shape ``(6, 6, 6)`` such that
    ``[e_i, e_j] = sum_k C[i, j, k] e_k``.
    """
    return _STRUCTURE.clone()


def ad_operator(A: AlgebraElement) -> torch.Tensor:
    r"""
    Real 6x6 matrix of the operator :math:`B \mapsto [A, B]`.

    Column ``j`` holds the coordinates of :math:`[A, e_j]`.
    """
    return torch.einsum("i,ijk->kj", A.coords, _STRUCTURE)


def killing_form(A: AlgebraElement, B: AlgebraElement) -> float:
    r"""
    The Killing form :math:`\mathrm{tr}(\mathrm{ad}_A \, \mathrm{ad}_B)` of the
    real algebra.
    """
    return float(torch.trace(ad_operator(A) @ ad_operator(B)))


def exp(A: AlgebraElement) -> GroupElement:
    """
    Matrix exponential of the matrix image of ``A``.
    """
    return GroupElement(
        expm_traceless(to_matrix(A), get_tolerances().series)
    )


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    return GroupElement(g.matrix @ h.matrix)


def group_inv(g: GroupElement) -> GroupElement:
    return GroupElement(inv_sl2(g.matrix))
