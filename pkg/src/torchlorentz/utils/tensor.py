r"""
Batched tensor helpers for :math:`\mathfrak{sl}(2, \mathbb{C})` and
:math:`SL(2, \mathbb{C})`.

All functions accept arbitrary leading batch dimensions. Algebra elements are
real ``float64`` tensors of shape ``(..., 6)`` holding the coordinates

.. math::

    (\alpha_1, \alpha_2, \alpha_3, \beta_1, \beta_2, \beta_3),
    \qquad A = \alpha_r M_r + \beta_r L_r ,

and matrices are ``complex128`` tensors of shape ``(..., 2, 2)``. The matrix
realisation is :math:`L_r = \sigma_r`, :math:`M_r = -i \sigma_r`, in which

.. math::

    A = w_r \sigma_r, \qquad w_r = \beta_r - i \alpha_r .

"""
import torch

__all__ = [
    "COMPLEX",
    "REAL",
    "PAULI",
    "IDENTITY",
    "coords_to_matrix",
    "matrix_to_coords",
    "lie_bracket",
    "det2",
    "trace2",
    "inv_sl2",
    "dagger",
    "expm_traceless",
    "invariants_of",
    "frobenius",
]

COMPLEX = torch.complex128
REAL = torch.float64

PAULI = torch.tensor(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=COMPLEX,
)
IDENTITY = torch.eye(2, dtype=COMPLEX)


def coords_to_matrix(coords: torch.Tensor) -> torch.Tensor:
    """
    Maps real coordinates of shape ``(..., 6)`` to traceless matrices.
    """
    coords = coords.to(REAL)
    w = coords[..., 3:].to(COMPLEX) - 1j * coords[..., :3].to(COMPLEX)
    return torch.einsum("...r,rij->...ij", w, PAULI)


def matrix_to_coords(matrix: torch.Tensor) -> torch.Tensor:
    """
    Inverse of :func:`coords_to_matrix` on traceless matrices.

    The trace part of the input, if any, is silently discarded.
    """
    m = matrix.to(COMPLEX)
    w1 = (m[..., 0, 1] + m[..., 1, 0]) / 2
    w2 = (m[..., 1, 0] - m[..., 0, 1]) / 2j
    w3 = (m[..., 0, 0] - m[..., 1, 1]) / 2
    w = torch.stack([w1, w2, w3], dim=-1)
    return torch.cat([w.imag.neg(), w.real], dim=-1)


def lie_bracket(x: torch.Tensor, y: torch.Tensor) -> torch.Tensor:
    r"""
    Lie bracket of coordinate tensors.

    In the Pauli realisation the matrix commutator is twice the bracket
    obeying :math:`[M_r, M_s] = \epsilon_{rst} M_t`, so

    .. math::

        [A, B] = \tfrac{1}{2} (X Y - Y X) .

    """
    X, Y = coords_to_matrix(x), coords_to_matrix(y)
    return matrix_to_coords((X @ Y - Y @ X) / 2)


def det2(matrix: torch.Tensor) -> torch.Tensor:
    return (
        matrix[..., 0, 0] * matrix[..., 1, 1]
        - matrix[..., 0, 1] * matrix[..., 1, 0]
    )


def trace2(matrix: torch.Tensor) -> torch.Tensor:
    return matrix[..., 0, 0] + matrix[..., 1, 1]


def inv_sl2(matrix: torch.Tensor) -> torch.Tensor:
    """
    Inverse of unimodular 2x2 matrices via the adjugate.
    """
    a, b = matrix[..., 0, 0], matrix[..., 0, 1]
    c, d = matrix[..., 1, 0], matrix[..., 1, 1]
    return torch.stack(
        [torch.stack([d, -b], dim=-1), torch.stack([-c, a], dim=-1)],
        dim=-2,
    )


def dagger(matrix: torch.Tensor) -> torch.Tensor:
    return matrix.conj().transpose(-2, -1)


def expm_traceless(
    matrix: torch.Tensor, series_threshold: float = 1e-8
) -> torch.Tensor:
    r"""
    Closed-form exponential of traceless 2x2 matrices.

    Since :math:`X^2 = -\det(X) \, e` for traceless :math:`X`,

    .. math::

        \exp X = \cosh(s) \, e + \frac{\sinh s}{s} X, \qquad s^2 = -\det X .

    Both coefficients are even in :math:`s`, so the branch of the square
    root is irrelevant. Where :math:`|\det X|` is below ``series_threshold``
    the coefficients are replaced by their Taylor series in :math:`s^2`.
    """
    matrix = matrix.to(COMPLEX)
    s2 = det2(matrix).neg()
    small = s2.abs() < series_threshold
    s = torch.sqrt(torch.where(small, torch.ones_like(s2), s2))
    cosh = torch.where(small, 1 + s2 / 2 + s2**2 / 24, torch.cosh(s))
    sinhc = torch.where(small, 1 + s2 / 6 + s2**2 / 120, torch.sinh(s) / s)
    return (
        cosh[..., None, None] * IDENTITY + sinhc[..., None, None] * matrix
    )


def invariants_of(coords: torch.Tensor) -> tuple[torch.Tensor, torch.Tensor]:
    r"""
    Orbit invariants :math:`c_1 = |\alpha|^2 - |\beta|^2` and
    :math:`c_2 = \alpha \cdot \beta`.
    """
    alpha, beta = coords[..., :3], coords[..., 3:]
    c1 = alpha.pow(2).sum(dim=-1) - beta.pow(2).sum(dim=-1)
    c2 = (alpha * beta).sum(dim=-1)
    return c1, c2


def frobenius(matrix: torch.Tensor) -> torch.Tensor:
    return torch.linalg.norm(matrix, dim=(-2, -1))
