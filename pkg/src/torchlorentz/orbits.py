r"""
Adjoint orbits of :math:`\mathfrak{sl}(2, \mathbb{C})`.

Every non-vanishing element can be Lorentz transformed into one of

.. math::

    \mu M_3 + \nu L_3 \ (\mu > 0, \nu \neq 0), \quad
    \mu M_3 \ (\mu > 0), \quad
    \nu L_3 \ (\nu > 0), \quad
    M_1 + L_2 ,

distinguished by the invariants :math:`c_1 + 2 i c_2 = (\mu + i \nu)^2`.
Elements with :math:`c_1 = c_2 = 0` are nilpotent, all others semisimple.

:func:`canonical_form` additionally returns an explicit conjugator, i.e. a
group element :math:`g` with :math:`g A g^{-1}` equal to the representative.
"""
import cmath
import dataclasses
import enum
import logging
import math
from typing import Optional

import torch

from torchlorentz.algebra import (
    AlgebraElement,
    GroupElement,
    Invariants,
    adjoint,
    invariants,
    to_matrix,
)
from torchlorentz.exceptions import (
    DegenerateInputError,
    VerificationError,
    ZeroElementError,
)
from torchlorentz.utils.tensor import COMPLEX
from torchlorentz.utils.tolerances import get_tolerances

log = logging.getLogger(__name__)

__all__ = [
    "ElementKind",
    "ElementClass",
    "OrbitReport",
    "classify_element",
    "canonical_form",
    "adjoint_spectrum",
    "is_semisimple_element",
]

_M3 = AlgebraElement.from_parts([0, 0, 1], [0, 0, 0])
_L3 = AlgebraElement.from_parts([0, 0, 0], [0, 0, 1])
_NILPOTENT = AlgebraElement.from_parts([1, 0, 0], [0, 1, 0])


class ElementKind(str, enum.Enum):
    ZERO = "zero"
    ROTATION = "rotation"
    BOOST = "boost"
    MIXED = "mixed"
    NILPOTENT = "nilpotent"


@dataclasses.dataclass(frozen=True)
class ElementClass:
    """
    Orbit type of an algebra element.

    Only ``mu`` is set for rotations, only ``nu`` for boosts and both for
    the mixed class.
    """

    kind: ElementKind
    mu: Optional[float] = None
    nu: Optional[float] = None

    def __post_init__(self) -> None:
        kind = ElementKind(self.kind)
        object.__setattr__(self, "kind", kind)
        needs_mu = kind in (ElementKind.ROTATION, ElementKind.MIXED)
        needs_nu = kind in (ElementKind.BOOST, ElementKind.MIXED)
        if needs_mu != (self.mu is not None) or needs_nu != (
            self.nu is not None
        ):
            raise ValueError(
                f"Invalid parameters mu={self.mu}, nu={self.nu} "
                f"for class '{kind.value}'"
            )
        if needs_mu and not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if kind is ElementKind.BOOST and not self.nu > 0:
            raise ValueError(f"nu must be positive, got {self.nu}")

    @property
    def is_semisimple(self) -> bool:
        return self.kind in (
            ElementKind.ROTATION,
            ElementKind.BOOST,
            ElementKind.MIXED,
        )

    def representative(self) -> AlgebraElement:
        """
        The canonical representative of the orbit.
        """
        if self.kind is ElementKind.ZERO:
            return AlgebraElement.zero()
        if self.kind is ElementKind.NILPOTENT:
            return _NILPOTENT
        return (self.mu or 0.0) * _M3 + (self.nu or 0.0) * _L3

    def as_dict(self) -> dict:
        return {"class": self.kind.value, "mu": self.mu, "nu": self.nu}


@dataclasses.dataclass(frozen=True)
class OrbitReport:
    """
    Result of :func:`canonical_form`.

    The conjugator satisfies ``adjoint(conjugator, A) == representative``
    up to tolerance, for the input ``A``.
    """

    element_class: ElementClass
    representative: AlgebraElement
    conjugator: GroupElement

    @property
    def invariants(self) -> Invariants:
        return invariants(self.representative)


def classify_element(A: AlgebraElement) -> ElementClass:
    """
    Classifies an algebra element into its adjoint orbit.

    The comparison of the invariants with zero is scale aware: they are
    treated as vanishing below ``cls * (1 + |A|^2)``. For semisimple
    elements the parameters are the real and imaginary parts of the
    principal square root of ``c1 + 2i c2``, each dropped when below
    ``cls * (1 + |A|)``.
    """
    tol = get_tolerances().cls
    norm = A.norm
    if norm <= tol:
        return ElementClass(ElementKind.ZERO)

    inv = invariants(A)
    threshold = tol * (1 + norm**2)
    if abs(inv.c1) <= threshold and abs(inv.c2) <= threshold:
        return ElementClass(ElementKind.NILPOTENT)

    # principal root, so root.real >= 0
    root = cmath.sqrt(inv.det)
    threshold = tol * (1 + norm)
    if abs(root.imag) <= threshold:
        return ElementClass(ElementKind.ROTATION, mu=root.real)
    if abs(root.real) <= threshold:
        return ElementClass(ElementKind.BOOST, nu=abs(root.imag))
    return ElementClass(ElementKind.MIXED, mu=root.real, nu=root.imag)


def is_semisimple_element(A: AlgebraElement) -> bool:
    return classify_element(A).is_semisimple


def _unit_with_positive_lead(v: tuple[complex, complex]) -> list[complex]:
    # scale to unit norm with the larger component real and positive
    lead = v[0] if abs(v[0]) >= abs(v[1]) else v[1]
    phase = lead / abs(lead)
    norm = math.hypot(abs(v[0]), abs(v[1]))
    return [v[0] / (phase * norm), v[1] / (phase * norm)]


def _eigenvector(
    a: complex, b: complex, c: complex, lam: complex
) -> list[complex]:
    # two candidate eigenvectors of [[a, b], [c, -a]]; pick the better one
    u = (b, lam - a)
    v = (lam + a, c)
    best = max((u, v), key=lambda w: abs(w[0]) ** 2 + abs(w[1]) ** 2)
    return _unit_with_positive_lead(best)


def _semisimple_frame(matrix: torch.Tensor, target: complex) -> torch.Tensor:
    """
    Unimodular change of basis diagonalising a semisimple traceless matrix.

    ``target`` is the desired top-left eigenvalue; the exact eigenvalue
    of ``matrix`` closest to it is used.
    """
    a, b, c, _ = matrix.flatten().tolist()
    root = cmath.sqrt(a * a + b * c)
    lam = root if abs(root - target) <= abs(root + target) else -root
    v1 = _eigenvector(a, b, c, lam)
    v2 = _eigenvector(a, b, c, -lam)
    scale = cmath.sqrt(v1[0] * v2[1] - v2[0] * v1[1])
    return torch.tensor(
        [[v1[0] / scale, v2[0] / scale], [v1[1] / scale, v2[1] / scale]],
        dtype=COMPLEX,
    )


def _nilpotent_frame(matrix: torch.Tensor) -> torch.Tensor:
    r"""
    Unimodular :math:`P` with :math:`P^{-1} X P` the matrix of
    :math:`M_1 + L_2`, i.e. ``[[0, -2i], [0, 0]]``.

    The second column is a vector outside the kernel of :math:`X`, the first
    column is its image scaled by :math:`i/2`.
    """
    a, b, c, _ = matrix.flatten().tolist()
    image_e1, image_e2 = (a, c), (b, -a)
    if abs(image_e1[0]) ** 2 + abs(image_e1[1]) ** 2 >= (
        abs(image_e2[0]) ** 2 + abs(image_e2[1]) ** 2
    ):
        p2, image = (1.0, 0.0), image_e1
    else:
        p2, image = (0.0, 1.0), image_e2
    p1 = (0.5j * image[0], 0.5j * image[1])
    scale = cmath.sqrt(p1[0] * p2[1] - p2[0] * p1[1])
    return torch.tensor(
        [[p1[0] / scale, p2[0] / scale], [p1[1] / scale, p2[1] / scale]],
        dtype=COMPLEX,
    )


def canonical_form(A: AlgebraElement) -> OrbitReport:
    """
    Canonical representative of the orbit of ``A`` with a conjugator.

    For semisimple elements the matrix image is diagonalised by its
    eigenvectors; for nilpotent elements the kernel is mapped to the first
    basis vector. The phases of the conjugator are arbitrary.

    Raises:
        ZeroElementError: if ``A`` vanishes to tolerance
        VerificationError: if the conjugator misses the representative
    """
    element_class = classify_element(A)
    if element_class.kind is ElementKind.ZERO:
        raise ZeroElementError("The zero element has no canonical form")

    matrix = to_matrix(A)
    if element_class.kind is ElementKind.NILPOTENT:
        frame = _nilpotent_frame(matrix)
    else:
        target = complex(element_class.nu or 0.0, -(element_class.mu or 0.0))
        frame = _semisimple_frame(matrix, target)

    # the conjugator is the inverse of the frame
    (p, q), (r, s) = frame.tolist()
    conjugator = GroupElement(
        torch.tensor([[s, -q], [-r, p]], dtype=COMPLEX)
    )
    representative = element_class.representative()

    residual = (adjoint(conjugator, A) - representative).norm
    log.debug("Canonical form residual %.3g", residual)
    if residual > 1e-8 * (1 + A.norm):
        raise VerificationError(
            f"Conjugator maps {A} to within {residual:.3g} of the "
            f"representative of class '{element_class.kind.value}'"
        )

    return OrbitReport(element_class, representative, conjugator)


def adjoint_spectrum(
    mu: float, nu: float
) -> list[tuple[complex, torch.Tensor]]:
    r"""
    Eigenpairs of :math:`\rho = \mathrm{ad}(\mu M_3 + \nu L_3)` on the
    complexified algebra.

    .. math::

        \rho M_3 = \rho L_3 = 0, \\
        (\rho \mp i\mu - \nu)(M_1 + L_2 \mp i M_2 \pm i L_1) = 0, \\
        (\rho \mp i\mu + \nu)(M_1 - L_2 \mp i M_2 \mp i L_1) = 0 .

    Returns:
        List of six ``(eigenvalue, eigenvector)`` pairs; eigenvectors are
        ``complex128`` tensors in the ``(M1, M2, M3, L1, L2, L3)`` basis

    Raises:
        DegenerateInputError: if ``mu`` and ``nu`` both vanish
    """
    if abs(mu) <= get_tolerances().cls and abs(nu) <= get_tolerances().cls:
        raise DegenerateInputError("mu and nu cannot both vanish")

    def vec(*coords: complex) -> torch.Tensor:
        return torch.tensor(coords, dtype=COMPLEX)

    return [
        (0j, vec(0, 0, 1, 0, 0, 0)),
        (0j, vec(0, 0, 0, 0, 0, 1)),
        (complex(nu, mu), vec(1, -1j, 0, 1j, 1, 0)),
        (complex(nu, -mu), vec(1, 1j, 0, -1j, 1, 0)),
        (complex(-nu, mu), vec(1, -1j, 0, -1j, -1, 0)),
        (complex(-nu, -mu), vec(1, 1j, 0, 1j, -1, 0)),
    ]
