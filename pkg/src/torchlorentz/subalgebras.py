r"""
Subalgebras of :math:`\mathfrak{sl}(2, \mathbb{C})` up to conjugation.

Every subalgebra is conjugate to exactly one entry of the following catalog,
labelled by the codimension of the corresponding connected subgroup:

=============  ===  ==========================================================
tag            dim  generators
=============  ===  ==========================================================
``H6``         0    none
``H5Lambda``   1    :math:`M_3 + \lambda L_3`, :math:`\lambda \neq 0`
``H5Zero``     1    :math:`M_3`
``H5Inf``      1    :math:`L_3`
``H5N``        1    :math:`M_1 + L_2`
``H4N``        2    :math:`M_1 + L_2,\ M_2 - L_1`
``H4``         2    :math:`M_3,\ L_3`
``H4Inf``      2    :math:`L_3,\ M_1 + L_2`
``H3Lambda``   3    :math:`M_3 + \lambda L_3,\ M_1 + L_2,\ M_2 - L_1`
``H3Plus``     3    :math:`M_3,\ M_1,\ M_2`
``H3Minus``    3    :math:`M_3,\ L_1,\ L_2`
``H3Zero``     3    :math:`M_3,\ M_1 + L_2,\ M_2 - L_1`
``H3Inf``      3    :math:`L_3,\ M_1 + L_2,\ M_2 - L_1`
``H2``         4    :math:`M_3,\ L_3,\ M_1 + L_2,\ M_2 - L_1`
``H0``         6    the whole algebra
=============  ===  ==========================================================

There is no subalgebra of dimension five. Only ``H0``, ``H3Plus`` and
``H3Minus`` are semisimple.

Identification works invariant-first: dimension, derived algebra, the
abelian and nilpotent tests and the Killing form select the class, and a
conjugator (the *witness*) is then built from the canonical form of a
distinguished member.
"""
import cmath
import dataclasses
import enum
import itertools
import logging
from collections import deque
from collections.abc import Iterable
from typing import Optional

import torch

from torchlorentz.algebra import (
    AlgebraElement,
    GroupElement,
    basis_element,
    bracket,
    invariants,
)
from torchlorentz.exceptions import (
    IdentificationError,
    NotASubalgebraError,
    UnclassifiableDimensionError,
    VerificationError,
)
from torchlorentz.orbits import ElementKind, canonical_form, classify_element
from torchlorentz.utils.tensor import (
    COMPLEX,
    IDENTITY,
    REAL,
    coords_to_matrix,
    inv_sl2,
    lie_bracket,
    matrix_to_coords,
)
from torchlorentz.utils.tolerances import get_tolerances

log = logging.getLogger(__name__)

__all__ = [
    "SubalgebraTag",
    "SubalgebraClass",
    "Subalgebra",
    "InclusionEdge",
    "INCLUSION_EDGES",
    "catalog_basis",
    "catalog_generators",
    "catalog_classes",
    "closure",
    "all_nilpotent",
    "derived_algebra",
    "killing_matrix",
    "is_abelian",
    "is_semisimple",
    "is_solvable",
    "adjoint_subalgebra",
    "is_subspace",
    "same_span",
    "identify",
    "includes",
    "inclusion_witness",
]

MAX_CLOSURE_PASSES = 8


class SubalgebraTag(str, enum.Enum):
    H6 = "H6"
    H5Lambda = "H5Lambda"
    H5Zero = "H5Zero"
    H5Inf = "H5Inf"
    H5N = "H5N"
    H4N = "H4N"
    H4 = "H4"
    H2 = "H2"
    H0 = "H0"
    H3Lambda = "H3Lambda"
    H3Plus = "H3Plus"
    H3Minus = "H3Minus"
    H3Zero = "H3Zero"
    H4Inf = "H4Inf"
    H3Inf = "H3Inf"

    @property
    def codimension(self) -> int:
        return int(self.value[1])

    @property
    def dimension(self) -> int:
        return 6 - self.codimension

    @property
    def parametric(self) -> bool:
        return self in (SubalgebraTag.H5Lambda, SubalgebraTag.H3Lambda)


_T = SubalgebraTag

# generators as linear combinations of basis elements; "lam" stands for the
# parameter of the class
_SPIRAL = {"M3": 1, "L3": "lam"}
_N1 = {"M1": 1, "L2": 1}
_N2 = {"M2": 1, "L1": -1}

_GENERATORS = {
    _T.H6: [],
    _T.H5Lambda: [_SPIRAL],
    _T.H5Zero: [{"M3": 1}],
    _T.H5Inf: [{"L3": 1}],
    _T.H5N: [_N1],
    _T.H4N: [_N1, _N2],
    _T.H4: [{"M3": 1}, {"L3": 1}],
    _T.H2: [{"M3": 1}, {"L3": 1}, _N1, _N2],
    _T.H0: [{name: 1} for name in ("M1", "M2", "M3", "L1", "L2", "L3")],
    _T.H3Lambda: [_SPIRAL, _N1, _N2],
    _T.H3Plus: [{"M3": 1}, {"M1": 1}, {"M2": 1}],
    _T.H3Minus: [{"M3": 1}, {"L1": 1}, {"L2": 1}],
    _T.H3Zero: [{"M3": 1}, _N1, _N2],
    _T.H4Inf: [{"L3": 1}, _N1],
    _T.H3Inf: [{"L3": 1}, _N1, _N2],
}


@dataclasses.dataclass(frozen=True)
class SubalgebraClass:
    """
    Label of a catalog class, with the parameter ``lam`` for ``H5Lambda``
    and ``H3Lambda``.
    """

    tag: SubalgebraTag
    lam: Optional[float] = None

    def __post_init__(self) -> None:
        tag = SubalgebraTag(self.tag)
        object.__setattr__(self, "tag", tag)
        if tag.parametric:
            if self.lam is None or self.lam == 0:
                raise ValueError(f"{tag.value} requires a non-zero lambda")
            object.__setattr__(self, "lam", float(self.lam))
        elif self.lam is not None:
            raise ValueError(f"{tag.value} takes no lambda")

    @property
    def name(self) -> str:
        return self.tag.value

    @property
    def dimension(self) -> int:
        return self.tag.dimension

    def as_dict(self) -> dict:
        return {"tag": self.name, "lambda": self.lam, "dim": self.dimension}

    def __str__(self) -> str:
        return self.name if self.lam is None else f"{self.name}({self.lam:g})"


def catalog_classes(
    lambdas: Iterable[float] = (0.5,),
) -> list[SubalgebraClass]:
    """
    All catalog classes, with the parametric ones repeated for each value
    in ``lambdas``.
    """
    classes = []
    for tag in SubalgebraTag:
        if tag.parametric:
            classes.extend(SubalgebraClass(tag, lam) for lam in lambdas)
        else:
            classes.append(SubalgebraClass(tag))
    return classes


def _orthonormal_rows(rows: torch.Tensor) -> torch.Tensor:
    """
    Orthonormal basis, as rows, of the span of the rows of the input.

    Singular values below ``rank`` times the largest one are discarded,
    and the span is empty if the largest is below the ``alg`` tolerance.
    """
    tol = get_tolerances()
    rows = rows.reshape(-1, 6).to(REAL)
    if rows.shape[0] == 0:
        return torch.empty(0, 6, dtype=REAL)
    _, S, Vh = torch.linalg.svd(rows, full_matrices=False)
    if S[0] <= tol.alg:
        return torch.empty(0, 6, dtype=REAL)
    rank = int((S > tol.rank * S[0]).sum())
    return Vh[:rank].clone()


@dataclasses.dataclass(frozen=True, eq=False)
class Subalgebra:
    """
    Subspace of the algebra, described by an orthonormal basis.

    The basis is a ``(dim, 6)`` tensor whose rows are orthonormal in the
    coordinate space. Construct instances via :func:`closure` or
    :func:`catalog_basis`; bracket closure is checked by :meth:`is_closed`.
    """

    basis: torch.Tensor

    def __post_init__(self) -> None:
        basis = torch.as_tensor(self.basis, dtype=REAL).reshape(-1, 6)
        object.__setattr__(self, "basis", basis.clone())

    @classmethod
    def span(cls, elements: Iterable[AlgebraElement]) -> "Subalgebra":
        """
        Orthonormalised span of the given elements, without closing it.
        """
        coords = [A.coords for A in elements]
        rows = (
            torch.stack(coords) if coords else torch.empty(0, 6, dtype=REAL)
        )
        return cls(_orthonormal_rows(rows))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def elements(self) -> list[AlgebraElement]:
        return [AlgebraElement(row) for row in self.basis]

    def residual(self, coords: torch.Tensor) -> torch.Tensor:
        """
        Norm of the component orthogonal to the span, for coordinates of
        shape ``(..., 6)``.
        """
        projected = (coords @ self.basis.T) @ self.basis
        return torch.linalg.norm(coords - projected, dim=-1)

    def contains(self, A: AlgebraElement) -> bool:
        tol = get_tolerances().alg
        return float(self.residual(A.coords)) <= tol * (1 + A.norm)

    def brackets(self) -> torch.Tensor:
        """
        All brackets of pairs of basis elements, shape ``(dim, dim, 6)``.
        """
        return lie_bracket(self.basis[:, None, :], self.basis[None, :, :])

    def is_closed(self) -> bool:
        if self.dim == 0:
            return True
        tol = get_tolerances().alg
        residuals = self.residual(self.brackets().reshape(-1, 6))
        return bool((residuals <= 10 * tol).all())


def catalog_generators(c: SubalgebraClass) -> list[AlgebraElement]:
    """
    The generators of a catalog class exactly as listed in the catalog.
    """
    generators = []
    for combination in _GENERATORS[c.tag]:
        coords = torch.zeros(6, dtype=REAL)
        for name, coeff in combination.items():
            coeff = c.lam if coeff == "lam" else coeff
            coords += coeff * basis_element(name).coords
        generators.append(AlgebraElement(coords))
    return generators


def catalog_basis(c: SubalgebraClass) -> Subalgebra:
    """
    Orthonormalised span of the generators of a catalog class.
    """
    return Subalgebra.span(catalog_generators(c))


def closure(generators: Iterable[AlgebraElement]) -> Subalgebra:
    """
    Smallest subalgebra containing the generators.

    The span is grown by pairwise brackets of its basis until the numerical
    rank stabilises.
    """
    current = Subalgebra.span(generators)
    for step in range(MAX_CLOSURE_PASSES):
        if current.dim == 0:
            break
        grown = Subalgebra(
            _orthonormal_rows(
                torch.cat([current.basis, current.brackets().reshape(-1, 6)])
            )
        )
        log.debug(
            "Closure pass %d: dim %d -> %d", step, current.dim, grown.dim
        )
        stable = grown.dim == current.dim
        current = grown
        if stable:
            break
    return current


def all_nilpotent(s: Subalgebra) -> bool:
    """
    True if every element of ``s`` is nilpotent.

    Probes the basis vectors and all pairwise sums; since the invariants
    are quadratic forms, their vanishing on this set implies their
    vanishing on the whole span.
    """
    pairs = itertools.combinations(range(s.dim), 2)
    probes = list(s.basis) + [s.basis[i] + s.basis[j] for i, j in pairs]
    return all(
        classify_element(AlgebraElement(p)).kind
        in (ElementKind.NILPOTENT, ElementKind.ZERO)
        for p in probes
    )


def derived_algebra(s: Subalgebra) -> Subalgebra:
    if s.dim == 0:
        return s
    return Subalgebra(_orthonormal_rows(s.brackets()))


def is_abelian(s: Subalgebra) -> bool:
    return derived_algebra(s).dim == 0


def is_solvable(s: Subalgebra) -> bool:
    """
    True if the derived series of ``s`` terminates at zero.
    """
    current = s
    while current.dim > 0:
        derived = derived_algebra(current)
        if derived.dim == current.dim:
            return False
        current = derived
    return True


def killing_matrix(s: Subalgebra) -> torch.Tensor:
    r"""
    Gram matrix of the Killing form of ``s`` in its own basis,

    .. math::

        K_{il} = \mathrm{tr}(\mathrm{ad}_{b_i} \mathrm{ad}_{b_l}) ,

    with the adjoint operators restricted to ``s``.
    """
    ad = torch.einsum("kc,ijc->ikj", s.basis, s.brackets())
    return torch.einsum("ikj,ljk->il", ad, ad)


def is_semisimple(s: Subalgebra) -> bool:
    """
    Cartan's criterion: non-degenerate Killing form.
    """
    if s.dim == 0:
        return False
    eigenvalues = torch.linalg.eigvalsh(killing_matrix(s)).abs()
    return bool(eigenvalues.min() > get_tolerances().rank * eigenvalues.max())


def _adjoint_coords(g: GroupElement, coords: torch.Tensor) -> torch.Tensor:
    X = coords_to_matrix(coords)
    return matrix_to_coords(g.matrix @ X @ inv_sl2(g.matrix))


def adjoint_subalgebra(g: GroupElement, s: Subalgebra) -> Subalgebra:
    """
    The conjugate subalgebra :math:`g s g^{-1}`.
    """
    if s.dim == 0:
        return s
    return Subalgebra(_orthonormal_rows(_adjoint_coords(g, s.basis)))


def is_subspace(s: Subalgebra, t: Subalgebra, atol: float = 1e-8) -> bool:
    if s.dim == 0:
        return True
    return bool((t.residual(s.basis) <= atol).all()) if t.dim else False


def same_span(s: Subalgebra, t: Subalgebra, atol: float = 1e-8) -> bool:
    return s.dim == t.dim and is_subspace(s, t, atol)


def _element_matrix(coords: torch.Tensor) -> list[complex]:
    return coords_to_matrix(coords).flatten().tolist()


def _triangular_witness(
    s: Subalgebra, nilpotent: AlgebraElement
) -> tuple[GroupElement, Optional[AlgebraElement]]:
    """
    Conjugator bringing a subalgebra with a nilpotent ideal into upper
    triangular form, with the diagonal part along a single element.

    Returns the witness and the image of the member of ``s`` with the
    largest diagonal part, or None if ``s`` is purely nilpotent.
    """
    first = canonical_form(nilpotent).conjugator
    aligned = adjoint_subalgebra(first, s)

    best, best_diag = None, 0.0
    for row in aligned.basis:
        a, b, _, _ = _element_matrix(row)
        if abs(a) > best_diag:
            best, best_diag = (a, b), abs(a)
    if best is None or best_diag <= get_tolerances().alg:
        return first, None

    a, b = best
    shift = GroupElement(
        torch.tensor([[1, b / (2 * a)], [0, 1]], dtype=COMPLEX)
    )
    witness = shift @ first
    diagonal = AlgebraElement(
        matrix_to_coords(torch.tensor([[a, 0], [0, -a]], dtype=COMPLEX))
    )
    return witness, diagonal


def _semisimple_witness(s: Subalgebra) -> GroupElement:
    """
    Conjugator mapping a conjugate of su(2) or su(1,1) onto the catalog
    span.

    A member with negative Killing norm is elliptic and is first rotated
    onto the :math:`M_3` axis. The plane complementary to :math:`M_3` then
    consists of off-diagonal matrices with entries ``(c x, conj(c) y)``
    and real ``x y``; a diagonal conjugation brings it to ``|x| = |y|``.
    """
    eigenvalues, eigenvectors = torch.linalg.eigh(killing_matrix(s))
    elliptic = AlgebraElement(eigenvectors[:, 0] @ s.basis)
    report = canonical_form(elliptic)
    if report.element_class.kind is not ElementKind.ROTATION:
        raise IdentificationError(
            f"Expected an elliptic member, found {report.element_class}"
        )
    first = report.conjugator
    aligned = adjoint_subalgebra(first, s)

    m3 = basis_element("M3")
    plane = max(
        (bracket(m3, A) for A in aligned.elements()), key=lambda A: A.norm
    )
    _, x, y, _ = _element_matrix(plane.coords)
    r = abs(x * y) ** 0.5
    delta = cmath.sqrt(r / x)
    scaling = GroupElement(
        torch.tensor([[delta, 0], [0, 1 / delta]], dtype=COMPLEX)
    )
    return scaling @ first


def _class_of_diagonal(diagonal: AlgebraElement) -> SubalgebraClass:
    element_class = classify_element(diagonal)
    if element_class.kind is ElementKind.ROTATION:
        return SubalgebraClass(_T.H3Zero)
    if element_class.kind is ElementKind.BOOST:
        return SubalgebraClass(_T.H3Inf)
    if element_class.kind is ElementKind.MIXED:
        return SubalgebraClass(
            _T.H3Lambda, element_class.nu / element_class.mu
        )
    raise IdentificationError(
        f"Diagonal part of class {element_class.kind.value}"
    )


def _identify_dim1(s: Subalgebra) -> tuple[SubalgebraClass, GroupElement]:
    report = canonical_form(s.elements()[0])
    element_class = report.element_class
    kind = element_class.kind
    if kind is ElementKind.NILPOTENT:
        c = SubalgebraClass(_T.H5N)
    elif kind is ElementKind.ROTATION:
        c = SubalgebraClass(_T.H5Zero)
    elif kind is ElementKind.BOOST:
        c = SubalgebraClass(_T.H5Inf)
    else:
        c = SubalgebraClass(_T.H5Lambda, element_class.nu / element_class.mu)
    return c, report.conjugator


def _identify_dim2(s: Subalgebra) -> tuple[SubalgebraClass, GroupElement]:
    derived = derived_algebra(s)
    if derived.dim == 1:
        witness, _ = _triangular_witness(s, derived.elements()[0])
        return SubalgebraClass(_T.H4Inf), witness
    if derived.dim != 0:
        raise IdentificationError(f"Derived algebra of dim {derived.dim}")
    if all_nilpotent(s):
        report = canonical_form(s.elements()[0])
        return SubalgebraClass(_T.H4N), report.conjugator

    # the member furthest from the nilpotent cone
    def determinant_ratio(coords: torch.Tensor) -> float:
        A = AlgebraElement(coords)
        return abs(invariants(A).det) / A.norm**2

    probes = [s.basis[0], s.basis[1], s.basis[0] + s.basis[1]]
    distinguished = max(probes, key=determinant_ratio)
    report = canonical_form(AlgebraElement(distinguished))
    return SubalgebraClass(_T.H4), report.conjugator


def _identify_dim3(s: Subalgebra) -> tuple[SubalgebraClass, GroupElement]:
    derived = derived_algebra(s)
    if derived.dim == 3:
        eigenvalues = torch.linalg.eigvalsh(killing_matrix(s))
        tag = _T.H3Plus if bool((eigenvalues < 0).all()) else _T.H3Minus
        return SubalgebraClass(tag), _semisimple_witness(s)
    if derived.dim == 2 and all_nilpotent(derived):
        witness, diagonal = _triangular_witness(s, derived.elements()[0])
        if diagonal is None:
            raise IdentificationError("No semisimple member found")
        return _class_of_diagonal(diagonal), witness
    raise IdentificationError(f"Derived algebra of dim {derived.dim}")


def _identify_dim4(s: Subalgebra) -> tuple[SubalgebraClass, GroupElement]:
    derived = derived_algebra(s)
    if derived.dim != 2 or not all_nilpotent(derived):
        raise IdentificationError(f"Derived algebra of dim {derived.dim}")
    witness, _ = _triangular_witness(s, derived.elements()[0])
    return SubalgebraClass(_T.H2), witness


def identify(s: Subalgebra) -> tuple[SubalgebraClass, GroupElement]:
    """
    Identifies a subalgebra with its catalog class.

    Returns:
        The catalog class and a witness ``g`` such that the conjugate
        :math:`g s g^{-1}` equals the span of :func:`catalog_basis`

    Raises:
        NotASubalgebraError: if ``s`` is not closed under the bracket
        UnclassifiableDimensionError: if ``s`` has dimension five
        IdentificationError: if the structure matches no catalog class
        VerificationError: if the witness misses the catalog span
    """
    if not s.is_closed():
        raise NotASubalgebraError("The span is not closed under the bracket")

    if s.dim == 5:
        raise UnclassifiableDimensionError(
            "Reached dimension five, which indicates a numerical rank failure"
        )
    if s.dim == 0:
        c, witness = SubalgebraClass(_T.H6), GroupElement.identity()
    elif s.dim == 6:
        c, witness = SubalgebraClass(_T.H0), GroupElement.identity()
    else:
        identify_by_dim = {
            1: _identify_dim1,
            2: _identify_dim2,
            3: _identify_dim3,
            4: _identify_dim4,
        }
        c, witness = identify_by_dim[s.dim](s)

    if not same_span(adjoint_subalgebra(witness, s), catalog_basis(c), 1e-6):
        raise VerificationError(
            f"Witness for {c} does not reproduce the catalog span"
        )
    log.debug("Identified subalgebra of dim %d as %s", s.dim, c)
    return c, witness


@dataclasses.dataclass(frozen=True)
class InclusionEdge:
    """
    Edge of the inclusion diagram: ``witness`` conjugates the catalog span
    of ``inner`` into the catalog span of ``outer``.

    For parametric classes ``same_lambda`` requires the parameters to agree;
    otherwise an edge into a parametric class holds for every parameter.
    """

    inner: SubalgebraTag
    outer: SubalgebraTag
    witness: tuple[tuple[complex, complex], tuple[complex, complex]] = (
        (1, 0),
        (0, 1),
    )
    same_lambda: bool = False

    def witness_element(self) -> GroupElement:
        return GroupElement(torch.tensor(self.witness, dtype=COMPLEX))


# exp(pi/4 M2): rotation mapping the 3-axis to the 1-axis and 1 to -3
_QUARTER_TURN = (
    (2**-0.5, -(2**-0.5)),
    (2**-0.5, 2**-0.5),
)

INCLUSION_EDGES = (
    InclusionEdge(_T.H6, _T.H5Lambda),
    InclusionEdge(_T.H6, _T.H5Zero),
    InclusionEdge(_T.H6, _T.H5Inf),
    InclusionEdge(_T.H6, _T.H5N),
    InclusionEdge(_T.H5Lambda, _T.H4),
    InclusionEdge(_T.H5Lambda, _T.H3Lambda, same_lambda=True),
    InclusionEdge(_T.H5Zero, _T.H4),
    InclusionEdge(_T.H5Zero, _T.H3Zero),
    InclusionEdge(_T.H5Zero, _T.H3Plus),
    InclusionEdge(_T.H5Zero, _T.H3Minus),
    InclusionEdge(_T.H5Inf, _T.H4),
    InclusionEdge(_T.H5Inf, _T.H4Inf),
    InclusionEdge(_T.H5N, _T.H4N),
    InclusionEdge(_T.H5N, _T.H4Inf),
    InclusionEdge(_T.H4N, _T.H3Lambda),
    InclusionEdge(_T.H4N, _T.H3Zero),
    InclusionEdge(_T.H4N, _T.H3Inf),
    InclusionEdge(_T.H4Inf, _T.H3Inf),
    InclusionEdge(_T.H4Inf, _T.H3Minus, witness=_QUARTER_TURN),
    InclusionEdge(_T.H4, _T.H2),
    InclusionEdge(_T.H3Lambda, _T.H2),
    InclusionEdge(_T.H3Zero, _T.H2),
    InclusionEdge(_T.H3Inf, _T.H2),
    InclusionEdge(_T.H3Plus, _T.H0),
    InclusionEdge(_T.H3Minus, _T.H0),
    InclusionEdge(_T.H2, _T.H0),
)


def _lambda_matches(lam: Optional[float], target: Optional[float]) -> bool:
    if lam is None or target is None:
        return True
    return abs(lam - target) <= get_tolerances().cls * (1 + abs(target))


def inclusion_witness(
    inner: SubalgebraClass, outer: SubalgebraClass
) -> Optional[GroupElement]:
    """
    Conjugator mapping the catalog span of ``inner`` into that of
    ``outer``, composed along a path of :data:`INCLUSION_EDGES`; None if
    ``outer`` contains no conjugate of ``inner``.
    """
    # states are (tag, lambda or None when unconstrained, witness matrix)
    queue = deque([(inner.tag, inner.lam, IDENTITY.clone())])
    seen = set()
    while queue:
        tag, lam, accumulated = queue.popleft()
        if tag is outer.tag and _lambda_matches(lam, outer.lam):
            return GroupElement(accumulated)
        if (tag, lam) in seen:
            continue
        seen.add((tag, lam))
        for edge in INCLUSION_EDGES:
            if edge.inner is not tag:
                continue
            next_lam = lam if edge.same_lambda else None
            matrix = torch.tensor(edge.witness, dtype=COMPLEX) @ accumulated
            queue.append((edge.outer, next_lam, matrix))
    return None


def includes(inner: SubalgebraClass, outer: SubalgebraClass) -> bool:
    """
    True if ``outer`` contains a subalgebra conjugate to ``inner``.
    """
    return inclusion_witness(inner, outer) is not None
