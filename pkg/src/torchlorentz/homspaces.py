r"""
Homogeneous spaces of :math:`SL(2, \mathbb{C})` of dimension below six.

Every such space is isomorphic to a quotient :math:`G/H` by a closed
subgroup, and is labelled :math:`\Pi` with the indices of the stabilizer
:math:`H`. The low dimensional ones are realised concretely:

* four-vectors, as Hermitian matrices :math:`x = x^k \sigma_k` on which
  :math:`g` acts by :math:`x \mapsto g x g^\dagger`;
* velocity rays, i.e. four-vectors up to a non-zero real factor;
* spinors in :math:`\mathbb{C}^2`, their complex rays (the celestial
  sphere) and their classes modulo a closed subgroup :math:`S` of
  :math:`\mathbb{C}^*`;
* adjoint orbits in the algebra.

A covariant map :math:`\Pi \to \Pi'` exists if and only if the stabilizer
of :math:`\Pi'` contains a conjugate of the stabilizer of :math:`\Pi`;
:func:`covariant_map_exists` decides the cases where this is settled by
the subalgebra inclusions and the normalizers.
"""
import cmath
import dataclasses
import enum
import logging
import math
from typing import Any, Optional, Union

import torch

from torchlorentz.abc import GroupAction
from torchlorentz.algebra import AlgebraElement, GroupElement, adjoint
from torchlorentz.exceptions import (
    InvalidDescriptorError,
    NotMemberError,
    UnsupportedError,
    UnsupportedScalarGroupError,
    VerificationError,
    ZeroElementError,
    ZeroSpinorError,
    ZeroVectorError,
)
from torchlorentz.orbits import ElementKind, classify_element
from torchlorentz.subalgebras import includes
from torchlorentz.subgroups import (
    H2,
    H4,
    H4N,
    H4NKNEta,
    H4NN,
    H3Inf,
    H3InfN,
    H3Lambda,
    H3LambdaN,
    H3Minus,
    H3MinusPlus,
    H3Plus,
    H3Zero,
    H3ZeroK,
    SubgroupDescriptor,
    normalizer,
)
from torchlorentz.utils.tensor import (
    COMPLEX,
    IDENTITY,
    PAULI,
    REAL,
    dagger,
    det2,
)
from torchlorentz.utils.tolerances import get_tolerances

log = logging.getLogger(__name__)

__all__ = [
    "FourVector",
    "FourVectorOrbit",
    "FourVectorReport",
    "SpaceLabel",
    "ScalarKind",
    "ScalarSubgroup",
    "MapKind",
    "CovariantMapResult",
    "MinkowskiAction",
    "SpinorAction",
    "CelestialAction",
    "AdjointAction",
    "act_fourvector",
    "classify_fourvector",
    "classify_velocity",
    "velocity_scale_factor",
    "lorentz_matrix",
    "act_celestial",
    "mobius",
    "spinor_stabilizer",
    "lightcone_from_spinor",
    "su2_transport",
    "adjoint_orbit_label",
    "covariant_map_exists",
]

# sigma_0 = e followed by the Pauli matrices
SIGMA = torch.cat([IDENTITY.unsqueeze(0), PAULI])

INFINITY = complex(math.inf, 0)


@dataclasses.dataclass(frozen=True)
class FourVector:
    """
    Minkowski four-vector with components ``(x0, x1, x2, x3)``.
    """

    x0: float
    x1: float
    x2: float
    x3: float

    @classmethod
    def from_tensor(cls, x: torch.Tensor) -> "FourVector":
        return cls(*(float(xi) for xi in x))

    @classmethod
    def from_matrix(cls, matrix: torch.Tensor) -> "FourVector":
        """
        Components of a Hermitian matrix, :math:`x^k = \\frac12
        \\mathrm{tr}(\\sigma_k x)`.
        """
        components = torch.einsum("kij,ji->k", SIGMA, matrix.to(COMPLEX)) / 2
        return cls.from_tensor(components.real)

    @property
    def components(self) -> torch.Tensor:
        return torch.tensor([self.x0, self.x1, self.x2, self.x3], dtype=REAL)

    @property
    def matrix(self) -> torch.Tensor:
        return torch.einsum("k,kij->ij", self.components.to(COMPLEX), SIGMA)

    @property
    def norm(self) -> float:
        """
        Minkowski norm :math:`x_0^2 - |\\vec x|^2`, equal to the determinant
        of the matrix image.
        """
        return self.x0**2 - self.x1**2 - self.x2**2 - self.x3**2

    def allclose(self, other: "FourVector", atol: float = 1e-9) -> bool:
        return torch.allclose(
            self.components, other.components, rtol=0, atol=atol
        )

    def as_list(self) -> list[float]:
        return [self.x0, self.x1, self.x2, self.x3]


class FourVectorOrbit(str, enum.Enum):
    TIMELIKE_FUTURE = "timelike_future"
    TIMELIKE_PAST = "timelike_past"
    LIGHTLIKE_FUTURE = "lightlike_future"
    LIGHTLIKE_PAST = "lightlike_past"
    SPACELIKE = "spacelike"

    @property
    def causal_type(self) -> str:
        return self.value.split("_")[0]


@dataclasses.dataclass(frozen=True)
class SpaceLabel:
    """
    Label :math:`\\Pi` of a homogeneous space, carrying the indices of its
    stabilizer.
    """

    stabilizer: SubgroupDescriptor

    @property
    def name(self) -> str:
        return "Pi" + self.stabilizer.family[1:]

    @property
    def dimension(self) -> int:
        return self.stabilizer.codimension

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "params": self.stabilizer.params(),
            "dim": self.dimension,
        }

    def __str__(self) -> str:
        params = ", ".join(
            f"{k}={v}" for k, v in self.stabilizer.params().items()
        )
        return f"{self.name}({params})" if params else self.name


@dataclasses.dataclass(frozen=True)
class FourVectorReport:
    """
    Result of :func:`classify_fourvector`.

    The witness maps the input to ``scale`` times the representative.
    """

    orbit: FourVectorOrbit
    stabilizer: SubgroupDescriptor
    label: SpaceLabel
    witness: GroupElement
    representative: FourVector
    scale: float


def act_fourvector(g: GroupElement, x: FourVector) -> FourVector:
    return FourVector.from_matrix(g.matrix @ x.matrix @ dagger(g.matrix))


_REPRESENTATIVES = {
    FourVectorOrbit.TIMELIKE_FUTURE: (FourVector(1, 0, 0, 0), H3Plus),
    FourVectorOrbit.TIMELIKE_PAST: (FourVector(-1, 0, 0, 0), H3Plus),
    FourVectorOrbit.LIGHTLIKE_FUTURE: (FourVector(1, 0, 0, 1), H3Zero),
    FourVectorOrbit.LIGHTLIKE_PAST: (FourVector(-1, 0, 0, -1), H3Zero),
    FourVectorOrbit.SPACELIKE: (FourVector(0, 0, 0, 1), H3Minus),
}


def _orbit_of(x: FourVector) -> FourVectorOrbit:
    tol = get_tolerances().cls
    size = float(torch.linalg.norm(x.components))
    if size <= tol:
        raise ZeroVectorError("The zero four-vector has no orbit")
    if abs(x.norm) <= tol * (1 + size**2):
        return (
            FourVectorOrbit.LIGHTLIKE_FUTURE
            if x.x0 > 0
            else FourVectorOrbit.LIGHTLIKE_PAST
        )
    if x.norm < 0:
        return FourVectorOrbit.SPACELIKE
    return (
        FourVectorOrbit.TIMELIKE_FUTURE
        if x.x0 > 0
        else FourVectorOrbit.TIMELIKE_PAST
    )


def classify_fourvector(x: FourVector) -> FourVectorReport:
    """
    Orbit, stabilizer and witness of a four-vector.

    The Hermitian matrix image is diagonalised by a unitary of unit
    determinant, and a real diagonal boost equalises the moduli of the
    eigenvalues (or, on the light cone, fixes the non-zero one to two).

    Raises:
        ZeroVectorError: if ``x`` vanishes to tolerance
        VerificationError: if the witness misses the scaled representative
    """
    orbit = _orbit_of(x)
    representative, stabilizer = _REPRESENTATIVES[orbit]

    eigenvalues, vectors = torch.linalg.eigh(x.matrix)
    lam1, lam2 = eigenvalues.tolist()
    # put the eigenvalue with the sign of the representative's top-left first
    if orbit in (
        FourVectorOrbit.SPACELIKE,
        FourVectorOrbit.LIGHTLIKE_FUTURE,
    ):
        vectors = vectors.flip(-1)
        lam1, lam2 = lam2, lam1
    phase = cmath.sqrt(complex(det2(vectors)))
    unitary = vectors / phase

    if orbit.causal_type == "lightlike":
        scale = 1.0
        delta2 = 2 / abs(lam1)
    else:
        scale = math.sqrt(abs(lam1 * lam2))
        delta2 = math.sqrt(abs(lam2 / lam1))
    boost = torch.diag(
        torch.tensor([delta2**0.5, delta2**-0.5], dtype=COMPLEX)
    )
    witness = GroupElement(boost @ dagger(unitary))

    residual = act_fourvector(witness, x).components - (
        scale * representative.components
    )
    size = float(x.components.abs().max())
    if float(residual.abs().max()) > 1e-8 * (1 + size):
        raise VerificationError(
            f"Four-vector witness residual {residual.tolist()}"
        )

    return FourVectorReport(
        orbit=orbit,
        stabilizer=stabilizer(),
        label=SpaceLabel(stabilizer()),
        witness=witness,
        representative=representative,
        scale=scale,
    )


def classify_velocity(x: FourVector) -> SpaceLabel:
    """
    Label of the orbit of the ray through ``x`` in the velocity space.

    Timelike rays have stabilizer :math:`SU(2)`, spacelike ones the
    normalizer of :math:`SU(1,1)` (the factor :math:`c = \\pm 1`), and
    lightlike ones the triangular group (any :math:`c > 0`).
    """
    causal_type = _orbit_of(x).causal_type
    if causal_type == "timelike":
        return SpaceLabel(H3Plus())
    if causal_type == "spacelike":
        return SpaceLabel(H3MinusPlus())
    return SpaceLabel(H2())


def velocity_scale_factor(h: GroupElement, x: FourVector) -> float:
    r"""
    The real factor :math:`c` with :math:`h x h^\dagger = c x`.

    Raises:
        NotMemberError: if ``h`` does not preserve the ray through ``x``
    """
    image = act_fourvector(h, x).components
    components = x.components
    c = float(image @ components / (components @ components))
    residual = float((image - c * components).abs().max())
    if residual > 1e-8 * (1 + float(image.abs().max())):
        raise NotMemberError(f"{h.matrix.tolist()} does not fix the ray {x}")
    return c


def lorentz_matrix(g: GroupElement) -> torch.Tensor:
    r"""
    Image of ``g`` in the proper orthochronous Lorentz group,

    .. math::

        \Lambda^\mu{}_\nu = \tfrac12 \mathrm{tr}(\sigma_\mu g \sigma_\nu
        g^\dagger) .

    """
    m = g.matrix
    products = SIGMA.unsqueeze(1) @ m @ SIGMA.unsqueeze(0) @ dagger(m)
    return products.diagonal(dim1=-2, dim2=-1).sum(-1).real.mul(0.5)


def _normalise_spinor(z: torch.Tensor) -> torch.Tensor:
    z = torch.as_tensor(z, dtype=COMPLEX)
    size = float(torch.linalg.norm(z))
    if size <= get_tolerances().cls:
        raise ZeroSpinorError("The zero spinor has no ray")
    lead = z[0] if z[0].abs() >= z[1].abs() else z[1]
    return z / (size * lead / lead.abs())


def act_celestial(g: GroupElement, z: torch.Tensor) -> torch.Tensor:
    """
    Action on complex rays of spinors.

    Rays are represented by unit spinors whose larger component is real
    and positive.

    Raises:
        ZeroSpinorError: if ``z`` vanishes
    """
    return _normalise_spinor(g.matrix @ _normalise_spinor(z))


def mobius(g: GroupElement, zeta: complex) -> complex:
    r"""
    Möbius action :math:`\zeta \mapsto (a\zeta + b) / (c\zeta + d)` on the
    coordinate :math:`\zeta = z_1 / z_2` of the celestial sphere.

    The point at infinity, the ray of :math:`(1, 0)`, is
    :data:`INFINITY`.
    """
    a, b, c, d = g.entries
    if cmath.isinf(zeta):
        return INFINITY if c == 0 else a / c
    denominator = c * zeta + d
    if abs(denominator) <= get_tolerances().cls * (1 + abs(a * zeta + b)):
        return INFINITY
    return (a * zeta + b) / denominator


def lightcone_from_spinor(z: torch.Tensor) -> FourVector:
    r"""
    Lightlike four-vector :math:`x^k = z^\dagger \sigma_k z`, whose matrix
    image is :math:`2 z z^\dagger`.

    The result does not depend on a common phase of the components.

    Raises:
        ZeroSpinorError: if ``z`` vanishes
    """
    z = torch.as_tensor(z, dtype=COMPLEX)
    if float(torch.linalg.norm(z)) <= get_tolerances().cls:
        raise ZeroSpinorError("The zero spinor has no light-cone image")
    components = torch.einsum("i,kij,j->k", z.conj(), SIGMA, z)
    return FourVector.from_tensor(components.real)


def su2_transport(z: torch.Tensor, w: torch.Tensor) -> GroupElement:
    """
    An element of :math:`SU(2)` mapping the unit spinor along ``z`` to the
    one along ``w``.

    Raises:
        ZeroSpinorError: if either spinor vanishes
    """

    def frame(v: torch.Tensor) -> torch.Tensor:
        # SU(2) matrix with first column v
        v = torch.as_tensor(v, dtype=COMPLEX)
        size = float(torch.linalg.norm(v))
        if size <= get_tolerances().cls:
            raise ZeroSpinorError("Cannot transport the zero spinor")
        v1, v2 = (v / size).tolist()
        return torch.tensor(
            [[v1, -v2.conjugate()], [v2, v1.conjugate()]], dtype=COMPLEX
        )

    return GroupElement(frame(w) @ dagger(frame(z)))


class ScalarKind(str, enum.Enum):
    TRIVIAL = "trivial"
    ROOTS_OF_UNITY = "roots_of_unity"
    LATTICE = "lattice"
    CIRCLE = "circle"
    CIRCLE_LATTICE = "circle_lattice"
    POSITIVE_REALS = "positive_reals"
    POSITIVE_REALS_ROOTS = "positive_reals_roots"
    SPIRAL = "spiral"
    SPIRAL_ROOTS = "spiral_roots"
    ALL = "all"


@dataclasses.dataclass(frozen=True)
class ScalarSubgroup:
    r"""
    Closed subgroup :math:`S` of the multiplicative group
    :math:`\mathbb{C}^*`, acting on spinors by multiplication.

    ============================  ==========================================
    kind                          elements
    ============================  ==========================================
    ``trivial``                   :math:`1`
    ``roots_of_unity(n)``         :math:`e^{2\pi i \nu / n}`
    ``lattice(k, n, eta)``        :math:`k^m e^{2\pi i (\nu + m\eta) / n}`
    ``circle``                    :math:`e^{i\phi}`
    ``circle_lattice(k)``         :math:`k^m e^{i\phi}`
    ``positive_reals``            :math:`a > 0`
    ``positive_reals_roots(n)``   :math:`a e^{2\pi i \nu / n}`
    ``spiral(lam)``               :math:`e^{(\lambda - i) t}`
    ``spiral_roots(lam, n)``      :math:`e^{(\lambda - i) t + 2\pi i\nu/n}`
    ``all``                       :math:`\mathbb{C}^*`
    ============================  ==========================================
    """

    kind: ScalarKind
    lam: Optional[float] = None
    n: Optional[int] = None
    k: Optional[float] = None
    eta: Optional[float] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ScalarKind(self.kind))

    def contains(self, alpha: complex) -> bool:
        diagonal = torch.tensor([[alpha, 0], [0, 1 / alpha]], dtype=COMPLEX)
        return spinor_stabilizer(self).contains(GroupElement(diagonal))


_SCALAR_STABILIZERS = {
    ScalarKind.TRIVIAL: lambda s: H4N(),
    ScalarKind.ROOTS_OF_UNITY: lambda s: H4NN(s.n),
    ScalarKind.LATTICE: lambda s: H4NKNEta(s.k, s.n, s.eta),
    ScalarKind.CIRCLE: lambda s: H3Zero(),
    ScalarKind.CIRCLE_LATTICE: lambda s: H3ZeroK(s.k),
    ScalarKind.POSITIVE_REALS: lambda s: H3Inf(),
    ScalarKind.POSITIVE_REALS_ROOTS: lambda s: H3InfN(s.n),
    ScalarKind.SPIRAL: lambda s: H3Lambda(s.lam),
    ScalarKind.SPIRAL_ROOTS: lambda s: H3LambdaN(s.lam, s.n),
    ScalarKind.ALL: lambda s: H2(),
}


def spinor_stabilizer(S: ScalarSubgroup) -> SubgroupDescriptor:
    r"""
    Stabilizer of the class of :math:`(1, 0)` in :math:`\mathbb{C}^2 / S`,
    the triangular matrices :math:`[[a, b], [0, a^{-1}]]` with
    :math:`a \in S`.

    Raises:
        UnsupportedScalarGroupError: if the parameters of ``S`` lie outside
            the domain of its kind
    """
    try:
        return _SCALAR_STABILIZERS[S.kind](S)
    except (InvalidDescriptorError, TypeError) as error:
        raise UnsupportedScalarGroupError(
            f"Unsupported scalar subgroup {S}: {error}"
        )


def adjoint_orbit_label(A: AlgebraElement) -> SpaceLabel:
    """
    Label of the adjoint orbit through ``A``.

    Semisimple orbits have the diagonal matrices as stabilizer; the
    nilpotent orbit has the null translations up to sign.

    Raises:
        ZeroElementError: if ``A`` vanishes to tolerance
    """
    kind = classify_element(A).kind
    if kind is ElementKind.ZERO:
        raise ZeroElementError("The zero element is a fixed point")
    if kind is ElementKind.NILPOTENT:
        return SpaceLabel(H4NN(2))
    return SpaceLabel(H4())


class MapKind(str, enum.Enum):
    NONE = "none"
    UNIQUE = "unique"
    MULTIPLE = "multiple"
    UNRESOLVED = "unresolved"


@dataclasses.dataclass(frozen=True)
class CovariantMapResult:
    """
    Answer of :func:`covariant_map_exists`.

    Args:
        kind:
            Whether no, exactly one or several covariant maps exist, or
            ``unresolved`` when existence is not decided
        case:
            ``"a"`` for automorphisms, ``"b"`` for coverings by the identity
            component and ``"c"`` for triangular inclusions into ``H2``
        count:
            Number of maps when finite and known
        description:
            Human readable summary
    """

    kind: MapKind
    case: Optional[str] = None
    count: Optional[int] = None
    description: str = ""

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "case": self.case,
            "count": self.count,
            "description": self.description,
        }


# order of N(H) / H for the connected families where it is finite
_NORMALIZER_INDEX = {
    "H3Plus": 1,
    "H2": 1,
    "H0": 1,
    "H3Minus": 2,
    "H4": 2,
    "H4Inf": 4,
}

# triangular families whose upper-right entry varies freely
_FREE_UPPER_ENTRY = frozenset(
    [
        "H4N",
        "H3Lambda",
        "H3Zero",
        "H3Inf",
        "H2",
        "H4NN",
        "H4NKNEta",
        "H3LambdaN",
        "H3ZeroK",
        "H3InfN",
    ]
)


def _automorphisms(H: SubgroupDescriptor) -> CovariantMapResult:
    if H.connected:
        index = _NORMALIZER_INDEX.get(H.family)
        if index == 1:
            return CovariantMapResult(
                MapKind.UNIQUE, "a", 1, "only the trivial automorphism"
            )
        description = (
            f"automorphisms classified by N/H of order {index}"
            if index
            else "automorphisms classified by an infinite N/H"
        )
        return CovariantMapResult(MapKind.MULTIPLE, "a", index, description)

    if normalizer(H.identity_component) == H:
        return CovariantMapResult(
            MapKind.UNIQUE, "a", 1, "only the trivial automorphism"
        )
    return CovariantMapResult(
        MapKind.MULTIPLE, "a", None, "automorphisms not resolved"
    )


def covariant_map_exists(
    H: SubgroupDescriptor, H_prime: SubgroupDescriptor
) -> CovariantMapResult:
    """
    Decides whether a covariant map exists from the space with stabilizer
    ``H`` to the space with stabilizer ``H_prime``, and whether it is
    unique.

    Raises:
        UnsupportedError: if a descriptor is not a catalog subgroup
    """
    for d in (H, H_prime):
        if not d.in_catalog:
            raise UnsupportedError(f"{d} is not a catalog subgroup")

    if not includes(H.algebra_class(), H_prime.algebra_class()):
        return CovariantMapResult(
            MapKind.NONE, description="no conjugate subalgebra inclusion"
        )
    if (
        not H.connected
        and H_prime.connected
        and H.algebra_class() == H_prime.algebra_class()
    ):
        return CovariantMapResult(
            MapKind.NONE,
            description="a disconnected group is not contained in its "
            "identity component",
        )

    if H == H_prime:
        return _automorphisms(H)

    if H.connected and H_prime.identity_component == H:
        if normalizer(H) == H_prime:
            return CovariantMapResult(
                MapKind.UNIQUE, "b", 1, "covering by the identity component"
            )
        return CovariantMapResult(
            MapKind.MULTIPLE, "b", None, "covering, uniqueness not resolved"
        )

    if H.family in _FREE_UPPER_ENTRY and H_prime.family == "H2":
        return CovariantMapResult(
            MapKind.UNIQUE, "c", 1, "inclusion into the triangular group"
        )

    # a connected source lies in the identity component of a conjugate
    if H.connected:
        return CovariantMapResult(
            MapKind.MULTIPLE, description="exists; multiplicity not resolved"
        )
    return CovariantMapResult(
        MapKind.UNRESOLVED,
        description="no conjugate of the source is known to lie in the "
        "target",
    )


class MinkowskiAction(GroupAction):
    def act(self, g: GroupElement, point: FourVector) -> FourVector:
        return act_fourvector(g, point)


class SpinorAction(GroupAction):
    def act(self, g: GroupElement, point: torch.Tensor) -> torch.Tensor:
        return g.matrix @ torch.as_tensor(point, dtype=COMPLEX)


class CelestialAction(GroupAction):
    def act(
        self, g: GroupElement, point: Union[torch.Tensor, complex]
    ) -> Any:
        """
        Acts on normalised spinor rays, or on the Riemann sphere coordinate
        when given a complex number.
        """
        if isinstance(point, (complex, float, int)):
            return mobius(g, complex(point))
        return act_celestial(g, point)


class AdjointAction(GroupAction):
    def act(self, g: GroupElement, point: AlgebraElement) -> AlgebraElement:
        return adjoint(g, point)
