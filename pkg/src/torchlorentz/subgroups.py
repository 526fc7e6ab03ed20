r"""
Closed subgroups of :math:`SL(2, \mathbb{C})` up to conjugation.

The connected subgroups are the exponentials of the catalog subalgebras of
:mod:`torchlorentz.subalgebras` and carry the same tags. Every other closed
subgroup (apart from the discrete ones) has one of these as its identity
component :math:`H` and is obtained by adjoining cosets :math:`qH = Hq`,
where the representatives :math:`q` belong to a discrete subgroup of the
quotient :math:`N/H` by the normalizer.

Each family is a frozen dataclass whose fields are the family parameters.
Membership is decided in closed form: the representative :math:`q` is solved
for from the matrix entries and :math:`q^{-1} g` is tested against the
identity component.

Example:

    >>> H = H5ZeroK(k=2.0)
    >>> g = GroupElement(torch.diag(torch.tensor([2, 0.5], dtype=COMPLEX)))
    >>> component_of(H, g)
    ComponentId(m=1, nu=0, sign=1, swap=False)
"""
import cmath
import dataclasses
import logging
import math
from collections.abc import Iterable, Iterator
from typing import ClassVar, Optional

from jsonargparse.typing import NonNegativeInt, PositiveInt
import torch

from torchlorentz.abc import MatrixGroup
from torchlorentz.algebra import AlgebraElement, GroupElement, exp
from torchlorentz.exceptions import (
    InvalidDescriptorError,
    NotMemberError,
    NotTriangularError,
    UnsupportedError,
)
from torchlorentz.subalgebras import (
    SubalgebraClass,
    SubalgebraTag,
    catalog_generators,
)
from torchlorentz.utils.sampling import GroupDistribution
from torchlorentz.utils.tensor import COMPLEX, IDENTITY, frobenius, inv_sl2
from torchlorentz.utils.tolerances import get_tolerances

log = logging.getLogger(__name__)

PI = math.pi

__all__ = [
    "ComponentId",
    "SubgroupDescriptor",
    "SUBGROUP_FAMILIES",
    "make_subgroup",
    "contains",
    "component_of",
    "coset_representatives",
    "enumerate_components",
    "normalizer",
    "validate_triangular_discrete",
    "contains_minus_e",
    "connected_from_class",
    "identity_component",
    "algebra_class",
]


@dataclasses.dataclass(frozen=True)
class ComponentId:
    """
    Index of a connected component, i.e. of a coset representative.

    Args:
        m:
            Integer index of the infinite families, e.g. :math:`k^m`
        nu:
            Index of a finite cyclic factor, e.g. :math:`e^{2\\pi i\\nu/n}`
        sign:
            Sign of a :math:`\\pm` factor
        swap:
            True for the off-diagonal representatives
    """

    m: int = 0
    nu: int = 0
    sign: int = 1
    swap: bool = False

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidDescriptorError(message)


def _as_int(name: str, value) -> int:
    _require(
        not isinstance(value, bool) and int(value) == value,
        f"'{name}' must be an integer, got {value}",
    )
    return int(value)


def _diag(x: complex) -> torch.Tensor:
    return torch.tensor([[x, 0], [0, 1 / x]], dtype=COMPLEX)


def _antidiag(x: complex) -> torch.Tensor:
    return torch.tensor([[0, -1 / x], [x, 0]], dtype=COMPLEX)


def _upper(a: complex, b: complex) -> torch.Tensor:
    return torch.tensor([[a, b], [0, 1 / a]], dtype=COMPLEX)


def _root_of_unity(nu: float, n: int) -> complex:
    return cmath.exp(2j * PI * nu / n)


_I_SIGMA2 = torch.tensor([[0, 1], [-1, 0]], dtype=COMPLEX)


def _log_index(value: float, base: float) -> Optional[int]:
    # nearest m with base**m == value
    if not value > 0:
        return None
    return round(math.log(value) / math.log(base))


def _scale(matrix: torch.Tensor) -> float:
    return get_tolerances().member * (1 + float(frobenius(matrix)) ** 2)


@dataclasses.dataclass(frozen=True)
class SubgroupDescriptor(MatrixGroup):
    """
    Base class of the subgroup families.

    Derived classes set the class attributes below and should override

    * :code:`_member()`, for the connected families
    * :code:`identity_component` and :code:`representatives()`, otherwise

    .. attention:: Parameters are validated at construction and raise
        :class:`InvalidDescriptorError` when outside the family's domain.
    """

    family: ClassVar[str]
    codimension: ClassVar[int]
    connected: ClassVar[bool] = True
    in_catalog: ClassVar[bool] = True

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        pass

    @property
    def dimension(self) -> int:
        return 6 - self.codimension

    @property
    def identity_component(self) -> "SubgroupDescriptor":
        return self

    def params(self) -> dict:
        return {
            field.name: getattr(self, field.name)
            for field in dataclasses.fields(self)
        }

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "params": self.params(),
            "connected": self.connected,
            "codimension": self.codimension,
        }

    def __str__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family}({params})" if params else self.family

    def _member(self, matrix: torch.Tensor) -> bool:
        """
        Membership test of a matrix in the identity component.

        :meta public:
        """
        raise NotImplementedError

    def representatives(
        self, bound: NonNegativeInt = 0
    ) -> list[tuple[ComponentId, torch.Tensor]]:
        """
        Coset representatives, one per connected component.

        Infinite families are truncated to ``|m| <= bound``.
        """
        return [(ComponentId(), IDENTITY.clone())]

    def _candidates(
        self, matrix: torch.Tensor
    ) -> Iterable[tuple[ComponentId, torch.Tensor]]:
        """
        Representatives whose component may contain ``matrix``.

        :meta public:
        """
        return self.representatives()

    def component_of(self, g: GroupElement) -> ComponentId:
        inner = self.identity_component
        for component, q in self._candidates(g.matrix):
            if inner._member(inv_sl2(q) @ g.matrix):
                return component
        raise NotMemberError(f"{g.matrix.tolist()} is not a member of {self}")

    def contains(self, g: GroupElement) -> bool:
        try:
            self.component_of(g)
        except NotMemberError:
            return False
        return True

    def algebra_class(self) -> SubalgebraClass:
        inner = self.identity_component
        return SubalgebraClass(
            SubalgebraTag(inner.family), getattr(inner, "lam", None)
        )

    def _sample_identity_component(self) -> torch.Tensor:
        generators = catalog_generators(self.algebra_class())
        if not generators:
            return IDENTITY.clone()
        coords = torch.stack([A.coords for A in generators])
        matrix = IDENTITY.clone()
        for _ in range(2):
            weights = torch.randn(len(generators), dtype=coords.dtype)
            matrix = matrix @ exp(AlgebraElement(weights @ coords)).matrix
        return matrix

    def sample(self) -> GroupElement:
        """
        A random member, drawn with the global torch random state.
        """
        representatives = self.representatives(bound=2)
        index = int(torch.randint(len(representatives), ()))
        _, q = representatives[index]
        return GroupElement(q @ self._sample_identity_component())


# ---------------------------------------------------------------------------
# Connected families
# ---------------------------------------------------------------------------


def _spiral_residual(a: complex, lam: float) -> float:
    # distance of a from the curve exp((lam - i) t)
    if a == 0:
        return math.inf
    t = math.log(abs(a)) / lam
    return abs(a - cmath.exp(complex(lam, -1) * t))


@dataclasses.dataclass(frozen=True)
class H6(SubgroupDescriptor):
    family = "H6"
    codimension = 6

    def _member(self, matrix):
        return bool(
            (matrix - IDENTITY).abs().max() <= _scale(matrix)
        )

    def _sample_identity_component(self):
        return IDENTITY.clone()


@dataclasses.dataclass(frozen=True)
class H5Lambda(SubgroupDescriptor):
    r"""
    Matrices :math:`\mathrm{diag}(e^{(\lambda - i)t}, e^{-(\lambda - i)t})`.
    """

    lam: float
    family = "H5Lambda"
    codimension = 5

    def validate(self):
        _require(
            math.isfinite(self.lam) and self.lam != 0,
            f"lam must be finite and non-zero, got {self.lam}",
        )

    def _member(self, matrix):
        (a, b), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(b) <= eps
            and abs(c) <= eps
            and _spiral_residual(a, self.lam) <= eps
        )


@dataclasses.dataclass(frozen=True)
class H5Zero(SubgroupDescriptor):
    r"""
    Rotations :math:`\mathrm{diag}(e^{-i\phi}, e^{i\phi})`.
    """

    family = "H5Zero"
    codimension = 5

    def _member(self, matrix):
        (a, b), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return abs(b) <= eps and abs(c) <= eps and abs(abs(a) - 1) <= eps


@dataclasses.dataclass(frozen=True)
class H5Inf(SubgroupDescriptor):
    r"""
    Boosts :math:`\mathrm{diag}(e^t, e^{-t})`.
    """

    family = "H5Inf"
    codimension = 5

    def _member(self, matrix):
        (a, b), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(b) <= eps
            and abs(c) <= eps
            and abs(a.imag) <= eps
            and a.real > 0
        )


@dataclasses.dataclass(frozen=True)
class H5N(SubgroupDescriptor):
    r"""
    Null rotations :math:`\begin{pmatrix} 1 & is \\ 0 & 1 \end{pmatrix}`.
    """

    family = "H5N"
    codimension = 5

    def _member(self, matrix):
        (a, b), (c, d) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(c) <= eps
            and abs(a - 1) <= eps
            and abs(d - 1) <= eps
            and abs(b.real) <= eps
        )


@dataclasses.dataclass(frozen=True)
class H4N(SubgroupDescriptor):
    family = "H4N"
    codimension = 4

    def _member(self, matrix):
        (a, _), (c, d) = matrix.tolist()
        eps = _scale(matrix)
        return abs(c) <= eps and abs(a - 1) <= eps and abs(d - 1) <= eps


@dataclasses.dataclass(frozen=True)
class H4(SubgroupDescriptor):
    """
    Complex diagonal matrices.
    """

    family = "H4"
    codimension = 4

    def _member(self, matrix):
        (_, b), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return abs(b) <= eps and abs(c) <= eps


@dataclasses.dataclass(frozen=True)
class H2(SubgroupDescriptor):
    """
    Upper triangular matrices; the stabilizer of a point of the celestial
    sphere.
    """

    family = "H2"
    codimension = 2

    def _member(self, matrix):
        return abs(matrix[1, 0].item()) <= _scale(matrix)


@dataclasses.dataclass(frozen=True)
class H0(SubgroupDescriptor):
    family = "H0"
    codimension = 0

    def _member(self, matrix):
        return True

    def _sample_identity_component(self):
        return GroupDistribution().sample()


@dataclasses.dataclass(frozen=True)
class H3Lambda(SubgroupDescriptor):
    lam: float
    family = "H3Lambda"
    codimension = 3

    def validate(self):
        _require(
            math.isfinite(self.lam) and self.lam != 0,
            f"lam must be finite and non-zero, got {self.lam}",
        )

    def _member(self, matrix):
        (a, _), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return abs(c) <= eps and _spiral_residual(a, self.lam) <= eps


@dataclasses.dataclass(frozen=True)
class H3Plus(SubgroupDescriptor):
    r"""
    :math:`SU(2)`, matrices :math:`\begin{pmatrix} \alpha & -\bar\beta \\
    \beta & \bar\alpha \end{pmatrix}`.
    """

    family = "H3Plus"
    codimension = 3

    def _member(self, matrix):
        (a, b), (c, d) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(d - a.conjugate()) <= eps and abs(b + c.conjugate()) <= eps
        )


@dataclasses.dataclass(frozen=True)
class H3Minus(SubgroupDescriptor):
    r"""
    :math:`SU(1, 1)`, matrices :math:`\begin{pmatrix} \alpha & \bar\beta \\
    \beta & \bar\alpha \end{pmatrix}`.
    """

    family = "H3Minus"
    codimension = 3

    def _member(self, matrix):
        (a, b), (c, d) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(d - a.conjugate()) <= eps and abs(b - c.conjugate()) <= eps
        )


@dataclasses.dataclass(frozen=True)
class H3Zero(SubgroupDescriptor):
    """
    :math:`E(2)`, triangular matrices with diagonal entries of modulus one.
    """

    family = "H3Zero"
    codimension = 3

    def _member(self, matrix):
        (a, _), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return abs(c) <= eps and abs(abs(a) - 1) <= eps


@dataclasses.dataclass(frozen=True)
class H4Inf(SubgroupDescriptor):
    family = "H4Inf"
    codimension = 4

    def _member(self, matrix):
        (a, b), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return (
            abs(c) <= eps
            and abs(a.imag) <= eps
            and a.real > 0
            and abs(b.real) <= eps
        )


@dataclasses.dataclass(frozen=True)
class H3Inf(SubgroupDescriptor):
    family = "H3Inf"
    codimension = 3

    def _member(self, matrix):
        (a, _), (c, _) = matrix.tolist()
        eps = _scale(matrix)
        return abs(c) <= eps and abs(a.imag) <= eps and a.real > 0


CONNECTED_FAMILIES = {
    cls.family: cls
    for cls in (
        H6,
        H5Lambda,
        H5Zero,
        H5Inf,
        H5N,
        H4N,
        H4,
        H2,
        H0,
        H3Lambda,
        H3Plus,
        H3Minus,
        H3Zero,
        H4Inf,
        H3Inf,
    )
}


# ---------------------------------------------------------------------------
# Families with several connected components
# ---------------------------------------------------------------------------


class _Extension(SubgroupDescriptor):
    """
    Base class of the non-connected families.

    Derived classes should override :code:`identity_component` and
    :code:`representatives()`; families with infinitely many components
    should also override :code:`_candidates()` to solve for the index
    in closed form.

    :meta public:
    """

    connected = False

    @property
    def codimension(self) -> int:
        return self.identity_component.codimension

    def _sample_identity_component(self):
        return self.identity_component._sample_identity_component()

    def _by_index(
        self, matrix: torch.Tensor, m: Optional[int]
    ) -> Iterator[tuple[ComponentId, torch.Tensor]]:
        # representatives with the given m; all finite indices are tried
        if m is None:
            return
        for component, q in self.representatives(abs(m)):
            if component.m == m:
                yield component, q

    def _by_modulus(
        self, matrix: torch.Tensor
    ) -> Iterator[tuple[ComponentId, torch.Tensor]]:
        # m solved from |a| = k^m
        m = _log_index(abs(matrix[0, 0].item()), self.k)
        return self._by_index(matrix, m)


def _check_n(n: int, minimum: int = 2, even: bool = False) -> int:
    n = _as_int("n", n)
    _require(n >= minimum, f"n must be at least {minimum}, got {n}")
    if even:
        _require(n % 2 == 0, f"n must be even, got {n}")
    return n


def _check_eta(eta: float) -> None:
    _require(0 <= eta < 1, f"eta must lie in [0, 1), got {eta}")


def _check_k(k: float) -> None:
    _require(math.isfinite(k) and k > 1, f"k must exceed one, got {k}")


def _rotations(n: int) -> list[tuple[ComponentId, torch.Tensor]]:
    return [
        (ComponentId(nu=nu), _diag(_root_of_unity(nu, n))) for nu in range(n)
    ]


def _twisted_rotations(
    n: int, eta: float
) -> list[tuple[ComponentId, torch.Tensor]]:
    return [
        (ComponentId(nu=nu, swap=True), _antidiag(_root_of_unity(nu + eta, n)))
        for nu in range(n)
    ]


@dataclasses.dataclass(frozen=True)
class H5LambdaN(_Extension):
    lam: float
    n: PositiveInt
    family = "H5LambdaN"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n))
        self.identity_component.validate()

    @property
    def identity_component(self):
        return H5Lambda(self.lam)

    def representatives(self, bound=0):
        return _rotations(self.n)


@dataclasses.dataclass(frozen=True)
class H5LambdaNEta(_Extension):
    lam: float
    n: PositiveInt
    eta: float
    family = "H5LambdaNEta"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n, even=True))
        self.identity_component.validate()
        _check_eta(self.eta)

    @property
    def identity_component(self):
        return H5Lambda(self.lam)

    def representatives(self, bound=0):
        return _rotations(self.n) + _twisted_rotations(self.n, self.eta)


@dataclasses.dataclass(frozen=True)
class H5ZeroK(_Extension):
    k: float
    family = "H5ZeroK"

    def validate(self):
        _check_k(self.k)

    @property
    def identity_component(self):
        return H5Zero()

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m), _diag(self.k**m))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H5ZeroKH(_Extension):
    k: float
    h: float
    family = "H5ZeroKH"

    def validate(self):
        _require(
            math.isfinite(self.k) and self.k > self.h >= 1,
            f"Expected k > h >= 1, got k={self.k}, h={self.h}",
        )

    @property
    def identity_component(self):
        return H5Zero()

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m), _diag(self.k**m))
            for m in range(-bound, bound + 1)
        ] + [
            (ComponentId(m=m, swap=True), _antidiag(self.h * self.k**m))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        a, c = abs(matrix[0, 0].item()), abs(matrix[1, 0].item())
        if a >= c:
            return self._by_index(matrix, _log_index(a, self.k))
        return self._by_index(matrix, _log_index(c / self.h, self.k))


@dataclasses.dataclass(frozen=True)
class H5ZeroOneH(_Extension):
    h: float
    family = "H5ZeroOneH"

    def validate(self):
        _require(
            math.isfinite(self.h) and self.h > 0,
            f"h must be positive, got {self.h}",
        )

    @property
    def identity_component(self):
        return H5Zero()

    def representatives(self, bound=0):
        return [
            (ComponentId(), IDENTITY.clone()),
            (ComponentId(swap=True), _antidiag(self.h)),
        ]


@dataclasses.dataclass(frozen=True)
class H5InfN(_Extension):
    n: PositiveInt
    family = "H5InfN"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def identity_component(self):
        return H5Inf()

    def representatives(self, bound=0):
        return _rotations(self.n)


@dataclasses.dataclass(frozen=True)
class H5InfNEta(_Extension):
    n: PositiveInt
    eta: float
    family = "H5InfNEta"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n, even=True))
        _check_eta(self.eta)

    @property
    def identity_component(self):
        return H5Inf()

    def representatives(self, bound=0):
        return _rotations(self.n) + _twisted_rotations(self.n, self.eta)


def _discrete_triangular(w: complex, m: int, h: float) -> torch.Tensor:
    # [[w^m, (w^m - w^-m) h], [0, w^-m]]
    a = w**m
    return _upper(a, (a - 1 / a) * h)


class _NullRotationExtension(_Extension):
    """
    Extensions of the null rotations by elements of their normalizer.

    :meta public:
    """

    @property
    def identity_component(self):
        return H5N()

    def _validate_h(self, strict: bool) -> None:
        allowed = self.h > 0 or (not strict and self.h == 0)
        _require(
            math.isfinite(self.h) and allowed,
            f"h must be {'positive' if strict else 'non-negative'}, "
            f"got {self.h}",
        )

    def _translation_index(self, matrix: torch.Tensor) -> Optional[int]:
        # m with Re(b / a) = m h
        a, b = matrix[0, 0].item(), matrix[0, 1].item()
        if a == 0 or self.h == 0:
            return 0
        return round((b / a).real / self.h)


@dataclasses.dataclass(frozen=True)
class H5NKHNu(_NullRotationExtension):
    k: float
    h: float
    nu: int
    family = "H5NKHNu"

    def validate(self):
        _check_k(self.k)
        _require(math.isfinite(self.h), f"h must be finite, got {self.h}")
        object.__setattr__(self, "nu", _as_int("nu", self.nu))
        _require(self.nu in range(4), f"nu must be 0..3, got {self.nu}")

    def representatives(self, bound=0):
        w = 1j**self.nu * self.k
        return [
            (ComponentId(m=m), _discrete_triangular(w, m, self.h))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H5NKHNuPlus(_NullRotationExtension):
    k: float
    h: float
    nu: int
    family = "H5NKHNuPlus"

    def validate(self):
        _check_k(self.k)
        _require(math.isfinite(self.h), f"h must be finite, got {self.h}")
        object.__setattr__(self, "nu", _as_int("nu", self.nu))
        _require(self.nu in (0, 1), f"nu must be 0 or 1, got {self.nu}")

    def representatives(self, bound=0):
        w = 1j**self.nu * self.k
        return [
            (
                ComponentId(m=m, sign=sign),
                sign * _discrete_triangular(w, m, self.h),
            )
            for m in range(-bound, bound + 1)
            for sign in (1, -1)
        ]

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H5NKHPlusPlus(_NullRotationExtension):
    k: float
    h: float
    family = "H5NKHPlusPlus"

    def validate(self):
        _check_k(self.k)
        _require(math.isfinite(self.h), f"h must be finite, got {self.h}")

    def representatives(self, bound=0):
        reps = []
        for m in range(-bound, bound + 1):
            for nu in range(4):
                a = 1j**nu * self.k**m
                b = (a - 1j ** (-nu) * self.k ** (-m)) * self.h
                reps.append((ComponentId(m=m, nu=nu), _upper(a, b)))
        return reps

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H5NOneH0(_NullRotationExtension):
    h: float
    family = "H5NOneH0"

    def validate(self):
        self._validate_h(strict=True)

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m), _upper(1, m * self.h))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        return self._by_index(matrix, self._translation_index(matrix))


@dataclasses.dataclass(frozen=True)
class H5NOneH2(_NullRotationExtension):
    h: float
    family = "H5NOneH2"

    def validate(self):
        self._validate_h(strict=True)

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m), (-1) ** m * _upper(1, m * self.h))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        return self._by_index(matrix, self._translation_index(matrix))


@dataclasses.dataclass(frozen=True)
class H5NOneH0Plus(_NullRotationExtension):
    h: float
    family = "H5NOneH0Plus"

    def validate(self):
        self._validate_h(strict=False)

    def representatives(self, bound=0):
        indices = range(-bound, bound + 1) if self.h > 0 else [0]
        return [
            (ComponentId(m=m, sign=sign), sign * _upper(1, m * self.h))
            for m in indices
            for sign in (1, -1)
        ]

    def _candidates(self, matrix):
        return self._by_index(matrix, self._translation_index(matrix))


@dataclasses.dataclass(frozen=True)
class H5NOneH1Plus(_NullRotationExtension):
    h: float
    family = "H5NOneH1Plus"

    def validate(self):
        self._validate_h(strict=True)

    def representatives(self, bound=0):
        return [
            (
                ComponentId(m=m, sign=sign),
                sign * _upper(1j**m, 1j**m * m * self.h),
            )
            for m in range(-bound, bound + 1)
            for sign in (1, -1)
        ]

    def _candidates(self, matrix):
        return self._by_index(matrix, self._translation_index(matrix))


@dataclasses.dataclass(frozen=True)
class H5NOneH(_NullRotationExtension):
    h: float
    family = "H5NOneH"

    def validate(self):
        self._validate_h(strict=False)

    def representatives(self, bound=0):
        twist = _upper(1j, 1j * self.h)
        return [
            (ComponentId(), IDENTITY.clone()),
            (ComponentId(sign=-1), -IDENTITY),
            (ComponentId(nu=1), twist),
            (ComponentId(nu=1, sign=-1), -twist),
        ]


@dataclasses.dataclass(frozen=True)
class H5NOneHPlusPlus(_NullRotationExtension):
    h: float
    family = "H5NOneHPlusPlus"

    def validate(self):
        self._validate_h(strict=True)

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m, nu=nu), _upper(1j**nu, 1j**nu * m * self.h))
            for m in range(-bound, bound + 1)
            for nu in range(4)
        ]

    def _candidates(self, matrix):
        return self._by_index(matrix, self._translation_index(matrix))


@dataclasses.dataclass(frozen=True)
class H4NN(_Extension):
    n: PositiveInt
    family = "H4NN"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def identity_component(self):
        return H4N()

    def representatives(self, bound=0):
        return _rotations(self.n)


@dataclasses.dataclass(frozen=True)
class H4NKNEta(_Extension):
    k: float
    n: PositiveInt
    eta: float
    family = "H4NKNEta"

    def validate(self):
        _check_k(self.k)
        object.__setattr__(self, "n", _check_n(self.n, minimum=1))
        _check_eta(self.eta)

    @property
    def identity_component(self):
        return H4N()

    def representatives(self, bound=0):
        return [
            (
                ComponentId(m=m, nu=nu),
                _diag(self.k**m * _root_of_unity(nu + m * self.eta, self.n)),
            )
            for m in range(-bound, bound + 1)
            for nu in range(self.n)
        ]

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H4Plus(_Extension):
    r"""
    Diagonal and antidiagonal matrices: :math:`H_4 \cup i\sigma_2 H_4`.
    """

    family = "H4Plus"

    @property
    def identity_component(self):
        return H4()

    def representatives(self, bound=0):
        return [
            (ComponentId(), IDENTITY.clone()),
            (ComponentId(swap=True), _I_SIGMA2.clone()),
        ]


@dataclasses.dataclass(frozen=True)
class H3LambdaN(_Extension):
    lam: float
    n: PositiveInt
    family = "H3LambdaN"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n))
        self.identity_component.validate()

    @property
    def identity_component(self):
        return H3Lambda(self.lam)

    def representatives(self, bound=0):
        return _rotations(self.n)


@dataclasses.dataclass(frozen=True)
class H3MinusPlus(_Extension):
    r"""
    :math:`SU(1, 1) \cup i\sigma_2 SU(1, 1)`, the normalizer of
    :math:`SU(1, 1)`.
    """

    family = "H3MinusPlus"

    @property
    def identity_component(self):
        return H3Minus()

    def representatives(self, bound=0):
        return [
            (ComponentId(), IDENTITY.clone()),
            (ComponentId(swap=True), _I_SIGMA2.clone()),
        ]


@dataclasses.dataclass(frozen=True)
class H3ZeroK(_Extension):
    k: float
    family = "H3ZeroK"

    def validate(self):
        _check_k(self.k)

    @property
    def identity_component(self):
        return H3Zero()

    def representatives(self, bound=0):
        return [
            (ComponentId(m=m), _diag(self.k**m))
            for m in range(-bound, bound + 1)
        ]

    def _candidates(self, matrix):
        return self._by_modulus(matrix)


@dataclasses.dataclass(frozen=True)
class H4InfPlus(_Extension):
    family = "H4InfPlus"

    @property
    def identity_component(self):
        return H4Inf()

    def representatives(self, bound=0):
        return [
            (ComponentId(), IDENTITY.clone()),
            (ComponentId(sign=-1), -IDENTITY),
        ]


@dataclasses.dataclass(frozen=True)
class H4InfPlusPlus(_Extension):
    """
    The normalizer of :class:`H4Inf`.
    """

    family = "H4InfPlusPlus"

    @property
    def identity_component(self):
        return H4Inf()

    def representatives(self, bound=0):
        return _rotations(4)


@dataclasses.dataclass(frozen=True)
class H3InfN(_Extension):
    n: PositiveInt
    family = "H3InfN"

    def validate(self):
        object.__setattr__(self, "n", _check_n(self.n))

    @property
    def identity_component(self):
        return H3Inf()

    def representatives(self, bound=0):
        return _rotations(self.n)


@dataclasses.dataclass(frozen=True)
class NilpotentLineNormalizer(_Extension):
    r"""
    The normalizer of the null rotations, matrices
    :math:`\begin{pmatrix} i^\nu a & b \\ 0 & i^{-\nu} a^{-1} \end{pmatrix}`
    with :math:`a > 0`.
    """

    family = "NilpotentLineNormalizer"
    in_catalog = False

    @property
    def identity_component(self):
        return H3Inf()

    def representatives(self, bound=0):
        return _rotations(4)


@dataclasses.dataclass(frozen=True, eq=False)
class H6Discrete(_Extension):
    """
    Finite subgroup generated by user-supplied elements.

    The group is the closure of ``elements`` under multiplication, grown
    until no new elements appear or ``max_order`` is reached.

    Args:
        elements:
            Generating matrices, anything accepted by :class:`GroupElement`
        max_order:
            Bound on the number of elements of the closure
    """

    elements: tuple = ()
    max_order: PositiveInt = 1000
    family = "H6Discrete"

    def validate(self):
        try:
            generators = tuple(
                GroupElement(
                    g.matrix if isinstance(g, GroupElement) else g
                ).matrix
                for g in self.elements
            )
        except (TypeError, ValueError) as error:
            raise InvalidDescriptorError(f"Invalid generator: {error}")
        object.__setattr__(self, "elements", generators)
        object.__setattr__(self, "_group", self._close(generators))

    def _close(self, generators: tuple) -> torch.Tensor:
        group = IDENTITY.unsqueeze(0)
        frontier = [IDENTITY]
        while frontier:
            new = []
            for g in frontier:
                for s in generators:
                    candidate = g @ s
                    distance = (group - candidate).abs().amax(dim=(-2, -1))
                    if bool((distance <= _scale(candidate)).any()):
                        continue
                    group = torch.cat([group, candidate.unsqueeze(0)])
                    new.append(candidate)
                    if len(group) >= self.max_order:
                        log.warning(
                            "Closure reached %d elements; the generated "
                            "group may be infinite",
                            self.max_order,
                        )
                        return group
            frontier = new
        log.debug(
            "Closed %d generators to %d elements", len(generators), len(group)
        )
        return group

    @property
    def order(self) -> int:
        return len(self._group)

    @property
    def identity_component(self):
        return H6()

    def params(self):
        return {"order": self.order, "generators": len(self.elements)}

    def representatives(self, bound=0):
        return [(ComponentId(m=i), g) for i, g in enumerate(self._group)]


EXTENDED_FAMILIES = {
    cls.family: cls
    for cls in (
        H5LambdaN,
        H5LambdaNEta,
        H5ZeroK,
        H5ZeroKH,
        H5ZeroOneH,
        H5InfN,
        H5InfNEta,
        H5NKHNu,
        H5NKHNuPlus,
        H5NKHPlusPlus,
        H5NOneH0,
        H5NOneH2,
        H5NOneH0Plus,
        H5NOneH1Plus,
        H5NOneH,
        H5NOneHPlusPlus,
        H4NN,
        H4NKNEta,
        H4Plus,
        H3LambdaN,
        H3MinusPlus,
        H3ZeroK,
        H4InfPlus,
        H4InfPlusPlus,
        H3InfN,
        H6Discrete,
        NilpotentLineNormalizer,
    )
}

SUBGROUP_FAMILIES = {**CONNECTED_FAMILIES, **EXTENDED_FAMILIES}

__all__ += ["CONNECTED_FAMILIES", "EXTENDED_FAMILIES", *SUBGROUP_FAMILIES]


def make_subgroup(family: str, **params) -> SubgroupDescriptor:
    """
    Constructs a descriptor by family name; parameters set to None are
    ignored.

    Raises:
        InvalidDescriptorError: for an unknown family, unexpected or missing
            parameters, or parameters outside the family's domain
    """
    try:
        cls = SUBGROUP_FAMILIES[family]
    except KeyError:
        raise InvalidDescriptorError(
            f"Unknown family '{family}', expected one of "
            f"{sorted(SUBGROUP_FAMILIES)}"
        )
    params = {k: v for k, v in params.items() if v is not None}
    try:
        return cls(**params)
    except TypeError as error:
        raise InvalidDescriptorError(
            f"Invalid parameters for {family}: {error}"
        )


def contains(d: SubgroupDescriptor, g: GroupElement) -> bool:
    return d.contains(g)


def component_of(d: SubgroupDescriptor, g: GroupElement) -> ComponentId:
    """
    Identifies the connected component of ``d`` containing ``g``.

    Raises:
        NotMemberError: if ``g`` is not a member of ``d``
    """
    return d.component_of(g)


def coset_representatives(
    d: SubgroupDescriptor, bound: NonNegativeInt = 3
) -> dict[ComponentId, GroupElement]:
    return {
        component: GroupElement(q) for component, q in d.representatives(bound)
    }


def enumerate_components(
    d: SubgroupDescriptor, bound: NonNegativeInt = 3
) -> list[GroupElement]:
    """
    The representatives of the connected components; families indexed by
    :math:`m \\in \\mathbb{Z}` are truncated to ``|m| <= bound``.
    """
    return list(coset_representatives(d, bound).values())


def identity_component(d: SubgroupDescriptor) -> SubgroupDescriptor:
    return d.identity_component


def algebra_class(d: SubgroupDescriptor) -> SubalgebraClass:
    return d.algebra_class()


def contains_minus_e(d: SubgroupDescriptor) -> bool:
    """
    True if the central element :math:`-e` is a member, in which case the
    homogeneous space is also a space for the proper Lorentz group.
    """
    return d.contains(GroupElement(-IDENTITY))


def connected_from_class(c: SubalgebraClass) -> SubgroupDescriptor:
    """
    The connected subgroup generated by the exponentials of a catalog
    subalgebra.
    """
    cls = CONNECTED_FAMILIES[c.tag.value]
    return cls(c.lam) if c.tag.parametric else cls()


_NORMALIZERS = {
    "H6": H0,
    "H5Lambda": H4Plus,
    "H5Zero": H4Plus,
    "H5Inf": H4Plus,
    "H4": H4Plus,
    "H5N": NilpotentLineNormalizer,
    "H4N": H2,
    "H3Lambda": H2,
    "H3Zero": H2,
    "H3Inf": H2,
    "H2": H2,
    "H3Plus": H3Plus,
    "H3Minus": H3MinusPlus,
    "H4Inf": H4InfPlusPlus,
    "H0": H0,
}


def normalizer(d: SubgroupDescriptor) -> SubgroupDescriptor:
    """
    The normalizer of a connected catalog subgroup.

    Raises:
        UnsupportedError: for the non-connected families
    """
    if not d.connected or d.family not in _NORMALIZERS:
        raise UnsupportedError(f"No normalizer available for {d}")
    return _NORMALIZERS[d.family]()


def validate_triangular_discrete(
    elements: Iterable[GroupElement],
) -> Optional[complex]:
    r"""
    Checks that triangular elements fit a single discrete group.

    The elements with :math:`|a| \neq 1` of a discrete group of upper
    triangular matrices all have the form

    .. math::

        \begin{pmatrix} a & (a - a^{-1}) h \\ 0 & a^{-1} \end{pmatrix}

    for one constant :math:`h`.

    The constant is complex in general, as the upper right entries are,
    and it is returned as a complex number even when it happens to be
    real.

    Returns:
        The common ``h``, zero if no element has :math:`|a| \neq 1`, or
        None if the elements disagree

    Raises:
        NotTriangularError: if some element is not upper triangular
    """
    tol = get_tolerances().member
    ratios = []
    for g in elements:
        (a, b), (c, _) = g.matrix.tolist()
        if abs(c) > tol * (1 + g.norm):
            raise NotTriangularError(f"Lower-left entry {c} is not zero")
        if abs(abs(a) - 1) > tol:
            ratios.append(b / (a - 1 / a))

    if not ratios:
        return 0j
    h = ratios[0]
    if all(abs(r - h) <= tol * (1 + abs(h)) for r in ratios[1:]):
        return h
    log.debug("Triangular elements disagree on h: %s", ratios)
    return None
