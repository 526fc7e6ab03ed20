import cmath
import math
import random

import pytest
import torch

from torchlorentz.algebra import GroupElement
from torchlorentz.exceptions import (
    InvalidDescriptorError,
    NotMemberError,
    NotTriangularError,
    UnsupportedError,
)
from torchlorentz.subalgebras import SubalgebraClass, SubalgebraTag
from torchlorentz.subgroups import *
from torchlorentz.utils.sampling import GroupDistribution
from torchlorentz.utils.tensor import COMPLEX

CONNECTED = [
    H6(),
    H5Lambda(0.5),
    H5Zero(),
    H5Inf(),
    H5N(),
    H4N(),
    H4(),
    H2(),
    H0(),
    H3Lambda(-1.0),
    H3Plus(),
    H3Minus(),
    H3Zero(),
    H4Inf(),
    H3Inf(),
]

EXTENDED = [
    H5LambdaN(0.5, 3),
    H5LambdaNEta(0.5, 4, 0.5),
    H5ZeroK(2.0),
    H5ZeroKH(3.0, 1.5),
    H5ZeroOneH(0.7),
    H5InfN(3),
    H5InfNEta(2, 0.25),
    H5NKHNu(2.0, 0.3, 1),
    H5NKHNuPlus(2.0, 0.3, 1),
    H5NKHPlusPlus(2.0, 0.3),
    H5NOneH0(0.5),
    H5NOneH2(0.5),
    H5NOneH0Plus(0.5),
    H5NOneH0Plus(0.0),
    H5NOneH1Plus(0.5),
    H5NOneH(0.5),
    H5NOneHPlusPlus(0.5),
    H4NN(3),
    H4NKNEta(2.0, 3, 0.5),
    H4Plus(),
    H3LambdaN(0.5, 2),
    H3MinusPlus(),
    H3ZeroK(2.0),
    H4InfPlus(),
    H4InfPlusPlus(),
    H3InfN(3),
]

NORMALIZERS = [
    (H3Plus(), H3Plus()),
    (H3Minus(), H3MinusPlus()),
    (H5Lambda(0.5), H4Plus()),
    (H5Zero(), H4Plus()),
    (H5Inf(), H4Plus()),
    (H4(), H4Plus()),
    (H4N(), H2()),
    (H3Lambda(-1.0), H2()),
    (H3Zero(), H2()),
    (H3Inf(), H2()),
    (H2(), H2()),
    (H5N(), NilpotentLineNormalizer()),
    (H4Inf(), H4InfPlusPlus()),
    (H6(), H0()),
    (H0(), H0()),
]


def _matrix(*entries) -> GroupElement:
    return GroupElement(torch.tensor(entries, dtype=COMPLEX).view(2, 2))


def _diag(a: complex) -> GroupElement:
    return _matrix(a, 0, 0, 1 / a)


def test_registry():
    assert len(CONNECTED_FAMILIES) == 15
    assert set(CONNECTED_FAMILIES) == {tag.value for tag in SubalgebraTag}
    assert {d.family for d in CONNECTED + EXTENDED} <= set(SUBGROUP_FAMILIES)


@pytest.mark.parametrize("d", CONNECTED + EXTENDED, ids=str)
def test_samples_are_members(d):
    torch.random.manual_seed(123456)
    for _ in range(20):
        assert d.contains(d.sample())


@pytest.mark.parametrize("d", CONNECTED + EXTENDED, ids=str)
def test_group_closure(d):
    torch.random.manual_seed(123456)
    for _ in range(20):
        g, h = d.sample(), d.sample()
        assert g @ h in d
        assert g.inverse() in d


@pytest.mark.parametrize("d", CONNECTED + EXTENDED, ids=str)
def test_identity_is_member(d):
    assert d.component_of(GroupElement.identity()) == ComponentId()


@pytest.mark.parametrize("d", CONNECTED + EXTENDED, ids=str)
def test_representatives_are_members(d):
    for component, q in coset_representatives(d, bound=2).items():
        assert d.component_of(q) == component


@pytest.mark.parametrize("d", EXTENDED, ids=str)
def test_extension_structure(d):
    inner = identity_component(d)
    assert inner.connected
    assert not d.connected
    assert d.codimension == inner.codimension
    assert algebra_class(d) == algebra_class(inner)


@pytest.mark.parametrize("d", CONNECTED, ids=str)
def test_connected_from_class(d):
    assert connected_from_class(algebra_class(d)) == d


@pytest.mark.parametrize(
    "d,g",
    [
        (H3Plus(), _diag(2)),
        (H3Minus(), _matrix(0, 1, -1, 0)),
        (H5Inf(), _diag(-2)),
        (H5Zero(), _diag(2)),
        (H5N(), _matrix(1, 1, 0, 1)),
        (H5Lambda(0.5), _diag(cmath.exp(complex(-0.5, -1)))),
        (H4Inf(), _matrix(1, 1, 0, 1)),
        (H3Inf(), _diag(1j)),
        (H2(), _matrix(1, 0, 1, 1)),
    ],
)
def test_non_members(d, g):
    assert g not in d
    with pytest.raises(NotMemberError):
        component_of(d, g)


def test_spiral_membership():
    lam = 0.5
    t = 0.8
    a = cmath.exp(complex(lam, -1) * t)
    assert _diag(a) in H5Lambda(lam)
    assert _diag(a) not in H5Lambda(-lam)
    assert _matrix(a, 3j, 0, 1 / a) in H3Lambda(lam)


@pytest.mark.parametrize(
    "d,g,component",
    [
        (H5ZeroK(2.0), _diag(2), ComponentId(m=1)),
        (H5ZeroK(2.0), _diag(0.25j), ComponentId(m=-2)),
        (
            H5ZeroKH(3.0, 1.5),
            _matrix(0, -1 / 4.5, 4.5, 0),
            ComponentId(m=1, swap=True),
        ),
        (H5InfN(4), _diag(-3), ComponentId(nu=2)),
        (H4NN(4), _matrix(1j, 5, 0, -1j), ComponentId(nu=1)),
        (H3MinusPlus(), _matrix(0, 1, -1, 0), ComponentId(swap=True)),
        (H4InfPlus(), _matrix(-2, 1j, 0, -0.5), ComponentId(sign=-1)),
        (H5NOneH0(0.5), _matrix(1, 1.5 + 2j, 0, 1), ComponentId(m=3)),
    ],
)
def test_component_of(d, g, component):
    assert component_of(d, g) == component


def test_component_group_law():
    torch.random.manual_seed(123456)
    d = H4NKNEta(2.0, 3, 0.5)
    for _ in range(20):
        g, h = d.sample(), d.sample()
        cg, ch, cgh = (d.component_of(x) for x in (g, h, g @ h))
        assert cgh.m == cg.m + ch.m
        assert cgh.nu == (cg.nu + ch.nu) % d.n


def test_null_rotation_extension_index():
    d = H5NKHNu(2.0, 0.3, 1)
    w = 2j
    for m in range(-3, 4):
        a = w**m
        g = _matrix(a, (a - 1 / a) * 0.3 + 0.7j * a, 0, 1 / a)
        assert component_of(d, g).m == m


def test_enumerate_components():
    assert len(enumerate_components(H5ZeroK(2.0), bound=3)) == 7
    assert len(enumerate_components(H5ZeroK(2.0), bound=0)) == 1
    assert len(enumerate_components(H4InfPlusPlus(), bound=3)) == 4
    assert len(enumerate_components(H5NKHPlusPlus(2.0, 0.3), bound=1)) == 12
    assert len(enumerate_components(H3Plus())) == 1


@pytest.mark.parametrize(
    "d,expected",
    [
        (H3Plus(), True),
        (H3Minus(), True),
        (H4(), True),
        (H2(), True),
        (H5Zero(), True),
        (H5Inf(), False),
        (H5N(), False),
        (H4N(), False),
        (H5Lambda(0.5), False),
        (H5InfN(2), True),
        (H5InfN(3), False),
        (H5NOneH0Plus(0.5), True),
        (H5NOneH2(0.5), False),
        (H4InfPlus(), True),
    ],
    ids=str,
)
def test_contains_minus_e(d, expected):
    assert contains_minus_e(d) is expected


@pytest.mark.parametrize("d,N", NORMALIZERS, ids=str)
def test_normalizer(d, N):
    assert normalizer(d) == N


@pytest.mark.parametrize("d,N", NORMALIZERS, ids=str)
def test_normalizer_conjugation(d, N):
    torch.random.manual_seed(123456)
    for _ in range(1000):
        g = N.sample()
        x = d.sample()
        assert g @ x @ g.inverse() in d

    outside = 0
    for matrix in GroupDistribution().sample([1000]):
        g = GroupElement(matrix)
        if g in N:
            continue
        outside += 1
        samples = [d.sample() for _ in range(3)]
        assert any(g @ x @ g.inverse() not in d for x in samples)
    if N != H0():
        assert outside > 750


def test_normalizer_of_su2():
    assert normalizer(H3Plus()) == H3Plus()


def test_normalizer_unsupported():
    with pytest.raises(UnsupportedError):
        normalizer(H3MinusPlus())


def test_nilpotent_line_normalizer():
    N = NilpotentLineNormalizer()
    assert not N.in_catalog
    assert _matrix(1j, 2, 0, -1j) in N
    assert _diag(2) in N
    assert _diag(cmath.exp(0.3j)) not in N


def test_discrete_group():
    quaternion = H6Discrete(
        (torch.tensor([[1j, 0], [0, -1j]]), torch.tensor([[0, 1], [-1, 0]]))
    )
    assert quaternion.order == 8
    assert contains_minus_e(quaternion)
    assert _matrix(0, 1j, 1j, 0) in quaternion
    assert _diag(2) not in quaternion
    assert quaternion.identity_component == H6()


def test_discrete_group_order_bound(caplog):
    boost = torch.tensor([[2, 0], [0, 0.5]])
    d = H6Discrete((boost,), max_order=10)
    assert d.order == 10
    assert "infinite" in caplog.text


@pytest.mark.parametrize(
    "family,params",
    [
        ("H7", {}),
        ("H5ZeroK", {}),
        ("H5ZeroK", {"k": 0.5}),
        ("H5ZeroKH", {"k": 2.0, "h": 3.0}),
        ("H5LambdaN", {"lam": 0.0, "n": 3}),
        ("H5LambdaNEta", {"lam": 0.5, "n": 3, "eta": 0.5}),
        ("H4NN", {"n": 1}),
        ("H4NKNEta", {"k": 2.0, "n": 2, "eta": 1.5}),
        ("H5NKHNu", {"k": 2.0, "h": 0.3, "nu": 4}),
        ("H5NOneH0", {"h": 0.0}),
        ("H3Plus", {"lam": 0.5}),
        ("H6Discrete", {"elements": [torch.eye(2) * 2]}),
    ],
)
def test_invalid_descriptors(family, params):
    with pytest.raises(InvalidDescriptorError):
        make_subgroup(family, **params)


def test_make_subgroup():
    d = make_subgroup("H3LambdaN", lam=0.5, n=2, k=None)
    assert d == H3LambdaN(0.5, 2)
    assert d.as_dict() == {
        "family": "H3LambdaN",
        "params": {"lam": 0.5, "n": 2},
        "connected": False,
        "codimension": 3,
    }
    assert str(d) == "H3LambdaN(lam=0.5, n=2)"
    assert str(make_subgroup("H3Plus")) == "H3Plus"


def test_algebra_class():
    assert algebra_class(H5LambdaN(0.5, 3)) == SubalgebraClass(
        SubalgebraTag.H5Lambda, 0.5
    )
    assert algebra_class(H3MinusPlus()).tag is SubalgebraTag.H3Minus


def _triangular(a: complex, h: complex) -> GroupElement:
    return _matrix(a, (a - 1 / a) * h, 0, 1 / a)


def _random_modulus_phase(rng: random.Random) -> complex:
    return cmath.rect(rng.uniform(1.5, 3), rng.uniform(-math.pi, math.pi))


def test_triangular_constraint():
    rng = random.Random(123456)
    for _ in range(1000):
        h = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        a1, a2 = (_random_modulus_phase(rng) for _ in range(2))
        matched = [_triangular(a1, h), _triangular(a2, h)]
        recovered = validate_triangular_discrete(matched)
        assert abs(recovered - h) <= 1e-9

        shift = cmath.rect(rng.uniform(0.1, 1), rng.uniform(-math.pi, math.pi))
        mismatched = [_triangular(a1, h), _triangular(a2, h + shift)]
        assert validate_triangular_discrete(mismatched) is None


def test_triangular_complex_constant():
    h = validate_triangular_discrete([_triangular(2, 0.5 + 0.25j)])
    assert isinstance(h, complex)
    assert abs(h - (0.5 + 0.25j)) <= 1e-12
    h = validate_triangular_discrete([_triangular(3, 0.5)])
    assert isinstance(h, complex)
    assert abs(h - 0.5) <= 1e-12


def test_triangular_unit_modulus():
    rotation = _matrix(1j, 5, 0, -1j)
    assert validate_triangular_discrete([rotation]) == 0
    assert validate_triangular_discrete([]) == 0


def test_not_triangular():
    with pytest.raises(NotTriangularError):
        validate_triangular_discrete([_matrix(1, 0, 1, 1)])

