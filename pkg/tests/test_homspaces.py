import cmath
import math

import pytest
import torch

from torchlorentz.algebra import AlgebraElement, GroupElement
from torchlorentz.exceptions import (
    NotMemberError,
    UnsupportedError,
    UnsupportedScalarGroupError,
    ZeroElementError,
    ZeroSpinorError,
    ZeroVectorError,
)
from torchlorentz.homspaces import *
from torchlorentz.subalgebras import includes
from torchlorentz.subgroups import *
from torchlorentz.utils.sampling import (
    GroupDistribution,
    algebra_distribution,
    sample_fourvectors,
    sample_spinors,
)
from torchlorentz.utils.tensor import COMPLEX, REAL

METRIC = torch.diag(torch.tensor([1, -1, -1, -1], dtype=REAL))

REPRESENTATIVES = [
    (FourVector(1, 0, 0, 0), FourVectorOrbit.TIMELIKE_FUTURE, H3Plus()),
    (FourVector(-1, 0, 0, 0), FourVectorOrbit.TIMELIKE_PAST, H3Plus()),
    (FourVector(1, 0, 0, 1), FourVectorOrbit.LIGHTLIKE_FUTURE, H3Zero()),
    (FourVector(-1, 0, 0, -1), FourVectorOrbit.LIGHTLIKE_PAST, H3Zero()),
    (FourVector(0, 0, 0, 1), FourVectorOrbit.SPACELIKE, H3Minus()),
]


def _random_groups(n: int, scale: float = 0.5) -> list[GroupElement]:
    return [GroupElement(m) for m in GroupDistribution(scale).sample([n])]


def _same_ray(u: torch.Tensor, v: torch.Tensor) -> bool:
    overlap = abs(complex(torch.vdot(u, v)))
    return math.isclose(
        overlap,
        float(torch.linalg.norm(u) * torch.linalg.norm(v)),
        rel_tol=1e-9,
    )


def test_fourvector_matrix():
    x = FourVector(4, 1, 2, 3)
    expected = torch.tensor([[7, 1 - 2j], [1 + 2j, 1]], dtype=COMPLEX)
    assert torch.allclose(x.matrix, expected)
    assert FourVector.from_matrix(expected) == x
    assert math.isclose(x.norm, 2)
    assert math.isclose(torch.linalg.det(x.matrix).real, x.norm)


def test_action_preserves_norm():
    torch.random.manual_seed(123456)
    vectors = sample_fourvectors([200])
    for g, components in zip(_random_groups(200), vectors):
        x = FourVector.from_tensor(components)
        y = act_fourvector(g, x)
        size = float(y.components.abs().max()) ** 2
        assert abs(y.norm - x.norm) <= 1e-9 * (1 + size)


@pytest.mark.parametrize("x,orbit,stabilizer", REPRESENTATIVES)
def test_classify_representatives(x, orbit, stabilizer):
    report = classify_fourvector(x)
    assert report.orbit is orbit
    assert report.stabilizer == stabilizer
    assert report.label.dimension == 3
    assert report.representative == x
    assert math.isclose(report.scale, 1)


def test_classify_scaled():
    report = classify_fourvector(FourVector(0, 0, 3, 0))
    assert report.orbit is FourVectorOrbit.SPACELIKE
    assert math.isclose(report.scale, 3)
    image = act_fourvector(report.witness, FourVector(0, 0, 3, 0))
    assert image.allclose(FourVector(0, 0, 0, 3))


def test_classify_zero():
    with pytest.raises(ZeroVectorError):
        classify_fourvector(FourVector(0, 0, 0, 0))


def _check_witness(x: FourVector) -> FourVectorReport:
    report = classify_fourvector(x)
    image = act_fourvector(report.witness, x).components
    expected = report.scale * report.representative.components
    size = float(x.components.abs().max())
    assert (image - expected).abs().max() <= 1e-8 * (1 + size) ** 2
    return report


def test_classify_random():
    torch.random.manual_seed(123456)
    for components in sample_fourvectors([1000]):
        x = FourVector.from_tensor(components)
        report = _check_witness(x)
        assert (report.orbit.causal_type == "timelike") == (x.norm > 0)
        if x.norm > 0:
            assert math.isclose(report.scale, math.sqrt(x.norm))


def test_classify_random_lightlike():
    torch.random.manual_seed(123456)
    for z in sample_spinors([500]):
        x = lightcone_from_spinor(z)
        report = _check_witness(x)
        assert report.orbit is FourVectorOrbit.LIGHTLIKE_FUTURE
        past = FourVector.from_tensor(-x.components)
        assert _check_witness(past).orbit is FourVectorOrbit.LIGHTLIKE_PAST


@pytest.mark.parametrize("x,orbit,stabilizer", REPRESENTATIVES)
def test_stabilizer_certification(x, orbit, stabilizer):
    torch.random.manual_seed(123456)
    for _ in range(1000):
        h = stabilizer.sample()
        image = act_fourvector(h, x)
        size = float(image.components.abs().max())
        assert image.allclose(x, atol=1e-9 * (1 + size) ** 2)

    moved = 0
    for g in _random_groups(1000, scale=1.0):
        if g in stabilizer:
            continue
        assert not act_fourvector(g, x).allclose(x, atol=1e-6)
        moved += 1
    assert moved > 900


def test_conjugate_stabilizer():
    torch.random.manual_seed(123456)
    x = FourVector.from_tensor(sample_fourvectors())
    report = classify_fourvector(x)
    w = report.witness
    for _ in range(20):
        h = w.inverse() @ report.stabilizer.sample() @ w
        image = act_fourvector(h, x)
        size = float(image.components.abs().max())
        assert image.allclose(x, atol=1e-8 * (1 + size) ** 2)


@pytest.mark.parametrize(
    "x,name",
    [
        (FourVector(2, 0, 1, 0), "Pi3Plus"),
        (FourVector(-2, 0, 1, 0), "Pi3Plus"),
        (FourVector(0, 1, 1, 0), "Pi3MinusPlus"),
        (FourVector(1, 1, 0, 0), "Pi2"),
        (FourVector(-1, 0, -1, 0), "Pi2"),
    ],
)
def test_classify_velocity(x, name):
    label = classify_velocity(x)
    assert label.name == name


def test_velocity_scale_factors():
    torch.random.manual_seed(123456)
    e, sigma3, null = (
        FourVector(1, 0, 0, 0),
        FourVector(0, 0, 0, 1),
        FourVector(1, 0, 0, 1),
    )
    signs = set()
    for _ in range(200):
        assert math.isclose(
            velocity_scale_factor(H3Plus().sample(), e), 1, rel_tol=1e-9
        )
        c = velocity_scale_factor(H3MinusPlus().sample(), sigma3)
        assert math.isclose(abs(c), 1, rel_tol=1e-9)
        signs.add(round(c))
        assert velocity_scale_factor(H2().sample(), null) > 0
    assert signs == {-1, 1}


def test_velocity_scale_factor_value():
    boost = GroupElement(torch.tensor([[2, 0], [0, 0.5]], dtype=COMPLEX))
    c = velocity_scale_factor(boost, FourVector(1, 0, 0, 1))
    assert math.isclose(c, 4)


def test_velocity_scale_factor_not_fixed():
    boost = GroupElement(torch.tensor([[2, 0], [0, 0.5]], dtype=COMPLEX))
    with pytest.raises(NotMemberError):
        velocity_scale_factor(boost, FourVector(1, 0, 0, 0))


def test_lorentz_matrix():
    torch.random.manual_seed(123456)
    g, h = _random_groups(2)
    L = lorentz_matrix(g)
    assert torch.allclose(L.T @ METRIC @ L, METRIC)
    assert torch.allclose(lorentz_matrix(-g), L)
    assert torch.allclose(lorentz_matrix(g @ h), L @ lorentz_matrix(h))
    assert L[0, 0] >= 1
    assert math.isclose(float(torch.linalg.det(L)), 1, rel_tol=1e-9)

    x = FourVector.from_tensor(sample_fourvectors())
    image = act_fourvector(g, x).components
    assert torch.allclose(L @ x.components, image)


def test_lorentz_matrix_identity():
    L = lorentz_matrix(GroupElement.identity())
    assert torch.allclose(L, torch.eye(4, dtype=REAL))


def test_lightcone_from_spinor():
    x = lightcone_from_spinor(torch.tensor([1, 0], dtype=COMPLEX))
    assert x == FourVector(1, 0, 0, 1)
    with pytest.raises(ZeroSpinorError):
        lightcone_from_spinor(torch.zeros(2, dtype=COMPLEX))


def test_lightcone_matrix():
    torch.random.manual_seed(123456)
    z = sample_spinors()
    x = lightcone_from_spinor(z)
    assert torch.allclose(x.matrix, 2 * torch.outer(z, z.conj()))
    assert abs(x.norm) <= 1e-12 * (1 + x.x0**2)


def test_spinor_equivariance():
    torch.random.manual_seed(123456)
    spinors = sample_spinors([2000])
    for g, z in zip(_random_groups(2000), spinors):
        lhs = lightcone_from_spinor(g.matrix @ z)
        rhs = act_fourvector(g, lightcone_from_spinor(z))
        size = float(lhs.components.abs().max())
        assert lhs.allclose(rhs, atol=1e-9 * (1 + size))


def test_phase_invariance():
    torch.random.manual_seed(123456)
    spinors = sample_spinors([1000])
    phases = torch.rand(1000, dtype=REAL) * 2 * math.pi
    for z, phase in zip(spinors, phases):
        rotated = cmath.exp(1j * float(phase)) * z
        lhs, rhs = lightcone_from_spinor(rotated), lightcone_from_spinor(z)
        assert lhs.allclose(rhs, atol=1e-12 * (1 + rhs.x0))


def test_act_celestial():
    torch.random.manual_seed(123456)
    g, h = _random_groups(2)
    z = sample_spinors()
    u = act_celestial(g, z)
    assert math.isclose(float(torch.linalg.norm(u)), 1)
    assert _same_ray(u, g.matrix @ z)
    assert _same_ray(
        act_celestial(g @ h, z), act_celestial(g, act_celestial(h, z))
    )
    with pytest.raises(ZeroSpinorError):
        act_celestial(g, torch.zeros(2, dtype=COMPLEX))


def test_act_celestial_normal_form():
    u = act_celestial(GroupElement.identity(), torch.tensor([0, 3j]))
    assert torch.allclose(u, torch.tensor([0, 1], dtype=COMPLEX))


def test_mobius():
    torch.random.manual_seed(123456)
    g = _random_groups(1)[0]
    z = sample_spinors()
    zeta = complex(z[0] / z[1])
    w = g.matrix @ z
    assert cmath.isclose(mobius(g, zeta), complex(w[0] / w[1]), rel_tol=1e-9)

    a, _, c, d = g.entries
    assert cmath.isclose(mobius(g, math.inf), a / c)
    assert cmath.isinf(mobius(g, -d / c))


def test_mobius_fixes_infinity():
    boost = GroupElement(torch.tensor([[2, 1], [0, 0.5]], dtype=COMPLEX))
    assert cmath.isinf(mobius(boost, complex(math.inf, 0)))
    assert cmath.isclose(mobius(boost, 1), 6)


def test_su2_transport():
    torch.random.manual_seed(123456)
    for z, w in sample_spinors([100, 2]):
        u = su2_transport(z, w)
        assert u in H3Plus()
        image = u.matrix @ (z / torch.linalg.norm(z))
        assert torch.allclose(image, w / torch.linalg.norm(w))
    with pytest.raises(ZeroSpinorError):
        su2_transport(torch.zeros(2), torch.ones(2))


@pytest.mark.parametrize(
    "S,stabilizer",
    [
        (ScalarSubgroup("trivial"), H4N()),
        (ScalarSubgroup("roots_of_unity", n=4), H4NN(4)),
        (
            ScalarSubgroup("lattice", k=2.0, n=3, eta=0.5),
            H4NKNEta(2.0, 3, 0.5),
        ),
        (ScalarSubgroup("circle"), H3Zero()),
        (ScalarSubgroup("circle_lattice", k=2.0), H3ZeroK(2.0)),
        (ScalarSubgroup("positive_reals"), H3Inf()),
        (ScalarSubgroup("positive_reals_roots", n=3), H3InfN(3)),
        (ScalarSubgroup("spiral", lam=0.5), H3Lambda(0.5)),
        (ScalarSubgroup("spiral_roots", lam=0.5, n=2), H3LambdaN(0.5, 2)),
        (ScalarSubgroup("all"), H2()),
    ],
)
def test_spinor_stabilizer(S, stabilizer):
    assert spinor_stabilizer(S) == stabilizer

    torch.random.manual_seed(123456)
    e1 = torch.tensor([1, 0], dtype=COMPLEX)
    for _ in range(20):
        image = stabilizer.sample().matrix @ e1
        assert abs(complex(image[1])) <= 1e-9 * (1 + abs(complex(image[0])))
        assert S.contains(complex(image[0]))


@pytest.mark.parametrize(
    "S,alpha,expected",
    [
        (ScalarSubgroup("circle"), cmath.exp(0.3j), True),
        (ScalarSubgroup("circle"), 2, False),
        (ScalarSubgroup("positive_reals"), 2, True),
        (ScalarSubgroup("positive_reals"), -2, False),
        (ScalarSubgroup("roots_of_unity", n=4), 1j, True),
        (ScalarSubgroup("roots_of_unity", n=4), cmath.exp(0.3j), False),
        (ScalarSubgroup("spiral", lam=0.5), cmath.exp(complex(0.5, -1)), True),
        (ScalarSubgroup("spiral", lam=0.5), cmath.exp(complex(0.5, 1)), False),
        (ScalarSubgroup("circle_lattice", k=2.0), 4j, True),
        (ScalarSubgroup("all"), 3 - 4j, True),
        (ScalarSubgroup("trivial"), -1, False),
    ],
)
def test_scalar_subgroup_contains(S, alpha, expected):
    assert S.contains(alpha) is expected


@pytest.mark.parametrize(
    "S",
    [
        ScalarSubgroup("roots_of_unity", n=1),
        ScalarSubgroup("roots_of_unity"),
        ScalarSubgroup("lattice", k=0.5, n=2, eta=0),
        ScalarSubgroup("spiral", lam=0),
        ScalarSubgroup("circle_lattice"),
    ],
)
def test_unsupported_scalar_subgroup(S):
    with pytest.raises(UnsupportedScalarGroupError):
        spinor_stabilizer(S)


def test_adjoint_orbit_label():
    semisimple = adjoint_orbit_label(
        AlgebraElement.from_parts([0, 0, 1], [0, 0, 2])
    )
    assert semisimple.name == "Pi4"
    assert semisimple.dimension == 4
    nilpotent = adjoint_orbit_label(
        AlgebraElement.from_parts([1, 0, 0], [0, 1, 0])
    )
    assert nilpotent.stabilizer == H4NN(2)
    assert str(nilpotent) == "Pi4NN(n=2)"
    assert nilpotent.dimension == 4
    with pytest.raises(ZeroElementError):
        adjoint_orbit_label(AlgebraElement.zero())


def test_space_label():
    label = SpaceLabel(H3Lambda(0.5))
    assert label.name == "Pi3Lambda"
    assert label.as_dict() == {
        "name": "Pi3Lambda",
        "params": {"lam": 0.5},
        "dim": 3,
    }
    assert str(SpaceLabel(H0())) == "Pi0"


@pytest.mark.parametrize(
    "source,target,kind,case",
    [
        (H3Plus(), H3Plus(), MapKind.UNIQUE, "a"),
        (H3Minus(), H3MinusPlus(), MapKind.UNIQUE, "b"),
        (H3MinusPlus(), H3MinusPlus(), MapKind.UNIQUE, "a"),
        (H3Plus(), H3Minus(), MapKind.NONE, None),
        (H3Minus(), H3Plus(), MapKind.NONE, None),
        (H3Plus(), H2(), MapKind.NONE, None),
        (H3MinusPlus(), H3Minus(), MapKind.NONE, None),
        (H3Zero(), H2(), MapKind.UNIQUE, "c"),
        (H3Inf(), H2(), MapKind.UNIQUE, "c"),
        (H3Lambda(0.5), H2(), MapKind.UNIQUE, "c"),
        (H4N(), H2(), MapKind.UNIQUE, "c"),
        (H4NN(3), H2(), MapKind.UNIQUE, "c"),
        (H4(), H4Plus(), MapKind.UNIQUE, "b"),
        (H4Plus(), H4Plus(), MapKind.UNIQUE, "a"),
        (H4(), H4(), MapKind.MULTIPLE, "a"),
        (H4Inf(), H4Inf(), MapKind.MULTIPLE, "a"),
        (H3Zero(), H3Zero(), MapKind.MULTIPLE, "a"),
        (H2(), H2(), MapKind.UNIQUE, "a"),
        (H5Zero(), H3Plus(), MapKind.MULTIPLE, None),
        (H4Plus(), H2(), MapKind.UNRESOLVED, None),
    ],
    ids=str,
)
def test_covariant_map_table(source, target, kind, case):
    result = covariant_map_exists(source, target)
    assert result.kind is kind
    assert result.case == case


def test_covariant_map_counts():
    assert covariant_map_exists(H4(), H4()).count == 2
    assert covariant_map_exists(H4Inf(), H4Inf()).count == 4
    assert covariant_map_exists(H3Zero(), H3Zero()).count is None
    assert covariant_map_exists(H3Plus(), H3Plus()).count == 1


def test_covariant_map_unsupported():
    with pytest.raises(UnsupportedError):
        covariant_map_exists(NilpotentLineNormalizer(), H2())
    with pytest.raises(UnsupportedError):
        covariant_map_exists(H5N(), NilpotentLineNormalizer())


CATALOG = [
    H6(),
    H5Lambda(0.5),
    H5Zero(),
    H5Inf(),
    H5N(),
    H4N(),
    H4(),
    H2(),
    H0(),
    H3Lambda(0.5),
    H3Plus(),
    H3Minus(),
    H3Zero(),
    H4Inf(),
    H3Inf(),
    H5ZeroK(2.0),
    H4NN(2),
    H4Plus(),
    H3MinusPlus(),
    H3ZeroK(2.0),
    H4InfPlusPlus(),
    H3InfN(2),
]


def test_covariant_map_exhaustive():
    for source in CATALOG:
        for target in CATALOG:
            result = covariant_map_exists(source, target)
            if not includes(source.algebra_class(), target.algebra_class()):
                assert result.kind is MapKind.NONE
            if source.codimension < target.codimension:
                assert result.kind is MapKind.NONE
            assert set(result.as_dict()) == {
                "kind",
                "case",
                "count",
                "description",
            }


@pytest.mark.parametrize("source", [H3Zero(), H3Inf(), H3Lambda(0.5)])
def test_three_dimensional_sources(source):
    for target in CATALOG:
        if not target.connected or target.codimension < 2:
            continue
        result = covariant_map_exists(source, target)
        if target == H2():
            assert result.kind is MapKind.UNIQUE
        elif target != source:
            assert result.kind is MapKind.NONE


def _check_action(action, point, g, h, same):
    lhs = action.act(g @ h, point)
    rhs = action.act(g, action.act(h, point))
    assert same(lhs, rhs)


def test_group_actions():
    torch.random.manual_seed(123456)
    g, h = _random_groups(2)
    z = sample_spinors()
    _check_action(
        MinkowskiAction(),
        FourVector.from_tensor(sample_fourvectors()),
        g,
        h,
        lambda x, y: x.allclose(y, atol=1e-8),
    )
    _check_action(SpinorAction(), z, g, h, torch.allclose)
    _check_action(CelestialAction(), z, g, h, _same_ray)
    _check_action(
        CelestialAction(),
        complex(z[0] / z[1]),
        g,
        h,
        lambda a, b: cmath.isclose(a, b, rel_tol=1e-9),
    )
    _check_action(
        AdjointAction(),
        AlgebraElement(algebra_distribution().sample()),
        g,
        h,
        lambda A, B: A.allclose(B, atol=1e-8),
    )
