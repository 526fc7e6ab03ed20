from hypothesis import given, strategies as st
import torch

from torchlorentz.utils.sampling import GroupDistribution
from torchlorentz.utils.tensor import *

_coords = st.lists(
    st.floats(-10, 10, allow_nan=False), min_size=6, max_size=6
)


def _levi_civita() -> torch.Tensor:
    eps = torch.zeros(3, 3, 3, dtype=REAL)
    for (i, j, k), sign in {
        (0, 1, 2): 1,
        (1, 2, 0): 1,
        (2, 0, 1): 1,
        (0, 2, 1): -1,
        (2, 1, 0): -1,
        (1, 0, 2): -1,
    }.items():
        eps[i, j, k] = sign
    return eps


def test_pauli_algebra():
    # sigma_r sigma_s = delta_rs e + i eps_rst sigma_t
    eps = _levi_civita().to(COMPLEX)
    products = PAULI.unsqueeze(1) @ PAULI.unsqueeze(0)
    expected = torch.eye(3, dtype=COMPLEX)[..., None, None] * IDENTITY
    expected = expected + 1j * torch.einsum("rst,tij->rsij", eps, PAULI)
    assert torch.allclose(products, expected)


def test_commutation_table():
    e = torch.eye(6, dtype=REAL)
    brackets = lie_bracket(e.unsqueeze(1), e.unsqueeze(0))
    eps = _levi_civita()

    expected = torch.zeros(6, 6, 6, dtype=REAL)
    expected[:3, :3, :3] = eps  # [M_r, M_s] = eps M_t
    expected[:3, 3:, 3:] = eps  # [M_r, L_s] = eps L_t
    expected[3:, :3, 3:] = eps  # [L_r, M_s] = eps L_t
    expected[3:, 3:, :3] = -eps  # [L_r, L_s] = -eps M_t

    assert (brackets - expected).abs().max() <= 1e-12


@given(_coords)
def test_coords_matrix_inverse(coords):
    coords = torch.tensor(coords, dtype=REAL)
    matrix = coords_to_matrix(coords)
    assert abs(trace2(matrix)) <= 1e-12
    assert torch.allclose(matrix_to_coords(matrix), coords)


def test_determinant_identity():
    torch.random.manual_seed(123456)
    coords = torch.randn(1000, 6, dtype=REAL)
    c1, c2 = invariants_of(coords)
    det = det2(coords_to_matrix(coords))
    assert torch.allclose(det, torch.complex(c1, 2 * c2))


def test_expm_traceless():
    torch.random.manual_seed(123456)
    scales = torch.logspace(-6, 0, 100, dtype=REAL)
    coords = torch.randn(100, 6, dtype=REAL) * scales.unsqueeze(-1)
    matrix = coords_to_matrix(coords)
    assert torch.allclose(
        expm_traceless(matrix), torch.linalg.matrix_exp(matrix)
    )


def test_expm_nilpotent():
    N = torch.tensor([[0, 2], [0, 0]], dtype=COMPLEX)
    assert torch.allclose(expm_traceless(N), IDENTITY + N)


def test_expm_unimodular():
    torch.random.manual_seed(123456)
    matrix = coords_to_matrix(torch.randn(100, 6, dtype=REAL))
    det = det2(expm_traceless(matrix))
    assert torch.allclose(det, torch.ones_like(det))


def test_inv_sl2():
    torch.random.manual_seed(123456)
    g = GroupDistribution(0.5).sample([100])
    assert torch.allclose(g @ inv_sl2(g), IDENTITY.expand_as(g))


def test_dagger():
    torch.random.manual_seed(123456)
    g = GroupDistribution().sample([10])
    assert torch.allclose(dagger(dagger(g)), g)
    assert torch.allclose(dagger(g)[:, 0, 1], g[:, 1, 0].conj())


def test_frobenius():
    assert abs(float(frobenius(IDENTITY)) - 2**0.5) <= 1e-12
