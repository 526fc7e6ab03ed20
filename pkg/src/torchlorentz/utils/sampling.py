"""
Random elements of the algebra, the group and its representation spaces.

Samplers are built on :mod:`torch.distributions` and draw from the global
torch random state; seed with :func:`torch.random.manual_seed` for
reproducibility.
"""
from collections.abc import Iterable

from jsonargparse.typing import PositiveInt
import torch
from torch.distributions import Distribution

from torchlorentz.utils.tensor import (
    COMPLEX,
    REAL,
    coords_to_matrix,
    expm_traceless,
)

__all__ = [
    "algebra_distribution",
    "GroupDistribution",
    "sample_complex",
    "sample_spinors",
    "sample_fourvectors",
]


def algebra_distribution(scale: float = 1.0) -> Distribution:
    """
    Isotropic Gaussian on the six real coordinates of the algebra, one
    event per element.
    """
    loc = torch.zeros(6, dtype=REAL)
    return torch.distributions.Independent(
        torch.distributions.Normal(loc, torch.full_like(loc, scale)), 1
    )


class GroupDistribution:
    """
    Random group elements obtained by exponentiating Gaussian algebra
    elements.

    Args:
        scale:
            Standard deviation of each algebra coordinate; larger values
            give matrices further from the identity

    Example:

        >>> dist = GroupDistribution(0.5)
        >>> dist.sample([100]).shape
        torch.Size([100, 2, 2])
    """

    def __init__(self, scale: float = 1.0) -> None:
        self.scale = scale
        self.algebra = algebra_distribution(scale)

    def sample(
        self, sample_shape: Iterable[PositiveInt] = torch.Size([])
    ) -> torch.Tensor:
        coords = self.algebra.sample(torch.Size(sample_shape))
        return expm_traceless(coords_to_matrix(coords))


def sample_complex(
    sample_shape: Iterable[PositiveInt] = torch.Size([]), scale: float = 1.0
) -> torch.Tensor:
    """
    Standard complex Gaussian samples, real and imaginary parts iid.
    """
    real = torch.randn(*sample_shape, 2, dtype=REAL).mul(scale)
    return torch.view_as_complex(real.contiguous())


def sample_spinors(
    sample_shape: Iterable[PositiveInt] = torch.Size([]),
) -> torch.Tensor:
    """
    Complex Gaussian spinors of shape ``(..., 2)``.
    """
    return sample_complex([*sample_shape, 2]).to(COMPLEX)


def sample_fourvectors(
    sample_shape: Iterable[PositiveInt] = torch.Size([]),
) -> torch.Tensor:
    """
    Gaussian four-vectors of shape ``(..., 4)``.
    """
    return torch.randn(*sample_shape, 4, dtype=REAL)
