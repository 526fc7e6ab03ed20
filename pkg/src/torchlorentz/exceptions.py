"""
Exceptions raised by torchlorentz.
"""

__all__ = [
    "NonTracelessError",
    "NotUnimodularError",
    "ZeroElementError",
    "DegenerateInputError",
    "NotASubalgebraError",
    "UnclassifiableDimensionError",
    "IdentificationError",
    "VerificationError",
    "InvalidDescriptorError",
    "InvalidDocumentError",
    "NotMemberError",
    "NotTriangularError",
    "UnsupportedError",
    "UnsupportedScalarGroupError",
    "ZeroVectorError",
    "ZeroSpinorError",
]


class NonTracelessError(ValueError):
    """A matrix expected to lie in the algebra has non-zero trace."""


class NotUnimodularError(ValueError):
    """A matrix expected to lie in the group has determinant != 1."""


class ZeroElementError(ValueError):
    """An operation requiring a non-zero algebra element received zero."""


class DegenerateInputError(ValueError):
    """Orbit parameters that describe no orbit, e.g. mu = nu = 0."""


class NotASubalgebraError(ValueError):
    """A subspace is not closed under the bracket."""


class UnclassifiableDimensionError(RuntimeError):
    """
    A closure reached dimension five, which signals a numerical rank
    failure since no such subalgebra exists.
    """


class IdentificationError(RuntimeError):
    """A subalgebra has a structure matching no catalog class."""


class VerificationError(RuntimeError):
    """A computed witness fails its residual check."""


class InvalidDescriptorError(ValueError):
    """Subgroup parameters outside the domain of the family."""


class InvalidDocumentError(ValueError):
    """A JSON input document does not match its declared structure."""


class NotMemberError(ValueError):
    """A group element lies in no component of the subgroup."""


class NotTriangularError(ValueError):
    """Generators that are not simultaneously upper triangular."""


class UnsupportedError(NotImplementedError):
    """The requested case is not covered by the catalog."""


class UnsupportedScalarGroupError(UnsupportedError):
    """A scalar subgroup outside the lattice and circle cases."""


class ZeroVectorError(ValueError):
    """A four-vector with all components zero."""


class ZeroSpinorError(ValueError):
    """A spinor with both components zero."""
