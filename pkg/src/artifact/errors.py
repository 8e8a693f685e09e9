"""Exception hierarchy shared by the library and the command line front end."""


class ArtifactError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"


class ContractError(ArtifactError, ValueError):
    """Malformed input: dimension mismatch, bad index set, unparsable number."""

    code = "contract"


class CapabilityError(ArtifactError):
    """The request is valid but exceeds a configured size bound."""

    code = "capability"


class MathError(ArtifactError):
    """A mathematical precondition of an operation does not hold."""

    code = "precondition"


class DomainError(MathError):
    """A point lies outside the effective domain, or a direction outside a required subspace."""

    code = "domain"


class NotASubgradientError(MathError):
    code = "not_a_subgradient"


class QualificationError(MathError):
    """The affine independence qualification condition fails where it is required."""

    code = "qualification"
