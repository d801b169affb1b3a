"""Exception types raised by zenolab operations."""


class ZenolabError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(ZenolabError):
    """Operands have incompatible dimensions."""


class NonHermitianInput(ZenolabError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class DecompositionFailure(ZenolabError):
    """The eigensolver failed to converge."""


class NonOrthonormalBasis(ZenolabError):
    """A channel basis is not orthonormal within tolerance."""


class NotDiagonal(ZenolabError):
    """A density matrix required to be diagonal has off-diagonal weight."""


class EnvironmentTooSmall(ZenolabError):
    """The apparatus space cannot host one pointer state per system state."""


class UnnormalizedProfile(ZenolabError):
    """Apparatus momentum weights do not sum to one."""


class ZeroCoupling(ZenolabError):
    """The pointer coupling is zero where a finite value is required."""


class WindowTooShort(ZenolabError):
    """A fit window contains too few samples."""


class UnstableStep(ZenolabError):
    """The explicit integrator blew up (step size violates stability)."""


class NonHermitianDrift(ZenolabError):
    """Grid evolution lost hermiticity beyond the allowed drift."""


class InvalidRateMatrix(ZenolabError):
    """Rate-matrix entries violate the generator convention."""
