"""Dense complex linear algebra and quantum-state primitives.

Everything downstream (survival probabilities, dephasing chains, pointer
models) is built on the three objects defined here: raw complex matrices
(plain ``numpy`` arrays), normalized state vectors, and density matrices.
All values are immutable after construction and safe to share between
threads; every public operation is a pure function of its inputs.

Conventions: ``hbar = 1`` throughout; basis states are labeled ``|1>,
|2>, ...`` in prose and map to indices ``0, 1, ...`` in code.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DecompositionFailure,
    DimensionMismatch,
    EnvironmentTooSmall,
    NonHermitianInput,
)
from .numerics import policy

__all__ = [
    "StateVector",
    "DensityMatrix",
    "herm_propagator",
    "expectation",
    "partial_trace",
    "hermiticity_defect",
    "matrix_to_json",
    "matrix_from_json",
]


def _as_complex_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError("matrix contains non-finite entries")
    return m


def hermiticity_defect(m: np.ndarray) -> float:
    """Largest entry-wise deviation of ``m`` from its conjugate transpose."""
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True)
class StateVector:
    """A normalized pure state.

    Parameters
    ----------
    amplitudes : array-like of complex
        Coefficients in the computational basis. Normalized on
        construction unless ``normalized=False`` was requested, in which
        case the norm is only validated.
    """

    amplitudes: np.ndarray

    def __init__(self, amplitudes, normalize: bool = True):
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if amps.size == 0:
            raise DimensionMismatch("state vector must have positive dimension")
        norm = float(np.linalg.norm(amps))
        if normalize:
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        elif abs(norm - 1.0) > policy.state_atol:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond tolerance")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @classmethod
    def basis(cls, dim: int, index: int) -> "StateVector":
        """Computational basis state ``|index+1>`` of the given dimension."""
        amps = np.zeros(dim, dtype=complex)
        amps[index] = 1.0
        return cls(amps, normalize=False)

    def density(self) -> "DensityMatrix":
        """The projector ``|psi><psi|`` as a density matrix."""
        return DensityMatrix(np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive (within slack) matrix.

    Invariants are validated at construction time: hermiticity and trace
    within ``policy.state_atol``, smallest eigenvalue above
    ``policy.positivity_floor``. The wrapped array is read-only.
    """

    matrix: np.ndarray
    _skip_eig_check: bool = field(default=False, repr=False, compare=False)

    def __init__(self, matrix, _skip_eig_check: bool = False):
        m = _as_complex_matrix(matrix)
        if m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got {m.shape}")
        defect = hermiticity_defect(m)
        if defect > policy.state_atol:
            raise NonHermitianInput(f"hermiticity defect {defect:.3e} exceeds tolerance")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > policy.state_atol:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond tolerance")
        if not _skip_eig_check:
            lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min())
            if lo < policy.positivity_floor:
                raise ValueError(f"smallest eigenvalue {lo:.3e} below positivity floor")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "_skip_eig_check", _skip_eig_check)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def maximally_mixed(cls, dim: int) -> "DensityMatrix":
        return cls(np.eye(dim, dtype=complex) / dim)

    def purity(self) -> float:
        """Tr(rho^2), 1 for pure states."""
        return float(np.real(np.einsum("ij,ji->", self.matrix, self.matrix)))

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()


def herm_propagator(h: np.ndarray, t: float) -> np.ndarray:
    """Unitary ``exp(-i h t)`` of a Hermitian generator, by eigendecomposition.

    The eigendecomposition route keeps the result unitary to round-off for
    any ``t``, which the series and Pade routes do not guarantee; those
    exist only as test oracles.

    Raises
    ------
    NonHermitianInput
        If the asymmetry of ``h`` exceeds ``policy.operator_atol``.
    DecompositionFailure
        If the symmetric eigensolver does not converge.
    """
    h = _as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"generator must be square, got {h.shape}")
    if h.shape[0] > policy.max_dim:
        raise DimensionMismatch(
            f"dimension {h.shape[0]} exceeds configured maximum {policy.max_dim}"
        )
    defect = hermiticity_defect(h)
    if defect > policy.operator_atol:
        raise NonHermitianInput(f"hermiticity defect {defect:.3e} exceeds tolerance")
    try:
        evals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc
    phases = np.exp(-1j * evals * t)
    return (vecs * phases) @ vecs.conj().T


def expectation(rho: DensityMatrix, a: np.ndarray) -> float:
    """Tr(rho A) for Hermitian ``A``, returned as a real number.

    The imaginary part is discarded after checking it is consistent with
    round-off for a Hermitian observable.
    """
    a = _as_complex_matrix(a)
    if a.shape != rho.matrix.shape:
        raise DimensionMismatch(f"observable shape {a.shape} != state shape {rho.matrix.shape}")
    defect = hermiticity_defect(a)
    if defect > policy.operator_atol:
        raise NonHermitianInput(f"observable hermiticity defect {defect:.3e}")
    val = complex(np.einsum("ij,ji->", rho.matrix, a))
    scale = max(1.0, abs(val))
    if abs(val.imag) > policy.operator_atol * scale:
        raise NonHermitianInput(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def partial_trace(rho_joint: DensityMatrix, dims: tuple[int, int], keep: int) -> DensityMatrix:
    """Trace out one factor of a bipartite state.

    ``dims = (dA, dB)`` with ``dim(rho_joint) == dA * dB``; ``keep`` is 0
    for the first factor, 1 for the second. Trace and hermiticity carry
    over to the reduced matrix, which is validated like any other
    ``DensityMatrix``.
    """
    d_a, d_b = dims
    if d_a <= 0 or d_b <= 0 or d_a * d_b != rho_joint.dim:
        raise DimensionMismatch(
            f"subsystem dims {dims} incompatible with joint dimension {rho_joint.dim}"
        )
    if keep not in (0, 1):
        raise ValueError("keep must be 0 or 1")
    blocks = rho_joint.matrix.reshape(d_a, d_b, d_a, d_b)
    if keep == 0:
        reduced = np.einsum("ibjb->ij", blocks)
    else:
        reduced = np.einsum("aiaj->ij", blocks)
    return DensityMatrix(reduced)


def matrix_to_json(m: np.ndarray) -> dict:
    """JSON-friendly encoding: entries as row-major ``[re, im]`` pairs."""
    m = _as_complex_matrix(m)
    return {
        "dim_rows": int(m.shape[0]),
        "dim_cols": int(m.shape[1]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_json(payload: dict) -> np.ndarray:
    rows, cols = int(payload["dim_rows"]), int(payload["dim_cols"])
    entries = payload["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise DimensionMismatch("entry table does not match declared dimensions")
    out = np.empty((rows, cols), dtype=complex)
    for i, row in enumerate(entries):
        for j, (re, im) in enumerate(row):
            out[i, j] = complex(re, im)
    return out
