"""Measurement as a dynamical process: dephasing, amplitude chains, entanglement.

Three pictures of the same physics live here. A measurement can be
written as a dephasing channel on the density matrix, as an explicit
two-step amplitude chain with the interference terms dropped, or as
unitary entanglement with orthogonal pointer states followed by a partial
trace. The module-level tests assert that all three give identical
statistics, which is the whole point: collapsing the wave function is not
needed to obtain measurement-suppressed dynamics, entanglement alone
suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    EnvironmentTooSmall,
    NonOrthonormalBasis,
    NotDiagonal,
)
from .numerics import policy
from .qstate import DensityMatrix, StateVector, herm_propagator, partial_trace
from .unitary import two_level_hamiltonian

__all__ = [
    "DephasingChannel",
    "ChainResult",
    "apply_dephasing",
    "two_step_chain",
    "measured_chain",
    "entangle_measurement",
    "pointer_states_from_overlaps",
    "diagonal_freeze_rates",
]


@dataclass(frozen=True)
class DephasingChannel:
    """Suppress coherences in a fixed orthonormal basis.

    ``basis`` holds the basis vectors as columns; ``None`` means the
    computational basis. ``strength`` is in [0, 1]; at 1 the channel
    removes the off-diagonal elements completely.
    """

    strength: float
    basis: np.ndarray | None = None

    def __post_init__(self):
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError("dephasing strength must lie in [0, 1]")
        if self.basis is not None:
            b = np.asarray(self.basis, dtype=complex)
            gram_defect = np.max(np.abs(b.conj().T @ b - np.eye(b.shape[1])))
            if gram_defect > policy.operator_atol:
                raise NonOrthonormalBasis(f"basis gram defect {gram_defect:.3e}")
            object.__setattr__(self, "basis", b)


@dataclass(frozen=True)
class ChainResult:
    """Two-step transition probabilities with and without an intermediate measurement."""

    p2_coherent: float
    p2_measured: float
    amplitudes: np.ndarray  # 2x2, [from, to], single-step amplitudes

    def __post_init__(self):
        for name in ("p2_coherent", "p2_measured"):
            p = getattr(self, name)
            if not -1e-12 <= p <= 1 + 1e-12:
                raise ValueError(f"{name}={p!r} outside [0, 1]")

    def to_json(self) -> dict:
        a = self.amplitudes
        return {
            "p2_coherent": self.p2_coherent,
            "p2_measured": self.p2_measured,
            "amplitudes": [[[float(z.real), float(z.imag)] for z in row] for row in a],
        }


def apply_dephasing(rho: DensityMatrix, ch: DephasingChannel) -> DensityMatrix:
    """Multiply off-diagonals in the channel basis by (1 - strength).

    Diagonal entries are untouched; strength 0 returns the input object
    unchanged (bit-exactly), strength 1 yields a matrix exactly diagonal
    in the channel basis.
    """
    if ch.strength == 0.0:
        return rho
    if ch.basis is not None and ch.basis.shape[0] != rho.dim:
        raise DimensionMismatch("channel basis dimension does not match state")
    work = rho.matrix
    if ch.basis is not None:
        work = ch.basis.conj().T @ work @ ch.basis
    keep = 1.0 - ch.strength
    out = work * keep
    np.fill_diagonal(out, np.diag(work))
    if ch.basis is not None:
        out = ch.basis @ out @ ch.basis.conj().T
    return DensityMatrix(out)


def _step_amplitudes(v: float, e: float, t: float) -> np.ndarray:
    """Single-step amplitudes a[i, j] = <j+1| exp(-i H t) |i+1>."""
    u = herm_propagator(two_level_hamiltonian(v, e), t)
    return u.T.copy()


def two_step_chain(v: float, e: float, t: float, measured: bool = True) -> ChainResult:
    """Transition probability to |2> after two steps of duration t.

    Coherent chain: P2 = |a12 a22 + a11 a12|**2, the two paths interfere.
    Measured chain: P2 = |a12 a22|**2 + |a11 a12|**2, the cross terms are
    gone and for small t exactly half the coherent probability survives.
    Both numbers are always computed; ``measured`` only marks intent for
    callers that forward the flag.
    """
    if t < 0:
        raise ValueError("step time must be non-negative")
    a = _step_amplitudes(v, e, t)
    a11, a12, a22 = a[0, 0], a[0, 1], a[1, 1]
    coherent = abs(a12 * a22 + a11 * a12) ** 2
    measured_p = abs(a12 * a22) ** 2 + abs(a11 * a12) ** 2
    return ChainResult(float(coherent), float(measured_p), a)


def measured_chain(v: float, e: float, t_total: float, steps: int) -> float:
    """Probability of |2> after ``steps`` unitary intervals, fully dephased between them.

    Implements the decoherence picture literally: evolve the density
    matrix for ``t_total/steps``, apply a strength-1 dephasing channel in
    the energy-label basis, repeat. One step reproduces the coherent
    transition probability. For small ``v*t_total`` the result scales as
    ``(v*t_total)**2 / steps``.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    u = herm_propagator(two_level_hamiltonian(v, e), t_total / steps)
    full = DephasingChannel(strength=1.0)
    rho = StateVector.basis(2, 0).density()
    for _ in range(steps):
        rho = DensityMatrix(u @ rho.matrix @ u.conj().T, _skip_eig_check=True)
        rho = apply_dephasing(rho, full)
    return float(np.real(rho.matrix[1, 1]))


def pointer_states_from_overlaps(gram: np.ndarray, n_env: int) -> np.ndarray:
    """Pointer states (rows) in an ``n_env``-dimensional space with the given overlaps.

    ``gram`` must be Hermitian positive semidefinite with unit diagonal;
    its Cholesky factor fixes the states so that ``<phi_m|phi_n> ==
    gram[m, n]``.
    """
    g = np.asarray(gram, dtype=complex)
    d = g.shape[0]
    if g.shape != (d, d):
        raise DimensionMismatch("overlap matrix must be square")
    if n_env < d:
        raise EnvironmentTooSmall(f"need at least {d} environment dimensions, got {n_env}")
    if np.max(np.abs(np.diag(g) - 1.0)) > policy.operator_atol:
        raise ValueError("overlap matrix must have unit diagonal")
    try:
        chol = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise ValueError("overlap matrix is not positive definite") from exc
    states = np.zeros((d, n_env), dtype=complex)
    states[:, :d] = chol.conj()
    return states


def entangle_measurement(
    system: StateVector,
    n_env: int,
    pointer_states: np.ndarray | None = None,
) -> tuple[DensityMatrix, DensityMatrix]:
    """Ideal recoil-free measurement: |n>|phi_0> -> |n>|phi_n>.

    Each system basis state gets tagged with its own pointer state, by
    default the canonical environment basis vectors (orthonormal, i.e. a
    perfect measurement). Returns the joint state (always pure) and the
    reduced system matrix; with orthonormal pointers the reduced matrix
    is exactly ``diag(|c_n|**2)`` and the populations never change: the
    system is untouched, only the environment learns.

    ``pointer_states`` may supply non-orthogonal pointers (one row per
    system state, ``n_env`` columns, unit rows) to model incomplete
    measurement; see ``pointer_states_from_overlaps``.
    """
    d = system.dim
    if n_env < d:
        raise EnvironmentTooSmall(f"need at least {d} environment dimensions, got {n_env}")
    if pointer_states is None:
        pointer_states = np.eye(d, n_env, dtype=complex)
    else:
        pointer_states = np.asarray(pointer_states, dtype=complex)
        if pointer_states.shape != (d, n_env):
            raise DimensionMismatch(
                f"pointer states must have shape {(d, n_env)}, got {pointer_states.shape}"
            )
        norms = np.linalg.norm(pointer_states, axis=1)
        if np.max(np.abs(norms - 1.0)) > policy.operator_atol:
            raise ValueError("pointer states must be normalized")
    joint_vec = np.zeros(d * n_env, dtype=complex)
    for n in range(d):
        joint_vec[n * n_env : (n + 1) * n_env] = system.amplitudes[n] * pointer_states[n]
    joint = DensityMatrix(np.outer(joint_vec, joint_vec.conj()), _skip_eig_check=True)
    reduced = partial_trace(joint, (d, n_env), keep=0)
    return joint, reduced


def diagonal_freeze_rates(rho_diag: DensityMatrix, h: np.ndarray) -> np.ndarray:
    """Diagonal rates of the von Neumann equation for an exactly diagonal state.

    d(rho_nn)/dt picks up only the diagonal of -i[H, rho], and for
    diagonal rho that commutator diagonal vanishes identically: no
    evolution is possible once coherence is gone. Returns the computed
    rates so callers can watch them be zero.
    """
    h = np.asarray(h, dtype=complex)
    if h.shape != rho_diag.matrix.shape:
        raise DimensionMismatch("hamiltonian and state dimensions differ")
    off = rho_diag.matrix - np.diag(np.diag(rho_diag.matrix))
    worst = float(np.max(np.abs(off))) if off.size else 0.0
    if worst > policy.diagonal_atol:
        raise NotDiagonal(f"off-diagonal weight {worst:.3e} exceeds {policy.diagonal_atol}")
    comm = h @ rho_diag.matrix - rho_diag.matrix @ h
    rates = -1j * np.diag(comm)
    return np.real(rates).copy()
