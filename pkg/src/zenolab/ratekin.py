"""Classical rate equations, the Pauli equation, and the freeze contrast.

A rate matrix in the generator convention (non-negative off-diagonals,
columns summing to zero) drives d/dt P = A P. Its quantum counterpart for
occupation probabilities, d/dt rho_aa = sum_b A_ab rho_bb, uses only the
diagonal of the density matrix: interference terms play no dynamical
role. Taken literally that cannot be the whole story, because the von
Neumann equation applied to a diagonal density matrix yields exactly zero
diagonal rates; ``freeze_contrast`` puts the two side by side.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import InvalidRateMatrix, NotDiagonal
from .qstate import DensityMatrix
from .vnmeasure import diagonal_freeze_rates

__all__ = [
    "RateMatrix",
    "ProbabilityVector",
    "FreezeReport",
    "solve_rate_equation",
    "pauli_rates",
    "freeze_contrast",
    "load_rate_matrix",
]

logger = logging.getLogger(__name__)

_COLUMN_SUM_TOL = 1e-12
_NEGATIVE_TOL = -1e-12


@dataclass(frozen=True)
class RateMatrix:
    """Transition-rate generator A with A[a, b] = rate b -> a for a != b.

    Generator convention: off-diagonals non-negative and every column sums
    to zero, so probability is conserved exactly. Validation enforces the
    convention instead of silently repairing the diagonal.
    """

    a: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.a, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidRateMatrix(f"rate matrix must be square, got shape {m.shape}")
        off = m - np.diag(np.diag(m))
        if np.any(off < 0):
            raise InvalidRateMatrix("off-diagonal rates must be non-negative")
        col_sums = m.sum(axis=0)
        worst = float(np.max(np.abs(col_sums))) if col_sums.size else 0.0
        if worst > _COLUMN_SUM_TOL:
            raise InvalidRateMatrix(f"column sums must vanish, worst |sum| = {worst:.3e}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "a", m)

    @property
    def dim(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class ProbabilityVector:
    """Non-negative occupation probabilities summing to one."""

    p: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.p, dtype=float).reshape(-1)
        if np.any(v < _NEGATIVE_TOL):
            raise ValueError(f"negative probability {v.min():.3e}")
        if abs(v.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {v.sum()!r}, not 1")
        v = np.clip(v, 0.0, None)
        v.flags.writeable = False
        object.__setattr__(self, "p", v)

    @property
    def dim(self) -> int:
        return self.p.size


def solve_rate_equation(a: RateMatrix, p0: ProbabilityVector, t: float) -> ProbabilityVector:
    """Propagate d/dt P = A P for time t via the real matrix exponential.

    Generators at desk scale are small and well conditioned, so
    scaling-and-squaring is exact to round-off. Components that land an
    epsilon below zero are clamped (and logged); anything worse means the
    input was not a generator.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    if p0.dim != a.dim:
        raise InvalidRateMatrix("initial distribution dimension does not match generator")
    out = expm(a.a * t) @ p0.p
    low = float(out.min())
    if low < _NEGATIVE_TOL:
        raise InvalidRateMatrix(f"solution went negative ({low:.3e}); generator invalid")
    if low < 0.0:
        logger.debug("clamping %d slightly negative components", int(np.sum(out < 0)))
    return ProbabilityVector(np.clip(out, 0.0, None))


def pauli_rates(a: RateMatrix, rho: DensityMatrix) -> np.ndarray:
    """d/dt rho_aa = sum_b A_ab rho_bb: occupation rates from diagonals only.

    Two states with the same diagonal get identical rates no matter what
    their coherences are. The rates sum to zero exactly because the
    generator columns do.
    """
    if rho.dim != a.dim:
        raise InvalidRateMatrix("density-matrix dimension does not match generator")
    return a.a @ rho.populations()


@dataclass(frozen=True)
class FreezeReport:
    """Side-by-side diagonal rates: von Neumann (zero) versus Pauli (moving)."""

    von_neumann_rates: np.ndarray
    pauli_rates: np.ndarray
    populations_after: ProbabilityVector


def freeze_contrast(
    h: np.ndarray, a: RateMatrix, rho_diag: DensityMatrix, t: float
) -> FreezeReport:
    """Evaluate both dynamical pictures on one diagonal state.

    The von Neumann diagonal rates vanish identically for any Hermitian H
    once the state is diagonal, while the Pauli rates drive the same
    populations at finite speed; ``populations_after`` shows where the
    rate equation has moved them by time t.

    Raises NotDiagonal if the state has off-diagonal weight.
    """
    vn = diagonal_freeze_rates(rho_diag, h)
    pl = pauli_rates(a, rho_diag)
    after = solve_rate_equation(a, ProbabilityVector(rho_diag.populations()), t)
    return FreezeReport(vn, pl, after)


def load_rate_matrix(path) -> RateMatrix:
    """Read a generator from JSON: ``{"dim": d, "rates": [[row, col, value], ...]}``.

    Triples normally list the off-diagonal rates; any column whose
    diagonal entry is omitted gets it filled from the conservation
    condition before validation. Explicit diagonals are validated as
    given.
    """
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    dim = int(payload["dim"])
    m = np.zeros((dim, dim), dtype=float)
    diag_given = set()
    for row, col, value in payload["rates"]:
        row, col = int(row), int(col)
        if not (0 <= row < dim and 0 <= col < dim):
            raise InvalidRateMatrix(f"rate index ({row}, {col}) out of range for dim {dim}")
        m[row, col] = float(value)
        if row == col:
            diag_given.add(row)
    for col in range(dim):
        if col not in diag_given:
            m[col, col] = -(m[:, col].sum() - m[col, col])
    return RateMatrix(m)
