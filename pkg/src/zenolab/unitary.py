"""Survival probabilities, the short-time expansion, and repeated-measurement scaling.

The central quantity is the survival probability
``P(t) = |<u| exp(-i H t) |u>|**2`` of an initial state under unitary
evolution. For small times it always starts quadratically,
``P(t) = 1 - var(H) t**2 + O(t**4)``, which is what makes frequent
measurement freeze the dynamics; classical exponential decay is linear at
short times and is immune to measurement. Both behaviors live here side
by side.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .qstate import StateVector, expectation, herm_propagator

__all__ = [
    "DecayLaw",
    "SurvivalCurve",
    "two_level_hamiltonian",
    "survival_probability",
    "energy_variance",
    "short_time_survival",
    "repeated_measurement_survival",
    "exponential_survival",
]


def two_level_hamiltonian(v: float, e: float) -> np.ndarray:
    """H = V(|1><2| + |2><1|) + E|2><2| on the two-level system."""
    return np.array([[0.0, v], [np.conj(v), e]], dtype=complex)


@dataclass(frozen=True)
class DecayLaw:
    """Classical exponential decay with rate ``gamma >= 0``."""

    gamma: float

    def __post_init__(self):
        if self.gamma < 0:
            raise ValueError("decay rate must be non-negative")


@dataclass(frozen=True)
class SurvivalCurve:
    """A sampled survival curve with a model label.

    ``model_tag`` is one of ``unitary``, ``repeated_measurement``,
    ``exponential`` or ``quadratic``; rows serialize to CSV as
    ``t,p,model_tag``.
    """

    times: np.ndarray
    probabilities: np.ndarray
    model_tag: str

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        p = np.asarray(self.probabilities, dtype=float)
        if t.shape != p.shape or t.ndim != 1:
            raise ValueError("times and probabilities must be matching 1-d arrays")
        if np.any(p < -1e-12) or np.any(p > 1 + 1e-12):
            raise ValueError("probabilities outside [0, 1]")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "probabilities", p)

    def rows(self):
        for t, p in zip(self.times, self.probabilities):
            yield (float(t), float(p), self.model_tag)


def survival_probability(h: np.ndarray, u: StateVector, t: float) -> float:
    """P(t) = |<u| exp(-i H t) |u>|**2."""
    if t < 0:
        raise ValueError("time must be non-negative")
    amp = u.amplitudes.conj() @ herm_propagator(h, t) @ u.amplitudes
    p = float(abs(amp) ** 2)
    return min(p, 1.0)


def energy_variance(h: np.ndarray, u: StateVector) -> float:
    """var(H) = <u|H^2|u> - <u|H|u>^2 for the given state."""
    rho = u.density()
    h = np.asarray(h, dtype=complex)
    mean = expectation(rho, h)
    mean_sq = expectation(rho, h @ h)
    return max(mean_sq - mean * mean, 0.0)


def short_time_survival(variance: float, t: float) -> float:
    """Quadratic short-time estimate ``1 - var * t**2``, clamped to [0, 1].

    Clamping keeps sweep tooling from ever emitting an invalid
    probability when the estimate is used far outside its domain.
    """
    if variance < 0:
        raise ValueError("variance must be non-negative")
    return min(max(1.0 - variance * t * t, 0.0), 1.0)


def repeated_measurement_survival(h: np.ndarray, u: StateVector, t: float, n: int) -> float:
    """Survival after n ideal projective checks in [0, t]: ``P(t/n)**n``.

    Each check either finds the initial state (and leaves it exactly
    there) or removes the run from the surviving ensemble, so the exact
    per-interval survival multiplies. Uses the true ``P``, not its
    quadratic approximation.
    """
    if n < 1:
        raise ValueError("number of measurements must be >= 1")
    return survival_probability(h, u, t / n) ** n


def exponential_survival(law: DecayLaw, t: float, n: int = 1) -> float:
    """Survival of classical exponential decay, checked n times.

    Independent of n by construction: the value is exp(-gamma*t)
    evaluated once, on the same code path for every n, so results for
    different n are bit-identical. Measuring a classically decaying
    system does not change its statistics.
    """
    if t < 0:
        raise ValueError("time must be non-negative")
    if n < 1:
        raise ValueError("number of measurements must be >= 1")
    return float(np.exp(-law.gamma * t))
