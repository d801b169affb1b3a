"""Global numeric policy: one place for the tolerances the whole package uses."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class NumericPolicy:
    """Tolerances and limits shared by all modules.

    state_atol      -- invariants of state objects (trace, norm, hermiticity)
    operator_atol   -- operator-level identities (unitarity, hermiticity of inputs)
    positivity_floor-- most negative admissible density-matrix eigenvalue;
                       grid integrators legitimately produce tiny negative
                       eigenvalues, so this is below zero on purpose
    diagonal_atol   -- largest off-diagonal magnitude still counted as
                       "exactly diagonal"
    max_dim         -- largest dense dimension accepted by the propagator
    """

    state_atol: float = 1e-12
    operator_atol: float = 1e-10
    positivity_floor: float = -1e-10
    diagonal_atol: float = 1e-14
    max_dim: int = 4096


# Mutate or replace fields on this instance to reconfigure the package.
policy = NumericPolicy()
