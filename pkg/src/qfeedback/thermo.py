"""Entropy and heat bookkeeping.

All entropies are in nats; with kT expressed in its own units, heats
come out in units of kT.nats.  An efficiency that does not exist (the
protocol moved no entropy, or the denominator vanishes) is represented
by None, never by an exception, so parameter sweeps do not abort.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import hermitian_eig, partial_trace
from .states import EIG_CLAMP

MI_TOL = 1e-10


def von_neumann_entropy(rho: np.ndarray) -> float:
    """H(rho) = -Tr[rho ln rho] in nats.

    Eigenvalues in the round-off clamp window are treated as zero, with
    the usual 0 ln 0 = 0 convention.
    """
    w = hermitian_eig(rho).eigenvalues
    if w[0] < EIG_CLAMP:
        raise ValueError(f"state has negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    nz = w[w > 0.0]
    return float(-(nz * np.log(nz)).sum())


def binary_entropy(a: float) -> float:
    """Qubit entropy h(a) as a function of Bloch length a, in nats."""
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"Bloch length must lie in [0, 1], got {a}")
    s = 0.0
    for p in ((1.0 + a) / 2.0, (1.0 - a) / 2.0):
        if p > 0.0:
            s -= p * math.log(p)
    return s


def mutual_information(joint: np.ndarray) -> float:
    """I = H(system) + H(auxiliary) - H(joint) for a 4x4 joint state."""
    joint = np.asarray(joint, dtype=complex)
    if joint.shape != (4, 4):
        raise ValueError(f"mutual_information expects a 4x4 state, got {joint.shape}")
    h_s = von_neumann_entropy(partial_trace(joint, "system"))
    h_a = von_neumann_entropy(partial_trace(joint, "auxiliary"))
    return h_s + h_a - von_neumann_entropy(joint)


def entropy_production(dH: float, Q: float, kT: float) -> float:
    """Irreversible entropy production dH + Q/kT (k = 1 units)."""
    if kT <= 0:
        raise ValueError("kT must be positive")
    return dH + Q / kT


def efficiency(dH_S: float, Q: float, kT: float = 1.0) -> float | None:
    """Energetic efficiency -kT dH_S / Q; None where it is not defined.

    Undefined when no heat flows (Q <= 0) or when the protocol changed
    no system entropy at all.
    """
    if Q <= 0.0 or dH_S == 0.0:
        return None
    return -kT * dH_S / Q


def optimal_reset_heat(dH_A: float, kT: float = 1.0) -> float:
    """Heat of an optimal (reversible) auxiliary reset, kT * dH_A."""
    if kT <= 0:
        raise ValueError("kT must be positive")
    return kT * dH_A


@dataclass(frozen=True)
class EnergyBlock:
    """First-law bookkeeping under the (delta/2) sigma_z Hamiltonian convention."""

    dE_S: float
    W: float
    dF_A: float


@dataclass(frozen=True)
class ThermoLedger:
    """Entropy/heat totals for one protocol run.

    dH_S, dH_A are total entropy changes (initial -> final stage);
    I_stages maps stage name to mutual information; epsilon is None when
    the efficiency is not defined.
    """

    dH_S: float
    dH_A: float
    I_stages: dict[str, float] = field(default_factory=dict)
    Q_min: float = 0.0
    Q_opt: float = 0.0
    epsilon: float | None = None
    dSi_reset: float = 0.0
    energy: EnergyBlock | None = None
