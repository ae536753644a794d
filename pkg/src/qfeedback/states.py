"""Qubit state construction and validation.

Density matrices are plain complex ndarrays; `validate_state` is the
gatekeeper that checks Hermiticity, unit trace and positivity against
the package-wide tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import ID2, PAULIS, hermitian_eig, hermiticity_defect

STATE_TOL = 1e-10
# Eigenvalues in [-STATE_TOL, 0) are treated as round-off and clamped to
# zero by entropy code; anything more negative is a genuine positivity
# violation.
EIG_CLAMP = -STATE_TOL


def qubit_from_bloch(r) -> np.ndarray:
    """(I + r.sigma)/2 for a Bloch vector r with |r| <= 1."""
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise ValueError("Bloch vector must have 3 components")
    n = float(np.linalg.norm(r))
    if n > 1.0 + STATE_TOL:
        raise ValueError(f"Bloch vector length {n} exceeds 1")
    rho = 0.5 * ID2.copy()
    for comp, sigma in zip(r, PAULIS):
        rho += 0.5 * comp * sigma
    return rho


def bloch_from_qubit(rho: np.ndarray) -> np.ndarray:
    """Pauli expectation values (x, y, z) of a qubit state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got {rho.shape}")
    return np.array([float(np.real(np.trace(rho @ s))) for s in PAULIS])


def bloch_length(rho: np.ndarray) -> float:
    return float(np.linalg.norm(bloch_from_qubit(rho)))


@dataclass(frozen=True)
class QubitSplitting:
    """Energy gap of a qubit Hamiltonian (delta/2) sigma_z at scale kT.

    delta is in units of kT.nats; kT defaults to 1 so heats come out in
    kT.nats as well.
    """

    delta: float
    kT: float = 1.0

    def __post_init__(self):
        if self.kT <= 0:
            raise ValueError("kT must be positive")


def thermal_alpha(split: QubitSplitting) -> float:
    """Bloch length of the Boltzmann state for the given splitting."""
    return math.tanh(split.delta / (2.0 * split.kT))


def splitting_from_alpha(alpha: float, kT: float = 1.0) -> QubitSplitting:
    """Energy gap whose thermal state has Bloch length alpha."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha} (alpha=1 needs an infinite gap)")
    return QubitSplitting(delta=kT * math.log((1.0 + alpha) / (1.0 - alpha)), kT=kT)


@dataclass(frozen=True)
class StateReport:
    """Validation outcome for a candidate density matrix."""

    ok: bool
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    clamped: bool
    reason: str = ""


def validate_state(rho: np.ndarray) -> StateReport:
    """Check Hermiticity, unit trace and positivity of rho.

    Eigenvalues in the clamp window [-1e-10, 0) are accepted with
    clamped=True; anything below fails.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        return StateReport(False, math.inf, math.inf, -math.inf, False, "not a square matrix")
    if not np.all(np.isfinite(rho)):
        return StateReport(False, math.inf, math.inf, -math.inf, False, "non-finite entries")

    herm = hermiticity_defect(rho)
    trace = abs(float(np.real(np.trace(rho))) - 1.0)
    if herm > STATE_TOL:
        return StateReport(False, herm, trace, -math.inf, False,
                           f"not Hermitian (defect {herm:.3e})")
    w = hermitian_eig(rho).eigenvalues
    wmin = float(w[0])

    reasons = []
    if trace > STATE_TOL:
        reasons.append(f"trace defect {trace:.3e}")
    if wmin < EIG_CLAMP:
        reasons.append(f"negative eigenvalue {wmin:.3e}")
    clamped = EIG_CLAMP <= wmin < 0.0
    ok = not reasons
    return StateReport(ok, herm, trace, wmin, clamped, "; ".join(reasons))


def require_state(rho: np.ndarray) -> np.ndarray:
    """validate_state that raises instead of reporting."""
    report = validate_state(rho)
    if not report.ok:
        raise ValueError(f"invalid density matrix: {report.reason}")
    return np.asarray(rho, dtype=complex)
