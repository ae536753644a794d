"""Analytic Bloch lengths and efficiencies.

These scalar formulas are kept independent of the density-matrix engine
so they can serve as its oracle.  Where an efficiency does not exist
(no measurement, or a vanishing denominator) the functions return None.
"""

from __future__ import annotations

import math

from .thermo import binary_entropy

LN2 = math.log(2.0)
_DENOM_TOL = 1e-14


def gamma_x(theta: float, alpha: float, lam: float) -> float:
    """Final system Bloch length after x-measurement feedback."""
    return math.sqrt((alpha * math.cos(theta)) ** 2 + (lam * math.sin(theta)) ** 2)


def gamma_z(theta: float, lam: float) -> float:
    """Final system Bloch length after z-measurement feedback."""
    return lam * math.sin(theta)


def eff_mb_x(theta: float, alpha: float, lam: float) -> float | None:
    """Efficiency of explicit measurement-based feedback, x-measurement."""
    denom = LN2 - binary_entropy(lam)
    if theta == 0.0 or abs(denom) < _DENOM_TOL:
        return None
    return (binary_entropy(alpha) - binary_entropy(gamma_x(theta, alpha, lam))) / denom


def eff_coh_x(theta: float, alpha: float, lam: float) -> float | None:
    """Efficiency of coherent measurement-based feedback, x-measurement."""
    g = gamma_x(theta, alpha, lam)
    if theta == 0.0 or g < _DENOM_TOL:
        return None
    denom = binary_entropy(alpha * lam / g) - binary_entropy(lam)
    if abs(denom) < _DENOM_TOL:
        return None
    return (binary_entropy(alpha) - binary_entropy(g)) / denom


def eff_z(theta: float, alpha: float, lam: float) -> float | None:
    """Efficiency of z-measurement feedback (same coherent or explicit).

    Negative for small theta where the protocol actually increases the
    system entropy (gamma_z < alpha).
    """
    g = gamma_z(theta, lam)
    denom = binary_entropy(alpha * g) - binary_entropy(lam)
    if theta == 0.0 or abs(denom) < _DENOM_TOL:
        return None
    return (binary_entropy(alpha) - binary_entropy(g)) / denom
