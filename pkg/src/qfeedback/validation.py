"""Engine vs closed-form cross-check over a parameter grid.

For every (theta, alpha, lambda) tuple the density-matrix engine is run
in all relevant modes and compared against the analytic Bloch lengths
and efficiencies, and the entropy-balance identities are checked on the
recorded stages.  This is the package's acceptance gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_form
from .protocol import ProtocolConfig, ProtocolResult, run_protocol

ORACLE_TOL = 1e-9
IDENTITY_TOL = 1e-10

DEVIATION_KEYS = ("gamma_x", "gamma_z", "eps_mb_x", "eps_coh_x", "eps_z")


def default_grid(n_theta: int = 40, n_alpha: int = 5, n_lambda: int = 5):
    """(theta, alpha, lambda) tuples with lambda >= alpha throughout."""
    tuples = []
    for theta in np.linspace(0.05, math.pi / 2, n_theta):
        for alpha in np.linspace(0.1, 0.9, n_alpha):
            for lam in np.linspace(alpha, 0.95, n_lambda):
                tuples.append((float(theta), float(alpha), float(lam)))
    return tuples


def _deviation(engine: float | None, analytic: float | None) -> float:
    if engine is None and analytic is None:
        return 0.0
    if engine is None or analytic is None:
        return math.inf
    return abs(engine - analytic)


def identity_violations(result: ProtocolResult) -> dict[str, float]:
    """Entropy-balance identity defects for one protocol run.

    Covers joint-entropy conservation under the unitary stages, the
    measurement entropy balance, the decoherence and feedback identities
    in explicit mode, and positivity of mutual information and of the
    reset entropy production.
    """
    stages = {record.stage: record for record in result.stages}
    initial = stages["initial"]
    meas = stages["post_measurement"]
    fb = stages["post_feedback"]
    pre_fb = stages.get("post_decoherence", meas)

    out = {}
    out["unitary_measurement"] = abs(meas.H_joint - initial.H_joint)
    out["unitary_feedback"] = abs(fb.H_joint - pre_fb.H_joint)
    # measurement balance: dH_A = -dH_S + I after the correlating unitary
    out["measurement_balance"] = abs(
        (meas.H_A - initial.H_A) + (meas.H_S - initial.H_S) - meas.I)
    out["mutual_information_min"] = max(0.0, -min(r.I for r in result.stages))
    out["reset_entropy_production"] = max(0.0, -result.ledger.dSi_reset)

    if "post_decoherence" in stages:
        dec = stages["post_decoherence"]
        lhs = dec.H_joint - meas.H_joint
        rhs = (dec.H_A - meas.H_A) - (dec.I - meas.I)
        out["decoherence_identity"] = abs(lhs - rhs)
        out["decoherence_irreversible"] = max(0.0, -lhs)
        out["feedback_identity"] = abs((fb.H_S - dec.H_S) - (fb.I - dec.I))
        out["feedback_fixes_auxiliary"] = float(
            np.abs(fb.auxiliary_marginal - dec.auxiliary_marginal).max())
    return out


@dataclass
class ValidationReport:
    max_deviation: dict[str, float] = field(default_factory=dict)
    max_identity: dict[str, float] = field(default_factory=dict)
    max_z_mode_gap: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def worst_deviation(self) -> float:
        return max(self.max_deviation.values(), default=0.0)

    def worst_identity(self) -> float:
        return max(self.max_identity.values(), default=0.0)

    def summary(self) -> str:
        lines = []
        for key in DEVIATION_KEYS:
            lines.append(f"max |engine - closed form| {key:9s} = {self.max_deviation.get(key, 0.0):.3e}")
        lines.append(f"max z-protocol mode gap             = {self.max_z_mode_gap:.3e}")
        for key, value in sorted(self.max_identity.items()):
            lines.append(f"max identity violation {key:26s} = {value:.3e}")
        lines.append("PASS" if self.ok else f"FAIL ({len(self.failures)} violations)")
        return "\n".join(lines)


def run_validation(grid=None, theta_scale: float = 1.0) -> ValidationReport:
    """Compare the engine with the closed forms over a parameter grid.

    theta_scale is a fault-injection hook used by the validator's own
    tests: it rescales the theta the engine sees (but not the analytic
    reference), so any nonzero mismatch must be caught.
    """
    if grid is None:
        grid = default_grid()
    report = ValidationReport()

    def note_dev(key, value, where):
        report.max_deviation[key] = max(report.max_deviation.get(key, 0.0), value)
        if value > ORACLE_TOL:
            report.failures.append((where, key, value))

    def note_id(key, value, where):
        report.max_identity[key] = max(report.max_identity.get(key, 0.0), value)
        if value > IDENTITY_TOL:
            report.failures.append((where, key, value))

    for theta, alpha, lam in grid:
        where = (theta, alpha, lam)
        engine_theta = min(theta * theta_scale, math.pi / 2)
        runs = {
            (axis, mode): run_protocol(ProtocolConfig(
                alpha=alpha, lam=lam, theta=engine_theta, axis=axis, mode=mode))
            for axis in ("x", "z") for mode in ("explicit", "coherent")
        }

        note_dev("gamma_x", _deviation(runs["x", "explicit"].gamma_final,
                                       closed_form.gamma_x(theta, alpha, lam)), where)
        note_dev("gamma_x", _deviation(runs["x", "coherent"].gamma_final,
                                       closed_form.gamma_x(theta, alpha, lam)), where)
        note_dev("gamma_z", _deviation(runs["z", "explicit"].gamma_final,
                                       closed_form.gamma_z(theta, lam)), where)
        note_dev("eps_mb_x", _deviation(runs["x", "explicit"].ledger.epsilon,
                                        closed_form.eff_mb_x(theta, alpha, lam)), where)
        note_dev("eps_coh_x", _deviation(runs["x", "coherent"].ledger.epsilon,
                                         closed_form.eff_coh_x(theta, alpha, lam)), where)
        for mode in ("explicit", "coherent"):
            note_dev("eps_z", _deviation(runs["z", mode].ledger.epsilon,
                                         closed_form.eff_z(theta, alpha, lam)), where)
        gap = _deviation(runs["z", "explicit"].ledger.epsilon,
                         runs["z", "coherent"].ledger.epsilon)
        report.max_z_mode_gap = max(report.max_z_mode_gap, gap)
        if gap > ORACLE_TOL:
            report.failures.append((where, "z_mode_gap", gap))

        for result in runs.values():
            for key, value in identity_violations(result).items():
                note_id(key, value, where)
    return report
