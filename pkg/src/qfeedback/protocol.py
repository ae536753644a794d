"""The feedback protocol on the 4x4 joint state.

One run is: prepare the product of two thermal qubits, correlate them
with the measurement unitary exp(-i(theta/2) sigma_m x sigma_y), in
explicit mode decohere the auxiliary in its sigma_x readout basis, then
apply the conditional feedback unitary.  The auxiliary reset is
accounted analytically (optimal isothermal reset), not simulated.

Sign conventions, fixed by test rather than by fiat: a system
sigma_m eigenstate with eigenvalue +1 rotates the auxiliary
counterclockwise in the xz-plane, and the feedback branches are
assigned so that both conditional system states end up pointing along
-z.  With those choices the run reproduces the closed-form Bloch
lengths and efficiencies of the closed_form module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    dagger,
    partial_trace,
    tensor_product,
    unitary_from_generator,
)
from .states import bloch_length, qubit_from_bloch, splitting_from_alpha
from .thermo import (
    EnergyBlock,
    ThermoLedger,
    mutual_information,
    von_neumann_entropy,
)

COMPLETENESS_TOL = 1e-10
NULL_OUTCOME_TOL = 1e-14

# Columns are the sigma_x eigenvectors |+>, |->: the readout basis in
# which the measurement record lives and the auxiliary is decohered.
X_BASIS = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)

_AXIS_VECTORS = {"x": np.array([1.0, 0.0, 0.0]), "z": np.array([0.0, 0.0, 1.0])}


def resolve_axis(axis) -> np.ndarray:
    """Turn 'x'/'z' or an explicit 3-vector into a unit vector."""
    if isinstance(axis, str):
        try:
            return _AXIS_VECTORS[axis]
        except KeyError:
            raise ValueError(f"axis must be 'x', 'z' or a unit 3-vector, got {axis!r}") from None
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise ValueError("measurement axis must have 3 components")
    n = float(np.linalg.norm(v))
    if abs(n - 1.0) > 1e-10:
        raise ValueError(f"measurement axis must be a unit vector (norm {n})")
    return v


def _sigma_axis(axis_vec: np.ndarray) -> np.ndarray:
    return axis_vec[0] * SIGMA_X + axis_vec[1] * SIGMA_Y + axis_vec[2] * SIGMA_Z


def _check_basis(basis: np.ndarray) -> np.ndarray:
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (2, 2):
        raise ValueError("readout basis must be a 2x2 matrix of column vectors")
    gram = dagger(basis) @ basis
    if np.abs(gram - ID2).max() > 1e-10:
        raise ValueError("readout basis is not orthonormal")
    return basis


def measurement_unitary(axis, theta: float) -> np.ndarray:
    """exp(-i(theta/2) sigma_m x sigma_y) on the joint space.

    theta is the Bloch rotation angle of the auxiliary conditioned on a
    sigma_m eigenstate of the system (the half-angle makes the Bloch
    rotation equal theta, which is what the closed forms assume).
    """
    axis_vec = resolve_axis(axis)
    if not 0.0 <= theta <= math.pi / 2 + 1e-12:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    generator = tensor_product(_sigma_axis(axis_vec), SIGMA_Y)
    return unitary_from_generator(generator, theta / 2.0)


def decohere_auxiliary(joint: np.ndarray, basis: np.ndarray = X_BASIS) -> np.ndarray:
    """Kill the auxiliary coherences in the given basis.

    Leaves the system marginal and the auxiliary populations in that
    basis untouched; only the cross-outcome blocks are zeroed.
    """
    basis = _check_basis(basis)
    joint = np.asarray(joint, dtype=complex)
    out = np.zeros_like(joint)
    for m in range(2):
        vec = basis[:, m]
        proj = tensor_product(ID2, np.outer(vec, vec.conj()))
        out += proj @ joint @ proj
    return out


def conditional_states(joint: np.ndarray, basis: np.ndarray = X_BASIS):
    """Outcome probabilities and conditional system states.

    Returns [(p_m, rho_m)] for each basis outcome; rho_m is None when
    the outcome probability is below NULL_OUTCOME_TOL.
    """
    basis = _check_basis(basis)
    joint = np.asarray(joint, dtype=complex)
    results = []
    for m in range(2):
        vec = basis[:, m]
        proj = tensor_product(ID2, np.outer(vec, vec.conj()))
        selected = proj @ joint @ proj
        p = float(np.real(np.trace(selected)))
        if p < NULL_OUTCOME_TOL:
            results.append((max(p, 0.0), None))
        else:
            results.append((p, partial_trace(selected, "system") / p))
    return results


def feedback_branch_angles(axis: str, theta: float, alpha: float, lam: float):
    """Per-outcome system rotation angles (about y) and the reported phi.

    Returns ((angle_plus, angle_minus), phi) where branch m applies
    exp(-i angle_m sigma_y / 2) conditioned on readout outcome m.
    """
    if axis == "x":
        phi = math.atan2(lam * math.sin(theta), alpha * math.cos(theta))
        return (-phi, phi), phi
    if axis == "z":
        return (0.0, math.pi), math.pi
    raise ValueError(f"feedback is defined for axis 'x' or 'z', got {axis!r}")


def feedback_from_angles(angles) -> np.ndarray:
    """Controlled unitary sum_m exp(-i angle_m sigma_y/2) x |m><m|."""
    u_fb = np.zeros((4, 4), dtype=complex)
    for m, angle in enumerate(angles):
        vec = X_BASIS[:, m]
        u_m = unitary_from_generator(SIGMA_Y, angle / 2.0)
        u_fb += tensor_product(u_m, np.outer(vec, vec.conj()))
    return u_fb


def feedback_unitary(axis: str, theta: float, alpha: float, lam: float):
    """Conditional feedback unitary and its system rotation angle.

    x-axis: the two readout branches are rotated about y by -/+ phi with
    phi = arctan((lam/alpha) tan theta) (phi -> pi/2 as alpha -> 0 or
    theta -> pi/2).  z-axis: the branch flagging the system as
    up is flipped by pi, the other is left alone; phi is reported as pi.
    Both assignments put the conditional system states on -z.
    """
    angles, phi = feedback_branch_angles(axis, theta, alpha, lam)
    return feedback_from_angles(angles), phi


@dataclass(frozen=True)
class MeasurementModel:
    """Kraus operators of the dilated measurement, one per readout outcome."""

    kraus: list

    def completeness_defect(self) -> float:
        total = sum(dagger(k) @ k for k in self.kraus)
        return float(np.abs(total - ID2).max())


def kraus_elements(axis, theta: float, basis: np.ndarray = X_BASIS,
                   aux_bloch_length: float = 1.0) -> MeasurementModel:
    """Kraus operators Pi_m = <m| U_meas |a0> for a pure auxiliary.

    a0 is the -z pure state the (lam = 1) auxiliary starts in.  A mixed
    auxiliary has no Kraus description at this level, so anything but
    aux_bloch_length = 1 is rejected; run the density-matrix engine
    instead.
    """
    if abs(aux_bloch_length - 1.0) > 1e-12:
        raise ValueError(
            "Kraus elements exist only for a pure (length-1) auxiliary; "
            "mixed auxiliaries are handled at the density-matrix level")
    basis = _check_basis(basis)
    u = measurement_unitary(axis, theta).reshape(2, 2, 2, 2)
    ground = np.array([0.0, 1.0], dtype=complex)
    ops = []
    for m in range(2):
        vec = basis[:, m]
        # (I x <m|) U (I x |a0>), indices (s, j, s', k)
        ops.append(np.einsum("j,sjtk,k->st", vec.conj(), u, ground))
    model = MeasurementModel(kraus=ops)
    defect = model.completeness_defect()
    if defect > COMPLETENESS_TOL:
        raise ValueError(f"Kraus completeness violated (defect {defect:.3e})")
    return model


@dataclass(frozen=True)
class ProtocolConfig:
    """Parameters of one protocol run.

    alpha, lam are the initial Bloch lengths of system and auxiliary,
    theta the measurement strength (Bloch rotation angle), axis the
    measurement direction, mode 'coherent' or 'explicit'.
    """

    alpha: float
    lam: float
    theta: float
    axis: str = "x"
    mode: str = "explicit"
    kT: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {self.lam}")
        if not 0.0 <= self.theta <= math.pi / 2 + 1e-12:
            raise ValueError(f"theta must lie in [0, pi/2], got {self.theta}")
        if self.mode not in ("coherent", "explicit"):
            raise ValueError(f"mode must be 'coherent' or 'explicit', got {self.mode!r}")
        if self.axis not in ("x", "z"):
            resolve_axis(self.axis)
        if self.kT <= 0:
            raise ValueError("kT must be positive")

    @property
    def auxiliary_less_pure(self) -> bool:
        """True when the auxiliary starts more mixed than the system."""
        return self.lam < self.alpha


@dataclass(frozen=True)
class StageRecord:
    stage: str
    joint: np.ndarray
    system_marginal: np.ndarray
    auxiliary_marginal: np.ndarray
    H_S: float
    H_A: float
    H_joint: float
    I: float


@dataclass(frozen=True)
class ProtocolResult:
    config: ProtocolConfig
    stages: list
    ledger: ThermoLedger
    gamma_final: float
    phi_used: float

    def stage(self, name: str) -> StageRecord:
        for record in self.stages:
            if record.stage == name:
                return record
        raise KeyError(name)


def _record(stage: str, joint: np.ndarray) -> StageRecord:
    sys_m = partial_trace(joint, "system")
    aux_m = partial_trace(joint, "auxiliary")
    h_s = von_neumann_entropy(sys_m)
    h_a = von_neumann_entropy(aux_m)
    h_j = von_neumann_entropy(joint)
    return StageRecord(stage, joint, sys_m, aux_m, h_s, h_a, h_j, h_s + h_a - h_j)


def _energy_block(config: ProtocolConfig, initial: StageRecord, final: StageRecord,
                  ledger_Q: float) -> EnergyBlock | None:
    # Hamiltonians are the minimal thermal-consistent choice
    # (delta/2) sigma_z; an infinite gap (Bloch length 1) has no finite
    # splitting, so no energy block is reported there.
    if config.alpha >= 1.0 or config.lam >= 1.0:
        return None
    h_sys = (splitting_from_alpha(config.alpha, config.kT).delta / 2.0) * SIGMA_Z
    h_aux = (splitting_from_alpha(config.lam, config.kT).delta / 2.0) * SIGMA_Z
    dE_S = float(np.real(np.trace(h_sys @ (final.system_marginal - initial.system_marginal))))
    dE_A = float(np.real(np.trace(h_aux @ (final.auxiliary_marginal - initial.auxiliary_marginal))))
    return EnergyBlock(dE_S=dE_S, W=ledger_Q + dE_S,
                       dF_A=dE_A - config.kT * (final.H_A - initial.H_A))


def run_protocol(config: ProtocolConfig) -> ProtocolResult:
    """Run measurement, (decoherence,) feedback and the reset accounting."""
    if config.axis not in ("x", "z"):
        raise ValueError("run_protocol needs a closed feedback rule, available for axis 'x' or 'z'")

    rho = qubit_from_bloch((0.0, 0.0, -config.alpha))
    chi = qubit_from_bloch((0.0, 0.0, -config.lam))
    joint = tensor_product(rho, chi)
    stages = [_record("initial", joint)]

    if config.theta == 0.0:
        # no measurement means no record to decohere and nothing to
        # condition feedback on: every stage equals the initial state
        names = ["post_measurement"]
        if config.mode == "explicit":
            names.append("post_decoherence")
        names.append("post_feedback")
        for name in names:
            stages.append(_record(name, joint))
        phi = 0.0
    else:
        u_meas = measurement_unitary(config.axis, config.theta)
        joint = u_meas @ joint @ dagger(u_meas)
        stages.append(_record("post_measurement", joint))

        if config.mode == "explicit":
            joint = decohere_auxiliary(joint, X_BASIS)
            stages.append(_record("post_decoherence", joint))

        u_fb, phi = feedback_unitary(config.axis, config.theta, config.alpha, config.lam)
        joint = u_fb @ joint @ dagger(u_fb)
        stages.append(_record("post_feedback", joint))

    initial, final = stages[0], stages[-1]
    dH_S = final.H_S - initial.H_S
    dH_A = final.H_A - initial.H_A
    q_opt = config.kT * dH_A
    epsilon = None if abs(dH_A) <= 1e-12 else -dH_S / dH_A
    ledger = ThermoLedger(
        dH_S=dH_S,
        dH_A=dH_A,
        I_stages={record.stage: record.I for record in stages},
        Q_min=-config.kT * dH_S,
        Q_opt=q_opt,
        epsilon=epsilon,
        dSi_reset=final.I,
        energy=_energy_block(config, initial, final, q_opt),
    )
    return ProtocolResult(
        config=config,
        stages=stages,
        ledger=ledger,
        gamma_final=bloch_length(final.system_marginal),
        phi_used=phi,
    )
