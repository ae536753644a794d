"""Command-line front end: run, sweep, trajectory, validate.

`run` prints a JSON report for a single protocol execution; `sweep` and
`trajectory` emit CSV (the `fig3` and `fig4` presets lock the reference
parameters alpha=0.4, lambda=0.8); `validate` cross-checks the engine
against the closed forms and exits nonzero on any violation.

Exit codes: 0 success, 1 validation failure, 2 bad flags.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict

import numpy as np

from .protocol import ProtocolConfig, run_protocol
from .trajectory import feedback_duration, joint_state_at
from .thermo import mutual_information
from .validation import default_grid, run_validation

FIG3 = {"alpha": 0.4, "lam": 0.8, "start": 0.01, "stop": math.pi / 2, "steps": 200}
FIG4 = {"alpha": 0.4, "lam": 0.8, "theta": math.pi / 4, "mode": "coherent"}

SWEEP_HEADER = "theta,eps_x_mb,eps_x_coh,eps_z,gamma_x,gamma_z"
TRAJECTORY_HEADER = "t,stage,I_x,I_z"


def _fmt(x: float | None) -> str:
    if x is None:
        return "nan"
    return f"{x:.17g}"


def _write(text: str, out: str | None) -> None:
    if out is None or out == "stdout":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _config_from_args(args) -> ProtocolConfig:
    return ProtocolConfig(alpha=args.alpha, lam=args.lam, theta=args.theta,
                          axis=args.axis, mode=args.mode, kT=args.kT)


def cmd_run(args) -> int:
    config = _config_from_args(args)
    result = run_protocol(config)
    ledger = result.ledger
    report = {
        "config": {"alpha": config.alpha, "lambda": config.lam, "theta": config.theta,
                   "axis": config.axis, "mode": config.mode, "kT": config.kT},
        "warnings": (["auxiliary less pure than system"]
                     if config.auxiliary_less_pure else []),
        "stages": {
            record.stage: {"H_S": record.H_S, "H_A": record.H_A,
                           "H_joint": record.H_joint, "I": record.I}
            for record in result.stages
        },
        "ledger": {
            "dH_S": ledger.dH_S,
            "dH_A": ledger.dH_A,
            "Q_min": ledger.Q_min,
            "Q_opt": ledger.Q_opt,
            "epsilon": ledger.epsilon,
            "dSi_reset": ledger.dSi_reset,
            "energy": asdict(ledger.energy) if ledger.energy is not None else None,
        },
        "gamma_final": result.gamma_final,
        "phi_used": result.phi_used,
    }
    _write(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def sweep_rows(alpha: float, lam: float, thetas, kT: float = 1.0):
    """Engine sweep over theta: efficiencies and final Bloch lengths."""
    rows = []
    for theta in thetas:
        x_mb = run_protocol(ProtocolConfig(alpha=alpha, lam=lam, theta=theta,
                                           axis="x", mode="explicit", kT=kT))
        x_coh = run_protocol(ProtocolConfig(alpha=alpha, lam=lam, theta=theta,
                                            axis="x", mode="coherent", kT=kT))
        z = run_protocol(ProtocolConfig(alpha=alpha, lam=lam, theta=theta,
                                        axis="z", mode="explicit", kT=kT))
        rows.append((theta, x_mb.ledger.epsilon, x_coh.ledger.epsilon,
                     z.ledger.epsilon, x_mb.gamma_final, z.gamma_final))
    return rows


def cmd_sweep(args) -> int:
    if args.preset == "fig3":
        args.alpha, args.lam = FIG3["alpha"], FIG3["lam"]
        args.start, args.stop, args.steps = FIG3["start"], FIG3["stop"], FIG3["steps"]
    if not args.start < args.stop:
        raise ValueError("sweep needs start < stop")
    if args.steps < 2:
        raise ValueError("sweep needs at least 2 steps")
    thetas = np.linspace(args.start, args.stop, args.steps)
    rows = sweep_rows(args.alpha, args.lam, thetas, args.kT)
    lines = [SWEEP_HEADER]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def trajectory_rows(alpha: float, lam: float, theta: float, mode: str,
                    samples_per_stage: int = 200, kT: float = 1.0):
    """Shared-time-grid traces for the x- and z-protocols.

    Rows are (t, stage, I_x, I_z); I_x is None past the end of the
    shorter x-trace.  The x endpoint time theta + phi is inserted into
    the grid so the final x value appears exactly.
    """
    cfg_x = ProtocolConfig(alpha=alpha, lam=lam, theta=theta, axis="x", mode=mode, kT=kT)
    cfg_z = ProtocolConfig(alpha=alpha, lam=lam, theta=theta, axis="z", mode=mode, kT=kT)
    phi_x = feedback_duration(cfg_x)
    phi_z = feedback_duration(cfg_z)

    def info(cfg, t):
        return mutual_information(joint_state_at(cfg, t))

    rows = []
    for t in np.linspace(0.0, theta, samples_per_stage):
        rows.append((float(t), "measurement", info(cfg_x, t), info(cfg_z, t)))
    fb_times = sorted(set(np.linspace(0.0, phi_z, samples_per_stage)[1:]) | {phi_x})
    for dt in fb_times:
        t = theta + dt
        i_x = info(cfg_x, t) if dt <= phi_x + 1e-12 else None
        rows.append((float(t), "feedback", i_x, info(cfg_z, t)))
    return rows


def cmd_trajectory(args) -> int:
    if args.preset == "fig4":
        args.alpha, args.lam = FIG4["alpha"], FIG4["lam"]
        args.theta, args.mode = FIG4["theta"], FIG4["mode"]
    rows = trajectory_rows(args.alpha, args.lam, args.theta, args.mode,
                           args.samples, args.kT)
    lines = [TRAJECTORY_HEADER]
    for t, stage, i_x, i_z in rows:
        i_x_text = "" if i_x is None else _fmt(i_x)
        lines.append(f"{_fmt(t)},{stage},{i_x_text},{_fmt(i_z)}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_validate(args) -> int:
    grid = default_grid(args.thetas, args.alphas, args.lambdas)
    report = run_validation(grid)
    _write(report.summary() + "\n", args.out)
    if not report.ok:
        for where, key, value in report.failures[:20]:
            sys.stderr.write(f"violation {key}={value:.3e} at (theta, alpha, lambda)={where}\n")
        return 1
    return 0


def _add_state_flags(parser, theta=True):
    parser.add_argument("--alpha", type=float, default=0.4)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.8)
    if theta:
        parser.add_argument("--theta", type=float, default=math.pi / 4)
    parser.add_argument("--kT", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfeedback",
        description="Thermodynamics of coherent and measurement-based qubit feedback")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single protocol run, JSON report")
    _add_state_flags(p_run)
    p_run.add_argument("--axis", choices=("x", "z"), default="x")
    p_run.add_argument("--mode", choices=("coherent", "explicit"), default="explicit")
    p_run.add_argument("--out", default=None)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep", help="theta sweep of efficiencies, CSV")
    _add_state_flags(p_sweep, theta=False)
    p_sweep.add_argument("--start", type=float, default=0.01)
    p_sweep.add_argument("--stop", type=float, default=math.pi / 2)
    p_sweep.add_argument("--steps", type=int, default=200)
    p_sweep.add_argument("--preset", choices=("fig3",), default=None)
    p_sweep.add_argument("--out", default=None)
    p_sweep.set_defaults(func=cmd_sweep)

    p_traj = sub.add_parser("trajectory", help="mutual-information trace, CSV")
    _add_state_flags(p_traj)
    p_traj.add_argument("--mode", choices=("coherent", "explicit"), default="coherent")
    p_traj.add_argument("--samples", type=int, default=200)
    p_traj.add_argument("--preset", choices=("fig4",), default=None)
    p_traj.add_argument("--out", default=None)
    p_traj.set_defaults(func=cmd_trajectory)

    p_val = sub.add_parser("validate", help="engine vs closed-form cross-check")
    p_val.add_argument("--thetas", type=int, default=40)
    p_val.add_argument("--alphas", type=int, default=5)
    p_val.add_argument("--lambdas", type=int, default=5)
    p_val.add_argument("--out", default=None)
    p_val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
