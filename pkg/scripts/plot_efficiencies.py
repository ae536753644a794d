#!/usr/bin/env python3
"""Plot the three feedback efficiencies versus measurement strength.

Reads a sweep CSV (as produced by `qfeedback sweep --preset fig3`); with
no argument the sweep is generated in-process.
"""

import argparse
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def load_rows(path):
    if path is not None:
        data = np.genfromtxt(path, delimiter=",", names=True)
        return data["theta"], data["eps_x_mb"], data["eps_x_coh"], data["eps_z"]
    from qfeedback.cli import sweep_rows
    rows = sweep_rows(0.4, 0.8, np.linspace(0.01, math.pi / 2, 200))
    cols = list(zip(*rows))
    to_arr = lambda c: np.array([math.nan if v is None else v for v in c])
    return np.array(cols[0]), to_arr(cols[1]), to_arr(cols[2]), to_arr(cols[3])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv", nargs="?", default=None, help="sweep CSV (optional)")
    parser.add_argument("--out", default="efficiencies.png")
    args = parser.parse_args()

    theta, eps_mb, eps_coh, eps_z = load_rows(args.csv)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(theta, eps_coh, "k-", label=r"$\varepsilon_x^{\rm coh}$")
    ax.plot(theta, eps_mb, "k--", label=r"$\varepsilon_x^{\rm mb}$")
    ax.plot(theta, eps_z, color="grey", label=r"$\varepsilon_z$")
    ax.set_xlabel(r"measurement strength $\theta$")
    ax.set_ylabel("efficiency")
    ax.set_xlim(0, math.pi / 2)
    ax.set_ylim(-0.6, 1.05)
    ax.axhline(0, color="lightgrey", lw=0.5)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
