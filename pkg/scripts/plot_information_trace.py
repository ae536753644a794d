#!/usr/bin/env python3
"""Plot mutual information versus angle-time for the x- and z-protocols.

Reads a trajectory CSV (as produced by `qfeedback trajectory --preset
fig4`); with no argument the trace is generated in-process.
"""

import argparse
import csv
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load_rows(path):
    if path is None:
        from qfeedback.cli import trajectory_rows
        return trajectory_rows(0.4, 0.8, math.pi / 4, "coherent")
    rows = []
    with open(path) as fh:
        for record in csv.DictReader(fh):
            i_x = float(record["I_x"]) if record["I_x"] else None
            rows.append((float(record["t"]), record["stage"], i_x, float(record["I_z"])))
    return rows


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("csv", nargs="?", default=None, help="trajectory CSV (optional)")
    parser.add_argument("--out", default="information_trace.png")
    args = parser.parse_args()

    rows = load_rows(args.csv)
    t_x = [t for t, _, i_x, _ in rows if i_x is not None]
    i_x = [i_x for _, _, i_x, _ in rows if i_x is not None]
    t_z = [t for t, _, _, _ in rows]
    i_z = [i for _, _, _, i in rows]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(t_x, i_x, "k-", label="x-protocol")
    ax.plot(t_z, i_z, color="grey", label="z-protocol")
    ax.axvline(math.pi / 4, color="lightgrey", lw=0.8, ls=":")
    ax.set_xlabel("angle-time (measurement then feedback rotation)")
    ax.set_ylabel("mutual information (nats)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
