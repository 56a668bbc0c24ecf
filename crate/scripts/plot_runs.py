#!/usr/bin/env python3
"""Bar charts of the per-run histograms in a `bnq search` JSON report."""

import json
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main():
    if len(sys.argv) not in (2, 3):
        sys.exit("usage: plot_runs.py REPORT.json [OUT.png]")
    with open(sys.argv[1]) as f:
        report = json.load(f)
    out = sys.argv[2] if len(sys.argv) == 3 else "runs.png"

    runs = report["runs"]
    fig, axes = plt.subplots(len(runs), 1, figsize=(8, 2.6 * len(runs)), squeeze=False)
    for ax, run in zip(axes[:, 0], runs):
        hist = run["histogram"]
        labels = sorted(hist["counts"])
        probs = [hist["counts"][k] / hist["shots"] for k in labels]
        ax.bar(labels, probs, color="tab:blue")
        plan = run["plan"]
        ax.set_title(f"run {run['run']}: M={plan['marked']}, J={plan['iterations']}, "
                     f"outcome {run['outcome']} ({run['verdict']['status']})")
        ax.set_ylabel("probability")
        ax.set_ylim(0, 1.05)
        ax.tick_params(axis="x", rotation=90)
    fig.tight_layout()
    fig.savefig(out, dpi=120)


if __name__ == "__main__":
    main()
