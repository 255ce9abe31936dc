#!/usr/bin/env python3
"""Plot ruin probability against surplus from `ruinlab table` output."""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", default="ruin_table.png")
    args = ap.parse_args()

    df = pd.read_csv(args.csv)
    dists = list(dict.fromkeys(df["dist"]))
    fig, axes = plt.subplots(1, len(dists), figsize=(4 * len(dists), 3.5), squeeze=False)
    for ax, dist in zip(axes[0], dists):
        d = df[df["dist"] == dist].sort_values("x")
        ax.errorbar(d["x"], d["psi_no_invest"], yerr=2 * d["se_no_invest"], fmt="-o", label="no investment")
        ax.errorbar(d["x"], d["psi_invest"], yerr=2 * d["se_invest"], fmt="--s", label="Merton fraction")
        ax.set_title(dist)
        ax.set_xlabel("initial surplus x")
        ax.set_ylabel("ruin probability")
    axes[0][0].legend()
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)


if __name__ == "__main__":
    main()
