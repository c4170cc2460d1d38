#!/usr/bin/env python3
"""Plot spherical-cap CDFs and the near-pole density from cluster output.

Usage: plot_cluster.py <cluster_cdf.csv> [cluster_points.csv] [output.png]
"""
import collections
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    cdf_path = sys.argv[1]
    points_path = sys.argv[2] if len(sys.argv) > 2 else None
    out = sys.argv[3] if len(sys.argv) > 3 else "cluster.png"

    acc = collections.defaultdict(lambda: [0.0, 0])
    for r in csv.DictReader(open(cdf_path)):
        key = (int(r["n_env"]), float(r["radius"]))
        acc[key][0] += float(r["cap_mass_1"])
        acc[key][1] += 1

    by_n = collections.defaultdict(list)
    for (n, radius), (total, count) in sorted(acc.items()):
        by_n[n].append((radius, total / count))

    ncols = 2 if points_path else 1
    fig, axes = plt.subplots(1, ncols, figsize=(4.5 * ncols, 3.8))
    ax = axes[0] if points_path else axes
    for n, series in sorted(by_n.items()):
        series.sort()
        ax.plot([r for r, _ in series], [m for _, m in series], label=f"N={n}")
    ax.set_xlabel("cap radius (fractions of pi)")
    ax.set_ylabel("seed-averaged cap mass around |1>")
    ax.legend()
    ax.set_title("cap CDFs sharpen with N")

    if points_path:
        biggest = max(by_n)
        xs, ys, ws = [], [], []
        for r in csv.DictReader(open(points_path)):
            if int(r["n_env"]) != biggest:
                continue
            xs.append(float(r["b_x"]))
            ys.append(float(r["b_y"]))
            ws.append(float(r["weight"]))
        h = axes[1].hexbin(xs, ys, C=ws, reduce_C_function=sum, gridsize=40,
                           extent=(-0.1, 0.1, -0.1, 0.1), bins="log")
        fig.colorbar(h, ax=axes[1], label="probability mass")
        axes[1].set_xlabel("b_x")
        axes[1].set_ylabel("b_y")
        axes[1].set_title(f"mass near the |1> pole, N={biggest}")

    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)


if __name__ == "__main__":
    main()
