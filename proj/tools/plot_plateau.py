#!/usr/bin/env python3
"""Plot the mutual-information plateau from a plateau.csv file.

Usage: plot_plateau.py <plateau.csv> [output.png]
"""
import csv
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main() -> None:
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    path = sys.argv[1]
    out = sys.argv[2] if len(sys.argv) > 2 else "plateau.png"

    rows = list(csv.DictReader(open(path)))
    if not rows:
        sys.exit("no rows in " + path)
    n = int(rows[0]["n_env"])
    fraction = [int(r["m"]) / n for r in rows]
    ratio = [float(r["ratio"]) for r in rows]
    discord = [float(r["discord_upper"]) for r in rows]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    ax1.plot(fraction, ratio, "o-")
    ax1.axhline(1.0, color="gray", lw=0.8, ls="--")
    ax1.axhline(2.0, color="gray", lw=0.8, ls=":")
    ax1.set_xlabel("m / N")
    ax1.set_ylabel("I(S:F) / H_S")
    ax1.set_title(f"information plateau, N={n}")

    ax2.semilogy(fraction, [max(d, 1e-16) for d in discord], "s-")
    ax2.set_xlabel("m / N")
    ax2.set_ylabel("discord upper bound")
    ax2.set_title("measured discord")

    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print("wrote", out)


if __name__ == "__main__":
    main()
