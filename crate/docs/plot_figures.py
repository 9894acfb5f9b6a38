"""Plot the CSV files written by `qgeo figure`.

Usage: python docs/plot_figures.py <dir-with-csvs> [<out-dir>]
Requires matplotlib.
"""

import csv
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def load(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, data = rows[0], rows[1:]
    cols = {h: [float(r[i]) for r in data] for i, h in enumerate(header)}
    return header, cols


def plot(path, out_dir):
    header, cols = load(path)
    x = header[0]
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name in header[1:]:
        ax.plot(cols[x], cols[name], label=name)
    ax.set_xlabel(x)
    ax.legend(fontsize="small")
    ax.set_title(path.stem)
    fig.tight_layout()
    target = out_dir / f"{path.stem}.png"
    fig.savefig(target, dpi=150)
    plt.close(fig)
    print(target)


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    src = Path(sys.argv[1])
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else src
    out.mkdir(parents=True, exist_ok=True)
    for path in sorted(src.glob("*.csv")):
        plot(path, out)


if __name__ == "__main__":
    main()
