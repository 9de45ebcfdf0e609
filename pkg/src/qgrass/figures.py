"""Delimited tables and plots for the report path.

matplotlib is imported lazily so the math-only paths never pay for it, and
the Agg backend keeps the tool headless.
"""
from __future__ import annotations

import csv


def write_table(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def dimension_figure(path: str, degrees: list[int], series: dict[str, list[int]]) -> None:
    """Plot graded dimensions per degree, one line per labelled level."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    for label, values in series.items():
        ax.plot(degrees, values, marker="o", label=label)
    ax.set_xlabel("degree")
    ax.set_ylabel("graded dimension")
    ax.set_xticks(degrees)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def relation_figure(path: str, degrees: list[int], counts: list[int], dims: list[int]) -> None:
    """Bar chart of relation counts next to surviving dimensions per degree."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = list(range(len(degrees)))
    width = 0.38
    ax.bar([x - width / 2 for x in xs], counts, width, label="relations")
    ax.bar([x + width / 2 for x in xs], dims, width, label="dimension")
    ax.set_xticks(xs)
    ax.set_xticklabels([str(d) for d in degrees])
    ax.set_xlabel("degree")
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
