"""Selftest report: a tab-separated table plus two PNG figures.

matplotlib is imported lazily with the Agg backend so the rest of the
package never pays for it.
"""

from __future__ import annotations

import csv
from pathlib import Path

from .acceptance import CriterionResult

TSV_NAME = "acceptance.tsv"
RUNTIME_PNG = "acceptance.png"
SIZE_PNG = "size_linearity.png"


def write_tsv(results: list[CriterionResult], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, delimiter="\t", lineterminator="\n")
        out.writerow(["criterion", "title", "status", "seconds", "limit", "detail"])
        for r in results:
            out.writerow([
                r.number, r.title, "PASS" if r.passed else "FAIL",
                f"{r.seconds:.3f}", f"{r.limit:g}", r.detail,
            ])


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_runtimes(results: list[CriterionResult], path: Path) -> None:
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(7, 3.6))
    labels = [str(r.number) for r in results]
    # share of the time budget used; log scale since budgets span 5 s to 300 s
    used = [max(r.seconds / r.limit, 1e-5) for r in results]
    colors = ["#3b7d3b" if r.passed else "#b03a2e" for r in results]
    ax.bar(labels, used, color=colors)
    ax.axhline(1.0, color="black", lw=0.8, ls="--")
    ax.set_yscale("log")
    ax.set_xlabel("criterion")
    ax.set_ylabel("runtime / budget")
    ax.set_title("acceptance runtimes (red = failed)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_size_linearity(points, path: Path) -> None:
    """``points`` are ``(n, m, |V|, k)`` tuples from the size check."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.5, 4))
    if points:
        x = [n + m for n, m, _, _ in points]
        ax.scatter(x, [v for _, _, v, _ in points], s=14, label="|V|")
        ax.scatter(x, [k for _, _, _, k in points], s=14, marker="x", label="k")
        hi = max(x)
        ax.plot([0, hi], [48, 42 * hi + 48], color="gray", lw=0.8, label="42(n+m)+48")
        ax.legend(frameon=False)
    ax.set_xlabel("n + m (regularized)")
    ax.set_ylabel("count")
    ax.set_title("instance size")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(results: list[CriterionResult], out_dir) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / TSV_NAME, out / RUNTIME_PNG]
    write_tsv(results, written[0])
    plot_runtimes(results, written[1])
    size = next((r for r in results if r.number == 9), None)
    if size is not None:
        written.append(out / SIZE_PNG)
        plot_size_linearity(size.data.get("points", []), written[-1])
    return written
