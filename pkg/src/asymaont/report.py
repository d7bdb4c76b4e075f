"""Tables and figures for bound and search reports."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, List, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import BoundResult, KnownRange, theorem_upper_bound


def _fmt(v) -> str:
    return "inf" if v is None else str(v)


def rows_to_markdown(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    for r in rows:
        lines.append("| " + " | ".join(_fmt(c) for c in r) + " |")
    return "\n".join(lines) + "\n"


def rows_to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(c) for c in r])
    return buf.getvalue()


BOUND_HEADER = ("t_i", "t_o", "q", "theorem_bound", "upper", "source")
RANGE_HEADER = ("t_o", "q", "lower", "lower_source", "upper", "upper_source", "exact")


def bound_rows(results: Sequence[BoundResult]) -> List[tuple]:
    """Closed-form bound next to the best known one (which may come from search)."""
    return [(*r.formula_inputs, theorem_upper_bound(*r.formula_inputs).value, r.value, r.source) for r in results]


def range_rows(ranges: Sequence[KnownRange]) -> List[tuple]:
    return [(r.t_o, r.q, r.lower, r.lower_source, r.upper, r.upper_source, r.exact) for r in ranges]


def plot_bounds(results: Sequence[BoundResult], path: Union[str, Path]) -> Path:
    """Upper bound on s against t_o, one line per (t_i, q)."""
    path = Path(path)
    series = {}
    for r in results:
        if r.value is None:
            continue
        t_i, t_o, q = r.formula_inputs
        series.setdefault((t_i, q), []).append((t_o, r.value))
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for (t_i, q), pts in sorted(series.items()):
        pts.sort()
        ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=f"t_i={t_i}, q={q}")
    ax.set_xlabel("t_o")
    ax.set_ylabel("upper bound on S(t_i, t_o, q)")
    if series:
        ax.legend(fontsize=8, frameon=False)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_ranges(ranges: Sequence[KnownRange], path: Union[str, Path]) -> Path:
    """Known interval [lower, upper] for S(2, t_o, q), one panel per q."""
    path = Path(path)
    qs = sorted({r.q for r in ranges})
    fig, axes = plt.subplots(1, len(qs), figsize=(2.6 * len(qs), 3.4), sharey=True, squeeze=False)
    for ax, q in zip(axes[0], qs):
        rs = sorted((r for r in ranges if r.q == q), key=lambda r: r.t_o)
        x = [r.t_o for r in rs]
        ax.vlines(x, [r.lower for r in rs], [r.upper for r in rs], color="0.6", lw=3)
        ax.scatter(x, [r.lower for r in rs], marker="^", color="C0", zorder=3, label="lower")
        ax.scatter(x, [r.upper for r in rs], marker="v", color="C3", zorder=3, label="upper")
        exact = [r for r in rs if r.exact]
        ax.scatter([r.t_o for r in exact], [r.lower for r in exact], s=80, facecolors="none",
                   edgecolors="k", zorder=4, label="exact")
        ax.set_title(f"q = {q}")
        ax.set_xlabel("t_o")
        ax.set_xticks(x)
    axes[0][0].set_ylabel("S(2, t_o, q)")
    axes[0][-1].legend(fontsize=7, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_frontier(frontier: dict, path: Union[str, Path], title: str = "") -> Path:
    """Nodes explored per s during an S(t_i, t_o, q) scan."""
    path = Path(path)
    recs = frontier.get("per_s", [])
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    colors = {"found": "C2", "exhausted": "C3", "budget_exceeded": "0.5"}
    ax.bar([r["s"] for r in recs], [max(r["nodes"], 1) for r in recs],
           color=[colors.get(r["status"], "0.5") for r in recs])
    ax.set_yscale("log")
    ax.set_xlabel("s")
    ax.set_ylabel("nodes explored")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
