"""Optional figure rendering for sweep reports.

The CSV stays the canonical product; these plots are a quick visual check
rendered next to it when the sweep is asked for figures.  Two files per
sweep: exact value against bound value, and ratio against p, both grouped
by bound id.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def _numeric(value) -> float | None:
    if value is None or value == "" or value == "undefined":
        return None
    if isinstance(value, (int, float)):
        return float(value)
    try:
        if "/" in str(value):
            num, den = str(value).split("/", 1)
            return float(num) / float(den)
        return float(value)
    except ValueError:
        return None


def render_sweep_figures(rows, csv_path: str | Path) -> list[Path]:
    """Render ratio-vs-p and exact-vs-bound figures beside the CSV file."""
    csv_path = Path(csv_path)
    produced: list[Path] = []

    by_bound: dict[str, list] = {}
    for r in rows:
        if r.bound_id:
            by_bound.setdefault(r.bound_id, []).append(r)

    ratio_path = csv_path.with_name(csv_path.stem + "_ratio.png")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    plotted = False
    for bound_id, group in sorted(by_bound.items()):
        pts = [(g.p, _numeric(g.ratio)) for g in group]
        pts = [(p, v) for p, v in pts if v is not None]
        if pts:
            pts.sort()
            ax.plot([p for p, _ in pts], [v for _, v in pts],
                    marker="o", linestyle="-", label=bound_id)
            plotted = True
    if plotted:
        ax.set_xlabel("p")
        ax.set_ylabel("ratio")
        ax.set_yscale("log")
        ax.legend(fontsize=8)
        ax.set_title(f"ratios: {csv_path.stem}")
        fig.tight_layout()
        fig.savefig(ratio_path, dpi=120)
        produced.append(ratio_path)
    plt.close(fig)

    scatter_path = csv_path.with_name(csv_path.stem + "_exact_vs_bound.png")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    plotted = False
    for bound_id, group in sorted(by_bound.items()):
        pairs = [(_numeric(g.exact_value), _numeric(g.bound_value)) for g in group]
        pairs = [(e, b) for e, b in pairs if e is not None and b is not None and e > 0 and b > 0]
        if pairs:
            ax.scatter([e for e, _ in pairs], [b for _, b in pairs], s=18, label=bound_id)
            plotted = True
    if plotted:
        ax.set_xlabel("exact value")
        ax.set_ylabel("bound value")
        ax.set_xscale("log")
        ax.set_yscale("log")
        lo = min(min(ax.get_xlim()), min(ax.get_ylim()))
        hi = max(max(ax.get_xlim()), max(ax.get_ylim()))
        ax.plot([lo, hi], [lo, hi], color="gray", linewidth=0.8, linestyle="--")
        ax.legend(fontsize=8)
        ax.set_title(f"exact vs bound: {csv_path.stem}")
        fig.tight_layout()
        fig.savefig(scatter_path, dpi=120)
        produced.append(scatter_path)
    plt.close(fig)
    return produced
