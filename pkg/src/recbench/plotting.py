"""Figure rendering for sweep reports.

Uses the Agg canvas directly so rendering works headless and never touches
global pyplot state.
"""

from __future__ import annotations

import io
from collections import defaultdict
from typing import Iterable

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .evaluation import MetricsReport

__all__ = ["render_sweep_figure"]


def render_sweep_figure(reports: Iterable[MetricsReport], fmt: str = "png") -> bytes:
    """Two-panel precision/recall view of a sweep, one line per algorithm
    and convention, returned as encoded image bytes."""
    series: dict[tuple[str, str], list[MetricsReport]] = defaultdict(list)
    for r in reports:
        series[(r.algorithm, r.convention)].append(r)

    fig = Figure(figsize=(9.0, 4.0))
    FigureCanvasAgg(fig)
    ax_p, ax_r = fig.subplots(1, 2, sharex=True, sharey=True)
    for (algorithm, convention), rows in sorted(series.items()):
        rows = sorted(rows, key=lambda r: r.lower_bound)
        xs = [r.lower_bound for r in rows]
        label = f"{algorithm} ({convention})"
        ax_p.plot(xs, [r.mean_precision for r in rows], marker="o", label=label)
        ax_r.plot(xs, [r.mean_recall for r in rows], marker="o", label=label)

    ax_p.set_title("mean precision")
    ax_r.set_title("mean recall")
    for ax in (ax_p, ax_r):
        ax.set_xlabel("preference lower bound")
        ax.set_ylim(-0.05, 1.05)
        ax.grid(True, alpha=0.3)
    if series:
        ax_p.legend(fontsize="small")
    fig.tight_layout()

    buf = io.BytesIO()
    fig.savefig(buf, format=fmt)
    return buf.getvalue()
