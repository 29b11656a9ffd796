"""Figure rendering for the CLI report paths (Agg backend, file output)."""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .decision import Instance  # noqa: E402
from .geometry import Point  # noqa: E402


def plot_instance(
    instance: Instance,
    path: str,
    witness: Optional[Sequence[Point]] = None,
    delta: Optional[float] = None,
    title: str = "",
) -> None:
    """Draw the fixed points, the segments, and (optionally) a witness
    placement with the threshold-graph edges it induces at delta."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for seg in instance.segments:
        a, b = seg.endpoints()
        ax.plot([a.x, b.x], [a.y, b.y], color="tab:orange", lw=2, zorder=2)
    xs = [p.x for p in instance.points]
    ys = [p.y for p in instance.points]
    ax.scatter(xs, ys, s=18, color="tab:blue", zorder=3, label="fixed points")
    all_pts = list(instance.points)
    if witness:
        wx = [p.x for p in witness]
        wy = [p.y for p in witness]
        ax.scatter(wx, wy, s=40, marker="x", color="tab:red", zorder=4, label="witness")
        all_pts += list(witness)
    if delta is not None and len(all_pts) > 1:
        slack = delta * (1.0 + 1e-9)
        for i in range(len(all_pts)):
            for j in range(i + 1, len(all_pts)):
                if all_pts[i].dist(all_pts[j]) <= slack:
                    ax.plot(
                        [all_pts[i].x, all_pts[j].x],
                        [all_pts[i].y, all_pts[j].y],
                        color="0.7",
                        lw=0.8,
                        zorder=1,
                    )
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    if witness or instance.points:
        ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_bench(
    rows: Sequence[Tuple[int, int, float, float]], path: str
) -> None:
    """Timing trend figure for bench rows (n, k, decide_ms, solve_ms)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ks = sorted({r[1] for r in rows})
    for k in ks:
        sub = sorted(r for r in rows if r[1] == k)
        ns = [r[0] for r in sub]
        ax.plot(ns, [r[2] for r in sub], marker="o", label=f"decide, k={k}")
        ax.plot(ns, [r[3] for r in sub], marker="s", ls="--", label=f"solve, k={k}")
    ax.set_xlabel("n")
    ax.set_ylabel("time [ms]")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
