"""Matplotlib figures for ray traces and the stability experiment."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .angles import format_angle  # noqa: E402
from .dynamics.cubic import RayTrace  # noqa: E402
from .dynamics.petals import StabilityReport  # noqa: E402


def plot_rays(traces: list[RayTrace], path, title: str | None = None, critical=()) -> None:
    """Polylines of traced rays, landing estimates marked."""
    fig, ax = plt.subplots(figsize=(6, 6))
    for tr in traces:
        xs = [z.real for z in tr.points]
        ys = [z.imag for z in tr.points]
        ax.plot(xs, ys, lw=1, label=f"theta = {format_angle(tr.theta)} ({tr.status})")
        if tr.landing_estimate is not None:
            ax.plot([tr.landing_estimate.real], [tr.landing_estimate.imag], "k.", ms=6)
    for c in critical:
        ax.plot([c.real], [c.imag], "rx", ms=6)
    ax.set_aspect("equal")
    ax.set_xlabel("Re z")
    ax.set_ylabel("Im z")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_stability(report: StabilityReport, path) -> None:
    """Perturbation directions around b*, coloured by whether the ray lands at 0."""
    colors = {"lands": "tab:green", "not certified": "tab:red", "untested": "tab:gray"}
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4.5))
    b0 = report.b_star
    ax1.plot([b0.real], [b0.imag], "k*", ms=10, label="b*")
    for d in report.directions:
        b = d["b"]
        ax1.plot([b.real], [b.imag], "o", color=colors.get(d["result"], "tab:blue"))
    ax1.set_aspect("equal")
    ax1.set_title(f"b-plane, delta = {report.delta:g}")
    ax1.set_xlabel("Re b")
    ax1.set_ylabel("Im b")
    phis = [d["phi"] for d in report.directions]
    closest = [d.get("closest", math.nan) for d in report.directions]
    ax2.semilogy(phis, closest, "o-")
    ax2.set_xlabel("phi")
    ax2.set_ylabel("|last ray sample|")
    ax2.set_title(f"ray {format_angle(report.theta)}: {report.status}")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
