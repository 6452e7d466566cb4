"""Static report output: a time-space diagram figure plus delimited event data.

One vertical lane per host (lexicographic order), events layered top-down
by longest-path depth from the minimal events, communication edges drawn
as arrows.  Written alongside a TSV of the events so reports can be
consumed by both humans and spreadsheets.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .graph import CausalGraph

LANE_COLOR = "#9aa5b1"
EVENT_COLOR = "#1f6feb"
HIGHLIGHT_COLOR = "#d62728"
PROGRAM_EDGE_COLOR = "#c3cbd5"
COMM_EDGE_COLOR = "#444444"


def write_events_tsv(g: CausalGraph, path: Path) -> None:
    columns = ["id", "host", "clock", "action", "sim_time", "description"]
    lines = ["\t".join(columns)]
    for e in sorted(g.events, key=lambda e: e.id):
        sim_time = "" if e.sim_time is None else str(e.sim_time)
        lines.append(
            "\t".join([str(e.id), e.host, e.clock.to_text(), e.action, sim_time, e.description])
        )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_diagram(g: CausalGraph, path: Path, highlight: set[int] | None = None) -> None:
    """Render the time-space diagram to an image file."""
    highlight = highlight or set()
    hosts = list(g.hosts)
    lane = {h: i for i, h in enumerate(hosts)}
    order = g.layer_order()
    row = {eid: i for i, eid in enumerate(order)}

    fig_height = max(3.0, 0.55 * len(order) + 1.2)
    fig_width = max(4.0, 2.2 * len(hosts) + 1.0)
    fig, ax = plt.subplots(figsize=(fig_width, fig_height))

    n_rows = max(len(order), 1)
    for host, x in lane.items():
        ax.plot([x, x], [0.5, -n_rows + 0.5], color=LANE_COLOR, linewidth=1.2, zorder=1)
        ax.text(x, 1.1, host, ha="center", va="bottom", fontsize=11, fontweight="bold")

    xy = {}
    for e in g.events:
        xy[e.id] = (lane[e.host], -row[e.id])

    for a, b in g.covering_edges:
        (xa, ya), (xb, yb) = xy[a], xy[b]
        if (a, b) in set(g.comm_edges):
            ax.annotate(
                "",
                xy=(xb, yb),
                xytext=(xa, ya),
                arrowprops=dict(arrowstyle="-|>", color=COMM_EDGE_COLOR, lw=1.3, shrinkA=8, shrinkB=8),
                zorder=2,
            )
        else:
            ax.plot([xa, xb], [ya, yb], color=PROGRAM_EDGE_COLOR, linewidth=2.0, zorder=1.5)

    for e in g.events:
        x, y = xy[e.id]
        color = HIGHLIGHT_COLOR if e.id in highlight else EVENT_COLOR
        ax.scatter([x], [y], s=110, color=color, zorder=3, edgecolors="white", linewidths=1.0)
        ax.annotate(
            f"{e.action} {e.clock.to_text()}",
            xy=(x, y),
            xytext=(10, 0),
            textcoords="offset points",
            fontsize=8,
            va="center",
        )

    ax.set_xlim(-0.7, len(hosts) - 0.3 + 1.1)
    ax.set_ylim(-n_rows + 0.2, 1.6)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_report(
    g: CausalGraph,
    out_dir: Path,
    image_format: str = "png",
    highlight: set[int] | None = None,
) -> list[Path]:
    """Write events.tsv and diagram.<format> into out_dir; returns the paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    tsv_path = out_dir / "events.tsv"
    image_path = out_dir / f"diagram.{image_format}"
    write_events_tsv(g, tsv_path)
    render_diagram(g, image_path, highlight=highlight)
    return [tsv_path, image_path]
