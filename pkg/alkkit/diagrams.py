# alkkit/diagrams.py
"""
SVG pictures of a movie frame: the polygon, both loops and the crossing markers.
"""
from __future__ import annotations
from fractions import Fraction
from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .movie import LinkMovie  # noqa: E402
from .surface import PLLoop  # noqa: E402
from .sweep import CrossingEvent  # noqa: E402
from .utils import logger  # noqa: E402

# fixed salt and no date keep the SVG bytes reproducible
matplotlib.rcParams["svg.hashsalt"] = "alk-kit"

_COLORS = ("tab:blue", "tab:red")


def _draw_loop(ax, loop: PLLoop, color: str, label: str):
    first = True
    for i in loop.drawn_segments():
        (x0, y0), (x1, y1) = loop.segment(i)
        ax.plot([float(x0), float(x1)], [float(y0), float(y1)], color=color, linewidth=1.5,
                label=label if first else None)
        ax.annotate("", xy=(float(x1), float(y1)), xytext=(float((x0 + x1) / 2), float((y0 + y1) / 2)),
                    arrowprops={"arrowstyle": "->", "color": color})
        first = False


def render_frame(movie: LinkMovie, events: Sequence[CrossingEvent], path: Union[str, Path],
                 t: Fraction | None = None) -> Path:
    t = movie.start.t if t is None else Fraction(t)
    l1, l2 = movie.frame_at(t)
    polygon = l1.base.polygon
    fig, ax = plt.subplots(figsize=(6, 6))
    xs = [float(v[0]) for v in polygon.vertices] + [float(polygon.vertices[0][0])]
    ys = [float(v[1]) for v in polygon.vertices] + [float(polygon.vertices[0][1])]
    ax.plot(xs, ys, color="black", linewidth=1)
    for k in range(polygon.size):
        (x0, y0), (x1, y1) = polygon.edge(k)
        ax.text(float((x0 + x1) / 2), float((y0 + y1) / 2), f"e{k}", fontsize=7, ha="center", va="center")
    _draw_loop(ax, l1.base, _COLORS[0], "l1")
    _draw_loop(ax, l2.base, _COLORS[1], "l2")
    for e in events:
        x, y = float(e.location[0]), float(e.location[1])
        ax.plot([x], [y], marker="o" if e.sign > 0 else "x", color="black", markersize=6)
        ax.annotate(f"{e.sign:+d}", (x, y), textcoords="offset points", xytext=(4, 4), fontsize=7)
    ax.set_aspect("equal", "box")
    ax.set_axis_off()
    ax.set_title(f"genus {movie.genus}, t = {t}")
    ax.legend(loc="upper right", fontsize=7)
    path = Path(path)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    logger.info("Diagram written to %s", path)
    return path
