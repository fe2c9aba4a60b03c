"""Hand-rolled SVG charts for sweep outputs.

Two figures summarize a sweep: per-node mean in-degree with a one-std
shaded band across the mass grid, and the component-membership raster
of the reference case.  Both are pure functions of data already stored
in stats.csv / scc.json, so they can be re-rendered offline from the
artifacts alone, and no plotting dependency is involved.
"""

from __future__ import annotations

import numpy as np

__all__ = ["chart_degree_bands", "chart_scc_trace"]

# tab10 categorical palette; node 4 (index 3) lands on red, which suits
# the reference experiment's localization site
_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)

_FONT = 'font-family="Helvetica,Arial,sans-serif"'


def _svg_open(width: int, height: int) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _tick_label(v: float) -> str:
    return f"{v:.3g}"


class _Axes:
    """Linear data-to-pixel mapping for one plot area."""

    def __init__(self, x0, y0, width, height, xlim, ylim):
        self.x0, self.y0 = x0, y0
        self.w, self.h = width, height
        self.xmin, self.xmax = xlim
        self.ymin, self.ymax = ylim

    def x(self, v: float) -> float:
        span = self.xmax - self.xmin
        frac = 0.5 if span == 0 else (v - self.xmin) / span
        return self.x0 + frac * self.w

    def y(self, v: float) -> float:
        span = self.ymax - self.ymin
        frac = 0.5 if span == 0 else (v - self.ymin) / span
        return self.y0 + self.h - frac * self.h

    def frame(self) -> str:
        return (
            f'<rect x="{self.x0}" y="{self.y0}" width="{self.w}" height="{self.h}" '
            'fill="none" stroke="#333333" stroke-width="1"/>'
        )


def _x_ticks(ax: _Axes, values, parts) -> list[str]:
    ticks = np.linspace(min(values), max(values), 5)
    out = []
    for t in ticks:
        px = _fmt(ax.x(t))
        y1 = ax.y0 + ax.h
        out.append(
            f'<line x1="{px}" y1="{y1}" x2="{px}" y2="{y1 + 5}" stroke="#333333"/>'
        )
        out.append(
            f'<text x="{px}" y="{y1 + 20}" text-anchor="middle" font-size="12" {_FONT}>'
            f"{_tick_label(t)}</text>"
        )
    out.append(
        f'<text x="{_fmt(ax.x0 + ax.w / 2)}" y="{ax.y0 + ax.h + 42}" text-anchor="middle" '
        f'font-size="13" {_FONT}>{parts}</text>'
    )
    return out


def chart_degree_bands(
    values, means, stds, highlight: int | None = None, title: str | None = None
) -> str:
    """Mean in-degree per node vs sweep value, one-std shaded bands.

    ``means``/``stds`` have shape (n_values, n_nodes); ``highlight`` is
    a 1-based node drawn on top with a heavier stroke.
    """
    values = np.asarray(values, dtype=float)
    means = np.asarray(means, dtype=float)
    stds = np.asarray(stds, dtype=float)
    if means.shape != stds.shape or means.shape[0] != values.shape[0]:
        raise ValueError("values, means and stds must align")
    n_nodes = means.shape[1]

    width, height = 880, 560
    ax = _Axes(70, 50, width - 70 - 160, height - 50 - 70, (values.min(), values.max()),
               (0.0, max(1.0, float(np.ceil((means + stds).max())))))
    svg = _svg_open(width, height)
    svg.append(ax.frame())

    y_step = max(1, int(np.ceil(ax.ymax / 6)))
    for yt in np.arange(0, ax.ymax + 0.5 * y_step, y_step):
        py = _fmt(ax.y(yt))
        svg.append(
            f'<line x1="{ax.x0}" y1="{py}" x2="{ax.x0 + ax.w}" y2="{py}" '
            'stroke="#dddddd" stroke-width="0.7"/>'
        )
        svg.append(
            f'<text x="{ax.x0 - 8}" y="{py}" text-anchor="end" dominant-baseline="middle" '
            f'font-size="12" {_FONT}>{int(yt)}</text>'
        )
    svg.extend(_x_ticks(ax, values, "m4"))
    svg.append(
        f'<text x="20" y="{ax.y0 + ax.h / 2}" text-anchor="middle" font-size="13" {_FONT} '
        f'transform="rotate(-90 20 {ax.y0 + ax.h / 2})">mean in-degree</text>'
    )

    order = [n for n in range(n_nodes) if n + 1 != highlight]
    if highlight is not None and 1 <= highlight <= n_nodes:
        order.append(highlight - 1)
    for node in order:
        color = _PALETTE[node % len(_PALETTE)]
        upper = [(ax.x(v), ax.y(means[k, node] + stds[k, node])) for k, v in enumerate(values)]
        lower = [(ax.x(v), ax.y(means[k, node] - stds[k, node])) for k, v in enumerate(values)]
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in upper + lower[::-1])
        svg.append(f'<polygon points="{pts}" fill="{color}" fill-opacity="0.12" stroke="none"/>')
    for node in order:
        color = _PALETTE[node % len(_PALETTE)]
        heavy = highlight is not None and node + 1 == highlight
        pts = " ".join(
            f"{_fmt(ax.x(v))},{_fmt(ax.y(means[k, node]))}" for k, v in enumerate(values)
        )
        svg.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" '
            f'stroke-width="{2.6 if heavy else 1.4}"/>'
        )

    lx = ax.x0 + ax.w + 18
    for node in range(n_nodes):
        color = _PALETTE[node % len(_PALETTE)]
        ly = ax.y0 + 12 + node * 20
        heavy = highlight is not None and node + 1 == highlight
        svg.append(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 24}" y2="{ly}" stroke="{color}" '
            f'stroke-width="{2.6 if heavy else 1.4}"/>'
        )
        weight = ' font-weight="bold"' if heavy else ""
        svg.append(
            f'<text x="{lx + 30}" y="{ly + 4}" font-size="12" {_FONT}{weight}>'
            f"node {node + 1}</text>"
        )

    svg.append(
        f'<text x="{width / 2}" y="28" text-anchor="middle" font-size="15" {_FONT}>'
        f'{title or "Node in-degree across the mass sweep (mean and one std band)"}</text>'
    )
    svg.append("</svg>")
    return "\n".join(svg) + "\n"


def chart_scc_trace(values, table, title: str | None = None) -> str:
    """Component-membership raster: one column per sweep value, one row
    per node, cells colored by component index (white = failed cell)."""
    values = np.asarray(values, dtype=float)
    table = np.asarray(table, dtype=int)
    if table.ndim != 2 or table.shape[0] != values.shape[0]:
        raise ValueError("table must be (n_values, n_nodes)")
    n_values, n_nodes = table.shape

    width, height = 880, 420
    ax = _Axes(70, 50, width - 70 - 40, height - 50 - 70, (0, n_values), (0, n_nodes))
    svg = _svg_open(width, height)

    cell_w = ax.w / n_values
    cell_h = ax.h / n_nodes
    for iv in range(n_values):
        for node in range(n_nodes):
            ci = table[iv, node]
            color = "#ffffff" if ci < 0 else _PALETTE[ci % len(_PALETTE)]
            px = _fmt(ax.x0 + iv * cell_w)
            py = _fmt(ax.y0 + node * cell_h)
            svg.append(
                f'<rect x="{px}" y="{py}" width="{_fmt(cell_w + 0.5)}" '
                f'height="{_fmt(cell_h)}" fill="{color}"/>'
            )
    svg.append(ax.frame())

    for node in range(n_nodes):
        py = _fmt(ax.y0 + (node + 0.5) * cell_h)
        svg.append(
            f'<text x="{ax.x0 - 8}" y="{py}" text-anchor="end" dominant-baseline="middle" '
            f'font-size="12" {_FONT}>{node + 1}</text>'
        )
    svg.append(
        f'<text x="20" y="{ax.y0 + ax.h / 2}" text-anchor="middle" font-size="13" {_FONT} '
        f'transform="rotate(-90 20 {ax.y0 + ax.h / 2})">node</text>'
    )
    tick_idx = np.linspace(0, n_values - 1, 5).round().astype(int)
    for k in tick_idx:
        px = _fmt(ax.x0 + (k + 0.5) * cell_w)
        y1 = ax.y0 + ax.h
        svg.append(f'<line x1="{px}" y1="{y1}" x2="{px}" y2="{y1 + 5}" stroke="#333333"/>')
        svg.append(
            f'<text x="{px}" y="{y1 + 20}" text-anchor="middle" font-size="12" {_FONT}>'
            f"{_tick_label(values[k])}</text>"
        )
    svg.append(
        f'<text x="{_fmt(ax.x0 + ax.w / 2)}" y="{ax.y0 + ax.h + 42}" text-anchor="middle" '
        f'font-size="13" {_FONT}>m4</text>'
    )
    svg.append(
        f'<text x="{width / 2}" y="28" text-anchor="middle" font-size="15" {_FONT}>'
        f'{title or "Strongly connected components of the reference case"}</text>'
    )
    svg.append("</svg>")
    return "\n".join(svg) + "\n"
