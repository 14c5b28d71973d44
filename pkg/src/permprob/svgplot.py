"""Minimal self-contained SVG line charts.

Hand-rolled rather than delegated to a plotting library so the output is a
single dependency-free file, byte-identical for identical inputs, and easy
to diff.  The axes are fixed to the unit square because every curve plotted
here is a probability against a probability parameter.
"""

from __future__ import annotations

from dataclasses import dataclass

WIDTH = 640
HEIGHT = 440
MARGIN_LEFT = 62
MARGIN_RIGHT = 150
MARGIN_TOP = 46
MARGIN_BOTTOM = 54


@dataclass(frozen=True)
class Series:
    label: str
    points: tuple[tuple[float, float], ...]
    color: str
    dashed: bool = False


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def line_chart(
    series: list[Series],
    title: str,
    x_label: str = "r",
    y_label: str = "probability",
) -> str:
    """Render the series over the unit square as a standalone SVG document."""
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def to_x(v: float) -> float:
        return MARGIN_LEFT + v * plot_w

    def to_y(v: float) -> float:
        return MARGIN_TOP + (1.0 - v) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="24" font-family="sans-serif" '
        f'font-size="15" text-anchor="middle">{title}</text>',
    ]
    # gridlines and ticks at 0, 0.2, ..., 1.0 on both axes
    for i in range(6):
        v = i / 5
        x = to_x(v)
        y = to_y(v)
        out.append(
            f'<line x1="{_fmt(x)}" y1="{_fmt(to_y(0.0))}" x2="{_fmt(x)}" '
            f'y2="{_fmt(to_y(1.0))}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<line x1="{_fmt(to_x(0.0))}" y1="{_fmt(y)}" x2="{_fmt(to_x(1.0))}" '
            f'y2="{_fmt(y)}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(to_y(0.0) + 18)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="middle">{v:.1f}</text>'
        )
        out.append(
            f'<text x="{_fmt(to_x(0.0) - 8)}" y="{_fmt(y + 4)}" font-family="sans-serif" '
            f'font-size="11" text-anchor="end">{v:.1f}</text>'
        )
    # axes
    out.append(
        f'<rect x="{_fmt(to_x(0.0))}" y="{_fmt(to_y(1.0))}" width="{_fmt(plot_w)}" '
        f'height="{_fmt(plot_h)}" fill="none" stroke="black" stroke-width="1"/>'
    )
    out.append(
        f'<text x="{_fmt(MARGIN_LEFT + plot_w / 2)}" y="{_fmt(HEIGHT - 14)}" '
        f'font-family="sans-serif" font-size="13" text-anchor="middle">{x_label}</text>'
    )
    out.append(
        f'<text x="16" y="{_fmt(MARGIN_TOP + plot_h / 2)}" font-family="sans-serif" '
        f'font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {_fmt(MARGIN_TOP + plot_h / 2)})">{y_label}</text>'
    )
    # curves
    for s in series:
        coords = " ".join(f"{_fmt(to_x(x))},{_fmt(to_y(y))}" for x, y in s.points)
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(
            f'<polyline points="{coords}" fill="none" stroke="{s.color}" '
            f'stroke-width="1.6"{dash}/>'
        )
    # legend
    legend_x = WIDTH - MARGIN_RIGHT + 14
    for idx, s in enumerate(series):
        y = MARGIN_TOP + 10 + idx * 20
        dash = ' stroke-dasharray="6,4"' if s.dashed else ""
        out.append(
            f'<line x1="{legend_x}" y1="{y}" x2="{legend_x + 26}" y2="{y}" '
            f'stroke="{s.color}" stroke-width="1.6"{dash}/>'
        )
        out.append(
            f'<text x="{legend_x + 32}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="12">{s.label}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
