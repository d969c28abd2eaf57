"""ASCII and SVG diagrams of a star field and an optional path."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .geometry import BoardSpec, Path, Point, format_square


@dataclass(frozen=True)
class RenderOptions:
    cell_size: int = 40
    radius: float = 6.0
    # None means "the path's start and end", the two light stars.
    highlight: Optional[frozenset[Point]] = None
    show_coords: bool = False
    stroke_width: float = 2.0

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")
        if self.radius <= 0:
            raise ValueError("radius must be positive")


def render_ascii(path: Optional[Path], board: BoardSpec) -> str:
    """n rows of n glyphs, rank n on top. Waypoints only, no stroke lines."""
    n = board.n
    marks: dict[Point, str] = {}
    if path is not None:
        for p in path.waypoints:
            marks[Point(*p)] = "o"
        marks[path.end] = "E"
        marks[path.start] = "S"
    rows = []
    for rank in range(n, 0, -1):
        rows.append("".join(marks.get(Point(f, rank), "*") for f in range(1, n + 1)))
    return "\n".join(rows) + "\n"


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(path: Optional[Path], board: BoardSpec,
               options: RenderOptions = RenderOptions()) -> str:
    """SVG 1.1 document: one circle per star and one polyline through the waypoints."""
    cs = options.cell_size
    lo, hi = board.lo, board.hi
    width = (hi - lo + 1) * cs

    def xy(p: Point) -> tuple[float, float]:
        return ((p.file - lo + 0.5) * cs, (hi - p.rank + 0.5) * cs)

    if options.highlight is not None:
        light = set(options.highlight)
    elif path is not None:
        light = {path.start, path.end}
    else:
        light = set()

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{width}" viewBox="0 0 {width} {width}">',
        f'<rect x="0" y="0" width="{width}" height="{width}" fill="white"/>',
    ]
    if board.margin:
        x0 = board.margin * cs
        side = board.n * cs
        out.append(f'<rect class="core" x="{x0}" y="{x0}" width="{side}" height="{side}" '
                   'fill="none" stroke="#bbbbbb" stroke-dasharray="4 4"/>')
    if path is not None:
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (xy(Point(*p)) for p in path.waypoints))
        out.append(f'<polyline class="path" points="{pts}" fill="none" stroke="#c03030" '
                   f'stroke-width="{_fmt(options.stroke_width)}" stroke-linejoin="round"/>')
    for star in board.stars():
        x, y = xy(star)
        if star in light:
            out.append(f'<circle class="star light" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                       f'r="{_fmt(options.radius * 1.5)}" fill="#f2c200" stroke="black"/>')
        else:
            out.append(f'<circle class="star" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                       f'r="{_fmt(options.radius)}" fill="black"/>')
    if options.show_coords:
        for star in board.stars():
            x, y = xy(star)
            out.append(f'<text x="{_fmt(x + options.radius + 2)}" y="{_fmt(y - options.radius - 2)}" '
                       f'font-size="{_fmt(cs / 4)}" font-family="monospace">'
                       f'{format_square(star, board)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
