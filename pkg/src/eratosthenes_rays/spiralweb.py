"""Polar "spiral and web" picture of a ray matrix.

The layout here is a convention of this package, not a reconstruction of
any published figure:

* row ``mu`` is drawn along the ray at angle
  ``angular_offset + 2*pi*(mu - 1) / rows_rendered``;
* an entry's radius is ``ln(value)`` (``LOG_VALUE``) or its column ``nu``
  (``COLUMN_INDEX``);
* the *web* is one strand per row joining consecutive columns;
* the *spiral* is a single thread through every rendered prime in
  increasing order.
"""

from __future__ import annotations

import enum
import io
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import ParameterError
from .rays import MatrixCoord, RayMatrix


class RadiusMode(enum.Enum):
    LOG_VALUE = "LogValue"
    COLUMN_INDEX = "ColumnIndex"


@dataclass(frozen=True)
class LayoutConfig:
    radius_mode: RadiusMode = RadiusMode.LOG_VALUE
    # None renders every row of the matrix
    rows_rendered: int | None = None
    angular_offset: float = 0.0
    canvas_size: int = 800
    # labels are drawn only when there are at most this many points
    label_threshold: int = 60

    def __post_init__(self):
        if self.rows_rendered is not None and self.rows_rendered < 1:
            raise ParameterError("rows_rendered must be >= 1")
        if self.canvas_size <= 0:
            raise ParameterError("canvas_size must be positive")


@dataclass(frozen=True)
class LayoutPoint:
    coord: MatrixCoord
    value: int
    x: float
    y: float


@dataclass(frozen=True)
class SpiralLayout:
    points: tuple[LayoutPoint, ...]
    # per row: consecutive (i, j) point-index segments
    strands: tuple[tuple[tuple[int, int], ...], ...]
    # point indices of the primes in increasing value order
    rings: tuple[tuple[int, ...], ...]


def layout(matrix: RayMatrix, config: LayoutConfig | None = None) -> SpiralLayout:
    config = config or LayoutConfig()
    if matrix.num_rows == 0 or len(matrix) == 0:
        raise ParameterError("cannot lay out an empty matrix")
    n_rows = config.rows_rendered or matrix.num_rows
    points, strands = [], []
    primes = []
    for mu, ray in enumerate(matrix.rows[:n_rows], start=1):
        theta = config.angular_offset + 2 * math.pi * (mu - 1) / n_rows
        c, s = math.cos(theta), math.sin(theta)
        segments = []
        for nu, value in enumerate(ray.elements):
            if config.radius_mode is RadiusMode.LOG_VALUE:
                r = math.log(value)
            else:
                r = float(nu)
            if nu > 0:
                segments.append((len(points) - 1, len(points)))
                primes.append((value, len(points)))
            points.append(LayoutPoint(MatrixCoord(mu, nu), value, r * c, r * s))
        strands.append(tuple(segments))
    thread = tuple(i for _, i in sorted(primes))
    return SpiralLayout(tuple(points), tuple(strands), (thread,) if thread else ())


def _fmt(v: float) -> str:
    return f"{round(v, 3) + 0.0:.3f}"


def render_svg(spiral: SpiralLayout, config: LayoutConfig | None = None) -> bytes:
    """Standalone SVG: a polyline per non-empty strand, one for the spiral, a circle per point."""
    config = config or LayoutConfig()
    size = config.canvas_size
    reach = max((math.hypot(p.x, p.y) for p in spiral.points), default=0.0) or 1.0
    margin = 0.06 * size
    scale = (size / 2 - margin) / reach
    centre = size / 2

    def xy(i):
        p = spiral.points[i]
        return _fmt(centre + scale * p.x), _fmt(centre - scale * p.y)

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(size),
            "height": str(size),
            "viewBox": f"0 0 {size} {size}",
        },
    )
    ET.SubElement(svg, "rect", {"width": str(size), "height": str(size), "fill": "white"})
    web = ET.SubElement(svg, "g", {"id": "web", "fill": "none", "stroke": "#4a6fa5", "stroke-width": "1.2"})
    for mu, segments in enumerate(spiral.strands, start=1):
        if not segments:
            continue
        chain = [segments[0][0]] + [j for _, j in segments]
        ET.SubElement(
            web, "polyline",
            {"class": "strand", "data-mu": str(mu), "points": " ".join(",".join(xy(i)) for i in chain)},
        )
    for thread in spiral.rings:
        if len(thread) < 2:
            continue
        ET.SubElement(
            svg, "polyline",
            {
                "class": "spiral",
                "fill": "none",
                "stroke": "#c0504d",
                "stroke-width": "0.8",
                "stroke-dasharray": "3,2",
                "points": " ".join(",".join(xy(i)) for i in thread),
            },
        )
    dots = ET.SubElement(svg, "g", {"id": "points"})
    labelled = len(spiral.points) <= config.label_threshold
    for i, p in enumerate(spiral.points):
        x, y = xy(i)
        fill = "#333333" if p.coord.nu == 0 else "#c0504d"
        ET.SubElement(dots, "circle", {"class": "marker", "cx": x, "cy": y, "r": "3", "fill": fill})
        if labelled:
            label = ET.SubElement(
                dots, "text",
                {"x": _fmt(float(x) + 4), "y": _fmt(float(y) - 4), "font-size": "10", "font-family": "monospace"},
            )
            label.text = str(p.value)
    buf = io.BytesIO()
    ET.ElementTree(svg).write(buf, encoding="utf-8", xml_declaration=True)
    return buf.getvalue() + b"\n"


def _coord(v: float) -> str:
    # round first so -0.0 and 1e-17 noise print as 0.000000000000
    return f"{round(v, 12) + 0.0:.12f}"


def export_table(spiral: SpiralLayout) -> bytes:
    """CSV ``mu,nu,value,x,y`` with one row per point."""
    lines = ["mu,nu,value,x,y"]
    for p in spiral.points:
        lines.append(f"{p.coord.mu},{p.coord.nu},{p.value},{_coord(p.x)},{_coord(p.y)}")
    return ("\n".join(lines) + "\n").encode("ascii")
