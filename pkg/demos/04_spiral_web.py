"""Rays drawn as strands of a polar web.

Row mu gets its own angle, radius is ln(value). A spiral thread joins all
primes in ascending order. Writes spiral_web.svg and spiral_web.csv here.
"""
from pathlib import Path

from eratosthenes_rays import LayoutConfig, RadiusMode, build_indexer, build_matrix, export_table, layout, render_svg

idx = build_indexer(10**6, 10**9)
m = build_matrix(idx, 8, 10**6)

cfg = LayoutConfig(angular_offset=0.25, canvas_size=900)
web = layout(m, cfg)
out = Path(__file__).with_name("spiral_web.svg")
out.write_bytes(render_svg(web, cfg))
out.with_suffix(".csv").write_bytes(export_table(web))
print(f"{len(web.points)} points, {len(web.strands)} strands -> {out}")

# %% column-index radius puts every depth on its own ring
flat = LayoutConfig(radius_mode=RadiusMode.COLUMN_INDEX)
p = layout(m, flat).points[-1]
print(p.coord, p.value, round(p.x, 3), round(p.y, 3))
