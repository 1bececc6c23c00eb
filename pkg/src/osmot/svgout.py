"""Standalone SVG rendering of a mesh, optionally colored by shape quality."""

from __future__ import annotations

import enum

from .geometry import triangle_geometry
from .mesh import Mesh
from .quality import q2_shape


class ColorBy(enum.Enum):
    Q2 = "q2"
    NONE = "none"


def _fill(q2: float) -> str:
    # linear red (0) -> green (1)
    q2 = min(max(q2, 0.0), 1.0)
    red = round(255 * (1.0 - q2))
    green = round(255 * q2)
    return f"rgb({red},{green},0)"


def mesh_to_svg(mesh: Mesh, color_by: ColorBy = ColorBy.Q2) -> str:
    xs = [n.position.x for n in mesh.nodes]
    ys = [n.position.y for n in mesh.nodes]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    width = xmax - xmin
    height = ymax - ymin
    margin = 0.05 * max(width, height, 1e-30)
    stroke = 0.01 * max(width, height, 1e-30)

    # flip y so the picture matches the mathematical orientation
    view = (f"{xmin - margin:.6g} {-(ymax + margin):.6g} "
            f"{width + 2 * margin:.6g} {height + 2 * margin:.6g}")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}" '
        f'width="800" height="{800 * (height + 2 * margin) / max(width + 2 * margin, 1e-30):.6g}">',
    ]
    for tri in mesh.triangles:
        p0, p1, p2 = mesh.triangle_points(tri)
        if color_by is ColorBy.Q2:
            fill = _fill(q2_shape(triangle_geometry(p0, p1, p2)))
        else:
            fill = "white"
        points = " ".join(f"{p.x:.6g},{-p.y:.6g}" for p in (p0, p1, p2))
        out.append(
            f'<polygon points="{points}" fill="{fill}" '
            f'stroke="black" stroke-width="{stroke:.6g}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_svg(mesh: Mesh, path: str, color_by: ColorBy = ColorBy.Q2) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(mesh_to_svg(mesh, color_by))
