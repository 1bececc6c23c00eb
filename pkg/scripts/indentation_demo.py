"""Continuous rezoning under a rigid die pressed into a box.

The mesh-motion core of an indentation run: three top nodes act as a
rigid die and are displaced downward by a small increment each round;
the smoother then rezones the interior and the remaining (movable) top
surface before the next increment. Without smoothing, the die would
invert the rows beneath it within a few increments; with it, the mesh
stays valid to large indentation depths. Writes one SVG per round.
"""

import argparse
import os
import sys

from osmot.driver import SmootherConfig, smooth
from osmot.fixtures import INDENTED_COLS, INDENTED_PITCH, INDENTED_ROWS
from osmot.geometry import Point2, signed_area
from osmot.mesh import Mobility, Node, Triangle, build_topology
from osmot.svgout import ColorBy, render_svg


def build_box_with_die():
    cols, rows, h = INDENTED_COLS, INDENTED_ROWS, INDENTED_PITCH
    die_xs = {1.5, 2.0, 2.5}

    def nid(i, j):
        return j * (cols + 1) + i

    nodes = []
    die_ids = []
    for j in range(rows + 1):
        for i in range(cols + 1):
            x, y = i * h, j * h
            if j == rows and x in die_xs:
                mobility = Mobility.FIXED  # script-driven, not smoothed
                die_ids.append(nid(i, j))
            elif j == rows and 0 < i < cols:
                mobility = Mobility.BOUNDARY
            elif i in (0, cols) or j in (0, rows):
                mobility = Mobility.FIXED
            else:
                mobility = Mobility.INTERNAL
            nodes.append(Node(nid(i, j), Point2(x, y), mobility))

    tris = []
    for j in range(rows):
        for i in range(cols):
            tris.append(Triangle(len(tris), (nid(i, j), nid(i + 1, j),
                                             nid(i + 1, j + 1))))
            tris.append(Triangle(len(tris), (nid(i, j), nid(i + 1, j + 1),
                                             nid(i, j + 1))))
    return build_topology(nodes, tris), die_ids


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rounds", type=int, default=15)
    parser.add_argument("--increment", type=float, default=0.08)
    parser.add_argument("--loops-per-round", type=int, default=5)
    parser.add_argument("--out-dir", default="indentation_svgs")
    args = parser.parse_args(argv)

    mesh, die_ids = build_box_with_die()
    os.makedirs(args.out_dir, exist_ok=True)
    render_svg(mesh, os.path.join(args.out_dir, "round00.svg"), ColorBy.Q2)

    print(f"{'round':>5} {'die y':>7} {'minQ2':>8} {'inverted':>8}")
    for rnd in range(1, args.rounds + 1):
        for nid_ in die_ids:
            p = mesh.position(nid_)
            mesh.set_position(nid_, Point2(p.x, p.y - args.increment))
        result = smooth(mesh, SmootherConfig(i_max=args.loops_per_round))
        rep = result.reports[-1]
        inverted = sum(
            1 for t in mesh.triangles
            if signed_area(*mesh.triangle_points(t)) <= 0.0)
        print(f"{rnd:>5} {mesh.position(die_ids[0]).y:>7.3f} "
              f"{rep.min_q2:>8.4f} {inverted:>8}")
        render_svg(mesh, os.path.join(args.out_dir, f"round{rnd:02d}.svg"),
                   ColorBy.Q2)
        if inverted:
            print("mesh inverted; stopping", file=sys.stderr)
            return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
