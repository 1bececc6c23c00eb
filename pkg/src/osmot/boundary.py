"""Heuristic relocation of movable boundary nodes.

A movable boundary node and its two chain neighbors are assumed to lie on
a quadratic curve parameterized over [-1, 1] with the node at 0 and the
neighbors at -1 and +1. Weighted averaging of the two neighbor distances
gives the natural coordinate that equalizes them; evaluating the curve
there is the new node position. The node is already optimal (and returned
bit-exactly) when the two distances are equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import Point2


class CoincidentNeighborsError(Exception):
    """All three points of a boundary triple coincide."""


@dataclass(frozen=True, slots=True)
class BoundaryTriple:
    """Chain-ordered positions (previous, node, next)."""

    p1: Point2
    p0: Point2
    p2: Point2


def shape_functions(xi: float) -> tuple[float, float, float]:
    """Quadratic interpolation weights (N0, N1, N2) at xi in [-1, 1].

    Out-of-range xi is clamped defensively; the weighted-averaging
    coordinate can never leave the interval. The three weights sum to 1.
    """
    if xi < -1.0:
        xi = -1.0
    elif xi > 1.0:
        xi = 1.0
    xi2 = xi * xi
    return 1.0 - xi2, 0.5 * (xi2 - xi), 0.5 * (xi2 + xi)


def _distances(triple: BoundaryTriple) -> tuple[float, float]:
    d1 = math.hypot(triple.p1.x - triple.p0.x, triple.p1.y - triple.p0.y)
    d2 = math.hypot(triple.p2.x - triple.p0.x, triple.p2.y - triple.p0.y)
    return d1, d2


def smooth_boundary_node(triple: BoundaryTriple) -> Point2:
    """New position of the middle node that equalizes neighbor distances."""
    d1, d2 = _distances(triple)
    scale = max(abs(triple.p0.x), abs(triple.p0.y), abs(triple.p1.x),
                abs(triple.p1.y), abs(triple.p2.x), abs(triple.p2.y), 1.0)
    if d1 + d2 <= 1e-14 * scale:
        raise CoincidentNeighborsError("boundary triple has coincident points")
    xi = (d2 - d1) / (d1 + d2)
    if xi == 0.0:
        return triple.p0
    n0, n1, n2 = shape_functions(xi)
    return Point2(
        n0 * triple.p0.x + n1 * triple.p1.x + n2 * triple.p2.x,
        n0 * triple.p0.y + n1 * triple.p1.y + n2 * triple.p2.y,
    )


def boundary_quality(triple: BoundaryTriple) -> float:
    """Ratio of the smaller to the larger neighbor distance, in [0, 1]."""
    d1, d2 = _distances(triple)
    hi = max(d1, d2)
    if hi == 0.0:
        return 0.0
    return min(d1, d2) / hi
