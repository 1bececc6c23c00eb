"""Element quality measures used for flagging and reporting.

Two measures: a size measure (reference radius over circumcircle radius)
and the normalized radius ratio 2r/R, which is 1 for an equilateral
triangle and 0 for a degenerate one. Flagging uses the radius ratio only;
the size measure is report-only because the smoothing objective already
accounts for element size.
"""

from __future__ import annotations

from dataclasses import dataclass

from .geometry import TriangleGeometry

SIMPLEX_DIM = 2  # normalization factor for the radius ratio of a triangle


@dataclass(frozen=True, slots=True)
class QualityConfig:
    """Quality thresholds: reference radius and minimum acceptable ratio."""

    r_ref_default: float = 1.0
    q_min: float = 0.6
    simplex_dim: int = SIMPLEX_DIM

    def __post_init__(self) -> None:
        if not self.r_ref_default > 0.0:
            raise ValueError("r_ref_default must be positive")
        if not 0.0 < self.q_min <= 1.0:
            raise ValueError("q_min must be in (0, 1]")
        if self.simplex_dim != SIMPLEX_DIM:
            raise ValueError("only triangles are supported")


def q1_size(geom: TriangleGeometry, r_ref: float) -> float:
    """Size quality r_ref/R. Degenerate elements score 0 (worst)."""
    if geom.degenerate or geom.R == 0.0:
        return 0.0
    return r_ref / geom.R

def q2_shape(geom: TriangleGeometry) -> float:
    """Normalized radius ratio 2r/R in [0, 1]; 0 for degenerate elements."""
    if geom.degenerate or geom.R == 0.0:
        return 0.0
    return SIMPLEX_DIM * geom.r / geom.R


def element_passes(geom: TriangleGeometry, cfg: QualityConfig) -> bool:
    """Quality check used for flagging: radius ratio meets the minimum."""
    return q2_shape(geom) >= cfg.q_min
