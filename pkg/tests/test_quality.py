import math

import pytest
from hypothesis import given, strategies as st

from osmot.geometry import Point2, TriangleGeometry, signed_area, triangle_geometry
from osmot.quality import QualityConfig, element_passes, q1_size, q2_shape

SQRT3 = math.sqrt(3.0)

T345 = (Point2(0, 0), Point2(3, 0), Point2(0, 4))
EQUILATERAL = (Point2(0, 0), Point2(1, 0), Point2(0.5, SQRT3 / 2))
COLLINEAR = (Point2(0, 0), Point2(1, 1), Point2(2, 2))

coord = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)
triangles = st.tuples(coord, coord, coord, coord, coord, coord).filter(
    lambda t: abs(signed_area(Point2(t[0], t[1]), Point2(t[2], t[3]),
                              Point2(t[4], t[5]))) > 1e-3
)


def fake_geom(r: float, R: float) -> TriangleGeometry:
    return TriangleGeometry(1, 1, 1, 1.5, 0.4, 0.4, r, R, False)


def test_q1_direct_ratio():
    assert q1_size(fake_geom(0.5, 2.0), 1.0) == 0.5
    assert q1_size(fake_geom(0.5, 1.0), 1.0) == 1.0


def test_q1_345():
    assert q1_size(triangle_geometry(*T345), 1.0) == pytest.approx(0.4)


def test_q1_degenerate_is_zero():
    assert q1_size(triangle_geometry(*COLLINEAR), 1.0) == 0.0


def test_q2_equilateral_is_one():
    assert q2_shape(triangle_geometry(*EQUILATERAL)) == pytest.approx(1.0, abs=1e-12)


def test_q2_collinear_is_zero():
    assert q2_shape(triangle_geometry(*COLLINEAR)) == 0.0


def test_q2_345():
    assert q2_shape(triangle_geometry(*T345)) == pytest.approx(0.8)


def test_element_passes():
    cfg = QualityConfig(q_min=0.5)
    assert element_passes(triangle_geometry(*EQUILATERAL), cfg)
    assert not element_passes(triangle_geometry(*COLLINEAR), cfg)
    assert not element_passes(triangle_geometry(*T345), QualityConfig(q_min=0.85))


def test_config_validation():
    with pytest.raises(ValueError):
        QualityConfig(q_min=0.0)
    with pytest.raises(ValueError):
        QualityConfig(r_ref_default=-1.0)
    with pytest.raises(ValueError):
        QualityConfig(simplex_dim=3)


@given(triangles)
def test_q2_in_unit_interval(t):
    q2 = q2_shape(triangle_geometry(Point2(t[0], t[1]), Point2(t[2], t[3]),
                                    Point2(t[4], t[5])))
    assert 0.0 <= q2 <= 1.0 + 1e-12


@given(triangles, st.floats(min_value=1e-3, max_value=1e3, allow_nan=False))
def test_q2_scale_invariant(t, k):
    p = [Point2(t[0], t[1]), Point2(t[2], t[3]), Point2(t[4], t[5])]
    q = [Point2(k * v.x, k * v.y) for v in p]
    assert q2_shape(triangle_geometry(*p)) == pytest.approx(
        q2_shape(triangle_geometry(*q)), abs=1e-12)


@given(triangles)
def test_q2_orientation_invariant(t):
    p0, p1, p2 = Point2(t[0], t[1]), Point2(t[2], t[3]), Point2(t[4], t[5])
    assert q2_shape(triangle_geometry(p0, p1, p2)) == pytest.approx(
        q2_shape(triangle_geometry(p0, p2, p1)), abs=1e-14)


@given(triangles, st.floats(min_value=1e-2, max_value=1e2, allow_nan=False))
def test_q1_scales_inversely(t, k):
    p = [Point2(t[0], t[1]), Point2(t[2], t[3]), Point2(t[4], t[5])]
    q = [Point2(k * v.x, k * v.y) for v in p]
    q1p = q1_size(triangle_geometry(*p), 1.0)
    q1q = q1_size(triangle_geometry(*q), 1.0)
    assert abs(q1q - q1p / k) <= 1e-10 * max(1.0, q1p / k)
