import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atiyah_lab import closed_forms as cf
from atiyah_lab.geometry import atiyah_determinant, normalized_abs

TET = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
SQUARE = np.array([[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]], dtype=float)


def _dd_exact(vals):
    return cf.DistanceData(*[Fraction(v) for v in vals])


def test_d3_values():
    assert cf.d3(1, 1, 1) == 1
    assert cf.d3(1, 2, 3) == 0
    assert cf.D3(1, 1, 1) == 9


def test_d3_symmetric():
    assert cf.d3(2, 3, 4) == cf.d3(4, 2, 3) == cf.d3(3, 4, 2)


def test_trig_three_point_form(rng):
    for _ in range(20):
        p = rng.normal(size=(3, 2))
        a, b, c = (float(np.linalg.norm(p[i] - p[j])) for i, j in ((1, 2), (0, 2), (0, 1)))
        assert cf.D3_trig(a, b, c) == pytest.approx(cf.D3(a, b, c), rel=1e-10)


def test_regular_tetrahedron_exact():
    dd = _dd_exact([1] * 6)
    assert cf.normalized_re_D4(dd) == Fraction(25, 16)
    assert cf.vol2_144(dd) == 2


def test_volume_of_right_corner():
    # corner tetrahedron with unit legs has V = 1/6
    dd = cf.DistanceData.from_points([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert cf.vol2_144(dd) == pytest.approx(144 / 36)


def test_square_both_routes():
    dd = cf.DistanceData.from_points(SQUARE)
    target = 32 * (3 + 2 * math.sqrt(2))
    assert float(cf.re_D4(dd)) == pytest.approx(target, rel=1e-12)
    assert cf.re_D4_trig_planar(dd, SQUARE) == pytest.approx(target, rel=1e-12)


def test_sum_and_face_forms_agree_exactly(rng):
    for _ in range(20):
        vals = [Fraction(int(v), 7) for v in rng.integers(1, 40, 6)]
        dd = cf.DistanceData(*vals)
        assert cf.A4_sum_form(dd) == cf.A4_face_form(dd)
        assert cf.regrouped_vol_term(dd) == cf.vol2_144(dd) - 2 * cf.d3(*cf.opposite_products(dd))


def test_re_d4_matches_numeric(rng):
    for _ in range(30):
        p = rng.normal(size=(4, 3))
        dd = cf.DistanceData.from_points(p)
        val = atiyah_determinant(p)
        assert abs(val.raw.real) == pytest.approx(float(cf.normalized_re_D4(dd)), rel=1e-9)


def test_c3_four_point_margin_matches_numeric(rng):
    for _ in range(20):
        p = rng.normal(size=(4, 3))
        dd = cf.DistanceData.from_points(p)
        raw = atiyah_determinant(p).raw
        im = raw.imag * 64 * float(dd.product())
        margin = cf.c3_four_point_margin(dd, im)
        subs = math.prod(normalized_abs(np.delete(p, k, axis=0)) for k in range(4))
        assert margin == pytest.approx(abs(raw) ** 2 - subs, abs=1e-9)


def test_tetrahedron_c3_margin_exact():
    dd = _dd_exact([1] * 6)
    assert cf.c3_four_point_margin(dd) == pytest.approx(float(Fraction(25, 16) ** 2 - Fraction(9, 8) ** 4))


def test_four_points_gap_zero_at_regular():
    dd = _dd_exact([1] * 6)
    assert cf.four_points_gap(dd) == 0
    assert cf.four_points_gap(dd, strong=True) == 0


def test_distance_data_accessors():
    dd = cf.DistanceData(1, 2, 3, 4, 5, 6)
    assert dd.r(3, 1) == 2
    assert dd.product() == 720
    with pytest.raises(ValueError):
        dd.r(2, 2)
    with pytest.raises(ValueError):
        cf.DistanceData(1, 0, 1, 1, 1, 1).check_positive()
    assert cf.DistanceData.from_mapping(dd.as_dict()) == dd


def test_cyclic_quadrilateral_c_equals_two():
    ang = [0.1, 1.3, 2.9, 4.4]
    pts = np.array([[math.cos(t), math.sin(t), 0] for t in ang])
    dd = cf.DistanceData.from_points(pts)
    tq = cf.trig_quantities(dd, pts)
    assert tq.mobius_c == pytest.approx(2.0, abs=1e-12)
    assert tq.mobius_c_law_of_cosines == pytest.approx(2.0, abs=1e-12)
    assert cf.d3(*[float(v) for v in cf.opposite_products(dd)]) == pytest.approx(0, abs=1e-9)


pt = st.floats(-3, 3, allow_nan=False)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(pt, pt), min_size=4, max_size=4))
def test_planar_trig_form(pts):
    p = np.array([[x, y, 0.0] for x, y in pts])
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)[np.triu_indices(4, 1)]
    if d.min() < 0.05:
        return
    dd = cf.DistanceData.from_points(p)
    # the planar configuration may have collinear triples, where angles are still defined
    assert cf.re_D4_trig_planar(dd, p) == pytest.approx(float(cf.re_D4(dd)), rel=1e-7)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(pt, pt, pt), min_size=4, max_size=4))
def test_regrouped_vol_term_nonpositive(pts):
    p = np.array(pts)
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)[np.triu_indices(4, 1)]
    if d.min() < 0.05:
        return
    dd = cf.DistanceData.from_points(p)
    assert cf.regrouped_vol_term(dd) <= 1e-9 * float(dd.product()) ** (2 / 3) * 10
    assert cf.vol2_144(dd) >= -1e-9 * max(1.0, float(dd.product()))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(Fraction(1, 10), 5), min_size=4, max_size=4))
def test_edge_tangential_closed_form(t):
    dd = cf.DistanceData(*(t[i - 1] + t[j - 1] for i, j in cf.PAIRS))
    re, norm = cf.re_D4_edge_tangential(t)
    assert re == cf.re_D4(dd)
    assert norm == 64 * dd.product()


@settings(max_examples=60, deadline=None)
@given(st.fractions(Fraction(1, 10), 5), st.fractions(Fraction(1, 10), 5), st.fractions(Fraction(1, 10), 5))
def test_semiregular_closed_form(a, b, c):
    assert cf.re_D4_semiregular(a, b, c) == cf.re_D4(cf.DistanceData(a, b, c, c, b, a))
