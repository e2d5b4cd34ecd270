import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial.transform import Rotation

from atiyah_lab.closed_forms import normalized_D3
from atiyah_lab.geometry import (Configuration, DegenerateConfigurationError, antipode, atiyah_determinant,
                                 atiyah_matrix, batch_abs, energy, hopf_lift, normalized_abs)

TET = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)

coord = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
configs = st.integers(2, 6).flatmap(lambda n: st.lists(st.tuples(coord, coord, coord), min_size=n, max_size=n))


def _separated(pts, tol=1e-2):
    p = np.array(pts)
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)
    return d[np.triu_indices(len(p), 1)].min() > tol


def test_collinear_is_one():
    pts = [[0, 0, t] for t in (-2.0, 0.1, 0.7, 3.0)]
    assert normalized_abs(pts) == pytest.approx(1.0, abs=1e-12)


def test_equilateral_and_tetrahedron():
    tri = [[0, 0, 0], [1, 0, 0], [0.5, math.sqrt(3) / 2, 0]]
    assert normalized_abs(tri) == pytest.approx(9 / 8, rel=1e-12)
    assert normalized_abs(TET) == pytest.approx(25 / 16, rel=1e-12)


def test_square():
    sq = [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]]
    assert normalized_abs(sq) == pytest.approx((1 + math.sqrt(2)) ** 2 / 4, rel=1e-12)


def test_two_points():
    assert normalized_abs([[0, 0, 0], [0.3, -2, 1]]) == pytest.approx(1.0)


def test_coincident_points_rejected():
    with pytest.raises(DegenerateConfigurationError):
        atiyah_determinant([[0, 0, 0], [1, 0, 0], [0, 0, 0]])


def test_nonfinite_rejected():
    with pytest.raises(ValueError):
        atiyah_determinant([[0, 0, 0], [np.nan, 0, 0]])


def test_bad_shape():
    with pytest.raises(ValueError):
        Configuration(np.zeros((3, 4)))


def test_planar_input_padded():
    assert normalized_abs([[0, 0], [1, 0], [0, 1]]) == pytest.approx(normalized_abs([[0, 0, 0], [1, 0, 0], [0, 1, 0]]))


def test_energy_sign():
    assert energy(TET) == pytest.approx(-math.log(25 / 16))


@pytest.mark.parametrize("v", [(0, 0, 1), (0, 0, -1), (1, 0, 0), (0.3, -0.2, -0.9), (1e-9, 0, -1)])
def test_hopf_lift_unit_and_antipode_orthogonal(v):
    a, b = hopf_lift(v)
    assert abs(a) ** 2 + abs(b) ** 2 == pytest.approx(1.0)
    c, d = antipode((a, b))
    assert abs(a.conjugate() * c + b.conjugate() * d) < 1e-12
    # stereographic image is recovered up to the chart
    x, y, z = np.asarray(v, float) / np.linalg.norm(v)
    if abs(a) > 1e-6:
        assert b / a == pytest.approx(complex(x, y) / (1 + z))


def test_matrix_rows_are_monic_products():
    m = atiyah_matrix(Configuration(TET))
    assert m.shape == (4, 4)
    assert np.all(np.isfinite(m))


def test_extended_precision_agrees():
    rng = np.random.default_rng(1)
    pts = rng.normal(size=(5, 3))
    d = atiyah_determinant(pts)
    e = atiyah_determinant(pts, "extended:200")
    assert e.precision_used == "extended:200"
    assert d.normalized_abs == pytest.approx(e.normalized_abs, rel=1e-12)


def test_marginal_value_escalates():
    # nearly collinear: |D| within the marginal band of 1
    pts = [[0, 0, 0], [1, 1e-5, 0], [2, 0, 0]]
    assert atiyah_determinant(pts).precision_used.startswith("extended")


def test_bad_precision_string():
    with pytest.raises(ValueError):
        atiyah_determinant(TET, "quad")


def test_triangle_closed_form(rng):
    for _ in range(50):
        p = rng.normal(size=(3, 3))
        a, b, c = (np.linalg.norm(p[i] - p[j]) for i, j in ((1, 2), (0, 2), (0, 1)))
        assert normalized_abs(p) == pytest.approx(normalized_D3(a, b, c), rel=1e-10)


def test_batch_matches_single(rng):
    pts = rng.normal(size=(20, 5, 3))
    ref = np.array([normalized_abs(p) for p in pts])
    assert np.allclose(batch_abs(pts), ref, rtol=1e-10)


@settings(max_examples=60, deadline=None)
@given(configs, st.floats(0.1, 10), st.tuples(coord, coord, coord), st.integers(0, 2**31 - 1))
def test_similarity_and_permutation_invariance(pts, scale, shift, seed):
    if not _separated(pts):
        return
    p = np.array(pts)
    base = normalized_abs(p)
    rot = Rotation.random(random_state=seed).as_matrix()
    moved = scale * p @ rot.T + np.array(shift)
    perm = np.random.default_rng(seed).permutation(len(p))
    assert normalized_abs(moved) == pytest.approx(base, rel=1e-8)
    assert normalized_abs(p[perm]) == pytest.approx(base, rel=1e-8)


@settings(max_examples=60, deadline=None)
@given(configs)
def test_c2_lower_bound(pts):
    if not _separated(pts, 5e-2):
        return
    assert normalized_abs(np.array(pts)) >= 1 - 1e-9


def test_phase_injection_does_not_change_magnitude():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(4, 3))
    phases = {(0, 1): np.exp(0.7j), (2, 3): np.exp(-1.1j)}
    assert atiyah_determinant(pts, phases=phases).normalized_abs == pytest.approx(normalized_abs(pts), rel=1e-10)
