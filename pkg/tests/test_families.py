import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atiyah_lab import families as fam
from atiyah_lab.closed_forms import DistanceData, normalized_re_D4
from atiyah_lab.geometry import normalized_abs


def _distances_match(member):
    dd = DistanceData.from_points(member.config.points)
    for k, v in member.distances.as_dict().items():
        assert getattr(dd, k) == pytest.approx(float(v), rel=1e-9), k


def test_parallelogram_diagonals():
    m = fam.make_parallelogram(1.0, 2.0, 1.0)
    assert m.extra["e"] ** 2 + m.extra["f"] ** 2 == pytest.approx(2 * (1 + 4))
    assert m.extra["e"] ** 2 == pytest.approx(1 + 4 + 4 * math.cos(1.0))


def test_parallelogram_bad_angle():
    with pytest.raises(fam.InfeasibleParametersError):
        fam.make_parallelogram(1, 1, math.pi)


def test_cyclic_angles_checked():
    with pytest.raises(fam.InfeasibleParametersError):
        fam.make_cyclic_quad(1, [0, 1, 0.5, 2])


def test_regular_tetrahedron_routes():
    routes = [fam.make_edge_tangential(0.5, 0.5, 0.5, 0.5),
              fam.make_semiregular(1 / math.sqrt(2), 1 / math.sqrt(2), 1 / math.sqrt(2)),
              fam.make_upright(1, 1, 1, 1.0),
              fam.make_wedge(1, 1, 1, 1)]
    for m in routes:
        assert normalized_abs(m.config) == pytest.approx(25 / 16, rel=1e-9), m.family
        assert float(normalized_re_D4(m.distances)) == pytest.approx(25 / 16, rel=1e-12)


def test_upright_below_circumradius():
    with pytest.raises(fam.InfeasibleParametersError):
        fam.make_upright(1, 1, 1, 0.5)
    flat = fam.make_upright(1, 1, 1, fam.circumradius(1, 1, 1))
    assert flat.degenerate


def test_trirectangular_right_angles():
    m = fam.make_trirectangular(1, 2, 3)
    p = m.config.points
    legs = p[:3] - p[3]
    assert np.allclose(legs @ legs.T - np.diag(np.diag(legs @ legs.T)), 0)
    _distances_match(m)


def test_wedge_infeasible_reason():
    with pytest.raises(fam.InfeasibleParametersError, match="2a\\^2"):
        fam.make_wedge(1, 1, 1.8, 1.0)


def test_embed_rejects_impossible():
    with pytest.raises(fam.InfeasibleParametersError, match="Cayley-Menger"):
        fam.embed_tetrahedron(DistanceData(1, 1, 1, 1, 1, 3))


def test_collinear_family():
    m = fam.make_collinear([0, 1, 5])
    assert normalized_abs(m.config) == pytest.approx(1.0)
    with pytest.raises(fam.InfeasibleParametersError):
        fam.make_collinear([1, 0])


def test_dihedral_points():
    m = fam.make_dihedral(2, 5, [-1, 2])
    ring = m.config.points[2:]
    assert np.allclose(np.linalg.norm(ring, axis=1), 1)
    assert np.allclose(ring[:, 0], 0)


def test_params_roundtrip():
    p = fam.FamilyParams("wedge", {"a": 1.0, "b": 1.2, "x": 0.5, "y": 0.6})
    assert fam.FamilyParams.from_json(p.to_json()) == p
    with pytest.raises(ValueError):
        fam.FamilyParams.from_json({"family": "hexagon"})


def test_grid_from_spec():
    grid = fam.grid_from_spec("parallelogram", {"a": {"min": 1, "max": 2, "steps": 3}, "b": 1.0, "theta": 1.0})
    assert [g.values["a"] for g in grid] == [1.0, 1.5, 2.0]
    et = fam.grid_from_spec("edge_tangential", {"t1": 1, "t2": 1, "t3": 1, "t4": {"min": 1, "max": 2, "steps": 2}})
    assert et[1].values == {"t": [1.0, 1.0, 1.0, 2.0]}


@pytest.mark.parametrize("family", fam.SWEPT_FAMILIES)
def test_default_grids_have_200_feasible(family):
    ok = 0
    for p in fam.default_grid(family):
        try:
            fam.build(p)
            ok += 1
        except fam.InfeasibleParametersError:
            pass
    assert ok >= 200


@pytest.mark.parametrize("family", ["edge_tangential", "semiregular", "wedge", "trirectangular", "upright"])
def test_generated_distances_consistent(family):
    for p in fam.default_grid(family)[::17]:
        try:
            m = fam.build(p)
        except fam.InfeasibleParametersError:
            continue
        _distances_match(m)


def test_wedge_formula_errors_small():
    m = fam.make_wedge(1.0, 1.2, 0.9, 1.4)
    errs = fam.wedge_formula_errors(m)
    assert errs["first"] < 1e-12 and errs["second"] < 1e-12


pos = st.floats(0.2, 3.0)


@settings(max_examples=60, deadline=None)
@given(pos, pos, st.floats(0.05, math.pi - 0.05))
def test_parallelogram_inequalities(a, b, theta):
    ineq = fam.family_inequalities(fam.make_parallelogram(a, b, theta))
    assert min(ineq.values()) >= -1e-10


@settings(max_examples=60, deadline=None)
@given(pos, pos, pos, pos)
def test_edge_tangential_strong(t1, t2, t3, t4):
    try:
        m = fam.make_edge_tangential(t1, t2, t3, t4)
    except fam.InfeasibleParametersError:
        return
    assert fam.family_inequalities(m)["FP-strong"] >= -1e-10


@settings(max_examples=60, deadline=None)
@given(pos, pos, pos)
def test_semiregular_and_trirectangular(u, v, w):
    for m in (fam.make_semiregular(u, v, w), fam.make_trirectangular(u, v, w)):
        assert min(fam.family_inequalities(m).values()) >= -1e-10


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(0, 2 * math.pi - 0.01), min_size=4, max_size=4, unique=True))
def test_cyclic_bounds(angles):
    angles = sorted(angles)
    if min(np.diff(angles)) < 0.05 or angles[3] - angles[0] > 2 * math.pi - 0.05:
        return
    ineq = fam.family_inequalities(fam.make_cyclic_quad(1.0, angles))
    assert min(ineq.values()) >= -1e-9
