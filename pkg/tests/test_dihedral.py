import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from atiyah_lab import dihedral as dh


def test_spec_validation():
    with pytest.raises(ValueError):
        dh.DihedralSpec(1, 1, (1.0,))
    with pytest.raises(ValueError):
        dh.DihedralSpec(2, 3, (2.0, 1.0))
    with pytest.raises(ValueError):
        dh.DihedralSpec(2, 3, (1.0,))


def test_abscissae_roundtrip():
    s = dh.DihedralSpec.from_abscissae(4, [-1.5, 0.0, 2.0])
    assert s.abscissae() == pytest.approx([-1.5, 0.0, 2.0])
    assert dh.DihedralSpec.from_json(s.to_json()) == s


def test_m0_n2_margin_zero():
    s = dh.DihedralSpec(0, 2, ())
    assert dh.check_collinear_bound(s).margin == 0


@pytest.mark.parametrize("n", [2, 3, 5, 8, 13, 24])
def test_polygon_factor_coefficients(n):
    direct = dh.polygon_factor_direct(n)
    c = dh.cot_coeffs(n)
    assert np.max(np.abs(direct.real - c)) <= 1e-10 * np.max(c)
    assert np.max(np.abs(direct.imag)) <= 1e-10 * np.max(c)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_polygon_symmetric_and_unimodal(n):
    c = dh.cot_coeffs(n)
    assert np.allclose(c, c[::-1], rtol=1e-12)
    assert dh.is_unimodal(c)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_power_sums(n):
    for s in range(1, 2 * n):
        if s % 2 == 0 and (s // 2) % n == 0:
            continue
        assert dh.polygon_power_sums(n, s).real == pytest.approx(dh.power_sum_formula(n, s), abs=1e-12)
        assert abs(dh.polygon_power_sums(n, s).imag) < 1e-12


def test_phi_route_matches_f(rng):
    for _ in range(30):
        s = dh.random_spec(rng, int(rng.integers(0, 6)), int(rng.integers(2, 8)))
        assert dh.f_from_phi(s) == pytest.approx(dh.f_coeffs(s), rel=1e-12)
        for l in range(s.m + 1):
            lhs, rhs = dh.phi_product_identity(s, l)
            assert lhs == pytest.approx(rhs, rel=1e-10)


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (2, 4), (0, 3), (3, 5)])
def test_calibration_constant(m, n, rng):
    ratios = [dh.calibration_ratio(dh.random_spec(rng, m, n)) for _ in range(8)]
    assert np.std(ratios) / np.mean(ratios) < 1e-8
    assert np.mean(ratios) == pytest.approx(2.0 ** math.comb(n, 2), rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_bound_chain(m, n, seed):
    s = dh.random_spec(np.random.default_rng(seed), m, n)
    assert dh.coefficient_bound_chain(s).holds
    assert dh.check_collinear_bound(s).holds
    assert all(v > 0 for v in dh.f_coeffs(s))
