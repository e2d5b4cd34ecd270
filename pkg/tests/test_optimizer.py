import math

import numpy as np
import pytest

from atiyah_lab import optimizer as opt


def test_normalize_gauge():
    p = opt.normalize_gauge(np.array([[0, 0, 0], [2, 0, 0], [0, 4, 0.0]]))
    assert np.allclose(p.mean(axis=0), 0)
    assert (p * p).sum(axis=1).mean() == pytest.approx(1)
    with pytest.raises(ValueError):
        opt.normalize_gauge(np.ones((3, 3)))


def test_reference_energies():
    assert opt.energy_of(opt.equilateral_triangle()) == pytest.approx(-math.log(9 / 8))
    assert opt.energy_of(opt.regular_tetrahedron()) == pytest.approx(-math.log(25 / 16))


def test_gradient_vanishes_at_tetrahedron():
    assert np.max(np.abs(opt.fd_gradient(opt.regular_tetrahedron()))) < 1e-6


def test_spectrum_normalized():
    s = opt.sorted_distance_spectrum(opt.regular_tetrahedron())
    assert np.allclose(s, 1)


def test_bipyramid_height():
    h = opt.best_bipyramid_height()
    assert h == pytest.approx(1.0337290, abs=1e-6)
    assert opt.energy_of(opt.trigonal_bipyramid(h)) < opt.energy_of(opt.trigonal_bipyramid(1.0))


def test_minimize_n3_deterministic():
    o = opt.OptOptions(restarts=3)
    a = opt.minimize_energy(3, seed=4, options=o, workers=1)
    b = opt.minimize_energy(3, seed=4, options=o, workers=1)
    assert a.to_dict() == b.to_dict()
    assert a.final_energy == pytest.approx(-math.log(9 / 8), abs=1e-6)
    assert all(x >= y for x, y in zip(a.energies, a.energies[1:]))


def test_minimize_beats_random():
    tr = opt.minimize_energy(4, seed=1, options=opt.OptOptions(restarts=2), workers=1)
    assert tr.final_energy <= opt.random_energy_floor(4, 2000, 1)


def test_minimize_rejects_small_n():
    with pytest.raises(ValueError):
        opt.minimize_energy(2)


@pytest.mark.slow
def test_n6_octahedron():
    octa = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float)
    tr = opt.minimize_energy(6, seed=0, options=opt.OptOptions(restarts=6), workers=1)
    assert tr.final_energy == pytest.approx(opt.energy_of(octa), abs=1e-8)
    s, r = opt.sorted_distance_spectrum(tr.final_points), opt.sorted_distance_spectrum(octa)
    assert np.max(np.abs(s - r) / r) < 1e-6
