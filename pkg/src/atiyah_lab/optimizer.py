"""Minimize E = -log|D| over configurations modulo translation, rotation and scale."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from .geometry import Configuration, batch_abs
from .checkers import config_to_json, thread_cap

C2_GUARD = 1 - 1e-9
FD_STEP = 1e-6


class C2ViolationFound(RuntimeError):
    def __init__(self, points, value):
        super().__init__(f"|D| = {value!r} < 1 during descent")
        self.points = np.array(points)
        self.value = value


@dataclass
class OptOptions:
    restarts: int = 16
    tol: float = 1e-12
    max_iters: int = 6000
    polish_rounds: int = 3


@dataclass
class OptTrace:
    energies: list
    final_points: np.ndarray
    final_energy: float
    restarts_used: int
    seed: int
    converged: bool
    initial_energy: float
    restart_energies: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "initial_energy": self.initial_energy,
            "final_energy": self.final_energy,
            "restart_energies": self.restart_energies,
            "energies": self.energies,
            "final_config": config_to_json(Configuration(self.final_points)),
        }


def normalize_gauge(points) -> np.ndarray:
    """Centroid at the origin, unit root-mean-square radius."""
    p = np.asarray(points, dtype=float)
    p = p - p.mean(axis=0)
    rms = math.sqrt(float((p * p).sum(axis=1).mean()))
    if rms == 0:
        raise ValueError("all points coincide")
    return p / rms


def _abs_value(points) -> float:
    return float(batch_abs(points[None])[0])


def energy_of(points) -> float:
    return -math.log(_abs_value(normalize_gauge(points)))


def _objective(x, n):
    p = x.reshape(n, 3)
    try:
        p = normalize_gauge(p)
    except ValueError:
        return math.inf
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)[np.triu_indices(n, 1)]
    if d.min() < 1e-9:
        return math.inf
    val = _abs_value(p)
    if val < C2_GUARD:
        raise C2ViolationFound(p, val)
    return -math.log(val)


def fd_gradient(points, step: float = FD_STEP) -> np.ndarray:
    """Central-difference gradient of the energy in the gauge-fixed coordinates."""
    p = normalize_gauge(points)
    x = p.ravel()
    n = len(p)
    g = np.zeros_like(x)
    for i in range(len(x)):
        e = np.zeros_like(x)
        e[i] = step
        g[i] = (_objective(x + e, n) - _objective(x - e, n)) / (2 * step)
    return g.reshape(p.shape)


def _restart(args):
    n, seed, index, opts = args
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))
    x0 = normalize_gauge(rng.normal(size=(n, 3)))
    start = _objective(x0.ravel(), n)
    energies = [start]

    def record(xk):
        energies.append(_objective(xk, n))

    x = x0.ravel()
    converged = False
    current = start
    for _ in range(opts.polish_rounds):
        res = minimize(_objective, x, args=(n,), method="Nelder-Mead", callback=record,
                       options={"xatol": 1e-8, "fatol": opts.tol, "maxiter": opts.max_iters, "adaptive": True})
        x = normalize_gauge(res.x.reshape(n, 3)).ravel()
        converged = bool(res.success)
        # restarting the simplex around the best point guards against premature collapse
        if current - res.fun < 1e-10:
            break
        current = res.fun
    best = min(energies)
    # keep the trace monotone: running minimum of accepted iterates
    trace = list(np.minimum.accumulate(energies))
    return best, x.reshape(n, 3), trace, converged, start


def minimize_energy(n: int, seed: int = 0, options: OptOptions | None = None, workers: int | None = None) -> OptTrace:
    if n < 3:
        raise ValueError("minimization needs n >= 3")
    opts = options or OptOptions()
    workers = workers or thread_cap()
    jobs = [(n, seed, i, opts) for i in range(opts.restarts)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_restart, jobs))
    else:
        results = [_restart(j) for j in jobs]
    best_idx = min(range(len(results)), key=lambda i: (results[i][0], i))
    best, pts, trace, converged, start = results[best_idx]
    return OptTrace(trace, normalize_gauge(pts), best, len(results), seed, converged, start,
                    [r[0] for r in results])


def sorted_distance_spectrum(points) -> np.ndarray:
    p = np.asarray(points, dtype=float)
    d = np.linalg.norm(p[:, None] - p[None], axis=-1)[np.triu_indices(len(p), 1)]
    d = np.sort(d)
    return d / d.mean()


def trigonal_bipyramid(height: float = 1.0) -> np.ndarray:
    """Unit equilateral equator plus poles at +-height; height 1 is the Thomson solution."""
    eq = [(math.cos(2 * math.pi * k / 3), math.sin(2 * math.pi * k / 3), 0.0) for k in range(3)]
    return np.array(eq + [(0, 0, height), (0, 0, -height)])


def best_bipyramid_height() -> float:
    """Pole height minimizing the energy within the bipyramid family."""
    res = minimize_scalar(lambda h: energy_of(trigonal_bipyramid(h)), bounds=(0.5, 2.0),
                          method="bounded", options={"xatol": 1e-12})
    return float(res.x)


def regular_tetrahedron() -> np.ndarray:
    return np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)


def equilateral_triangle() -> np.ndarray:
    return np.array([[1, 0, 0], [-0.5, math.sqrt(3) / 2, 0], [-0.5, -math.sqrt(3) / 2, 0]])


def random_energy_floor(n: int, count: int, seed: int) -> float:
    """Smallest energy among random gaussian configurations (sanity comparison)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(10**6,)))
    vals = batch_abs(rng.normal(size=(count, n, 3)))
    return float(-np.log(vals.max()))
