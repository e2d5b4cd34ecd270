"""Verdicts for C1, C2, C3 and the four points inequalities; random scans and family sweeps."""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from .families import (FamilyParams, InfeasibleParametersError, build, family_inequalities)
from .geometry import Configuration, MARGINAL_BAND, as_configuration, atiyah_determinant, batch_abs, validate

C1_THRESHOLD = 1e-8
# margins this close to zero are equality cases up to rounding and count as holding
MARGIN_TOL = 1e-12
CROSS_TOL = 1e-8
CONJECTURES = ("C1", "C2", "C3", "FP-weak", "FP-strong")
DISTRIBUTIONS = ("gaussian", "uniform-ball", "near-collinear")
CHUNK = 2000


class InternalMismatchError(RuntimeError):
    """Two independent evaluation routes disagree."""


@dataclass
class Verdict:
    conjecture: str
    holds: bool
    margin: float
    precision_used: str
    config_fingerprint: str
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"conjecture": self.conjecture, "holds": self.holds, "margin": self.margin,
                "precision_used": self.precision_used, "config_fingerprint": self.config_fingerprint,
                **({"detail": self.detail} if self.detail else {})}


def _verdict(name, margin, precision, fp, detail=None) -> Verdict:
    margin = float(margin)
    if -MARGIN_TOL < margin < 0:
        margin = 0.0
    return Verdict(name, margin >= 0, margin, precision, fp, detail or {})


def config_to_json(config: Configuration) -> dict:
    """Points as shortest round-trip decimals plus exact hex floats."""
    pts = config.points
    return {"points": pts.tolist(), "points_hex": [[float(v).hex() for v in row] for row in pts]}


@dataclass
class Report:
    verdicts: list
    min_margin: float
    argmin_config: Configuration | None
    seed: int | None
    sample_count: int
    min_margins: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "sample_count": self.sample_count,
            "min_margin": self.min_margin,
            "min_margins": self.min_margins,
            "argmin_config": None if self.argmin_config is None else config_to_json(self.argmin_config),
            "verdicts": [v.to_dict() for v in self.verdicts],
            "violations": self.violations,
        }


# ---------------------------------------------------------------------------
# single configurations
# ---------------------------------------------------------------------------

def check_c1(config, precision: str = "double") -> Verdict:
    config = as_configuration(config)
    val = atiyah_determinant(config, precision)
    if val.normalized_abs < MARGINAL_BAND and val.precision_used == "double":
        val = atiyah_determinant(config, "extended:256")
    return Verdict("C1", val.normalized_abs > C1_THRESHOLD, val.normalized_abs, val.precision_used, val.fingerprint)


def check_c2(config, precision: str = "double") -> Verdict:
    config = as_configuration(config)
    val = atiyah_determinant(config, precision)
    return _verdict("C2", val.excess, val.precision_used, val.fingerprint)


def c3_margin(config, precision: str = "double") -> tuple[float, str, dict]:
    """|D_n|^(n-2) minus the product of the n subconfiguration values."""
    config = as_configuration(config)
    n = config.n
    if n < 3:
        raise ValueError("C3 needs at least three points")
    full = atiyah_determinant(config, precision)
    subs = [atiyah_determinant(config.without(k), precision) for k in range(n)]
    precision = next((v.precision_used for v in [full, *subs] if v.precision_used != "double"), "double")
    margin = full.normalized_abs ** (n - 2) - math.prod(v.normalized_abs for v in subs)
    return margin, precision, {"full": full, "subs": subs}


def check_c3(config, cross_check: bool = True, precision: str = "double") -> Verdict:
    config = as_configuration(config)
    margin, precision, parts = c3_margin(config, precision)
    detail = {}
    if config.n == 4 and cross_check:
        dd = cf.DistanceData.from_points(config.points)
        im = parts["full"].raw.imag * 64 * float(dd.product())
        closed = cf.c3_four_point_margin(dd, im)
        detail["closed_form_margin"] = closed
        scale = max(1.0, abs(parts["full"].normalized_abs) ** 2)
        if abs(closed - margin) > CROSS_TOL * scale:
            raise InternalMismatchError(f"C3 routes disagree: numeric {margin} vs closed form {closed}")
    return _verdict("C3", margin, precision, config.fingerprint(), detail)


def check_four_points(config) -> tuple[Verdict, Verdict]:
    """Weak and strong four points verdicts; margins in units of 64 prod(r)."""
    config = as_configuration(config)
    if config.n != 4:
        raise ValueError("four points inequalities need n = 4")
    validate(config)
    dd = cf.DistanceData.from_points(config.points)
    scale = 64 * dd.product()
    fp = config.fingerprint()
    weak = _verdict("FP-weak", cf.four_points_gap(dd) / scale, "double", fp)
    strong = _verdict("FP-strong", cf.four_points_gap(dd, strong=True) / scale, "double", fp)
    if strong.holds and not weak.holds:
        raise InternalMismatchError("strong four points inequality holds but the weak one fails")
    if weak.holds and not check_c3(config, cross_check=False).holds:
        raise InternalMismatchError("weak four points inequality holds but C3 fails")
    return weak, strong


def verify(config, precision: str = "double") -> list:
    """All applicable verdicts for one configuration."""
    config = as_configuration(config)
    out = [check_c1(config, precision), check_c2(config, precision)]
    if config.n >= 3:
        out.append(check_c3(config, precision=precision))
    if config.n == 4:
        out.extend(check_four_points(config))
    return out


# ---------------------------------------------------------------------------
# random scans
# ---------------------------------------------------------------------------

def sample_points(rng: np.random.Generator, count: int, n: int, distribution: str, jitter: float = 0.05) -> np.ndarray:
    if distribution == "gaussian":
        return rng.normal(size=(count, n, 3))
    if distribution == "uniform-ball":
        v = rng.normal(size=(count, n, 3))
        v /= np.linalg.norm(v, axis=-1, keepdims=True)
        return v * rng.random((count, n, 1)) ** (1 / 3)
    if distribution == "near-collinear":
        pts = np.zeros((count, n, 3))
        pts[..., 0] = rng.normal(size=(count, n))
        return pts + jitter * rng.normal(size=(count, n, 3))
    raise ValueError(f"unknown distribution {distribution!r}")


def _chunk_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _scan_chunk(args):
    """Margins for one chunk: rows of (C1, C2, C3) and the chunk's points."""
    n, count, seed, index, distribution, jitter = args
    pts = sample_points(_chunk_rng(seed, index), count, n, distribution, jitter)
    full = batch_abs(pts)
    c2 = full - 1
    if n >= 3:
        prod = np.ones(count)
        for k in range(n):
            prod *= batch_abs(np.delete(pts, k, axis=1))
        c3 = full ** (n - 2) - prod
    else:
        c3 = np.full(count, np.nan)
    return np.stack([full, c2, c3], axis=1), pts


def thread_cap() -> int:
    try:
        return max(1, int(os.environ.get("ATIYAH_LAB_THREADS", "1")))
    except ValueError:
        return 1


def scan_random(n: int, samples: int, seed: int, distribution: str = "gaussian",
                jitter: float = 0.05, workers: int | None = None) -> Report:
    """Deterministic Monte Carlo scan; chunk k always draws from stream (seed, k)."""
    if n < 2 or samples < 1:
        raise ValueError("need n >= 2 and samples >= 1")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}")
    workers = workers or thread_cap()
    jobs = []
    for index, start in enumerate(range(0, samples, CHUNK)):
        jobs.append((n, min(CHUNK, samples - start), seed, index, distribution, jitter))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, jobs))
    else:
        results = [_scan_chunk(j) for j in jobs]
    margins = np.concatenate([r[0] for r in results])
    points = np.concatenate([r[1] for r in results])

    names = ("C1", "C2", "C3")
    min_margins, verdicts, violations = {}, [], []
    argmin_config = None
    overall = math.inf
    for col, name in enumerate(names):
        if name == "C3" and n < 3:
            continue
        vals = margins[:, col]
        check = {"C1": check_c1, "C2": check_c2, "C3": lambda c: check_c3(c, cross_check=False)}[name]
        # marginal samples get an extended-precision re-evaluation
        for i in np.nonzero(vals < MARGINAL_BAND)[0]:
            cfg = Configuration(points[i])
            v = check(cfg)
            vals[i] = v.margin
            if not v.holds:
                violations.append({"sample": int(i), "verdict": v.to_dict(), "config": config_to_json(cfg)})
        i = int(np.argmin(vals))
        cfg = Configuration(points[i])
        v = check(cfg)
        v.detail["sample"] = i
        verdicts.append(v)
        min_margins[name] = v.margin
        if name != "C1" and v.margin < overall:
            overall, argmin_config = v.margin, cfg
    if argmin_config is None:
        argmin_config = Configuration(points[verdicts[0].detail["sample"]])
    return Report(verdicts, min(v.margin for v in verdicts), argmin_config, seed, samples, min_margins, violations)


# ---------------------------------------------------------------------------
# family sweeps
# ---------------------------------------------------------------------------

# inequalities that are theorems for every family member; a violation is a bug
PROVEN = ("C2", "C3")


def _sweep_point(params: FamilyParams) -> dict:
    row = {"params": params.to_json()}
    try:
        member = build(params)
    except InfeasibleParametersError as exc:
        row["status"] = f"skipped: {exc}"
        return row
    row["status"] = "degenerate" if member.degenerate else "ok"
    cfg = member.config
    margins = {"C2": check_c2(cfg).margin}
    if cfg.n >= 3:
        margins["C3"] = check_c3(cfg).margin
    if cfg.n == 4:
        weak, strong = check_four_points(cfg)
        margins["FP-weak"], margins["FP-strong"] = weak.margin, strong.margin
    family = {k: (0.0 if -MARGIN_TOL < v < 0 else v) for k, v in family_inequalities(member).items()}
    row["margins"] = margins
    row["family"] = family
    row["fingerprint"] = cfg.fingerprint()
    row["points"] = cfg.points.tolist()
    bad = [k for k in PROVEN if k in margins and margins[k] < 0] + [k for k, v in family.items() if v < 0]
    row["violations"] = bad
    return row


def family_sweep(grid, workers: int | None = None) -> Report:
    grid = [g if isinstance(g, FamilyParams) else FamilyParams.from_json(g) for g in grid]
    workers = workers or thread_cap()
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_point, grid, chunksize=16))
    else:
        rows = [_sweep_point(g) for g in grid]
    evaluated = [r for r in rows if "margins" in r]
    min_margins: dict = {}
    arg: dict = {}
    for idx, r in enumerate(evaluated):
        for k, v in list(r["margins"].items()) + [(f"family:{k}", v) for k, v in r["family"].items()]:
            if v < min_margins.get(k, math.inf):
                min_margins[k], arg[k] = v, idx
    verdicts = []
    for k, v in min_margins.items():
        verdicts.append(_verdict(k, v, "double", evaluated[arg[k]]["fingerprint"], {"grid_row": arg[k]}))
    violations = [{"row": r, "failed": r["violations"]} for r in evaluated if r["violations"]]
    proven_keys = [k for k in min_margins if k in PROVEN or k.startswith("family:")]
    if proven_keys:
        worst = min(proven_keys, key=lambda k: min_margins[k])
        argmin = Configuration(np.array(evaluated[arg[worst]]["points"]))
        min_margin = min(v.margin for v in verdicts)
    else:
        argmin, min_margin = None, math.nan
    return Report(verdicts, min_margin, argmin, None, len(grid), min_margins, violations, rows)
