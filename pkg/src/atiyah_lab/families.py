"""Point configurations for the special families, with feasibility checks,
default parameter grids and the inequalities proven for each family."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import closed_forms as cf
from .closed_forms import DistanceData, d3
from .geometry import Configuration

DEGENERATE_HEIGHT = 1e-9


class InfeasibleParametersError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    """Tagged parameter record: family name plus its numeric fields."""
    family: str
    values: dict

    def to_json(self) -> dict:
        return {"family": self.family, **self.values}

    @classmethod
    def from_json(cls, data: dict) -> "FamilyParams":
        data = dict(data)
        family = data.pop("family")
        if family not in GENERATORS:
            raise ValueError(f"unknown family {family!r}")
        return cls(family, data)


@dataclass
class FamilyMember:
    family: str
    params: dict
    config: Configuration
    distances: DistanceData | None = None
    degenerate: bool = False
    extra: dict = field(default_factory=dict)


def _positive(**kw):
    for name, v in kw.items():
        if not (np.isfinite(v) and v > 0):
            raise InfeasibleParametersError(f"{name} must be positive, got {v}")


def _member(family, params, points, degenerate=False, distances=None, **extra) -> FamilyMember:
    config = Configuration(np.asarray(points, dtype=float))
    if distances is None and config.n == 4:
        distances = DistanceData.from_points(config.points)
    return FamilyMember(family, params, config, distances, degenerate, extra)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def make_parallelogram(a: float, b: float, theta: float) -> FamilyMember:
    """Sides r12 = r34 = a, r23 = r14 = b, angle theta at vertex 1.

    Diagonals: e = r13 with e^2 = a^2 + b^2 + 2ab cos(theta), f = r24.
    """
    _positive(a=a, b=b)
    if not 0 < theta < math.pi:
        raise InfeasibleParametersError("theta must lie in (0, pi)")
    c, s = math.cos(theta), math.sin(theta)
    pts = [(0, 0, 0), (a, 0, 0), (a + b * c, b * s, 0), (b * c, b * s, 0)]
    m = _member("parallelogram", {"a": a, "b": b, "theta": theta}, pts, degenerate=s < DEGENERATE_HEIGHT)
    m.extra.update(e=m.distances.r13, f=m.distances.r24)
    return m


def make_cyclic_quad(R: float, phis) -> FamilyMember:
    """Four points on a circle of radius R at increasing angles."""
    _positive(R=R)
    phis = [float(p) for p in phis]
    if len(phis) != 4:
        raise InfeasibleParametersError("need four angles")
    if any(b <= a for a, b in zip(phis, phis[1:])) or phis[3] - phis[0] >= 2 * math.pi:
        raise InfeasibleParametersError("angles must be strictly increasing within one turn")
    pts = [(R * math.cos(p), R * math.sin(p), 0) for p in phis]
    return _member("cyclic_quad", {"R": R, "phis": phis}, pts)


def circumradius(a: float, b: float, c: float) -> float:
    return a * b * c / math.sqrt((a + b + c) * d3(a, b, c))


def _triangle(a, b, c):
    """Vertices 1, 2, 3 with r23 = a, r13 = b, r12 = c, in the z = 0 plane."""
    x3 = (b * b + c * c - a * a) / (2 * c)
    y3 = math.sqrt(max(b * b - x3 * x3, 0.0))
    return np.array([(0.0, 0.0, 0.0), (c, 0.0, 0.0), (x3, y3, 0.0)])


def make_upright(a: float, b: float, c: float, d: float) -> FamilyMember:
    """Base triangle with r23 = a, r13 = b, r12 = c; apex 4 at distance d from each."""
    _positive(a=a, b=b, c=c, d=d)
    if d3(a, b, c) <= 0 or min(a + b - c, b + c - a, c + a - b) <= 0:
        raise InfeasibleParametersError("base sides violate the strict triangle inequality")
    R = circumradius(a, b, c)
    if d < R * (1 - 1e-12):
        raise InfeasibleParametersError(f"apex below circumradius: d = {d} < R = {R}")
    base = _triangle(a, b, c)
    # circumcenter of the base
    (x1, y1, _), (x2, y2, _), (x3, y3, _) = base
    den = 2 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2))
    s1, s2, s3 = x1 * x1 + y1 * y1, x2 * x2 + y2 * y2, x3 * x3 + y3 * y3
    ux = (s1 * (y2 - y3) + s2 * (y3 - y1) + s3 * (y1 - y2)) / den
    uy = (s1 * (x3 - x2) + s2 * (x1 - x3) + s3 * (x2 - x1)) / den
    base = base - np.array([ux, uy, 0.0])
    height = math.sqrt(max(d * d - R * R, 0.0))
    pts = np.vstack([base, [(0.0, 0.0, height)]])
    return _member("upright", {"a": a, "b": b, "c": c, "d": d}, pts,
                   degenerate=height < DEGENERATE_HEIGHT * d, circumradius=R)


def embed_tetrahedron(dd: DistanceData) -> np.ndarray:
    """Coordinates for four points with the given distances (vertex 4 at the origin).

    Uses the Gram matrix of the edge vectors from vertex 4, whose determinant
    is 36 V^2 (the Cayley-Menger value); a negative eigenvalue means the
    distances are not realizable in R^3.
    """
    r2 = {(i, j): float(dd.r(i, j)) ** 2 for i, j in itertools.permutations(range(1, 5), 2)}
    gram = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            di, dj = r2[i + 1, 4], r2[j + 1, 4]
            gram[i, j] = di if i == j else (di + dj - r2[i + 1, j + 1]) / 2
    w, v = np.linalg.eigh(gram)
    scale = max(1.0, float(np.abs(gram).max()))
    if w.min() < -1e-10 * scale:
        raise InfeasibleParametersError(f"Cayley-Menger failure: distances not realizable (eigenvalue {w.min():.3g})")
    coords = v * np.sqrt(np.clip(w, 0, None))
    return np.vstack([coords, np.zeros((1, 3))])


def make_edge_tangential(t1: float, t2: float, t3: float, t4: float) -> FamilyMember:
    _positive(t1=t1, t2=t2, t3=t3, t4=t4)
    t = (t1, t2, t3, t4)
    dd = DistanceData(*(t[i - 1] + t[j - 1] for i, j in cf.PAIRS))
    if cf.vol2_144(dd) < 0:
        raise InfeasibleParametersError("Cayley-Menger failure: negative squared volume")
    pts = embed_tetrahedron(dd)
    return _member("edge_tangential", {"t": list(t)}, pts, distances=dd)


def make_trirectangular(x: float, y: float, z: float) -> FamilyMember:
    """Right-angled corner at vertex 4; legs r14 = x, r24 = y, r34 = z."""
    _positive(x=x, y=y, z=z)
    pts = [(x, 0, 0), (0, y, 0), (0, 0, z), (0, 0, 0)]
    dd = DistanceData(math.hypot(x, y), math.hypot(x, z), x, math.hypot(y, z), y, z)
    return _member("trirectangular", {"x": x, "y": y, "z": z}, pts, distances=dd)


def make_semiregular(u: float, v: float, w: float) -> FamilyMember:
    """Alternate corners of the box [-u, u] x [-v, v] x [-w, w].

    Opposite edges: r12 = r34 = 2 sqrt(v^2 + w^2), r13 = r24 = 2 sqrt(u^2 + w^2),
    r14 = r23 = 2 sqrt(u^2 + v^2).
    """
    _positive(u=u, v=v, w=w)
    pts = [(u, v, w), (u, -v, -w), (-u, v, -w), (-u, -v, w)]
    a, b, c = 2 * math.hypot(v, w), 2 * math.hypot(u, w), 2 * math.hypot(u, v)
    return _member("semiregular", {"u": u, "v": v, "w": w}, pts, distances=DistanceData(a, b, c, c, b, a))


def wedge_feasibility(a, b, x, y) -> list:
    """Names of the violated realizability conditions (empty when feasible)."""
    bad = []
    for name, val in (("xy + b^2 >= a^2", x * y + b * b - a * a),
                      ("xy + a^2 >= b^2", x * y + a * a - b * b),
                      ("a^2 + b^2 >= xy", a * a + b * b - x * y),
                      ("2a^2 + 2b^2 >= x^2 + y^2", 2 * a * a + 2 * b * b - x * x - y * y)):
        if val < 0:
            bad.append(name)
    for side, name in ((x, "x"), (y, "y")):
        if d3(a, b, side) < 0:
            bad.append(f"triangle inequality for (a, b, {name})")
    return bad


def make_wedge(a: float, b: float, x: float, y: float) -> FamilyMember:
    """r12 = x, r34 = y, r13 = r24 = a, r23 = r14 = b; half-turn symmetric about the z axis."""
    _positive(a=a, b=b, x=x, y=y)
    bad = wedge_feasibility(a, b, x, y)
    if bad:
        raise InfeasibleParametersError("infeasible wedge: " + "; ".join(bad))
    p = (a * a - b * b) / (2 * x)
    q = math.sqrt(max(y * y / 4 - p * p, 0.0))
    height = math.sqrt(max((2 * a * a + 2 * b * b - x * x - y * y) / 4, 0.0))
    pts = [(-x / 2, 0, 0), (x / 2, 0, 0), (p, q, height), (-p, -q, height)]
    return _member("wedge", {"a": a, "b": b, "x": x, "y": y}, pts, distances=DistanceData(x, a, b, b, a, y),
                   degenerate=height < DEGENERATE_HEIGHT * max(a, b))


def make_collinear(abscissae) -> FamilyMember:
    xs = [float(v) for v in abscissae]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InfeasibleParametersError("abscissae must be strictly increasing")
    return _member("collinear", {"abscissae": xs}, [(v, 0, 0) for v in xs])


def make_collinear_plus(abscissae, b: float = 1.0) -> FamilyMember:
    """Points (a_i, 0, 0) plus (0, 0, b); extra['lambdas'] = a_i + sqrt(a_i^2 + b^2)."""
    xs = [float(v) for v in abscissae]
    if any(q <= p for p, q in zip(xs, xs[1:])):
        raise InfeasibleParametersError("abscissae must be strictly increasing")
    if b == 0:
        raise InfeasibleParametersError("b must be nonzero")
    lams = [v + math.hypot(v, b) for v in xs]
    pts = [(v, 0, 0) for v in xs] + [(0, 0, b)]
    return _member("almost_collinear", {"abscissae": xs, "b": b}, pts, lambdas=lams)


def make_dihedral(m: int, n: int, a=()) -> FamilyMember:
    """m points (a_i, 0, 0) and the n points (0, Re(-w^j), Im(-w^j)), w = exp(2 pi i / n)."""
    a = [float(v) for v in a]
    if m < 0 or n < 2 or len(a) != m:
        raise InfeasibleParametersError("need n >= 2 and exactly m abscissae")
    if any(q <= p for p, q in zip(a, a[1:])):
        raise InfeasibleParametersError("abscissae must be strictly increasing")
    ring = [-np.exp(2j * np.pi * j / n) for j in range(n)]
    pts = [(v, 0, 0) for v in a] + [(0, z.real, z.imag) for z in ring]
    return _member("dihedral", {"m": m, "n": n, "a": a}, pts)


GENERATORS = {
    "parallelogram": lambda p: make_parallelogram(p["a"], p["b"], p["theta"]),
    "cyclic_quad": lambda p: make_cyclic_quad(p["R"], p["phis"]),
    "upright": lambda p: make_upright(p["a"], p["b"], p["c"], p["d"]),
    "edge_tangential": lambda p: make_edge_tangential(*p["t"]),
    "trirectangular": lambda p: make_trirectangular(p["x"], p["y"], p["z"]),
    "semiregular": lambda p: make_semiregular(p["u"], p["v"], p["w"]),
    "wedge": lambda p: make_wedge(p["a"], p["b"], p["x"], p["y"]),
    "collinear": lambda p: make_collinear(p["abscissae"]),
    "almost_collinear": lambda p: make_collinear_plus(p["abscissae"], p.get("b", 1.0)),
    "dihedral": lambda p: make_dihedral(p["m"], p["n"], p.get("a", ())),
}


def build(params: FamilyParams) -> FamilyMember:
    return GENERATORS[params.family](params.values)


# ---------------------------------------------------------------------------
# grids
# ---------------------------------------------------------------------------

def grid_from_spec(family: str, spec: dict) -> list:
    """Cartesian grid from {"param": {"min": .., "max": .., "steps": ..}} or fixed values."""
    axes = {}
    for name, rng in spec.items():
        if isinstance(rng, dict):
            axes[name] = list(np.linspace(rng["min"], rng["max"], int(rng["steps"])))
        else:
            axes[name] = [rng]
    out = []
    for combo in itertools.product(*axes.values()):
        vals = {k: float(v) if not isinstance(v, list) else v for k, v in zip(axes, combo)}
        if family == "edge_tangential":
            vals = {"t": [vals.pop(f"t{i}") for i in range(1, 5)]}
        if family == "cyclic_quad":
            vals = {"R": vals.get("R", 1.0), "phis": [vals.pop(f"phi{i}") for i in range(1, 5)]}
        out.append(FamilyParams(family, vals))
    return out


def default_grid(family: str) -> list:
    """Deterministic grids with at least 200 feasible points each (infeasible ones included for wedges)."""
    g = []
    if family == "parallelogram":
        for a, b, th in itertools.product(np.linspace(0.4, 2.5, 6), np.linspace(0.5, 2.0, 6),
                                          np.linspace(0.15, math.pi - 0.15, 8)):
            g.append(FamilyParams(family, {"a": float(a), "b": float(b), "theta": float(th)}))
    elif family == "cyclic_quad":
        angles = np.linspace(0.25, 2 * math.pi - 0.25, 13)
        for p2, p3, p4 in itertools.combinations(angles, 3):
            g.append(FamilyParams(family, {"R": 1.0, "phis": [0.0, float(p2), float(p3), float(p4)]}))
    elif family == "upright":
        for b, c in itertools.product(np.linspace(0.55, 1.6, 7), repeat=2):
            if min(1 + b - c, b + c - 1, c + 1 - b) <= 0.05:
                continue
            R = circumradius(1.0, b, c)
            for f in (1.0005, 1.05, 1.3, 2.0, 4.0):
                g.append(FamilyParams(family, {"a": 1.0, "b": float(b), "c": float(c), "d": float(R * f)}))
    elif family == "edge_tangential":
        for t2, t3, t4 in itertools.product(np.geomspace(0.2, 3.0, 7), repeat=3):
            g.append(FamilyParams(family, {"t": [1.0, float(t2), float(t3), float(t4)]}))
    elif family == "trirectangular":
        for y, z in itertools.product(np.geomspace(0.1, 10, 15), repeat=2):
            g.append(FamilyParams(family, {"x": 1.0, "y": float(y), "z": float(z)}))
    elif family == "semiregular":
        for v, w in itertools.product(np.geomspace(0.1, 10, 15), repeat=2):
            g.append(FamilyParams(family, {"u": 1.0, "v": float(v), "w": float(w)}))
    elif family == "wedge":
        for b, x, y in itertools.product(np.linspace(0.5, 1.5, 9), np.linspace(0.1, 2.4, 10), np.linspace(0.1, 2.4, 10)):
            g.append(FamilyParams(family, {"a": 1.0, "b": float(b), "x": float(x), "y": float(y)}))
    else:
        raise ValueError(f"no default grid for {family!r}")
    return g


SWEPT_FAMILIES = ("parallelogram", "cyclic_quad", "upright", "edge_tangential", "trirectangular", "semiregular", "wedge")


# ---------------------------------------------------------------------------
# family-specific inequalities, in units of 64 prod(r)
# ---------------------------------------------------------------------------

def _fp_gap(dd, strong):
    return float(cf.four_points_gap(dd, strong)) / (64 * float(dd.product()))


def family_inequalities(member: FamilyMember) -> dict:
    """{name: normalized margin} for the inequalities proven for this family.

    Four-point margins are divided by 64 prod(r) so they are scale free.
    """
    dd = member.distances
    fam = member.family
    out: dict = {}
    if dd is None:
        return out
    scale = 64 * float(dd.product())
    reD4 = float(cf.re_D4(dd))
    if fam == "parallelogram":
        a, b = member.params["a"], member.params["b"]
        e, f = float(dd.r13), float(dd.r24)
        de, df = d3(a, b, e), d3(a, b, f)
        lhs = reD4 - 2 * de * df - 8 * (a * b * f * de + a * b * e * df) - 64 * a * a * b * b * e * f
        out["strengthened C3"] = lhs / scale
        out["FP-strong"] = _fp_gap(dd, True)
    elif fam == "cyclic_quad":
        tq = cf.trig_quantities(dd)
        for l, c in enumerate(tq.face_c, 1):
            out[f"c_{l} >= 2"] = c - 2
            out[f"c_{l} <= 9/4"] = 2.25 - c
        out["FP-weak"] = _fp_gap(dd, False)
    elif fam == "upright":
        rhs = 64 * float(dd.product())
        for spokes, face, dface in cf.face_weight_terms(dd):
            rhs += 4.25 * float(spokes) * float(dface)
        out["strong four points with 4 * 288V^2"] = (reD4 - 4 * float(cf.vol2_288(dd)) - rhs) / scale
    elif fam == "edge_tangential":
        out["FP-strong"] = _fp_gap(dd, True)
    elif fam == "trirectangular":
        out["Re D4 >= 64 prod r + 288V^2"] = (reD4 - 64 * float(dd.product()) - float(cf.vol2_288(dd))) / scale
    elif fam == "semiregular":
        out["FP-weak"] = _fp_gap(dd, False)
        out["FP-strong"] = _fp_gap(dd, True)
    elif fam == "wedge":
        a, b, x, y = (member.params[k] for k in "abxy")
        dx, dy = d3(a, b, x), d3(a, b, y)
        out["strengthened C3"] = (reD4 - (dx + 8 * a * b * x) * (dy + 8 * a * b * y) - 3 * dx * dy) / scale
    return out


def wedge_formula_errors(member: FamilyMember) -> dict:
    """Relative deviation of both explicit wedge formulas from the general Re D4."""
    from .symfunc.identities import wedge_first_formula, wedge_second_formula
    a, b, x, y = (member.params[k] for k in "abxy")
    ref = float(cf.re_D4(member.distances))
    return {
        "first": abs(wedge_first_formula(a, b, x, y) - ref) / abs(ref),
        "second": abs(wedge_second_formula(a, b, x, y) - ref) / abs(ref),
    }
