"""Closed formulas for three and four points in terms of pairwise distances.

All polynomial formulas use only ring operations, so they accept floats, numpy
arrays, Fractions or SymPoly values for the distances.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, fields

import numpy as np

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
# faces listed in cyclic order, face l omits vertex l
FACES = {1: (2, 3, 4), 2: (3, 4, 1), 3: (4, 1, 2), 4: (1, 2, 3)}
OPPOSITE = (((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3)))


@dataclass(frozen=True)
class DistanceData:
    r12: object
    r13: object
    r14: object
    r23: object
    r24: object
    r34: object

    def r(self, i: int, j: int):
        if i == j:
            raise ValueError("no self distance")
        i, j = min(i, j), max(i, j)
        return getattr(self, f"r{i}{j}")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def product(self):
        out = 1
        for i, j in PAIRS:
            out = out * self.r(i, j)
        return out

    @classmethod
    def from_points(cls, points) -> "DistanceData":
        p = np.asarray(points, dtype=float)
        if p.shape[0] != 4:
            raise ValueError("need four points")
        return cls(*(float(np.linalg.norm(p[i - 1] - p[j - 1])) for i, j in PAIRS))

    @classmethod
    def from_mapping(cls, data: dict) -> "DistanceData":
        return cls(*(data[f"r{i}{j}"] for i, j in PAIRS))

    def check_positive(self) -> None:
        for i, j in PAIRS:
            v = self.r(i, j)
            if not float(v) > 0:
                raise ValueError(f"r{i}{j} must be positive, got {v}")


# ---------------------------------------------------------------------------
# three points
# ---------------------------------------------------------------------------

def d3(a, b, c):
    """(a + b - c)(b + c - a)(c + a - b); 16 area^2 / (a + b + c) for a triangle."""
    return (a + b - c) * (b + c - a) * (c + a - b)


def D3(a, b, c):
    """Unnormalized three-point determinant."""
    return d3(a, b, c) + 8 * a * b * c


def normalized_D3(a, b, c):
    return D3(a, b, c) / (8 * a * b * c)


def triangle_angles(a, b, c) -> tuple[float, float, float]:
    """Angles opposite sides a, b, c."""
    def ang(x, y, z):
        return math.acos(max(-1.0, min(1.0, (y * y + z * z - x * x) / (2 * y * z))))
    return ang(a, b, c), ang(b, c, a), ang(c, a, b)


def half_angle_cos2_sum(a, b, c) -> float:
    return sum(math.cos(t / 2) ** 2 for t in triangle_angles(a, b, c))


def D3_trig(a, b, c) -> float:
    """Same value as D3 from the half-angle cosines of the triangle."""
    return 4 * a * b * c * half_angle_cos2_sum(a, b, c)


# ---------------------------------------------------------------------------
# four points
# ---------------------------------------------------------------------------

def _face(dd: DistanceData, l: int):
    i, j, k = FACES[l]
    return i, j, k


def opposite_products(dd: DistanceData):
    return tuple(dd.r(*p) * dd.r(*q) for p, q in OPPOSITE)


def vol2_144(dd: DistanceData):
    """144 V^2 from the Cayley-Menger expansion."""
    total = 0
    for (p, q) in OPPOSITE:
        others = [e for e in PAIRS if e not in (p, q)]
        rp2, rq2 = dd.r(*p) ** 2, dd.r(*q) ** 2
        s = 0
        for e in others:
            s = s + dd.r(*e) ** 2
        total = total + rp2 * rq2 * (s - rp2 - rq2)
    for l in range(1, 5):
        i, j, k = _face(dd, l)
        total = total - dd.r(i, j) ** 2 * dd.r(i, k) ** 2 * dd.r(j, k) ** 2
    return total


def vol2_288(dd: DistanceData):
    return 2 * vol2_144(dd)


def A4_sum_form(dd: DistanceData):
    total = 0
    for l in range(1, 5):
        i0, j0, k0 = _face(dd, l)
        inner = 0
        for i in (i0, j0, k0):
            j, k = [v for v in (i0, j0, k0) if v != i]
            inner = inner + dd.r(l, i) * ((dd.r(l, j) + dd.r(l, k)) ** 2 - dd.r(j, k) ** 2)
        total = total + inner * d3(dd.r(i0, j0), dd.r(i0, k0), dd.r(j0, k0))
    return total


def A4_face_form(dd: DistanceData):
    total = 0
    for l in range(1, 5):
        i, j, k = _face(dd, l)
        ril, rjl, rkl = dd.r(i, l), dd.r(j, l), dd.r(k, l)
        rij, rik, rjk = dd.r(i, j), dd.r(i, k), dd.r(j, k)
        weight = (d3(ril, rjl, rkl) + 8 * ril * rjl * rkl
                  + ril * (ril**2 - rjk**2) + rjl * (rjl**2 - rik**2) + rkl * (rkl**2 - rij**2))
        total = total + weight * d3(rij, rik, rjk)
    return total


def re_D4(dd: DistanceData):
    """Real part of the unnormalized four-point determinant."""
    return 64 * dd.product() - 4 * d3(*opposite_products(dd)) + A4_sum_form(dd) + vol2_288(dd)


def normalized_re_D4(dd: DistanceData):
    return re_D4(dd) / (64 * dd.product())


def _elementary4(t):
    e = [1, 0, 0, 0, 0]
    for v in t:
        for k in range(4, 0, -1):
            e[k] = e[k] + v * e[k - 1]
    return e


def re_D4_edge_tangential(t):
    """(Re D4, 64 prod r) from the tangent lengths via elementary symmetric functions."""
    _, e1, e2, e3, e4 = _elementary4(t)
    m211 = e1 * e3 - 4 * e4
    vol = 128 * e4 * e2 - 32 * e3 * e3
    return 64 * e2 * (2 * e4 + m211) + 4 * vol, 64 * (e3 * e2 * e1 - e4 * e1 * e1 - e3 * e3)


def re_D4_semiregular(a, b, c):
    """Re D4 when opposite edges are equal (lengths a, b, c): 64 a^2b^2c^2 + 4 d3^2 + 32 abc d3."""
    d = d3(a, b, c)
    return 64 * (a * b * c) ** 2 + 4 * d * d + 32 * a * b * c * d


def regrouped_vol_term(dd: DistanceData):
    """144 V^2 - 2 d3(opposite products), regrouped; nonpositive for real points."""
    r = dd.r
    total = 0
    for (p, q) in OPPOSITE:
        (p2, q2) = [e for e in OPPOSITE if e != (p, q)]
        cross = r(*p2[0]) ** 2 * r(*p2[1]) ** 2 + r(*q2[0]) ** 2 * r(*q2[1]) ** 2 - r(*p) ** 2 * r(*q) ** 2
        total = total + (r(*p) - r(*q)) ** 2 * cross
    total = total + 4 * dd.product()
    for l in range(1, 5):
        i, j, k = _face(dd, l)
        total = total - r(i, j) ** 2 * r(i, k) ** 2 * r(j, k) ** 2
    return total


def face_weight_terms(dd: DistanceData):
    """Per face l: (edges meeting l product, face edge product, d3 of the face)."""
    out = []
    for l in range(1, 5):
        i, j, k = _face(dd, l)
        out.append((dd.r(i, l) * dd.r(j, l) * dd.r(k, l),
                    dd.r(i, j) * dd.r(i, k) * dd.r(j, k),
                    d3(dd.r(i, j), dd.r(i, k), dd.r(j, k))))
    return out


def _weak_weight(spokes, face, dface):
    try:
        return spokes * dface * dface / (4 * face)
    except TypeError:
        # polynomial inputs: only exact when the ratio cancels
        if spokes == face:
            return dface * dface / 4
        raise


def four_points_gap(dd: DistanceData, strong: bool = False):
    """LHS - RHS of the four points inequality; weak mode uses delta = d3 / face product."""
    lhs = re_D4(dd) - vol2_288(dd) * 19 / 4
    rhs = 64 * dd.product()
    for spokes, face, dface in face_weight_terms(dd):
        if strong:
            rhs = rhs + spokes * dface * 17 / 4
        else:
            rhs = rhs + 4 * spokes * dface + _weak_weight(spokes, face, dface)
    return lhs - rhs


def four_points_rhs_trig(dd: DistanceData) -> float:
    """Weak right hand side as prod(r) * 4 * sum of squared face half-angle sums."""
    tq = trig_quantities(dd)
    return float(dd.product()) * 4 * sum(c * c for c in tq.face_c)


def c3_four_point_margin(dd: DistanceData, im_part: float = 0.0) -> float:
    """|D4|^2 - prod over faces of the three-point values, normalized units."""
    scale = 64 * float(dd.product())
    re = float(re_D4(dd)) / scale
    rhs = 1.0
    for spokes, face, dface in face_weight_terms(dd):
        rhs *= float(dface + 8 * face) / (8 * float(face))
    return re * re + (im_part / scale) ** 2 - rhs


# ---------------------------------------------------------------------------
# trigonometric form
# ---------------------------------------------------------------------------

@dataclass
class TrigQuantities:
    face_c: tuple  # c_l for the face omitting vertex l
    vertex_c: tuple  # sum of half-angle cos^2 at vertex l over faces through l
    mobius_c: float
    mobius_c_law_of_cosines: float


def _angle_at(dd: DistanceData, v: int, p: int, q: int) -> float:
    a, b, c = float(dd.r(p, q)), float(dd.r(v, p)), float(dd.r(v, q))
    return math.acos(max(-1.0, min(1.0, (b * b + c * c - a * a) / (2 * b * c))))


def _oriented_angle(z, v, p, q) -> float:
    return float(np.angle((z[q] - z[v]) / (z[p] - z[v])))


def _wrap(t: float) -> float:
    t = math.remainder(t, 2 * math.pi)
    return abs(t)


def mobius_angles(points) -> tuple[float, float, float]:
    """Angle differences of a planar quadrilateral, vertices 1..4."""
    p = np.asarray(points, dtype=float)
    z = {k + 1: complex(p[k, 0], p[k, 1]) for k in range(4)}
    ang = lambda v, a, b: _oriented_angle(z, v, a, b)
    x = _wrap(ang(3, 1, 4) - ang(2, 1, 4))
    y = _wrap(ang(1, 2, 4) - ang(3, 2, 4))
    w = _wrap(ang(1, 4, 3) - ang(2, 4, 3))
    return x, y, w


def trig_quantities(dd: DistanceData, planar_points=None) -> TrigQuantities:
    face_c = []
    for l in range(1, 5):
        i, j, k = _face(dd, l)
        face_c.append(half_angle_cos2_sum(float(dd.r(j, k)), float(dd.r(i, k)), float(dd.r(i, j))))
    vertex_c = []
    for l in range(1, 5):
        others = [v for v in range(1, 5) if v != l]
        vertex_c.append(sum(math.cos(_angle_at(dd, l, p, q) / 2) ** 2
                            for p, q in itertools.combinations(others, 2)))
    prods = [float(x) for x in opposite_products(dd)]
    c_loc = half_angle_cos2_sum(*prods)
    c_mob = float("nan")
    if planar_points is not None:
        c_mob = sum(math.cos(t / 2) ** 2 for t in mobius_angles(planar_points))
    return TrigQuantities(tuple(face_c), tuple(vertex_c), c_mob, c_loc)


def re_D4_trig_planar(dd: DistanceData, planar_points=None) -> float:
    """16 prod(r) (6 - c + sum_l vertex_c_l (face_c_l - 2)) for planar quadrilaterals."""
    tq = trig_quantities(dd, planar_points)
    c = tq.mobius_c if planar_points is not None else tq.mobius_c_law_of_cosines
    s = sum(vc * (fc - 2) for vc, fc in zip(tq.vertex_c, tq.face_c))
    return 16 * float(dd.product()) * (6 - c + s)
