"""Exact polynomial identities behind the four-point closed forms and families.

Each check returns an IdentityResult; `holds` is exact equality of SymPoly
objects (after reduction modulo the family relations where those apply).
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import SymPoly, variables
from .symmetric import elementary, monomial, augmented_monomial, muirhead_certificate
from ..closed_forms import (DistanceData, d3, re_D4, vol2_144, vol2_288, A4_sum_form, A4_face_form,
                            regrouped_vol_term, opposite_products, four_points_gap, face_weight_terms)


@dataclass
class IdentityResult:
    name: str
    holds: bool
    detail: str = ""


def _check(name, lhs, rhs, detail="") -> IdentityResult:
    diff = lhs - rhs
    ok = diff.is_zero() if isinstance(diff, SymPoly) else diff == 0
    if not ok and isinstance(diff, SymPoly) and not detail:
        detail = f"residual has {len(diff.terms)} terms"
    return IdentityResult(name, ok, detail)


def _positive_after_shift(poly: SymPoly, chain) -> bool:
    """Nonnegative coefficients after v_i = v_{i+1} + h_i along each chain (largest first)."""
    extra = [f"_h{i}" for i in range(sum(len(c) - 1 for c in chain))]
    p = poly.extend(extra)
    t = 0
    for c in chain:
        for big, small in zip(c, c[1:]):
            p = p.shift(big, small, extra[t])
            t += 1
    return p.min_coefficient() >= 0


# ---------------------------------------------------------------------------
# general four points
# ---------------------------------------------------------------------------

def general_four_point_identities() -> list:
    names = ("r12", "r13", "r14", "r23", "r24", "r34")
    dd = DistanceData(*variables(names))
    return [
        _check("A4 sum form equals face form", A4_sum_form(dd), A4_face_form(dd)),
        _check("regrouped volume term", vol2_144(dd) - 2 * d3(*opposite_products(dd)), regrouped_vol_term(dd)),
    ]


# ---------------------------------------------------------------------------
# edge-tangential: r_ij = t_i + t_j
# ---------------------------------------------------------------------------

def edge_tangential_identities() -> list:
    names = ("t1", "t2", "t3", "t4")
    t = variables(names)
    dd = DistanceData(t[0] + t[1], t[0] + t[2], t[0] + t[3], t[1] + t[2], t[1] + t[3], t[2] + t[3])
    e1, e2, e3, e4 = (elementary(names, names, k) for k in range(1, 5))
    m = lambda lam: monomial(names, names, lam)
    out = [
        _check("64 prod r", 64 * dd.product(), 64 * (e3 * e2 * e1 - e4 * e1 * e1 - e3 * e3)),
        _check("-4 d3 of opposite products", -4 * d3(*opposite_products(dd)),
               128 * e4 * e2 - 32 * e4 * e1 * e1 - 32 * e3 * e3),
        _check("288 V^2", vol2_288(dd), 128 * e4 * e2 - 32 * e3 * e3),
        _check("A4", A4_sum_form(dd), 32 * (3 * e1 * e1 + 4 * e2) * e4),
        _check("D4 short form", re_D4(dd), 64 * e2 * (2 * e4 + m((2, 1, 1))) + 4 * vol2_288(dd)),
    ]
    face_ok = all((dface - 8 * face_t).is_zero() for (_, _, dface), face_t in
                  zip(face_weight_terms(dd), _face_t_products(t)))
    out.append(IdentityResult("face d3 = 8 t_i t_j t_k", face_ok))
    gap = four_points_gap(dd, strong=True)
    target = 30 * m((3, 1, 1, 1)) + 54 * m((2, 2, 2)) - 56 * m((2, 2, 1, 1))
    out.append(_check("strong four points gap", gap, target))
    am = lambda lam: augmented_monomial(names, names, lam)
    out.append(_check("gap in augmented monomials", target,
                      5 * am((3, 1, 1, 1)) + 9 * am((2, 2, 2)) - 14 * am((2, 2, 1, 1))))
    plan = muirhead_certificate({(3, 1, 1, 1): 5, (2, 2, 2): 9, (2, 2, 1, 1): -14})
    out.append(IdentityResult("gap is a sum of Muirhead differences", plan is not None, str(plan)))
    return out


def _face_t_products(t):
    faces = [(1, 2, 3), (2, 3, 0), (3, 0, 1), (0, 1, 2)]
    return [t[i] * t[j] * t[k] for i, j, k in faces]


EDGE_TANGENTIAL_DIFFERENCE = {
    (6, 3, 2, 1): 1, (6, 2, 2, 2): 3, (5, 4, 3): 1, (5, 4, 2, 1): 2, (5, 3, 2, 2): 7, (5, 3, 3, 1): 5,
    (4, 4, 4): 3, (4, 4, 3, 1): 7, (4, 4, 2, 2): 8, (4, 3, 3, 2): 8, (3, 3, 3, 3): 3,
}


def edge_tangential_c3_difference() -> SymPoly:
    """e2^2 (2 e4 + m211)^2 minus the product over faces of (sum)(pair sum)."""
    names = ("t1", "t2", "t3", "t4")
    t = variables(names)
    e2, e4 = elementary(names, names, 2), elementary(names, names, 4)
    lhs = e2 ** 2 * (2 * e4 + monomial(names, names, (2, 1, 1))) ** 2
    rhs = SymPoly.const(names, 1)
    for i, j, k in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        rhs = rhs * (t[i] + t[j] + t[k]) * (t[i] * t[j] + t[i] * t[k] + t[j] * t[k])
    return lhs - rhs


def edge_tangential_c3_identity() -> IdentityResult:
    diff = edge_tangential_c3_difference()
    names = diff.names
    target = SymPoly(names)
    for lam, c in EDGE_TANGENTIAL_DIFFERENCE.items():
        target = target + c * monomial(names, names, lam)
    return _check("edge-tangential C3 difference in monomials", diff, target)


# ---------------------------------------------------------------------------
# semiregular: opposite edges equal
# ---------------------------------------------------------------------------

def semiregular_identities() -> list:
    names = ("a", "b", "c")
    a, b, c = variables(names)
    dd = DistanceData(a, b, c, c, b, a)
    dabc, dsq = d3(a, b, c), d3(a * a, b * b, c * c)
    return [
        _check("288 V^2", vol2_288(dd), 4 * dsq),
        _check("A4", A4_sum_form(dd), 4 * dabc * dabc + 32 * a * b * c * dabc),
        _check("weak four points gap", four_points_gap(dd), 3 * (dabc * dabc - dsq) + 16 * (a * b * c * dabc - dsq)),
        _check("strong four points gap", four_points_gap(dd, strong=True),
               4 * (dabc * dabc - dsq) + 15 * (a * b * c * dabc - dsq)),
    ]


# ---------------------------------------------------------------------------
# wedge: r12 = x, r34 = y, r13 = r24 = a, r23 = r14 = b
# ---------------------------------------------------------------------------

def wedge_distances(a, b, x, y) -> DistanceData:
    return DistanceData(x, a, b, b, a, y)


def wedge_first_formula(a, b, x, y):
    dx, dy = d3(a, b, x), d3(a, b, y)
    s2 = (a - b) ** 2
    vol = (x * y - a * a + b * b) * (x * y + a * a - b * b) * (2 * a * a + 2 * b * b - x * x - y * y)
    return ((dx + 8 * a * b * x) * (dy + 8 * a * b * y) + dx * dy
            + 2 * x * ((a + b) ** 2 - y * y) * dy + 2 * y * ((a + b) ** 2 - x * x) * dx
            + 4 * (a * a + b * b - x * y) * (2 * a * a + 2 * b * b - x * x - y * y) * s2
            + 2 * (x * y - s2) * (x * x - s2) * (y * y - s2) + 2 * vol)


def wedge_second_formula(a, b, x, y, as_printed: bool = False):
    """Second grouping; as_printed keeps (a^2 - b^2) unsquared in the fifth term."""
    dx, dy = d3(a, b, x), d3(a, b, y)
    s2 = (a - b) ** 2
    diff_sq = (a * a - b * b) if as_printed else (a * a - b * b) ** 2
    return ((dx + 8 * a * b * x) * (dy + 8 * a * b * y) + 3 * dx * dy
            + 2 * x * ((a + b) ** 2 - y * y) * dy + 2 * y * ((a + b) ** 2 - x * x) * dx
            + 2 * (x * x * y * y - diff_sq) * (x * (a + b - x) + y * (a + b - y))
            + 2 * s2 * (x * (a + b - y) + y * (a + b - x)) * (2 * a * a + 2 * b * b - x * x - y * y))


def wedge_identities() -> list:
    names = ("a", "b", "x", "y")
    a, b, x, y = variables(names)
    dd = wedge_distances(a, b, x, y)
    s2 = (a - b) ** 2
    h2 = 2 * a * a + 2 * b * b - x * x - y * y
    A41 = ((d3(a, b, x) - 2 * x * (s2 - x * x)) * d3(a, b, y) + (d3(a, b, y) - 2 * y * (s2 - y * y)) * d3(a, b, x))
    return [
        _check("-4 d3 of opposite products", -4 * d3(*opposite_products(dd)),
               -4 * (x * y - a * a + b * b) * (x * y + a * a - b * b) * (a * a + b * b - x * y)),
        _check("144 V^2", vol2_144(dd), (x * y - a * a + b * b) * (x * y + a * a - b * b) * h2),
        _check("product identity for (x^2-(a-b)^2)(y^2-(a-b)^2)", (x * x - s2) * (y * y - s2),
               (x * y - a * a + b * b) * (x * y + a * a - b * b) + s2 * h2),
        _check("bracket part of A4", A41, (x * x - s2) * (y * y - s2) * (2 * (a + b) ** 2 - 2 * x * y)),
        _check("bracket part of A4, explicit", A41,
               4 * d3(a * a, b * b, x * y) + 4 * (a * a + b * b - x * y) * h2 * s2
               + 2 * (x * y - s2) * (x * x - s2) * (y * y - s2)),
        _check("first explicit formula", re_D4(dd), wedge_first_formula(a, b, x, y)),
        _check("second explicit formula (squared difference)", re_D4(dd), wedge_second_formula(a, b, x, y)),
        _check("second explicit formula as printed", re_D4(dd), wedge_second_formula(a, b, x, y, True)),
    ]


# ---------------------------------------------------------------------------
# parallelogram on the law-of-cosines family
# ---------------------------------------------------------------------------

def parallelogram_identities() -> list:
    """Variables a, b, u = cos(angle), e, f with e^2, f^2 given by the cosine law."""
    names = ("a", "b", "u", "e", "f")
    a, b, u, e, f = variables(names)
    rules = {"e": a * a + b * b + 2 * a * b * u, "f": a * a + b * b - 2 * a * b * u}

    def check(name, lhs, rhs):
        diff = (lhs - rhs).reduce_squares(rules)
        return IdentityResult(name, diff.is_zero(), "" if diff.is_zero() else f"{len(diff.terms)} residual terms")

    de, df = d3(a, b, e), d3(a, b, f)
    delta = (a + b + e) * de
    dd = DistanceData(a, f, b, b, e, a)
    p = a + b
    out = [
        check("parallelogram law", e * e + f * f, 2 * (a * a + b * b)),
        check("1: d3(a,b,e)", de, (p - e) * (p - f) * (p + f)),
        check("2: Delta symmetric", delta, (p + f) * df),
        check("2: Delta product", delta, (p + e) * (p + f) * (p - e) * (p - f)),
        check("3: first", 4 * a * b + e * e - f * f, 2 * (p + f) * (p - f)),
        check("4: d3(a^2,b^2,ef)", d3(a * a, b * b, e * f), (a * a + b * b - e * f) * delta),
        check("5: as printed (-2ef)", de * df - d3(a * a, b * b, e * f), (2 * a * b - 2 * e * f - p * (e + f)) * delta),
        check("5: with +2ef", de * df - d3(a * a, b * b, e * f), (2 * a * b + 2 * e * f - p * (e + f)) * delta),
        check("6", e * df + f * de, (p - e) * (p - f) * (e * e + f * f + p * (e + f))),
        check("7", (4 * a * b + e * e - f * f) * e * df + (4 * a * b + f * f - e * e) * f * de,
              2 * (p * (e + f) - 2 * e * f) * delta),
        check("D4 - 64 prod r", re_D4(dd) - 64 * dd.product(),
              8 * a * b * delta + 8 * a * b * (p - e) * (p - f) * (e * e + f * f + p * (e + f))),
        check("strengthened C3 gap", re_D4(dd) - 2 * de * df - 8 * (a * b * f * de + a * b * e * df)
              - 64 * a * a * b * b * e * f, 2 * (4 * a * b - (p - e) * (p - f)) * delta),
        check("strong four points gap", four_points_gap(dd, strong=True),
              a * b * (p - e) * (p - f) * (14 * (a * a + b * b) + 32 * a * b + 15 * p * (e + f) + 16 * e * f) / 2),
    ]
    return out


# ---------------------------------------------------------------------------
# trirectangular: legs x, y, z from the right-angled vertex
# ---------------------------------------------------------------------------

def trirectangular_identities() -> list:
    names = ("a", "b", "c", "x", "y", "z")
    a, b, c, x, y, z = variables(names)
    rules = {"a": y * y + z * z, "b": x * x + z * z, "c": x * x + y * y}
    dd = DistanceData(c, b, x, a, y, z)

    def check(name, lhs, rhs):
        diff = (lhs - rhs).reduce_squares(rules)
        return IdentityResult(name, diff.is_zero(), "" if diff.is_zero() else f"{len(diff.terms)} residual terms")

    def cyc(fn):
        return fn(a, b, c, x, y, z) + fn(b, c, a, y, z, x) + fn(c, a, b, z, x, y)

    lhs = re_D4(dd) - 64 * a * b * c * x * y * z - vol2_288(dd)
    printed = 4 * x * y * z * (cyc(lambda a, b, c, x, y, z: 2 * a * x * x)
                               + cyc(lambda a, b, c, x, y, z: (2 * a * b + c * z + z * z) * (x + y)) - 10 * a * b * c)
    endpoint = 4 * x * y * z * (2 * d3(a, b, c) + cyc(lambda a, b, c, x, y, z: (2 * a * b + c * z + 2 * z * z) * (x + y - c)))
    second = cyc(lambda a, b, c, x, y, z: (2 * a * b + c * z + z * z) * (x + y))
    second_rhs = (6 * a * b + cyc(lambda a, b, c, x, y, z: (2 * a * b + c * z + 2 * z * z) * (x + y - c))
                  + 2 * cyc(lambda a, b, c, x, y, z: a * x * x))
    second_rhs_abc = (6 * a * b * c + cyc(lambda a, b, c, x, y, z: (2 * a * b + c * z + 2 * z * z) * (x + y - c))
                      + 2 * cyc(lambda a, b, c, x, y, z: a * x * x))
    return [
        check("face d3(a,b,c)", d3(a, b, c), 2 * (a * x * x + b * y * y + c * z * z - a * b * c)),
        check("face d3(x,y,c)", d3(x, y, c), 2 * x * y * (x + y - c)),
        check("face d3(x,b,z)", d3(x, b, z), 2 * x * z * (x + z - b)),
        check("face d3(a,y,z)", d3(a, y, z), 2 * y * z * (y + z - a)),
        check("endpoint formula", lhs, endpoint),
        check("first display as printed", lhs, printed),
        check("cyclic sum regrouping as printed (6ab)", second, second_rhs),
        check("cyclic sum regrouping with 6abc", second, second_rhs_abc),
    ]


# ---------------------------------------------------------------------------
# d3 inequalities
# ---------------------------------------------------------------------------

def schur_identity_suite() -> list:
    names = ("x", "y", "z", "X", "Y", "Z")
    x, y, z, X, Y, Z = variables(names)

    def cyc3(fn, u, v, w):
        return fn(u, v, w) + fn(v, w, u) + fn(w, u, v)

    def schur_sum(alpha, u, v, w):
        return cyc3(lambda p, q, r: p ** alpha * (p - q) * (p - r), u, v, w)

    D = d3(x, y, z)
    Dsq = d3(x * x, y * y, z * z)
    q = lambda p, s, t: s * s - s * t + t * t - p * p
    squares = (cyc3(lambda p, s, t: p * p * q(p, s, t) ** 2, x, y, z)
               + cyc3(lambda p, s, t: p * q(p, s, t), x, y, z) ** 2)
    out = [
        _check("1: xyz - d3 is the alpha=1 Schur sum", x * y * z - D, schur_sum(1, x, y, z)),
        _check("2: sum of four squares as printed", D * D - Dsq, squares),
        _check("2: printed squares overshoot by 4xyz times the alpha=1 Schur sum", D * D - Dsq,
               squares - 4 * x * y * z * schur_sum(1, x, y, z)),
        _check("3: closed form", D * D - Dsq, 8 * x * x * y * y * z * z - 2 * (x * y * z + x ** 3 + y ** 3 + z ** 3) * D),
        _check("4: alpha=2 Schur sum in squares", (x + y + z) ** 2 * D * D - 3 * (x * x + y * y + z * z) * Dsq,
               4 * cyc3(lambda p, s, t: p ** 4 * (p * p - s * s) * (p * p - t * t), x, y, z)),
    ]
    lhs5 = ((x + y + z) * (X + Y + Z) * D * d3(X, Y, Z) - 3 * (x * X + y * Y + z * Z) * d3(x * X, y * Y, z * Z))
    pairs = [(x, y, z, X, Y, Z), (y, z, x, Y, Z, X), (z, x, y, Z, X, Y)]
    s5 = SymPoly(names)
    for p, s, t, P, S, T in pairs:
        s5 = s5 + p * p * (p * p - s * s) * P * P * (P * P - T * T) + P * P * (P * P - S * S) * p * p * (p * p - t * t)
    rhs5 = 2 * s5 + (x * x * (Y * Y - Z * Z) + y * y * (Z * Z - X * X) + z * z * (X * X - Y * Y)) ** 2
    out.append(_check("5: two-alphabet identity", lhs5, rhs5))
    out.append(IdentityResult("d3^2 - d3 of squares nonnegative for ordered variables",
                              _positive_after_shift((D * D - Dsq).embed(names), [("z", "y", "x")])))
    out.append(IdentityResult("Schur sum alpha=1 nonnegative for ordered variables",
                              _positive_after_shift(schur_sum(1, z, y, x), [("z", "y", "x")])))
    out.append(IdentityResult("Schur sum alpha=2 nonnegative for ordered variables",
                              _positive_after_shift(schur_sum(2, z, y, x), [("z", "y", "x")])))
    h2 = x * (x - y) * X * (X - Z) + y * (y - x) * Y * (Y - Z) + z * (z - x) * Z * (Z - Y)
    out.append(IdentityResult("two-alphabet Schur sum nonnegative for ordered variables",
                              _positive_after_shift(h2, [("z", "y", "x"), ("Z", "Y", "X")])))
    a, b, c = x, y, z
    out.append(_check("sum of weighted squares for abc - d3", 2 * (a * b * c - d3(a, b, c)),
                      (-a + b + c) * (b - c) ** 2 + (a - b + c) * (a - c) ** 2 + (a + b - c) * (a - b) ** 2))
    lhs24 = 9 * a * a * b * b * c * c - (a * a + b * b + c * c) * (a + b + c) * d3(a, b, c)
    out.append(_check("circumradius lemma expansion", lhs24,
                      (a * a - b * b) * (a * a * (a * a - c * c) - b * b * (b * b - c * c))
                      + c * c * (a * a - c * c) * (b * b - c * c)))
    return out


def all_identities() -> dict:
    return {
        "general": general_four_point_identities(),
        "edge_tangential": edge_tangential_identities() + [edge_tangential_c3_identity()],
        "semiregular": semiregular_identities(),
        "wedge": wedge_identities(),
        "parallelogram": parallelogram_identities(),
        "trirectangular": trirectangular_identities(),
        "d3": schur_identity_suite(),
    }


# printed variants that are recorded because they fail; everything else must hold
KNOWN_MISPRINTS = frozenset({
    "second explicit formula as printed",
    "5: as printed (-2ef)",
    "cyclic sum regrouping as printed (6ab)",
    "2: sum of four squares as printed",
})


def unexpected_results(results: dict) -> list:
    """Identity results whose truth value differs from the expected one."""
    return [(fam, r) for fam, rs in results.items() for r in rs if r.holds == (r.name in KNOWN_MISPRINTS)]
