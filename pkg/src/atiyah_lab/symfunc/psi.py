"""Psi polynomials, conjecture certificates and the exact identities around them.

Psi^I_J = sum_k e_k(xi_J) X_{i_1} ... X_{i_k}, with the X variables ordered
X_1 >= X_2 >= ... >= X_n >= 0 and xi_j >= 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .poly import SymPoly, pack, BITS, MASK
from .symmetric import (elementary, elementary_all, schur, is_symmetric,
                        monomial_expansion, multi_monomial_expansion)

DEFAULT_MAX_N = 5
LONG_RUNNING_MAX_N = 7


class BudgetExceeded(RuntimeError):
    pass


class PsiRing:
    """Variables xi1..xin, X1..Xn and the difference variables h1..h(n-1)."""

    def __init__(self, n: int):
        self.n = n
        self.xi = tuple(f"xi{i}" for i in range(1, n + 1))
        self.X = tuple(f"X{i}" for i in range(1, n + 1))
        self.h = tuple(f"h{i}" for i in range(1, n))
        self.names = self.xi + self.X + self.h

    def x(self, i: int) -> SymPoly:
        return SymPoly.var(self.names, f"X{i}")

    def xi_var(self, j: int) -> SymPoly:
        return SymPoly.var(self.names, f"xi{j}")

    def const(self, c) -> SymPoly:
        return SymPoly.const(self.names, c)

    def xprod(self, indices) -> SymPoly:
        key = 0
        for i in indices:
            key += 1 << (BITS * self.names.index(f"X{i}"))
        return SymPoly(self.names, {key: 1})

    def e(self, k: int, lower) -> SymPoly:
        return elementary(self.names, [f"xi{j}" for j in lower], k)


def _digits(spec) -> tuple:
    if isinstance(spec, str):
        return tuple(int(ch) for ch in spec)
    return tuple(spec)


def psi(ring: PsiRing, upper, lower) -> SymPoly:
    upper, lower = _digits(upper), _digits(lower)
    if len(upper) < len(lower):
        raise ValueError("upper index sequence shorter than the alphabet")
    total = ring.const(1)
    for k in range(1, len(lower) + 1):
        total = total + ring.e(k, lower) * ring.xprod(upper[:k])
    return total


def _omit(seq, k):
    return tuple(v for v in seq if v != k)


def full(n):
    return tuple(range(1, n + 1))


def psi_hat(ring: PsiRing, n: int, k: int) -> SymPoly:
    """Psi^{1..n}_{1..n} + xi_k (X_2 - X_1)."""
    return psi(ring, full(n), full(n)) + ring.xi_var(k) * (ring.x(2) - ring.x(1))


# ---------------------------------------------------------------------------
# positivity certificates
# ---------------------------------------------------------------------------

@dataclass
class Certificate:
    name: str
    n: int
    status: str  # PASS, FAIL, INCONCLUSIVE
    terms_checked: int = 0
    groups: int = 0
    min_coefficient: object = None
    offending: str = ""
    counterexample: dict = field(default_factory=dict)
    witness: object = None
    seconds: float = 0.0
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        out = {k: v for k, v in self.__dict__.items()}
        out["min_coefficient"] = None if self.min_coefficient is None else str(self.min_coefficient)
        if isinstance(self.witness, SymPoly):
            out["witness"] = self.witness.to_string()
        return out


def shifted(poly: SymPoly, ring: PsiRing) -> SymPoly:
    """Substitute X_k = X_{k+1} + h_k for k = 1..n-1."""
    out = poly
    for k in range(1, ring.n):
        out = out.shift(f"X{k}", f"X{k + 1}", f"h{k}")
    return out


def difference_positivity(diff: SymPoly, ring: PsiRing, name: str = "",
                          search_samples: int = 200, seed: int = 0) -> Certificate:
    """Coefficientwise check of diff after the ordering substitution.

    Terms are grouped by their xi exponents; each group is a polynomial in X,
    its monomial content is stripped (nonnegative for X >= 0) and the rest is
    substituted.  PASS means every resulting coefficient is nonnegative.
    """
    t0 = time.perf_counter()
    groups = diff.split(ring.xi)
    checked = 0
    worst = None
    offending = ""
    for key, group in sorted(groups.items()):
        g = group.monomial_gcd()
        stripped = group.divide_monomial(g) if any(g) else group
        sub = shifted(stripped, ring)
        checked += len(sub.terms)
        m = sub.min_coefficient()
        if worst is None or m < worst:
            worst = m
        if m < 0 and not offending:
            mono = "*".join(f"xi{j + 1}^{p}" for j, p in enumerate(key) if p) or "1"
            bad = [(e, c) for e, c in sub.items() if c < 0][0]
            offending = f"[{mono}] " + SymPoly(ring.names, {pack(bad[0]): bad[1]}).to_string()
    status = "PASS" if worst is None or worst >= 0 else "INCONCLUSIVE"
    cert = Certificate(name, ring.n, status, checked, len(groups), worst, offending)
    if status == "INCONCLUSIVE":
        ce = search_counterexample(diff, ring, search_samples, seed)
        if ce:
            cert.status = "FAIL"
            cert.counterexample = ce
    cert.seconds = time.perf_counter() - t0
    return cert


def search_counterexample(diff: SymPoly, ring: PsiRing, samples: int, seed: int) -> dict:
    """Random ordered points with diff < 0, evaluated exactly at rational points."""
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        xs = sorted((Fraction(int(v), 16) for v in rng.integers(0, 64, ring.n)), reverse=True)
        xis = [Fraction(int(v), 16) for v in rng.integers(0, 64, ring.n)]
        vals = dict(zip(ring.X, xs)) | dict(zip(ring.xi, xis))
        v = diff.evaluate(vals)
        if v < 0:
            return {k: str(x) for k, x in vals.items()} | {"value": str(v)}
    return {}


def _budget(n: int, long_running: bool, max_n: int | None):
    limit = max_n if max_n is not None else (LONG_RUNNING_MAX_N if long_running else DEFAULT_MAX_N)
    if n > limit:
        raise BudgetExceeded(f"n = {n} exceeds the symbolic budget {limit}; "
                             "enable long-running mode or raise the budget")


# ---------------------------------------------------------------------------
# conjectured inequalities: (lhs, rhs) pairs
# ---------------------------------------------------------------------------

def conj_power_vs_subsets(ring, n):
    """(Psi^{1..n}_{1..n})^{n-1} against prod_k Psi^{1..n minus k}_{1..n minus k}."""
    lhs = psi(ring, full(n), full(n)) ** (n - 1)
    rhs = ring.const(1)
    for k in full(n):
        rhs = rhs * psi(ring, _omit(full(n), k), _omit(full(n), k))
    return lhs, rhs


def conj_hat_chain(ring, n):
    """prod_{k>=2} hatted Psi against the same right hand side."""
    lhs = ring.const(1)
    for k in range(2, n + 1):
        lhs = lhs * psi_hat(ring, n, k)
    _, rhs = conj_power_vs_subsets(ring, n)
    return lhs, rhs


def conj_repeated_index(ring, n):
    """prod_k Psi^{1..k,k..n-1}_{1..n} against prod_k Psi^{1..n-1}_{1..n minus k}."""
    lhs = ring.const(1)
    for k in range(1, n):
        upper = tuple(range(1, k + 1)) + tuple(range(k, n))
        lhs = lhs * psi(ring, upper, full(n))
    rhs = ring.const(1)
    for k in full(n):
        rhs = rhs * psi(ring, tuple(range(1, n)), _omit(full(n), k))
    return lhs, rhs


def conj_two_sided(ring, n):
    """(Psi^{1..n})^{n-2} against Psi^{2..n-1}_{2..n-1} prod_{k=2}^{n-1} Psi^{1..n minus k}."""
    lhs = psi(ring, full(n), full(n)) ** (n - 2)
    mid = tuple(range(2, n))
    rhs = psi(ring, mid, mid)
    for k in range(2, n):
        rhs = rhs * psi(ring, _omit(full(n), k), _omit(full(n), k))
    return lhs, rhs


def chain_endpoint(ring, n):
    """Endpoints of the even/odd chains for n = 4, 5."""
    if n == 4:
        lhs = psi(ring, "2244", "1234") * psi(ring, "2224", "1234") ** 2
        rhs = ring.const(1)
        for k in full(4):
            rhs = rhs * psi(ring, "224", _omit(full(4), k))
        return lhs, rhs
    if n == 5:
        lhs = (psi(ring, "22244", "12345") * psi(ring, "22444", "12345")) ** 2
        rhs = ring.const(1)
        for k in full(5):
            rhs = rhs * psi(ring, "2244", _omit(full(5), k))
        return lhs, rhs
    raise ValueError("chain endpoints are only defined for n = 4, 5")


# Published form of the n = 4 endpoint difference: monomial coefficients
# (partition in xi, X2 exponent, X4 exponent) -> integer multiplicity.
PRINTED_ENDPOINT_WITNESS = {
    ((2, 2, 2, 2), 2, 4): 1, ((2, 2, 2, 1), 2, 3): 2, ((2, 2, 2), 2, 2): 1, ((2, 2, 1, 1), 2, 2): 3,
    ((2, 2, 1), 2, 1): 1, ((2, 1, 1, 1), 2, 1): 4, ((2, 1, 1), 2, 0): 1, ((1, 1, 1, 1), 2, 0): 3,
    ((1, 1, 1, 1), 1, 1): 2, ((1, 1, 1), 1, 0): 1,
}


def printed_endpoint_witness(ring: PsiRing) -> SymPoly:
    from .symmetric import monomial
    x2, x4 = ring.x(2), ring.x(4)
    total = SymPoly(ring.names)
    for (lam, p, q), c in PRINTED_ENDPOINT_WITNESS.items():
        total = total + c * x2 ** p * x4 ** q * monomial(ring.names, ring.xi, lam)
    return total


def reverse_endpoint_witness(poly: SymPoly, ring: PsiRing) -> SymPoly:
    """xi^mu X2^p X4^q -> xi^(3 - mu) X2^(6 - q) X4^(2 - p), entrywise in mu.

    Amounts to xi -> 1/xi and X2 <-> 1/X4, cleared of denominators.
    """
    i2, i4 = ring.names.index("X2"), ring.names.index("X4")
    out = {}
    for e, c in poly.items():
        new = [0] * len(ring.names)
        for i in range(ring.n):
            new[i] = 3 - e[i]
        new[i2], new[i4] = 6 - e[i4], 2 - e[i2]
        out[pack(new)] = c
    return SymPoly(ring.names, out)


def endpoint_witness_comparison() -> dict:
    """Compare the computed n = 4 endpoint difference with the printed witness."""
    ring = PsiRing(4)
    lhs, rhs = chain_endpoint(ring, 4)
    diff = lhs - rhs
    printed = printed_endpoint_witness(ring)
    x2, x4 = ring.x(2), ring.x(4)
    return {
        "equals_printed": diff == printed,
        "equals_reversed_printed_times_square": diff == (x2 - x4) ** 2 * reverse_endpoint_witness(printed, ring),
        "vanishes_at_X2_eq_X4": diff.substitute({"X2": x4}).is_zero(),
        "printed_vanishes_at_X2_eq_X4": printed.substitute({"X2": x4}).is_zero(),
    }


QTILDE = {
    4: (("2233",), (("23", "23"), ("23", "14"))),
    5: (("22344", "22344"), (("234", "234"), ("234", "135"), ("2244", "1245"))),
    6: (("223445", "223455"), (("2345", "2345"), ("2345", "1346"), ("2345", "1256"))),
    7: (("2234556", "2234566", "2234566"),
        (("23456", "23456"), ("23456", "13457"), ("23456", "12467"), ("234566", "123567"))),
}


def qtilde_pair(ring, n):
    nums, dens = QTILDE[n]
    lower = "".join(str(i) for i in full(n))
    lhs = ring.const(1)
    for up in nums:
        lhs = lhs * psi(ring, up, lower)
    rhs = ring.const(1)
    for up, lo in dens:
        rhs = rhs * psi(ring, up, lo)
    return lhs, rhs


CONJECTURES = {
    "3.3": (conj_power_vs_subsets, 2),
    "3.4": (conj_hat_chain, 2),
    "3.8": (chain_endpoint, 4),
    "3.9": (conj_repeated_index, 2),
    "5.3": (conj_two_sided, 3),
}


def conjecture_check(conj_id: str, n: int, long_running: bool = False, max_n: int | None = None,
                     seed: int = 0) -> Certificate:
    if conj_id not in CONJECTURES:
        raise ValueError(f"unknown conjecture id {conj_id!r}")
    builder, n_min = CONJECTURES[conj_id]
    if n < n_min:
        raise ValueError(f"{conj_id} needs n >= {n_min}")
    if conj_id == "3.8" and n not in (4, 5):
        return Certificate(conj_id, n, "INCONCLUSIVE",
                           notes="general-n statement is ambiguous; only n = 4, 5 are implemented")
    _budget(n, long_running, max_n)
    ring = PsiRing(n)
    lhs, rhs = builder(ring, n)
    diff = lhs - rhs
    cert = difference_positivity(diff, ring, conj_id, seed=seed)
    cert.witness = _witness(diff, ring)
    return cert


def qtilde_check(n: int, long_running: bool = False, max_n: int | None = None, seed: int = 0) -> Certificate:
    if n not in QTILDE:
        raise ValueError(f"no ratio chain endpoint for n = {n}")
    _budget(n, long_running, max_n)
    ring = PsiRing(n)
    lhs, rhs = qtilde_pair(ring, n)
    diff = lhs - rhs
    cert = difference_positivity(diff, ring, f"Qtilde{n}", seed=seed)
    classes = symmetry_classes(diff, ring)
    cert.notes = "xi symmetry classes " + str([[int(v[2:]) for v in c] for c in classes])
    cert.witness = _witness(diff, ring, classes)
    return cert


def symmetry_classes(poly: SymPoly, ring: PsiRing) -> list:
    """Partition xi variables into classes of mutually interchangeable variables."""
    classes: list = []
    for v in ring.xi:
        for cls in classes:
            if is_symmetric(poly, [cls[0], v]):
                cls.append(v)
                break
        else:
            classes.append([v])
    return classes


WITNESS_TERM_LIMIT = 4000


def _witness(diff: SymPoly, ring: PsiRing, classes=None):
    """Difference expressed in (multi-)monomial functions of xi when small enough."""
    if len(diff.terms) > WITNESS_TERM_LIMIT:
        return {"terms": len(diff.terms)}
    x_names = ring.X
    try:
        if classes is None:
            exp = monomial_expansion(diff, ring.xi)
            return {_mname(lam): _xstring(c, x_names) for lam, c in sorted(exp.items())}
        exp = multi_monomial_expansion(diff, classes)
        return {" ".join(_mname(p) for p in key): _xstring(c, x_names) for key, c in sorted(exp.items())}
    except ValueError:
        return {"terms": len(diff.terms), "symmetric": False}


def _mname(lam) -> str:
    return "m[" + ",".join(str(p) for p in lam) + "]"


def _xstring(poly: SymPoly, x_names) -> str:
    return poly.embed([n for n in poly.names if poly.degree(n) > 0] or poly.names[:1]).to_string()


def monomial_witness(diff: SymPoly, ring: PsiRing) -> dict:
    """{partition: coefficient polynomial in X} for a difference symmetric in xi."""
    return monomial_expansion(diff, ring.xi)


# ---------------------------------------------------------------------------
# partition property
# ---------------------------------------------------------------------------

def partition_property(upper, lower, blocks, seed: int = 0) -> Certificate:
    """Psi^I_J >= prod_p Psi^{I_p}_{J_p} where blocks are (I_p, J_p) pairs.

    The I_p must interleave I and the J_p must partition J.
    """
    upper, lower = _digits(upper), _digits(lower)
    n = max(max(upper), max(lower))
    ring = PsiRing(n)
    merged_up = sorted(v for up, _ in blocks for v in _digits(up))
    merged_lo = sorted(v for _, lo in blocks for v in _digits(lo))
    if merged_up != sorted(upper) or merged_lo != sorted(lower):
        raise ValueError("blocks do not partition the index sequences")
    rhs = ring.const(1)
    for up, lo in blocks:
        rhs = rhs * psi(ring, up, lo)
    return difference_positivity(psi(ring, upper, lower) - rhs, ring, "partition", seed=seed)


def monotone_in_x(upper, lower, position: int, seed: int = 0) -> Certificate:
    """Psi grows when the index at position is lowered by one (X larger)."""
    upper, lower = _digits(upper), _digits(lower)
    if upper[position] <= 1:
        raise ValueError("index already minimal")
    lowered = list(upper)
    lowered[position] -= 1
    n = max(max(upper), max(lower))
    ring = PsiRing(n)
    return difference_positivity(psi(ring, lowered, lower) - psi(ring, upper, lower), ring, "monotone", seed=seed)


# ---------------------------------------------------------------------------
# derivative formulas
# ---------------------------------------------------------------------------

def single_derivative_oracle(n: int, k: int, r: int) -> SymPoly:
    """d_r Psi . Psi_k - Psi . d_r Psi_k with Psi_k the alphabet and X_k removed."""
    ring = PsiRing(n)
    P = psi(ring, full(n), full(n))
    Q = psi(ring, _omit(full(n), k), _omit(full(n), k))
    xr = f"X{r}"
    return P.derivative(xr) * Q - P * Q.derivative(xr)


def _xmono(ring, exps: dict) -> SymPoly:
    key = 0
    for i, p in exps.items():
        if p < 0:
            raise ValueError("negative exponent in closed form")
        key += p << (BITS * ring.names.index(f"X{i}"))
    return SymPoly(ring.names, {key: 1})


def _stair(i: int, j: int, drop=()) -> dict:
    """Exponents of X_{1..i} X_{1..j} divided by the X's in drop."""
    exps: dict = {}
    for t in range(1, i + 1):
        exps[t] = exps.get(t, 0) + 1
    for t in range(1, j + 1):
        exps[t] = exps.get(t, 0) + 1
    for t in drop:
        exps[t] = exps.get(t, 0) - 1
    return exps


def single_derivative_closed(n: int, k: int, r: int) -> SymPoly:
    """Closed form in Schur functions of the alphabet with xi_k removed."""
    if r == k or not (1 <= r <= n and 1 <= k <= n):
        raise ValueError("need distinct r, k in 1..n")
    ring = PsiRing(n)
    sub = [f"xi{j}" for j in _omit(full(n), k)]
    e_full = elementary_all(ring.names, list(ring.xi))
    e_sub = elementary_all(ring.names, sub)

    def E(es, m):
        return es[m] if 0 <= m < len(es) else SymPoly(ring.names)

    def s2(i, j):
        # Schur function of (2^i 1^(j-i-1)) in the reduced alphabet
        lam = (2,) * i + (1,) * (j - i - 1)
        return schur(ring.names, sub, lam)

    total = SymPoly(ring.names)
    if r < k:
        for i in range(0, r):
            for j in range(r, n + 1):
                total = total + s2(i, j) * _xmono(ring, _stair(i, j, (r,)))
        total = total * ring.xi_var(k)
        for i in range(0, r):
            for j in range(k, n):
                term = E(e_full, i) * E(e_sub, j) * _xmono(ring, _stair(i, j, (r, k)))
                total = total + term * (ring.x(k) - ring.x(j + 1))
        return total
    for i in range(0, r):
        for j in range(r, n + 1):
            total = total - s2(i, j) * _xmono(ring, _stair(i, j, (k, r)))
    for i in range(0, k):
        for j in range(r, n + 1):
            term = E(e_sub, i) * E(e_full, j) * _xmono(ring, _stair(i, j, (k, r)))
            total = total - term * (ring.x(i + 1) - ring.x(k))
    return total


def ratio_derivative_oracle(n: int, r: int) -> SymPoly:
    """Numerator of d/dxi_r (Psi^{1..n}_{1..n} / Psi^{2..n}_{2..n})."""
    ring = PsiRing(n)
    P = psi(ring, full(n), full(n))
    Q = psi(ring, tuple(range(2, n + 1)), tuple(range(2, n + 1)))
    v = f"xi{r}"
    return P.derivative(v) * Q - P * Q.derivative(v)


def ratio_derivative_closed(n: int, r: int) -> SymPoly:
    """sum_{0<=j<=i<=n-2} s'_{ij} X_{1..j} X_{2..i+1} (X_{j+1} - X_{i+2}).

    s'_{ij} = e_i e_j - e_{i+1} e_{j-1} over xi_2..xi_n without xi_r.
    """
    if not 2 <= r <= n:
        raise ValueError("need 2 <= r <= n")
    ring = PsiRing(n)
    sub = [f"xi{j}" for j in range(2, n + 1) if j != r]
    es = elementary_all(ring.names, sub)

    def E(m):
        return es[m] if 0 <= m < len(es) else SymPoly(ring.names)

    total = SymPoly(ring.names)
    for i in range(0, n - 1):
        for j in range(0, i + 1):
            coeff = E(i) * E(j) - E(i + 1) * E(j - 1)
            mono = ring.xprod(list(range(1, j + 1)) + list(range(2, i + 2)))
            total = total + coeff * mono * (ring.x(j + 1) - ring.x(i + 2))
    return total


def ratio_limit_identity(n: int) -> bool:
    """Setting xi_n = 0 drops the last index from both Psi's of the ratio."""
    ring = PsiRing(n)
    zero = {f"xi{n}": ring.const(0)}
    P = psi(ring, full(n), full(n)).substitute(zero)
    Q = psi(ring, tuple(range(2, n + 1)), tuple(range(2, n + 1))).substitute(zero)
    return P == psi(ring, full(n - 1), full(n - 1)) and Q == psi(ring, tuple(range(2, n)), tuple(range(2, n)))


# ---------------------------------------------------------------------------
# resultant route
# ---------------------------------------------------------------------------

@dataclass
class ResultantPath:
    n: int
    sylvester_det_matches: bool
    schur_complement_matches_display: bool
    schur_complement_det_matches: bool
    reduced_det_matches: bool
    reduced_diagonal_matches: bool
    hadamard: Certificate | None


def factor_coefficients(ring: PsiRing, n: int) -> list:
    """a_0..a_{n-1} with Psi^{1..n-1}_{1..n minus k} = sum_j a_j xi_k^(n-1-j)."""
    e = elementary_all(ring.names, list(ring.xi))
    out = [None] * n
    for j in range(n):
        total = SymPoly(ring.names)
        for i in range(j, n):
            total = total + ring.xprod(range(1, i + 1)) * e[i - j]
        out[n - 1 - j] = total * (-1) ** j
    return out


def _sylvester(ring, g, f):
    """Rows of g (degree len(g)-1) then rows of f; coefficients highest first."""
    dg, df = len(g) - 1, len(f) - 1
    size = dg + df
    zero = SymPoly(ring.names)
    rows = []
    for s in range(df):
        rows.append([zero] * s + list(g) + [zero] * (size - s - len(g)))
    for s in range(dg):
        rows.append([zero] * s + list(f) + [zero] * (size - s - len(f)))
    return rows


def _det(mat, names):
    from .symmetric import det
    return det(mat, names)


def _inverse_unit_upper(mat, ring):
    n = len(mat)
    inv = [[ring.const(1) if i == j else SymPoly(ring.names) for j in range(n)] for i in range(n)]
    for col in range(n):
        for i in range(col - 1, -1, -1):
            acc = SymPoly(ring.names)
            for t in range(i + 1, col + 1):
                if mat[i][t].terms and inv[t][col].terms:
                    acc = acc + mat[i][t] * inv[t][col]
            inv[i][col] = -acc
    return inv


def schur_complement_display(ring, n):
    """Printed n x n matrix, 0-indexed."""
    e = elementary_all(ring.names, list(ring.xi))

    def E(k):
        return e[k] if 0 <= k <= n else SymPoly(ring.names)

    mat = []
    for i in range(n):
        row = []
        for j in range(n):
            total = SymPoly(ring.names)
            if i < j:
                for k in range(j + 1, n + 1):
                    total = total + ring.xprod(range(1, k + i - j + 1)) * E(k)
                total = total * (-1) ** (j - i - 1)
            else:
                for k in range(0, j + 1):
                    total = total + ring.xprod(range(1, k + i - j + 1)) * E(k)
                total = total * (-1) ** (i - j)
            row.append(total)
        mat.append(row)
    return mat


def reduced_matrix(ring, n):
    """Printed (n-1) x (n-1) matrix, 1-indexed entries."""
    e = elementary_all(ring.names, list(ring.xi))

    def E(k):
        return e[k] if 0 <= k <= n else SymPoly(ring.names)

    mat = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            if i == j:
                upper = tuple(range(1, i + 1)) + tuple(range(i, n))
                row.append(psi(ring, upper, full(n)))
                continue
            total = SymPoly(ring.names)
            if i < j:
                for k in range(j + 1, n + 1):
                    m = k + i - j
                    total = total + ring.xprod(range(1, m)) * (ring.x(i) - ring.x(m)) * E(k)
            else:
                for k in range(0, j + 1):
                    m = k + i - j
                    total = total + ring.xprod(range(1, m)) * (ring.x(m) - ring.x(i)) * E(k)
            row.append(total * (-1) ** abs(j - i))
        mat.append(row)
    return mat


def resultant_path(n: int, certify: bool = True) -> ResultantPath:
    if n < 2:
        raise ValueError("need n >= 2")
    ring = PsiRing(n)
    _, rhs = conj_repeated_index(ring, n)
    xi = ring.xi
    # g(y) = prod (y - xi_j), coefficients highest first
    g = [ring.e(k, full(n)) * (-1) ** k for k in range(n + 1)]
    f = factor_coefficients(ring, n)
    syl = _sylvester(ring, g, f)
    syl_ok = _det(syl, ring.names) == rhs
    d = n - 1
    A = [row[:d] for row in syl[:d]]
    B = [row[d:] for row in syl[:d]]
    C = [row[:d] for row in syl[d:]]
    D = [row[d:] for row in syl[d:]]
    Ainv = _inverse_unit_upper(A, ring)
    AinvB = [[sum((Ainv[i][t] * B[t][j] for t in range(d)), SymPoly(ring.names)) for j in range(n)]
             for i in range(d)]
    comp = [[D[i][j] - sum((C[i][t] * AinvB[t][j] for t in range(d)), SymPoly(ring.names))
             for j in range(n)] for i in range(n)]
    display = schur_complement_display(ring, n)
    comp_display_ok = all(comp[i][j] == display[i][j] for i in range(n) for j in range(n))
    comp_det_ok = _det(comp, ring.names) == rhs
    red = reduced_matrix(ring, n)
    red_ok = _det(red, ring.names) == rhs
    lhs, _ = conj_repeated_index(ring, n)
    diag = ring.const(1)
    for i in range(n - 1):
        diag = diag * red[i][i]
    diag_ok = diag == lhs
    had = None
    if certify and n <= 4:
        had = difference_positivity(diag - _det(red, ring.names), ring, "hadamard")
    return ResultantPath(n, syl_ok, comp_display_ok, comp_det_ok, red_ok, diag_ok, had)


# ---------------------------------------------------------------------------
# collinear plus one point
# ---------------------------------------------------------------------------

def collinear_plus_value(lams) -> Fraction:
    """1 + l_n e_1 + l_n l_{n-1} e_2 + ... for the alphabet lams."""
    lams = [Fraction(x) for x in lams]
    n = len(lams)
    e = [Fraction(1)] + [Fraction(0)] * n
    for x in lams:
        for k in range(n, 0, -1):
            e[k] += x * e[k - 1]
    total, pref = Fraction(0), Fraction(1)
    for k in range(n + 1):
        total += pref * e[k]
        if k < n:
            pref *= lams[n - 1 - k]
    return total


def collinear_plus_matrix(lams) -> list:
    """(n+1) x (n+1) bidiagonal matrix whose determinant is the value above."""
    lams = [Fraction(x) for x in lams]
    n = len(lams)
    e = [Fraction(1)] + [Fraction(0)] * n
    for x in lams:
        for k in range(n, 0, -1):
            e[k] += x * e[k - 1]
    m = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        m[i][i] = Fraction(1)
        m[i][i + 1] = lams[i]
    for j in range(n + 1):
        m[n][j] = (-1) ** (n - j) * e[n - j]
    return m


def fraction_det(m) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    sign, total = 1, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        total *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for t in range(c, n):
                    m[r][t] -= f * m[c][t]
    return sign * total


def collinear_plus_determinant(lams) -> dict:
    value = collinear_plus_value(lams)
    mat = fraction_det(collinear_plus_matrix(lams))
    lower = Fraction(1)
    for x in lams:
        lower *= 1 + Fraction(x) ** 2
    return {"value": value, "matrix_det": mat, "lower_bound": lower,
            "matches": value == mat, "holds": value >= lower}
