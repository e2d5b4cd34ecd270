"""Closed-form determinants for m points on an axis plus a regular n-gon around it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .checkers import Verdict, _verdict
from .families import make_dihedral
from .geometry import atiyah_determinant


@dataclass(frozen=True)
class DihedralSpec:
    m: int
    n: int
    lambdas: tuple

    def __post_init__(self):
        lam = tuple(float(v) for v in self.lambdas)
        object.__setattr__(self, "lambdas", lam)
        if self.n < 2:
            raise ValueError("polygon order n must be at least 2")
        if len(lam) != self.m:
            raise ValueError("need exactly m lambda values")
        if any(v <= 0 for v in lam) or any(b <= a for a, b in zip(lam, lam[1:])):
            raise ValueError("lambdas must be positive and strictly increasing")

    @property
    def N(self) -> int:
        return self.m + self.n

    @classmethod
    def from_abscissae(cls, n: int, abscissae) -> "DihedralSpec":
        a = [float(v) for v in abscissae]
        return cls(len(a), n, tuple(v + math.hypot(v, 1.0) for v in a))

    def abscissae(self) -> list:
        # inverse of lambda = a + sqrt(1 + a^2)
        return [(v - 1 / v) / 2 for v in self.lambdas]

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "lambda": list(self.lambdas)}

    @classmethod
    def from_json(cls, data: dict) -> "DihedralSpec":
        lam = data.get("lambda", [])
        return cls(int(data.get("m", len(lam))), int(data["n"]), tuple(lam))


# ---------------------------------------------------------------------------
# polygon factor
# ---------------------------------------------------------------------------

def cot_coeffs(n: int) -> np.ndarray:
    """c_j = prod_{k <= j} cot(k pi / 2n), the coefficients of the polygon factor.

    Accumulated at 128 bits so the large middle coefficients (about 1e5 at
    n = 24) are correctly rounded.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    with mpmath.workprec(128):
        c, acc = [1.0], mpmath.mpf(1)
        for j in range(1, n):
            acc *= mpmath.cot(j * mpmath.pi / (2 * n))
            c.append(float(acc))
    return np.array(c)


def polygon_factor_direct(n: int) -> np.ndarray:
    """Coefficients (highest power first) of prod_{s=1}^{n-1} (y - i exp(i pi s / n)), expanded at 128 bits."""
    with mpmath.workprec(128):
        coeffs = [mpmath.mpc(1)]
        for s in range(1, n):
            root = 1j * mpmath.exp(1j * mpmath.pi * s / n)
            coeffs = [a - root * b for a, b in zip(coeffs + [0], [0] + coeffs)]
        return np.array([complex(v) for v in coeffs])


def polygon_power_sums(n: int, s: int) -> complex:
    """Sum over k = 1..n-1 of (-i exp(i pi k / n))^s."""
    return complex(sum((-1j * np.exp(1j * np.pi * k / n)) ** s for k in range(1, n)))


def power_sum_formula(n: int, s: int) -> float:
    """Closed value of polygon_power_sums for 1 <= s < 2n with n not dividing s/2."""
    if s % 2 == 0:
        return (-1.0) ** (s // 2 - 1)
    return (-1.0) ** ((s - 1) // 2) / math.tan(s * math.pi / (2 * n))


def is_unimodal(c) -> bool:
    mid = int(np.argmax(c))
    return all(c[i] <= c[i + 1] + 1e-12 for i in range(mid)) and all(c[i] >= c[i + 1] - 1e-12 for i in range(mid, len(c) - 1))


# ---------------------------------------------------------------------------
# coefficient chains
# ---------------------------------------------------------------------------

def elementary_values(lams) -> np.ndarray:
    """[E_0, ..., E_m] of the given numbers."""
    e = np.zeros(len(lams) + 1)
    e[0] = 1.0
    for v in lams:
        e[1:] = e[1:] + v * e[:-1]
    return e


def e_tilde(spec: DihedralSpec) -> np.ndarray:
    """Coefficients of h(y) prod(y + lambda_i): E~_k = sum_i c_i E_{k-i}."""
    return np.convolve(cot_coeffs(spec.n), elementary_values(spec.lambdas))


def _lam(spec, idx):
    return spec.lambdas[idx - 1]


def f_coeffs(spec: DihedralSpec) -> np.ndarray:
    """f_k = sum_s (prod_{j <= s} lambda_{N - jn - k}^n) E~_{k + sn}, stopping at index N - 1."""
    et = e_tilde(spec)
    n, N = spec.n, spec.N
    out = np.zeros(n)
    for k in range(n):
        total, weight, s = 0.0, 1.0, 0
        while k + s * n <= N - 1:
            if s > 0:
                weight *= _lam(spec, N - s * n - k) ** n
            total += weight * et[k + s * n]
            s += 1
        out[k] = total
    return out


def phi(spec: DihedralSpec, k: int, l: int) -> float:
    """Coefficient of E_l in f_k; l - k = s n - i with s >= 0, 0 <= i < n."""
    n, N = spec.n, spec.N
    s = -((k - l) // n)  # ceil((l - k) / n)
    i = s * n - (l - k)
    weight = 1.0
    for j in range(1, s + 1):
        weight *= _lam(spec, N - j * n - k) ** n
    return weight * cot_coeffs(n)[i]


def phi_product_identity(spec: DihedralSpec, l: int) -> tuple[float, float]:
    """(prod_k phi_kl, prod_{j<l} lambda_{m-j}^n prod c_j)."""
    lhs = math.prod(phi(spec, k, l) for k in range(spec.n))
    rhs = math.prod(_lam(spec, spec.m - j) ** spec.n for j in range(l)) * float(np.prod(cot_coeffs(spec.n)))
    return lhs, rhs


def f_from_phi(spec: DihedralSpec) -> np.ndarray:
    e = elementary_values(spec.lambdas)
    return np.array([sum(phi(spec, k, l) * e[l] for l in range(spec.m + 1)) for k in range(spec.n)])


# ---------------------------------------------------------------------------
# determinant and bounds
# ---------------------------------------------------------------------------

def closed_det(spec: DihedralSpec) -> float:
    """n^(n/2) prod_k f_k."""
    return spec.n ** (spec.n / 2) * float(np.prod(f_coeffs(spec)))


def collinear_reference(spec: DihedralSpec) -> float:
    """2^C(n,2) prod_{i=1..m} (1 + lambda_i^2)^n."""
    n = spec.n
    return 2.0 ** math.comb(n, 2) * math.prod((1 + v * v) ** n for v in spec.lambdas)


def check_collinear_bound(spec: DihedralSpec) -> Verdict:
    margin = closed_det(spec) - collinear_reference(spec)
    # relative rounding of the two large products
    tol = 1e-12 * collinear_reference(spec)
    if -tol < margin < 0:
        margin = 0.0
    return _verdict("C2", margin, "double", f"dihedral:{spec.m}:{spec.n}", {"relative": margin / collinear_reference(spec)})


@dataclass
class BoundChain:
    prod_f: float
    bound1: float
    bound2: float

    @property
    def holds(self) -> bool:
        tol = 1e-10 * max(1.0, abs(self.prod_f))
        return self.prod_f >= self.bound1 - tol and self.bound1 >= self.bound2 - tol


def coefficient_bound_chain(spec: DihedralSpec) -> BoundChain:
    """prod f_k >= prod c (sum_l prod_{j<l} lambda_{m-j} E_l)^n >= prod c prod (1 + lambda_i^2)^n."""
    e = elementary_values(spec.lambdas)
    pc = float(np.prod(cot_coeffs(spec.n)))
    inner = sum(math.prod(_lam(spec, spec.m - j) for j in range(l)) * e[l] for l in range(spec.m + 1))
    return BoundChain(float(np.prod(f_coeffs(spec))), float(pc * inner ** spec.n),
                      float(pc * math.prod((1 + v * v) ** spec.n for v in spec.lambdas)))


def numeric_abs(spec: DihedralSpec, precision: str = "double") -> float:
    member = make_dihedral(spec.m, spec.n, spec.abscissae())
    return atiyah_determinant(member.config, precision).normalized_abs


def calibration_ratio(spec: DihedralSpec) -> float:
    """closed_det / (numeric |D| prod (1 + lambda_i^2)^n); constant in lambda for fixed (m, n)."""
    return closed_det(spec) / (numeric_abs(spec) * math.prod((1 + v * v) ** spec.n for v in spec.lambdas))


def random_spec(rng: np.random.Generator, m: int, n: int, low: float = -2.0, high: float = 2.0) -> DihedralSpec:
    while True:
        a = np.sort(rng.uniform(low, high, m))
        if m < 2 or np.min(np.diff(a)) > 1e-3:
            return DihedralSpec.from_abscissae(n, a)
