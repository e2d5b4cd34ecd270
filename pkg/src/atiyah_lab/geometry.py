"""Point configurations and the normalized Atiyah determinant.

Each ordered pair (i, j) gets a unit spinor lifting the direction from point i
to point j.  Within an unordered pair the reverse spinor is the quaternionic
antipode of the forward one, so the symplectic pairing of the two is 1 and the
determinant needs no further normalization: it is invariant under a phase
change of any individual spinor.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import mpmath
import numpy as np

DEGENERATE_TOL = 1e-12
MARGINAL_BAND = 1e-6
CANCELLATION_RATIO = 1e-10
EXTENDED_BITS = 256


class DegenerateConfigurationError(ValueError):
    """Two points coincide (or a coordinate is not finite)."""


@dataclass(frozen=True)
class Configuration:
    points: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 3 or len(pts) < 2:
            raise ValueError("configuration needs at least two points in R^3")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, len(pts) + 1)))

    @property
    def n(self) -> int:
        return len(self.points)

    def without(self, k: int) -> "Configuration":
        keep = [i for i in range(self.n) if i != k]
        return Configuration(self.points[keep], tuple(self.labels[i] for i in keep))

    def distances(self) -> np.ndarray:
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt((diff**2).sum(-1))

    def fingerprint(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.points).tobytes()).hexdigest()[:16]


def as_configuration(points) -> Configuration:
    if isinstance(points, Configuration):
        return points
    pts = np.array(points, dtype=float)
    if pts.ndim == 2 and pts.shape[1] == 2:
        pts = np.hstack([pts, np.zeros((len(pts), 1))])
    return Configuration(pts)


def validate(config: Configuration) -> None:
    if not np.all(np.isfinite(config.points)):
        raise DegenerateConfigurationError("non-finite coordinate")
    d = config.distances()
    scale = max(1.0, float(np.abs(config.points).max()))
    iu = np.triu_indices(config.n, 1)
    bad = np.nonzero(d[iu] <= DEGENERATE_TOL * scale)[0]
    if len(bad):
        i, j = iu[0][bad[0]], iu[1][bad[0]]
        raise DegenerateConfigurationError(f"points {i + 1} and {j + 1} coincide")


# ---------------------------------------------------------------------------
# spinor lift
# ---------------------------------------------------------------------------

def hopf_lift(v) -> tuple[complex, complex]:
    """Unit spinor (a, b) with b/a the stereographic image of direction v."""
    v = np.asarray(v, dtype=float)
    x, y, z = v / np.linalg.norm(v)
    # branch swap away from the pole where the first chart is singular
    if z >= 0:
        return complex(np.sqrt((1 + z) / 2)), complex(x, y) / np.sqrt(2 * (1 + z))
    return complex(x, -y) / np.sqrt(2 * (1 - z)), complex(np.sqrt((1 - z) / 2))


def antipode(s):
    a, b = s
    return (-b.conjugate(), a.conjugate())


def pair_spinors(config: Configuration, phases=None) -> dict:
    """Spinor for every ordered pair; phases maps (i, j) to a unit complex factor."""
    pts = config.points
    spinors = {}
    for i in range(config.n):
        for j in range(i + 1, config.n):
            s = hopf_lift(pts[j] - pts[i])
            spinors[i, j] = s
            spinors[j, i] = antipode(s)
    if phases:
        for key, ph in phases.items():
            a, b = spinors[key]
            spinors[key] = (a * ph, b * ph)
    return spinors


def atiyah_matrix(config: Configuration, phases=None) -> np.ndarray:
    """Row i holds the coefficients of prod_j (b_ij x - a_ij y), highest x power first."""
    n = config.n
    spinors = pair_spinors(config, phases)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        row = np.array([1.0 + 0j])
        for j in range(n):
            if j != i:
                a, b = spinors[i, j]
                row = np.convolve(row, [b, -a])
        m[i] = row
    return m


def _bracket_normalizer(config, phases) -> complex:
    # product of symplectic pairings; 1 unless phases were injected
    if not phases:
        return 1.0
    spinors = pair_spinors(config, phases)
    total = 1.0 + 0j
    for i in range(config.n):
        for j in range(i + 1, config.n):
            (a1, b1), (a2, b2) = spinors[i, j], spinors[j, i]
            total *= a1 * b2 - b1 * a2
    return total


def _atiyah_matrix_mp(config: Configuration):
    n = config.n
    pts = [[mpmath.mpf(float(c)) for c in p] for p in config.points]
    spinors = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = [pts[j][k] - pts[i][k] for k in range(3)]
            r = mpmath.sqrt(sum(c * c for c in v))
            x, y, z = (c / r for c in v)
            if z >= 0:
                a = mpmath.mpc(mpmath.sqrt((1 + z) / 2))
                b = mpmath.mpc(x, y) / mpmath.sqrt(2 * (1 + z))
            else:
                a = mpmath.mpc(x, -y) / mpmath.sqrt(2 * (1 - z))
                b = mpmath.mpc(mpmath.sqrt((1 - z) / 2))
            spinors[i, j] = (a, b)
            spinors[j, i] = (-mpmath.conj(b), mpmath.conj(a))
    m = mpmath.matrix(n, n)
    for i in range(n):
        row = [mpmath.mpc(1)]
        for j in range(n):
            if j == i:
                continue
            a, b = spinors[i, j]
            new = [mpmath.mpc(0)] * (len(row) + 1)
            for k, c in enumerate(row):
                new[k] += c * b
                new[k + 1] -= c * a
            row = new
        for k in range(n):
            m[i, k] = row[k]
    return m


# ---------------------------------------------------------------------------
# determinant
# ---------------------------------------------------------------------------

@dataclass
class AtiyahValue:
    raw: complex
    normalized_abs: float
    energy: float
    precision_used: str
    fingerprint: str = field(default="")
    excess: float = 0.0  # |D| - 1 evaluated before rounding to double


def _parse_precision(precision: str) -> int | None:
    if precision in (None, "double"):
        return None
    if precision.startswith("extended"):
        _, _, bits = precision.partition(":")
        return int(bits) if bits else EXTENDED_BITS
    raise ValueError(f"unknown precision {precision!r}")


def _extended_det(config: Configuration, bits: int) -> tuple[complex, float]:
    with mpmath.workprec(bits):
        d = mpmath.det(_atiyah_matrix_mp(config))
        return complex(d), float(abs(d) - 1)


def atiyah_determinant(points, precision: str = "double", phases=None) -> AtiyahValue:
    """Normalized determinant with automatic escalation for marginal values.

    precision is "double" or "extended:<bits>".  In double mode the value is
    recomputed at 256 bits when |D| is within 1e-6 of 1 or when the raw value is
    tiny relative to the product of row norms.
    """
    config = as_configuration(points)
    validate(config)
    bits = _parse_precision(precision)
    if bits is not None and not phases:
        raw, excess = _extended_det(config, bits)
        used = f"extended:{bits}"
    else:
        m = atiyah_matrix(config, phases)
        raw = complex(np.linalg.det(m)) / _bracket_normalizer(config, phases)
        used = "double"
        excess = abs(raw) - 1
        row_scale = float(np.prod(np.linalg.norm(m, axis=1)))
        if not phases and (abs(abs(raw) - 1) < MARGINAL_BAND or abs(raw) < CANCELLATION_RATIO * row_scale):
            raw, excess = _extended_det(config, EXTENDED_BITS)
            used = f"extended:{EXTENDED_BITS}"
    mag = abs(raw)
    eng = -float(np.log1p(excess)) if mag > 0 else float("inf")
    return AtiyahValue(raw, mag, eng, used, config.fingerprint(), excess)


def normalized_abs(points, precision: str = "double") -> float:
    return atiyah_determinant(points, precision).normalized_abs


def energy(points) -> float:
    return atiyah_determinant(points).energy


# ---------------------------------------------------------------------------
# batched evaluation for Monte Carlo scans
# ---------------------------------------------------------------------------

def batch_abs(points: np.ndarray) -> np.ndarray:
    """|D| for a stack of configurations with shape (B, n, 3), double precision."""
    pts = np.asarray(points, dtype=float)
    bsz, n, _ = pts.shape
    diff = pts[:, None, :, :] - pts[:, :, None, :]  # diff[b, i, j] = p_j - p_i
    norm = np.linalg.norm(diff, axis=-1)
    idx = np.arange(n)
    norm[:, idx, idx] = 1.0
    u = diff / norm[..., None]
    x, y, z = u[..., 0], u[..., 1], u[..., 2]
    north = z >= 0
    with np.errstate(divide="ignore", invalid="ignore"):
        a_n = np.sqrt((1 + z) / 2) + 0j
        b_n = (x + 1j * y) / np.sqrt(2 * (1 + z))
        a_s = (x - 1j * y) / np.sqrt(2 * (1 - z))
        b_s = np.sqrt((1 - z) / 2) + 0j
    a = np.where(north, a_n, a_s)
    b = np.where(north, b_n, b_s)
    # lower triangle from the antipode of the upper triangle
    lo = np.tril_indices(n, -1)
    a_up, b_up = a[:, lo[1], lo[0]], b[:, lo[1], lo[0]]
    a[:, lo[0], lo[1]] = -np.conj(b_up)
    b[:, lo[0], lo[1]] = np.conj(a_up)
    m = np.zeros((bsz, n, n), dtype=complex)
    for i in range(n):
        row = np.ones((bsz, 1), dtype=complex)
        for j in range(n):
            if j == i:
                continue
            nxt = np.zeros((bsz, row.shape[1] + 1), dtype=complex)
            nxt[:, :-1] += row * b[:, i, j, None]
            nxt[:, 1:] -= row * a[:, i, j, None]
            row = nxt
        m[:, i] = row
    return np.abs(np.linalg.det(m))
