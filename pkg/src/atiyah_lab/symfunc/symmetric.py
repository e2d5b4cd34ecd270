"""Symmetric function bases over an explicit alphabet of SymPoly variables."""

from __future__ import annotations

import itertools
from collections import Counter
from math import factorial, prod

from .poly import SymPoly, pack, BITS


def partitions(total: int, max_part: int | None = None, max_len: int | None = None):
    """Partitions of total in decreasing lexicographic order."""
    if max_part is None:
        max_part = total
    if total == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(total, max_part), 0, -1):
        for rest in partitions(total - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


def conjugate(lam) -> tuple:
    lam = [p for p in lam if p]
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def dominates(lam, mu) -> bool:
    """lam majorizes mu (equal sums, partial sums of lam at least those of mu)."""
    lam, mu = sorted(lam, reverse=True), sorted(mu, reverse=True)
    if sum(lam) != sum(mu):
        return False
    n = max(len(lam), len(mu))
    lam += [0] * (n - len(lam))
    mu += [0] * (n - len(mu))
    return all(a >= b for a, b in zip(itertools.accumulate(lam), itertools.accumulate(mu)))


def _index(names, alphabet):
    return [names.index(a) for a in alphabet]


def elementary(names, alphabet, k: int) -> SymPoly:
    if k < 0 or k > len(alphabet):
        return SymPoly(names)
    idx = _index(names, alphabet)
    return SymPoly(names, {sum(1 << (BITS * i) for i in sub): 1 for sub in itertools.combinations(idx, k)})


def elementary_all(names, alphabet) -> list:
    """[e_0, ..., e_len] of the alphabet."""
    return [elementary(names, alphabet, k) for k in range(len(alphabet) + 1)]


def monomial(names, alphabet, lam) -> SymPoly:
    """m_lam: sum over distinct permutations of lam padded to the alphabet length."""
    lam = tuple(p for p in lam if p)
    if len(lam) > len(alphabet):
        return SymPoly(names)
    idx = _index(names, alphabet)
    padded = lam + (0,) * (len(alphabet) - len(lam))
    terms = {}
    for perm in set(itertools.permutations(padded)):
        terms[sum(p << (BITS * i) for p, i in zip(perm, idx))] = 1
    return SymPoly(names, terms)


def stabilizer_size(lam, nvars: int) -> int:
    padded = tuple(lam) + (0,) * (nvars - len([p for p in lam if p]))
    return prod(factorial(c) for c in Counter(p for p in padded).values())


def augmented_monomial(names, alphabet, lam) -> SymPoly:
    """Sum over all permutations, counting repeats: |Stab(lam)| * m_lam."""
    return monomial(names, alphabet, lam) * stabilizer_size(lam, len(alphabet))


def schur(names, alphabet, lam) -> SymPoly:
    """s_lam as det(e_{lam'_i - i + j}) over the conjugate partition."""
    lamc = conjugate(lam)
    if not lamc:
        return SymPoly.const(names, 1)
    e = elementary_all(names, alphabet)

    def ek(k):
        return e[k] if 0 <= k < len(e) else SymPoly(names)

    size = len(lamc)
    mat = [[ek(lamc[i] - i + j) for j in range(size)] for i in range(size)]
    return det(mat, names)


def schur_tableaux(names, alphabet, lam) -> SymPoly:
    """s_lam as the sum over semistandard tableaux (independent oracle)."""
    lam = [p for p in lam if p]
    idx = _index(names, alphabet)
    cells = [(r, c) for r, length in enumerate(lam) for c in range(length)]
    terms: dict = {}
    fill: dict = {}
    m = len(alphabet)

    def rec(pos):
        if pos == len(cells):
            key = 0
            for v in fill.values():
                key += 1 << (BITS * idx[v])
            terms[key] = terms.get(key, 0) + 1
            return
        r, c = cells[pos]
        lo = 0
        if c > 0:
            lo = fill[r, c - 1]
        if r > 0:
            lo = max(lo, fill[r - 1, c] + 1)
        for v in range(lo, m):
            fill[r, c] = v
            rec(pos + 1)
        fill.pop((r, c), None)

    rec(0)
    return SymPoly(names, terms)


def power_sum(names, alphabet, k: int) -> SymPoly:
    idx = _index(names, alphabet)
    return SymPoly(names, {k << (BITS * i): 1 for i in idx})


def det(mat, names) -> SymPoly:
    """Determinant by cofactor expansion with memoized minors (small sizes)."""
    n = len(mat)
    if n == 0:
        return SymPoly.const(names, 1)
    memo: dict = {}

    def minor(row, cols):
        if row == n:
            return SymPoly.const(names, 1)
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = SymPoly(names)
        sign = 1
        for pos, col in enumerate(cols):
            entry = mat[row][col]
            if entry.terms:
                sub = minor(row + 1, cols[:pos] + cols[pos + 1:])
                total = total + (entry * sub if sign > 0 else -(entry * sub))
            sign = -sign
        memo[key] = total
        return total

    return minor(0, tuple(range(n)))


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------

def is_symmetric(poly: SymPoly, alphabet) -> bool:
    idx = _index(poly.names, alphabet)
    for a, b in zip(idx, idx[1:]):
        swapped = {}
        for e, c in poly.items():
            e = list(e)
            e[a], e[b] = e[b], e[a]
            swapped[pack(e)] = c
        if swapped != poly.terms:
            return False
    return True


def monomial_expansion(poly: SymPoly, alphabet) -> dict:
    """{partition: coefficient SymPoly in the other variables} for a poly symmetric in alphabet."""
    if not is_symmetric(poly, alphabet):
        raise ValueError("polynomial is not symmetric in the alphabet")
    idx = _index(poly.names, alphabet)
    out: dict = {}
    for key, group in poly.split(alphabet).items():
        if list(key) == sorted(key, reverse=True):
            out[tuple(p for p in key if p)] = group
    return out


def multi_monomial_expansion(poly: SymPoly, classes) -> dict:
    """Expansion in products of monomial functions of several disjoint alphabets."""
    for cls in classes:
        if len(cls) > 1 and not is_symmetric(poly, cls):
            raise ValueError(f"polynomial is not symmetric in {cls}")
    flat = [v for cls in classes for v in cls]
    out: dict = {}
    for key, group in poly.split(flat).items():
        parts, pos, ok = [], 0, True
        for cls in classes:
            seg = key[pos:pos + len(cls)]
            pos += len(cls)
            if list(seg) != sorted(seg, reverse=True):
                ok = False
                break
            parts.append(tuple(p for p in seg if p))
        if ok:
            out[tuple(parts)] = group
    return out


def schur_expansion(poly: SymPoly, alphabet) -> dict:
    """{partition: coefficient} for a symmetric poly with scalar coefficients."""
    rest = poly
    out: dict = {}
    names = poly.names
    while not rest.is_zero():
        mexp = monomial_expansion(rest, alphabet)
        # leading partition in lexicographic order
        lead = max(mexp, key=lambda lam: (sum(lam), tuple(lam) + (0,) * len(alphabet)))
        coeff = mexp[lead]
        if coeff.degree() > 0:
            raise ValueError("schur_expansion needs scalar coefficients")
        c = coeff.terms[0]
        out[lead] = c
        rest = rest - schur(names, alphabet, lead) * c
    return out


def muirhead_certificate(coeffs: dict):
    """Pair negative m-coefficients with dominating positive ones.

    coeffs maps partitions to rational coefficients of augmented monomial
    functions.  Returns a list of (weight, lam, mu) with lam dominating mu and
    the weights covering every negative coefficient, or None.
    """
    pos = {lam: c for lam, c in coeffs.items() if c > 0}
    neg = {mu: -c for mu, c in coeffs.items() if c < 0}
    plan = []
    for mu in sorted(neg, key=lambda p: tuple(p)):
        need = neg[mu]
        for lam in sorted(pos, key=lambda p: tuple(p), reverse=True):
            if need == 0:
                break
            if pos[lam] > 0 and dominates(lam, mu):
                w = min(need, pos[lam])
                plan.append((w, lam, mu))
                pos[lam] -= w
                need -= w
        if need > 0:
            return None
    return plan
