"""Sparse multivariate polynomials with exact rational coefficients.

Exponent vectors are packed into a single Python int, 16 bits per variable,
so monomial multiplication is integer addition.  Coefficients are ints where
possible and Fractions otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

BITS = 16
MASK = (1 << BITS) - 1


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


def pack(exps) -> int:
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MASK:
            raise OverflowError(f"exponent {e} out of range")
        key |= e << (BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple:
    return tuple((key >> (BITS * i)) & MASK for i in range(nvars))


class SymPoly:
    """Polynomial over Q in a fixed ordered tuple of variable names."""

    __slots__ = ("names", "terms")

    def __init__(self, names, terms=None):
        self.names = tuple(names)
        self.terms = {k: _norm(c) for k, c in (terms or {}).items() if c != 0}

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, names, c) -> "SymPoly":
        return cls(names, {0: c})

    @classmethod
    def var(cls, names, name) -> "SymPoly":
        names = tuple(names)
        return cls(names, {1 << (BITS * names.index(name)): 1})

    @classmethod
    def from_dict(cls, names, data: dict) -> "SymPoly":
        """data maps exponent tuples to coefficients."""
        return cls(names, {pack(e): c for e, c in data.items()})

    def _wrap(self, other) -> "SymPoly":
        if isinstance(other, SymPoly):
            if other.names != self.names:
                raise ValueError("polynomials live in different variable sets")
            return other
        if isinstance(other, (int, Fraction)):
            return SymPoly(self.names, {0: other})
        return NotImplemented

    # arithmetic ------------------------------------------------------------

    def __add__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return SymPoly(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return SymPoly(self.names, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymPoly(self.names, {k: c * other for k, c in self.terms.items()})
        other = self._wrap(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        return SymPoly(self.names, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymPoly(self.names, {k: Fraction(c) / other for k, c in self.terms.items()})
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = SymPoly.const(self.names, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._wrap(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def __repr__(self):
        return f"SymPoly({self.to_string()})"

    # inspection --------------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        """(exponent tuple, coefficient) pairs."""
        n = self.nvars
        for k, c in self.terms.items():
            yield unpack(k, n), c

    def as_dict(self) -> dict:
        return dict(self.items())

    def degree(self, name=None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e, _ in self.items())
        i = self.names.index(name)
        return max((k >> (BITS * i)) & MASK for k in self.terms)

    def min_coefficient(self):
        return min(self.terms.values()) if self.terms else 0

    def evaluate(self, values) -> object:
        """values is a mapping name -> number or a sequence in variable order."""
        if isinstance(values, dict):
            vals = [values.get(nm, 0) for nm in self.names]
        else:
            vals = list(values)
        total = 0
        for e, c in self.items():
            t = c
            for v, p in zip(vals, e):
                if p:
                    t = t * v**p
            total = total + t
        return total

    def to_string(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(nm if p == 1 else f"{nm}^{p}" for nm, p in zip(self.names, e) if p)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # structural operations ----------------------------------------------------

    def extend(self, new_names) -> "SymPoly":
        """Same polynomial in a larger alphabet; new names are appended."""
        names = self.names + tuple(n for n in new_names if n not in self.names)
        return SymPoly(names, self.terms)

    def rename(self, names) -> "SymPoly":
        if len(names) != self.nvars:
            raise ValueError("rename needs one name per variable")
        return SymPoly(names, self.terms)

    def embed(self, names) -> "SymPoly":
        """Re-express in another alphabet containing all variables that occur."""
        names = tuple(names)
        pos = [names.index(nm) if nm in names else None for nm in self.names]
        out = {}
        for e, c in self.items():
            new = [0] * len(names)
            for i, p in enumerate(e):
                if p:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.names[i]} missing from target")
                    new[pos[i]] = p
            out[pack(new)] = c
        return SymPoly(names, out)

    def derivative(self, name) -> "SymPoly":
        i = self.names.index(name)
        unit = 1 << (BITS * i)
        out = {}
        for k, c in self.terms.items():
            p = (k >> (BITS * i)) & MASK
            if p:
                out[k - unit] = c * p
        return SymPoly(self.names, out)

    def substitute(self, mapping: dict) -> "SymPoly":
        """Replace variables by polynomials in the same alphabet."""
        idx = {self.names.index(nm): p for nm, p in mapping.items()}
        powers: dict = {}
        result = SymPoly(self.names)
        acc: dict = {}
        for e, c in self.items():
            key = 0
            t = SymPoly.const(self.names, c)
            for i, p in enumerate(e):
                if not p:
                    continue
                if i in idx:
                    if (i, p) not in powers:
                        powers[i, p] = idx[i] ** p
                    t = t * powers[i, p]
                else:
                    key += p << (BITS * i)
            for k, v in t.terms.items():
                acc[k + key] = acc.get(k + key, 0) + v
        result.terms = {k: _norm(v) for k, v in acc.items() if v != 0}
        return result

    def shift(self, src, dst, new) -> "SymPoly":
        """Substitute src -> dst + new, where new is a variable name."""
        i, j, h = (self.names.index(n) for n in (src, dst, new))
        si, sj, sh = BITS * i, BITS * j, BITS * h
        out: dict = {}
        get = out.get
        for k, c in self.terms.items():
            a = (k >> si) & MASK
            if not a:
                out[k] = get(k, 0) + c
                continue
            base = k - (a << si)
            for t in range(a + 1):
                nk = base + ((a - t) << sj) + (t << sh)
                out[nk] = get(nk, 0) + c * comb(a, t)
        return SymPoly(self.names, out)

    def monomial_gcd(self) -> tuple:
        if not self.terms:
            return (0,) * self.nvars
        exps = list(e for e, _ in self.items())
        return tuple(min(col) for col in zip(*exps))

    def divide_monomial(self, exps) -> "SymPoly":
        d = pack(exps)
        return SymPoly(self.names, {k - d: c for k, c in self.terms.items()})

    def split(self, names) -> dict:
        """Group by exponents of the given variables: {exponent tuple: SymPoly in the rest}."""
        idx = [self.names.index(n) for n in names]
        groups: dict = {}
        for k, c in self.terms.items():
            sub = tuple((k >> (BITS * i)) & MASK for i in idx)
            rest = k
            for i, p in zip(idx, sub):
                rest -= p << (BITS * i)
            groups.setdefault(sub, {})[rest] = c
        return {s: SymPoly(self.names, t) for s, t in groups.items()}

    def reduce_squares(self, rules: dict) -> "SymPoly":
        """Normal form modulo v^2 = rules[v] for each listed variable v.

        The relations have pairwise coprime leading monomials v^2, so the
        remainder is canonical: the result is zero exactly when the input lies
        in the ideal they generate.
        """
        cur = self
        for name, repl in rules.items():
            i = cur.names.index(name)
            sh = BITS * i
            powers = {0: SymPoly.const(cur.names, 1)}
            acc: dict = {}
            for k, c in cur.terms.items():
                a = (k >> sh) & MASK
                if a < 2:
                    acc[k] = acc.get(k, 0) + c
                    continue
                q, r = divmod(a, 2)
                if q not in powers:
                    powers[q] = repl ** q
                base = k - (a << sh) + (r << sh)
                for kk, cc in powers[q].terms.items():
                    acc[base + kk] = acc.get(base + kk, 0) + c * cc
            cur = SymPoly(cur.names, acc)
            # substituted powers may reintroduce squares of earlier variables
        if any(cur.degree(n) >= 2 for n in rules):
            return cur.reduce_squares(rules)
        return cur


def variables(names) -> list:
    names = tuple(names)
    return [SymPoly.var(names, n) for n in names]
