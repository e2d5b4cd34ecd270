from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from atiyah_lab.symfunc.poly import SymPoly, pack, unpack, variables
from atiyah_lab.symfunc.symmetric import (augmented_monomial, conjugate, det, dominates, elementary,
                                          is_symmetric, monomial, monomial_expansion, muirhead_certificate,
                                          partitions, power_sum, schur, schur_expansion, schur_tableaux)

NAMES = ("a", "b", "c")
term = st.tuples(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5))
polys = st.lists(term, max_size=6).map(lambda ts: SymPoly.from_dict(NAMES, dict(ts)))


def to_sympy(p: SymPoly):
    syms = sympy.symbols(NAMES)
    return sympy.expand(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod([s**e for s, e in zip(syms, ex)])
                            for ex, c in ((ex, Fraction(c)) for ex, c in p.items())))


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_arithmetic_matches_sympy(p, q):
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))


@settings(max_examples=40, deadline=None)
@given(polys, st.integers(0, 3))
def test_power_and_derivative(p, k):
    assert to_sympy(p**k) == sympy.expand(to_sympy(p) ** k)
    assert to_sympy(p.derivative("b")) == sympy.expand(sympy.diff(to_sympy(p), sympy.Symbol("b")))


@settings(max_examples=40, deadline=None)
@given(polys, st.tuples(*[st.integers(-4, 4)] * 3))
def test_evaluate(p, vals):
    syms = sympy.symbols(NAMES)
    assert p.evaluate(vals) == to_sympy(p).subs(dict(zip(syms, vals)))


def test_pack_roundtrip():
    e = (3, 0, 7, 12)
    assert unpack(pack(e), 4) == e


def test_substitute_and_zero():
    a, b, c = variables(NAMES)
    p = (a - b) * (a + b)
    assert p.substitute({"a": b}).is_zero()
    assert (a * a - b * b) == p
    with pytest.raises(ValueError):
        p + SymPoly.var(("x",), "x")


def test_division_by_scalar():
    a, b, c = variables(NAMES)
    assert ((2 * a) / 4).evaluate([1, 0, 0]) == Fraction(1, 2)


def test_negative_power_rejected():
    with pytest.raises(ValueError):
        variables(NAMES)[0] ** -1


def test_partitions_and_conjugate():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert conjugate((3, 1)) == (2, 1, 1)
    assert dominates((3, 1), (2, 2)) and not dominates((2, 2), (3, 1))


def test_schur_two_routes():
    alph = NAMES
    for lam in [(2, 1), (3,), (1, 1, 1), (2, 2), (3, 1, 1)]:
        assert schur(NAMES, alph, lam) == schur_tableaux(NAMES, alph, lam)


def test_schur_21_in_monomials():
    s = schur(NAMES, NAMES, (2, 1))
    assert s == monomial(NAMES, NAMES, (2, 1)) + 2 * monomial(NAMES, NAMES, (1, 1, 1))
    assert schur_expansion(s, NAMES) == {(2, 1): 1}


def test_newton_identity():
    e1, e2 = (elementary(NAMES, NAMES, k) for k in (1, 2))
    assert power_sum(NAMES, NAMES, 2) == e1 * e1 - 2 * e2


def test_monomial_expansion_and_symmetry():
    p = 3 * monomial(NAMES, NAMES, (2, 1)) - monomial(NAMES, NAMES, (1, 1, 1))
    assert is_symmetric(p, NAMES)
    assert monomial_expansion(p, NAMES) == {(2, 1): 3, (1, 1, 1): -1}
    assert not is_symmetric(variables(NAMES)[0], NAMES)


def test_augmented_monomial_counts_permutations():
    # m~_(1,1,0) over three variables is 2 m_(1,1)
    assert augmented_monomial(NAMES, NAMES, (1, 1)) == 2 * monomial(NAMES, NAMES, (1, 1))


def test_vandermonde():
    a, b, c = variables(NAMES)
    mat = [[SymPoly.const(NAMES, 1)] * 3, [a, b, c], [a * a, b * b, c * c]]
    assert det(mat, NAMES) == (b - a) * (c - a) * (c - b)


def test_muirhead_plan():
    plan = muirhead_certificate({(3, 1, 1, 1): 5, (2, 2, 2): 9, (2, 2, 1, 1): -14})
    assert plan is not None and sum(w for w, _, _ in plan) == 14
    assert muirhead_certificate({(2, 2): 1, (3, 1): -1}) is None
