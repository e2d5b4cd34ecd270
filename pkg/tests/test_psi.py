from fractions import Fraction

import numpy as np
import pytest

from atiyah_lab.families import make_collinear_plus
from atiyah_lab.geometry import normalized_abs
from atiyah_lab.symfunc import psi as P


def test_psi_small():
    ring = P.PsiRing(2)
    x1, x2, a, b = ring.x(1), ring.x(2), ring.xi_var(1), ring.xi_var(2)
    assert P.psi(ring, "12", "12") == 1 + (a + b) * x1 + a * b * x1 * x2
    assert P.psi(ring, "22", "12") == 1 + (a + b) * x2 + a * b * x2 * x2
    with pytest.raises(ValueError):
        P.psi(ring, "1", "12")


@pytest.mark.parametrize("cid,n", [("3.3", 2), ("3.3", 3), ("3.3", 4), ("3.4", 3), ("3.4", 4),
                                   ("3.9", 2), ("3.9", 3), ("3.9", 4), ("5.3", 3), ("5.3", 4), ("3.8", 4)])
def test_certificates_pass(cid, n):
    cert = P.conjecture_check(cid, n)
    assert cert.status == "PASS", cert.offending


def test_qtilde4():
    assert P.qtilde_check(4).status == "PASS"


def test_budget_refusal():
    with pytest.raises(P.BudgetExceeded):
        P.conjecture_check("3.3", 6)
    with pytest.raises(P.BudgetExceeded):
        P.conjecture_check("3.3", 8, long_running=True)


def test_general_n_endpoint_inconclusive():
    assert P.conjecture_check("3.8", 6).status == "INCONCLUSIVE"


def test_unknown_id():
    with pytest.raises(ValueError):
        P.conjecture_check("9.9", 3)


def test_negative_difference_is_not_pass():
    ring = P.PsiRing(2)
    diff = P.psi(ring, "1", "1") - P.psi(ring, "12", "12")
    cert = P.difference_positivity(diff, ring, "reversed", seed=1)
    assert cert.status == "FAIL" and cert.counterexample


def test_residual_n3():
    cert = P.conjecture_check("3.9", 3)
    ring = P.PsiRing(3)
    x1, x2 = ring.x(1), ring.x(2)
    xi = ring.xi_var(1) * ring.xi_var(2) * ring.xi_var(3)
    lhs, rhs = P.conj_repeated_index(ring, 3)
    assert lhs - rhs == x1 * (x1 - x2) ** 2 * xi
    assert cert.witness == {"m[1,1,1]": "X1^3 - 2*X1^2*X2 + X1*X2^2"}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_derivative_formulas(n):
    for k in range(1, n + 1):
        for r in range(1, n + 1):
            if r != k:
                assert P.single_derivative_closed(n, k, r) == P.single_derivative_oracle(n, k, r)
    for r in range(2, n + 1):
        assert P.ratio_derivative_closed(n, r) == P.ratio_derivative_oracle(n, r)


def test_ratio_limit():
    assert P.ratio_limit_identity(3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_resultant_path(n):
    res = P.resultant_path(n)
    assert res.sylvester_det_matches and res.schur_complement_det_matches and res.reduced_det_matches


def test_type_a_matrix_and_geometry(rng):
    for _ in range(5):
        ab = np.sort(rng.uniform(-2, 2, 3))
        member = make_collinear_plus(ab, 1.0)
        lam = member.extra["lambdas"]
        exact = [Fraction(v) for v in lam]
        out = P.collinear_plus_determinant(exact)
        assert out["matches"] and out["holds"]
        lower = float(np.prod([1 + v * v for v in lam]))
        assert float(out["value"]) / lower == pytest.approx(normalized_abs(member.config), rel=1e-10)


def test_endpoint_witness_relation():
    cmp = P.endpoint_witness_comparison()
    assert cmp["equals_reversed_printed_times_square"]
    assert cmp["vanishes_at_X2_eq_X4"] and not cmp["printed_vanishes_at_X2_eq_X4"]


def test_printed_witness_leading_terms():
    ring = P.PsiRing(4)
    w = P.printed_endpoint_witness(ring)
    # the display begins X2^2 X4^4 m_2222 + 2 X2^2 X4^3 m_2221
    assert P.PRINTED_ENDPOINT_WITNESS[((2, 2, 2, 2), 2, 4)] == 1
    assert P.PRINTED_ENDPOINT_WITNESS[((2, 2, 2, 1), 2, 3)] == 2
    assert not w.is_zero()
