import pytest

from atiyah_lab.symfunc import identities as ident


RESULTS = ident.all_identities()


@pytest.mark.parametrize("family,result", [(f, r) for f, rs in RESULTS.items() for r in rs],
                         ids=lambda v: v if isinstance(v, str) else v.name)
def test_identity_truth_value(family, result):
    assert result.holds == (result.name not in ident.KNOWN_MISPRINTS)


def test_no_unexpected():
    assert ident.unexpected_results(RESULTS) == []


def test_every_misprint_has_a_corrected_partner():
    names = {r.name for rs in RESULTS.values() for r in rs}
    assert ident.KNOWN_MISPRINTS <= names
    assert "5: with +2ef" in names and "cyclic sum regrouping with 6abc" in names
    assert "second explicit formula (squared difference)" in names


def test_eleven_term_witness():
    coeffs = list(ident.EDGE_TANGENTIAL_DIFFERENCE.values())
    assert len(coeffs) == 11
    assert sorted(coeffs) == sorted([1, 3, 1, 2, 7, 5, 3, 7, 8, 8, 3])
    assert ident.edge_tangential_c3_identity().holds


def test_wedge_formulas_numeric():
    a, b, x, y = 1.0, 1.1, 0.8, 1.3
    from atiyah_lab.closed_forms import re_D4
    ref = re_D4(ident.wedge_distances(a, b, x, y))
    assert ident.wedge_first_formula(a, b, x, y) == pytest.approx(ref, rel=1e-12)
    assert ident.wedge_second_formula(a, b, x, y) == pytest.approx(ref, rel=1e-12)
    assert ident.wedge_second_formula(a, b, x, y, as_printed=True) != pytest.approx(ref, rel=1e-6)
