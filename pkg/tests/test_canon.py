import pytest

from qschur.canon import (
    CanonicalBasis,
    CanonicalElem,
    MonomialNotFound,
    d_stable,
    gs_canonical,
    gs_stable,
    is_unitriangular,
    monomial_for,
    positivity_report,
    standard_element,
)
from qschur.coeffring import ONE, v
from qschur.periodic import PeriodicMatrix, idem_matrix
from qschur.schur import AlgebraElem, E, F, apply_word

A_PER = PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, 1): 1})
B_PRIME = PeriodicMatrix(2, (0, 1), {(1, 2): 1})


def test_single_entry_monomial_is_a_divided_power():
    A = PeriodicMatrix(2, (0, 1), {(1, 1): 2})
    assert monomial_for(A) == (E(1, 2),)
    lower = PeriodicMatrix(2, (0, 1), {(2, -1): 2})
    assert monomial_for(lower, "lower") == (F(1, 2),)


def test_two_step_monomial():
    word = monomial_for(B_PRIME)
    assert word == (E(1), E(2))
    x = apply_word(word, (1, 1))
    assert x == AlgebraElem.basis(B_PRIME) + AlgebraElem.basis(A_PER, v(-1))
    assert is_unitriangular(x, B_PRIME)


def test_periodic_target_has_no_monomial():
    with pytest.raises(MonomialNotFound):
        monomial_for(A_PER)
    with pytest.raises(ValueError):
        monomial_for(PeriodicMatrix(2, (1, 0), {(2, -1): 1}))


def test_standard_element():
    assert standard_element(idem_matrix((2, 1))) == ((), (2, 1))
    assert standard_element(B_PRIME) == ((E(1), E(2)), (1, 1))


def test_diagonal_and_minimal_targets():
    basis = CanonicalBasis()
    A = idem_matrix((1, 2))
    elem = gs_canonical(A, basis=basis)
    assert elem.expansion == AlgebraElem.basis(A)
    assert elem.presentation == {((), (1, 2)): ONE}


def test_witness_needs_no_correction():
    elem = gs_canonical(B_PRIME, basis=CanonicalBasis())
    assert elem.gs_steps == 0
    assert elem.expansion == AlgebraElem.basis(B_PRIME) + AlgebraElem.basis(A_PER, v(-1))
    assert all(elem.checks().values())
    with pytest.raises(ValueError):
        gs_canonical(B_PRIME, D=3)
    with pytest.raises(ValueError):
        gs_canonical(A_PER, basis=CanonicalBasis())


def test_gram_schmidt_corrects_where_needed():
    # E1 F1 on (1,1): the diagonal term carries v^0, so one correction step is needed
    A = PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, -1): 1})
    elem = gs_canonical(A, basis=CanonicalBasis())
    assert all(elem.checks().values())
    assert elem.expansion.coeff(A) == ONE


def test_cache_round_trip(tmp_path):
    cold = CanonicalBasis(str(tmp_path)).get(B_PRIME)
    warm = CanonicalBasis(str(tmp_path)).get(B_PRIME)
    assert cold.to_json() == warm.to_json()
    assert CanonicalElem.from_json(cold.to_json()).expansion == cold.expansion


def test_corrupt_cache_entry_is_recomputed(tmp_path):
    basis = CanonicalBasis(str(tmp_path))
    good = basis.get(B_PRIME)
    path = basis._cache_path(B_PRIME)
    path.write_text("{not json")
    again = CanonicalBasis(str(tmp_path)).get(B_PRIME)
    assert again.to_json() == good.to_json()


def test_stable_family_and_positivity():
    basis = CanonicalBasis()
    assert d_stable(B_PRIME, basis)
    fam = gs_stable(B_PRIME, basis=basis)
    assert fam.levels == (2, 4)
    one = gs_stable(idem_matrix((1, 0)), basis=basis)
    rep = positivity_report(one, one, order=6)
    assert rep.verdict and rep.series == [1, 0, 0, 0, 0, 0, 0]
    f_family = gs_stable(PeriodicMatrix(2, (1, 0), {(2, -1): 1}), basis=basis)
    rep = positivity_report(f_family, f_family, order=6)
    assert rep.verdict and rep.series == [1, 0, 1, 0, 1, 0, 1]
