from qschur.coeffring import ONE, RONE, RZERO, RationalFunc, quantum_integer, v
from qschur.periodic import idem_matrix
from qschur.schur import AlgebraElem, E, F, mult_f, idempotent
from qschur.udot import (
    THETA_NORM,
    UdotElem,
    Weight,
    equal_to_horizon,
    f_inner,
    ir_flat,
    monomial_from_json,
    monomial_to_json,
    phi_D,
    ri_flat,
    weight_rep,
)


def test_weight_normalization():
    assert Weight((3, 5)) == Weight((0, 2))
    assert Weight((0, 2)).base_rep() == (-1, 1)
    assert Weight((1, 1, 2)).residue == 1


def test_weight_rep():
    assert weight_rep((2, 0), 2) == (2, 0)
    assert weight_rep((2, 0), 3) is None
    assert weight_rep((0, 3), 5) == (1, 4)
    assert weight_rep((0, 3), 1) is None


def test_phi_D():
    one = UdotElem.monomial((), (2, 0))
    assert phi_D(one, 2) == AlgebraElem.basis(idem_matrix((2, 0)))
    assert phi_D(one, 3).is_zero()
    x = UdotElem.monomial((F(1),), (2, 0))
    assert phi_D(x, 4) == mult_f(1, idempotent((3, 1), 4))


def test_equal_to_horizon():
    lam = (3, 1)
    a = UdotElem.monomial((E(1), F(1)), lam) - UdotElem.monomial((F(1), E(1)), lam)
    b = UdotElem.monomial((), lam, RationalFunc.of(quantum_integer(2)))
    assert equal_to_horizon(a, b, 8)
    assert equal_to_horizon(b, b, 4)
    assert not equal_to_horizon(UdotElem.monomial((), (1, 0)), UdotElem.monomial((), (0, 1)), 3)


def test_monomial_json():
    word, lam = (E(1, 2), F(2)), Weight((1, 0, 2))
    assert monomial_from_json(monomial_to_json(word, lam)) == (word, lam)


def test_twisted_derivations():
    n = 3
    assert ir_flat(1, (1,), n) == {(): ONE}
    assert ir_flat(1, (2, 1), n) == {(2,): v(-1)}
    assert ri_flat(1, (1,), n) == ir_flat(1, (1,), n)


def test_form_on_f():
    n = 3
    assert f_inner(((1, 1),), ((1, 1),), n) == THETA_NORM
    assert f_inner(((1, 1),), ((2, 1),), n) == RZERO
    lhs = f_inner(((1, 1), (2, 1)), ((2, 1), (1, 1)), n)
    assert lhs == RationalFunc(v(-1), (ONE - v(-2)) * (ONE - v(-2)))
    assert f_inner((), (), n) == RONE


def test_form_on_f_is_symmetric():
    n = 3
    words = [((1, 1), (2, 1), (1, 1)), ((1, 2), (2, 1)), ((2, 1), (1, 2))]
    for x in words:
        for y in words:
            assert f_inner(x, y, n) == f_inner(y, x, n)
