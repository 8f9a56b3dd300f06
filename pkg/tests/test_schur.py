import random

import pytest

from qschur.coeffring import ONE, ZERO, quantum_integer, v, vinv_integer
from qschur.periodic import PeriodicMatrix, idem_matrix, unit_root
from qschur.schur import (
    AlgebraElem,
    E,
    F,
    K,
    WordSyntaxError,
    apply_word,
    format_word,
    idempotent,
    inner_fixed,
    inner_words,
    mult_e,
    mult_e_div,
    mult_f,
    mult_k,
    parse_word,
    psi_transpose,
    word_from_json,
    word_to_json,
)

A_PER = PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, 1): 1})
B_PRIME = PeriodicMatrix(2, (0, 1), {(1, 2): 1})


def basis(A, c=ONE):
    return AlgebraElem.basis(A, c)


def test_mult_e_examples():
    assert mult_e(1, idempotent((0, 1), 1)) == basis(PeriodicMatrix(2, (0, 0), {(1, 1): 1}))
    assert mult_e(1, idempotent((1, 0), 1)).is_zero()


def test_mult_f_examples():
    assert mult_f(1, idempotent((1, 1), 2)) == basis(PeriodicMatrix(2, (0, 1), {(2, -1): 1}))
    assert mult_f(1, idempotent((0, 2), 2)).is_zero()


def test_ef_on_idempotent():
    x = mult_e(1, mult_f(1, idempotent((1, 1), 2)))
    a1, a2 = 1, 1
    diag_coeff = vinv_integer(a1).shift(a1 - 1 - a2)
    assert x.coeff(idem_matrix((1, 1))) == diag_coeff
    assert x.coeff(PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, -1): 1})) == ONE
    assert len(x) == 2


def test_two_step_word():
    x = apply_word(parse_word("E1 E2"), (1, 1))
    assert x == basis(B_PRIME) + basis(A_PER, v(-1))


def test_divided_power_gives_binomial():
    x = mult_e_div(1, 2, idempotent((0, 2, 1), 3))
    assert x == basis(PeriodicMatrix(3, (0, 0, 1), {(1, 1): 2}))


def test_k_action():
    a = (2, 1)
    x = idempotent(a, 3)
    assert mult_k((0, 0), x) == x
    assert mult_k(unit_root(1, 2), x) == x.scale(v(a[0] - a[1]))
    rng = random.Random(2)
    y = apply_word(parse_word("F1 E2 F1"), (2, 2))
    for _ in range(5):
        b = (rng.randint(-3, 3), rng.randint(-3, 3))
        c = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert mult_k(b, mult_k(c, y)) == mult_k((b[0] + c[0], b[1] + c[1]), y)


def test_quantum_commutator():
    a = (2, 1)
    x = idempotent(a, 3)
    lhs = mult_e(1, mult_f(1, x)) - mult_f(1, mult_e(1, x))
    assert lhs == x.scale(_qint(a[0] - a[1]))


def _qint(k):
    return quantum_integer(k) if k >= 0 else -quantum_integer(-k)


def test_word_parsing():
    w = parse_word("E1^(2) F2 K(1,0,-1)")
    assert w == (E(1, 2), F(2), K(1, 0, -1))
    assert format_word(w) == "E1^(2) F2 K(1,0,-1)"
    assert word_from_json(word_to_json(w)) == w
    assert parse_word("") == ()
    with pytest.raises(WordSyntaxError) as err:
        parse_word("E1 X2")
    assert err.value.col == 3


def test_psi():
    x = apply_word(parse_word("E1 F2 E1"), (2, 1))
    assert psi_transpose(psi_transpose(x)) == x
    assert psi_transpose(idempotent((1, 2), 3)) == idempotent((1, 2), 3)


def test_json_round_trip():
    x = apply_word(parse_word("E1 E2"), (1, 1))
    assert AlgebraElem.from_json(x.to_json()) == x


def test_inner_product_examples():
    assert inner_words((), (2, 1), (), (2, 1)) == ONE
    f = parse_word("F1")
    assert inner_words(f, (1, 1), f, (1, 1)) == vinv_integer(1)
    assert inner_words(f, (2, 0), f, (2, 0)) == ONE + v(-2)
    assert inner_words(f, (2, 0), (), (1, 1)) == ZERO
    with pytest.raises(ValueError):
        inner_fixed((), (1, 1), idempotent((2, 1), 3))


def test_inner_product_is_symmetric():
    words = ["F1", "E2 F1", "F2 F1", "E1"]
    a = (2, 1)
    for s in words:
        for t in words:
            w1, w2 = parse_word(s), parse_word(t)
            assert inner_words(w1, a, w2, a) == inner_words(w2, a, w1, a)


def test_basis_norm_closed_form():
    from qschur.canon import standard_element
    from qschur.schur import basis_norm, inner_basis

    assert basis_norm(idem_matrix((3, 1))) == ONE
    F_20 = PeriodicMatrix(2, (1, 0), {(2, -1): 1})
    assert basis_norm(F_20) == ONE + v(-2)
    for A in (B_PRIME, PeriodicMatrix(2, (1, 0), {(1, 2): 2}), PeriodicMatrix(3, (1, 0, 1), {(1, 1): 1, (3, -2): 1})):
        w, a = standard_element(A)
        assert inner_fixed(w, a, AlgebraElem.basis(A)) == basis_norm(A)
        x = apply_word(w, a, A.level())
        assert inner_basis(x, x) == inner_words(w, a, w, a)
