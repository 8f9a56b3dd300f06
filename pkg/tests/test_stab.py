from qschur.coeffring import ONE, RONE, RationalFunc, UPoly, u_specialize, v
from qschur.schur import apply_word, inner_words, parse_word
from qschur.stab import StableElem, inner_limit, inner_limit_words, sapply_word, stable_inner
from qschur.udot import UdotElem, Weight, weight_rep


def test_idempotent_inner_is_one():
    val = stable_inner((), (1, 0), (), (1, 0))
    assert val.value == UPoly.const(RONE)
    assert inner_limit_words((), (2, 1), (), (2, 1)) == RONE
    assert inner_limit_words((), (2, 1), (), (1, 2)) == RationalFunc.of(0)


def test_distinct_weights_give_zero():
    f = parse_word("F1")
    assert not stable_inner(f, (2, 0), f, (1, 0)).value


def test_f_family():
    f = parse_word("F1")
    lam = Weight((2, 0))
    a0 = lam.base_rep()
    val = stable_inner(f, lam, f, lam).value
    expected = UPoly({0: RationalFunc(ONE, ONE - v(-2)),
                      2: RationalFunc(-v(-2 * a0[0]), ONE - v(-2))})
    assert val == expected
    assert inner_limit_words(f, lam, f, lam) == RationalFunc(ONE, ONE - v(-2))


def test_specialization_matches_fixed_level():
    lam = Weight((1, 0))
    for s, t in [("F1", "F1"), ("E1 F1", "F1 E1"), ("F2 F1", "F2 F1"), ("E2 F1", "F1 E2")]:
        w1, w2 = parse_word(s), parse_word(t)
        st = stable_inner(w1, lam, w2, lam)
        for p in range(st.p0, st.p0 + 3):
            D = st.k + 2 * p
            a = weight_rep(lam, D)
            assert u_specialize(st.value, p).to_laurent() == inner_words(w1, a, w2, a)


def test_family_specializes_to_fixed_level():
    lam = Weight((0, 1))
    x = sapply_word(parse_word("E1 F2 E1"), lam)
    for p in range(max(x.p0, 1), x.p0 + 3):
        D = lam.residue + 2 * p
        assert x.specialize(p) == apply_word(parse_word("E1 F2 E1"), weight_rep(lam, D), D)


def test_bilinear_extension():
    lam = (2, 0)
    x = UdotElem.monomial(parse_word("F1"), lam, RationalFunc.of(v(1)))
    y = UdotElem.monomial(parse_word("F1"), lam) + UdotElem.monomial((), (1, 1))
    assert inner_limit(x, y) == RationalFunc(v(1), ONE - v(-2))
    assert isinstance(StableElem.idempotent((0, 1)), StableElem)


def test_limit_expansion_pairing_matches_peeling():
    from qschur.coeffring import principal_part, series_expand, u_limit
    from qschur.periodic import PeriodicMatrix
    from qschur.stab import inner_limit_expanded, limit_expansion, limit_norm, sapply_word

    assert limit_norm(PeriodicMatrix(2, (0, 0), {(2, -1): 1})) == RationalFunc(ONE, ONE - v(-2))
    words = ["F1", "E1 F1", "F2 F1", "E1^(2) F1^(2)", "F1 E2 F1", "K(1,-1) F1^(2) E2"]
    for lam in [(2, 0), (0, 1)]:
        for s in words:
            x = UdotElem.monomial(parse_word(s), lam)
            full = {B: u_limit(g) for B, g in sapply_word(parse_word(s), lam).terms.items()}
            assert limit_expansion(x).as_dict() == {B: f for B, f in full.items() if f}
            for t in words:
                y = UdotElem.monomial(parse_word(t), lam)
                fast = inner_limit_expanded(limit_expansion(x), limit_expansion(y))
                val = inner_limit(x, y)
                assert fast.value() == val
                series, positive = fast.expand(12)
                assert series == series_expand(val, 12)
                assert positive == (principal_part(val) if val else {})
