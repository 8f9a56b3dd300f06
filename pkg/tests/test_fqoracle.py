from fractions import Fraction

import pytest

from qschur.fqoracle import (
    GF,
    BudgetExceeded,
    InconsistentCounts,
    LatticeChainRep,
    Window,
    WindowTooSmall,
    count_fiber,
    enumerate_fiber,
    inner_direct,
    interp_q_poly,
    rank,
    relative_position,
    structure_const,
    window_for,
)
from qschur.periodic import PeriodicMatrix, idem_matrix, transpose


def f_type(k):
    """The matrix with r = (k, 0) whose fiber is a set of hyperplanes in a k-dim space."""
    return PeriodicMatrix(2, (k - 1, 0), {(1, 1): 1})


def test_field_arithmetic():
    for q in (2, 3, 4, 5, 7):
        F = GF(q)
        for x in range(1, q):
            assert F.mul[x][F.inv[x]] == 1
            assert F.add[x][F.neg[x]] == 0
    assert rank(GF(2), [(1, 1, 0), (0, 1, 1), (1, 0, 1)]) == 2
    with pytest.raises(ValueError):
        GF(6)


def test_relative_position_of_chain_with_itself():
    W = Window(2, 3, 2)
    L = LatticeChainRep.standard(W, (2, 1))
    assert relative_position(L, L) == idem_matrix((2, 1))


def test_diagonal_fiber_is_a_point():
    assert count_fiber(idem_matrix((2, 1)), q=3) == 1


@pytest.mark.parametrize("k,q,expected", [(2, 2, 3), (2, 3, 4), (3, 2, 7)])
def test_hyperplane_counts(k, q, expected):
    assert count_fiber(f_type(k), q=q) == expected


def test_fiber_members_have_the_right_position():
    A = f_type(2)
    W = Window(3, A.level(), window_for(A))
    L = LatticeChainRep.standard(W, (2, 0))
    fib = enumerate_fiber(A, L)
    assert len(fib) == 4
    assert all(relative_position(L, Lp) == A for Lp in fib)


def test_fiber_rejects_wrong_type():
    A = f_type(2)
    L = LatticeChainRep.standard(Window(2, 2, 2), (1, 1))
    with pytest.raises(ValueError):
        enumerate_fiber(A, L)


def test_window_checks():
    A = PeriodicMatrix(2, (0, 0), {(1, 3): 1, (2, -1): 1})
    with pytest.raises(WindowTooSmall):
        count_fiber(A, q=2, m=1)
    assert count_fiber(f_type(2), q=2, confirm_window=True) == 3


def test_budget():
    with pytest.raises(BudgetExceeded):
        count_fiber(f_type(3), q=3, budget=3)


def test_structure_constants():
    C = idem_matrix((1, 1))
    assert structure_const(C, C, C, q=2) == 1
    # [F-type][E-type] contains the diagonal with multiplicity |P^0| = 1
    E1 = PeriodicMatrix(2, (0, 1), {(1, 1): 1})
    F1 = transpose(E1)
    assert structure_const(E1, F1, idem_matrix((1, 1)), q=2) == 1


def test_interpolation():
    assert interp_q_poly([(2, 5), (3, 5)], 0) == [5]
    assert interp_q_poly([(2, 3), (3, 4)], 1) == [1, 1]
    assert interp_q_poly([(2, 7), (3, 13), (4, 21)], 2) == [1, 1, 1]
    with pytest.raises(InconsistentCounts):
        interp_q_poly([(2, 3), (3, 4), (4, 6)], 1)


def test_inner_direct():
    A = idem_matrix((2, 0))
    assert inner_direct(A, A, 3) == (1, 0)
    A = transpose(f_type(2))
    assert inner_direct(A, A, 4) == (Fraction(5, 4), 0)
    assert inner_direct(A, transpose(A), 4) == (0, 0)
