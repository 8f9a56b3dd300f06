import random

import pytest

from qschur.periodic import (
    PeriodicMatrix,
    Tableau,
    col_sums,
    d_stat,
    d_stat_bruteforce,
    enumerate_interval,
    idem_matrix,
    is_aperiodic,
    matrix_from_triple,
    preceq,
    row_sums,
    shift_p,
    split_pm,
    transpose,
)

A_PER = PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, 1): 1})
B_PRIME = PeriodicMatrix(2, (0, 1), {(1, 2): 1})


def rand_matrix(rng, n=2, D=4, w=2):
    while True:
        off = {}
        for _ in range(rng.randint(0, 3)):
            t = rng.choice([x for x in range(-w, w + 1) if x])
            key = (rng.randint(1, n), t)
            off[key] = off.get(key, 0) + 1
        mass = sum(off.values())
        if mass > D:
            continue
        diag = [0] * n
        for _ in range(D - mass):
            diag[rng.randrange(n)] += 1
        return PeriodicMatrix(n, diag, off)


def test_sums():
    A = idem_matrix((2, 0))
    assert row_sums(A) == col_sums(A) == (2, 0)
    B = PeriodicMatrix.from_entries(2, {(1, 1): 1, (1, 2): 1})
    assert row_sums(B) == (2, 0) and col_sums(B) == (1, 1)


def test_constructor_rejects_bad_input():
    with pytest.raises(ValueError):
        PeriodicMatrix(2, (1,))
    with pytest.raises(ValueError):
        PeriodicMatrix(2, (1, 0), {(1, 0): 1})


def test_entries_are_periodic():
    A = B_PRIME
    assert A.entry(1, 3) == A.entry(3, 5) == A.entry(-1, 1) == 1
    assert A[2, 2] == 1 and A[1, 1] == 0


def test_text_and_json_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        A = rand_matrix(rng, n=rng.choice([2, 3]))
        assert PeriodicMatrix.parse(str(A)) == A
        assert PeriodicMatrix.from_json(A.to_json()) == A


def test_d_stat():
    assert d_stat(idem_matrix((3, 1, 2))) == 0
    assert d_stat(PeriodicMatrix(2, (0, 1), {(2, -1): 1})) == 1
    rng = random.Random(11)
    for _ in range(40):
        A = rand_matrix(rng, n=rng.choice([2, 3]))
        assert d_stat(A) == d_stat_bruteforce(A)


def test_transpose_and_shift():
    rng = random.Random(3)
    for _ in range(20):
        A = rand_matrix(rng)
        assert transpose(transpose(A)) == A
        assert row_sums(transpose(A)) == col_sums(A)
        assert shift_p(A, 0) == A
        assert shift_p(shift_p(A, 1), -1) == A
        assert row_sums(shift_p(A, 1)) == tuple(x + 1 for x in row_sums(A))


def test_preceq():
    assert preceq(A_PER, A_PER)
    assert preceq(idem_matrix((1, 1)), A_PER)
    assert not preceq(B_PRIME, A_PER)
    assert preceq(A_PER, B_PRIME)


def test_is_aperiodic():
    assert is_aperiodic(idem_matrix((2, 1)))
    assert not is_aperiodic(A_PER)
    assert is_aperiodic(PeriodicMatrix(2, (0, 1), {(1, 2): 1}))


def test_split_pm():
    A = idem_matrix((1, 2))
    assert split_pm(A) == (A, A)
    A = PeriodicMatrix(2, (0, 0), {(1, 1): 1, (2, -1): 1})
    up, lo = split_pm(A)
    assert up.entry(1, 2) == 1 and all(t > 0 for _, t in up.offdiag())
    assert col_sums(up) == row_sums(lo)


def test_enumerate_interval():
    e_type = PeriodicMatrix(2, (0, 1), {(1, 1): 1})
    assert enumerate_interval(e_type) == [e_type]
    assert enumerate_interval(idem_matrix((2, 0))) == [idem_matrix((2, 0))]
    assert set(enumerate_interval(A_PER)) == {A_PER, idem_matrix((1, 1))}
    for B in enumerate_interval(B_PRIME):
        assert preceq(B, B_PRIME)
        assert row_sums(B) == row_sums(B_PRIME) and col_sums(B) == col_sums(B_PRIME)


def test_matrix_from_triple():
    empty = Tableau.from_dict(2, {})
    assert matrix_from_triple(empty, empty, (2, 0)) == idem_matrix((2, 0))
    mu = Tableau.from_dict(2, {(1, 1): 1})
    assert matrix_from_triple(mu, empty, (1, 1)) == PeriodicMatrix(2, (0, 1), {(1, 1): 1})
    assert mu.dimension_vector() == (1, 0)
    with pytest.raises(ValueError):
        Tableau.from_dict(2, {(1, 0): 1})
