import random

import pytest
from hypothesis import given, strategies as st

from glasnerlab.errors import BadGcd, DependentVectors
from glasnerlab.intmat import (
    IntMat,
    determinantal_divisors,
    gcd_vec,
    inverse_unimodular,
    left_kernel_integer,
    rank_rational,
    smith_normal_form,
    verify_gcd_bound,
)

from conftest import random_int_matrix


@pytest.mark.parametrize(
    "vec,expected",
    [
        ((6, 10, 15), 1),
        ((0, 0), 0),
        ((4, 6), 2),
        ((), 0),
        ((-4, 6), 2),
        ((7,), 7),
    ],
)
def test_gcd_vec(vec, expected):
    assert gcd_vec(vec) == expected


@given(st.lists(st.integers(-1000, 1000), max_size=8))
def test_gcd_vec_divides_all_entries(vec):
    g = gcd_vec(vec)
    if g == 0:
        assert all(x == 0 for x in vec)
    else:
        assert all(x % g == 0 for x in vec)


def _check_snf(M: IntMat):
    s = smith_normal_form(M)
    assert s.left @ s.diag @ s.right == M
    assert abs(s.left.det()) == 1
    assert abs(s.right.det()) == 1
    diag = [s.diag.entries[i][i] for i in range(min(M.rows, M.cols))]
    assert all(x >= 0 for x in diag)
    for i in range(M.rows):
        for j in range(M.cols):
            if i != j:
                assert s.diag.entries[i][j] == 0
    nonzero = [x for x in diag if x]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return diag


def test_snf_identity():
    assert _check_snf(IntMat.identity(3)) == [1, 1, 1]


def test_snf_diag_2_3():
    # determinantal divisors: d_1 = gcd(2,3) = 1, d_2 = 6
    assert _check_snf(IntMat([[2, 0], [0, 3]])) == [1, 6]


def test_snf_2468():
    # d_1 = 2, d_2 = |det| = 8, entries 2 and 8/2 = 4
    assert _check_snf(IntMat([[2, 4], [6, 8]])) == [2, 4]


def test_snf_rectangular():
    assert _check_snf(IntMat([[0, 0]])) == [0]
    assert _check_snf(IntMat([[2], [4]])) == [2]


def test_snf_random_with_divisor_oracle():
    rng = random.Random(17)
    for _ in range(150):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        M = random_int_matrix(rng, rows, cols, 20)
        diag = _check_snf(M)
        if max(rows, cols) <= 4:
            dd = determinantal_divisors(M)
            prev = 1
            for k, dk in enumerate(dd):
                expected = dk // prev if dk and prev else 0
                assert diag[k] == expected
                prev = dk


@pytest.mark.parametrize(
    "entries,expected",
    [
        ([[1, 0], [0, 1]], 2),
        ([[1, 2], [2, 4]], 1),
        ([[0, 0, 0], [0, 0, 0], [0, 0, 0]], 0),
        ([[1, 2, 3]], 1),
    ],
)
def test_rank_rational(entries, expected):
    assert rank_rational(IntMat(entries)) == expected


def test_left_kernel_trivial():
    assert left_kernel_integer(IntMat([[1, 0], [0, 1]])) == []


def test_left_kernel_proportional_rows():
    basis = left_kernel_integer(IntMat([[1, 2], [2, 4]]))
    assert len(basis) == 1
    v = basis[0]
    assert gcd_vec(v) == 1
    assert v in ((2, -1), (-2, 1))


def test_left_kernel_zero_row():
    assert left_kernel_integer(IntMat([[0, 0]])) == [(1,)]


def test_left_kernel_properties_random():
    rng = random.Random(3)
    for _ in range(100):
        M = random_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), 9)
        basis = left_kernel_integer(M)
        assert len(basis) == M.rows - rank_rational(M)
        for v in basis:
            assert gcd_vec(v) == 1
            for j in range(M.cols):
                assert sum(v[i] * M.entries[i][j] for i in range(M.rows)) == 0


@pytest.mark.parametrize(
    "vectors,a,q,lhs,rhs",
    [
        ([(1, 0), (0, 1)], (3, 5), 7, 1, 2),
        ([(2, 0), (0, 2)], (1, 1), 4, 2, 8),
        ([(1, 1), (1, -1)], (1, 0), 2, 1, 2),
    ],
)
def test_verify_gcd_bound_examples(vectors, a, q, lhs, rhs):
    res = verify_gcd_bound(vectors, a, q)
    assert res.lhs == lhs
    assert res.rhs == rhs
    assert res.ok


def test_verify_gcd_bound_dependent_rejected():
    with pytest.raises(DependentVectors):
        verify_gcd_bound([(1, 2), (2, 4)], (1, 1), 5)


def test_verify_gcd_bound_bad_gcd_rejected():
    with pytest.raises(BadGcd):
        verify_gcd_bound([(1, 0), (0, 1)], (2, 4), 6)


def test_gcd_bound_property_random():
    rng = random.Random(99)
    checked = 0
    while checked < 300:
        d = rng.randint(1, 4)
        r = rng.randint(d, 6)
        vectors = [tuple(rng.randint(-10, 10) for _ in range(r)) for _ in range(d)]
        if rank_rational(IntMat([list(v) for v in vectors])) < d:
            continue
        q = rng.randint(1, 10**4)
        a = tuple(rng.randint(-50, 50) for _ in range(d))
        import math

        if math.gcd(gcd_vec(a), q) != 1:
            continue
        assert verify_gcd_bound(vectors, a, q).ok
        checked += 1


def test_inverse_unimodular():
    rng = random.Random(4)
    for _ in range(30):
        # random unimodular matrix via the SNF transforms
        M = random_int_matrix(rng, 3, 3, 10)
        L = smith_normal_form(M).left
        assert L @ inverse_unimodular(L) == IntMat.identity(3)
