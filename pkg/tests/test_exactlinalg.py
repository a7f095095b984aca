"""Tests for the exact linear-algebra helpers."""

from fractions import Fraction
import random

from hypothesis import given, settings, strategies as st

from k3lines.exactlinalg import (
    det,
    hnf_rows,
    identity,
    kernel_int,
    mat_inverse,
    mat_mul,
    rank,
    smith_normal_form,
    solve_frac,
)


def random_int_matrix(rng, n, m, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(m)] for _ in range(n)]


small_mats = st.integers(1, 5).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(-9, 9), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


@given(small_mats)
@settings(max_examples=200, deadline=None)
def test_det_matches_cofactor_expansion(a):
    def cofactor_det(m):
        if len(m) == 1:
            return m[0][0]
        total = 0
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
        return total

    assert det(a) == cofactor_det(a)


@given(small_mats)
@settings(max_examples=200, deadline=None)
def test_smith_normal_form_properties(a):
    d, u, v = smith_normal_form(a)
    n = len(a)
    assert mat_mul(mat_mul(u, a), v) == d
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    diag = [d[i][i] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0
    for i in range(n - 1):
        if diag[i + 1] != 0:
            assert diag[i] != 0 and diag[i + 1] % diag[i] == 0
    for x in diag:
        assert x >= 0


def test_mat_inverse_roundtrip():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 5)
        a = random_int_matrix(rng, n, n)
        if det(a) == 0:
            continue
        inv = mat_inverse(a)
        assert mat_mul(a, inv) == [
            [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]


def test_kernel_int_is_saturated_basis():
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randint(1, 5), rng.randint(1, 5)
        a = random_int_matrix(rng, n, m)
        ker = kernel_int(a)
        assert len(ker) == n - rank(a)
        for row in ker:
            assert all(
                sum(row[i] * a[i][j] for i in range(n)) == 0 for j in range(m)
            )
        # Saturation: the HNF of the kernel basis has unit pivots after
        # dividing each row by its gcd -- equivalently every integer vector
        # of the kernel space is an integer combination of the basis.
        if ker:
            h = hnf_rows(ker)
            for row in h:
                piv = next(x for x in row if x != 0)
                sol = solve_frac(ker, row)
                assert sol is not None
                assert all(x.denominator == 1 for x in sol)
                assert piv != 0


def test_hnf_rows_preserves_row_space():
    rng = random.Random(3)
    for _ in range(30):
        n, m = rng.randint(1, 4), rng.randint(1, 5)
        a = random_int_matrix(rng, n, m)
        h = hnf_rows(a)
        for row in a:
            sol = solve_frac(h, row) if h else None
            if any(any(x != 0 for x in r) for r in a):
                assert sol is not None
                assert all(x.denominator == 1 for x in sol)


def test_identity_and_solve():
    assert identity(3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    a = [[2, 1], [1, 2]]
    x = solve_frac(a, [4, 5])
    assert [sum(x[i] * a[i][j] for i in range(2)) for j in range(2)] == [4, 5]
