"""Tests for the dense-embedding elimination engine."""

from fractions import Fraction

import pytest

from k3lines import embed
from k3lines.embed import (
    BOUND_GRAM,
    DEFAULT_TARGETS,
    dense_sets,
    dense_multi_empty,
    eliminate,
    fermat_test,
    free_decomposition,
    get_model,
    red_min_positive,
)


TEST = fermat_test()


# ---------------------------------------------------------------------------
# Free part of the test lattice.


def test_free_decomposition_squares():
    dec = free_decomposition(TEST)
    g = TEST.gram

    def dot(u, v):
        return sum(u[i] * g[i][j] * v[j] for i in range(5) for j in range(5))

    rows = dec.bound_rows
    for i in range(3):
        for j in range(3):
            assert dot(rows[i], rows[j]) == BOUND_GRAM[i][j]
    assert dec.bound_gram == BOUND_GRAM
    # orthogonal to the two roots spanning the fixed part
    for i in range(TEST.root_count):
        e = [1 if j == i else 0 for j in range(5)]
        for row in rows:
            assert dot(row, e) == 0


def test_free_decomposition_half_sum_integral():
    # (r1 + r2 + y + z) / 2 must lie in the lattice
    dec = free_decomposition(TEST)
    total = [1, 1, 0, 0, 0]  # the two roots are the first basis vectors
    for row in dec.bound_rows[1:]:
        for i in range(5):
            total[i] += row[i]
    assert all(c % 2 == 0 for c in total)


# ---------------------------------------------------------------------------
# Coordinate models of the root-lattice duals.


@pytest.mark.parametrize(
    "spec,count", [("E8", 240), ("E7", 126), ("E6", 72)]
)
def test_exceptional_root_counts(spec, count):
    assert len(get_model(spec).roots) == count


def test_a_model_orthogonality():
    m = get_model("A4")
    vs = m.vectors((), 2 * m.scale * m.scale)
    assert vs  # dual vectors of square at most 2 exist
    for v in vs:
        assert sum(v) == 0  # sum-zero coordinate model


def test_d_model_dual_squares():
    m = get_model("D12")
    s2 = m.scale * m.scale
    sqs = {Fraction(m.dot(v, v), s2) for v in m.vectors((), 3 * s2)}
    assert Fraction(1) in sqs  # unit vectors of the dual
    assert Fraction(2) in sqs  # roots


def test_half_in_dual_detects_roots():
    m = get_model("E8")
    r = m.roots[0]
    assert m.half_in_dual(tuple(2 * c for c in r))
    assert not m.half_in_dual(r)


# ---------------------------------------------------------------------------
# Dense sets of single components.


@pytest.mark.parametrize(
    "spec,counts",
    [
        ("E8", (0, 0, 2)),
        ("E6", (11, 196, 653)),
    ],
)
def test_dense_set_counts_exceptional(spec, counts):
    got = tuple(len(dense_sets(spec, TEST, n)) for n in (0, 1, 2))
    assert got == counts


@pytest.mark.slow
def test_dense_set_counts_e7():
    got = tuple(len(dense_sets("E7", TEST, n)) for n in (0, 1, 2))
    assert got == (0, 4, 199)


@pytest.mark.parametrize("spec", ["D12"])
def test_dense_sets_empty_low_n(spec):
    assert not dense_sets(spec, TEST, 0)
    assert not dense_sets(spec, TEST, 1)


@pytest.mark.slow
def test_dense_sets_a12_empty_low_n():
    assert not dense_sets("A12", TEST, 0)
    assert not dense_sets("A12", TEST, 1)


def test_dense_forms_are_bounded_and_consistent():
    for n in (0, 1, 2):
        for f in dense_sets("E6", TEST, n):
            assert f.n == n
            diff = [
                [Fraction(BOUND_GRAM[i][j]) - f.gram[i][j] for j in range(3)]
                for i in range(3)
            ]
            assert embed._psd(diff)
            assert f.gram[0][0] <= 8 and f.gram[1][1] <= 8
            assert f.gram[2][2] <= 4


def test_residual_forms_of_largest_component():
    # over the largest exceptional component the two-root residual form
    # is either zero or generated by a single vector of square 4
    profile = {
        (f.red_rank, red_min_positive(f)) for f in dense_sets("E8", TEST, 2)
    }
    assert profile == {(0, None), (1, Fraction(4))}


def test_pair_combination_is_empty():
    # components with nonempty individual sets can still admit no joint
    # bounded form
    assert dense_sets("E6", TEST, 0)
    assert dense_multi_empty(("E6", "E6"), TEST, (0,))


# ---------------------------------------------------------------------------
# Elimination verdicts.


def test_eliminate_three_large_components():
    v = eliminate("E8^3", TEST)
    assert v.eliminated and v.criterion == 2


def test_eliminate_paired_d_components():
    v = eliminate("D12^2", TEST)
    assert v.eliminated and v.criterion == 1


def test_eliminate_single_d_component():
    v = eliminate("D24", TEST)
    assert v.eliminated
    assert "15" in v.detail


@pytest.mark.slow
def test_eliminate_single_a_component():
    v = eliminate("A24", TEST)
    assert v.eliminated
    assert "11" in v.detail


def test_eliminate_mixed_fast():
    assert eliminate("D10+E7^2", TEST).eliminated


@pytest.mark.slow
def test_eliminate_all_default_targets():
    for name in DEFAULT_TARGETS:
        assert eliminate(name, TEST).eliminated, name
