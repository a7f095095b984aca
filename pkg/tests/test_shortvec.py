"""Tests for exact short-vector enumeration."""

from fractions import Fraction
import random

from hypothesis import given, settings, strategies as st

from k3lines.exactlinalg import det, mat_inverse, mat_mul, transpose
from k3lines.shortvec import short_vectors, short_vectors_naive


def random_posdef_gram(rng, n, entry=2):
    """Random positive-definite integer Gram B*B^T, kept well-conditioned."""
    while True:
        b = [[rng.randint(-entry, entry) for _ in range(n)] for _ in range(n)]
        if abs(det(b)) < 1:
            continue
        g = mat_mul(b, transpose(b))
        ginv = mat_inverse(g)
        if all(ginv[i][i] <= 6 for i in range(n)):
            return g


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_matches_naive_box_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    g = random_posdef_gram(rng, n)
    bound = rng.randint(1, 10)
    fast = set(short_vectors(g, bound))
    slow = set(short_vectors_naive(g, bound))
    assert fast == slow


def test_e8_root_count():
    e8 = [
        [2, -1, 0, 0, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0, 0, 0],
        [0, -1, 2, -1, 0, 0, 0, 0],
        [0, 0, -1, 2, -1, 0, 0, 0],
        [0, 0, 0, -1, 2, -1, 0, -1],
        [0, 0, 0, 0, -1, 2, -1, 0],
        [0, 0, 0, 0, 0, -1, 2, 0],
        [0, 0, 0, 0, -1, 0, 0, 2],
    ]
    assert len(short_vectors(e8, 2, norm_exact=2)) == 240
    assert len(short_vectors(e8, 4, norm_exact=4)) == 2160


def test_offset_cosets():
    # Vectors of the dual coset x + (1/2, 0) in Z^2 with Gram diag(4, 2):
    # norms 4*(k+1/2)^2 + 2*m^2.
    g = [[4, 0], [0, 2]]
    off = [Fraction(1, 2), Fraction(0)]
    hits = short_vectors(g, 3, offset=off)
    assert all(x.denominator == 2 for x, _ in hits)
    norms = sorted(4 * x**2 + 2 * y**2 for x, y in hits)
    assert norms == [1, 1, 3, 3, 3, 3]


def test_exact_norm_filter():
    g = [[2, 1], [1, 2]]
    assert len(short_vectors(g, 2, norm_exact=2)) == 6
    assert len(short_vectors(g, 6, norm_exact=6)) == 6
    assert len(short_vectors(g, 6, norm_exact=4)) == 0


def test_zero_vector_excluded():
    g = [[2]]
    assert (0,) not in short_vectors(g, 10)
