"""Tests for the three glue codes."""

from k3lines.codes import code_a3_8, cyclic_shift_code, golay12, golay24


def test_golay24_weight_distribution():
    g = golay24()
    assert len(g.words) == 4096
    assert g.weight_distribution() == {0: 1, 8: 759, 12: 2576, 16: 759, 24: 1}


def test_golay24_octads_and_complements():
    g = golay24()
    octads = set(g.octads())
    assert len(octads) == 759
    all_points = frozenset(range(24))
    sixteens = {
        g.support(w) for w in g.words if g.hamming_norm(w) == 16
    }
    assert {all_points - s for s in sixteens} == octads


def test_golay24_is_steiner_5_8_24():
    import itertools

    g = golay24()
    octads = [tuple(sorted(s)) for s in g.octads()]
    seen = set()
    for o in octads:
        for sub in itertools.combinations(o, 5):
            assert sub not in seen
            seen.add(sub)
    import math

    assert len(seen) == math.comb(24, 5)


def test_golay24_closed_under_addition():
    g = golay24()
    words = sorted(g.words)[:64]
    for a in words:
        for b in words:
            s = tuple((x + y) % 2 for x, y in zip(a, b))
            assert s in g.words


def test_golay12():
    t = golay12()
    assert len(t.words) == 3**6
    assert sorted({t.hamming_norm(w) for w in t.words}) == [0, 6, 9, 12]
    # closed under negation
    for w in sorted(t.words)[:40]:
        assert tuple((-x) % 3 for x in w) in t.words


def test_a3_8_types():
    z = code_a3_8()
    assert len(z.words) == 256
    assert z.type_profile() == [
        (0, 0), (4, 0), (5, 4), (7, 4), (8, 0), (8, 8)
    ]


def test_cyclic_shift_generator_count():
    c = cyclic_shift_code(2, (1, 1, 0, 1))
    assert len(c.generators) == 3
    for g in c.generators:
        assert g[0] == 1
