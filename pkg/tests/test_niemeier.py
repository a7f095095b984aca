import pytest

from k3lines.niemeier import (
    GLUE_CATALOG,
    NIEMEIER_ROOT_SYSTEMS,
    aut_N,
    component_root_count,
    find_glue,
    label_min_square,
    niemeier,
    word_min_square,
)
from k3lines.rootsys import RootSystemType


def test_all_23_constructions_pass_self_checks():
    # niemeier() itself asserts: glue order, isotropy, coset squares >= 4,
    # unimodularity, evenness
    for name in NIEMEIER_ROOT_SYSTEMS:
        N = niemeier(name)
        assert N.realized.det() == 1
        assert N.realized.is_even()
        assert N.realized.rank == 24


def test_glue_order_squares_to_root_discriminant():
    for name in NIEMEIER_ROOT_SYSTEMS:
        N = niemeier(name)
        disc = 1
        for t in N.components:
            disc *= t.disc_order()
        assert len(N.glue_words) ** 2 == disc


@pytest.mark.parametrize(
    "name", ["E8^3", "D16+E8", "A24", "A4^6", "A1^24", "A2^12"]
)
def test_root_counts_by_enumeration(name):
    N = niemeier(name, verify_roots=True)
    assert len(N.realized.roots()) == component_root_count(name)


def test_expected_root_counts():
    expected = {
        "D24": 1104, "D16+E8": 720, "E8^3": 720, "A24": 600, "D12^2": 528,
        "A17+E7": 432, "D10+E7^2": 432, "A15+D9": 384, "D8^3": 336,
        "A12^2": 312, "A11+D7+E6": 288, "E6^4": 288, "A9^2+D6": 240,
        "D6^4": 240, "A8^3": 216, "A7^2+D5^2": 192, "A6^4": 168,
        "A5^4+D4": 144, "D4^6": 144, "A4^6": 120, "A3^8": 96,
        "A2^12": 72, "A1^24": 48,
    }
    for name, count in expected.items():
        assert component_root_count(name) == count


def test_d24_glued_by_half_integer_class_of_square_6():
    N = niemeier("D24")
    assert N.glue_generators == ((1,),)
    t = RootSystemType.parse("D24")
    assert label_min_square(t, 1) == 6


def test_a24_glue_classes_have_squares_4_and_6():
    N = niemeier("A24")
    squares = sorted(
        word_min_square(N.components, w) for w in N.glue_words if any(w)
    )
    assert squares == [4, 4, 6, 6]


def test_leech_and_unknown_names_rejected():
    with pytest.raises(ValueError, match="Leech"):
        niemeier("Leech")
    with pytest.raises(ValueError, match="valid names"):
        niemeier("E9^3")


def test_find_glue_reproduces_catalog():
    for name in ["D12^2", "A8^3", "A15+D9"]:
        assert find_glue(NIEMEIER_ROOT_SYSTEMS[name]) == [
            tuple(g) for g in GLUE_CATALOG[name]
        ]


def test_aut_orders():
    assert aut_N("A1^24").perm_group.order() == 244823040
    assert aut_N("A2^12").perm_group.order() == 95040


def test_aut_a3_8():
    g = aut_N("A3^8")
    assert g.perm_group.order() == 1344
    ident = tuple(range(8))
    assert g.perm_group.contains(ident)
    shift = tuple([0] + [1 + (i % 7) for i in range(1, 8)])
    assert g.perm_group.contains(shift)


def test_aut_unsupported():
    with pytest.raises(ValueError):
        aut_N("E8^3")
