"""Tests for the many-component embedding enumeration."""

from fractions import Fraction

import pytest

from k3lines import manycomp as mc
from k3lines.exactlinalg import det
from k3lines.lattice import Lattice

FERMAT_GRAM = (
    (2, 0, 0, 1, 0),
    (0, 2, 0, 1, 0),
    (0, 0, 4, 2, 0),
    (1, 1, 2, 4, 0),
    (0, 0, 0, 0, 8),
)


def fermat_test_lattice():
    return mc.TestLattice(gram=FERMAT_GRAM, root_count=2, name="fermat")


def test_component_geometry_basics():
    geo = mc.geometry(1)
    assert len(geo.roots) == 2
    assert geo.label((Fraction(1, 2), Fraction(-1, 2))) == 1
    assert geo.label((Fraction(1), Fraction(-1))) == 0
    geo2 = mc.geometry(2)
    assert len(geo2.roots) == 6
    # the fundamental weight has square 2/3 and class 1
    v = (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3))
    assert mc._ambient_dot(v, v) == Fraction(2, 3)
    assert geo2.label(v) == 1
    geo3 = mc.geometry(3)
    assert len(geo3.roots) == 12
    w = (Fraction(3, 4), Fraction(-1, 4), Fraction(-1, 4), Fraction(-1, 4))
    assert mc._ambient_dot(w, w) == Fraction(3, 4)
    assert geo3.label(w) == 1


def test_vectors_up_to_counts():
    geo = mc.geometry(1)
    # A1 dual vectors of square <= 2: +-(1/2)(1,-1) and +-(1,-1)
    assert len(geo.vectors_up_to(2)) == 4
    geo2 = mc.geometry(2)
    # A2: 6 weights of square 2/3 and 6 roots of square 2
    assert len(geo2.vectors_up_to(Fraction(2, 3))) == 6
    assert len(geo2.vectors_up_to(2)) == 12


def test_canonical_cell_identifies_signs():
    geo = mc.geometry(1)
    a = ((Fraction(1, 2), Fraction(-1, 2)),)
    b = ((Fraction(-1, 2), Fraction(1, 2)),)
    assert geo.canonical_cell(a) == geo.canonical_cell(b)


def test_fermat_genus_a1_has_three_types():
    test = fermat_test_lattice()
    types = mc.enumerate_embeddings("A1^24", test)
    assert len(types) == 3
    supports = sorted(
        tuple(
            sum(1 for cell in t.realization if any(x != 0 for x in cell[i]))
            for i in range(5)
        )
        for t in types
    )
    # one type with the square-4 vector on two components, two with it
    # spread over an octad
    assert supports == [
        (1, 1, 2, 8, 16),
        (1, 1, 8, 8, 16),
        (1, 1, 8, 8, 16),
    ]
    for t in types:
        assert mc.embedding_is_primitive(t.target, t.realization)


def test_fermat_genus_other_targets_empty():
    test = fermat_test_lattice()
    assert mc.enumerate_embeddings("A2^12", test) == []


@pytest.mark.slow
def test_fermat_genus_a3_empty():
    test = fermat_test_lattice()
    assert mc.enumerate_embeddings("A3^8", test) == []


def test_fermat_type_orbits_and_classes():
    test = fermat_test_lattice()
    types = mc.enumerate_embeddings("A1^24", test)
    # each combinatorial type is a single O(N)-orbit; three orbits total
    orbits = [mc.type_orbits(t) for t in types]
    assert [len(o) for o in orbits] == [1, 1, 1]
    # basis changes of the test lattice merge two of the three
    mats = mc.test_automorphisms(test)
    geo = mc.geometry(1)
    keys = [mc.state_type_key("A1^24", test, o[0]) for o in orbits]
    merged = {i: i for i in range(3)}

    def find(i):
        while merged[i] != i:
            i = merged[i]
        return i

    for i, orb in enumerate(orbits):
        for mat in mats:
            img = mc.transform_state(geo, mat, orb[0])
            key = mc.state_type_key("A1^24", test, img)
            for j, kj in enumerate(keys):
                if kj == key:
                    a, b = find(i), find(j)
                    if a != b:
                        merged[max(a, b)] = min(a, b)
    classes = {find(i) for i in range(3)}
    assert len(classes) == 2


def test_fermat_complements():
    test = fermat_test_lattice()
    types = mc.enumerate_embeddings("A1^24", test)
    t_det = det([list(r) for r in FERMAT_GRAM])
    for t in types:
        s, _basis = mc.complement(t.target, t.realization)
        assert s.rank == 19
        # the complement of a primitive sublattice of a unimodular lattice
        # has the same discriminant
        assert abs(s.det()) == t_det
        assert s.negated().is_positive_definite()
        assert s.negated().is_root_free()


def test_monomial_group_golay():
    mon = mc.monomial_group("A1^24")
    w = next(iter(wd for wd in mon.words if sum(wd) == 8))
    orbit, _trans = mon.orbit_transversal(w)
    assert len(orbit) == 759


def test_monomial_group_ternary():
    mon = mc.monomial_group("A2^12")
    for p, eps in mon.gens:
        for w in mon.code.generators:
            assert mon.apply_word((p, eps), w) in mon.words
