"""The 23 Niemeier lattices with roots, as glue-code extensions.

A Niemeier lattice is an even unimodular positive definite lattice of rank
24.  Each one with roots is the extension of its root lattice ``R = ⊕ R_k``
by an isotropic self-dual subgroup (the glue code) of ``discr R``.  Glue
words are written label-wise per component:

* ``A_n``: labels 0..n in ``Z/(n+1)``;
* ``D_n``: labels 0..3 — 1 and 3 are the half-integer classes of square
  ``n/4``, 2 is the integer class of square 1; the group is ``Z/4``
  (generated by 1) for odd n and ``(Z/2)^2`` for even n;
* ``E_6``: labels 0..2 in ``Z/3``; ``E_7``: labels 0, 1; ``E_8``: label 0.

For each root system the glue is stored in a catalog (the three
many-component codes and the two cyclic cases come from explicit generator
sequences; the rest were found by the deterministic search
`find_glue`) and re-verified at load: correct order, isotropy, and minimal
coset square >= 4 (no roots beyond R), hence unimodularity and the root
count of the realized lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactlinalg as ela
from .codes import A3_8_SEED, GOLAY12_SEED, GOLAY24_SEED, cyclic_shift_code
from .lattice import Lattice, finite_index_extension
from .rootsys import RootSystemType, build, shortest_rep


# ---------------------------------------------------------------------------
# discriminant-label arithmetic per component


def label_group_order(t: RootSystemType):
    return t.disc_order()


def label_add(t: RootSystemType, a, b):
    f, n = t.family, t.n
    if f == "A":
        return (a + b) % (n + 1)
    if f == "D":
        if n % 2 == 1:
            return (a + b) % 4
        # (Z/2)^2 with elements 0,1,2,3 and x+x = 0: XOR
        return a ^ b
    if f == "E":
        return (a + b) % (9 - n)
    raise ValueError


def label_neg(t: RootSystemType, a):
    f, n = t.family, t.n
    if f == "A":
        return (-a) % (n + 1)
    if f == "D":
        return (-a) % 4 if n % 2 == 1 else a
    return (-a) % (9 - n)


def label_min_square(t: RootSystemType, a):
    """Minimal square of a dual vector in the class, by the closed forms."""
    f, n = t.family, t.n
    if a == 0:
        return Fraction(0)
    if f == "A":
        return Fraction(a * (n + 1 - a), n + 1)
    if f == "D":
        return Fraction(1) if a == 2 else Fraction(n, 4)
    return {6: Fraction(4, 3), 7: Fraction(3, 2)}[n]


def label_q(t: RootSystemType, a):
    """Discriminant-form value q in Q/2Z (as a Fraction in [0, 2))."""
    s = label_min_square(t, a)
    num = s.numerator % (2 * s.denominator)
    return Fraction(num, s.denominator)


# ---------------------------------------------------------------------------
# root systems of the 23 Niemeier lattices


NIEMEIER_ROOT_SYSTEMS = {
    "D24": ["D24"],
    "D16+E8": ["D16", "E8"],
    "E8^3": ["E8", "E8", "E8"],
    "A24": ["A24"],
    "D12^2": ["D12", "D12"],
    "A17+E7": ["A17", "E7"],
    "D10+E7^2": ["D10", "E7", "E7"],
    "A15+D9": ["A15", "D9"],
    "D8^3": ["D8", "D8", "D8"],
    "A12^2": ["A12", "A12"],
    "A11+D7+E6": ["A11", "D7", "E6"],
    "E6^4": ["E6", "E6", "E6", "E6"],
    "A9^2+D6": ["A9", "A9", "D6"],
    "D6^4": ["D6", "D6", "D6", "D6"],
    "A8^3": ["A8", "A8", "A8"],
    "A7^2+D5^2": ["A7", "A7", "D5", "D5"],
    "A6^4": ["A6", "A6", "A6", "A6"],
    "A5^4+D4": ["A5", "A5", "A5", "A5", "D4"],
    "D4^6": ["D4", "D4", "D4", "D4", "D4", "D4"],
    "A4^6": ["A4", "A4", "A4", "A4", "A4", "A4"],
    "A3^8": ["A3"] * 8,
    "A2^12": ["A2"] * 12,
    "A1^24": ["A1"] * 24,
}


def _code_words(seed, modulus):
    return sorted(cyclic_shift_code(modulus, seed).words)


# glue generators per root system; the many-component codes and the two
# single-component cyclic cases are from the explicit construction data, the
# rest from `find_glue` (deterministic lexicographic-minimal search).
GLUE_CATALOG = {
    "D24": [(1,)],
    "D16+E8": [(1, 0)],
    "E8^3": [],
    "A24": [(5,)],
    "D12^2": [(1, 1), (2, 3)],
    "A17+E7": [(3, 1)],
    "D10+E7^2": [(1, 0, 1), (2, 1, 1)],
    "A15+D9": [(2, 1)],
    "D8^3": [(0, 1, 1), (1, 0, 1), (2, 2, 3)],
    "A12^2": [(1, 5)],
    "A11+D7+E6": [(1, 1, 1)],
    "E6^4": [(0, 1, 1, 1), (1, 0, 1, 2)],
    "A9^2+D6": [(0, 5, 1), (1, 2, 3)],
    "D6^4": [(0, 1, 1, 2), (0, 2, 3, 1), (1, 0, 2, 1), (2, 0, 1, 3)],
    "A8^3": [(0, 3, 3), (1, 1, 5)],
    "A7^2+D5^2": [(0, 2, 1, 1), (1, 1, 2, 3)],
    "A6^4": [(0, 1, 2, 3), (1, 0, 3, 5)],
    "A5^4+D4": [(0, 0, 3, 3, 1), (0, 1, 1, 2, 2), (1, 0, 1, 4, 3)],
    "D4^6": [
        (0, 0, 1, 1, 1, 1),
        (0, 0, 2, 2, 2, 2),
        (0, 1, 0, 1, 2, 3),
        (0, 2, 0, 2, 3, 1),
        (1, 0, 0, 1, 3, 2),
        (2, 0, 0, 2, 1, 3),
    ],
    "A4^6": [(0, 0, 1, 1, 2, 2), (0, 1, 0, 2, 1, 3), (1, 0, 0, 2, 3, 1)],
    "A1^24": list(cyclic_shift_code(2, GOLAY24_SEED).generators),
    "A2^12": list(cyclic_shift_code(3, GOLAY12_SEED).generators),
    "A3^8": list(cyclic_shift_code(4, A3_8_SEED).generators),
}


@dataclass(frozen=True)
class NiemeierLattice:
    name: str
    components: tuple  # RootSystemType per component
    glue_generators: tuple
    glue_words: tuple  # the expanded kernel
    realized: Lattice
    basis_rows: tuple  # extension basis over the component-sum coordinates


def word_add(types, a, b):
    return tuple(label_add(t, x, y) for t, x, y in zip(types, a, b))


def word_neg(types, a):
    return tuple(label_neg(t, x) for t, x in zip(types, a))


def expand_words(types, gens):
    zero = (0,) * len(types)
    words = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                y = word_add(types, w, g)
                if y not in words:
                    words.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(words)


def word_min_square(types, w):
    return sum(label_min_square(t, x) for t, x in zip(types, w))


def word_q(types, w):
    total = sum(label_q(t, x) for t, x in zip(types, w))
    num = total.numerator % (2 * total.denominator)
    return Fraction(num, total.denominator)


def glue_order_target(types):
    import math

    prod = 1
    for t in types:
        prod *= label_group_order(t)
    root = math.isqrt(prod)
    assert root * root == prod
    return root


def check_glue(types, gens):
    """Verify a glue kernel: order, isotropy, and no extra roots.

    Returns the expanded words.  A nonzero word with minimal coset square
    < 4 would put a new root (square 2) into the extension; isotropy (all q
    = 0) makes the extension even and integral; the order makes it
    unimodular.
    """
    words = expand_words(types, gens)
    assert len(words) == glue_order_target(types), (
        len(words),
        glue_order_target(types),
    )
    for w in words:
        if any(w):
            assert word_q(types, w) == 0, (w, word_q(types, w))
            assert word_min_square(types, w) >= 4, (w, word_min_square(types, w))
    return words


# ---------------------------------------------------------------------------
# deterministic glue search


def find_glue(component_names):
    """Lexicographically minimal isotropic self-dual glue without roots.

    Candidates are the nonzero label words with q = 0 and minimal coset
    square >= 4; the search adds generators in increasing order, keeping the
    subgroup's elements within the candidate set and requiring the first
    generator to be the subgroup's minimal nonzero element.
    """
    types = [RootSystemType.parse(c) for c in component_names]
    target = glue_order_target(types)
    if target == 1:
        return []
    ranges = [range(label_group_order(t)) for t in types]
    candidates = []
    for w in itertools.product(*ranges):
        if not any(w):
            continue
        if word_q(types, w) != 0:
            continue
        if word_min_square(types, w) < 4:
            continue
        candidates.append(w)
    candidates.sort()
    index = {w: i for i, w in enumerate(candidates)}

    def closure(current, gen):
        words = set(current)
        frontier = [gen]
        words.add(gen)
        while frontier:
            x = frontier.pop()
            for g in list(words):
                for y in (word_add(types, x, g), ):
                    if y not in words:
                        words.add(y)
                        frontier.append(y)
        return words

    result = []

    def valid_subgroup(words, min_allowed):
        for w in words:
            if not any(w):
                continue
            if w not in index:
                return False
            if index[w] < min_allowed:
                return False
        return True

    def rec(current, last_idx, first_idx):
        if result:
            return
        if len(current) == target:
            result.append(sorted(current))
            return
        if len(current) > target:
            return
        for i in range(last_idx + 1, len(candidates)):
            g = candidates[i]
            if g in current:
                continue
            words = closure(current, g)
            if len(words) > target or target % len(words):
                continue
            if not valid_subgroup(words, first_idx):
                continue
            rec(words, i, first_idx)
            if result:
                return

    for first in range(len(candidates)):
        g = candidates[first]
        words = closure({(0,) * len(types)}, g)
        if len(words) <= target and target % len(words) == 0 and \
                valid_subgroup(words, first):
            rec(words, first, first)
        if result:
            break
    if not result:
        raise ValueError("no glue found")
    # return a small generating set: greedy
    words = result[0]
    gens = []
    span = {(0,) * len(types)}
    for w in words:
        if w not in span:
            gens.append(w)
            span = closure(span, w)
    return gens


# ---------------------------------------------------------------------------
# realization


_NIEMEIER_CACHE = {}


def niemeier(name, verify_roots=False) -> NiemeierLattice:
    """Construct the Niemeier lattice with the given root system.

    With verify_roots=True the roots of the realized rank-24 lattice are
    enumerated and counted outright (slow); otherwise the absence of roots
    outside the component sum is already certified by the glue check, since
    every nonzero glue coset has minimal square >= 4.
    """
    if name in _NIEMEIER_CACHE:
        return _NIEMEIER_CACHE[name]
    if name not in NIEMEIER_ROOT_SYSTEMS:
        if name == "Leech":
            raise ValueError(
                "the Leech lattice has no roots and is out of scope; "
                "valid names: " + ", ".join(sorted(NIEMEIER_ROOT_SYSTEMS))
            )
        raise ValueError(
            "unknown Niemeier root system %r; valid names: %s"
            % (name, ", ".join(sorted(NIEMEIER_ROOT_SYSTEMS)))
        )
    comp_names = NIEMEIER_ROOT_SYSTEMS[name]
    types = [RootSystemType.parse(c) for c in comp_names]
    if name in GLUE_CATALOG:
        gens = [tuple(g) for g in GLUE_CATALOG[name]]
    else:
        gens = find_glue(comp_names)
    words = check_glue(types, gens)

    models = [build(c) for c in comp_names]
    amb = models[0].lattice
    for m in models[1:]:
        amb = amb.direct_sum(m.lattice)
    offsets = []
    pos = 0
    for m in models:
        offsets.append(pos)
        pos += m.rank
    total_rank = pos

    def glue_row(word):
        row = [Fraction(0)] * total_rank
        for k, (t, label) in enumerate(zip(types, word)):
            if label == 0:
                continue
            vec_amb, _sq = shortest_rep(comp_names[k], label)
            coords = models[k].basis_coords(vec_amb)
            for i, x in enumerate(coords):
                row[offsets[k] + i] = Fraction(x)
        return row

    ext, rows = finite_index_extension(amb, [glue_row(g) for g in gens])
    assert ext.det() == 1
    assert ext.is_even()
    if verify_roots:
        expected_roots = sum(len(m.roots()) for m in models)
        assert len(ext.roots()) == expected_roots
    out = NiemeierLattice(
        name,
        tuple(types),
        tuple(tuple(g) for g in gens),
        tuple(words),
        ext,
        tuple(tuple(r) for r in rows),
    )
    _NIEMEIER_CACHE[name] = out
    return out


def component_root_count(name):
    return sum(
        RootSystemType.parse(c).num_roots()
        for c in NIEMEIER_ROOT_SYSTEMS[name]
    )


# ---------------------------------------------------------------------------
# automorphisms for the many-component lattices


@dataclass
class CodeSymmetryGroup:
    """Permutation symmetries of a glue code, with the sign convention that
    per-component sign flips act on each label group by negation."""

    npoints: int
    perm_group: object  # PermGroup
    signs_free: bool  # True if per-component signs never move the code

    def contains_perm(self, p):
        return self.perm_group.contains(p)


def aut_N(name) -> CodeSymmetryGroup:
    """Code symmetry data for the three many-component Niemeier lattices."""
    from .mathieu import PermGroup, SupportDesign, design_automorphisms, mathieu24

    if name == "A1^24":
        # signs act trivially on Z/2 labels, so all of {+-1}^24 is allowed
        return CodeSymmetryGroup(24, mathieu24(), True)
    if name == "A2^12":
        code = cyclic_shift_code(3, GOLAY12_SEED)
        hexads = [
            tuple(sorted(code.support(w)))
            for w in code.words
            if code.hamming_norm(w) == 6
        ]
        hexads = sorted(set(hexads))
        design = SupportDesign.from_blocks(12, hexads, 5)
        shift = tuple([0] + [1 + (i % 11) for i in range(1, 12)])
        gens = [shift]
        group = PermGroup(gens, 12)
        target = 95040
        for depth in range(5):
            if group.order() == target:
                break
            for t in range(12):
                if group.order() == target:
                    break
                fixed = {i: i for i in range(depth)}
                if t == depth:
                    continue
                fixed[depth] = t
                hits = design_automorphisms(design, fixed=fixed, limit=1)
                if hits and not group.contains(hits[0]):
                    gens.append(hits[0])
                    group = PermGroup(gens, 12)
        assert group.order() == target, group.order()
        return CodeSymmetryGroup(12, group, False)
    if name == "A3^8":
        code = cyclic_shift_code(4, A3_8_SEED)
        words = code.words
        gens = _small_generating_set(words, 8)
        perms = []
        for p in itertools.permutations(range(8)):
            # permutation must preserve the code up to per-component signs
            if _perm_lifts_to_code(p, gens, words):
                perms.append(p)
        group = PermGroup(perms, 8)
        return CodeSymmetryGroup(8, group, False)
    raise ValueError("aut_N supports A1^24, A2^12, A3^8 only")


def _small_generating_set(words, length):
    gens = []
    seen = {(0,) * length}
    for w in sorted(words):
        if w in seen:
            continue
        gens.append(w)
        frontier = [w]
        seen.add(w)
        while frontier:
            x = frontier.pop()
            for g in list(seen):
                y = tuple((a + b) % 4 for a, b in zip(x, g))
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        if len(seen) == len(words):
            break
    return gens


def _perm_lifts_to_code(p, gens, words):
    """True if some sign vector makes the permuted code equal the code."""
    n = len(p)
    inv = [0] * n
    for i, x in enumerate(p):
        inv[x] = i

    def assign(k, signs):
        if k == n:
            return all(
                tuple((signs[i] * g[inv[i]]) % 4 for i in range(n)) in words
                for g in gens
            )
        for s in (1, -1):
            signs.append(s)
            if assign(k + 1, signs):
                return True
            signs.pop()
        return False

    return assign(0, [])
