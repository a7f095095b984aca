"""Glue codes over Z/q generated by cyclic shift families.

A glue code here is a subgroup of ``(Z/q)^m`` describing the kernel of a
finite-index extension of a direct sum of m copies of a fixed root lattice
whose discriminant group is ``Z/q``.  The three codes used in rank 24 are
generated from a single seed word: the m-1 generators are obtained by fixing
position 1 and applying all cyclic rotations to positions 2..m.

* ``golay24``: q = 2, m = 24 — the binary Golay code (4096 words);
* ``golay12``: q = 3, m = 12 — the ternary Golay code (729 words);
* ``code_a3_8``: q = 4, m = 8 — the Z/4 code gluing eight A3 components
  (256 words).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


@dataclass(frozen=True)
class GlueCode:
    """A subgroup of (Z/q)^m, fully expanded."""

    modulus: int
    length: int
    generators: tuple
    words: frozenset = field(compare=False)

    def support(self, word):
        return frozenset(i for i, x in enumerate(word) if x % self.modulus)

    def hamming_norm(self, word):
        return sum(1 for x in word if x % self.modulus)

    def weight_distribution(self):
        return dict(Counter(self.hamming_norm(w) for w in self.words))

    def type_of(self, word):
        """(Hamming norm of w, Hamming norm of 2w) — refines the norm when
        the modulus is 4."""
        dbl = tuple((2 * x) % self.modulus for x in word)
        return (self.hamming_norm(word), self.hamming_norm(dbl))

    def type_profile(self):
        return sorted(set(self.type_of(w) for w in self.words))

    def octads(self):
        """Supports of the Hamming-norm-8 words (binary case)."""
        return sorted(
            self.support(w) for w in self.words if self.hamming_norm(w) == 8
        )

    def contains(self, word):
        return tuple(x % self.modulus for x in word) in self.words


def _expand(modulus, length, generators):
    zero = (0,) * length
    words = {zero}
    frontier = [zero]
    gens = [tuple(x % modulus for x in g) for g in generators]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                y = tuple((a + b) % modulus for a, b in zip(w, g))
                if y not in words:
                    words.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(words)


def cyclic_shift_code(modulus, seed):
    """Code generated by the seed and all cyclic rotations of its tail.

    Position 1 (index 0) is fixed; the remaining m-1 positions are rotated
    cyclically, giving m-1 generators.
    """
    m = len(seed)
    gens = []
    tail = list(seed[1:])
    for shift in range(m - 1):
        rotated = tail[-shift:] + tail[:-shift] if shift else list(tail)
        gens.append((seed[0], *rotated))
    words = _expand(modulus, m, gens)
    return GlueCode(modulus, m, tuple(gens), words)


GOLAY24_SEED = (1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 1,
                1, 0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1)
GOLAY12_SEED = (2, 1, 1, 2, 1, 1, 1, 2, 2, 2, 1, 2)
A3_8_SEED = (3, 2, 0, 0, 1, 0, 1, 1)


def golay24() -> GlueCode:
    """The binary Golay code on 24 points."""
    code = cyclic_shift_code(2, GOLAY24_SEED)
    assert len(code.words) == 2**12
    return code


def golay12() -> GlueCode:
    """The ternary Golay code on 12 points."""
    code = cyclic_shift_code(3, GOLAY12_SEED)
    assert len(code.words) == 3**6
    return code


def code_a3_8() -> GlueCode:
    """The Z/4 glue code for eight A3 components."""
    code = cyclic_shift_code(4, A3_8_SEED)
    assert len(code.words) == 4**4
    return code
