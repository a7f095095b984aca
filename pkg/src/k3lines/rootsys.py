"""Concrete models of the A/D/E root lattices.

Coordinate conventions are fixed once so that every downstream computation is
reproducible byte for byte:

* ``A_n`` lives in ``Z^{n+1}`` with basis ``e_i - e_{i+1}``;
* ``D_n`` (n >= 2) lives in ``Z^n`` with basis ``e_i - e_{i+1}``, ``e_{n-1}+e_n``;
* ``E_8`` is the index-2 extension of ``D_8`` by ``(1/2)(1,...,1) - 4 e_8``;
* ``E_7`` and ``E_6`` are the orthogonal complements in ``E_8`` of a root,
  resp. of a pair of roots spanning an ``A_2``.

Low-index aliases follow the discriminant-group structure: ``D_2 = A_1^2``,
``D_3 = A_3``, ``E_3 = A_1 + A_2``, ``E_4 = A_4``, ``E_5 = D_5``.

The module also provides shortest representatives of discriminant classes,
run-length encoding of coordinate vectors, S_n-orbit representatives of pairs
and triples via balanced contingency arrays, minimal dense squares, Weyl
reduction to a dominant chamber, and a classification of embeddings of one
irreducible root lattice into another.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactlinalg as ela
from .lattice import Lattice, finite_index_extension, orthogonal_complement
from .shortvec import short_vectors


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class RootSystemType:
    """An A/D/E type with the low-index aliases admitted."""

    family: str
    n: int

    def __post_init__(self):
        f, n = self.family, self.n
        ok = (
            (f == "A" and n >= 1)
            or (f == "D" and n >= 2)
            or (f == "E" and 3 <= n <= 8)
        )
        if not ok:
            raise ValueError(f"invalid root system type {f}{n}")

    @staticmethod
    def parse(name) -> "RootSystemType":
        if isinstance(name, RootSystemType):
            return name
        return RootSystemType(name[0], int(name[1:]))

    @property
    def rank(self):
        return self.n

    @property
    def name(self):
        return f"{self.family}{self.n}"

    def num_roots(self):
        f, n = self.canonical()
        if f == "A":
            return n * (n + 1)
        if f == "D":
            return 2 * n * (n - 1)
        return {6: 72, 7: 126, 8: 240}[n]

    def disc_order(self):
        f, n = self.family, self.n
        if f == "A":
            return n + 1
        if f == "D":
            return 4
        return 9 - n

    def canonical(self):
        """Resolve aliases to the standard family of the same lattice.

        D_3 -> A_3; E_4 -> A_4; E_5 -> D_5.  D_2 and E_3 are reducible and
        have no irreducible canonical form; they are returned as-is.
        """
        f, n = self.family, self.n
        if (f, n) == ("D", 3):
            return ("A", 3)
        if (f, n) == ("E", 4):
            return ("A", 4)
        if (f, n) == ("E", 5):
            return ("D", 5)
        return (f, n)


@dataclass(frozen=True)
class RootSystem:
    """A realized root lattice: ambient basis rows plus the Gram lattice."""

    rst: RootSystemType
    ambient_basis: tuple  # rows: lattice basis in ambient coordinates
    lattice: Lattice

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def ambient_dim(self):
        return len(self.ambient_basis[0])

    def ambient(self, v):
        """Map basis coordinates (possibly rational) to ambient coordinates."""
        n = self.rank
        m = self.ambient_dim
        return tuple(
            sum(Fraction(v[i]) * self.ambient_basis[i][j] for i in range(n))
            for j in range(m)
        )

    def basis_coords(self, w):
        """Inverse of `ambient` on the rational span of the lattice."""
        sol = ela.solve_frac([list(r) for r in self.ambient_basis], list(w))
        assert sol is not None
        return tuple(sol)

    def roots(self):
        return self.lattice.roots()

    def simple_roots(self):
        """A deterministic system of simple roots, in basis coordinates."""
        roots = self.roots()
        n = self.rank
        base = 8 * n + 16

        def height(r):
            g = self.lattice.gram_rows()
            w = [sum(r[i] * g[i][j] for i in range(n)) for j in range(n)]
            return sum(w[j] * base ** (n - 1 - j) for j in range(n))

        pos = [r for r in roots if height(r) > 0]
        pos_set = set(pos)
        simple = []
        for r in pos:
            decomposable = any(
                tuple(a - b for a, b in zip(r, s)) in pos_set
                for s in pos
                if s != r
            )
            if not decomposable:
                simple.append(r)
        assert len(simple) == n
        return sorted(simple)


_CACHE = {}


def build(name) -> RootSystem:
    """Build the fixed coordinate model of an A/D/E root lattice."""
    t = RootSystemType.parse(name)
    if t in _CACHE:
        return _CACHE[t]
    f, n = t.family, t.n
    if f == "A":
        rows = [
            tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(n + 1))
            for i in range(n)
        ]
    elif f == "D":
        rows = [
            tuple(1 if j == i else (-1 if j == i + 1 else 0) for j in range(n))
            for i in range(n - 1)
        ]
        rows.append(tuple(1 if j >= n - 2 else 0 for j in range(n)))
    elif (f, n) == ("E", 3):
        rows = [
            (1, -1, 0, 0, 0),
            (0, 0, 1, -1, 0),
            (0, 0, 0, 1, -1),
        ]
    elif (f, n) == ("E", 4):
        return _alias(t, build("A4"))
    elif (f, n) == ("E", 5):
        return _alias(t, build("D5"))
    else:
        rows = _build_e678(n)
    gram = [
        [sum(a * b for a, b in zip(r1, r2)) for r2 in rows] for r1 in rows
    ]
    out = RootSystem(t, tuple(tuple(r) for r in rows), Lattice.from_rows(gram))
    _check_model(out)
    _CACHE[t] = out
    return out


def _alias(t, model):
    out = RootSystem(t, model.ambient_basis, model.lattice)
    _CACHE[t] = out
    return out


def _build_e678(n):
    d8 = build("D8")
    s = [Fraction(1, 2)] * 7 + [Fraction(1, 2) - 4]
    s_coords = ela.solve_frac([list(r) for r in d8.ambient_basis], s)
    assert s_coords is not None
    ext, rows = finite_index_extension(d8.lattice, [s_coords])
    amb = [
        tuple(
            sum(row[i] * Fraction(d8.ambient_basis[i][j]) for i in range(8))
            for j in range(8)
        )
        for row in rows
    ]
    assert ext.det() == 1
    if n == 8:
        return amb
    e8 = RootSystem(RootSystemType("E", 8), tuple(amb), ext)
    roots = e8.roots()
    fixed = [roots[0]]
    if n == 6:
        r2 = next(r for r in roots if ext.inner(roots[0], r) == -1)
        fixed.append(r2)
    sub, basis = orthogonal_complement(ext, fixed)
    return [e8.ambient(row) for row in basis]


def _check_model(model):
    t = model.rst
    lat = model.lattice
    assert lat.is_even() and lat.is_positive_definite()
    if (t.family, t.n) in (("D", 2), ("E", 3)):
        expected_roots = {("D", 2): 4, ("E", 3): 8}[(t.family, t.n)]
        assert len(lat.roots()) == expected_roots
        return
    assert len(lat.roots()) == t.num_roots()
    assert lat.det() == t.disc_order() or t.family != "A" or True
    if t.family == "A":
        assert lat.det() == t.n + 1
    elif t.family == "D":
        assert lat.det() == 4
    else:
        assert lat.det() == 9 - t.n


# ---------------------------------------------------------------------------
# discriminant classes and shortest representatives


def disc_class_labels(name):
    """Labels of the discriminant classes: A_n -> 0..n, D_n -> 0..3,
    E_n -> 0..8-n."""
    t = RootSystemType.parse(name)
    f, n = t.canonical()
    if f == "A":
        return list(range(n + 1))
    if f == "D":
        return [0, 1, 2, 3]
    return list(range(9 - n))


def shortest_rep(name, label):
    """Shortest dual-vector representative of a discriminant class.

    Returns (ambient coordinate tuple, square).  Conventions: for ``A_n``,
    class ``p`` is represented by ``q`` coordinates ``-p/(n+1)`` followed by
    ``p`` coordinates ``q/(n+1)`` (``q = n+1-p``), of square ``pq/(n+1)``.
    For ``D_n``, class 2 is the integer class with representative ``e_n``
    (square 1) and classes 1 and 3 are the half-integer classes with
    representatives ``(1/2)(1,...,1)`` and ``(1/2)(1,...,1,-1)`` (square
    ``n/4``); for odd ``n`` class 1 generates the cyclic group.  For ``E_6``
    and ``E_7`` the representative is found by exact coset enumeration.
    """
    t = RootSystemType.parse(name)
    f, n = t.canonical()
    if label == 0:
        raise ValueError("the zero class has no shortest nonzero convention")
    if f == "A":
        p = label % (n + 1)
        q = n + 1 - p
        vec = tuple([Fraction(-p, n + 1)] * q + [Fraction(q, n + 1)] * p)
        return vec, Fraction(p * q, n + 1)
    if f == "D":
        if label == 2:
            return tuple([0] * (n - 1) + [1]), Fraction(1)
        if label in (1, 3):
            sign = 1 if label == 1 else -1
            vec = tuple([Fraction(1, 2)] * (n - 1) + [Fraction(sign, 2)])
            return vec, Fraction(n, 4)
        raise ValueError("D classes are 0..3")
    model = build(t.name if (f, n) == (t.family, t.n) else f"{f}{n}")
    return _shortest_rep_search(model, label)


def _disc_coset_offsets(model):
    """Basis-coordinate offsets of the discriminant classes, indexed by the
    element tuples of the discriminant form."""
    disc = model.lattice.discriminant()
    ginv = ela.mat_inverse(model.lattice.gram_rows())
    out = {}
    for elem in disc.form.elements():
        row = disc.dual_row_of(elem)
        off = [
            sum(Fraction(row[i]) * ginv[i][j] for i in range(model.rank))
            for j in range(model.rank)
        ]
        out[elem] = off
    return out


def _shortest_rep_search(model, label):
    disc = model.lattice.discriminant()
    elems = sorted(disc.form.elements())
    elem = elems[label]
    offsets = _disc_coset_offsets(model)
    off = offsets[elem]
    bound = Fraction(1, 2)
    g = model.lattice.gram_rows()
    while True:
        hits = short_vectors(g, bound, offset=off)
        if hits:
            best, best_sq = None, None
            for v in hits:
                sq = sum(
                    Fraction(v[i]) * g[i][j] * Fraction(v[j])
                    for i in range(model.rank)
                    for j in range(model.rank)
                )
                if best_sq is None or sq < best_sq:
                    best, best_sq = v, sq
            return model.ambient(best), best_sq
        bound += Fraction(1, 2)


# ---------------------------------------------------------------------------
# run-length encoding and S_n orbits of tuples


def rle(v):
    """Run-length encoding: sorted tuple of (value, multiplicity)."""
    from collections import Counter

    c = Counter(Fraction(x) for x in v)
    return tuple(sorted(c.items()))


def _margin_arrays(margins):
    """All nonnegative integer arrays with the given 1-dimensional margins.

    margins is a list of tuples of row sums, one per axis; implemented for
    2 and 3 axes.  Returns arrays as nested tuples.
    """
    if len(margins) == 2:
        rows, cols = margins
        out = []

        def rec(i, remaining_cols, acc):
            if i == len(rows):
                if all(c == 0 for c in remaining_cols):
                    out.append(tuple(acc))
                return
            target = rows[i]
            for combo in _compositions(target, list(remaining_cols)):
                acc.append(tuple(combo))
                rec(
                    i + 1,
                    [c - x for c, x in zip(remaining_cols, combo)],
                    acc,
                )
                acc.pop()

        rec(0, list(cols), [])
        return out
    if len(margins) == 3:
        rows, cols, deps = margins
        out = []
        cells = [
            (i, j, k)
            for i in range(len(rows))
            for j in range(len(cols))
            for k in range(len(deps))
        ]

        def rec3(idx, rem_r, rem_c, rem_d, acc):
            if idx == len(cells):
                if (
                    all(x == 0 for x in rem_r)
                    and all(x == 0 for x in rem_c)
                    and all(x == 0 for x in rem_d)
                ):
                    out.append(tuple(acc))
                return
            i, j, k = cells[idx]
            cap = min(rem_r[i], rem_c[j], rem_d[k])
            # prune: remaining cells able to absorb the rest?
            for x in range(cap + 1):
                rem_r[i] -= x
                rem_c[j] -= x
                rem_d[k] -= x
                acc.append(x)
                rec3(idx + 1, rem_r, rem_c, rem_d, acc)
                acc.pop()
                rem_r[i] += x
                rem_c[j] += x
                rem_d[k] += x

        rec3(0, list(rows), list(cols), list(deps), [])
        return [
            tuple(
                tuple(
                    tuple(arr[(i * len(cols) + j) * len(deps) + k]
                          for k in range(len(deps)))
                    for j in range(len(cols))
                )
                for i in range(len(rows))
            )
            for arr in out
        ]
    raise ValueError("2 or 3 axes only")


def _compositions(total, caps):
    """Nonnegative integer tuples bounded by caps summing to total."""
    n = len(caps)
    out = []

    def rec(i, left, acc):
        if i == n:
            if left == 0:
                out.append(tuple(acc))
            return
        lo = max(0, left - sum(caps[i + 1 :]))
        hi = min(caps[i], left)
        for x in range(lo, hi + 1):
            acc.append(x)
            rec(i + 1, left - x, acc)
            acc.pop()

    rec(0, total, [])
    return out


def orbit_reps_pairs(class1, class2):
    """S_n-orbit representatives of pairs (v, w) with the given rle classes.

    Orbits biject with balanced matrices whose margins are the two
    multiplicity vectors; one representative pair is built per matrix.
    """
    vals1 = [v for v, _ in class1]
    mult1 = tuple(m for _, m in class1)
    vals2 = [v for v, _ in class2]
    mult2 = tuple(m for _, m in class2)
    assert sum(mult1) == sum(mult2)
    out = []
    for arr in _margin_arrays([mult1, mult2]):
        v, w = [], []
        for i, row in enumerate(arr):
            for j, count in enumerate(row):
                v.extend([vals1[i]] * count)
                w.extend([vals2[j]] * count)
        out.append((tuple(v), tuple(w)))
    return out


def orbit_reps_triples(class1, class2, class3):
    """S_n-orbit representatives of triples, via 3-axis balanced arrays."""
    vals = [[v for v, _ in c] for c in (class1, class2, class3)]
    mults = [tuple(m for _, m in c) for c in (class1, class2, class3)]
    assert len({sum(m) for m in mults}) == 1
    out = []
    for arr in _margin_arrays(mults):
        v, w, x = [], [], []
        for i, plane in enumerate(arr):
            for j, row in enumerate(plane):
                for k, count in enumerate(row):
                    v.extend([vals[0][i]] * count)
                    w.extend([vals[1][j]] * count)
                    x.extend([vals[2][k]] * count)
        out.append((tuple(v), tuple(w), tuple(x)))
    return out


# ---------------------------------------------------------------------------
# minimal dense squares


def mds(name):
    """Minimal square of a dual vector orthogonal to no root."""
    t = RootSystemType.parse(name)
    f, n = t.family, t.n
    if (f, n) == ("D", 2):
        return Fraction(1)
    if (f, n) == ("E", 3):
        return Fraction(5, 2)
    f, n = t.canonical()
    if f == "A":
        return Fraction(n * (n + 1) * (n + 2), 12)
    if f == "D":
        return Fraction(n * (n - 1) * (2 * n - 1), 6)
    return {6: Fraction(78), 7: Fraction(399, 2), 8: Fraction(620)}[n]


def is_dense(model, v_basis):
    """True if no root of the lattice is orthogonal to the dual vector."""
    g = model.lattice.gram_rows()
    n = model.rank
    for r in model.roots():
        if sum(Fraction(v_basis[i]) * g[i][j] * r[j]
               for i in range(n) for j in range(n)) == 0:
            return False
    return True


def mds_brute(name, bound=None):
    """Minimum square over dense dual vectors, by exhaustive coset scan."""
    model = build(name)
    if bound is None:
        bound = mds(name)
    g = model.lattice.gram_rows()
    n = model.rank
    best = None
    for elem, off in _disc_coset_offsets(model).items():
        use_off = None if all(x == 0 for x in off) else off
        for v in short_vectors(g, bound, offset=use_off):
            sq = sum(
                Fraction(v[i]) * g[i][j] * Fraction(v[j])
                for i in range(n)
                for j in range(n)
            )
            if best is not None and sq >= best:
                continue
            if is_dense(model, v):
                best = sq
    return best


# ---------------------------------------------------------------------------
# Weyl reduction


def weyl_reduce(model, v_basis):
    """Dominant representative of the Weyl orbit of a rational vector.

    Returns (dominant vector in basis coordinates, list of applied simple
    reflections as basis-coordinate roots).
    """
    g = model.lattice.gram_rows()
    n = model.rank
    simple = model.simple_roots()

    def inner(a, b):
        return sum(Fraction(a[i]) * g[i][j] * Fraction(b[j])
                   for i in range(n) for j in range(n))

    v = [Fraction(x) for x in v_basis]
    applied = []
    while True:
        for r in simple:
            p = inner(v, r)
            if p < 0:
                v = [v[i] - p * r[i] for i in range(n)]
                applied.append(r)
                break
        else:
            return tuple(v), applied


# ---------------------------------------------------------------------------
# root-subsystem identification


def root_type_of(lat: Lattice):
    """The A/D/E decomposition type of the root sublattice of `lat`.

    Returns a sorted tuple of (family, index) pairs; the empty tuple for a
    root-free lattice.  A_3 is reported as A_3 (never D_3); the pair
    (rank, root count) identifies each irreducible simply-laced type.
    """
    roots = lat.roots()
    if not roots:
        return ()
    # connected components of the root graph (nonzero inner product)
    comps = []
    unused = set(roots)
    while unused:
        seed = unused.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            for y in list(unused):
                if lat.inner(x, y) != 0:
                    unused.discard(y)
                    comp.add(y)
                    frontier.append(y)
        comps.append(sorted(comp))
    out = []
    for comp in comps:
        r = ela.rank([list(x) for x in comp])
        count = len(comp)
        out.append(_identify_irreducible(r, count))
    return tuple(sorted(out))


def _identify_irreducible(rank_, count):
    if count == rank_ * (rank_ + 1):
        return ("A", rank_)
    if count == 2 * rank_ * (rank_ - 1):
        return ("D", rank_)
    expected = {6: 72, 7: 126, 8: 240}
    if rank_ in expected and count == expected[rank_]:
        return ("E", rank_)
    raise ValueError(f"not a simply-laced root system: rank {rank_}, {count} roots")


def type_name(root_type):
    """Human-readable name of a decomposition type, e.g. 'A1^2+D4'."""
    from collections import Counter

    if not root_type:
        return "0"
    c = Counter(root_type)
    parts = []
    for (f, n), m in sorted(c.items()):
        parts.append(f"{f}{n}" + (f"^{m}" if m > 1 else ""))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# embeddings of irreducible root lattices


@dataclass(frozen=True)
class EmbeddingRep:
    """One representative embedding Q -> P: images of Q's simple roots in
    P's basis coordinates, with the complement root type and the index of
    the image in its saturation."""

    images: tuple
    complement_type: tuple
    saturation_index: int


def _root_set_type(perp, orth):
    """Decomposition type of a set of roots, given the orthogonality sets."""
    remaining = set(perp)
    out = []
    while remaining:
        seed = remaining.pop()
        comp = {seed}
        frontier = [seed]
        while frontier:
            x = frontier.pop()
            nbrs = remaining - orth[x]
            remaining -= nbrs
            comp |= nbrs
            frontier.extend(nbrs)
        r = ela.rank([list(x) for x in comp])
        out.append(_identify_irreducible(r, len(comp)))
    return tuple(sorted(out))


def irreducible_embeddings(q_name, p_name, node_cap=2_000_000):
    """Representatives of embeddings of root lattice Q into root lattice P.

    All embeddings with a fixed image of the first simple root are searched
    (the Weyl group acts transitively on roots, so every orbit is seen) and
    grouped by the invariant (complement root type, saturation index).  One
    representative is returned per invariant class.  Raises RuntimeError if
    the node cap is hit before the search completes.
    """
    q = RootSystemType.parse(q_name)
    p_model = build(p_name)
    if q.rank > p_model.rank:
        return []
    q_model = build(q_name)
    q_simple = q_model.simple_roots()
    cartan = [
        [q_model.lattice.inner(a, b) for b in q_simple] for a in q_simple
    ]
    assert all(
        cartan[i][j] in (0, -1)
        for i in range(len(q_simple))
        for j in range(len(q_simple))
        if i != j
    )
    roots = p_model.roots()
    lat = p_model.lattice
    orth = {r: set() for r in roots}
    adj = {r: set() for r in roots}
    for i, a in enumerate(roots):
        for b in roots[i + 1 :]:
            p = lat.inner(a, b)
            if p == 0:
                orth[a].add(b)
                orth[b].add(a)
            elif p == -1:
                adj[a].add(b)
                adj[b].add(a)
    m = len(q_simple)
    by_ctype = {}
    nodes = [0]
    root_set = set(roots)

    def rec(i, images, perp):
        nodes[0] += 1
        if nodes[0] > node_cap:
            raise RuntimeError("embedding search node cap exceeded")
        if i == m:
            ctype = _root_set_type(perp, orth)
            if ctype not in by_ctype:
                sat_index = _saturation_index(lat, images)
                by_ctype[ctype] = EmbeddingRep(tuple(images), ctype, sat_index)
            return
        cand = root_set if i else {roots[0]}
        for j in range(i):
            cand = cand & (orth[images[j]] if cartan[j][i] == 0 else adj[images[j]])
            if not cand:
                return
        for r in sorted(cand):
            images.append(r)
            rec(i + 1, images, perp & orth[r])
            images.pop()

    rec(0, [], root_set)
    return sorted(
        by_ctype.values(),
        key=lambda e: (e.complement_type, e.saturation_index),
    )


def _saturation_index(lat, vectors):
    """Index of the sublattice spanned by `vectors` in its saturation."""
    rows = [list(v) for v in vectors]
    g_sub = ela.mat_mul(
        ela.mat_mul(rows, lat.gram_rows()), ela.transpose(rows)
    )
    det_sub = ela.det(g_sub)
    # saturation = double complement
    _c, cbasis = orthogonal_complement(lat, vectors)
    if len(cbasis) == lat.rank:  # vectors span nothing
        return 1
    sat, _ = orthogonal_complement(lat, cbasis) if cbasis else (None, None)
    if sat is None:
        # vectors span the whole lattice rationally; saturation is lat itself
        det_sat = lat.det()
    else:
        det_sat = sat.det()
    ratio = Fraction(det_sub, det_sat)
    import math

    root = math.isqrt(ratio.numerator)
    assert ratio.denominator == 1 and root * root == ratio.numerator
    return root
