"""Embedding enumeration into the Niemeier lattices with many components.

The three lattices whose root systems are A1^24, A2^12, A3^8 are handled by
a column search: an isometry of a rank-5 test lattice V into N is described
by its restrictions to the irreducible components ("cells").  Cells are
canonicalized per component under the full orthogonal group of the
component, the component sequence is kept sorted, and a leaf is accepted
when the cells can be assigned to actual coordinate positions so that every
basis vector's class word lies in the glue code.

Classification up to O(N) uses the monomial symmetry group of the glue code
(the Weyl parts act trivially on classes and are quotiented out by keeping
cells Weyl-canonical).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import exactlinalg as ela
from .codes import GlueCode, golay24, golay12, code_a3_8
from .lattice import Lattice, is_positive_semidefinite
from .mathieu import PermGroup, compose, identity_perm, inverse
from .niemeier import aut_N, niemeier


# ---------------------------------------------------------------------------
# per-component geometry (A_s in its ambient sum-zero model)


def _ambient_dot(u, v):
    return sum(a * b for a, b in zip(u, v))


class ComponentGeometry:
    """The lattice A_s and its dual in the sum-zero ambient model."""

    def __init__(self, s):
        self.s = s
        self.dim = s + 1
        self.roots = []
        for i in range(s + 1):
            for j in range(s + 1):
                if i != j:
                    root = [0] * (s + 1)
                    root[i], root[j] = 1, -1
                    self.roots.append(tuple(Fraction(x) for x in root))
        # simple roots e_i - e_{i+1}
        self.simple = [self.roots[0]]
        self.simple = []
        for i in range(s):
            root = [0] * (s + 1)
            root[i], root[i + 1] = 1, -1
            self.simple.append(tuple(Fraction(x) for x in root))
        self._vec_cache = {}

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.dim))

    def label(self, v):
        """Class of a dual vector in Z/(s+1)."""
        total = 0
        for j, alpha in enumerate(self.simple, start=1):
            m = _ambient_dot(v, alpha)
            assert m.denominator == 1
            total += j * int(m)
        return total % (self.s + 1)

    def vectors_up_to(self, max_sq):
        """All nonzero dual vectors of square <= max_sq (ambient tuples)."""
        key = Fraction(max_sq)
        if key in self._vec_cache:
            return self._vec_cache[key]
        s = self.s
        out = []
        # dual vectors: x in (1/(s+1)) Z^{s+1}, sum 0, congruent coords mod 1
        den = s + 1
        # integer vector y = den*x with sum 0, all y_i congruent mod den
        bound = 1
        while Fraction(2 * bound * bound, den * den) * den <= max_sq:
            bound += 1
        bound += den
        rng = range(-bound, bound + 1)

        def rec(i, acc, total):
            if i == s:
                y = -total
                if abs(y) > bound or (acc and y % den != acc[0] % den):
                    return
                vec = tuple(Fraction(t, den) for t in acc + [y])
                sq = _ambient_dot(vec, vec)
                if 0 < sq <= max_sq:
                    out.append(vec)
                return
            for y in rng:
                if acc and y % den != acc[0] % den:
                    continue
                rec(i + 1, acc + [y], total + y)

        rec(0, [], 0)
        self._vec_cache[key] = out
        return out

    def apply(self, g, v):
        """Apply (perm, sign) to an ambient vector."""
        perm, sign = g
        w = tuple(v[perm[i]] for i in range(self.dim))
        if sign < 0:
            w = tuple(-x for x in w)
        return w

    @property
    def ortho_group(self):
        """All (perm, sign) pairs: S_{s+1} x {+-1}."""
        if not hasattr(self, "_og"):
            self._og = [
                (perm, sign)
                for perm in itertools.permutations(range(self.dim))
                for sign in (1, -1)
            ]
        return self._og

    @property
    def weyl_group(self):
        if not hasattr(self, "_wg"):
            self._wg = [
                (perm, 1) for perm in itertools.permutations(range(self.dim))
            ]
        return self._wg

    def canonical_cell(self, cell, group=None):
        """Lexicographically least image of a cell (tuple of vectors)."""
        group = group if group is not None else self.ortho_group
        best = None
        for g in group:
            img = tuple(self.apply(g, v) for v in cell)
            if best is None or img < best:
                best = img
        return best

    def weyl_canonical_cell(self, cell):
        return self.canonical_cell(cell, self.weyl_group)

    def negate_cell(self, cell):
        return tuple(tuple(-x for x in v) for v in cell)

    def surviving_roots(self, cell):
        """Roots of the component orthogonal to every vector of the cell."""
        out = []
        for r in self.roots:
            if all(_ambient_dot(r, v) == 0 for v in cell):
                out.append(r)
        return out


_GEOMETRY = {}


def geometry(s) -> ComponentGeometry:
    if s not in _GEOMETRY:
        _GEOMETRY[s] = ComponentGeometry(s)
    return _GEOMETRY[s]


_CODES = {"A1^24": golay24, "A2^12": golay12, "A3^8": code_a3_8}


def target_data(name):
    """(component size s, number of components m, glue code) for a target."""
    if name not in _CODES:
        raise ValueError(
            "many-component enumeration supports A1^24, A2^12, A3^8; got %r"
            % (name,)
        )
    code = _CODES[name]()
    s = {2: 1, 3: 2, 4: 3}[code.modulus]
    return s, code.length, code


# ---------------------------------------------------------------------------
# test lattices


@dataclass(frozen=True)
class TestLattice:
    """A rank-5 positive definite even lattice with distinguished roots.

    The first `root_count` basis vectors are roots; the rest are the "free"
    vectors c_i.  `bound_basis` (rows over the standard basis) spans the
    sublattice used for the bounded-form machinery; its Gram matrix is the
    bound for projections.
    """

    gram: tuple
    root_count: int
    name: str = ""

    def __post_init__(self):
        g = self.gram
        assert len(g) == len(g[0])
        lat = Lattice.from_rows(g)
        assert lat.is_even() and lat.is_positive_definite()
        for i in range(self.root_count):
            assert g[i][i] == 2, "designated root rows must have square 2"

    @property
    def rank(self):
        return len(self.gram)

    def lattice(self) -> Lattice:
        return Lattice.from_rows(self.gram)

    def free_indices(self):
        return list(range(self.root_count, self.rank))


# ---------------------------------------------------------------------------
# cell generation


def candidate_cells(test: TestLattice, s, dense=True):
    """Canonical cells: possible restrictions of the basis to one component.

    A cell is a tuple of `rank` ambient vectors of A_s.  Root rows may only
    restrict to 0 or to a full root.  In dense mode every cell must meet
    every root of the component (no surviving roots) -- the orthogonal
    complement of the image has to be root free.  In non-dense mode cells
    may leave roots (including the zero cell), and the caller accounts for
    the surviving root systems.
    """
    geo = geometry(s)
    g = test.gram
    q = test.rank
    rows_cands = []
    for i in range(q):
        if i < test.root_count:
            rows_cands.append([geo.zero()] + list(geo.roots))
        else:
            cap = Fraction(g[i][i])
            rows_cands.append([geo.zero()] + geo.vectors_up_to(cap))

    # orbit representatives for the first nonzero row (the rest of the
    # orthogonal group is absorbed by the final canonicalization)
    first_reps = {}

    def is_first_rep(v):
        if v not in first_reps:
            first_reps[v] = v == min(
                geo.apply(h, v) for h in geo.ortho_group
            )
        return first_reps[v]

    cells = set()

    def rec(i, acc, all_zero):
        if i == q:
            cell = tuple(acc)
            if all_zero:
                if dense:
                    return
                cells.add(cell)
                return
            if dense and geo.surviving_roots(cell):
                return
            cells.add(geo.canonical_cell(cell))
            return
        for v in rows_cands[i]:
            zero = all(x == 0 for x in v)
            if all_zero and not zero and not is_first_rep(v):
                continue
            sq_i = _ambient_dot(v, v)
            if sq_i > g[i][i]:
                continue
            ok = True
            for j in range(i):
                w = acc[j]
                prod = _ambient_dot(v, w)
                rem_ii = Fraction(g[i][i]) - sq_i
                rem_jj = Fraction(g[j][j]) - _ambient_dot(w, w)
                diff = Fraction(g[i][j]) - prod
                # remaining contributions live in the other components:
                # |g_ij - prod| <= sqrt((g_ii - sq_i)(g_jj - sq_j))
                if diff * diff > rem_ii * rem_jj:
                    ok = False
                    break
            if not ok:
                continue
            # the bound Gram minus the contribution so far must stay psd
            sub = acc + [v]
            rem = [
                [Fraction(g[a][b]) - _ambient_dot(sub[a], sub[b])
                 for b in range(i + 1)]
                for a in range(i + 1)
            ]
            if not is_positive_semidefinite(rem):
                continue
            rec(i + 1, sub, all_zero and zero)

    rec(0, [], True)
    out = sorted(cells, reverse=True)
    return out


def cell_contribution(cell):
    q = len(cell)
    return [[_ambient_dot(cell[i], cell[j]) for j in range(q)] for i in range(q)]


def cell_labels(geo, cell):
    return tuple(geo.label(v) for v in cell)


def cell_root_positions(cell, root_count):
    """Indices of designated-root rows that are nonzero in this cell."""
    return tuple(
        i for i in range(root_count) if any(x != 0 for x in cell[i])
    )


# ---------------------------------------------------------------------------
# the main column search


@dataclass(frozen=True)
class CombinatorialType:
    """An O(R)-orbit of isometries V -> N: the sorted canonical cells."""

    target: str
    test: TestLattice
    cells: tuple  # sorted non-increasing canonical cells
    realization: tuple  # per position: Weyl-canonical cell

    def surviving_root_type(self):
        s, _m, _code = target_data(self.target)
        geo = geometry(s)
        counts = []
        for cell in self.realization:
            surv = geo.surviving_roots(cell)
            if surv:
                counts.append(len(surv))
        return tuple(sorted(counts, reverse=True))


class _Realizer:
    """Assign a multiset of cells to code positions (labels in the code)."""

    def __init__(self, test, s, code, cells_with_mult, mon=None):
        self.geo = geometry(s)
        self.code = code
        self.mod = code.modulus
        self.q = test.rank
        self.mon = mon
        m = code.length
        # word masks by (position, label) for fast prefix filtering
        self.words = list(code.words)
        nw = len(self.words)
        self.by_poslab = [
            [0] * code.modulus for _ in range(m)
        ]
        for wid, w in enumerate(self.words):
            for pos in range(m):
                self.by_poslab[pos][w[pos]] |= 1 << wid
        self.full_mask = (1 << nw) - 1
        # distinct cells with multiplicities; variants interned by id
        self.variant_cells = []
        self.variant_labels = []
        self.entries = []  # [multiplicity, [variant ids]]
        interned = {}
        for cell, mult in cells_with_mult:
            vids = []
            for flip in (False, True):
                c = self.geo.negate_cell(cell) if flip else cell
                c = self.geo.weyl_canonical_cell(c)
                lab = cell_labels(self.geo, c)
                key = (c, lab)
                if key not in interned:
                    interned[key] = len(self.variant_cells)
                    self.variant_cells.append(c)
                    self.variant_labels.append(lab)
                vid = interned[key]
                if vid not in vids:
                    vids.append(vid)
            self.entries.append([mult, vids])
        # distinct label words over all variants
        self.labels = sorted(set(self.variant_labels))
        self.label_index = {lab: i for i, lab in enumerate(self.labels)}
        # entry -> set of label indices it can produce
        self.entry_labels = [
            sorted(set(self.label_index[self.variant_labels[v]]
                       for v in vids))
            for _mult, vids in self.entries
        ]

    def _allocations(self, counts):
        """Ways to split the entries' multiplicities over label classes.

        counts[li] = number of positions carrying label class li.  Yields
        lists alloc[e][li'] (dict label index -> count) per entry."""
        entries = self.entries
        ne = len(entries)
        need = list(counts)

        def rec(e, acc):
            if e == ne:
                if all(x == 0 for x in need):
                    yield [dict(d) for d in acc]
                return
            mult = entries[e][0]
            lids = self.entry_labels[e]

            def split(i, left, cur):
                if i == len(lids) - 1:
                    li = lids[i]
                    if need[li] >= left:
                        need[li] -= left
                        cur[li] = left
                        yield from rec(e + 1, acc + [cur])
                        del cur[li]
                        need[li] += left
                    return
                li = lids[i]
                for take in range(min(left, need[li]) + 1):
                    need[li] -= take
                    if take:
                        cur[li] = take
                    yield from split(i + 1, left - take, cur)
                    if take:
                        del cur[li]
                    need[li] += take

            yield from split(0, mult, {})

        yield from rec(0, [])

    def _arrangements(self, pattern, alloc):
        """Expand a label pattern and an allocation into realizations.

        pattern: per position, label index.  alloc: per entry, dict label
        index -> count.  Yields tuples over positions of variant ids."""
        m = len(pattern)
        positions_by_label = {}
        for pos, li in enumerate(pattern):
            positions_by_label.setdefault(li, []).append(pos)
        # per label class: multiset of variant ids to distribute
        per_class = {}
        for e, d in enumerate(alloc):
            _mult, vids = self.entries[e]
            for li, cnt in d.items():
                # variants of entry e with label class li (possibly two
                # distinct cells with the same label word)
                vs = [v for v in vids
                      if self.label_index[self.variant_labels[v]] == li]
                per_class.setdefault(li, []).append((vs, cnt))
        classes = sorted(per_class)

        def rec(ci, chosen):
            if ci == len(classes):
                yield tuple(chosen)
                return
            li = classes[ci]
            posns = positions_by_label[li]
            groups = per_class[li]

            # distribute groups into the positions: DFS over positions of
            # this class, assigning (group index, variant)
            def fill(k, counts, cur):
                if k == len(posns):
                    yield from rec(ci + 1, cur)
                    return
                seen_here = set()
                for gi, (vs, _cnt) in enumerate(groups):
                    if counts[gi] == 0:
                        continue
                    for v in vs:
                        if v in seen_here:
                            continue
                        seen_here.add(v)
                        counts[gi] -= 1
                        cur[posns[k]] = v
                        yield from fill(k + 1, counts, cur)
                        counts[gi] += 1

            counts = [cnt for _vs, cnt in groups]
            yield from fill(0, counts, chosen)

        yield from rec(0, [0] * m)

    def _patterns(self, anchor=None, cap_total=None):
        """Label patterns: per position a label index, all rows codewords."""
        m = self.code.length
        q = self.q
        anchor_row = anchor[0] if anchor is not None else None
        anchor_word = anchor[1] if anchor is not None else None
        nl = len(self.labels)
        # per label class, total capacity (upper bound)
        cap = [0] * nl
        for (mult, _vids), lids in zip(self.entries, self.entry_labels):
            for li in lids:
                cap[li] += mult
        pattern = [0] * m

        def rec(pos, cands, caps):
            if pos == m:
                yield tuple(pattern)
                return
            bpl = self.by_poslab[pos]
            for li in range(nl):
                if caps[li] == 0:
                    continue
                lab = self.labels[li]
                if anchor_row is not None and \
                        lab[anchor_row] != anchor_word[pos]:
                    continue
                new_cands = []
                ok = True
                for i in range(q):
                    nc = cands[i] & bpl[lab[i]]
                    if not nc:
                        ok = False
                        break
                    new_cands.append(nc)
                if ok:
                    caps[li] -= 1
                    pattern[pos] = li
                    yield from rec(pos + 1, new_cands, caps)
                    caps[li] += 1

        yield from rec(0, [self.full_mask] * q, cap)

    def _row_profile(self, row):
        """Multiset of |label| values over all cells for one basis row."""
        half = (self.mod + 1) // 2
        prof = []
        for (mult, vids) in self.entries:
            lab = self.variant_labels[vids[0]][row]
            prof.extend([min(lab, self.mod - lab)] * mult)
        return tuple(sorted(prof))

    def _auto_anchors(self):
        """(row, [orbit representative words]) pinning the heaviest row.

        Any realization can be moved by a monomial code automorphism so
        that the chosen row's word is one of the representatives, since the
        word's |label| profile is an invariant of the cell multiset.
        """
        best = None
        for row in range(self.q):
            prof = self._row_profile(row)
            weight = sum(1 for x in prof if x)
            if weight == 0:
                continue
            cand = [w for w in self.code.words
                    if _label_profile(self.mod, w) == prof]
            if best is None or len(cand) < len(best[1]):
                best = (row, cand)
        if best is None:
            return None
        row, cand = best
        left = set(cand)
        reps = []
        while left:
            seed = min(left)
            orbit, _trans = self.mon.orbit_transversal(seed)
            left -= orbit
            reps.append(seed)
        return row, reps

    def solutions(self, limit=None, anchor=None):
        """All realizations: tuples over positions of Weyl-canonical cells.

        `anchor` optionally fixes (row index, word): the label word of that
        row must equal the given word exactly.  Without an anchor, a row is
        anchored automatically to monomial-orbit representatives (the
        result is then complete only up to the monomial group, which is all
        the callers need for feasibility and classification).
        """
        anchors = [anchor]
        if anchor is None and self.mon is not None:
            auto = self._auto_anchors()
            if auto is not None:
                row, reps = auto
                anchors = [(row, w) for w in reps]
        out = []
        seen = set()
        for anc in anchors:
            for pattern in self._patterns(anchor=anc):
                counts = [0] * len(self.labels)
                for li in pattern:
                    counts[li] += 1
                for alloc in self._allocations(counts):
                    for st in self._arrangements(pattern, alloc):
                        if st in seen:
                            continue
                        seen.add(st)
                        out.append(st)
                        if limit is not None and len(out) >= limit:
                            return [
                                tuple(self.variant_cells[v] for v in s)
                                for s in out
                            ]
        return [tuple(self.variant_cells[v] for v in s) for s in out]


def _cells_with_mult(cells):
    out = []
    for cell in cells:
        if out and out[-1][0] == cell:
            out[-1][1] += 1
        else:
            out.append([cell, 1])
    return [(c, m) for c, m in out]


def enumerate_embeddings(target, test: TestLattice, dense=True,
                         max_idle_components=0, progress=None):
    """All combinatorial types of isometries V -> N with root-free
    complement (dense=True), or with bounded root survival.

    Returns a list of CombinatorialType (one per O(R)-orbit, each with one
    realization).  `max_idle_components` (non-dense mode) bounds the number
    of components not fully covered (those contribute surviving roots).
    """
    s, m, code = target_data(target)
    geo = geometry(s)
    cells = candidate_cells(test, s, dense=dense)
    if not dense:
        zero_cell = tuple(geo.zero() for _ in range(test.rank))
        cells = sorted(set(cells) | {zero_cell}, reverse=True)
    q = test.rank
    g = test.gram
    # sort by decreasing trace so that suffix bounds shrink quickly
    cells.sort(
        key=lambda c: (sum(_ambient_dot(v, v) for v in c), c), reverse=True
    )
    contribs = [cell_contribution(c) for c in cells]
    traces = [sum(cm[i][i] for i in range(q)) for cm in contribs]
    min_trace = min((t for t in traces if t > 0), default=Fraction(0))
    rootpos = [cell_root_positions(c, test.root_count) for c in cells]
    idle = [1 if (dense is False and geo.surviving_roots(c)) else 0
            for c in cells]

    nc = len(cells)
    # suffix entrywise bounds: sup/inf of cell contributions from index >= ci
    sup = [[[Fraction(0)] * q for _ in range(q)] for _ in range(nc + 1)]
    inf = [[[Fraction(0)] * q for _ in range(q)] for _ in range(nc + 1)]
    for ci in range(nc - 1, -1, -1):
        cm = contribs[ci]
        for i in range(q):
            for j in range(q):
                sup[ci][i][j] = max(sup[ci + 1][i][j], cm[i][j])
                inf[ci][i][j] = min(inf[ci + 1][i][j], cm[i][j])
    sup_trace = [Fraction(0)] * (nc + 1)
    for ci in range(nc - 1, -1, -1):
        sup_trace[ci] = max(sup_trace[ci + 1], traces[ci])

    found = []
    state_cells = []

    def remaining_ok(rem, k, start):
        left = m - k
        if left == 0:
            return all(
                rem[i][j] == 0 for i in range(q) for j in range(q)
            )
        su, il = sup[start], inf[start]
        for i in range(q):
            if rem[i][i] < 0 or rem[i][i] > left * su[i][i]:
                return False
        tr = sum(rem[i][i] for i in range(q))
        if tr > left * sup_trace[start]:
            return False
        if dense and tr < left * min_trace:
            return False
        for i in range(q):
            for j in range(i + 1, q):
                r = rem[i][j]
                if r * r > rem[i][i] * rem[j][j]:
                    return False
                if r > left * su[i][j] or r < left * il[i][j]:
                    return False
        return is_positive_semidefinite([list(row) for row in rem])

    def rec(start, k, rem, roots_left, idle_left):
        if k == m:
            if roots_left:
                return
            ctuple = tuple(
                sorted(state_cells, reverse=True)
            )
            realizer = _Realizer(
                test, s, code, _cells_with_mult(ctuple),
                mon=monomial_group(target),
            )
            sols = realizer.solutions(limit=1)
            if sols:
                found.append(
                    CombinatorialType(target, test, ctuple, sols[0])
                )
                if progress:
                    progress(found[-1])
            return
        for ci in range(start, nc):
            cm = contribs[ci]
            rp = rootpos[ci]
            if any(i not in roots_left for i in rp):
                continue
            if idle[ci] > idle_left:
                continue
            new_rem = [
                [rem[i][j] - cm[i][j] for j in range(q)] for i in range(q)
            ]
            if not remaining_ok(new_rem, k + 1, ci):
                continue
            state_cells.append(cells[ci])
            rec(ci, k + 1, new_rem, roots_left - set(rp),
                idle_left - idle[ci])
            state_cells.pop()

    rem0 = [[Fraction(g[i][j]) for j in range(q)] for i in range(q)]
    rec(0, 0, rem0, set(range(test.root_count)), max_idle_components)
    found.sort(key=lambda t: t.cells)
    return found


# ---------------------------------------------------------------------------
# the monomial symmetry group of a glue code


class MonomialCodeGroup:
    """Generators (perm, sign vector) of the code's monomial stabilizer.

    Signs act on class labels by negation (the image of the component
    orthogonal group in Aut(Z/(s+1)) = {+-1}); permutations move positions.
    For modulus 2 the sign action is trivial.
    """

    def __init__(self, target):
        s, m, code = target_data(target)
        self.code = code
        self.mod = code.modulus
        self.length = m
        self.words = set(code.words)
        base = aut_N(target)
        self.gens = []
        for p in base.perm_group.gens:
            eps = self._sign_lift(p)
            assert eps is not None, "permutation does not lift to the code"
            self.gens.append((p, eps))
        if self.mod > 2:
            # global negation is always a monomial automorphism
            self.gens.append((identity_perm(m), tuple([-1] * m)))

    def _sign_lift(self, p):
        """A sign vector making the permuted code equal to the code."""
        if self.mod == 2:
            ok = all(self.apply_word((p, tuple([1] * self.length)), w)
                     in self.words for w in self.code.generators)
            return tuple([1] * self.length) if ok else None
        for bits in range(1 << self.length):
            eps = tuple(
                -1 if bits >> k & 1 else 1 for k in range(self.length)
            )
            g = (p, eps)
            if all(self.apply_word(g, w) in self.words
                   for w in self.code.generators):
                return eps
        return None

    def apply_word(self, g, word):
        p, eps = g
        out = [0] * self.length
        for k in range(self.length):
            lab = word[k]
            if eps[k] < 0:
                lab = (-lab) % self.mod
            out[p[k]] = lab
        return tuple(out)

    def compose(self, g, h):
        """g after h."""
        pg, eg = g
        ph, eh = h
        perm = compose(pg, ph)
        eps = tuple(eh[k] * eg[ph[k]] for k in range(self.length))
        return (perm, eps)

    def identity(self):
        return (identity_perm(self.length), tuple([1] * self.length))

    def orbit_transversal(self, word):
        """BFS orbit of a word; returns (orbit set, {word: group element})."""
        start = tuple(word)
        trans = {start: self.identity()}
        queue = [start]
        while queue:
            w = queue.pop()
            g0 = trans[w]
            for g in self.gens:
                w2 = self.apply_word(g, w)
                if w2 not in trans:
                    trans[w2] = self.compose(g, g0)
                    queue.append(w2)
        return set(trans), trans

    def stabilizer_gens(self, word):
        """Schreier generators of the stabilizer of a word."""
        orbit, trans = self.orbit_transversal(tuple(word))
        gens = []
        seen = set()
        for w, g0 in trans.items():
            for g in self.gens:
                w2 = self.apply_word(g, w)
                rep = trans[w2]
                # rep^{-1} * g * g0 stabilizes the word
                sg = self.compose(self._inverse(rep), self.compose(g, g0))
                key = (sg[0], sg[1])
                if key not in seen:
                    seen.add(key)
                    if sg[0] != identity_perm(self.length) or any(
                        e < 0 for e in sg[1]
                    ):
                        gens.append(sg)
        return gens

    def _inverse(self, g):
        p, eps = g
        pinv = inverse(p)
        einv = tuple(eps[pinv[k]] for k in range(self.length))
        return (pinv, einv)


_MONOMIAL_CACHE = {}


def monomial_group(target) -> MonomialCodeGroup:
    if target not in _MONOMIAL_CACHE:
        _MONOMIAL_CACHE[target] = MonomialCodeGroup(target)
    return _MONOMIAL_CACHE[target]


# ---------------------------------------------------------------------------
# O(N)-orbits within a combinatorial type


class _StateCoder:
    """Encode realization states as tuples of small cell ids."""

    def __init__(self, geo):
        self.geo = geo
        self.ids = {}
        self.cells = []
        self.neg = []

    def cell_id(self, cell):
        cell = self.geo.weyl_canonical_cell(cell)
        if cell not in self.ids:
            self.ids[cell] = len(self.cells)
            self.cells.append(cell)
            self.neg.append(None)
        return self.ids[cell]

    def neg_id(self, cid):
        if self.neg[cid] is None:
            self.neg[cid] = self.cell_id(
                self.geo.negate_cell(self.cells[cid])
            )
        return self.neg[cid]

    def encode(self, state):
        return tuple(self.cell_id(c) for c in state)

    def decode(self, enc):
        return tuple(self.cells[i] for i in enc)

    def apply(self, g, enc):
        p, eps = g
        m = len(enc)
        out = [0] * m
        for k in range(m):
            cid = enc[k]
            if eps[k] < 0:
                cid = self.neg_id(cid)
            out[p[k]] = cid
        return tuple(out)


def _anchor_row(test, s, state):
    """The free row whose label word is most constrained (fewest nonzero
    labels, but nonzero if possible)."""
    geo = geometry(s)
    q = test.rank
    best = None
    for i in range(test.root_count, q):
        word = tuple(geo.label(cell[i]) for cell in state)
        weight = sum(1 for x in word if x)
        key = (weight == 0, weight)
        if best is None or key < best[0]:
            best = (key, i, word)
    assert best is not None
    return best[1], best[2]


def _label_profile(mod, word):
    return tuple(sorted(min(x, mod - x) for x in word))


class TypeOrbitData:
    """O(N)-orbit decomposition of the isometries of one combinatorial type.

    The anchored row's word is moved to a fixed representative of its orbit
    under the monomial code group; anchored states are partitioned under
    Schreier generators of the word stabilizer.
    """

    def __init__(self, ctype: CombinatorialType):
        self.ctype = ctype
        s, m, code = target_data(ctype.target)
        self.geo = geometry(s)
        self.mon = monomial_group(ctype.target)
        self.coder = _StateCoder(self.geo)
        self.row, word0 = _anchor_row(ctype.test, s, ctype.realization)
        profile = _label_profile(code.modulus, word0)
        compatible = [
            w for w in code.words
            if _label_profile(code.modulus, w) == profile
        ]
        # word orbits within the compatible set
        word_left = set(compatible)
        self.word_data = []  # (orbit set, transversal, rep word)
        while word_left:
            seed = min(word_left)
            orbit, trans = self.mon.orbit_transversal(seed)
            assert orbit <= set(compatible)
            word_left -= orbit
            self.word_data.append((orbit, trans, min(orbit)))
        realizer = _Realizer(
            ctype.test, s, code, _cells_with_mult(ctype.cells)
        )
        self.reps = []
        self.class_of = {}  # encoded anchored state -> class index
        self._trans_by_word = {}
        for orbit, trans, w0 in self.word_data:
            # trans[w] maps the seed to w; trans[w0] o trans[w]^{-1}: w -> w0
            g0 = trans[w0]
            for w, g in trans.items():
                self._trans_by_word[w] = self.mon.compose(
                    g0, self.mon._inverse(g)
                )
            sols = realizer.solutions(anchor=(self.row, w0))
            states = sorted(set(self.coder.encode(st) for st in sols))
            sgens = self.mon.stabilizer_gens(w0) if states else []
            unseen = set(states)
            for st in states:
                if st not in unseen:
                    continue
                comp = {st}
                queue = [st]
                while queue:
                    cur = queue.pop()
                    for g in sgens:
                        nxt = self.coder.apply(g, cur)
                        if nxt not in comp:
                            comp.add(nxt)
                            queue.append(nxt)
                assert comp <= set(states)
                unseen -= comp
                idx = len(self.reps)
                self.reps.append(self.coder.decode(min(comp)))
                for c in comp:
                    self.class_of[c] = idx

    def classify(self, state):
        """Class index of a realization state of this type, or None."""
        state = tuple(
            self.geo.weyl_canonical_cell(c) for c in state
        )
        w = tuple(self.geo.label(cell[self.row]) for cell in state)
        if w not in self._trans_by_word:
            return None
        g = self._trans_by_word[w]
        anch = self.coder.encode(
            tuple(state)
        )
        anch = self.coder.apply(g, anch)
        return self.class_of.get(anch)


_TYPE_ORBIT_CACHE = {}


def type_orbit_data(ctype: CombinatorialType) -> TypeOrbitData:
    key = (ctype.target, ctype.test.gram, ctype.cells)
    if key not in _TYPE_ORBIT_CACHE:
        _TYPE_ORBIT_CACHE[key] = TypeOrbitData(ctype)
    return _TYPE_ORBIT_CACHE[key]


def type_orbits(ctype: CombinatorialType):
    """Representative realizations of the O(N)-orbits within one type."""
    return list(type_orbit_data(ctype).reps)


# ---------------------------------------------------------------------------
# basis changes (extension classes) and complements


def test_automorphisms(test: TestLattice):
    """O(V) as integer matrices on the test-lattice basis."""
    from .lattice import automorphisms

    return automorphisms(test.lattice())


def transform_state(geo, mat, state):
    """Precompose a realization with a basis change of the test lattice."""
    q = len(mat)
    out = []
    for cell in state:
        new_cell = tuple(
            tuple(
                sum(Fraction(mat[i][j]) * cell[j][t] for j in range(q))
                for t in range(geo.dim)
            )
            for i in range(q)
        )
        out.append(geo.weyl_canonical_cell(new_cell))
    return tuple(out)


def state_type_key(target, test, state):
    s, _m, _code = target_data(target)
    geo = geometry(s)
    return tuple(sorted((geo.canonical_cell(c) for c in state), reverse=True))


def states_equivalent(target, test, st1, st2):
    """Are two realizations in the same O(N)-orbit?"""
    key1 = state_type_key(target, test, st1)
    if key1 != state_type_key(target, test, st2):
        return False
    ctype = CombinatorialType(target, test, key1, st1)
    data = type_orbit_data(ctype)
    c1 = data.classify(st1)
    c2 = data.classify(st2)
    assert c1 is not None and c2 is not None
    return c1 == c2


def realization_rows(target, state):
    """Images of the test basis as rational rows over the root basis of N.

    The root basis of N(A_s^m) concatenates per component the simple roots
    e_i - e_{i+1}; a component vector with ambient coords v has root-basis
    coords x with x_j = v_1 + ... + v_j (partial sums).
    """
    s, m, _code = target_data(target)
    q = len(state[0])
    rows = []
    for i in range(q):
        row = []
        for k in range(m):
            v = state[k][i]
            acc = Fraction(0)
            for j in range(s):
                acc += v[j]
                row.append(acc)
        rows.append(row)
    return rows


def realization_in_n(target, state):
    """Express the realization in the basis of N; checks membership."""
    nl = niemeier(target)
    rows = realization_rows(target, state)
    basis = [list(r) for r in nl.basis_rows]
    out = []
    for row in rows:
        sol = ela.solve_frac(basis, list(row))
        assert sol is not None
        for x in sol:
            assert x.denominator == 1, "image not contained in N"
        out.append([int(x) for x in sol])
    return nl, out


def complement(target, state, negate=True):
    """The orthogonal complement S of the realized test lattice in N.

    Returns (lattice, basis rows over N's basis).  With negate=True the
    Gram matrix is negated (the negative definite convention for S)."""
    from .lattice import orthogonal_complement

    nl, rows = realization_in_n(target, state)
    perp, basis = orthogonal_complement(nl.realized, rows)
    if negate:
        perp = perp.negated()
    return perp, basis


def embedding_is_primitive(target, state):
    from .rootsys import _saturation_index

    nl, rows = realization_in_n(target, state)
    return _saturation_index(nl.realized, rows) == 1
