"""Screening of 24-dimensional even unimodular lattices for root-free
embeddings of a rank-5 test lattice.

The test lattice splits (up to finite index) as two orthogonal roots plus
a free part with an orthogonal basis of squares (8, 8, 4).  For each
irreducible component R of the candidate's root system we compute the
sets D_n(R) (n = 0, 1, 2) of bounded Gram forms that the free part can
induce on R, where n counts how many of the two roots land in R; a member
must leave a complement whose roots can be cancelled by n pairwise
orthogonal roots, satisfy a divisibility constraint coming from the
half-sum vector of the test lattice, and a primitivity constraint on
square-8 images.  Sets for component sums are bounded combinations of the
component sets.  Emptiness of suitable combined sets, or a rank bound on
residual root systems, eliminates a candidate lattice; the code-based
lattices (A1^24, A2^12, A3^8) are handled by exhaustive enumeration in
`manycomp`.

All arithmetic is exact: vectors in a component's dual are integer tuples
at a fixed per-model scale.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
import itertools

from . import exactlinalg as ela
from .lattice import Lattice, orthogonal_complement
from .shortvec import short_vectors
from .niemeier import NIEMEIER_ROOT_SYSTEMS
from .manycomp import (
    TestLattice,
    enumerate_embeddings,
    type_orbits,
    type_orbit_data,
    test_automorphisms,
    transform_state,
    states_equivalent,
    complement as embedding_complement,
    realization_in_n,
    embedding_is_primitive,
)

FERMAT_GRAM = (
    (2, 0, 0, 1, 0),
    (0, 2, 0, 1, 0),
    (0, 0, 4, 2, 0),
    (1, 1, 2, 4, 0),
    (0, 0, 0, 0, 8),
)


def fermat_test():
    """The rank-5 test lattice of the quartic family (two orthogonal
    roots, free part with orthogonal basis of squares 8, 8, 4)."""
    return TestLattice(FERMAT_GRAM, 2, name="quartic")


# ---------------------------------------------------------------------------
# Decomposition of the test lattice: roots + orthogonal (8, 8, 4) basis.


@dataclass(frozen=True)
class FreeDecomposition:
    """Finite-index orthogonal decomposition of the test lattice.

    `bound_rows` express the three free basis vectors (squares 8, 8, 4)
    over the test lattice's basis; the second and third participate with
    the two roots in a half-sum relation (their sum plus the roots is
    divisible by 2 in the test lattice)."""

    bound_rows: tuple  # 3 rows over the rank-5 basis (Fractions)
    bound_gram: tuple  # diag(8, 8, 4)


BOUND_GRAM = ((8, 0, 0), (0, 8, 0), (0, 0, 4))


@lru_cache(maxsize=None)
def free_decomposition(test):
    g = [list(r) for r in test.gram]
    rc = test.root_count
    dim = len(g)
    root_rows = [[1 if j == i else 0 for j in range(dim)] for i in range(rc)]
    sub, basis = orthogonal_complement(Lattice.from_rows(g), root_rows)
    sq8 = [v for v in short_vectors(sub.gram, 8, norm_exact=8)]
    sq4 = [v for v in short_vectors(sub.gram, 4, norm_exact=4)]

    def dot(u, v):
        return sum(u[i] * g[i][j] * v[j] for i in range(dim) for j in range(dim))

    def lift(x):
        return tuple(
            sum(Fraction(x[k]) * basis[k][j] for k in range(len(x)))
            for j in range(dim)
        )

    roots_sum = [sum(r[j] for r in root_rows) for j in range(dim)]
    for u, v in itertools.combinations(sq8, 2):
        lu, lv = lift(u), lift(v)
        if dot(lu, lv) != 0:
            continue
        for z in sq4:
            lz = lift(z)
            if dot(lu, lz) != 0 or dot(lv, lz) != 0:
                continue
            for a8, c8 in ((lu, lv), (lv, lu)):
                hs = [
                    Fraction(roots_sum[j] + c8[j] + lz[j], 2) for j in range(dim)
                ]
                if all(x.denominator == 1 for x in hs):
                    return FreeDecomposition(
                        bound_rows=(a8, c8, lz), bound_gram=BOUND_GRAM
                    )
    raise ValueError("test lattice admits no orthogonal (8,8,4) free basis "
                     "with a half-sum relation")


# ---------------------------------------------------------------------------
# Coordinate models of irreducible root-system components.
#
# Vectors of the dual R^vee are integer tuples at scale `model.scale`
# (stored = scale * true coordinates).  Each model provides canonical
# stage-wise enumeration: the first vector up to the full isometry group,
# later vectors up to the stabilizer of the earlier ones.


def _isqrt(n):
    if n < 0:
        return -1
    r = int(n ** 0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


@lru_cache(maxsize=None)
def _a_block_vectors(q, classes, runs, maxsq, exact_sq, cap_eq=None):
    """Sum-zero vectors of A_{q-1}^vee at scale q, square bounded (or
    exact), non-increasing within each run of positions.  With cap_eq
    set, at most that many adjacent equalities are allowed inside runs
    (a bound on the rank of the surviving root system)."""
    bound = exact_sq if exact_sq is not None else maxsq
    bmax = _isqrt(bound)
    out = []
    for c in classes:
        r0 = (-c) % q
        vals = sorted(
            (r0 + q * t for t in range((-bmax - r0) // q, (bmax - r0) // q + 1)
             if abs(r0 + q * t) <= bmax),
            reverse=True,
        )
        if not vals:
            continue
        vabs = max(abs(vals[0]), abs(vals[-1]))
        acc = []

        def dfs(ri, cursum, cursq, eq):
            if ri == len(runs):
                if cursum == 0 and (exact_sq is None or cursq == exact_sq):
                    out.append(tuple(acc))
                return
            rest = sum(runs[ri + 1:])

            def go(left, ub, s, sq, eq):
                if left == 0:
                    dfs(ri + 1, s, sq, eq)
                    return
                lim = rest + left - 1
                for v in vals:
                    if v > ub:
                        continue
                    ne = eq
                    if v == ub and left < runs[ri]:
                        ne += 1
                        if cap_eq is not None and ne > cap_eq:
                            continue
                    nsq = sq + v * v
                    if nsq > bound:
                        continue
                    ns = s + v
                    if abs(ns) > lim * vabs:
                        continue
                    acc.append(v)
                    go(left - 1, v, ns, nsq, ne)
                    acc.pop()

            go(runs[ri], vals[0], cursum, cursq, eq)

        dfs(0, 0, 0, 0)
    return tuple(out)


class AModel:
    """A_n in sum-zero coordinates on n+1 positions, scale n+1."""

    def __init__(self, n, classes=None):
        self.name = "A%d" % n
        self.rank = n
        self.q = n + 1
        self.length = n + 1
        self.scale = n + 1
        self.classes = tuple(classes) if classes is not None else tuple(range(self.q))

    def dot(self, u, v):
        return sum(a * b for a, b in zip(u, v))

    def vectors(self, prev, maxsq, exact_sq=None, o_stage1=False,
                cap_eq=None):
        runs = tuple(_runs(prev, self.length))
        out = _a_block_vectors(
            self.q, self.classes, runs, maxsq, exact_sq, cap_eq
        )
        if o_stage1:
            res = []
            for v in out:
                neg = tuple(sorted((-x for x in v), reverse=True))
                if v <= neg:
                    res.append(v)
            return res
        return list(out)


    def survivors(self, vs, limit):
        classes = {}
        for i in range(self.length):
            classes.setdefault(tuple(v[i] for v in vs), []).append(i)
        roots = []
        for pos in classes.values():
            s = len(pos)
            if s < 2:
                continue
            if len(roots) + s * (s - 1) > limit:
                tot = sum(
                    len(p) * (len(p) - 1) for p in classes.values() if len(p) >= 2
                )
                if tot > limit:
                    return None
            for i, j in itertools.permutations(pos, 2):
                r = [0] * self.length
                r[i], r[j] = self.q, -self.q
                roots.append(tuple(r))
        if len(roots) > limit:
            return None
        return roots

    def survivor_rank(self, vs):
        classes = {}
        for i in range(self.length):
            classes.setdefault(tuple(v[i] for v in vs), []).append(i)
        return sum(len(p) - 1 for p in classes.values())

    def half_in_dual(self, w):
        m = 2 * self.q
        r = w[0] % m
        return all(x % m == r for x in w)

    def is_twice_root(self, v):
        if any(x % 2 for x in v):
            return False
        h = sorted(x // 2 for x in v)
        return (
            h[0] == -self.q
            and h[-1] == self.q
            and all(x == 0 for x in h[1:-1])
        )


@lru_cache(maxsize=None)
def _d_block_vectors(runs, dblock, maxsq, exact_sq, plus, sign_variants,
                     cap_eq=None):
    """Vectors of D_n^vee at scale 2 (uniform-parity coordinates), square
    bounded or exact, non-increasing within each run; the trailing
    all-zero run is kept in the D-type fundamental domain (non-negative,
    optionally negated last entry)."""
    bound = exact_sq if exact_sq is not None else maxsq
    bmax = _isqrt(bound)
    out = []
    for par in (0, 1):
        vals = sorted(
            (v for v in range(-bmax, bmax + 1) if v % 2 == par),
            reverse=True,
        )
        if not vals:
            continue
        acc = []

        def dfs(ri, cursum, cursq, eq):
            if ri == len(runs):
                if exact_sq is not None and cursq != exact_sq:
                    return
                if plus and cursum % 4 != 0:
                    return
                out.append(tuple(acc))
                return
            size = runs[ri]
            if ri == dblock:
                def go(left, ub, s, sq, eq):
                    if left == 0:
                        dfs(ri + 1, s, sq, eq)
                        return
                    for v in vals:
                        if v > ub or v < 0:
                            continue
                        ne = eq
                        if v == ub and left < size:
                            ne += 1
                            if cap_eq is not None and ne > cap_eq:
                                continue
                        nsq = sq + v * v
                        if nsq > bound:
                            continue
                        acc.append(v)
                        if left == 1 and sign_variants and v > 0:
                            go(0, v, s + v, nsq, ne)
                            acc[-1] = -v
                            go(0, v, s - v, nsq, ne)
                            acc[-1] = v
                        else:
                            go(left - 1, v, s + v, nsq, ne)
                        acc.pop()

                go(size, vals[0], cursum, cursq, eq)
            else:
                def go(left, ub, s, sq, eq):
                    if left == 0:
                        dfs(ri + 1, s, sq, eq)
                        return
                    for v in vals:
                        if v > ub:
                            continue
                        ne = eq
                        if v == ub and left < size:
                            ne += 1
                            if cap_eq is not None and ne > cap_eq:
                                continue
                        nsq = sq + v * v
                        if nsq > bound:
                            continue
                        acc.append(v)
                        go(left - 1, v, s + v, nsq, ne)
                        acc.pop()

                go(size, vals[0], cursum, cursq, eq)

        dfs(0, 0, 0, 0)
    return tuple(out)


class DModel:
    """D_n in standard coordinates, scale 2.  With plus=True membership is
    restricted to the index-2 even-coordinate-sum sublattice-with-spinor
    (as inside the 24-dimensional unimodular lattice over D24)."""

    def __init__(self, n, plus=False):
        self.name = "D%d" % n
        self.rank = n
        self.length = n
        self.scale = 2
        self.plus = plus

    def dot(self, u, v):
        return sum(a * b for a, b in zip(u, v))

    def vectors(self, prev, maxsq, exact_sq=None, o_stage1=False,
                cap_eq=None):
        runs = tuple(_runs(prev, self.length))
        # trailing run where every previous vector vanishes admits the
        # extra sign freedom of the D-type stabilizer
        dblock = None
        if runs:
            start = self.length - runs[-1]
            if all(all(v[i] == 0 for i in range(start, self.length)) for v in prev):
                dblock = len(runs) - 1
        sign_variants = not (o_stage1 and not self.plus)
        return list(_d_block_vectors(runs, dblock, maxsq, exact_sq,
                                     self.plus, sign_variants, cap_eq))

    def _classes(self, vs):
        same, zero = {}, []
        for i in range(self.length):
            col = tuple(v[i] for v in vs)
            if all(x == 0 for x in col):
                zero.append(i)
                continue
            neg = tuple(-x for x in col)
            key = max(col, neg)
            same.setdefault(key, []).append((i, col == key))
        return same, zero

    def survivors(self, vs, limit):
        same, zero = self._classes(vs)
        z = len(zero)
        count = 2 * z * (z - 1) if z >= 2 else 0
        count += sum(len(p) * (len(p) - 1) for p in same.values() if len(p) >= 2)
        if count > limit:
            return None
        roots = []
        for i, j in itertools.combinations(zero, 2):
            for si in (2, -2):
                for sj in (2, -2):
                    r = [0] * self.length
                    r[i], r[j] = si, sj
                    roots.append(tuple(r))
        for pos in same.values():
            for (i, pi), (j, pj) in itertools.permutations(pos, 2):
                r = [0] * self.length
                r[i] = 2 if pi else -2
                r[j] = -2 if pj else 2
                roots.append(tuple(r))
        return roots

    def survivor_rank(self, vs):
        same, zero = self._classes(vs)
        rank = len(zero) if len(zero) >= 2 else 0
        rank += sum(len(p) - 1 for p in same.values())
        return rank

    def half_in_dual(self, w):
        if any(x % 2 for x in w):
            return False
        r = (w[0] // 2) % 2
        return all((x // 2) % 2 == r for x in w)

    def is_twice_root(self, v):
        if any(x % 2 for x in v):
            return False
        h = sorted(abs(x) // 2 for x in v)
        return h[-1] == 2 and h[-2] == 2 and all(x == 0 for x in h[:-2])


def _runs(prev, length):
    if not prev:
        return [length]
    runs = []
    last = None
    for i in range(length):
        col = tuple(v[i] for v in prev)
        if col == last:
            runs[-1] += 1
        else:
            runs.append(1)
            last = col
    return runs


class EModel:
    """E6, E7, E8 realized inside the standard coordinate model of E8."""

    def __init__(self, n):
        self.name = "E%d" % n
        self.rank = n
        self.length = 8
        self.scale = {8: 2, 7: 4, 6: 12}[n]
        ball8 = _e8_ball(32)  # scale-2 coordinates, square <= 8
        if n == 8:
            vecs = ball8
            roots = [v for v in ball8 if self.dot(v, v) == 8]
        elif n == 7:
            a = (0, 0, 0, 0, 0, 0, 2, 2)
            seen = set()
            for x in ball8:
                t = self.dot(x, a) // 4  # true product with the root a
                p = tuple(
                    2 * x[i] - (2 * t if i >= 6 else 0) for i in range(8)
                )
                if self.dot(p, p) <= 8 * 16:
                    seen.add(p)
            vecs = sorted(seen)
            roots = [
                tuple(2 * c for c in x)
                for x in ball8
                if self.dot(x, x) == 8 and x[6] + x[7] == 0
            ]
        else:
            a = (0, 0, 0, 0, 0, 0, 1, 1)
            b = (0, 0, 0, 0, 0, 1, 1, 0)
            seen = set()
            for x in ball8:
                xa = self.dot(x, a) // 2
                xb = self.dot(x, b) // 2
                al, be = 4 * (2 * xa - xb), 4 * (2 * xb - xa)
                p = tuple(
                    6 * x[i] - al * a[i] - be * b[i] for i in range(8)
                )
                if self.dot(p, p) <= 8 * 144:
                    seen.add(p)
            vecs = sorted(seen)
            roots = [
                tuple(6 * c for c in x)
                for x in ball8
                if self.dot(x, x) == 8
                and x[6] + x[7] == 0
                and x[5] + x[6] == 0
            ]
        assert len(roots) == {8: 240, 7: 126, 6: 72}[n]
        self.ball = vecs
        self.roots = roots
        self.root_set = set(roots)
        self.simples = _simple_system(roots, self.dot)
        assert len(self.simples) == n
        self._perp = {}
        s2 = self.scale * self.scale
        self._shells = {}
        for v in vecs:
            self._shells.setdefault(self.dot(v, v) // s2, []).append(v)
        self._mask = {}
        for v in vecs:
            m = 0
            for idx, r in enumerate(self.roots):
                if self.dot(v, r) == 0:
                    m |= 1 << idx
            self._mask[v] = m

    def dot(self, u, v):
        return sum(a * b for a, b in zip(u, v))

    def _dominant(self, v, simples):
        s2 = self.scale * self.scale
        v = list(v)
        moved = True
        while moved:
            moved = False
            for al in simples:
                d = self.dot(v, al)
                if d < 0:
                    c = d // s2
                    for i in range(8):
                        v[i] -= c * al[i]
                    moved = True
        return tuple(v)

    def vectors(self, prev, maxsq, exact_sq=None, o_stage1=False, presel=None,
                cap_eq=None):
        simples = [
            al
            for al in self.simples
            if all(self.dot(al, p) == 0 for p in prev)
        ]
        bound = exact_sq if exact_sq is not None else maxsq
        out = set()
        for v in self.ball:
            sq = self.dot(v, v)
            if sq > bound or (exact_sq is not None and sq != exact_sq):
                continue
            if presel is not None and not presel(v):
                continue
            c = self._dominant(v, simples)
            if o_stage1:
                c = min(c, self._dominant(tuple(-x for x in c), simples))
            out.add(c)
        return sorted(out, reverse=True)

    def survivors(self, vs, limit):
        m = None
        for v in vs:
            mv = self._mask.get(v)
            if mv is None:
                mv = 0
                for idx, r in enumerate(self.roots):
                    if self.dot(v, r) == 0:
                        mv |= 1 << idx
            m = mv if m is None else (m & mv)
        if m is None:
            m = (1 << len(self.roots)) - 1
        if m.bit_count() > limit:
            return None
        return [self.roots[i] for i in range(len(self.roots)) if m >> i & 1]

    def survivor_rank(self, vs):
        surv = self.survivors(vs, 1 << 60)
        if not surv:
            return 0
        return ela.rank([list(r) for r in surv])

    def half_in_dual(self, w):
        s2 = self.scale * self.scale
        return all(self.dot(w, al) % (2 * s2) == 0 for al in self.simples)

    def is_twice_root(self, v):
        if any(x % 2 for x in v):
            return False
        return tuple(x // 2 for x in v) in self.root_set


def _e8_ball(maxsq_raw):
    """Vectors of E8 at scale 2 (uniform-parity integer coordinates with
    coordinate sum divisible by 4) with raw square at most maxsq_raw."""
    out = []
    bmax = _isqrt(maxsq_raw)
    for par in (0, 1):
        vals = [v for v in range(-bmax, bmax + 1) if abs(v) % 2 == par]
        vals.sort(key=abs)

        def rec(i, acc, s, sq):
            if i == 8:
                if s % 4 == 0:
                    out.append(tuple(acc))
                return
            for v in vals:
                nsq = sq + v * v
                if nsq > maxsq_raw:
                    continue
                acc.append(v)
                rec(i + 1, acc, s + v, nsq)
                acc.pop()

        rec(0, [], 0, 0)
    return out


def _simple_system(roots, dot):
    """A base of the root system: positive roots not expressible as a sum
    of two positive roots (positivity wrt a generic functional)."""
    d = len(roots[0])
    weights = [(10 ** 6 + 17) ** i % 999983 + 1 for i in range(d)]
    pos = [r for r in roots if sum(w * c for w, c in zip(weights, r)) > 0]
    posset = set(pos)
    simples = []
    for r in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(r, p)) in posset for p in pos
        )
        if not decomposable:
            simples.append(r)
    return simples


@lru_cache(maxsize=None)
def get_model(spec):
    if spec.startswith("A"):
        if spec.endswith("!glue"):
            n = int(spec[1:-5])
            q = n + 1
            # glue classes: the cyclic subgroup of the right order
            order = {24: 5, 15: 4, 17: 3, 11: 2, 9: 2, 7: 2, 5: 2, 3: 2}[n]
            step = q // order
            return AModel(n, classes=range(0, q, step))
        return AModel(int(spec[1:]))
    if spec.startswith("D"):
        if spec.endswith("!glue"):
            return DModel(int(spec[1:-5]), plus=True)
        return DModel(int(spec[1:]))
    if spec.startswith("E"):
        return EModel(int(spec[1:]))
    raise ValueError(spec)


# ---------------------------------------------------------------------------
# Dense-set computation for a single component.


@dataclass(frozen=True)
class DenseForm:
    component: str
    n: int
    gram: tuple       # 3x3 Gram of the free images (Fractions)
    red_gram: tuple   # generator Gram of the residual form (3x3, or 4x4
                      # with the half-sum generator when n = 2)
    red_rank: int


def _psd(m):
    k = len(m)
    for size in range(1, k + 1):
        for idx in itertools.combinations(range(k), size):
            sub = [[m[i][j] for j in idx] for i in idx]
            if ela.det([row[:] for row in sub]) < 0:
                return False
    return True


def _psd3_int(d):
    """Positive semidefiniteness of a symmetric 3x3 integer matrix."""
    a, b, c = d[0][0], d[1][1], d[2][2]
    if a < 0 or b < 0 or c < 0:
        return False
    ab, ac, bc = d[0][1], d[0][2], d[1][2]
    if a * b < ab * ab or a * c < ac * ac or b * c < bc * bc:
        return False
    det = (a * (b * c - bc * bc) - ab * (ab * c - bc * ac)
           + ac * (ab * bc - b * ac))
    return det >= 0


def _gram_of(model, vs):
    s2 = model.scale * model.scale
    return tuple(
        tuple(Fraction(model.dot(u, v), s2) for v in vs) for u in vs
    )


def _red_data(gram, n):
    b = [[Fraction(BOUND_GRAM[i][j]) for j in range(3)] for i in range(3)]
    r = [[b[i][j] - gram[i][j] for j in range(3)] for i in range(3)]
    if n == 2:
        rows = [
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1)),
            (Fraction(0), Fraction(1, 2), Fraction(1, 2)),
        ]
        full = tuple(
            tuple(
                sum(a * r[i][j] * c for i, a in enumerate(u) for j, c in enumerate(v))
                for v in rows
            )
            for u in rows
        )
    else:
        full = tuple(tuple(x for x in row) for row in r)
    rank = ela.rank([list(row) for row in full])
    return full, rank


def red_min_positive(form):
    """Smallest positive square represented by the residual form (small
    search window); None for the zero form."""
    k = len(form.red_gram)
    best = None
    for x in itertools.product(range(-3, 4), repeat=k):
        v = sum(
            x[i] * form.red_gram[i][j] * x[j] for i in range(k) for j in range(k)
        )
        if v > 0 and (best is None or v < best):
            best = v
    return best


def _killing_tuple_ok(model, surv, n, wbase):
    """Is there an n-tuple of pairwise orthogonal surviving roots whose
    removal leaves no root, with the half-sum divisibility satisfied?"""
    if n == 0:
        return not surv and model.half_in_dual(wbase)
    if not surv:
        return False
    if n == 1:
        for r in surv:
            if all(model.dot(s, r) != 0 for s in surv):
                w = tuple(a + b for a, b in zip(wbase, r))
                if model.half_in_dual(w):
                    return True
        return False
    for r1, r2 in itertools.combinations(surv, 2):
        if model.dot(r1, r2) != 0:
            continue
        if all(
            model.dot(s, r1) != 0 or model.dot(s, r2) != 0 for s in surv
        ):
            w = tuple(a + b + c for a, b, c in zip(wbase, r1, r2))
            if model.half_in_dual(w):
                return True
    return False


_ROOT_LIMIT = 20  # largest admissible residual system (A4) has 20 roots

# Largest rank of a residual root system that still admits a killing
# tuple of the given length: A2 for one root, A4 / 2A2 for two.
_RANK_CAP = {0: 0, 1: 2, 2: 4}
_ROOT_CAP = {0: 0, 1: 6, 2: 20}


@lru_cache(maxsize=None)
def _all_dense(spec, test, cap=4):
    """dict n -> {gram: DenseForm} for one component, for n with
    _RANK_CAP[n] <= cap (larger residual systems cannot be killed)."""
    model = get_model(spec)
    s2 = model.scale * model.scale
    braw = [[BOUND_GRAM[i][j] * s2 for j in range(3)] for i in range(3)]
    ns = tuple(n for n in (0, 1, 2) if _RANK_CAP[n] <= cap)
    root_limit = max(_ROOT_CAP[n] for n in ns)
    out = {0: {}, 1: {}, 2: {}}
    is_e = isinstance(model, EModel)
    # a single coordinate of the third vector takes at most 5 distinct
    # values inside its congruence class, which bounds how far one more
    # vector can split a class of equal columns
    pair_runs = None if is_e else (lambda x, y: _runs((x, y), model.length))
    for x in model.vectors((), 8 * s2, o_stage1=True):
        sqx = model.dot(x, x)

        def _ok2(v, sqx=sqx, x=x):
            d = model.dot(x, v)
            return (braw[0][0] - sqx) * (braw[1][1] - model.dot(v, v)) >= d * d

        kw2 = {"presel": _ok2} if is_e else {}
        for y in model.vectors((x,), 8 * s2, **kw2):
            sqy = model.dot(y, y)
            dxy = model.dot(x, y)
            if (braw[0][0] - sqx) * (braw[1][1] - sqy) < dxy * dxy:
                continue
            if pair_runs is not None:
                slack = cap
                for r in pair_runs(x, y):
                    if r > 5:
                        slack -= r - 5
                if slack < 0:
                    continue

            def _ok3(v, x=x, y=y, sqx=sqx, sqy=sqy, dxy=dxy):
                t = [
                    [sqx, dxy, model.dot(x, v)],
                    [dxy, sqy, model.dot(y, v)],
                    [model.dot(x, v), model.dot(y, v), model.dot(v, v)],
                ]
                diff = [
                    [braw[i][j] - t[i][j] for j in range(3)] for i in range(3)
                ]
                return _psd3_int(diff)

            kw3 = {"presel": _ok3} if is_e else {"cap_eq": cap}
            for z in model.vectors((x, y), 4 * s2, **kw3):
                t = [
                    [sqx, dxy, model.dot(x, z)],
                    [dxy, sqy, model.dot(y, z)],
                    [model.dot(x, z), model.dot(y, z), model.dot(z, z)],
                ]
                diff = [
                    [braw[i][j] - t[i][j] for j in range(3)] for i in range(3)
                ]
                if not _psd3_int(diff):
                    continue
                if t[0][0] == 8 * s2 and model.is_twice_root(x):
                    continue
                if t[1][1] == 8 * s2 and model.is_twice_root(y):
                    continue
                surv = model.survivors((x, y, z), root_limit)
                if surv is None:
                    continue
                wbase = tuple(a + b for a, b in zip(y, z))
                for n in ns:
                    if _killing_tuple_ok(model, surv, n, wbase):
                        gram = tuple(
                            tuple(Fraction(t[i][j], s2) for j in range(3))
                            for i in range(3)
                        )
                        if gram not in out[n]:
                            red, rank = _red_data(gram, n)
                            out[n][gram] = DenseForm(
                                model.name, n, gram, red, rank
                            )
    return out


def _eff_cap(spec, n):
    # E-type enumeration costs the same at every cap; compute once in full
    return 4 if spec.startswith("E") else _RANK_CAP[n]


def dense_sets(component, test, n):
    """The set D_n of bounded forms the free part can induce on the
    component, each with its residual form."""
    return sorted(
        _all_dense(component, test, _eff_cap(component, n))[n].values(),
        key=lambda f: f.gram,
    )


# ---------------------------------------------------------------------------
# Combination across components.


def _add_gram(a, b):
    return tuple(
        tuple(a[i][j] + b[i][j] for j in range(3)) for i in range(3)
    )


_ZERO_GRAM = tuple(tuple(Fraction(0) for _ in range(3)) for _ in range(3))


def _bounded(gram):
    diff = [
        [Fraction(BOUND_GRAM[i][j]) - gram[i][j] for j in range(3)]
        for i in range(3)
    ]
    return _psd(diff)


def combine(da, db):
    """Bounded sums of two dense-set families (dicts n -> iterable of
    DenseForm or of Gram matrices); returns dict n -> {gram: DenseForm}."""

    def grams(d, n):
        items = d.get(n, ())
        if isinstance(items, dict):
            items = items.values()
        return [f.gram if isinstance(f, DenseForm) else f for f in items]

    out = {0: {}, 1: {}, 2: {}}
    for n in (0, 1, 2):
        for na in range(n + 1):
            for ga in grams(da, na):
                for gb in grams(db, n - na):
                    g = _add_gram(ga, gb)
                    if g in out[n] or not _bounded(g):
                        continue
                    red, rank = _red_data(g, n)
                    out[n][g] = DenseForm("sum", n, g, red, rank)
    return out


@lru_cache(maxsize=None)
def _dense_multi_n(comps, test, n):
    """{gram: DenseForm} for an ordered multiset of components at one n."""
    if not comps:
        if n:
            return {}
        red0, rank0 = _red_data(_ZERO_GRAM, 0)
        return {_ZERO_GRAM: DenseForm("empty", 0, _ZERO_GRAM, red0, rank0)}
    out = {}
    for na in range(n + 1):
        head = _all_dense(comps[0], test, _eff_cap(comps[0], na))[na]
        rest = _dense_multi_n(comps[1:], test, n - na)
        for ga in head:
            for gb in rest:
                g = _add_gram(ga, gb)
                if g in out or not _bounded(g):
                    continue
                red, rank = _red_data(g, n)
                out[g] = DenseForm("sum", n, g, red, rank)
    return out


def _dense_multi(comps, test):
    """dict n -> {gram: DenseForm} for an ordered multiset of components."""
    return {n: _dense_multi_n(comps, test, n) for n in (0, 1, 2)}


def dense_multi_empty(comps, test, ns):
    comps = tuple(sorted(comps))
    return all(not _dense_multi_n(comps, test, n) for n in ns)


# ---------------------------------------------------------------------------
# Isometries of a residual form into a component (criterion 4) and the
# exact single-component check.


def _prescribed_vectors(model, prev, sq_raw, prods_raw):
    """Vectors with exact raw square and exact raw products with prev."""
    if sq_raw == 0:
        if any(p != 0 for p in prods_raw):
            return []
        return [tuple(0 for _ in range(model.length))]
    cands = model.vectors(prev, sq_raw, exact_sq=sq_raw)
    out = []
    for v in cands:
        if all(model.dot(v, p) == t for p, t in zip(prev, prods_raw)):
            out.append(v)
    return out


def _isometries_into(model, form):
    """Images in the component's dual realizing the residual form's
    generator Gram (the n = 2 half-sum generator is checked, not
    enumerated).  Yields tuples of three vectors."""
    s2 = model.scale * model.scale
    g = form.red_gram
    raw = [[g[i][j] * s2 for j in range(3)] for i in range(3)]
    if any(
        raw[i][j].denominator != 1 for i in range(3) for j in range(3)
    ):
        return
    raw = [[int(raw[i][j]) for j in range(3)] for i in range(3)]
    for v1 in _prescribed_vectors(model, (), raw[0][0], ()):
        for v2 in _prescribed_vectors(model, (v1,), raw[1][1], (raw[0][1],)):
            for v3 in _prescribed_vectors(
                model, (v1, v2), raw[2][2], (raw[0][2], raw[1][2])
            ):
                if form.n == 2:
                    w = tuple(a + b for a, b in zip(v2, v3))
                    if not model.half_in_dual(w):
                        continue
                yield (v1, v2, v3)


def _criterion4_component(model, forms):
    """True if every isometry of every residual form into the component
    leaves a surviving root system of rank larger than 4 - 2n."""
    for form in forms:
        need = 4 - 2 * form.n
        for iso in _isometries_into(model, form):
            if model.survivor_rank(iso) <= need:
                return False
    return True


def _single_component_verdict(name, test):
    """Exact enumeration for one-component lattices: the free part must
    realize the full bound Gram inside the unimodular lattice, leaving a
    residual root system a two-root tuple can cancel."""
    spec = name + "!glue"
    model = get_model(spec)
    s2 = model.scale * model.scale
    min_rank = None
    for x in _prescribed_vectors(model, (), 8 * s2, ()):
        if model.is_twice_root(x):
            continue
        for y in _prescribed_vectors(model, (x,), 8 * s2, (0,)):
            if model.is_twice_root(y):
                continue
            for z in _prescribed_vectors(model, (x, y), 4 * s2, (0, 0)):
                rank = model.survivor_rank((x, y, z))
                if min_rank is None or rank < min_rank:
                    min_rank = rank
                surv = model.survivors((x, y, z), _ROOT_LIMIT)
                if surv is None:
                    continue
                wbase = tuple(a + b for a, b in zip(y, z))
                if _killing_tuple_ok(model, surv, 2, wbase):
                    return Verdict("survives", None, name,
                                   witnesses=((x, y, z),))
    detail = "minimal residual root rank %s" % min_rank
    return Verdict("eliminated", 4, name, detail=detail)


# ---------------------------------------------------------------------------
# The elimination verdict.


@dataclass(frozen=True)
class Verdict:
    status: str               # 'eliminated' | 'survives'
    criterion: object         # 1..4, 'exhaustive', or None
    subset: object            # index subset / component the criterion used
    detail: str = ""
    witnesses: tuple = ()

    @property
    def eliminated(self):
        return self.status == "eliminated"


CODE_TARGETS = ("A1^24", "A2^12", "A3^8")

DEFAULT_TARGETS = (
    "E8^3",
    "D24",
    "A24",
    "D12^2",
    "A12^2",
    "E6^4",
    "A17+E7",
    "D10+E7^2",
)


def components_of(name):
    return tuple(NIEMEIER_ROOT_SYSTEMS[name])


def eliminate(name, test, max_idle_components=0):
    """Decide whether the named 24-dimensional even unimodular lattice can
    contain the test lattice with root-free orthogonal complement."""
    comps = components_of(name)
    m = len(comps)
    if name in CODE_TARGETS:
        types = enumerate_embeddings(name, test)
        if types:
            return Verdict("survives", None, name, witnesses=tuple(types))
        return Verdict("eliminated", "exhaustive", name)
    if m == 1:
        return _single_component_verdict(name, test)
    distinct = sorted(set(comps))
    # criterion 2: deleting any two components leaves empty D_0
    if m >= 2:
        deletions = sorted(
            {
                tuple(_delete(comps, i, j))
                for i in range(m)
                for j in range(i + 1, m)
            }
        )
        if all(dense_multi_empty(d, test, (0,)) for d in deletions):
            return Verdict("eliminated", 2, deletions[0],
                           detail="all D_0 on %d-component subsets empty"
                           % (m - 2))
    # criterion 1: deleting any one component leaves empty D_0 and D_1
    deletions = sorted({tuple(_delete(comps, i)) for i in range(m)})
    if all(dense_multi_empty(d, test, (0, 1)) for d in deletions):
        return Verdict("eliminated", 1, deletions[0],
                       detail="all D_0, D_1 on %d-component subsets empty"
                       % (m - 1))
    # criterion 3: some proper subset with empty D_n for every n
    for size in range(1, m):
        for sub in sorted(
            {tuple(sorted(c)) for c in itertools.combinations(comps, size)}
        ):
            if dense_multi_empty(sub, test, (0, 1, 2)):
                return Verdict("eliminated", 3, sub,
                               detail="D_* empty on %s" % (sub,))
    # criterion 4: some component k on which every isometry of every
    # residual form leaves too large a root system
    for k in sorted(set(comps)):
        rest = tuple(sorted(_delete(comps, comps.index(k))))
        d = _dense_multi(rest, test)
        forms = [f for n in (0, 1, 2) for f in d[n].values()]
        if not forms:
            continue
        model = get_model(k)
        if _criterion4_component(model, forms):
            return Verdict("eliminated", 4, k,
                           detail="all residual isometries into %s leave "
                           "root rank > 4-2n" % k)
    d = _dense_multi(tuple(sorted(comps)), test)
    forms = tuple(f for n in (0, 1, 2) for f in d[n].values())
    return Verdict("survives", None, name, witnesses=forms,
                   detail="criteria 1-4 inconclusive")


def _delete(comps, *idx):
    return [c for i, c in enumerate(comps) if i not in idx]


def eliminate_all(test, full=False):
    """Verdicts for the default named subset, or for every lattice with
    roots when full=True (the long-running sweep)."""
    names = (
        tuple(NIEMEIER_ROOT_SYSTEMS) if full else DEFAULT_TARGETS
    )
    return {name: eliminate(name, test) for name in names}


# ---------------------------------------------------------------------------
# Classification of embeddings and strict class counting.


def enumerate_manycomponent(name, test):
    """Complete list of combinatorial types of embeddings with root-free
    complement into one of the code-based lattices."""
    return enumerate_embeddings(name, test)


def classify_up_to_autN(types):
    """Orbit and extension-class structure of combinatorial types.

    Returns (orbits, extension_classes): `orbits` lists, per input type,
    its orbit representatives under the lattice's isometry group;
    `extension_classes` counts the classes after merging types related by
    a basis change of the test lattice."""
    orbits = [type_orbits(t) for t in types]
    labels = {}
    for i, t in enumerate(types):
        for j, rep in enumerate(orbits[i]):
            labels[(i, j)] = (i, j)

    def find(x):
        while labels[x] != x:
            labels[x] = labels[labels[x]]
            x = labels[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            labels[rx] = ry

    if types:
        test = types[0].test
        target = types[0].target
        from .manycomp import geometry, target_data

        s, _m, _code = target_data(target)
        geo = geometry(s)
        autos = test_automorphisms(test)
        bytype = {}
        for i, t in enumerate(types):
            bytype.setdefault(t.cells, []).append(i)
        for i, t in enumerate(types):
            for j, rep in enumerate(orbits[i]):
                for mat in autos:
                    moved = transform_state(geo, mat, rep)
                    key = tuple(
                        sorted((geo.canonical_cell(c) for c in moved),
                               reverse=True)
                    )
                    for i2 in bytype.get(key, ()):
                        data = type_orbit_data(types[i2])
                        c = data.classify(moved)
                        if c is not None:
                            union((i, j), (i2, c))
                            break
    classes = {find(x) for x in labels}
    return orbits, len(classes)


def complement(embedding_type, state=None, negate=True):
    """Orthogonal complement of a realized embedding (rank 19, negated to
    negative definite by default)."""
    st = state if state is not None else embedding_type.realization
    return embedding_complement(embedding_type.target, st, negate=negate)


def lattice_fingerprint(lat):
    """Invariant vector separating the rank-19 complements: determinant,
    discriminant invariant factors, and counts of dual vectors of small
    square."""
    g = [list(r) for r in lat.gram]
    gram = [[-x for x in row] for row in g]  # positive definite copy
    det = ela.det([row[:] for row in gram])
    disc = lat.discriminant().form.orders
    ginv = ela.mat_inverse([row[:] for row in gram])
    den = 1
    for row in ginv:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    scaled = [[x * den for x in row] for row in ginv]
    counts = []
    for target in (Fraction(1), Fraction(2), Fraction(9, 4)):
        t = target * den
        if t.denominator != 1:
            counts.append(0)
            continue
        vs = short_vectors(scaled, int(t), norm_exact=int(t))
        counts.append(len(vs))
    return (int(det), tuple(disc), tuple(counts))


def _gcd(a, b):
    import math

    return math.gcd(a, b)


def strict_class_count(s_lattice, test, targets=CODE_TARGETS):
    """Number of strict embedding classes (orbits under the lattice's
    isometry group, over all admissible unimodular lattices) whose
    complement is isomorphic to the given rank-19 lattice."""
    want = lattice_fingerprint(s_lattice)
    total = 0
    for name in targets:
        for t in enumerate_embeddings(name, test):
            reps = type_orbits(t)
            for rep in reps:
                comp, _basis = embedding_complement(name, rep, negate=True)
                if lattice_fingerprint(comp) == want:
                    total += 1
    return total
