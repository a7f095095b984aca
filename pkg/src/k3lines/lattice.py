"""Even integral lattices over exact arithmetic.

A lattice is its Gram matrix (symmetric, integer entries, even diagonal for
even lattices).  Vectors are coordinate rows with respect to the implicit
basis; dual vectors are coordinate rows with respect to the dual basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import exactlinalg as ela
from .discform import DiscriminantForm, _RawForm, _mod1, _mod2
from .shortvec import short_vectors


@dataclass(frozen=True)
class Lattice:
    """An integral lattice given by its Gram matrix."""

    gram: tuple  # tuple of tuples of ints

    @staticmethod
    def from_rows(rows):
        return Lattice(tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def rank(self):
        return len(self.gram)

    def det(self):
        return ela.det([list(r) for r in self.gram])

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def gram_rows(self):
        return [list(r) for r in self.gram]

    def inner(self, x, y):
        g = self.gram
        return sum(x[i] * g[i][j] * y[j] for i in range(self.rank) for j in range(self.rank))

    def norm(self, x):
        return self.inner(x, x)

    def dual_inner(self, y1, y2):
        """Inner product of two dual-basis coordinate rows."""
        ginv = ela.mat_inverse(self.gram_rows())
        return sum(y1[i] * ginv[i][j] * y2[j]
                   for i in range(self.rank) for j in range(self.rank))

    def negated(self):
        return Lattice(tuple(tuple(-x for x in row) for row in self.gram))

    def direct_sum(self, other):
        n, m = self.rank, other.rank
        g = [[0] * (n + m) for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                g[i][j] = self.gram[i][j]
        for i in range(m):
            for j in range(m):
                g[n + i][n + j] = other.gram[i][j]
        return Lattice.from_rows(g)

    # -- definite lattice utilities ---------------------------------------
    def is_positive_definite(self):
        g = self.gram_rows()
        for k in range(1, self.rank + 1):
            minor = [row[:k] for row in g[:k]]
            if ela.det(minor) <= 0:
                return False
        return True

    def vectors_of_norm(self, norm, offset=None):
        """Vectors of given norm; for negative definite lattices the norm is
        interpreted in the lattice (so pass a negative value)."""
        g = self.gram_rows()
        nrm = Fraction(norm)
        if self.rank and g[0][0] < 0:
            g = [[-x for x in row] for row in g]
            nrm = -nrm
        return short_vectors(g, nrm, offset=offset, norm_exact=nrm)

    def roots(self):
        return self.vectors_of_norm(2 if self.gram[0][0] > 0 else -2)

    def min_norm_positive(self, cap=16):
        """Minimal nonzero norm (positive definite), scanning norms <= cap."""
        g = self.gram_rows()
        vs = short_vectors(g, cap)
        if not vs:
            return None
        return min(sum(v[i] * g[i][j] * v[j] for i in range(self.rank)
                       for j in range(self.rank)) for v in vs)

    def is_root_free(self):
        g = self.gram_rows()
        if self.rank == 0:
            return True
        if g[0][0] < 0:
            g = [[-x for x in row] for row in g]
        return not short_vectors(g, 2)

    # -- discriminant form -------------------------------------------------
    def discriminant(self) -> "LatticeDisc":
        return LatticeDisc(self)


class LatticeDisc:
    """Discriminant group L*/L with its quadratic form and generator lifts.

    Generators are stored as dual-basis coordinate rows (integer vectors);
    `element_of` maps a dual-basis coordinate row to the element tuple.
    """

    def __init__(self, lat: Lattice):
        self.lattice = lat
        n = lat.rank
        d, u, v = ela.smith_normal_form(lat.gram_rows())
        vinv = ela.mat_inverse(v)
        vinv = [[int(x) for x in row] for row in vinv]
        orders = [abs(d[i][i]) for i in range(n)]
        keep = [i for i in range(n) if orders[i] != 1]
        self._v = v
        self._keep = keep
        self._orders_full = orders
        self.gens = [vinv[i] for i in keep]  # dual-basis coordinate rows
        ginv = ela.mat_inverse(lat.gram_rows())
        q_diag, b = [], [[Fraction(0)] * len(keep) for _ in keep]
        for a, i in enumerate(keep):
            gi = self.gens[a]
            q_diag.append(_mod2(_dual_norm(ginv, gi, gi)))
            for bb, j in enumerate(keep):
                if bb > a:
                    b[a][bb] = _mod1(_dual_norm(ginv, gi, self.gens[bb]))
        raw = _RawForm([orders[i] for i in keep], q_diag, b)
        # raw presentation is already in invariant-factor shape
        self.form = DiscriminantForm(
            tuple(orders[i] for i in keep),
            tuple(q_diag),
            tuple(b[a][bb] for a in range(len(keep)) for bb in range(a + 1, len(keep))),
        )

    def element_of(self, dual_row):
        """Element tuple of a dual-basis coordinate row (integers)."""
        z = ela.vec_mat(list(dual_row), self._v)
        return tuple(int(z[i]) % self._orders_full[i] for i in self._keep)

    def dual_row_of(self, elem):
        """A dual-basis coordinate row representing an element tuple."""
        out = [0] * self.lattice.rank
        for c, g in zip(elem, self.gens):
            out = [a + c * b for a, b in zip(out, g)]
        return out

    def coords_of(self, elem):
        """Rational coordinates (lattice basis) of a representative of elem."""
        ginv = ela.mat_inverse(self.lattice.gram_rows())
        row = self.dual_row_of(elem)
        return ela.vec_mat([Fraction(x) for x in row], ginv)


def _dual_norm(ginv, y1, y2):
    n = len(ginv)
    return sum(Fraction(y1[i]) * ginv[i][j] * y2[j] for i in range(n) for j in range(n))


# ---------------------------------------------------------------------------
# sublattices, complements, extensions


def orthogonal_complement(lat: Lattice, vectors):
    """Saturated orthogonal complement of the span of `vectors` (coordinate
    rows).  Returns (sublattice, basis rows in the ambient coordinates)."""
    if not vectors:
        return lat, ela.identity(lat.rank)
    a = ela.mat_mul(lat.gram_rows(), ela.transpose([list(v) for v in vectors]))
    basis = ela.kernel_int(a)
    gram = ela.mat_mul(ela.mat_mul(basis, lat.gram_rows()), ela.transpose(basis)) \
        if basis else []
    return Lattice.from_rows(gram), basis


def finite_index_extension(lat: Lattice, glue_rows):
    """Extension of lat by rational coordinate rows (lattice-basis coords).

    Returns (extended lattice, basis rows of the extension in the original
    coordinates, as Fractions).  The result must be integral; asserted.
    """
    n = lat.rank
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows += [[Fraction(x) for x in row] for row in glue_rows]
    den = ela.lcm_list([x.denominator for row in rows for x in row])
    int_rows = [[int(x * den) for x in row] for row in rows]
    h = ela.hnf_rows(int_rows)
    assert len(h) == n, "extension is degenerate"
    basis = [[Fraction(x, den) for x in row] for row in h]
    gram = ela.mat_mul(ela.mat_mul(basis, lat.gram_rows()), ela.transpose(basis))
    out = []
    for row in gram:
        out.append([int(x) for x in row])
        assert all(Fraction(int(x)) == x for x in row), "extension is not integral"
    return Lattice.from_rows(out), basis


def glue(s: Lattice, t: Lattice, pairs):
    """Index-|K| extension of s ⊕ t by glue vectors.

    Each pair is (xs, xt): rational lattice-basis coordinate rows in s and t.
    Returns (lattice, basis rows over s ⊕ t coordinates).
    """
    amb = s.direct_sum(t)
    rows = [list(xs) + list(xt) for xs, xt in pairs]
    return finite_index_extension(amb, rows)


def extension_kernel_is_isotropic(s: Lattice, t: Lattice, pairs):
    """Check that the glue vectors span an isotropic subgroup (q = 0 mod 2Z)."""
    amb = s.direct_sum(t)
    for xs, xt in pairs:
        v = [Fraction(x) for x in list(xs) + list(xt)]
        norm = sum(v[i] * amb.gram[i][j] * v[j]
                   for i in range(amb.rank) for j in range(amb.rank))
        if _mod2(norm) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# binary forms


def gauss_reduce(a, b, c):
    """Reduce an even positive definite binary form to 0 <= 2b <= a <= c."""
    assert a > 0 and c > 0 and a * c > b * b
    while True:
        changed = False
        if abs(2 * b) > a:
            q = (2 * b + a) // (2 * a)
            b2 = b - q * a
            c2 = c - 2 * q * b + q * q * a
            b, c = b2, c2
            changed = True
        if a > c:
            a, c = c, a
            changed = True
        if not changed:
            break
    if b < 0:
        b = -b
    return a, b, c


def reduced_rank2_forms(max_det):
    """All reduced even positive definite binary forms with det <= max_det."""
    out = []
    a = 2
    while 3 * a * a <= 4 * max_det:
        for b in range(0, a // 2 + 1):
            c = a
            while a * c - b * b <= max_det:
                if a * c - b * b > 0 and (2 * b <= a):
                    out.append((a, b, c))
                c += 2
        a += 2
    out.sort(key=lambda f: (f[0] * f[2] - f[1] * f[1], f))
    return out


def rank2_lattice(form):
    a, b, c = form
    return Lattice.from_rows([[a, b], [b, c]])


def enumerate_rank2(max_det):
    """Classes and genera of even positive definite binary forms.

    Returns (classes, genera): classes is the list of reduced triples,
    genera a list of lists of triples grouped by (det, discriminant form).
    """
    from .discform import are_isomorphic

    classes = reduced_rank2_forms(max_det)
    genera = []
    keyed = []
    for f in classes:
        lat = rank2_lattice(f)
        disc = lat.discriminant().form
        d = f[0] * f[2] - f[1] * f[1]
        placed = False
        for entry in keyed:
            if entry[0] == d and entry[1].orders == disc.orders \
                    and entry[1].value_profile() == disc.value_profile() \
                    and are_isomorphic(entry[1], disc):
                entry[2].append(f)
                placed = True
                break
        if not placed:
            keyed.append((d, disc, [f]))
    keyed.sort(key=lambda e: (e[0], e[2][0]))
    genera = [e[2] for e in keyed]
    return classes, genera


# ---------------------------------------------------------------------------
# automorphisms of small definite lattices


def automorphisms(lat: Lattice, cap=None):
    """All P (integer matrices, rows = images of basis vectors) with
    P G P^t = G.  Backtracking over short vectors; definite lattices only."""
    n = lat.rank
    g = lat.gram_rows()
    sign = 1
    if n and g[0][0] < 0:
        g = [[-x for x in row] for row in g]
    norms = [g[i][i] for i in range(n)]
    pool = {}
    for nv in sorted(set(norms)):
        pool[nv] = short_vectors(g, nv, norm_exact=nv)
    out = []

    def inner(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    def rec(i, rows):
        if i == n:
            out.append([list(r) for r in rows])
            return
        for v in pool[norms[i]]:
            ok = True
            for j in range(i):
                if inner(rows[j], v) != g[j][i]:
                    ok = False
                    break
            if ok:
                rows.append(v)
                rec(i + 1, rows)
                rows.pop()

    rec(0, [])
    # images must be a basis (determinant ±1)
    return [p for p in out if abs(ela.det(p)) == 1]


def special_orthogonal_order(lat: Lattice):
    """Order of SO for a rank-2 positive definite lattice, and whether an
    orientation-reversing automorphism exists."""
    auts = automorphisms(lat)
    so = [p for p in auts if ela.det(p) == 1]
    return len(so), len(auts) > len(so)


# ---------------------------------------------------------------------------
# positive semidefinite test for rational symmetric matrices


def is_positive_semidefinite(mat):
    """Exact psd test by pivoting on positive diagonal entries."""
    m = [[Fraction(x) for x in row] for row in mat]
    n = len(m)
    idx = list(range(n))
    while idx:
        # find any index with positive diagonal
        piv = next((i for i in idx if m[i][i] > 0), None)
        if piv is None:
            # all diagonals <= 0: psd iff the whole remaining block is zero
            return all(m[i][j] == 0 for i in idx for j in idx)
        d = m[piv][piv]
        idx = [i for i in idx if i != piv]
        for i in idx:
            if m[i][piv] != 0 or m[piv][i] != 0:
                c = m[i][piv] / d
                for j in idx:
                    m[i][j] -= c * m[piv][j]
                m[i][piv] = Fraction(0)
        for j in idx:
            m[piv][j] = Fraction(0)
    return True
