"""Finite quadratic forms (discriminant forms of even lattices).

A form is a finite abelian group ``Z/d_1 x ... x Z/d_k`` (invariant factors,
``d_i | d_{i+1}``) with a quadratic form q taking values in Q/2Z and the
associated bilinear form b with values in Q/Z, ``q(x+y) = q(x)+q(y)+2b(x,y)``.

Elements are integer tuples reduced modulo the orders.  Automorphisms are
represented by the tuple of generator images and multiply like maps.
All groups handled here are small (order at most a few thousand), so
complete enumeration and backtracking searches are used freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactlinalg import (
    hnf_rows,
    identity,
    mat_inverse,
    mat_mul,
    smith_normal_form,
    solve_frac,
)


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _mod2(x: Fraction) -> Fraction:
    f = Fraction(x)
    n = f.numerator % (2 * f.denominator)
    return Fraction(n, f.denominator)


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form on ``Z/d_1 x ... x Z/d_k``."""

    orders: tuple  # invariant factors, each > 1
    q_diag: tuple  # q(e_i) in Q/2Z
    b_off: tuple  # upper-triangular b(e_i, e_j), i < j, row-major, in Q/Z

    def __post_init__(self):
        k = len(self.orders)
        assert len(self.q_diag) == k
        assert len(self.b_off) == k * (k - 1) // 2

    # -- basic structure ---------------------------------------------------
    @property
    def ngens(self):
        return len(self.orders)

    def group_order(self):
        out = 1
        for d in self.orders:
            out *= d
        return out

    def _b_index(self, i, j):
        assert i < j
        k = self.ngens
        return i * (2 * k - i - 1) // 2 + (j - i - 1)

    def b_gen(self, i, j):
        if i == j:
            return _mod1(self.q_diag[i])
        if i > j:
            i, j = j, i
        return self.b_off[self._b_index(i, j)]

    def reduce(self, x):
        return tuple(int(c) % d for c, d in zip(x, self.orders))

    def zero(self):
        return (0,) * self.ngens

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg_elem(self, x):
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, c, x):
        return tuple((c * a) % d for a, d in zip(x, self.orders))

    def order_of(self, x):
        out = 1
        for a, d in zip(x, self.orders):
            if a % d:
                out = out * (d // gcd(d, a)) // gcd(out, d // gcd(d, a))
        return out

    def elements(self):
        for xs in itertools.product(*(range(d) for d in self.orders)):
            yield xs

    # -- the forms ---------------------------------------------------------
    def q_of(self, x):
        total = Fraction(0)
        k = self.ngens
        for i in range(k):
            total += x[i] * x[i] * self.q_diag[i]
        for i in range(k):
            for j in range(i + 1, k):
                total += 2 * x[i] * x[j] * self.b_off[self._b_index(i, j)]
        return _mod2(total)

    def b_of(self, x, y):
        total = Fraction(0)
        k = self.ngens
        for i in range(k):
            total += Fraction(x[i] * y[i]) * _mod1(self.q_diag[i])
        for i in range(k):
            for j in range(i + 1, k):
                bij = self.b_off[self._b_index(i, j)]
                total += (x[i] * y[j] + x[j] * y[i]) * bij
        return _mod1(total)

    # -- constructions -----------------------------------------------------
    def negated(self):
        return DiscriminantForm(
            self.orders,
            tuple(_mod2(-q) for q in self.q_diag),
            tuple(_mod1(-b) for b in self.b_off),
        )

    def direct_sum(self, other):
        """Direct sum, renormalised to invariant factors."""
        orders = list(self.orders) + list(other.orders)
        k = len(orders)
        q = list(self.q_diag) + list(other.q_diag)
        b = [[Fraction(0)] * k for _ in range(k)]
        k1 = self.ngens
        for i in range(k1):
            for j in range(i + 1, k1):
                b[i][j] = self.b_off[self._b_index(i, j)]
        for i in range(other.ngens):
            for j in range(i + 1, other.ngens):
                b[k1 + i][k1 + j] = other.b_off[other._b_index(i, j)]
        raw = _RawForm(orders, q, b)
        return raw.normalized()

    # -- invariants --------------------------------------------------------
    def value_profile(self):
        """Multiset of (element order, q(x)) over all elements; iso invariant."""
        from collections import Counter

        c = Counter()
        for x in self.elements():
            c[(self.order_of(x), self.q_of(x))] += 1
        return tuple(sorted(c.items()))


class _RawForm:
    """A quadratic form on an arbitrary ⊕ Z/n_i presentation (n_i >= 1)."""

    def __init__(self, orders, q_diag, b_upper):
        self.orders = list(orders)
        self.q_diag = [Fraction(x) for x in q_diag]
        self.b = b_upper  # full upper-triangular matrix access b[i][j], i<j

    def normalized(self) -> DiscriminantForm:
        """Renormalise the presentation to invariant factors via SNF."""
        k = len(self.orders)
        if k == 0:
            return DiscriminantForm((), (), ())
        # the group is Z^k / diag(orders); SNF of diag(orders) is trivial,
        # but generators may be redundant (order 1).  More generally we use
        # the relation matrix R = diag(orders).
        rel = [[self.orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
        d, u, v = smith_normal_form(rel)
        # columns of v^{-1}... new generators: with x = v * y (y new coords),
        # relations become u^{-1} d v^{-1}? Use standard: group Z^k/R Z^k,
        # R = rel (columns are relators? rows?).  Take relators as rows:
        # quotient of row space.  We prefer the simple path: generators
        # e_i with orders n_i; an invariant-factor basis is obtained from
        # SNF of the relation matrix with both transforms.
        # d = u * rel * v, so new generator basis g' = (u^{-1})^T? --
        # Work with column convention: elements are column vectors x in
        # Z^k mod columns of rel.  d = u rel v means: substitute x = u^T z?
        # Simplest correct approach: new generators f_j = sum_i uinv[i][j] e_i
        # where uinv = u^{-1}: then the subgroup of relations diag(orders)
        # maps to d in the new basis.
        uinv = [[int(x) for x in row] for row in _int_inverse(u)]
        new_orders = [d[i][i] for i in range(k)]
        # generator f_j corresponds to column j of uinv (e-coordinates)
        gens = [[uinv[i][j] for i in range(k)] for j in range(k)]
        keep = [j for j in range(k) if new_orders[j] != 1]
        q = []
        for j in keep:
            q.append(_mod2(self._q_vec(gens[j])))
        b_off = []
        kk = len(keep)
        for a in range(kk):
            for bidx in range(a + 1, kk):
                b_off.append(_mod1(self._b_vec(gens[keep[a]], gens[keep[bidx]])))
        return DiscriminantForm(
            tuple(new_orders[j] for j in keep), tuple(q), tuple(b_off)
        )

    def _q_vec(self, x):
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            total += x[i] * x[i] * self.q_diag[i]
        for i in range(k):
            for j in range(i + 1, k):
                total += 2 * x[i] * x[j] * self.b[i][j]
        return total

    def _b_vec(self, x, y):
        total = Fraction(0)
        k = len(self.orders)
        for i in range(k):
            total += Fraction(x[i] * y[i]) * self.q_diag[i]
        for i in range(k):
            for j in range(i + 1, k):
                total += (x[i] * y[j] + x[j] * y[i]) * self.b[i][j]
        return total


def _int_inverse(u):
    inv = mat_inverse(u)
    out = []
    for row in inv:
        out.append([int(x) for x in row])
        assert all(Fraction(int(x)) == x for x in row)
    return out


# ---------------------------------------------------------------------------
# isomorphisms and automorphisms


def _candidate_images(src: DiscriminantForm, dst: DiscriminantForm, i):
    """Elements y of dst with d_i * y = 0, q(y) = q(e_i)."""
    d = src.orders[i]
    qi = src.q_of(tuple(int(j == i) for j in range(src.ngens)))
    out = []
    for y in dst.elements():
        if dst.smul(d, y) != dst.zero():
            continue
        if dst.order_of(y) != d:
            continue
        if dst.q_of(y) != qi:
            continue
        out.append(y)
    return out


def _subgroup_order(D: DiscriminantForm, gens):
    seen = {D.zero()}
    frontier = [D.zero()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = D.add(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen), seen


def subgroup_elements(D: DiscriminantForm, gens):
    return _subgroup_order(D, gens)[1]


def find_isomorphisms(src: DiscriminantForm, dst: DiscriminantForm, limit=None):
    """Backtracking search for isomorphisms preserving q (hence b).

    Returns a list of generator-image tuples; with limit=1 stops at the
    first hit.  Complete over all assignments.
    """
    if src.orders != dst.orders:
        return []
    k = src.ngens
    cand = [_candidate_images(src, dst, i) for i in range(k)]
    gens_src = [tuple(int(j == i) for j in range(k)) for i in range(k)]
    found = []

    def rec(i, images):
        if limit is not None and len(found) >= limit:
            return
        if i == k:
            order, _ = _subgroup_order(dst, images)
            if order == dst.group_order():
                found.append(tuple(images))
            return
        for y in cand[i]:
            ok = True
            for j in range(i):
                if dst.b_of(images[j], y) != src.b_of(gens_src[j], gens_src[i]):
                    ok = False
                    break
            if ok:
                images.append(y)
                rec(i + 1, images)
                images.pop()

    rec(0, [])
    return found


def are_isomorphic(a: DiscriminantForm, b: DiscriminantForm):
    if a.orders != b.orders:
        return False
    return bool(find_isomorphisms(a, b, limit=1))


class AutGroup:
    """The full automorphism group of a small discriminant form."""

    def __init__(self, D: DiscriminantForm, elements=None):
        self.D = D
        if elements is None:
            elements = find_isomorphisms(D, D)
        self.elems = sorted(set(elements))
        self.index = {g: i for i, g in enumerate(self.elems)}

    def __len__(self):
        return len(self.elems)

    def apply(self, g, x):
        out = self.D.zero()
        for c, img in zip(x, g):
            out = self.D.add(out, self.D.smul(c, img))
        return out

    def compose(self, g, h):
        """g after h: images of generators under g∘h."""
        return tuple(self.apply(g, img) for img in h)

    def identity_elem(self):
        k = self.D.ngens
        return tuple(tuple(int(j == i) for j in range(k)) for i in range(k))

    def subgroup(self, gens):
        """Closure of gens under composition."""
        idg = self.identity_elem()
        seen = {idg}
        frontier = [idg]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen)

    def orbit(self, x, subgroup=None):
        gs = subgroup if subgroup is not None else self.elems
        return sorted({self.apply(g, x) for g in gs})

    def stabilizer(self, x, subgroup=None):
        gs = subgroup if subgroup is not None else self.elems
        return [g for g in gs if self.apply(g, x) == x]

    def orbits(self, xs, subgroup=None):
        remaining = set(xs)
        out = []
        while remaining:
            x = min(remaining)
            orb = set(self.orbit(x, subgroup)) & remaining
            out.append(sorted(orb))
            remaining -= orb
        return out

    def double_cosets(self, left, right):
        """Double cosets left\\G/right, as lists of group elements."""
        remaining = set(self.elems)
        out = []
        while remaining:
            g = min(remaining)
            coset = {self.compose(self.compose(l, g), r) for l in left for r in right}
            out.append(sorted(coset))
            remaining -= coset
        return out


# ---------------------------------------------------------------------------
# subquotients


def subquotient_form(D: DiscriminantForm, h_gens, k_gens):
    """The form on H/K for subgroups K <= H <= D, q restricted from D.

    h_gens and k_gens are element tuples.  q must be well defined on the
    quotient when b vanishes on K x H (the isotropic-kernel situation);
    this is the caller's responsibility.  Returns a DiscriminantForm.
    """
    n = D.ngens
    diag = [[D.orders[i] if i == j else 0 for j in range(n)] for i in range(n)]
    lat_h = hnf_rows([list(g) for g in h_gens] + diag)
    lat_k = hnf_rows([list(g) for g in k_gens] + diag)
    # inclusion matrix: rows of lat_k in terms of rows of lat_h
    x = []
    for row in lat_k:
        sol = solve_frac(lat_h, row)
        assert sol is not None, "K is not contained in H"
        xi = [int(c) for c in sol]
        assert all(Fraction(a) == b for a, b in zip(xi, sol))
        x.append(xi)
    d, u, v = smith_normal_form(x)
    vinv = _int_inverse(v)
    # new basis of lat_h: rows of vinv * lat_h; quotient orders = diag of d
    newbasis = mat_mul(vinv, lat_h)
    m = len(lat_h)
    orders = [d[i][i] if i < len(d) and i < len(d[0]) else 0 for i in range(m)]
    gens, q_diag = [], []
    kept = []
    for i in range(m):
        o = orders[i] if i < len(orders) else 0
        if o == 1:
            continue
        elem = D.reduce(newbasis[i])
        o_eff = o if o != 0 else D.order_of(elem)
        if o_eff == 1:
            continue
        kept.append((elem, o_eff))
    raw_orders = [o for _, o in kept]
    raw_q = [D.q_of(e) for e, _ in kept]
    kk = len(kept)
    b = [[Fraction(0)] * kk for _ in range(kk)]
    for i in range(kk):
        for j in range(i + 1, kk):
            b[i][j] = D.b_of(kept[i][0], kept[j][0])
    raw = _RawForm(raw_orders, raw_q, b)
    return raw.normalized()


def orthogonal_subgroup(D: DiscriminantForm, gens):
    """All x in D with b(x, g) = 0 for each generator g."""
    out = []
    for x in D.elements():
        if all(D.b_of(x, g) == 0 for g in gens):
            out.append(x)
    return out
