"""Enumeration of short vectors of positive definite quadratic forms.

Exact rational arithmetic throughout.  `short_vectors` is a Fincke-Pohst
style recursive search on the Cholesky decomposition; `short_vectors_naive`
scans a provably sufficient coordinate box and serves as an oracle in tests.

Vectors are coordinate tuples with respect to the lattice basis.  A coset
offset (rational coordinates) shifts the search to `Z^n + offset`.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _cholesky(gram):
    """Return q with norm(y) = sum_i q[i][i]*(y_i + sum_{j>i} q[i][j]*y_j)^2."""
    n = len(gram)
    q = [[Fraction(x) for x in row] for row in gram]
    for i in range(n):
        if q[i][i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    return q


def short_vectors(gram, max_norm, offset=None, norm_exact=None):
    """All x in Z^n + offset with 0 < (x)gram(x)^t <= max_norm.

    With offset=None the zero vector is omitted and both signs of each
    vector are returned.  With norm_exact set, only vectors of exactly that
    norm are kept.  Returns a sorted list of tuples (ints when offset is
    None or integral, Fractions otherwise).
    """
    n = len(gram)
    if n == 0:
        return []
    max_norm = Fraction(max_norm)
    if max_norm < 0:
        return []
    q = _cholesky(gram)
    if offset is None:
        off = [Fraction(0)] * n
    else:
        off = [Fraction(c) for c in offset]
    results = []
    y = [Fraction(0)] * n

    def recurse(i, rem):
        # rem = remaining norm budget for levels 0..i
        if i < 0:
            results.append(tuple(y))
            return
        qii = q[i][i]
        t = sum(q[i][j] * y[j] for j in range(i + 1, n))
        # integers x with qii*(x + off[i] + t)^2 <= rem
        center = -(off[i] + t)
        bound = rem / qii
        fb = math.sqrt(float(bound)) if bound > 0 else 0.0
        fc = float(center)
        lo = math.floor(fc - fb) - 2
        hi = math.ceil(fc + fb) + 2
        for x in range(lo, hi + 1):
            yi = x + off[i]
            d = qii * (yi + t) ** 2
            if d > rem:
                continue
            y[i] = yi
            recurse(i - 1, rem - d)
        y[i] = Fraction(0)

    recurse(n - 1, max_norm)

    def norm_of(v):
        return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))

    out = []
    for v in results:
        nv = norm_of(v)
        if nv == 0 and offset is None:
            continue
        if norm_exact is not None and nv != Fraction(norm_exact):
            continue
        if nv > max_norm:
            continue
        w = tuple(int(c) if c.denominator == 1 else c for c in v)
        out.append(w)
    out.sort(key=lambda v: tuple(Fraction(c) for c in v))
    return out


def short_vectors_naive(gram, max_norm, offset=None, norm_exact=None):
    """Oracle: scan the full coordinate box |x_i + off_i| <= sqrt(N*(G^-1)_ii)."""
    from .exactlinalg import mat_inverse

    n = len(gram)
    if n == 0:
        return []
    max_norm = Fraction(max_norm)
    inv = mat_inverse(gram)
    off = [Fraction(0)] * n if offset is None else [Fraction(c) for c in offset]
    bounds = []
    for i in range(n):
        b = inv[i][i] * max_norm
        fb = math.sqrt(float(b)) if b > 0 else 0.0
        bounds.append(int(math.ceil(fb)) + 1)
    out = []

    def norm_of(v):
        return sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))

    def rec(i, acc):
        if i == n:
            v = tuple(acc)
            nv = norm_of(v)
            if nv > max_norm or (nv == 0 and offset is None):
                return
            if norm_exact is not None and nv != Fraction(norm_exact):
                return
            out.append(tuple(int(c) if c.denominator == 1 else c for c in v))
            return
        for x in range(-bounds[i] - 1, bounds[i] + 2):
            rec(i + 1, acc + [x + off[i]])

    rec(0, [])
    out.sort(key=lambda v: tuple(Fraction(c) for c in v))
    return out
