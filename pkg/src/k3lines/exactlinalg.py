"""Exact linear algebra over the integers and rationals.

All matrices are lists of lists (rows) of python ints or fractions.Fraction;
all algorithms are exact (no floating point).  Sizes in this project are tiny
(rank <= 24), so simplicity beats asymptotics: Bareiss for determinants,
textbook row reduction for Smith/Hermite forms.
"""

from __future__ import annotations

from fractions import Fraction


def mat_copy(a):
    return [list(row) for row in a]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v, a):
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    return all(all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def det(a):
    """Exact determinant via fraction-free Bareiss (integer input) or
    fraction Gaussian elimination (rational input)."""
    n = len(a)
    if n == 0:
        return 1
    if any(isinstance(x, Fraction) for row in a for x in row):
        return _det_frac(a)
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_frac(a):
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for k in range(n):
        piv = None
        for i in range(k, n):
            if m[i][k] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        result *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            c = m[i][k] * inv
            if c:
                for j in range(k, n):
                    m[i][j] -= c * m[k][j]
    return sign * result


def mat_inverse(a):
    """Inverse of a square nonsingular matrix, entries Fraction."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k]:
                c = m[i][k]
                m[i] = [x - c * y for x, y in zip(m[i], m[k])]
    return [row[n:] for row in m]


def rank(a):
    if not a or not a[0]:
        return 0
    m = [[Fraction(x) for x in row] for row in a]
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                coef = m[i][c]
                m[i] = [x - coef * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def smith_normal_form(a):
    """Smith normal form with transforms.

    Returns (d, u, v) with u*a*v = d, u and v unimodular, d diagonal with
    d[i][i] | d[i+1][i+1].
    """
    m = mat_copy(a)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row_i += c*row_j
        m[i] = [x + c * y for x, y in zip(m[i], m[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]

    def add_col(i, j, c):  # col_i += c*col_j
        for row in m:
            row[i] += c * row[j]
        for row in v:
            row[i] += c * row[j]

    def neg_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        # find a pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0:
                    if piv is None or abs(m[i][j]) < abs(m[piv[0]][piv[1]]):
                        piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(i, t, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(j, t, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # divisibility fix-up: pivot must divide the rest of the block
        bad = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if m[i][j] % m[t][t] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if m[t][t] < 0:
            neg_row(t)
        t += 1
    return m, u, v


def hnf_rows(a):
    """Row-style Hermite normal form of the row span of a (integer matrix).

    Returns the list of nonzero rows; pivots positive, entries above a pivot
    reduced modulo it.  The row span equals that of a.
    """
    m = [list(row) for row in a if any(row)]
    if not m:
        return []
    cols = len(m[0])
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        # gcd-reduce the column below the pivot
        again = True
        while again:
            again = False
            for i in range(r + 1, len(m)):
                if m[i][c] != 0:
                    if abs(m[i][c]) < abs(m[r][c]):
                        m[r], m[i] = m[i], m[r]
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        again = True
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        for i in range(r):
            q = m[i][c] // m[r][c]
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        r += 1
    return [row for row in m[:r] if any(row)]


def kernel_int(a):
    """Basis of the integer kernel {x : x*a = 0} (row vectors), saturated.

    Uses the SNF transform: rows of u with index >= rank of a.
    """
    if not a:
        return []
    d, u, _v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    return [u[i] for i in range(r, len(u))]


def solve_frac(a, b):
    """Solve x*a = b exactly over the rationals (x a row vector), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    # solve a^T x^T = b^T by elimination
    m = [[Fraction(a[i][j]) for i in range(rows)] + [Fraction(b[j])]
         for j in range(cols)]
    piv_cols = []
    r = 0
    for c in range(rows):
        piv = next((i for i in range(r, cols) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(cols):
            if i != r and m[i][c]:
                coef = m[i][c]
                m[i] = [x - coef * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    x = [Fraction(0)] * rows
    for i, c in enumerate(piv_cols):
        x[c] = m[i][-1]
    for i in range(r, cols):
        if m[i][-1] != 0:
            return None
    return x


def lcm_list(xs):
    from math import lcm

    out = 1
    for x in xs:
        out = lcm(out, x)
    return out
