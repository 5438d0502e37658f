"""Exact linear algebra over integers and rationals.

Everything here is small and dense (dimensions at most a few dozen), so the
implementations favour exactness and predictability over asymptotics.
Integer routines use fraction-free (Bareiss) elimination; rational ones use
plain Gaussian elimination over fractions.Fraction.
"""

from fractions import Fraction
from math import gcd


def int_rank(rows):
    """Rank over Q of a matrix given as an iterable of integer rows."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            row = m[r]
            lead = m[rank]
            for c in range(col, ncols):
                row[c] = (p * row[c] - f * lead[c]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def det_sign_int(rows):
    """Sign of the determinant of a square integer matrix (-1, 0 or +1)."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col]
            row = m[r]
            lead = m[col]
            for c in range(col, n):
                row[c] = (p * row[c] - f * lead[c]) // prev
        prev = p
    # Bareiss leaves det (up to the swap sign) in the last pivot.
    return -sign if m[n - 1][n - 1] < 0 else sign


def det_int(rows):
    """Determinant of a square integer matrix, exactly."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        p = m[col][col]
        for r in range(col + 1, n):
            f = m[r][col]
            row = m[r]
            lead = m[col]
            for c in range(col, n):
                row[c] = (p * row[c] - f * lead[c]) // prev
        prev = p
    return sign * m[n - 1][n - 1]


def frac_rank(rows):
    """Rank of a matrix with Fraction (or int) entries."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                fr = f / p
                row = m[r]
                lead = m[rank]
                for c in range(col, ncols):
                    row[c] -= fr * lead[c]
        rank += 1
        if rank == nrows:
            break
    return rank


def frac_inverse(rows):
    """Inverse of a square matrix over Fraction; raises ValueError if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def solve_exact(a_columns, b):
    """Solve sum_i x_i * a_columns[i] = b exactly.

    The columns must be linearly independent.  Returns a tuple of Fractions,
    or None if b is outside the span.
    """
    ncols = len(a_columns)
    nrows = len(b)
    m = [[Fraction(a_columns[j][i]) for j in range(ncols)] + [Fraction(b[i])]
         for i in range(nrows)]
    piv_rows = []
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            raise ValueError("columns are linearly dependent")
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(nrows):
            if r != rank and m[r][col]:
                f = m[r][col] / p
                m[r] = [a - f * b_ for a, b_ in zip(m[r], m[rank])]
        piv_rows.append(rank)
        rank += 1
    for r in range(rank, nrows):
        if m[r][ncols]:
            return None
    return tuple(m[piv_rows[c]][ncols] / m[piv_rows[c]][c] for c in range(ncols))


def mat_mul_int(a, b):
    """Product of two integer matrices (tuples of tuples)."""
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                 for row in a)


def mat_vec_int(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a))


def identity_int(n):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def adjugate_int(m):
    """Adjugate of a square integer matrix: adj(m) = det(m) * m^-1, integral."""
    n = len(m)
    d = det_int(m)
    if d == 0:
        raise ValueError("adjugate of a singular matrix is not supported here")
    inv = frac_inverse(m)
    adj = tuple(tuple(int(x * d) for x in row) for row in inv)
    return adj, d


def integer_inverse_unimodular(m):
    """Inverse of an integer matrix with determinant +-1, exactly integral."""
    adj, d = adjugate_int(m)
    if d == 1:
        return adj
    if d == -1:
        return tuple(tuple(-x for x in row) for row in adj)
    raise ValueError("matrix is not unimodular")


def vec_gcd(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries (zero stays zero)."""
    g = vec_gcd(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def clear_denominators(fracs):
    """Scale a sequence of Fractions by the positive lcm of denominators.

    Returns (integer tuple, scale) with scale > 0 such that int[i] = scale * fracs[i].
    """
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    return tuple(int(f * den) for f in fracs), den


class IncrementalSpan:
    """Greedy rank-increasing selection from a stream of integer vectors.

    Feeding vectors one at a time, `offer` returns True when the vector
    enlarges the span of everything accepted so far.  Reduced rows are kept
    primitive to control coefficient growth.
    """

    def __init__(self):
        self.pivots = []  # list of (pivot_col, reduced_row)

    def offer(self, v):
        row = list(v)
        for col, red in self.pivots:
            if row[col]:
                a, b = red[col], row[col]
                row = [a * x - b * y for x, y in zip(row, red)]
        for col, x in enumerate(row):
            if x:
                self.pivots.append((col, list(primitive_vector(row))))
                return True
        return False

    @property
    def rank(self):
        return len(self.pivots)


def greedy_independent(vectors):
    """Indices of the greedy maximal independent subsequence, in given order."""
    span = IncrementalSpan()
    out = []
    for i, v in enumerate(vectors):
        if span.offer(v):
            out.append(i)
    return out
