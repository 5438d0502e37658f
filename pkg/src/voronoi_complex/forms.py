"""Quadratic forms, lattice vectors and cells, in exact arithmetic.

A form is a symmetric matrix of rationals; a lattice vector is a primitive
integer vector stored with a canonical sign (first nonzero coordinate
positive), so each +-pair of minimal vectors has one representative.  A cell
is a finite sorted set of such vectors; it stands for the convex hull of the
rank-1 forms v v^t in the projectivized cone of positive forms.

Minimal vectors are enumerated by a recursive ellipsoid (Fincke-Pohst style)
search driven by an exact rational Cholesky decomposition.  All bounds are
certified with integer arithmetic; floating point never decides anything.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from . import linalg, ordering


class NotPositiveDefinite(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


def canonical_vector(v):
    """Flip the sign so that the first nonzero coordinate is positive."""
    for x in v:
        if x > 0:
            return tuple(v)
        if x < 0:
            return tuple(-y for y in v)
    raise ValueError("zero vector has no canonical representative")


def hat(v):
    """Flatten v v^t: diagonal entries first-come in row order, each off-diagonal once."""
    n = len(v)
    out = []
    for i in range(n):
        for j in range(i, n):
            out.append(v[i] * v[j])
    return tuple(out)


def sym_dim(n):
    return n * (n + 1) // 2


def top_dimension(n):
    """Dimension of the projectivized cone of positive forms: n(n+1)/2 - 1."""
    return sym_dim(n) - 1


def unflatten_direction(flat, n):
    """Integer quadratic form q with q(x) = 2 * <flat, hat(x)>.

    Doubling keeps the matrix integral (off-diagonal pairing entries split
    across two symmetric positions); only the ray through q matters.
    """
    m = [[0] * n for _ in range(n)]
    k = 0
    for i in range(n):
        for j in range(i, n):
            if i == j:
                m[i][i] = 2 * flat[k]
            else:
                m[i][j] = flat[k]
                m[j][i] = flat[k]
            k += 1
    return tuple(tuple(row) for row in m)


@dataclass(frozen=True)
class QuadraticForm:
    """Symmetric N x N matrix of exact rationals."""

    entries: tuple

    def __post_init__(self):
        n = len(self.entries)
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.entries)
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch("matrix is not square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "entries", rows)

    @property
    def rank(self):
        return len(self.entries)

    def __call__(self, v):
        """Evaluate the form at an integer vector."""
        n = self.rank
        if len(v) != n:
            raise DimensionMismatch("vector length does not match form rank")
        total = Fraction(0)
        for i in range(n):
            row = self.entries[i]
            s = Fraction(0)
            for j in range(n):
                s += row[j] * v[j]
            total += v[i] * s
        return total

    def is_positive_definite(self):
        """Exact test: all leading principal minors positive."""
        n = self.rank
        m = [[Fraction(x) for x in row] for row in self.entries]
        for k in range(n):
            p = m[k][k]
            if p <= 0:
                return False
            for i in range(k + 1, n):
                f = m[i][k] / p
                if f:
                    for j in range(k, n):
                        m[i][j] -= f * m[k][j]
        return True

    def integerized(self):
        """Return (M, scale) with M integral, gcd 1, and self = scale * M."""
        den = 1
        for row in self.entries:
            for x in row:
                den = den * x.denominator // gcd(den, x.denominator)
        ints = [[int(x * den) for x in row] for row in self.entries]
        g = 0
        for row in ints:
            for x in row:
                g = gcd(g, abs(x))
        if g > 1:
            ints = [[x // g for x in row] for row in ints]
        scale = Fraction(g, den)
        return tuple(tuple(row) for row in ints), scale

    def scaled(self, factor):
        factor = Fraction(factor)
        return QuadraticForm(tuple(tuple(x * factor for x in row)
                                   for row in self.entries))

    def to_record(self):
        m, scale = self.integerized()
        return {"rank": self.rank,
                "matrix": [list(row) for row in m],
                "scale": f"{scale.numerator}/{scale.denominator}"}

    @classmethod
    def from_record(cls, rec):
        num, den = rec["scale"].split("/")
        scale = Fraction(int(num), int(den))
        entries = tuple(tuple(Fraction(x) * scale for x in row)
                        for row in rec["matrix"])
        form = cls(entries)
        if form.rank != rec["rank"]:
            raise ValueError("rank field disagrees with matrix size")
        return form


@dataclass(frozen=True)
class UnimodularMap:
    """Integer N x N matrix with determinant +-1."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", rows)
        d = linalg.det_int(rows)
        if d not in (1, -1):
            raise ValueError(f"matrix has determinant {d}, not +-1")
        object.__setattr__(self, "det", d)

    @property
    def rank(self):
        return len(self.matrix)

    def inverse(self):
        return UnimodularMap(linalg.integer_inverse_unimodular(self.matrix))

    def compose(self, other):
        """self followed by other under the right action: h.(self@other)."""
        return UnimodularMap(linalg.mat_mul_int(self.matrix, other.matrix))

    def negated(self):
        return UnimodularMap(tuple(tuple(-x for x in row) for row in self.matrix))

    def apply_transposed(self, v):
        """gamma^t v, the action induced on minimal vectors."""
        m = self.matrix
        n = len(m)
        return tuple(sum(m[i][k] * v[i] for i in range(n)) for k in range(n))


def identity_map(n):
    return UnimodularMap(linalg.identity_int(n))


class Cell:
    """A finite set of canonical primitive lattice vectors, sorted in the global order."""

    __slots__ = ("vectors", "_span_rank", "_proj_dim")

    def __init__(self, vectors):
        vs = {canonical_vector(v) for v in vectors}
        if not vs:
            raise ValueError("a cell needs at least one vector")
        for v in vs:
            if linalg.vec_gcd(v) != 1:
                raise ValueError(f"cell vector {v} is not primitive")
        self.vectors = ordering.sort_vectors(vs)
        self._span_rank = None
        self._proj_dim = None

    @property
    def rank(self):
        return len(self.vectors[0])

    def __len__(self):
        return len(self.vectors)

    def __eq__(self, other):
        return isinstance(other, Cell) and self.vectors == other.vectors

    def __hash__(self):
        return hash(self.vectors)

    def __repr__(self):
        return f"Cell({list(self.vectors)!r})"

    def key(self):
        return self.vectors

    @property
    def span_rank(self):
        """Rank of the vector set in Q^N."""
        if self._span_rank is None:
            self._span_rank = linalg.int_rank(self.vectors)
        return self._span_rank

    @property
    def proj_dim(self):
        """Rank of {v v^t} minus one: the dimension as a projective cell."""
        if self._proj_dim is None:
            self._proj_dim = linalg.int_rank([hat(v) for v in self.vectors]) - 1
        return self._proj_dim

    def hats(self):
        return [hat(v) for v in self.vectors]

    def barycenter(self):
        """Sum of v v^t over the cell, as an integer symmetric matrix."""
        n = self.rank
        b = [[0] * n for _ in range(n)]
        for v in self.vectors:
            for i in range(n):
                for j in range(n):
                    b[i][j] += v[i] * v[j]
        return tuple(tuple(row) for row in b)

    def transform(self, g: UnimodularMap):
        """The cell {canonical(g^t v)}; the action of g on cells."""
        return Cell([g.apply_transposed(v) for v in self.vectors])

    def subcell(self, indices):
        return Cell([self.vectors[i] for i in indices])


def act_on_form(h: QuadraticForm, g: UnimodularMap) -> QuadraticForm:
    """The right action g^t h g on forms."""
    if h.rank != g.rank:
        raise DimensionMismatch("form and map have different ranks")
    m = g.matrix
    n = h.rank
    # g^t h
    left = [[sum(m[k][i] * h.entries[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]
    out = [[sum(left[i][k] * m[k][j] for k in range(n)) for j in range(n)]
           for i in range(n)]
    return QuadraticForm(tuple(tuple(row) for row in out))


def _rational_cholesky(m):
    """Decompose an integer PD matrix: q(x) = sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    d = [None] * n
    u = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if a[i][i] <= 0:
            raise NotPositiveDefinite("form is not positive definite")
        d[i] = a[i][i]
        for j in range(i + 1, n):
            u[i][j] = a[i][j] / d[i]
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= d[i] * u[i][k] * u[i][l]
                a[l][k] = a[k][l]
    return d, u


def _floor_center_plus_sqrt(c: Fraction, t: Fraction):
    """floor(-c + sqrt(t)) for rationals, t >= 0, via exact integer tests."""
    p, q = (-c).numerator, (-c).denominator
    a, b = t.numerator, t.denominator
    # start near the answer using integer sqrt, then correct exactly
    k = p // q + isqrt(a // b) if a >= b else p // q
    def ok(x):
        # x <= -c + sqrt(t)  <=>  x*q - p <= q*sqrt(a/b)
        lhs = x * q - p
        if lhs <= 0:
            return True
        return lhs * lhs * b <= a * q * q
    while ok(k + 1):
        k += 1
    while not ok(k):
        k -= 1
    return k


def enumerate_upto(m, bound):
    """All nonzero integer vectors v with m(v) <= bound, for integral PD m.

    Returns a list of (vector, value) pairs covering both signs of every
    vector; completeness follows from the exact recursive ellipsoid bounds.
    """
    n = len(m)
    bound = Fraction(bound)
    if bound < 0:
        return []
    d, u = _rational_cholesky(m)
    out = []
    x = [0] * n

    def descend(i, t):
        # t = remaining budget for levels 0..i
        c = Fraction(0)
        ui = u[i]
        for j in range(i + 1, n):
            if x[j]:
                c += ui[j] * x[j]
        di = d[i]
        hi = _floor_center_plus_sqrt(c, t / di)
        lo = -_floor_center_plus_sqrt(-c, t / di)
        for xi in range(lo, hi + 1):
            x[i] = xi
            w = di * (xi + c) * (xi + c)
            if w > t:
                continue
            if i == 0:
                if any(x):
                    out.append((tuple(x), bound - (t - w)))
            else:
                descend(i - 1, t - w)
        x[i] = 0

    descend(n - 1, bound)
    return out


def minimal_vectors(h: QuadraticForm):
    """Exact minimum of a PD form over Z^N - {0} and the cell attaining it."""
    m, scale = h.integerized()
    if scale <= 0 or not h.is_positive_definite():
        raise NotPositiveDefinite("minimal vectors require a positive definite form")
    start = min(m[i][i] for i in range(len(m)))
    hits = enumerate_upto(m, start)
    best = min(val for _, val in hits)
    vecs = {canonical_vector(v) for v, val in hits if val == best}
    return best * scale, Cell(vecs)


def is_perfect(h: QuadraticForm) -> bool:
    """True iff the rank-1 forms over the minimal vectors span all symmetric matrices."""
    _, cell = minimal_vectors(h)
    return cell.proj_dim + 1 == sym_dim(h.rank)


def cell_dimension(c: Cell) -> int:
    """Projective dimension of a cell (rank of its rank-1 forms, minus one)."""
    if len(c) == 0:
        raise ValueError("empty cell")
    return c.proj_dim


def meets_interior(c: Cell) -> bool:
    """True iff the cell's vectors span Q^N, i.e. it contains a definite form."""
    return c.span_rank == c.rank


def root_lattice_form(n):
    """The tridiagonal 2/-1 Gram matrix: the classical perfect seed form."""
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = -1
            m[i + 1][i] = -1
    return QuadraticForm(tuple(tuple(Fraction(x) for x in row) for row in m))


def dump_forms_jsonl(forms, path):
    with open(path, "w", encoding="utf-8") as f:
        for h in forms:
            f.write(json.dumps(h.to_record(), sort_keys=True,
                               separators=(",", ":")) + "\n")


def load_forms_jsonl(path):
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                out.append(QuadraticForm.from_record(json.loads(line)))
    return out
