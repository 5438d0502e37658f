"""Cell equivalence and stabilizers under GL_N(Z) or SL_N(Z).

Two cells are equivalent when some unimodular gamma maps the vector set of
one onto the other up to signs (gamma^t acting on vectors).  The search is an
exhaustive backtracking over images of a spanning subset of the source cell,
pruned by an exact invariant: the pairing u^t b^-1 v over the cell's
barycenter form b = sum v v^t is preserved by any equivalence.  Pairings are
kept integral by using the adjugate of b instead of its inverse, which is
legitimate because equivalent cells share det(b).

Orientation data lives here too: each cell carries a positive basis (the
greedy rank-increasing subsequence of its rank-1 forms in the global vector
order), and stabilizer elements act on the span by signed permutations whose
determinant sign decides orientability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .forms import (Cell, UnimodularMap, canonical_vector, hat, sym_dim)

GL = "GL"
SL = "SL"


class DegenerateCellError(ValueError):
    pass


class NotAStabilizer(ValueError):
    pass


def _check_group(group):
    if group not in (GL, SL):
        raise ValueError(f"unknown group {group!r}; use 'GL' or 'SL'")
    return group


@dataclass(frozen=True)
class IsometryQuery:
    source: Cell
    target: Cell
    group: str = GL
    mode: str = "find-one"  # or "find-all"


@dataclass
class Stabilizer:
    elements: list
    order: int = field(init=False)

    def __post_init__(self):
        self.order = len(self.elements)


class CellContext:
    """Exact invariants and orientation data attached to one cell."""

    def __init__(self, cell: Cell):
        self.cell = cell
        self.n = cell.rank
        self.vectors = cell.vectors
        self.nv = len(cell.vectors)
        self.index = {v: i for i, v in enumerate(self.vectors)}
        bary = cell.barycenter()
        det_b = linalg.det_int(bary)
        if det_b == 0:
            raise DegenerateCellError("barycenter form is singular")
        adj, _ = linalg.adjugate_int(bary)
        vs = self.vectors
        n = self.n
        # integer pairing matrix v_i^t adj(b) v_j
        av = [linalg.mat_vec_int(adj, v) for v in vs]
        self.pair = [[sum(x * y for x, y in zip(vs[i], av[j])) for j in range(self.nv)]
                     for i in range(self.nv)]
        self.det_b = det_b
        diag = tuple(self.pair[i][i] for i in range(self.nv))
        self.diag = diag
        rows = sorted(tuple(sorted(abs(x) for x in row)) for row in self.pair)
        self.fingerprint = (self.nv, cell.span_rank, cell.proj_dim, det_b,
                            tuple(sorted(diag)), tuple(rows))
        self.vector_set = frozenset(vs)
        # spanning subset for backtracking, rarest pairing diagonals first
        counts = {}
        for d in diag:
            counts[d] = counts.get(d, 0) + 1
        order = sorted(range(self.nv), key=lambda i: (counts[diag[i]], diag[i], i))
        span = linalg.IncrementalSpan()
        basis = []
        for i in order:
            if span.offer(vs[i]):
                basis.append(i)
                if len(basis) == n:
                    break
        if len(basis) < n:
            raise DegenerateCellError("cell vectors do not span Q^N")
        self.basis_idx = basis
        vmat = [[vs[b][r] for b in basis] for r in range(n)]  # columns = basis vectors
        self.basis_adj, self.basis_det = linalg.adjugate_int(vmat)
        self._posbasis = None
        self._hatcoords = None

    @property
    def posbasis(self):
        """Indices of the greedy positive basis of the span of the rank-1 forms."""
        if self._posbasis is None:
            self._posbasis = linalg.greedy_independent([hat(v) for v in self.vectors])
        return self._posbasis

    @property
    def hatcoords(self):
        """Integer columns: hat(v_j) in posbasis coordinates, scaled positively."""
        if self._hatcoords is None:
            basis_hats = [hat(self.vectors[i]) for i in self.posbasis]
            cols = []
            for v in self.vectors:
                sol = linalg.solve_exact(basis_hats, hat(v))
                if sol is None:
                    raise DegenerateCellError("rank-1 form escaped the cell span")
                ints, _ = linalg.clear_denominators(sol)
                cols.append(ints)
            self._hatcoords = cols
        return self._hatcoords

    def permutation_of(self, g: UnimodularMap):
        """How g acts on the cell's vectors, or None if it does not stabilize."""
        perm = []
        for v in self.vectors:
            w = canonical_vector(g.apply_transposed(v))
            j = self.index.get(w)
            if j is None:
                return None
            perm.append(j)
        if len(set(perm)) != self.nv:
            return None
        return tuple(perm)


_context_cache = {}
_stabilizer_cache = {}


def cell_context(cell: Cell) -> CellContext:
    ctx = _context_cache.get(cell.vectors)
    if ctx is None:
        ctx = CellContext(cell)
        _context_cache[cell.vectors] = ctx
    return ctx


def clear_caches():
    _context_cache.clear()
    _stabilizer_cache.clear()


def _search(src: CellContext, tgt: CellContext, group, find_all):
    """Backtracking core; returns a list of witnesses (at most one unless find_all)."""
    if src.fingerprint != tgt.fingerprint:
        return []
    n = src.n
    basis = src.basis_idx
    ps, pt = src.pair, tgt.pair
    tvecs = tgt.vectors
    nv = tgt.nv
    cand_by_diag = {}
    for j in range(nv):
        cand_by_diag.setdefault(pt[j][j], []).append(j)
    adj, dv = src.basis_adj, src.basis_det
    src_vectors = src.vectors
    tgt_set = tgt.vector_set
    results = []
    assigned_j = []
    assigned_s = []
    used = set()

    def finish():
        # gamma^t = W * V^-1 with V^-1 = adj/dv; entries must divide exactly
        gt = []
        for r in range(n):
            row = []
            for c in range(n):
                num = 0
                for k in range(n):
                    num += assigned_s[k] * tvecs[assigned_j[k]][r] * adj[k][c]
                if num % dv:
                    return None
                row.append(num // dv)
            gt.append(tuple(row))
        d = linalg.det_int(gt)
        if d not in (1, -1):
            return None
        if group == SL and d != 1:
            return None
        # full set match
        for v in src_vectors:
            w = tuple(sum(gt[k][i] * v[i] for i in range(n)) for k in range(n))
            if canonical_vector(w) not in tgt_set:
                return None
        return UnimodularMap(tuple(zip(*gt)))

    def extend(level):
        if level == n:
            g = finish()
            if g is not None:
                results.append(g)
                return not find_all
            return False
        b = basis[level]
        prev = [(basis[m], assigned_j[m], assigned_s[m]) for m in range(level)]
        for j in cand_by_diag.get(ps[b][b], ()):
            if j in used:
                continue
            ptj = pt[j]
            for sign in (1, -1):
                ok = True
                for bm, jm, sm in prev:
                    if sign * sm * ptj[jm] != ps[b][bm]:
                        ok = False
                        break
                if ok:
                    assigned_j.append(j)
                    assigned_s.append(sign)
                    used.add(j)
                    stop = extend(level + 1)
                    assigned_j.pop()
                    assigned_s.pop()
                    used.discard(j)
                    if stop:
                        return True
        return False

    extend(0)
    return results


def equivalence(source: Cell, target: Cell, group=GL):
    """A witness gamma with source . gamma = target, or None.

    In SL mode only determinant +1 witnesses count; for odd rank a
    determinant -1 witness can always be fixed up by negation, which acts
    trivially on cells.
    """
    _check_group(group)
    src = cell_context(source)
    tgt = cell_context(target)
    if group == SL and src.n % 2 == 1:
        found = _search(src, tgt, GL, find_all=False)
        if not found:
            return None
        g = found[0]
        return g if g.det == 1 else g.negated()
    found = _search(src, tgt, group, find_all=False)
    return found[0] if found else None


def all_equivalences(source: Cell, target: Cell, group=GL):
    """Every witness mapping source onto target (the full coset)."""
    _check_group(group)
    return _search(cell_context(source), cell_context(target), group, find_all=True)


def find_equivalence(query: IsometryQuery):
    """Spec-facing entry point; returns one witness, all witnesses, or None/[]."""
    if query.mode == "find-all":
        return all_equivalences(query.source, query.target, query.group)
    return equivalence(query.source, query.target, query.group)


def stabilizer(c: Cell, group=GL) -> Stabilizer:
    """The full finite group {gamma : c . gamma = c}, SL mode keeps det +1."""
    _check_group(group)
    key = (c.vectors, group)
    cached = _stabilizer_cache.get(key)
    if cached is not None:
        return cached
    if group == SL:
        full = stabilizer(c, GL)
        elements = [g for g in full.elements if g.det == 1]
        result = Stabilizer(elements)
    else:
        ctx = cell_context(c)
        result = Stabilizer(_search(ctx, ctx, GL, find_all=True))
    _stabilizer_cache[key] = result
    return result


def orientation_sign(g: UnimodularMap, c: Cell) -> int:
    """Determinant sign of the action of g on the real span of the cell's rank-1 forms."""
    ctx = cell_context(c)
    perm = ctx.permutation_of(g)
    if perm is None:
        raise NotAStabilizer("map does not stabilize the cell")
    return _orientation_sign_perm(ctx, perm, g.det)


def _orientation_sign_perm(ctx: CellContext, perm, det_g):
    n = ctx.n
    if ctx.cell.proj_dim + 1 == sym_dim(n):
        # full span: S -> g^t S g has determinant det(g)^(n+1)
        return 1 if det_g == 1 or (n + 1) % 2 == 0 else -1
    cols = [ctx.hatcoords[perm[b]] for b in ctx.posbasis]
    return linalg.det_sign_int(list(zip(*cols)))


def is_orientable(c: Cell, group=GL) -> bool:
    """True iff no stabilizer element reverses the orientation of the span."""
    stab = stabilizer(c, group)
    ctx = cell_context(c)
    seen = set()
    for g in stab.elements:
        perm = ctx.permutation_of(g)
        if perm is None:
            raise NotAStabilizer("stabilizer element fails to stabilize")
        if perm in seen:
            continue
        seen.add(perm)
        if _orientation_sign_perm(ctx, perm, g.det) < 0:
            return False
    return True
