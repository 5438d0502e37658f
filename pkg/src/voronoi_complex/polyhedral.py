"""Exact facet enumeration for pointed rational cones.

The cones here are spanned by flattened rank-1 forms v v^t.  Facets are found
by the incremental double description method run in the dual: constraints
<y, g_i> >= 0 are inserted in the fixed generator order, and the surviving
extreme rays of the dual cone are exactly the facet normals.  Everything is
integer arithmetic; rays are kept primitive and zero-sets are bitmasks.

Lower-dimensional cells live in proper subspaces, so the computation happens
inside the linear span of the generators, with a greedy basis chosen in
generator order; normals are lifted back to the ambient space afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .forms import Cell, hat


class ConeError(ValueError):
    pass


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    generators: tuple  # tuple of integer tuples

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise ConeError("generator does not match ambient dimension")
            if not any(g):
                raise ConeError("zero generator")
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class Facet:
    normal: tuple   # primitive integer vector, nonnegative on all generators
    on_set: tuple   # sorted indices of generators with zero pairing


def cone_of_cell(cell: Cell) -> Cone:
    from .forms import sym_dim
    return Cone(sym_dim(cell.rank), tuple(hat(v) for v in cell.vectors))


def _span_coordinates(generators):
    """Pick a greedy basis among the generators; return (basis indices, coords).

    coords[i] is an integer coordinate vector for generators[i] in that basis,
    scaled by a positive factor (harmless for cone geometry).
    """
    basis_idx = linalg.greedy_independent(generators)
    basis = [generators[i] for i in basis_idx]
    coords = []
    for g in generators:
        sol = linalg.solve_exact(basis, g)
        if sol is None:
            raise ConeError("generator escaped its own span")
        ints, _ = linalg.clear_denominators(list(sol))
        coords.append(ints)
    return basis_idx, coords


def _dual_extreme_rays(constraints, dim):
    """Extreme rays of {y : <y, a> >= 0 for a in constraints}, full-dim input.

    Returns a list of (ray, zero_mask) with primitive integer rays and
    bitmasks of the constraints met with equality.  Raises ConeError if a
    lineality direction survives (the dual is not pointed).
    """
    lineality = [list(row) for row in linalg.identity_int(dim)]
    rays = []  # list of [vector, zero_mask]
    seen_mask = 0
    for k, a in enumerate(constraints):
        bit = 1 << k
        if lineality:
            pivot = None
            for idx, l in enumerate(lineality):
                s = sum(x * y for x, y in zip(a, l))
                if s:
                    pivot = (idx, s)
                    break
            if pivot is not None:
                idx, s0 = pivot
                l0 = lineality.pop(idx)
                if s0 < 0:
                    l0 = [-x for x in l0]
                    s0 = -s0
                new_lin = []
                for l in lineality:
                    s = sum(x * y for x, y in zip(a, l))
                    if s:
                        l = [s0 * x - s * y for x, y in zip(l, l0)]
                    new_lin.append(list(linalg.primitive_vector(l)))
                lineality = new_lin
                adjusted = []
                for vec, mask in rays:
                    s = sum(x * y for x, y in zip(a, vec))
                    if s:
                        vec = [s0 * x - s * y for x, y in zip(vec, l0)]
                        vec = list(linalg.primitive_vector(vec))
                    adjusted.append([vec, mask | bit])
                rays = adjusted
                rays.append([l0, seen_mask])
                seen_mask |= bit
                continue
        pos, zero, neg = [], [], []
        for vec, mask in rays:
            s = sum(x * y for x, y in zip(a, vec))
            if s > 0:
                pos.append([vec, mask, s])
            elif s == 0:
                zero.append([vec, mask | bit])
            else:
                neg.append([vec, mask, s])
        new_rays = [[vec, mask] for vec, mask, _ in pos] + zero
        for pvec, pmask, ps in pos:
            for nvec, nmask, ns in neg:
                common = pmask & nmask
                # adjacency: no third ray is tight on every common constraint
                adjacent = True
                for ovec, omask, _ in pos:
                    if ovec is not pvec and common & omask == common:
                        adjacent = False
                        break
                if adjacent:
                    for ovec, omask, _ in neg:
                        if ovec is not nvec and common & omask == common:
                            adjacent = False
                            break
                if adjacent:
                    for ovec, omask in zero:
                        if common & omask == common:
                            adjacent = False
                            break
                if not adjacent:
                    continue
                comb = [ps * nx - ns * px for px, nx in zip(pvec, nvec)]
                comb = list(linalg.primitive_vector(comb))
                new_rays.append([comb, common | bit])
        rays = new_rays
        seen_mask |= bit
    if lineality:
        raise ConeError("constraints do not span: dual cone has lineality")
    return [(tuple(vec), mask) for vec, mask in rays]


def cone_facets(cone: Cone):
    """Complete duplicate-free facet list of a pointed cone, inside its span."""
    gens = cone.generators
    basis_idx, coords = _span_coordinates(gens)
    r = len(basis_idx)
    if r == 1:
        # a single ray has no proper faces
        return []
    dual_rays = _dual_extreme_rays(coords, r)
    uniq = {}
    for y, mask in dual_rays:
        uniq.setdefault(y, mask)
    dual_rays = sorted(uniq.items())
    if linalg.int_rank([vec for vec, _ in dual_rays]) < r:
        raise ConeError("cone is not pointed (line detected)")
    basis = [gens[i] for i in basis_idx]
    gram = [[sum(x * y for x, y in zip(basis[i], basis[j])) for j in range(r)]
            for i in range(r)]
    gram_inv = linalg.frac_inverse(gram)
    facets = []
    for y, mask in dual_rays:
        on = tuple(i for i in range(len(gens)) if not (
            sum(p * q for p, q in zip(y, coords[i]))))
        if linalg.int_rank([gens[i] for i in on]) != r - 1:
            raise ConeError("dual ray does not cut a facet")
        # ambient normal n = B (B^t B)^{-1} y reproduces <y, coords(g)> on the span
        w = [sum(gram_inv[i][j] * y[j] for j in range(r)) for i in range(r)]
        amb = [Fraction(0)] * cone.ambient_dim
        for i in range(r):
            if w[i]:
                for c in range(cone.ambient_dim):
                    amb[c] += w[i] * basis[i][c]
        ints, _ = linalg.clear_denominators(amb)
        facets.append(Facet(tuple(linalg.primitive_vector(ints)), on))
    facets.sort(key=lambda f: f.on_set)
    for f in facets:
        for i, g in enumerate(gens):
            pairing = sum(x * y for x, y in zip(f.normal, g))
            if pairing < 0 or (pairing == 0) != (i in f.on_set):
                raise ConeError("facet normal fails the duality check")
    return facets


def cell_facets(cell: Cell):
    """Facets of the cone spanned by the cell's rank-1 forms."""
    return cone_facets(cone_of_cell(cell))


def face_from_facet(cell: Cell, facet: Facet) -> Cell:
    """The sub-cell of vectors whose rank-1 forms lie on the facet hyperplane."""
    if len(facet.on_set) >= len(cell):
        raise ConeError("facet is not proper")
    on = set(facet.on_set)
    for i, v in enumerate(cell.vectors):
        pairing = sum(x * y for x, y in zip(facet.normal, hat(v)))
        if (pairing == 0) != (i in on) or pairing < 0:
            raise ConeError("facet is not incident to the cell")
    return cell.subcell(facet.on_set)
