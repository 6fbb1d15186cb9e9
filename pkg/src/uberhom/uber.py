"""Homology graded by vertex two-colourings of a simplicial complex.

A colouring assigns each vertex 0 or 1.  Three constructions live here:

* per-colouring *horizontal homology* over GF(2): the simplicial boundary
  restricted to deleting 1-coloured vertices, graded by dimension and by
  the count of 0-coloured vertices in a simplex (its weight);
* the full poset complex over GF(2): all horizontal homologies assembled
  over the Boolean lattice of colourings, giving a triply graded
  invariant (level, weight, dimension);
* the weight-zero slice rebuilt *independently* over any coefficient
  ring: a cube with the homology of the subcomplex spanned by the
  1-coloured vertices at each node and inclusion-induced maps on the
  edges.  Its degree-zero row (components only) also works over the
  integers, where torsion can appear.

The two GF(2) routes deliberately share no code, so they can be played
against each other in tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import algebra, complexes, graphs
from .algebra import (
    AbelianGroupPresentation,
    ChainComplex,
    CoefficientRing,
    GF2,
    HomologyBasis,
    Matrix,
    QQ,
    ZZ,
    column_rank,
    smith_normal_form,
    vector_ops,
)
from .complexes import SimplicialComplex, Simplex
from .errors import SizeGuardExceeded

Bicolouring = tuple[int, ...]

__all__ = [
    "Bicolouring",
    "SignAssignment",
    "STANDARD_SIGNS",
    "ALTERNATE_SIGNS",
    "verify_sign_assignment",
    "weight",
    "colouring_level",
    "all_colourings",
    "HorizontalHomology",
    "horizontal_homology",
    "UberComplex",
    "uber_complex",
    "uberhomology",
    "zero_degree_uber",
    "zero_degree_uber_table",
    "bold_homology",
    "euler_characteristic_bold",
]


# --------------------------------------------------------------------------
# Colourings


def _to_mask(colouring: Sequence[int]) -> int:
    mask = 0
    for v, bit in enumerate(colouring):
        if bit not in (0, 1):
            raise ValueError("colourings are 0/1 valued")
        mask |= bit << v
    return mask


def _to_tuple(mask: int, m: int) -> Bicolouring:
    return tuple(mask >> v & 1 for v in range(m))


def weight(simplex: Iterable[int], colouring: Sequence[int]) -> int:
    """The number of 0-coloured vertices of a simplex."""
    return sum(1 for v in simplex if colouring[v] == 0)


def colouring_level(colouring: Sequence[int]) -> int:
    """The number of 1-coloured vertices."""
    return sum(colouring)


def all_colourings(m: int) -> list[Bicolouring]:
    return [_to_tuple(mask, m) for mask in range(1 << m)]


@dataclass(frozen=True)
class SignAssignment:
    """Signs for the edges of the Boolean lattice of colourings.

    ``rule(mask, v)`` is the sign of the edge raising vertex ``v`` of the
    colouring ``mask`` from 0 to 1.  Adjacent squares must anticommute;
    any two such assignments give isomorphic cube homology.
    """

    name: str
    rule: Callable[[int, int], int]

    def __call__(self, mask: int, v: int) -> int:
        return self.rule(mask, v)


STANDARD_SIGNS = SignAssignment(
    "ones-below", lambda mask, v: -1 if (mask & ((1 << v) - 1)).bit_count() % 2 else 1
)
ALTERNATE_SIGNS = SignAssignment(
    "ones-above", lambda mask, v: -1 if (mask >> (v + 1)).bit_count() % 2 else 1
)


def verify_sign_assignment(m: int, signs: SignAssignment) -> bool:
    """Check that every square of the m-dimensional lattice anticommutes."""
    for mask in range(1 << m):
        for i in range(m):
            if mask >> i & 1:
                continue
            for j in range(i + 1, m):
                if mask >> j & 1:
                    continue
                one = signs(mask, i) * signs(mask | 1 << i, j)
                two = signs(mask, j) * signs(mask | 1 << j, i)
                if one + two != 0:
                    return False
    return True


# --------------------------------------------------------------------------
# Horizontal homology of a single colouring (GF(2))


class HorizontalHomology:
    """GF(2) homology of one colouring's horizontal differential.

    The chain module in bidegree (i, k) is spanned by the i-simplices of
    weight k; the differential deletes 1-coloured vertices only, which
    preserves the weight and drops the dimension by one.
    """

    def __init__(self, X: SimplicialComplex, colouring: Sequence[int]):
        if len(colouring) != X.vertex_count:
            raise ValueError("colouring length must match the vertex count")
        self.X = X
        self.colouring = tuple(colouring)
        buckets: dict[tuple[int, int], list[Simplex]] = {}
        for q in X.dims():
            for s in X.simplices_of_dim(q):
                buckets.setdefault((q, weight(s, colouring)), []).append(s)
        self._buckets = {key: tuple(v) for key, v in buckets.items()}
        self._weights = sorted({k for _, k in buckets})
        self._complexes: dict[int, ChainComplex] = {}
        self._homology: dict[tuple[int, int], HomologyBasis] = {}

    def weights(self) -> list[int]:
        return list(self._weights)

    def basis(self, i: int, k: int) -> tuple[Simplex, ...]:
        return self._buckets.get((i, k), ())

    def complex_for_weight(self, k: int) -> ChainComplex:
        cc = self._complexes.get(k)
        if cc is None:
            cc = self._build(k)
            self._complexes[k] = cc
        return cc

    def _build(self, k: int) -> ChainComplex:
        ranks = {i: len(self.basis(i, k)) for i in self.X.dims() if self.basis(i, k)}
        diffs: dict[int, Matrix] = {}
        for i in sorted(ranks):
            if i - 1 not in ranks:
                continue
            src = self.basis(i, k)
            dst_index = {s: r for r, s in enumerate(self.basis(i - 1, k))}
            d = Matrix.zeros(GF2, len(dst_index), len(src))
            for c, s in enumerate(src):
                for pos, v in enumerate(s):
                    if self.colouring[v] == 1:
                        face = s[:pos] + s[pos + 1 :]
                        d[dst_index[face], c] = 1
            diffs[i] = d
        return ChainComplex(GF2, ranks, diffs)

    def homology(self, i: int, k: int) -> HomologyBasis:
        key = (i, k)
        hb = self._homology.get(key)
        if hb is None:
            hb = HomologyBasis(self.complex_for_weight(k), i)
            self._homology[key] = hb
        return hb

    def dims(self) -> dict[tuple[int, int], int]:
        """Nonzero homology dimensions, keyed by (dimension, weight)."""
        out = {}
        for (i, k) in sorted(self._buckets):
            d = self.homology(i, k).dim
            if d:
                out[(i, k)] = d
        return out


def horizontal_homology(X: SimplicialComplex, colouring: Sequence[int]) -> HorizontalHomology:
    """Horizontal homology of one colouring, with representatives."""
    return HorizontalHomology(X, colouring)


# --------------------------------------------------------------------------
# The full poset complex over GF(2)


class UberComplex:
    """Horizontal homologies of all colourings, chained over the lattice.

    For each (weight k, dimension i) this is a cochain complex over the
    level j = number of 1-coloured vertices; the differential is the sum
    of the maps induced by raising a single vertex.  Everything is over
    GF(2), where the lattice needs no signs.
    """

    def __init__(self, X: SimplicialComplex, max_vertices: int = 16):
        m = X.vertex_count
        if m > max_vertices:
            raise SizeGuardExceeded(f"{m} vertices exceeds the guard of {max_vertices}")
        self.X = X
        self.m = m
        self._nodes = [HorizontalHomology(X, _to_tuple(mask, m)) for mask in range(1 << m)]
        self._levels = [
            sorted(mask for mask in range(1 << m) if mask.bit_count() == j)
            for j in range(m + 1)
        ]
        self._pairs = sorted({key for node in self._nodes for key in node._buckets})
        self._mats: dict[tuple[int, int, int], Matrix] = {}

    def bidegrees(self) -> list[tuple[int, int]]:
        """All (dimension, weight) pairs carrying chain modules somewhere."""
        return list(self._pairs)

    def level_dim(self, j: int, i: int, k: int) -> int:
        return sum(self._nodes[mask].homology(i, k).dim for mask in self._levels[j])

    def differential(self, j: int, i: int, k: int) -> Matrix:
        """The level-j map of the (i, k) cochain complex."""
        key = (j, i, k)
        mat = self._mats.get(key)
        if mat is not None:
            return mat
        src_nodes = self._levels[j]
        dst_nodes = self._levels[j + 1] if j + 1 <= self.m else []
        src_off, n_src = _offsets(self._nodes, src_nodes, i, k)
        dst_off, n_dst = _offsets(self._nodes, dst_nodes, i, k)
        mat = Matrix.zeros(GF2, n_dst, n_src)
        ops = vector_ops(GF2)
        for mask in src_nodes:
            src_h = self._nodes[mask].homology(i, k)
            if src_h.dim == 0:
                continue
            src_basis = self._nodes[mask].basis(i, k)
            for v in range(self.m):
                if mask >> v & 1:
                    continue
                up = mask | 1 << v
                dst_h = self._nodes[up].homology(i, k)
                if dst_h.dim == 0:
                    continue
                dst_basis = {s: r for r, s in enumerate(self._nodes[up].basis(i, k))}
                for c, rep in enumerate(src_h.representatives):
                    image = ops.zero(len(dst_basis))
                    for pos, coeff in enumerate(ops.to_list(rep, len(src_basis))):
                        if coeff and v not in src_basis[pos]:
                            image = ops.add(image, ops.unit(len(dst_basis), dst_basis[src_basis[pos]]))
                    coords = dst_h.reduce(image)
                    for r, val in enumerate(coords):
                        if val:
                            mat[dst_off[up] + r, src_off[mask] + c] = 1
        self._mats[key] = mat
        return mat

    def homology_dims(self) -> dict[tuple[int, int, int], int]:
        """Nonzero poset homology dimensions keyed by (level, weight, dimension)."""
        ops = vector_ops(GF2)
        out: dict[tuple[int, int, int], int] = {}
        for (i, k) in self._pairs:
            ranks = {}
            for j in range(self.m + 1):
                d = self.differential(j, i, k)
                ranks[j] = column_rank(ops, (ops.from_list(col) for col in d.columns()))
            for j in range(self.m + 1):
                dim_here = self.level_dim(j, i, k)
                h = dim_here - ranks.get(j, 0) - ranks.get(j - 1, 0)
                if h:
                    out[(j, k, i)] = h
        return out


def _offsets(nodes, masks, i, k):
    off = {}
    total = 0
    for mask in masks:
        off[mask] = total
        total += nodes[mask].homology(i, k).dim
    return off, total


def uber_complex(X: SimplicialComplex, max_vertices: int = 16) -> UberComplex:
    return UberComplex(X, max_vertices=max_vertices)


def uberhomology(X: SimplicialComplex, max_vertices: int = 16) -> dict[tuple[int, int, int], int]:
    """The triply graded GF(2) invariant: {(level, weight, dimension): dim}."""
    return uber_complex(X, max_vertices=max_vertices).homology_dims()


# --------------------------------------------------------------------------
# The weight-zero slice over arbitrary fields (independent pipeline)


class _CubeNode:
    """Homology of the subcomplex spanned by the 1-coloured vertices."""

    __slots__ = ("complex", "homology", "ambient_index")

    def __init__(self, X: SimplicialComplex, mask: int, ring: CoefficientRing, degree: int):
        vertices = [v for v in range(X.vertex_count) if mask >> v & 1]
        sub = complexes.induced_subcomplex(X, vertices)
        self.complex = sub
        cc = algebra.simplicial_chain_complex(sub, ring)
        self.homology = HomologyBasis(cc, degree)
        ids = sub.original_ids or ()
        self.ambient_index = {}
        for r, s in enumerate(sub.simplices_of_dim(degree)):
            self.ambient_index[tuple(ids[v] for v in s)] = r


def _cube_edge_matrix(src: _CubeNode, dst: _CubeNode, ring: CoefficientRing, degree: int):
    """Coordinates of the inclusion-induced map between two node homologies."""
    ops = vector_ops(ring)
    n_dst = len(dst.ambient_index)
    src_simplices = list(src.ambient_index)
    cols = []
    for rep in src.homology.representatives:
        entries = []
        for pos, coeff in enumerate(ops.to_list(rep, len(src_simplices))):
            if coeff != ops.sc_zero:
                entries.append((dst.ambient_index[src_simplices[pos]], coeff))
        coords = dst.homology.reduce(ops.from_items(n_dst, entries))
        cols.append(coords)
    return cols


def zero_degree_uber_table(
    X: SimplicialComplex,
    ring: CoefficientRing,
    signs: SignAssignment = STANDARD_SIGNS,
    max_vertices: int = 16,
) -> dict[tuple[int, int], int]:
    """Weight-zero poset homology over a field, all bidegrees at once.

    Keys are (level j, dimension i); values are dimensions over ``ring``.
    Built from scratch on the colouring cube: nothing is shared with the
    GF(2) horizontal-homology pipeline.
    """
    if not ring.is_field:
        raise ValueError("the weight-zero slice needs field coefficients")
    m = X.vertex_count
    if m > max_vertices:
        raise SizeGuardExceeded(f"{m} vertices exceeds the guard of {max_vertices}")
    max_degree = X.max_dim if not X.is_empty else -1
    out: dict[tuple[int, int], int] = {}
    for degree in range(max_degree + 1):
        nodes = {mask: _CubeNode(X, mask, ring, degree) for mask in range(1 << m)}
        levels = [
            sorted(mask for mask in range(1 << m) if mask.bit_count() == j)
            for j in range(m + 1)
        ]
        dims = {mask: nodes[mask].homology.dim for mask in nodes}
        ops = vector_ops(ring)
        ranks = {}
        for j in range(m):
            src_masks = levels[j]
            dst_masks = levels[j + 1]
            dst_off = {}
            total = 0
            for mask in dst_masks:
                dst_off[mask] = total
                total += dims[mask]
            columns = []
            for mask in src_masks:
                if dims[mask] == 0:
                    continue
                src_node = nodes[mask]
                entries: list[list[tuple[int, object]]] = [[] for _ in range(dims[mask])]
                for v in range(m):
                    if mask >> v & 1:
                        continue
                    up = mask | 1 << v
                    block = _cube_edge_matrix(src_node, nodes[up], ring, degree)
                    sgn = signs(mask, v)
                    for c in range(dims[mask]):
                        for r, val in enumerate(block[c]):
                            if val != ops.sc_zero:
                                scaled = val if sgn == 1 else ops.sc_neg(val)
                                entries[c].append((dst_off[up] + r, scaled))
                for c in range(dims[mask]):
                    columns.append(ops.from_items(total, entries[c]))
            ranks[j] = column_rank(ops, columns)
        for j in range(m + 1):
            level_dim = sum(dims[mask] for mask in levels[j])
            h = level_dim - ranks.get(j, 0) - ranks.get(j - 1, 0)
            if h:
                out[(j, degree)] = h
    return out


def zero_degree_uber(
    X: SimplicialComplex,
    ring: CoefficientRing,
    degree: int,
    signs: SignAssignment = STANDARD_SIGNS,
    max_vertices: int = 16,
) -> dict[int, int]:
    """One row of the weight-zero table: {level j: dim} in a fixed dimension."""
    table = zero_degree_uber_table(X, ring, signs=signs, max_vertices=max_vertices)
    return {j: d for (j, i), d in table.items() if i == degree}


# --------------------------------------------------------------------------
# Degree-zero row: component counting, torsion-capable over Z


def _components_by_mask(adjacency: Sequence[int], mask: int) -> list[int]:
    """Connected components (as bitmasks) of the induced subgraph, ordered
    by smallest vertex."""
    comps = []
    rest = mask
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = graphs._component_mask(adjacency, start, mask)
        comps.append(comp)
        rest &= ~comp
    return comps


def bold_homology(
    obj,
    ring: CoefficientRing = ZZ,
    signs: SignAssignment = STANDARD_SIGNS,
    max_vertices: int = 16,
) -> dict[int, AbelianGroupPresentation]:
    """Degree-zero poset homology: the cube of components of the induced
    subgraphs of the 1-skeleton.

    Accepts a graph or a simplicial complex.  Over the integers the chain
    groups are free on components, so torsion (if any) is reported through
    Smith normal form; over a field the torsion list is always empty.
    """
    G = obj if hasattr(obj, "adjacency") else graphs.one_skeleton(obj)
    m = G.vertex_count
    if m > max_vertices:
        raise SizeGuardExceeded(f"{m} vertices exceeds the guard of {max_vertices}")
    levels = [sorted(mask for mask in range(1 << m) if mask.bit_count() == j) for j in range(m + 1)]
    comps = {mask: _components_by_mask(G.adjacency, mask) for mask in range(1 << m)}
    mats: dict[int, Matrix] = {}
    for j in range(m):
        src_masks, dst_masks = levels[j], levels[j + 1]
        src_off, n_src = _mask_offsets(comps, src_masks)
        dst_off, n_dst = _mask_offsets(comps, dst_masks)
        d = Matrix.zeros(ring, n_dst, n_src)
        for mask in src_masks:
            for v in range(m):
                if mask >> v & 1:
                    continue
                up = mask | 1 << v
                sgn = signs(mask, v)
                up_comps = comps[up]
                for c, comp in enumerate(comps[mask]):
                    anchor = comp & -comp
                    r = next(t for t, uc in enumerate(up_comps) if uc & anchor)
                    d[dst_off[up] + r, src_off[mask] + c] += sgn
        mats[j] = d
    out: dict[int, AbelianGroupPresentation] = {}
    if ring.is_field:
        ops = vector_ops(ring)
        ranks = {
            j: column_rank(ops, (ops.from_list(col) for col in mats[j].columns()))
            for j in mats
        }
        for j in range(m + 1):
            level_dim = sum(len(comps[mask]) for mask in levels[j])
            out[j] = AbelianGroupPresentation(level_dim - ranks.get(j, 0) - ranks.get(j - 1, 0))
    else:
        ranks = {}
        divisors: dict[int, list[int]] = {}
        for j, d in mats.items():
            D, _, _ = smith_normal_form(d)
            diag = [D[t, t] for t in range(min(D.rows, D.cols)) if D[t, t] != 0]
            ranks[j] = len(diag)
            divisors[j] = diag
        for j in range(m + 1):
            level_dim = sum(len(comps[mask]) for mask in levels[j])
            free = level_dim - ranks.get(j, 0) - ranks.get(j - 1, 0)
            torsion = tuple(t for t in divisors.get(j - 1, []) if abs(t) > 1)
            out[j] = AbelianGroupPresentation(free, torsion)
    return out


def _mask_offsets(comps, masks):
    off = {}
    total = 0
    for mask in masks:
        off[mask] = total
        total += len(comps[mask])
    return off, total


def euler_characteristic_bold(obj, max_vertices: int = 16) -> int:
    """Alternating sum over levels of the degree-zero poset homology ranks."""
    table = bold_homology(obj, QQ, max_vertices=max_vertices)
    return sum((-1) ** j * g.free_rank for j, g in table.items())