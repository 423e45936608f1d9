"""Canonical 600-cell instance: vertices, adjacency, cells, symmetry group.

The coordinate model is the standard unit-circumradius one, stored at 2x
scale so every component lies in the golden ring:

* 8 vertices: all permutations of ``(+-2, 0, 0, 0)``,
* 16 vertices: ``(+-1, +-1, +-1, +-1)``,
* 96 vertices: even permutations of ``(+-phi, +-1, +-(phi-1), 0)``.

These 120 quaternions form a group of order 120 under :func:`golden.quat_mul`
(verified during the build), and the full symmetry group of the polytope is
realized by the 14,400 distinct vertex permutations induced by the two-sided
actions ``q -> a*q*b`` and ``q -> a*conj(q)*b`` with ``a``, ``b`` vertices.

Vertex order is fixed by sorting coefficient 8-tuples, so rebuilding the
model always reproduces the identical numbering, adjacency, cell list and
group element order; a fingerprint over vertices and group ties checkpoint
files to this exact model.

Vectorization note: golden arithmetic is mirrored on int64 arrays shaped
``(..., 2)`` holding ``(a, b)`` pairs.  Vertex coefficients lie in
``{-2..2}``; a ring product then has coefficients within +-8 and a 4-term
inner product within +-32, so int64 is exact with enormous margin.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import permutations
from math import gcd

import numpy as np

from .golden import (
    GoldenInt,
    INNER_EDGE,
    PHI,
    PHI_INV,
    ONE,
    QUAT_ONE,
    Quat,
    TWO,
    ZERO,
    quat_mul,
)

N_VERTICES = 120
N_EDGES = 720
N_TRIANGLES = 1200
N_CELLS = 600
DEGREE = 12
CELLS_PER_VERTEX = 20
GROUP_ORDER = 14400

FULL_MASK = (1 << N_VERTICES) - 1


class ModelError(Exception):
    """A structural invariant of the 600-cell model failed."""


def _gmul_arr(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Golden product on (..., 2) int64 arrays."""
    a = p[..., 0] * q[..., 0] + p[..., 1] * q[..., 1]
    b = p[..., 0] * q[..., 1] + p[..., 1] * q[..., 0] + p[..., 1] * q[..., 1]
    return np.stack([a, b], axis=-1)


def _inner_arr(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """inner4 on (..., 4, 2) int64 arrays -> (..., 2)."""
    return _gmul_arr(p, q).sum(axis=-2)


def _perm_sign(perm: tuple[int, ...]) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv & 1 else 1


def build_vertices() -> tuple[Quat, ...]:
    """The 120 vertex quaternions in canonical (coefficient-sorted) order."""
    verts: list[Quat] = []
    # 8 unit-axis vertices (+-2 e_i at 2x scale).
    for i in range(4):
        for s in (1, -1):
            comps = [ZERO] * 4
            comps[i] = GoldenInt(2 * s, 0)
            verts.append(Quat(*comps))
    # 16 half-coordinate vertices.
    for sw in (1, -1):
        for sx in (1, -1):
            for sy in (1, -1):
                for sz in (1, -1):
                    verts.append(
                        Quat(
                            GoldenInt(sw, 0),
                            GoldenInt(sx, 0),
                            GoldenInt(sy, 0),
                            GoldenInt(sz, 0),
                        )
                    )
    # 96 snub vertices: even permutations of (phi, 1, phi-1, 0) with free
    # signs on the three nonzero slots.
    base = (PHI, ONE, PHI_INV, ZERO)
    for perm in permutations(range(4)):
        if _perm_sign(perm) != 1:
            continue
        for sw in (1, -1):
            for sx in (1, -1):
                for sy in (1, -1):
                    signs = (sw, sx, sy, 1)
                    comps = []
                    k = 0
                    for slot in range(4):
                        g = base[perm[slot]]
                        if g == ZERO:
                            comps.append(ZERO)
                        else:
                            s = signs[k]
                            k += 1
                            comps.append(GoldenInt(s * g.a, s * g.b))
                    verts.append(Quat(*comps))
    verts.sort(key=Quat.key)
    if len(verts) != N_VERTICES or len(set(verts)) != N_VERTICES:
        raise ModelError("vertex generation did not yield 120 distinct points")
    return tuple(verts)


@dataclass
class Model:
    """Immutable 600-cell instance; share freely across workers."""

    vertices: tuple[Quat, ...]
    coords: np.ndarray  # (120, 4, 2) int64 golden coefficients
    adj: np.ndarray  # (120, 120) bool
    nbr_mask: tuple[int, ...]  # per-vertex neighbor bitmask (120-bit ints)
    above_mask: tuple[int, ...]  # bits {v+1 .. 119}
    edges: np.ndarray  # (720, 2) int16, u < v
    cells: np.ndarray  # (600, 4) int16, sorted rows
    cell_mask: tuple[int, ...]  # per-cell vertex bitmask
    cell_nbrs: np.ndarray  # (600, 4) int16; cells sharing a triangle
    mult: np.ndarray  # (120, 120) int16 icosian product table
    conj_idx: np.ndarray  # (120,) int16 quaternion conjugate
    neg_idx: np.ndarray  # (120,) int16 antipode
    identity_idx: int  # index of the quaternion (2,0,0,0)
    perms: np.ndarray  # (14400, 120) int8, rows sorted lexicographically
    proper: np.ndarray  # (14400,) bool; False = orientation-reversing
    identity_perm: int  # row index of the identity permutation
    rmz: np.ndarray  # (120, 120) int32; rmz[w] = rows g with g(w) = 0
    fingerprint: str
    _nbr_arrays: dict = field(default_factory=dict, repr=False)

    @classmethod
    def build(cls) -> "Model":
        vertices = build_vertices()
        coords = np.array(
            [[c.key() for c in v.components()] for v in vertices], dtype=np.int64
        ).reshape(N_VERTICES, 4, 2)

        norms = _inner_arr(coords, coords)
        if not (norms == np.array([4, 0])).all():
            raise ModelError("a vertex is off the unit circumradius")

        adj, nbr_mask = _build_adjacency(coords)
        edges = _edge_list(adj)
        cells, cell_mask, cell_nbrs = _build_cells(nbr_mask)
        mult, conj_idx, neg_idx, identity_idx = _build_mult_table(vertices, coords)
        perms, proper, identity_perm = _build_group(mult, conj_idx)
        _check_edge_preservation(perms, edges, adj)

        above = tuple(FULL_MASK ^ ((1 << (v + 1)) - 1) for v in range(N_VERTICES))
        rmz = _rows_mapping_to_zero(perms)
        fp = hashlib.sha256(coords.tobytes() + perms.tobytes()).hexdigest()
        return cls(
            vertices=vertices,
            coords=coords,
            adj=adj,
            nbr_mask=nbr_mask,
            above_mask=above,
            edges=edges,
            cells=cells,
            cell_mask=cell_mask,
            cell_nbrs=cell_nbrs,
            mult=mult,
            conj_idx=conj_idx,
            neg_idx=neg_idx,
            identity_idx=identity_idx,
            perms=perms,
            proper=proper,
            identity_perm=identity_perm,
            rmz=rmz,
            fingerprint=fp,
        )

    def neighbors(self, v: int) -> np.ndarray:
        arr = self._nbr_arrays.get(v)
        if arr is None:
            arr = np.nonzero(self.adj[v])[0].astype(np.int16)
            self._nbr_arrays[v] = arr
        return arr

    def perm_order(self, row: int) -> int:
        """Order of a group element from its cycle structure."""
        p = self.perms[row]
        seen = np.zeros(N_VERTICES, dtype=bool)
        order = 1
        for start in range(N_VERTICES):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = int(p[j])
                length += 1
            order = order * length // gcd(order, length)
        return order


def _build_adjacency(coords: np.ndarray) -> tuple[np.ndarray, tuple[int, ...]]:
    inn = _inner_arr(coords[:, None, :, :], coords[None, :, :, :])  # (120,120,2)
    adj = (inn[..., 0] == INNER_EDGE.a) & (inn[..., 1] == INNER_EDGE.b)
    if adj.diagonal().any() or not (adj == adj.T).all():
        raise ModelError("adjacency is not symmetric/irreflexive")
    masks = []
    for v in range(N_VERTICES):
        m = 0
        for u in np.nonzero(adj[v])[0]:
            m |= 1 << int(u)
        masks.append(m)
    return adj, tuple(masks)


def _edge_list(adj: np.ndarray) -> np.ndarray:
    iu, ju = np.nonzero(np.triu(adj, 1))
    edges = np.stack([iu, ju], axis=1).astype(np.int16)
    if len(edges) != N_EDGES:
        raise ModelError(f"edge count {len(edges)} != {N_EDGES}")
    return edges


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _build_cells(
    nbr_mask: tuple[int, ...],
) -> tuple[np.ndarray, tuple[int, ...], np.ndarray]:
    """All 4-cliques of the skeleton; they are exactly the tetrahedral cells.

    Identification of cells with 4-cliques is only sound because no 5-clique
    exists, which is asserted here.
    """
    cells = []
    for u in range(N_VERTICES):
        mu = nbr_mask[u] & ~((1 << (u + 1)) - 1)
        for v in _bits(mu):
            mv = mu & nbr_mask[v] & ~((1 << (v + 1)) - 1)
            for w in _bits(mv):
                mw = mv & nbr_mask[w] & ~((1 << (w + 1)) - 1)
                for x in _bits(mw):
                    common = (
                        nbr_mask[u] & nbr_mask[v] & nbr_mask[w] & nbr_mask[x]
                    )
                    if common:
                        raise ModelError("5-clique found; cells are not 4-cliques")
                    cells.append((u, v, w, x))
    if len(cells) != N_CELLS:
        raise ModelError(f"cell count {len(cells)} != {N_CELLS}")
    cells_arr = np.array(sorted(cells), dtype=np.int16)
    cell_mask = tuple(
        (1 << int(a)) | (1 << int(b)) | (1 << int(c)) | (1 << int(d))
        for a, b, c, d in cells_arr
    )
    # Each triangle bounds exactly two cells; record the pairing.
    tri_owner: dict[tuple[int, int, int], list[int]] = {}
    for ci, cell in enumerate(cells_arr):
        for skip in range(4):
            tri = tuple(int(cell[j]) for j in range(4) if j != skip)
            tri_owner.setdefault(tri, []).append(ci)
    nbrs = np.full((N_CELLS, 4), -1, dtype=np.int16)
    fill = [0] * N_CELLS
    for tri, owners in tri_owner.items():
        if len(owners) != 2:
            raise ModelError(f"triangle {tri} bounds {len(owners)} cells, not 2")
        a, b = owners
        nbrs[a, fill[a]] = b
        fill[a] += 1
        nbrs[b, fill[b]] = a
        fill[b] += 1
    if fill != [4] * N_CELLS:
        raise ModelError("cell adjacency is not 4-regular")
    return cells_arr, cell_mask, nbrs


def _build_mult_table(
    vertices: tuple[Quat, ...], coords: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Icosian product table T[i, j] = index of v_i * v_j.

    Closure of the 120 vertices under the quaternion product is what makes
    the two-sided group construction work; a product landing outside the
    vertex set fails the build.
    """
    index = {v.key(): i for i, v in enumerate(vertices)}
    w, x, y, z = (coords[:, k, :] for k in range(4))
    mult = np.empty((N_VERTICES, N_VERTICES), dtype=np.int16)
    for i, p in enumerate(vertices):
        pw, px, py, pz = (coords[i, k, :] for k in range(4))
        rw = _gmul_arr(pw, w) - _gmul_arr(px, x) - _gmul_arr(py, y) - _gmul_arr(pz, z)
        rx = _gmul_arr(pw, x) + _gmul_arr(px, w) + _gmul_arr(py, z) - _gmul_arr(pz, y)
        ry = _gmul_arr(pw, y) - _gmul_arr(px, z) + _gmul_arr(py, w) + _gmul_arr(pz, x)
        rz = _gmul_arr(pw, z) + _gmul_arr(px, y) - _gmul_arr(py, x) + _gmul_arr(pz, w)
        prod = np.stack([rw, rx, ry, rz], axis=1)  # (120, 4, 2), 4x scale
        if (prod & 1).any():
            raise ModelError("icosian product not divisible by 2")
        prod >>= 1
        for j in range(N_VERTICES):
            key = tuple(int(t) for t in prod[j].ravel())
            k = index.get(key)
            if k is None:
                raise ModelError("icosian product escaped the vertex set")
            mult[i, j] = k
    conj_idx = np.array(
        [index[v.conjugate().key()] for v in vertices], dtype=np.int16
    )
    neg_idx = np.array([index[(-v).key()] for v in vertices], dtype=np.int16)
    identity_idx = index[QUAT_ONE.key()]
    return mult, conj_idx, neg_idx, identity_idx


def _build_group(
    mult: np.ndarray, conj_idx: np.ndarray
) -> tuple[np.ndarray, np.ndarray, int]:
    t = mult.astype(np.int32)
    # proper[a, q, b] = (a * v_q * b); improper uses conj(v_q).
    proper_maps = t[t]  # (120, 120, 120): [a, q, b]
    improper_maps = t[t[:, conj_idx]]
    allmaps = np.concatenate(
        [
            proper_maps.transpose(0, 2, 1).reshape(-1, N_VERTICES),
            improper_maps.transpose(0, 2, 1).reshape(-1, N_VERTICES),
        ]
    ).astype(np.int8)
    flags = np.zeros(len(allmaps), dtype=bool)
    flags[: len(allmaps) // 2] = True
    packed = np.ascontiguousarray(allmaps).view(
        np.dtype((np.void, N_VERTICES))
    ).ravel()
    _, first = np.unique(packed, return_index=True)
    perms = allmaps[first]  # unique() sorts rows: canonical group order
    proper = flags[first]
    if len(perms) != GROUP_ORDER:
        raise ModelError(f"group order {len(perms)} != {GROUP_ORDER}")
    if int(proper.sum()) * 2 != GROUP_ORDER:
        raise ModelError("proper/improper halves are unbalanced")
    ident_rows = np.nonzero((perms == np.arange(N_VERTICES, dtype=np.int8)).all(1))[0]
    if len(ident_rows) != 1:
        raise ModelError("identity permutation missing from the group")
    return perms, proper, int(ident_rows[0])


def _check_edge_preservation(
    perms: np.ndarray, edges: np.ndarray, adj: np.ndarray
) -> None:
    eu = perms[:, edges[:, 0]].astype(np.int32)
    ev = perms[:, edges[:, 1]].astype(np.int32)
    if not adj[eu, ev].all():
        raise ModelError("a group permutation does not preserve adjacency")


def _rows_mapping_to_zero(perms: np.ndarray) -> np.ndarray:
    rows, cols = np.nonzero(perms == 0)
    order = np.argsort(cols, kind="stable")
    rmz = rows[order].reshape(N_VERTICES, GROUP_ORDER // N_VERTICES)
    return rmz.astype(np.int32)


def triangle_count(model: Model) -> int:
    total = 0
    for u, v in model.edges:
        common = model.nbr_mask[int(u)] & model.nbr_mask[int(v)]
        common &= model.above_mask[int(v)]
        total += bin(common).count("1")
    return total


def verify_model(model: Model) -> dict[str, int]:
    """Re-check the structural invariants; raises ModelError on violation.

    Returns the headline counts for display.  Budgeted to run in a couple of
    seconds on top of the build.
    """
    if len(model.vertices) != N_VERTICES:
        raise ModelError("vertex count != 120")
    if len(set(model.vertices)) != N_VERTICES:
        raise ModelError("vertices are not distinct")
    norms = _inner_arr(model.coords, model.coords)
    if not (norms == np.array([4, 0])).all():
        raise ModelError("vertex norm != 4")
    neg_ok = sorted(int(i) for i in model.neg_idx) == list(range(N_VERTICES))
    if not neg_ok:
        raise ModelError("vertex set is not closed under negation")
    if model.adj.diagonal().any() or not (model.adj == model.adj.T).all():
        raise ModelError("adjacency is not symmetric/irreflexive")
    degrees = model.adj.sum(axis=1)
    if not (degrees == DEGREE).all():
        raise ModelError("a vertex has degree != 12")
    if len(model.edges) != N_EDGES:
        raise ModelError("edge count != 720")
    if triangle_count(model) != N_TRIANGLES:
        raise ModelError("triangle count != 1200")
    if len(model.cells) != N_CELLS:
        raise ModelError("cell count != 600")
    per_vertex = np.bincount(model.cells.ravel(), minlength=N_VERTICES)
    if not (per_vertex == CELLS_PER_VERTEX).all():
        raise ModelError("a vertex is not in exactly 20 cells")
    if len(model.perms) != GROUP_ORDER:
        raise ModelError("group order != 14400")
    _check_edge_preservation(model.perms, model.edges, model.adj)
    orbit0 = np.unique(model.perms[:, 0])
    if len(orbit0) != N_VERTICES:
        raise ModelError("group is not vertex-transitive")
    # Multiplication-table sanity: every row and column is a permutation of
    # the vertex indices (left/right translations are bijections), which
    # together with the table's construction certifies group closure.
    rng = np.arange(N_VERTICES)
    if not (np.sort(model.mult, axis=1) == rng).all():
        raise ModelError("icosian table rows are not permutations")
    if not (np.sort(model.mult, axis=0) == rng[:, None]).all():
        raise ModelError("icosian table columns are not permutations")
    return {
        "vertices": N_VERTICES,
        "edges": len(model.edges),
        "triangles": N_TRIANGLES,
        "cells": len(model.cells),
        "group": len(model.perms),
    }


def automorphism_upper_bound(model: Model) -> int:
    """Certified upper bound on |Aut(skeleton)| via local rigidity.

    Argument: the skeleton is vertex-transitive, so |Aut| = 120 * |Aut_0|
    where Aut_0 fixes vertex 0.  Aut_0 acts on the induced graph of the 12
    neighbors of 0 (an icosahedron), whose automorphism count is computed
    here by exhaustive backtracking.  The restriction Aut_0 -> Aut(figure)
    is injective provided no non-identity automorphism fixes vertex 0 and
    all its neighbors pointwise.  That is certified by signature
    propagation: an automorphism fixing a set F pointwise can only map a
    vertex to one with the same adjacency signature against F, so vertices
    whose signature is unique are themselves forced fixed; iterating from
    F = {0} u N(0) until F is everything proves the pointwise stabilizer
    trivial.  Hence |Aut| <= 120 * |Aut(figure)|.
    """
    nbrs = model.neighbors(0)
    fig = model.adj[np.ix_(nbrs, nbrs)]
    fig_aut = _count_graph_automorphisms(fig)
    fixed = np.zeros(N_VERTICES, dtype=bool)
    fixed[0] = True
    fixed[nbrs] = True
    while not fixed.all():
        anchors = np.nonzero(fixed)[0]
        sigs: dict[bytes, list[int]] = {}
        for v in np.nonzero(~fixed)[0]:
            sigs.setdefault(model.adj[v, anchors].tobytes(), []).append(int(v))
        pinned = [vs[0] for vs in sigs.values() if len(vs) == 1]
        if not pinned:
            raise ModelError("signature propagation stalled; bound invalid")
        fixed[pinned] = True
    return N_VERTICES * fig_aut


def _count_graph_automorphisms(adj: np.ndarray) -> int:
    n = len(adj)
    count = 0
    image = [-1] * n
    used = [False] * n

    def extend(i: int) -> None:
        nonlocal count
        if i == n:
            count += 1
            return
        for cand in range(n):
            if used[cand]:
                continue
            ok = True
            for j in range(i):
                if adj[i, j] != adj[cand, image[j]]:
                    ok = False
                    break
            if ok:
                used[cand] = True
                image[i] = cand
                extend(i + 1)
                used[cand] = False
        image[i] = -1

    extend(0)
    return count


def export_model_text(model: Model, include_group: bool = True) -> str:
    """Deterministic text dump of the model for external inspection.

    One record per line.  Header documents the sections; vertex coordinates
    are golden coefficient 8-tuples at 2x scale.
    """
    lines = [
        "# cut600 model export v1",
        "# sections: vertex <i> <w.a> <w.b> <x.a> <x.b> <y.a> <y.b> <z.a> <z.b>",
        "#           edge <u> <v> | cell <a> <b> <c> <d> | perm <proper:0|1> <120 images>",
        f"# fingerprint {model.fingerprint}",
    ]
    for i, v in enumerate(model.vertices):
        lines.append("vertex %d %s" % (i, " ".join(str(c) for c in v.key())))
    for u, v in model.edges:
        lines.append(f"edge {u} {v}")
    for cell in model.cells:
        lines.append("cell %d %d %d %d" % tuple(int(c) for c in cell))
    if include_group:
        for row, prop in zip(model.perms, model.proper):
            lines.append(
                "perm %d %s" % (1 if prop else 0, " ".join(str(int(t)) for t in row))
            )
    return "\n".join(lines) + "\n"
