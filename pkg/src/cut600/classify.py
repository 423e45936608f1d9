"""Per-cut analytics: maximality, cell-graph connectivity, local vertex
types, vertex orbits under the stabilizer, and point-group naming.

Local types.  A surviving vertex ``v`` sees ``k = |C & N(v)|`` removed
neighbors, at most 3 (an independent set in the icosahedral vertex figure
has at most 3 vertices).  For ``k == 2`` the two removed neighbors are
either antipodal within the figure or not; antipodality of two common
neighbors is exactly inner product ``2*(phi-1)`` (scaled), i.e.
``GoldenInt(-2, 2)``: if ``u``, ``u'`` are neighbors of ``v`` and
``u' = phi*v - u`` (the reflection of ``u`` through the figure center) then
``<u, u'> = phi<u,v> - <u,u> = 2*phi**2 - 4 = 2*(phi-1)``.  The resulting
five configurations are labeled::

    I   k=0        II  k=1        III k=2 antipodal
    IV  k=2 non-antipodal          V   k=3

and the assignment is pinned by the high-symmetry fixture table, which the
test suite checks row by row.

Point groups.  A stabilizer subgroup fixing ``v`` acts on the icosahedral
vertex figure, hence embeds in the full icosahedral group Ih; its
Schoenflies symbol is decided from element orders, orientation signs (an
element built with quaternion conjugation reverses orientation), and for
improper involutions the count of fixed neighbors (reflections of the
figure fix 4 of the 12, the central inversion fixes none).  Groups outside
the bounded table get a structural fallback label.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import grouptools as gt
from .golden import INNER_FIGURE_ANTIPODE
from .grouptools import CutError, SetStabilizer
from .model import (
    CELLS_PER_VERTEX,
    FULL_MASK,
    GROUP_ORDER,
    Model,
    N_CELLS,
    N_VERTICES,
    _inner_arr,
)

NAMED_CUTS = ("snub24", "cross8", "cross16", "antiprism10")

_TYPE_LABELS = {(0, None): "I", (1, None): "II", (2, True): "III", (2, False): "IV", (3, None): "V"}


class ClassifyError(Exception):
    pass


@dataclass(frozen=True)
class LocalType:
    """Configuration of removed neighbors around a surviving vertex."""

    k: int
    antipodal: bool | None  # meaningful only at k == 2

    @property
    def label(self) -> str:
        return _TYPE_LABELS[(self.k, self.antipodal)]


@dataclass(frozen=True)
class OrbitProfile:
    size: int
    local_type: LocalType
    vertex_stabilizer_order: int
    point_group: str

    def short(self) -> str:
        return f"({self.size}, {self.local_type.label}, {self.point_group})"


@dataclass
class CutReport:
    members: tuple[int, ...]
    size: int
    stabilizer_order: int
    maximal: bool
    simplex_graph_connected: bool
    simplex_components: int
    vertex_orbits: list[OrbitProfile]

    def to_dict(self) -> dict:
        return {
            "members": list(self.members),
            "size": self.size,
            "stabilizer_order": self.stabilizer_order,
            "maximal": self.maximal,
            "simplex_graph_connected": self.simplex_graph_connected,
            "simplex_components": self.simplex_components,
            "vertex_orbits": [
                {
                    "size": p.size,
                    "local_type": p.local_type.label,
                    "removed_neighbors": p.local_type.k,
                    "antipodal": p.local_type.antipodal,
                    "vertex_stabilizer_order": p.vertex_stabilizer_order,
                    "point_group": p.point_group,
                }
                for p in self.vertex_orbits
            ],
        }

    def to_csv_row(self) -> str:
        orbits = "; ".join(p.short() for p in self.vertex_orbits)
        return "%d,%d,%s,%s,\"%s\"" % (
            self.size,
            self.stabilizer_order,
            "yes" if self.maximal else "no",
            "yes" if self.simplex_graph_connected else "no",
            orbits,
        )


def cut_mask(model: Model, cut) -> int:
    mask = 0
    for v in cut:
        mask |= 1 << int(v)
    return mask


def cover_mask(model: Model, cut) -> int:
    cover = 0
    for v in cut:
        cover |= model.nbr_mask[int(v)] | (1 << int(v))
    return cover


def is_maximal(model: Model, cut) -> bool:
    """True iff every vertex outside the cut is adjacent to some member."""
    return cover_mask(model, cut) == FULL_MASK


def surviving_cells(model: Model, cut) -> np.ndarray:
    """Indices of cells disjoint from the cut; always 600 - 20*|cut|."""
    cm = cut_mask(model, cut)
    alive = np.fromiter(
        (not (mask & cm) for mask in model.cell_mask), dtype=bool, count=N_CELLS
    )
    out = np.nonzero(alive)[0]
    expect = N_CELLS - CELLS_PER_VERTEX * len(tuple(cut))
    if len(out) != expect:
        raise ClassifyError(
            f"{len(out)} surviving cells, expected {expect}; cut not independent?"
        )
    return out


def simplex_graph_components(model: Model, cut) -> int:
    """Components of surviving cells under shared-triangle adjacency."""
    alive_idx = surviving_cells(model, cut)
    if not len(alive_idx):
        return 0
    alive = np.zeros(N_CELLS, dtype=bool)
    alive[alive_idx] = True
    seen = np.zeros(N_CELLS, dtype=bool)
    components = 0
    for start in alive_idx:
        if seen[start]:
            continue
        components += 1
        stack = [int(start)]
        seen[start] = True
        while stack:
            c = stack.pop()
            for nb in model.cell_nbrs[c]:
                nb = int(nb)
                if alive[nb] and not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
    return components


def simplex_graph_connected(model: Model, cut) -> bool:
    return simplex_graph_components(model, cut) <= 1


def local_type(model: Model, v: int, cut) -> LocalType:
    if v in set(int(c) for c in cut):
        raise CutError(f"vertex {v} is a member of the cut")
    removed = [int(c) for c in cut if model.adj[v, int(c)]]
    k = len(removed)
    if k > 3:
        raise ClassifyError(f"vertex {v} has {k} removed neighbors; bound is 3")
    antipodal = None
    if k == 2:
        inn = _inner_arr(model.coords[removed[0]], model.coords[removed[1]])
        antipodal = bool(
            inn[0] == INNER_FIGURE_ANTIPODE.a and inn[1] == INNER_FIGURE_ANTIPODE.b
        )
    return LocalType(k=k, antipodal=antipodal)


def _fixed_neighbor_count(model: Model, row: int, v: int) -> int:
    nbrs = model.neighbors(v)
    return int((model.perms[row, nbrs] == nbrs).sum())


def point_group_label(model: Model, rows, v: int) -> str:
    """Schoenflies symbol of a vertex stabilizer acting on the figure of v."""
    rows = [int(r) for r in rows]
    n = len(rows)
    proper_orders: Counter = Counter()
    improper_orders: Counter = Counter()
    has_inversion = False
    reflections = 0
    clean = True
    for r in rows:
        o = model.perm_order(r)
        if model.proper[r]:
            proper_orders[o] += 1
        else:
            improper_orders[o] += 1
            if o == 2:
                fixed = _fixed_neighbor_count(model, r, v)
                if fixed == 0:
                    has_inversion = True
                elif fixed == 4:
                    reflections += 1
                else:
                    clean = False
    if not improper_orders:
        table = {
            (1, ((1, 1),)): "C1",
            (2, ((1, 1), (2, 1))): "C2",
            (3, ((1, 1), (3, 2))): "C3",
            (4, ((1, 1), (2, 3))): "D2",
            (5, ((1, 1), (5, 4))): "C5",
            (6, ((1, 1), (2, 3), (3, 2))): "D3",
            (10, ((1, 1), (2, 5), (5, 4))): "D5",
            (12, ((1, 1), (2, 3), (3, 8))): "T",
            (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "I",
        }
        label = table.get((n, tuple(sorted(proper_orders.items()))))
        return label if label else f"order-{n} (chiral)"
    if not clean:
        return f"order-{n} (achiral)"
    ph = tuple(sorted(proper_orders.items()))
    if n == 2:
        return "Cs" if reflections == 1 else "Ci"
    if n == 4 and ph == ((1, 1), (2, 1)):
        if reflections == 2:
            return "C2v"
        if has_inversion and reflections == 1:
            return "C2h"
    if n == 6 and ph == ((1, 1), (3, 2)):
        if reflections == 3:
            return "C3v"
        if has_inversion:
            return "S6"
    if n == 10 and ph == ((1, 1), (5, 4)):
        if reflections == 5:
            return "C5v"
        if has_inversion:
            return "S10"
    if n == 12 and ph == ((1, 1), (2, 3), (3, 2)) and has_inversion and reflections == 3:
        return "D3d"
    if n == 20 and ph == ((1, 1), (2, 5), (5, 4)) and has_inversion and reflections == 5:
        return "D5d"
    if n == 24 and ph == ((1, 1), (2, 3), (3, 8)) and has_inversion:
        return "Th"
    if n == 120:
        return "Ih"
    return f"order-{n} (achiral)"


def vertex_orbit_profile(
    model: Model, cut, stab: SetStabilizer | None = None
) -> list[OrbitProfile]:
    """Orbits of surviving vertices under the cut stabilizer, annotated with
    the (constant) local type, per-vertex stabilizer order and point group.
    """
    cut = tuple(int(c) for c in cut)
    if stab is None:
        stab = gt.stabilizer(model, cut)
    sub = model.perms[stab.rows]  # (n, 120)
    in_cut = np.zeros(N_VERTICES, dtype=bool)
    in_cut[list(cut)] = True
    seen = np.zeros(N_VERTICES, dtype=bool)
    profiles = []
    for v in range(N_VERTICES):
        if in_cut[v] or seen[v]:
            continue
        orbit = np.unique(sub[:, v])
        if in_cut[orbit].any():
            raise ClassifyError("stabilizer mixes cut and surviving vertices")
        seen[orbit] = True
        types = {local_type(model, int(u), cut) for u in orbit}
        if len(types) != 1:
            raise ClassifyError(f"local type not constant on orbit of {v}")
        fix_rows = stab.rows[sub[:, v] == v]
        if len(orbit) * len(fix_rows) != stab.order:
            raise ClassifyError("orbit-stabilizer identity failed inside stabilizer")
        profiles.append(
            OrbitProfile(
                size=len(orbit),
                local_type=types.pop(),
                vertex_stabilizer_order=len(fix_rows),
                point_group=point_group_label(model, fix_rows, v),
            )
        )
    profiles.sort(key=lambda p: (-p.size, p.local_type.label, p.point_group))
    total = sum(p.size for p in profiles)
    if total != N_VERTICES - len(cut):
        raise ClassifyError("vertex orbits do not partition the survivors")
    return profiles


def cell_orbits(
    model: Model, cut, stab: SetStabilizer | None = None
) -> list[np.ndarray]:
    """Orbits of surviving cells under the cut stabilizer."""
    cut = tuple(int(c) for c in cut)
    if stab is None:
        stab = gt.stabilizer(model, cut)
    sub = model.perms[stab.rows]
    alive = surviving_cells(model, cut)
    cell_codes = gt.pack_sets(np.sort(model.cells, axis=1).astype(np.int8))
    code_order = np.argsort(cell_codes)
    sorted_codes = cell_codes[code_order]
    imgs = np.sort(sub[:, model.cells], axis=2).astype(np.int8)  # (n, 600, 4)
    img_codes = gt.pack_sets(imgs)
    pos = np.searchsorted(sorted_codes, img_codes)
    if not (sorted_codes[pos] == img_codes).all():
        raise ClassifyError("stabilizer image of a cell is not a cell")
    img_idx = code_order[pos]  # (n, 600) cell index images
    seen = np.zeros(N_CELLS, dtype=bool)
    orbits = []
    for c in alive:
        if seen[c]:
            continue
        orb = np.unique(img_idx[:, c])
        seen[orb] = True
        orbits.append(orb)
    return orbits


def classify(model: Model, members) -> CutReport:
    cut = gt.validate_cut(model, members)
    stab = gt.stabilizer(model, cut)
    comps = simplex_graph_components(model, cut)
    return CutReport(
        members=cut,
        size=len(cut),
        stabilizer_order=stab.order,
        maximal=is_maximal(model, cut),
        simplex_graph_connected=comps <= 1,
        simplex_components=comps,
        vertex_orbits=vertex_orbit_profile(model, cut, stab),
    )


def _unit_axis_vertices(model: Model) -> tuple[int, ...]:
    counts = (np.abs(model.coords).sum(-1) > 0).sum(-1)
    return tuple(int(i) for i in np.nonzero(counts == 1)[0])


def _half_coordinate_vertices(model: Model) -> tuple[int, ...]:
    a_ok = (np.abs(model.coords[:, :, 0]) == 1).all(-1)
    b_ok = (model.coords[:, :, 1] == 0).all(-1)
    return tuple(int(i) for i in np.nonzero(a_ok & b_ok)[0])


def _decagon_ring(model: Model) -> list[int]:
    """Powers of a 36-degree rotation vertex: a 10-cycle of the skeleton."""
    from .golden import ONE, PHI, PHI_INV, Quat, ZERO

    gen = Quat(PHI, ONE, PHI_INV, ZERO)
    index = {v.key(): i for i, v in enumerate(model.vertices)}
    g = index[gen.key()]
    ring = [model.identity_idx]
    cur = g
    while cur != model.identity_idx:
        ring.append(cur)
        cur = int(model.mult[cur, g])
    if len(ring) != 10:
        raise ClassifyError(f"generator has order {len(ring)}, wanted 10")
    return ring


def _orthogonal_ring(model: Model, ring: list[int]) -> list[int]:
    """The 10 vertices orthogonal to the plane of the given decagon,
    returned in cyclic (adjacency walk) order."""
    plane = model.coords[[ring[0], ring[1]]]
    inn = _inner_arr(model.coords[:, None, :, :], plane[None, :, :, :])
    ortho = np.nonzero((inn == 0).all(-1).all(-1))[0]
    if len(ortho) != 10:
        raise ClassifyError(f"orthogonal ring has {len(ortho)} vertices, wanted 10")
    members = set(int(v) for v in ortho)
    walk = [min(members)]
    while len(walk) < 10:
        here = walk[-1]
        nxt = [
            u
            for u in members
            if model.adj[here, u] and u not in walk
        ]
        if not nxt:
            raise ClassifyError("orthogonal ring is not a 10-cycle")
        walk.append(min(nxt))
    if not model.adj[walk[-1], walk[0]]:
        raise ClassifyError("orthogonal ring walk did not close")
    return walk


def named_cut(model: Model, name: str) -> tuple[int, ...]:
    """Constructions of the four named high-symmetry cuts.

    snub24      the inscribed 24-cell (unit-axis plus half-coordinate
                vertices); removing it leaves the snub 24-cell
    cross8      the 8 unit-axis vertices (a cross-polytope)
    cross16     the 16 half-coordinate vertices (two cross-polytopes)
    antiprism10 alternating 5+5 vertices of two orthogonal decagon rings;
                removing the full rings leaves the grand antiprism
    """
    if name == "cross8":
        members = _unit_axis_vertices(model)
    elif name == "cross16":
        members = _half_coordinate_vertices(model)
    elif name == "snub24":
        members = tuple(
            sorted(_unit_axis_vertices(model) + _half_coordinate_vertices(model))
        )
    elif name == "antiprism10":
        ring1 = _decagon_ring(model)
        ring2 = _orthogonal_ring(model, ring1)
        members = tuple(sorted(ring1[0::2] + ring2[0::2]))
    else:
        raise ClassifyError(f"unknown named cut {name!r}; choose from {NAMED_CUTS}")
    return gt.validate_cut(model, members)


def _power_maps(model: Model, e: int):
    p = model.perms
    p2 = np.take_along_axis(p, p, axis=1)
    if e == 2:
        powers = p2
    elif e == 3:
        powers = np.take_along_axis(p2, p, axis=1)
    elif e == 5:
        p4 = np.take_along_axis(p2, p2, axis=1)
        powers = np.take_along_axis(p4, p, axis=1)
    else:
        raise ValueError("only prime orders 2, 3, 5 supported")
    return powers


def _elements_of_prime_order(model: Model, e: int) -> np.ndarray:
    ident = np.arange(N_VERTICES, dtype=np.int8)
    pe = _power_maps(model, e)
    is_e = (pe == ident).all(axis=1)
    nontrivial = ~(model.perms == ident).all(axis=1)
    return np.nonzero(is_e & nontrivial)[0]


def _perm_cycles(p: np.ndarray) -> list[list[int]]:
    seen = [False] * N_VERTICES
    cycles = []
    for s in range(N_VERTICES):
        if seen[s]:
            continue
        cyc = []
        j = s
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = int(p[j])
        cycles.append(cyc)
    return cycles


_SYMMETRIC_CACHE: dict[tuple[str, int, int], tuple[int, ...]] = {}


def find_cut_with_symmetry(model: Model, size: int, stab_order: int) -> tuple[int, ...]:
    """Find a cut with the given size and stabilizer order.

    Searches cuts invariant under a cyclic subgroup of prime order dividing
    the target stabilizer order: such a subgroup exists in the stabilizer
    (Cauchy), and an invariant cut is a union of vertex cycles of the
    generator, so enumerating independent cycle unions in the quotient of
    every candidate subgroup is guaranteed to reach a representative.
    """
    key = (model.fingerprint, size, stab_order)
    if key in _SYMMETRIC_CACHE:
        return _SYMMETRIC_CACHE[key]
    primes = [e for e in (5, 3, 2) if stab_order % e == 0]
    if not primes:
        primes = [2]
    for e in primes:
        rows = _elements_of_prime_order(model, e)
        seen_subgroups: set[int] = set()
        for r in rows.tolist():
            if r in seen_subgroups:
                continue
            # mark the whole cyclic subgroup via row lookup of powers
            p = model.perms[r]
            q = p.copy()
            for _ in range(e - 1):
                ridx = _row_of(model, q)
                seen_subgroups.add(ridx)
                q = p[q]
            hit = _invariant_cut_search(model, p, size, stab_order)
            if hit is not None:
                _SYMMETRIC_CACHE[key] = hit
                return hit
    raise ClassifyError(f"no cut of size {size} with stabilizer order {stab_order} found")


def _row_of(model: Model, perm: np.ndarray) -> int:
    table = getattr(model, "_row_table", None)
    if table is None:
        table = {model.perms[i].tobytes(): i for i in range(GROUP_ORDER)}
        model._row_table = table
    return table[perm.astype(np.int8).tobytes()]


def _invariant_cut_search(model: Model, p: np.ndarray, size: int, stab_order: int):
    cycles = _perm_cycles(p)
    nodes = []
    for cyc in cycles:
        mask = 0
        nbr = 0
        for v in cyc:
            mask |= 1 << v
            nbr |= model.nbr_mask[v]
        if mask & nbr:
            continue  # cycle itself not independent
        nodes.append((len(cyc), mask, nbr))
    n = len(nodes)

    def dfs(i: int, remaining: int, mask: int, nbr: int):
        if remaining == 0:
            cut = tuple(_mask_bits(mask))
            if gt.stabilizer(model, cut).order == stab_order:
                return cut
            return None
        if i >= n:
            return None
        avail = sum(sz for sz, _, _ in nodes[i:])
        if avail < remaining:
            return None
        sz, cmask, cnbr = nodes[i]
        if sz <= remaining and not (cmask & nbr) and not (mask & cnbr):
            hit = dfs(i + 1, remaining - sz, mask | cmask, nbr | cnbr)
            if hit is not None:
                return hit
        return dfs(i + 1, remaining, mask, nbr)

    return dfs(0, size, 0, 0)


def _mask_bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
