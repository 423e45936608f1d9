"""Orbit, stabilizer and lexicographic-minimality services for vertex sets.

All operations act on the fixed 14,400-element group of a built
:class:`cut600.model.Model`.  Cuts are strictly increasing tuples of vertex
indices that are pairwise non-adjacent.

The minimality test and minimal image are exact but pruned: any nonempty
orbit contains an image through vertex 0 (the group is vertex-transitive),
so the lexicographically smallest sorted image always starts with 0 and only
group elements mapping some member of the cut onto 0 can produce it.  Those
rows are precomputed per vertex in ``model.rmz``, shrinking the scan from
14,400 elements to ``120 * |cut|``.  Tests compare against the unpruned
full-group scan.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import GROUP_ORDER, Model, N_VERTICES

MAX_CUT_SIZE = 24


class CutError(ValueError):
    """Input vertex set is not a valid cut."""


def validate_cut(model: Model, members) -> tuple[int, ...]:
    """Normalize and check a cut: sorted, distinct, independent, size <= 24.

    Raises CutError naming the first offending adjacent pair.
    """
    cut = tuple(int(v) for v in members)
    if any(v < 0 or v >= N_VERTICES for v in cut):
        raise CutError(f"vertex index out of range in {cut}")
    if len(set(cut)) != len(cut):
        raise CutError("duplicate vertex in cut")
    if list(cut) != sorted(cut):
        raise CutError("cut members must be strictly increasing")
    if len(cut) > MAX_CUT_SIZE:
        raise CutError(f"cut size {len(cut)} exceeds the independence bound 24")
    for i, u in enumerate(cut):
        for v in cut[i + 1 :]:
            if model.adj[u, v]:
                raise CutError(f"vertices {u} and {v} are adjacent")
    return cut


@dataclass(frozen=True)
class SetStabilizer:
    """Setwise stabilizer of a cut, as explicit row indices into the group."""

    rows: np.ndarray  # sorted row indices into model.perms

    @property
    def order(self) -> int:
        return len(self.rows)

    def perms(self, model: Model) -> np.ndarray:
        return model.perms[self.rows]


def _sorted_images(model: Model, cut: tuple[int, ...], rows=None) -> np.ndarray:
    sel = model.perms[:, cut] if rows is None else model.perms[rows][:, cut]
    return np.sort(sel, axis=1)


def orbit_size(model: Model, cut) -> int:
    """Number of distinct images of the cut over the whole group."""
    cut = tuple(cut)
    if not cut:
        return 1
    imgs = _sorted_images(model, cut)
    packed = np.ascontiguousarray(imgs).view(np.dtype((np.void, len(cut)))).ravel()
    return len(np.unique(packed))


def stabilizer(model: Model, cut) -> SetStabilizer:
    """All group elements fixing the cut setwise (full-group scan)."""
    cut = tuple(cut)
    if not cut:
        return SetStabilizer(rows=np.arange(GROUP_ORDER))
    imgs = _sorted_images(model, cut)
    target = np.asarray(cut, dtype=np.int8)
    rows = np.nonzero((imgs == target).all(axis=1))[0]
    return SetStabilizer(rows=rows)


def _pruned_rows(model: Model, cut: tuple[int, ...]) -> np.ndarray:
    return model.rmz[list(cut)].reshape(-1)


def _lex_scan(model: Model, cut: tuple[int, ...]):
    """(is_lex_min, stabilizer_rows) in one pruned pass.

    The stabilizer rows are only meaningful when the cut is lex-minimal
    (then its first member is 0 and every stabilizing element maps some
    member to 0, so the pruned row set contains the whole stabilizer).
    """
    k = len(cut)
    if k == 0:
        return True, np.arange(GROUP_ORDER)
    rows = _pruned_rows(model, cut)
    imgs = np.sort(model.perms[rows][:, cut], axis=1)
    target = np.asarray(cut, dtype=np.int8)
    undecided = np.ones(len(rows), dtype=bool)
    for j in range(k):
        col = imgs[:, j]
        if (undecided & (col < target[j])).any():
            return False, rows[:0]
        undecided &= col == target[j]
    return True, rows[undecided]


def is_lex_min(model: Model, cut) -> bool:
    """True iff no group image of the cut sorts lexicographically smaller."""
    ok, _ = _lex_scan(model, tuple(cut))
    return ok


def canonical_stabilizer(model: Model, cut) -> SetStabilizer:
    """Stabilizer via the pruned scan; requires a lex-minimal cut."""
    cut = tuple(cut)
    ok, rows = _lex_scan(model, cut)
    if not ok:
        raise CutError(f"{cut} is not the lex-min representative of its orbit")
    return SetStabilizer(rows=np.sort(rows))


def min_image(model: Model, cut) -> tuple[int, ...]:
    """Lexicographically smallest sorted image over the group.

    Idempotent and constant on orbits; the canonical orbit key.
    """
    cut = tuple(cut)
    if not cut:
        return ()
    rows = _pruned_rows(model, cut)
    imgs = np.sort(model.perms[rows][:, cut], axis=1)
    keep = np.arange(len(imgs))
    for j in range(len(cut)):
        col = imgs[keep, j]
        keep = keep[col == col.min()]
    return tuple(int(t) for t in imgs[keep[0]])


def min_image_full_scan(model: Model, cut) -> tuple[int, ...]:
    """Unpruned reference: minimum over all 14,400 sorted images."""
    cut = tuple(cut)
    if not cut:
        return ()
    imgs = _sorted_images(model, cut)
    keep = np.arange(len(imgs))
    for j in range(len(cut)):
        col = imgs[keep, j]
        keep = keep[col == col.min()]
    return tuple(int(t) for t in imgs[keep[0]])


_PACK_LIMIT = 8  # one byte lane per index; codes stay exact in int64


def pack_sets(sets: np.ndarray) -> np.ndarray:
    """Encode sorted index rows as single int64 keys (width <= 8).

    Indices occupy byte lanes, first index most significant, so integer
    order of the codes equals lexicographic order of the rows.
    """
    k = sets.shape[-1]
    if k > _PACK_LIMIT:
        raise ValueError(f"cannot pack {k} > {_PACK_LIMIT} indices into int64")
    buf = np.zeros(sets.shape[:-1] + (8,), dtype=np.int8)
    buf[..., :k] = sets[..., ::-1]  # little-endian: first index in highest used byte
    return buf.view(np.int64)[..., 0]


def unpack_sets(codes: np.ndarray, k: int) -> np.ndarray:
    cols = [(codes >> (8 * (k - 1 - j))) & 0xFF for j in range(k)]
    return np.stack(cols, axis=-1).astype(np.int8)


def min_image_batch(
    model: Model, sets: np.ndarray, restrict: bool = True
) -> np.ndarray:
    """Packed canonical code of every row of ``sets`` (shape (B, k)).

    With ``restrict`` the scan keeps only group elements mapping a member to
    vertex 0 (exact, see module docstring); without it the full group is
    scanned, which is the independent reference used in tests.
    """
    sets = np.asarray(sets, dtype=np.int32)
    b, k = sets.shape
    if k == 0:
        return np.zeros(b, dtype=np.int64)
    flat = model.perms.ravel()
    if restrict:
        base = model.rmz[sets].reshape(b, -1) * N_VERTICES  # (B, 120k)
        imgs = np.empty(base.shape + (k,), dtype=np.int8)
        for j in range(k):
            imgs[:, :, j] = flat.take(base + sets[:, j, None])
    else:
        imgs = model.perms[:, sets].transpose(1, 0, 2)  # (B, 14400, k)
    imgs.sort(axis=2)
    codes = pack_sets(imgs)
    return codes.min(axis=1)


def compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Permutation composition: apply q, then p."""
    return p[q]


def invert(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p), dtype=p.dtype)
    return inv
