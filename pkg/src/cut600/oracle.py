"""Independent second enumeration method for cross-checking the engine.

Deliberately shares no search logic with :mod:`cut600.engine`: every labeled
independent set up to ``k_max`` is generated by plain level-by-level
expansion with no canonicity pruning, then deduplicated by its canonical
minimal image.  Orbit counts, stabilizer orders and labeled totals all come
out of this side independently, so agreement with the orderly engine is a
meaningful dual-method check rather than a tautology.

The memory guard caps ``k_max`` at 5: level 5 already holds ~6.1e7 labeled
sets (streamed in chunks, never materialized), and level 6 would be an
order of magnitude beyond desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import grouptools as gt
from .model import FULL_MASK, GROUP_ORDER, Model, N_VERTICES

K_MAX_GUARD = 5


@dataclass
class OrbitLedger:
    """Canonical representatives with stabilizer orders, per size."""

    k_max: int
    orbits: dict[int, dict[tuple[int, ...], int]] = field(default_factory=dict)
    labeled_totals: dict[int, int] = field(default_factory=dict)

    def histogram(self, size: int) -> dict[int, int]:
        hist: dict[int, int] = {}
        for stab in self.orbits.get(size, {}).values():
            hist[stab] = hist.get(stab, 0) + 1
        return hist

    def orbit_count(self, size: int) -> int:
        return len(self.orbits.get(size, {}))

    def reps(self, size: int) -> list[tuple[int, ...]]:
        return sorted(self.orbits.get(size, {}))


def _pack_mask(mask: int) -> tuple[int, int]:
    return mask & 0xFFFFFFFFFFFFFFFF, mask >> 64


def _expand(sets: np.ndarray, masks: np.ndarray, cand_packed: np.ndarray):
    """All one-vertex extensions of the given labeled sets.

    ``masks`` holds each set's remaining candidates (non-adjacent, above the
    maximum) as two uint64 words; extensions are emitted in (parent, vertex)
    order, so the overall stream is deterministic.
    """
    shifts = np.arange(64, dtype=np.uint64)
    lo = (masks[:, 0, None] >> shifts) & 1
    hi = (masks[:, 1, None] >> shifts) & 1
    bits = np.concatenate([lo, hi], axis=1).astype(bool)[:, :N_VERTICES]
    rows, cols = np.nonzero(bits)
    new_sets = np.concatenate(
        [sets[rows], cols[:, None].astype(np.int8)], axis=1
    )
    new_masks = masks[rows] & cand_packed[cols]
    return new_sets, new_masks


def brute_force_orbits(
    model: Model, k_max: int = 4, batch: int = 4096, parent_chunk: int = 8192
) -> OrbitLedger:
    """Enumerate all labeled independent sets of size <= k_max and reduce
    them to orbits via canonical minimal images.

    Per size, the ledger records every canonical representative, its
    stabilizer order (computed by a full-group scan, not taken from the
    labeled multiplicity), and the directly counted number of labeled sets.
    The orbit-stabilizer identity ``multiplicity * stabilizer == 14400`` is
    asserted for every orbit before anything is returned.
    """
    if not (1 <= k_max <= K_MAX_GUARD):
        raise ValueError(f"k_max must be in 1..{K_MAX_GUARD} (resource guard)")
    cand_packed = np.array(
        [
            _pack_mask(model.above_mask[v] & ~model.nbr_mask[v] & FULL_MASK)
            for v in range(N_VERTICES)
        ],
        dtype=np.uint64,
    )
    ledger = OrbitLedger(k_max=k_max)
    code_counts: dict[int, dict[int, int]] = {k: {} for k in range(1, k_max + 1)}
    labeled: dict[int, int] = {k: 0 for k in range(1, k_max + 1)}

    def absorb(size: int, sets: np.ndarray) -> None:
        labeled[size] += len(sets)
        store = code_counts[size]
        for lo in range(0, len(sets), batch):
            codes = gt.min_image_batch(model, sets[lo : lo + batch])
            vals, cnts = np.unique(codes, return_counts=True)
            for v, c in zip(vals.tolist(), cnts.tolist()):
                store[v] = store.get(v, 0) + c

    sets = np.arange(N_VERTICES, dtype=np.int8)[:, None]
    masks = cand_packed.copy()
    absorb(1, sets)
    for size in range(2, k_max + 1):
        is_last = size == k_max
        out_sets = [] if not is_last else None
        out_masks = [] if not is_last else None
        for lo in range(0, len(sets), parent_chunk):
            child_sets, child_masks = _expand(
                sets[lo : lo + parent_chunk],
                masks[lo : lo + parent_chunk],
                cand_packed,
            )
            absorb(size, child_sets)
            if not is_last:
                out_sets.append(child_sets)
                out_masks.append(child_masks)
        if not is_last:
            sets = np.concatenate(out_sets)
            masks = np.concatenate(out_masks)

    for size in range(1, k_max + 1):
        ledger.labeled_totals[size] = labeled[size]
        reps: dict[tuple[int, ...], int] = {}
        for code, multiplicity in sorted(code_counts[size].items()):
            rep = tuple(int(t) for t in gt.unpack_sets(np.int64(code), size))
            stab = gt.stabilizer(model, rep).order
            if multiplicity * stab != GROUP_ORDER:
                raise AssertionError(
                    f"orbit-stabilizer failure at {rep}: "
                    f"{multiplicity} * {stab} != {GROUP_ORDER}"
                )
            reps[rep] = stab
        ledger.orbits[size] = reps
        if sum(code_counts[size].values()) != labeled[size]:
            raise AssertionError(f"labeled sets lost during dedup at size {size}")
    return ledger


@dataclass
class AgreementReport:
    ok: bool
    diff: list[str]

    def __bool__(self) -> bool:
        return self.ok


def agree(ledger: OrbitLedger, table, k_max: int | None = None) -> AgreementReport:
    """Exact per-(size, stabilizer order) comparison of the two methods."""
    k_max = ledger.k_max if k_max is None else k_max
    diff: list[str] = []
    for size in range(1, k_max + 1):
        mine = ledger.histogram(size)
        theirs = table.row(size)
        for stab in sorted(set(mine) | set(theirs)):
            a, b = mine.get(stab, 0), theirs.get(stab, 0)
            if a != b:
                diff.append(f"size={size} stab={stab}: oracle={a} engine={b}")
    return AgreementReport(ok=not diff, diff=diff)
