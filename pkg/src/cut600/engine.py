"""Orderly enumeration of independent-set orbits by canonical augmentation.

The traversal visits exactly the lexicographically minimal representative of
every orbit: a node ``S`` (itself lex-min) is extended by every vertex
``v > max(S)`` that is non-adjacent to ``S``, and the child survives iff
``S + (v,)`` is again lex-min.  Lex-minimality of a child is decided by the
same pruned scan as :func:`cut600.grouptools.is_lex_min`, but batched over
all candidates of a node in one vectorized pass which also yields each
surviving child's stabilizer order for free.

Subtrees below the canonical cuts of size ``root_depth`` are independent
work units (prefixes of lex-min sets are lex-min), which is what the
parallel mode and the checkpoint format rely on: a checkpoint records the
accumulated counts of completed subtrees plus the frontier of pending
roots, so an interrupted run resumes without recounting anything.

Counters are plain Python integers, so they cannot saturate at any scale
reached here.
"""

from __future__ import annotations

import os
import sys
import time
from dataclasses import dataclass, replace

import numpy as np

from .grouptools import _lex_scan
from .model import FULL_MASK, GROUP_ORDER, Model, N_VERTICES

CHECKPOINT_MAGIC = "cut600-checkpoint v1"


class CheckpointMismatch(Exception):
    """Checkpoint was written by a different model or configuration."""


class EnumerationInterrupted(Exception):
    """Budget or deadline hit; a resumable checkpoint is on disk if configured."""

    def __init__(self, message: str, table: "CountTable"):
        super().__init__(message)
        self.table = table


class _SubtreeAborted(Exception):
    pass


@dataclass(frozen=True)
class EnumConfig:
    min_size: int = 1
    max_size: int = 24
    maximal_only: bool = False
    subtree_filter: tuple[tuple[int, ...], ...] | None = None
    root_depth: int = 2
    checkpoint_path: str | None = None
    checkpoint_interval: int = 1_000_000  # nodes between checkpoint writes
    workers: int = 1
    node_budget: int | None = None
    wall_limit_seconds: float | None = None
    progress_interval: int | None = None  # nodes between stderr heartbeats

    def __post_init__(self):
        if not (0 <= self.min_size <= self.max_size <= 24):
            raise ValueError("need 0 <= min_size <= max_size <= 24")
        if not (1 <= self.root_depth <= 4):
            raise ValueError("root_depth must be in 1..4")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.subtree_filter is not None and self.checkpoint_path is not None:
            raise ValueError("subtree_filter and checkpointing are exclusive")


class CountTable:
    """Orbit counts keyed by (cut size, stabilizer order)."""

    def __init__(self):
        self.counts: dict[tuple[int, int], int] = {}
        self.nodes = 0
        self.complete = False

    def add(self, size: int, stab_order: int, n: int = 1) -> None:
        key = (size, stab_order)
        self.counts[key] = self.counts.get(key, 0) + n

    def merge(self, other: dict[tuple[int, int], int]) -> None:
        for key, n in other.items():
            self.counts[key] = self.counts.get(key, 0) + n

    def row(self, size: int) -> dict[int, int]:
        return {s: n for (sz, s), n in self.counts.items() if sz == size}

    def rows(self) -> list[tuple[int, int, int]]:
        return [(sz, s, n) for (sz, s), n in sorted(self.counts.items())]

    def total(self) -> int:
        return sum(self.counts.values())

    def labeled_count(self, size: int) -> int:
        """Number of labeled sets of this size, via orbit-stabilizer.

        Each orbit of stabilizer order s contributes 14400/s labeled sets;
        a non-dividing stabilizer order means the table is corrupted.
        """
        total = 0
        for stab_order, n in self.row(size).items():
            if GROUP_ORDER % stab_order:
                raise ValueError(f"stabilizer order {stab_order} does not divide 14400")
            total += n * (GROUP_ORDER // stab_order)
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, CountTable):
            return NotImplemented
        return self.counts == other.counts

    def __repr__(self) -> str:
        return f"CountTable(orbits={self.total()}, nodes={self.nodes}, complete={self.complete})"


def _candidate_array(mask: int) -> np.ndarray:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return np.array(out, dtype=np.int16)


def _test_children(model: Model, s: tuple[int, ...], rows: np.ndarray, cands: np.ndarray):
    """Batched lex-min test for all children S+(v), v over cands.

    Returns (keep, stab) where keep[i] says the i-th child is canonical and
    stab[i] is its setwise stabilizer order (valid where keep).
    """
    k = len(s)
    c = len(cands)
    k1 = k + 1
    rmzc = model.rmz[cands]  # (C, 120)
    extra = np.empty((c, N_VERTICES, k1), dtype=np.int8)
    if k:
        s_arr = np.asarray(s, dtype=np.int16)
        extra[:, :, :k] = model.perms[rmzc[:, :, None], s_arr[None, None, :]]
    extra[:, :, k] = model.perms[rmzc, cands[:, None]]
    if k:
        shared_s = model.perms[rows][:, s_arr]  # (Rk, k)
        shared_v = model.perms[np.ix_(rows, cands)]  # (Rk, C)
        head = np.empty((c, len(rows), k1), dtype=np.int8)
        head[:, :, :k] = shared_s[None, :, :]
        head[:, :, k] = shared_v.T
        full = np.concatenate([head, extra], axis=1)
    else:
        full = extra
    full.sort(axis=2)
    targets = np.empty((c, k1), dtype=np.int8)
    if k:
        targets[:, :k] = s_arr
    targets[:, k] = cands
    undecided = np.ones(full.shape[:2], dtype=bool)
    smaller = np.zeros(c, dtype=bool)
    for j in range(k1):
        col = full[:, :, j]
        tj = targets[:, j][:, None]
        smaller |= (undecided & (col < tj)).any(axis=1)
        undecided &= col == tj
    return ~smaller, undecided.sum(axis=1)


def _root_state(model: Model, root: tuple[int, ...]):
    rows = model.rmz[list(root)].reshape(-1)
    cand = FULL_MASK
    cover = 0
    for v in root:
        cand &= ~model.nbr_mask[v] & model.above_mask[v]
        cover |= model.nbr_mask[v] | (1 << v)
    return rows, cand, cover


class _Budget:
    """Node counter with optional hard cap and wall deadline."""

    def __init__(self, limit: int | None, deadline: float | None, progress: int | None, label: str = ""):
        self.used = 0
        self.limit = limit
        self.deadline = deadline
        self.progress = progress
        self.label = label

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.progress and self.used % self.progress < n:
            print(f"[cut600] nodes={self.used} {self.label}", file=sys.stderr, flush=True)
        if self.limit is not None and self.used >= self.limit:
            raise _SubtreeAborted("node budget exhausted")
        if self.deadline is not None and self.used % 4096 < n and time.monotonic() >= self.deadline:
            raise _SubtreeAborted("wall limit exceeded")


def _expand_root(model: Model, root: tuple[int, ...], cfg: EnumConfig, visitor, budget: _Budget):
    """Count the subtree rooted at a canonical cut; includes the root itself."""
    counts: dict[tuple[int, int], int] = {}
    min_size, max_size = cfg.min_size, cfg.max_size
    maximal_only = cfg.maximal_only

    def tally(cut, stab_order, cover):
        size = len(cut)
        if size < min_size:
            return
        if maximal_only and cover != FULL_MASK:
            return
        key = (size, stab_order)
        counts[key] = counts.get(key, 0) + 1
        if visitor is not None:
            visitor(cut, stab_order)

    rows, cand, cover = _root_state(model, root)
    ok, stab_rows = _lex_scan(model, root)
    if not ok:
        raise ValueError(f"root {root} is not canonical")
    budget.tick()
    tally(root, len(stab_rows), cover)
    if len(root) >= max_size:
        return counts, budget.used
    stack = [(root, rows, cand, cover)]
    while stack:
        s, rows, cand, cover = stack.pop()
        cands = _candidate_array(cand)
        if not len(cands):
            continue
        keep, stab = _test_children(model, s, rows, cands)
        kept = np.nonzero(keep)[0]
        budget.tick(len(kept))
        expand = len(s) + 1 < max_size
        for i in kept:
            v = int(cands[i])
            child = s + (v,)
            child_cover = cover | model.nbr_mask[v] | (1 << v)
            tally(child, int(stab[i]), child_cover)
            if expand:
                child_cand = cand & ~model.nbr_mask[v] & model.above_mask[v]
                if child_cand:
                    child_rows = np.concatenate([rows, model.rmz[v]])
                    stack.append((child, child_rows, child_cand, child_cover))
    return counts, budget.used


def _forest(model: Model, cfg: EnumConfig, visitor):
    """Canonical cuts below root_depth (counted now) and the subtree roots."""
    prelude = CountTable()
    if cfg.min_size == 0 and not cfg.maximal_only:
        prelude.add(0, GROUP_ORDER)
        if visitor is not None:
            visitor((), GROUP_ORDER)
    depth_cap = min(cfg.root_depth, cfg.max_size)
    roots: list[tuple[int, ...]] = []
    level: list[tuple[tuple[int, ...], int, int]] = [((), FULL_MASK, 0)]
    for depth in range(1, depth_cap + 1):
        nxt = []
        is_root_level = depth == cfg.root_depth and cfg.max_size > cfg.root_depth
        for s, cand, cover in level:
            cands = _candidate_array(cand)
            if not len(cands):
                continue
            rows = (
                model.rmz[list(s)].reshape(-1)
                if s
                else np.empty(0, dtype=np.int32)
            )
            keep, stab = _test_children(model, s, rows, cands)
            for i in np.nonzero(keep)[0]:
                v = int(cands[i])
                child = s + (v,)
                child_cand = cand & ~model.nbr_mask[v] & model.above_mask[v]
                child_cover = cover | model.nbr_mask[v] | (1 << v)
                if is_root_level:
                    roots.append(child)
                else:
                    prelude.nodes += 1
                    if len(child) >= cfg.min_size and (
                        not cfg.maximal_only or child_cover == FULL_MASK
                    ):
                        prelude.add(len(child), int(stab[i]))
                        if visitor is not None:
                            visitor(child, int(stab[i]))
                    nxt.append((child, child_cand, child_cover))
        level = nxt
    if cfg.subtree_filter is not None:
        wanted = {tuple(p) for p in cfg.subtree_filter}
        roots = [r for r in roots if r in wanted]
    return prelude, roots


def _checkpoint_lines(fingerprint, cfg, table, pending):
    lines = [
        CHECKPOINT_MAGIC,
        f"fingerprint {fingerprint}",
        "config min_size=%d max_size=%d maximal_only=%d root_depth=%d"
        % (cfg.min_size, cfg.max_size, int(cfg.maximal_only), cfg.root_depth),
        f"nodes {table.nodes}",
    ]
    for size, stab, n in table.rows():
        lines.append(f"count {size} {stab} {n}")
    for root in pending:
        lines.append("pending " + ",".join(str(v) for v in root))
    lines.append("end")
    return "\n".join(lines) + "\n"


def write_checkpoint(path, fingerprint, cfg, table, pending) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(_checkpoint_lines(fingerprint, cfg, table, pending))
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def read_checkpoint(path, model: Model):
    """Parse and validate; returns (cfg_fields, table, pending roots)."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0] != CHECKPOINT_MAGIC:
        raise CheckpointMismatch("not a cut600 checkpoint (bad magic line)")
    if lines[-1] != "end":
        raise CheckpointMismatch("truncated checkpoint (missing end marker)")
    fields: dict[str, int] = {}
    table = CountTable()
    pending: list[tuple[int, ...]] = []
    for ln in lines[1:-1]:
        tag, _, rest = ln.partition(" ")
        if tag == "fingerprint":
            if rest != model.fingerprint:
                raise CheckpointMismatch(
                    "checkpoint fingerprint does not match this model"
                )
            fields["fingerprint_ok"] = 1
        elif tag == "config":
            for item in rest.split():
                key, _, val = item.partition("=")
                fields[key] = int(val)
        elif tag == "nodes":
            table.nodes = int(rest)
        elif tag == "count":
            size, stab, n = (int(t) for t in rest.split())
            table.add(size, stab, n)
        elif tag == "pending":
            pending.append(tuple(int(t) for t in rest.split(",")))
        else:
            raise CheckpointMismatch(f"unknown checkpoint line: {ln!r}")
    if "fingerprint_ok" not in fields:
        raise CheckpointMismatch("checkpoint has no fingerprint")
    for key in ("min_size", "max_size", "maximal_only", "root_depth"):
        if key not in fields:
            raise CheckpointMismatch(f"checkpoint config missing {key}")
    return fields, table, pending


# Globals inherited by forked workers; set immediately before Pool creation.
_WORK: dict = {}


def _pool_task(root):
    model = _WORK["model"]
    cfg = _WORK["cfg"]
    budget = _Budget(None, _WORK["deadline"], cfg.progress_interval, label=f"root={root}")
    counts, nodes = _expand_root(model, root, cfg, _WORK["visitor"], budget)
    return root, counts, nodes


def _run_roots(model, cfg, visitor, table, pending, deadline):
    """Process pending roots, merging counts; honors budget and deadline.

    Returns the list of roots still pending (empty on full completion).
    """
    pending = list(pending)
    done_since_write = 0

    def maybe_checkpoint(force=False):
        nonlocal done_since_write
        if cfg.checkpoint_path is None:
            return
        if force or done_since_write >= cfg.checkpoint_interval:
            write_checkpoint(cfg.checkpoint_path, model.fingerprint, cfg, table, pending)
            done_since_write = 0

    maybe_checkpoint(force=True)
    if cfg.workers == 1:
        while pending:
            root = pending[0]
            remaining = None
            if cfg.node_budget is not None:
                remaining = cfg.node_budget - table.nodes
                if remaining <= 0:
                    maybe_checkpoint(force=True)
                    raise EnumerationInterrupted("node budget exhausted", table)
            budget = _Budget(remaining, deadline, cfg.progress_interval, label=f"root={root}")
            try:
                counts, nodes = _expand_root(model, root, cfg, visitor, budget)
            except _SubtreeAborted as exc:
                maybe_checkpoint(force=True)
                raise EnumerationInterrupted(str(exc), table) from None
            table.merge(counts)
            table.nodes += nodes
            done_since_write += nodes
            pending.pop(0)
            maybe_checkpoint()
        maybe_checkpoint(force=True)
        return []

    import multiprocessing as mp

    ctx = mp.get_context("fork")
    _WORK.update(model=model, cfg=cfg, visitor=visitor, deadline=deadline)
    pending_set = set(pending)
    try:
        with ctx.Pool(processes=cfg.workers) as pool:
            try:
                for root, counts, nodes in pool.imap_unordered(_pool_task, list(pending)):
                    table.merge(counts)
                    table.nodes += nodes
                    pending_set.discard(root)
                    pending = [r for r in pending if r in pending_set]
                    done_since_write += nodes
                    maybe_checkpoint()
                    if cfg.node_budget is not None and table.nodes >= cfg.node_budget:
                        raise _SubtreeAborted("node budget exhausted")
            except _SubtreeAborted as exc:
                pool.terminate()
                maybe_checkpoint(force=True)
                raise EnumerationInterrupted(str(exc), table) from None
    finally:
        _WORK.clear()
    maybe_checkpoint(force=True)
    return pending


def enumerate_cuts(model: Model, cfg: EnumConfig, visitor=None) -> CountTable:
    """Visit one lex-min representative per orbit; return exact counts.

    The visitor, when given, is called as ``visitor(cut, stab_order)`` for
    every counted representative.  With ``workers > 1`` visitors run inside
    worker processes, so their side effects stay in those processes; counts
    are unaffected.  Raises EnumerationInterrupted when a node budget or
    wall limit stops the run early (resumable via the checkpoint, if one was
    configured).
    """
    deadline = (
        time.monotonic() + cfg.wall_limit_seconds
        if cfg.wall_limit_seconds is not None
        else None
    )
    table, roots = _forest(model, cfg, visitor)
    left = _run_roots(model, cfg, visitor, table, roots, deadline)
    table.complete = not left
    return table


def resume(
    model: Model,
    checkpoint_path: str,
    workers: int | None = None,
    visitor=None,
    wall_limit_seconds: float | None = None,
    node_budget: int | None = None,
    progress_interval: int | None = None,
    checkpoint_interval: int = 1_000_000,
) -> CountTable:
    """Continue an interrupted run from its checkpoint.

    The resumed configuration (sizes, maximal flag, root depth) comes from
    the checkpoint; runtime knobs (workers, limits, progress) are fresh per
    invocation.  A checkpoint whose fingerprint does not match the model is
    rejected.  Resuming a completed checkpoint visits nothing and returns
    the final table.
    """
    fields, table, pending = read_checkpoint(checkpoint_path, model)
    cfg = EnumConfig(
        min_size=fields["min_size"],
        max_size=fields["max_size"],
        maximal_only=bool(fields["maximal_only"]),
        root_depth=fields["root_depth"],
        checkpoint_path=checkpoint_path,
        checkpoint_interval=checkpoint_interval,
        workers=workers or 1,
        node_budget=(table.nodes + node_budget) if node_budget is not None else None,
        progress_interval=progress_interval,
    )
    deadline = (
        time.monotonic() + wall_limit_seconds if wall_limit_seconds is not None else None
    )
    left = _run_roots(model, cfg, visitor, table, pending, deadline)
    table.complete = not left
    return table
