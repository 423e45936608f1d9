"""Command-line surface.

Subcommands:

* ``verify-model``  build the 600-cell model and assert its invariants
* ``export-model``  deterministic text dump (vertices, edges, cells, group)
* ``enumerate``     orderly enumeration with optional checkpoint/resume
* ``check``         dual-method (engine vs brute-force) agreement + fixtures
* ``classify``      full analytics report for one cut
* ``tables``        regenerate a fixture table and diff it cell by cell

Exit codes: 0 success, 1 verification failure or disagreement, 2 usage
error, 3 checkpoint mismatch, 4 budget exhausted (resumable state written).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import classify as cl
from . import engine, oracle, tables
from . import grouptools as gt
from .model import Model, ModelError, automorphism_upper_bound, export_model_text, verify_model

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_CKPT_MISMATCH = 3
EXIT_BUDGET = 4


def _write_counts_csv(table: engine.CountTable, out) -> None:
    out.write("size,stab_order,count\n")
    for size, stab, n in table.rows():
        out.write(f"{size},{stab},{n}\n")
    out.write(f"total,,{table.total()}\n")


def _open_out(path: str | None):
    return open(path, "w") if path else sys.stdout


def cmd_verify_model(args) -> int:
    model = Model.build()
    if args.selftest_corrupt:
        # negative-test hook: flip one adjacency bit and re-verify
        model.adj[0, 1] = model.adj[1, 0] = not model.adj[0, 1]
    try:
        summary = verify_model(model)
    except ModelError as exc:
        print(f"model verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    line = " ".join(f"{k}={v}" for k, v in summary.items())
    if args.automorphism_bound:
        bound = automorphism_upper_bound(model)
        if bound != len(model.perms):
            print(f"automorphism bound {bound} exceeds group order", file=sys.stderr)
            return EXIT_FAIL
        line += f" automorphism_bound={bound}"
    print(line)
    return EXIT_OK


def cmd_export_model(args) -> int:
    model = Model.build()
    text = export_model_text(model, include_group=not args.skip_group)
    with _open_out(args.out) as fh:
        fh.write(text)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    model = Model.build()
    prefixes = None
    if args.prefix:
        prefixes = tuple(
            tuple(int(t) for t in p.split(",")) for p in args.prefix
        )
    try:
        if args.resume:
            if not args.checkpoint:
                print("--resume requires --checkpoint", file=sys.stderr)
                return EXIT_USAGE
            table = engine.resume(
                model,
                args.checkpoint,
                workers=args.workers,
                wall_limit_seconds=args.wall_limit,
                progress_interval=args.progress,
                checkpoint_interval=args.checkpoint_interval,
            )
        else:
            cfg = engine.EnumConfig(
                min_size=args.min_size,
                max_size=args.max_size,
                maximal_only=args.maximal_only,
                subtree_filter=prefixes,
                root_depth=args.root_depth,
                checkpoint_path=args.checkpoint,
                checkpoint_interval=args.checkpoint_interval,
                workers=args.workers,
                wall_limit_seconds=args.wall_limit,
                progress_interval=args.progress,
            )
            table = engine.enumerate_cuts(model, cfg)
    except engine.CheckpointMismatch as exc:
        print(f"checkpoint rejected: {exc}", file=sys.stderr)
        return EXIT_CKPT_MISMATCH
    except engine.EnumerationInterrupted as exc:
        print(f"stopped early: {exc}", file=sys.stderr)
        if args.checkpoint:
            print(f"resumable checkpoint: {args.checkpoint}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with _open_out(args.out) as fh:
        _write_counts_csv(table, fh)
    return EXIT_OK


def cmd_check(args) -> int:
    model = Model.build()
    try:
        ledger = oracle.brute_force_orbits(model, k_max=args.kmax)
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE
    table = engine.enumerate_cuts(model, engine.EnumConfig(max_size=args.kmax))
    if args.selftest_inject_diff:
        table.add(1, 120, 1)  # negative-test hook: corrupt one cell
    report = oracle.agree(ledger, table)
    fixture_diff = tables.diff_against_fixture(table.counts, range(1, args.kmax + 1))
    for size in range(1, args.kmax + 1):
        print(
            f"size {size}: engine={sum(table.row(size).values())} "
            f"oracle={ledger.orbit_count(size)} labeled={ledger.labeled_totals[size]}"
        )
    if report.ok and not fixture_diff:
        print(f"methods agree and match the fixture through size {args.kmax}")
        return EXIT_OK
    for line in report.diff:
        print("method diff: " + line)
    for line in fixture_diff:
        print("fixture diff: " + line)
    return EXIT_FAIL


def _human_report(report: cl.CutReport) -> str:
    lines = [
        f"members      {','.join(str(v) for v in report.members)}",
        f"size         {report.size}",
        f"stabilizer   {report.stabilizer_order}",
        f"maximal      {'yes' if report.maximal else 'no'}",
        f"connected    {'yes' if report.simplex_graph_connected else 'no'}"
        f" ({report.simplex_components} components)",
        "vertex orbits:",
    ]
    for p in report.vertex_orbits:
        lines.append(
            f"  size {p.size:>3}  type {p.local_type.label:>3}  "
            f"vertex-stab {p.vertex_stabilizer_order:>3}  {p.point_group}"
        )
    return "\n".join(lines)


def cmd_classify(args) -> int:
    model = Model.build()
    try:
        if args.named:
            cut = cl.named_cut(model, args.named)
        else:
            members = [int(t) for t in args.cut.split(",")]
            cut = gt.validate_cut(model, members)
    except (gt.CutError, cl.ClassifyError, ValueError) as exc:
        print(f"invalid cut: {exc}", file=sys.stderr)
        return EXIT_FAIL
    report = cl.classify(model, cut)
    print(_human_report(report))
    print(json.dumps(report.to_dict(), separators=(",", ":")))
    return EXIT_OK


def cmd_tables(args) -> int:
    model = Model.build()
    if args.which == 3:
        rows = []
        ok = True
        for want in tables.HIGH_SYMMETRY:
            if (want.size, want.group_order) == (24, 576):
                cut = cl.named_cut(model, "snub24")
            elif (want.size, want.group_order) == (8, 192):
                cut = cl.named_cut(model, "cross8")
            elif (want.size, want.group_order) == (16, 192):
                cut = cl.named_cut(model, "cross16")
            elif (want.size, want.group_order) == (10, 100):
                cut = cl.named_cut(model, "antiprism10")
            else:
                cut = cl.find_cut_with_symmetry(model, want.size, want.group_order)
            rep = cl.classify(model, cut)
            got = frozenset(
                (p.size, p.local_type.label, p.point_group) for p in rep.vertex_orbits
            )
            match = (
                rep.stabilizer_order == want.group_order
                and rep.maximal == want.maximal
                and rep.simplex_graph_connected == want.connected
                and got == want.orbits
            )
            ok &= match
            rows.append(rep.to_csv_row() + ("" if match else "  # MISMATCH"))
        print("size,stab_order,maximal,connected,orbits")
        for row in rows:
            print(row)
        print("table 3: %s" % ("zero diff" if ok else "MISMATCH"))
        return EXIT_OK if ok else EXIT_FAIL

    # Tables 1 and 2 need the full enumeration.
    if args.regen_budget is None:
        print(
            "regenerating table %d runs the full enumeration; pass "
            "--regen-budget HOURS to confirm" % args.which,
            file=sys.stderr,
        )
        return EXIT_USAGE
    import os

    try:
        if args.checkpoint and os.path.exists(args.checkpoint):
            table = engine.resume(
                model,
                args.checkpoint,
                workers=args.workers,
                wall_limit_seconds=args.regen_budget * 3600.0,
                progress_interval=args.progress,
            )
        else:
            cfg = engine.EnumConfig(
                max_size=24,
                maximal_only=args.which == 2,
                min_size=1,
                root_depth=args.root_depth,
                checkpoint_path=args.checkpoint,
                workers=args.workers,
                wall_limit_seconds=args.regen_budget * 3600.0,
                progress_interval=args.progress,
            )
            table = engine.enumerate_cuts(model, cfg)
    except engine.CheckpointMismatch as exc:
        print(f"checkpoint rejected: {exc}", file=sys.stderr)
        return EXIT_CKPT_MISMATCH
    except engine.EnumerationInterrupted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        if args.checkpoint:
            print(f"resumable checkpoint: {args.checkpoint}", file=sys.stderr)
        return EXIT_BUDGET
    sizes = range(1, 25) if args.which == 1 else range(10, 25)
    diff = tables.diff_against_fixture(
        table.counts, sizes, maximal=args.which == 2
    )
    if args.out:
        with open(args.out, "w") as fh:
            _write_counts_csv(table, fh)
    if args.which == 1 and table.total() != tables.GRAND_TOTAL:
        diff.append(
            f"grand total: fixture={tables.GRAND_TOTAL} computed={table.total()}"
        )
    if diff:
        for line in diff:
            print("fixture diff: " + line)
        return EXIT_FAIL
    print(f"table {args.which}: zero diff ({table.total()} orbits)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cut600",
        description="Enumeration and analytics of independent sets of the "
        "600-cell skeleton up to symmetry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-model", help="build the model and assert invariants")
    p.add_argument("--automorphism-bound", action="store_true",
                   help="also certify Aut(skeleton) is no larger than the group")
    p.add_argument("--selftest-corrupt", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_model)

    p = sub.add_parser("export-model", help="write the model as deterministic text")
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--skip-group", action="store_true",
                   help="omit the 14400 permutations")
    p.set_defaults(func=cmd_export_model)

    p = sub.add_parser("enumerate", help="orderly enumeration of cut orbits")
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--max-size", type=int, default=24)
    p.add_argument("--maximal-only", action="store_true",
                   help="count only maximal cuts")
    p.add_argument("--checkpoint", help="checkpoint file path")
    p.add_argument("--resume", action="store_true",
                   help="continue from the checkpoint instead of starting fresh")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--root-depth", type=int, default=2,
                   help="subtree granularity for parallelism/checkpoints")
    p.add_argument("--checkpoint-interval", type=int, default=1_000_000,
                   help="nodes between checkpoint writes")
    p.add_argument("--progress", type=int, default=None, metavar="NODES",
                   help="stderr heartbeat interval")
    p.add_argument("--wall-limit", type=float, default=None, metavar="SECONDS")
    p.add_argument("--prefix", action="append", metavar="V1,V2",
                   help="restrict to these size-root-depth subtrees (repeatable)")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", help="dual-method agreement at desk scale")
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--selftest-inject-diff", action="store_true",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="full analytics for one cut")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--cut", help="comma-separated vertex indices")
    grp.add_argument("--named", choices=cl.NAMED_CUTS)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", help="regenerate a fixture table and diff it")
    p.add_argument("--which", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--regen-budget", type=float, metavar="HOURS",
                   help="wall budget for the full enumeration (tables 1 and 2)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--root-depth", type=int, default=3)
    p.add_argument("--checkpoint", help="checkpoint path (resumed when present)")
    p.add_argument("--progress", type=int, default=None, metavar="NODES")
    p.add_argument("--out", help="CSV output path for the regenerated table")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
