"""Command-line interface.

Commands: decompose, trace, oracle, quotient, lyapunov, ergodic, ladder,
window, census, export-dot.  Finite systems travel as JSON objects
``{"points": [...], "specializes": [[x, y], ...], "map": {...}}`` where a
pair [x, y] puts x into the closure of {y}; the relation is closed
reflexively and transitively on load and unknown fields are rejected.

Exit codes: 0 success, 1 a verification check failed (the report carries
a counterexample), 2 usage or input-format errors.  All output is
deterministic; the environment variable FIXFACTOR_SEED is reserved but
unused because nothing here is randomized.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import census as census_mod
from .decomposition import (
    oracle_partition,
    quotient,
    stabilize,
)
from .errors import FixfactorError
from .ladder import (
    build_ladder,
    ladder_aorb0,
    ladder_trace,
    parse_term,
    window,
    window_check,
)
from .ordinals import parse_ordinal
from .stability import stability_report
from .topology import FiniteSystem, build_system
from .errors import FormatError

SYSTEM_FIELDS = {"points", "specializes", "map"}


def load_system(path: str) -> FiniteSystem:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise FormatError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise FormatError(f"{path} is not valid JSON: line {e.lineno}") from e
    return system_from_json(raw, where=path)


def system_from_json(raw: dict, where: str = "<input>") -> FiniteSystem:
    if not isinstance(raw, dict):
        raise FormatError(f"{where}: top level must be an object")
    unknown = set(raw) - SYSTEM_FIELDS
    if unknown:
        raise FormatError(f"{where}: unknown fields {sorted(unknown)}")
    missing = SYSTEM_FIELDS - set(raw)
    if missing:
        raise FormatError(f"{where}: missing fields {sorted(missing)}")
    points = raw["points"]
    pairs = raw["specializes"]
    mapping = raw["map"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise FormatError(f"{where}: field 'points' must be a list of strings")
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 for p in pairs
    ):
        raise FormatError(f"{where}: field 'specializes' must be a list of pairs")
    if not isinstance(mapping, dict):
        raise FormatError(f"{where}: field 'map' must be an object")
    return build_system(points, [tuple(p) for p in pairs], mapping)


def system_to_json(sys_: FiniteSystem) -> dict:
    return census_mod.system_payload(sys_)


def system_hash(sys_: FiniteSystem) -> str:
    payload = json.dumps(system_to_json(sys_), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def decomposition_report(sys_: FiniteSystem) -> dict:
    trace = stabilize(sys_)
    oracle = oracle_partition(sys_)
    return {
        "system": system_to_json(sys_),
        "system_hash": system_hash(sys_),
        "trace": [
            {
                "degree": str(d),
                "classes": [sorted(c.members()) for c in p.class_sets()],
            }
            for d, p in trace.entries
        ],
        "stabilization_degree": str(trace.stabilization_degree),
        "stationary_classes": [
            sorted(c.members()) for c in trace.stationary_partition.class_sets()
        ],
        "dim_fix": oracle.num_classes,
        "ergodic": trace.stationary_partition.num_classes == 1,
        "oracle_matches": trace.stationary_partition.same_blocks(oracle),
    }


def export_dot(sys_: FiniteSystem) -> str:
    """DOT graph: map edges solid, covering specialization pairs dashed."""
    space = sys_.space
    trace = stabilize(sys_)
    part = trace.stationary_partition
    palette = [
        "lightblue", "lightsalmon", "palegreen", "plum", "khaki",
        "lightpink", "aquamarine", "wheat",
    ]
    lines = ["digraph system {", "  rankdir=LR;", "  node [style=filled];"]
    for i, p in enumerate(space.points):
        cls = part.class_of[i]
        color = palette[cls % len(palette)]
        lines.append(f'  "{p}" [label="{p}|{cls}", fillcolor={color}];')
    for p in space.points:
        lines.append(f'  "{p}" -> "{sys_.map(p)}";')
    for x, y in _covering_pairs(sys_):
        lines.append(f'  "{x}" -> "{y}" [style=dashed, arrowhead=empty];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _covering_pairs(sys_: FiniteSystem) -> list[tuple[str, str]]:
    """Transitive reduction of specialization: reduce the order on the
    mutually-specializing groups, then add one cycle per nontrivial group."""
    space = sys_.space
    n = space.n
    # mutually specializing points have identical minimal open sets
    first_with: dict[int, int] = {}
    rep = []
    for i in range(n):
        rep.append(first_with.setdefault(space.up[i], i))
    heads = sorted(set(rep))
    less = {
        (a, b)
        for a in heads
        for b in heads
        if a != b and space.up[a] >> b & 1
    }
    out = []
    for a, b in sorted(less):
        if not any((a, k) in less and (k, b) in less for k in heads):
            out.append((space.points[a], space.points[b]))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(rep[i], []).append(i)
    for members in groups.values():
        if len(members) > 1:
            ordered = sorted(members)
            for a, b in zip(ordered, ordered[1:] + ordered[:1]):
                out.append((space.points[a], space.points[b]))
    return out


def _emit(data, args) -> None:
    text = data if isinstance(data, str) else json.dumps(data, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + ("" if text.endswith("\n") else "\n"),
                                  encoding="utf-8")
    else:
        print(text)


def cmd_decompose(args) -> int:
    sys_ = load_system(args.system)
    if args.format == "dot":
        _emit(export_dot(sys_), args)
    else:
        _emit(decomposition_report(sys_), args)
    return 0


def cmd_trace(args) -> int:
    sys_ = load_system(args.system)
    trace = stabilize(sys_)
    _emit({
        "system_hash": system_hash(sys_),
        "entries": [
            {"degree": str(d), "classes": [sorted(c.members()) for c in p.class_sets()]}
            for d, p in trace.entries
        ],
        "stabilization_degree": str(trace.stabilization_degree),
    }, args)
    return 0


def cmd_oracle(args) -> int:
    sys_ = load_system(args.system)
    oracle = oracle_partition(sys_)
    _emit({
        "system_hash": system_hash(sys_),
        "classes": [sorted(c.members()) for c in oracle.class_sets()],
        "dim_fix": oracle.num_classes,
    }, args)
    return 0


def cmd_quotient(args) -> int:
    sys_ = load_system(args.system)
    trace = stabilize(sys_)
    q = quotient(sys_, trace.stationary_partition)
    _emit({
        "quotient": system_to_json(q.quotient),
        "projection": q.projection,
    }, args)
    return 0


def cmd_lyapunov(args) -> int:
    sys_ = load_system(args.system)
    members = [m for m in args.set.split(",") if m]
    subject = sys_.space.pointset(members)
    rep = stability_report(sys_, subject)
    _emit({
        "system_hash": system_hash(sys_),
        "set": sorted(subject.members()),
        "stable_plain": rep.stable_plain,
        "stable_by_degree": [[str(d), ok] for d, ok in rep.stable_by_degree],
        "absolutely_stable": rep.absolutely_stable,
    }, args)
    return 0


def cmd_ergodic(args) -> int:
    sys_ = load_system(args.system)
    trace = stabilize(sys_)
    _emit({
        "system_hash": system_hash(sys_),
        "ergodic": trace.stationary_partition.num_classes == 1,
        "dim_fix": oracle_partition(sys_).num_classes,
    }, args)
    return 0


def cmd_ladder(args) -> int:
    space = build_ladder(parse_term(args.term))
    if args.aorb0:
        result = ladder_aorb0(space, args.aorb0)
        _emit({
            "term": str(space.term),
            "locator": args.aorb0,
            "aorb0": result.to_json(),
        }, args)
        return 0
    trace = ladder_trace(space, parse_ordinal(args.max_degree))
    _emit(trace.to_json(), args)
    return 0


def cmd_window(args) -> int:
    space = build_ladder(parse_term(args.term))
    win = window(space, args.family_cut, args.strand_cut)
    payload = win.to_json()
    if args.system_out:
        fs = win.to_finite_system()
        Path(args.system_out).write_text(
            json.dumps(system_to_json(fs), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        payload["system_written_to"] = args.system_out
    code = 0
    if args.check:
        trace = ladder_trace(space, parse_ordinal(args.max_degree))
        report = window_check(space, win, trace=trace)
        payload["audit"] = report.to_json()
        code = 0 if report.ok() else 1
    _emit(payload, args)
    return code


def cmd_census(args) -> int:
    if args.check == "all":
        checks = tuple(census_mod.ASSERTED_CHECKS) + tuple(census_mod.REPORTED_CHECKS)
    else:
        checks = tuple(args.check.split(","))
    report = census_mod.run_census(
        args.points, checks=checks, up_to_iso=args.up_to_iso, jobs=args.jobs
    )
    _emit(report.to_json(), args)
    if args.counterexample_dir:
        outdir = Path(args.counterexample_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        for name, outcome in report.checks.items():
            for i, ce in enumerate(outcome.counterexamples[:10]):
                path = outdir / f"{name}-{i}.json"
                path.write_text(
                    json.dumps(ce["system"], indent=2, sort_keys=True) + "\n",
                    encoding="utf-8",
                )
    failed = census_mod.census_failures(report)
    return 1 if failed else 0


def cmd_export_dot(args) -> int:
    sys_ = load_system(args.system)
    _emit(export_dot(sys_), args)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fixfactor",
        description="state-space decomposition of finite and ladder systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--out", help="write the report to a file instead of stdout")
        return p

    p = add("decompose", cmd_decompose, help="full decomposition report")
    p.add_argument("system", help="system JSON file")
    p.add_argument("--format", choices=["json", "dot"], default="json")

    p = add("trace", cmd_trace, help="degree trace only")
    p.add_argument("system")

    p = add("oracle", cmd_oracle, help="level-set oracle partition")
    p.add_argument("system")

    p = add("quotient", cmd_quotient, help="quotient by the stationary partition")
    p.add_argument("system")

    p = add("lyapunov", cmd_lyapunov, help="stability report for a set")
    p.add_argument("system")
    p.add_argument("--set", required=True, help="comma-separated point names")

    p = add("ergodic", cmd_ergodic, help="topological ergodicity verdict")
    p.add_argument("system")

    p = add("ladder", cmd_ladder, help="symbolic ladder trace")
    p.add_argument("term", help="ladder term, e.g. 'cat(strand)'")
    p.add_argument("--max-degree", default="w*2", help="ordinal literal cap")
    p.add_argument("--aorb0", metavar="LOCATOR",
                   help="report the base orbit of one point instead")

    p = add("window", cmd_window, help="materialize and audit a finite window")
    p.add_argument("term")
    p.add_argument("--family-cut", type=int, default=3)
    p.add_argument("--strand-cut", type=int, default=3)
    p.add_argument("--max-degree", default="w*2")
    p.add_argument("--check", action="store_true", help="run the window audit")
    p.add_argument("--system-out", help="write the window as a system JSON file")

    p = add("census", cmd_census, help="exhaustive verification campaign")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--check", default="all",
                   help="comma-separated check names, or 'all'")
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--counterexample-dir")

    p = add("export-dot", cmd_export_dot, help="DOT graph of a system")
    p.add_argument("system")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except FixfactorError as e:
        print(f"error[{e.code}]: {e.message}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error[E_IO]: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
