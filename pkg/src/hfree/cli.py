"""Command-line front end.

Exit codes: 0 success, 1 domain error or failed check, 2 I/O or parse error.
The resolved configuration (including the seed) is echoed to stderr as one
``config:`` JSON line; primary outputs go to ``--out`` or stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Sequence

from . import io as gio
from .gadgets import (
    Gadget,
    build_hstar,
    check_invariants,
    eq_gadget,
    eq_set_gadget,
    gadget_x,
    grotzsch,
    hstar_soundness,
    is_four_critical,
    neq_gadget,
    x_pair_rigidity,
)
from .coloring import enumerate_extendable_colorings
from .fixtures import FAMILIES, FixtureSpec, generate_fixture
from .graph import Coloring, Graph, GraphError, Pattern
from .harness import bench, bench_rows_as_dicts, corpus_checks, scaling_exponent
from .patterns import (
    Inconclusive,
    augment,
    check_degenerate_coloring,
    find_degenerate_coloring,
    verify_augment_preserves,
)
from .reductions import (
    BASE_DETECTORS,
    ColorCoding,
    Instance,
    PipelineConfig,
    color_partition,
    detect_induced_hfree,
    sieve,
)
from .search import count_triangles

SEED_ENV = "HFREE_SEED"


class CliError(Exception):
    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV}={raw!r} is not an integer", 2) from None


def _emit(args: argparse.Namespace, text: str) -> None:
    if getattr(args, "out", None):
        try:
            Path(args.out).write_text(text)
        except OSError as e:
            raise CliError(f"{args.out}: {e.strerror}", 2) from None
    else:
        sys.stdout.write(text)


def _write_side(path: str | None, text: str) -> None:
    if path:
        try:
            Path(path).write_text(text)
        except OSError as e:
            raise CliError(f"{path}: {e.strerror}", 2) from None


def _read(path: str) -> tuple[Graph, Coloring | None]:
    return gio.read_graph(path)


def _read_terminals(path: str) -> dict[str, int]:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", 2) from None
    return gio.parse_terminals(text, path)


def _render(args: argparse.Namespace, g: Graph, coloring: Coloring | None = None, terminals=None) -> str:
    if getattr(args, "format", "el") == "dot":
        return gio.format_dot(g, coloring, terminals)
    return gio.format_graph(g, coloring)


def _stats_json(path: str | None, payload: dict) -> None:
    if path:
        _write_side(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _config_from(args: argparse.Namespace) -> PipelineConfig:
    try:
        return PipelineConfig(
            seed=args.seed,
            sieve_repetitions=args.sieve_reps,
            amplification_runs=getattr(args, "amplify", 15),
            base_detector=getattr(args, "base_detector", "brute"),
            audit_promise=getattr(args, "audit_promise", False),
        )
    except ValueError as e:
        raise CliError(str(e), 2) from None


# -- subcommands ------------------------------------------------------------------------


def cmd_augment(args: argparse.Namespace) -> int:
    h, _ = _read(args.pattern)
    aug = augment(h)
    _emit(args, _render(args, aug.graph))
    print(f"H+: {aug.graph.n} vertices, {aug.graph.m} edges, {len(aug.wedge_index)} non-edges", file=sys.stderr)
    return 0


GADGET_BUILDERS = {
    "grotzsch": lambda size: grotzsch(),
    "eq": lambda size: eq_gadget(),
    "eq_set": lambda size: eq_set_gadget(size),
    "neq": lambda size: neq_gadget(),
    "X": lambda size: gadget_x(),
}


def cmd_gadget(args: argparse.Namespace) -> int:
    gad = GADGET_BUILDERS[args.kind](args.size)
    _emit(args, _render(args, gad.graph, terminals=gad.terminals))
    _write_side(args.terminals, gio.format_terminals(gad.terminals))
    return 0


def _colored_pattern(path: str) -> Pattern:
    g, c = _read(path)
    if c is None:
        raise CliError(f"{path}: pattern needs a 'colors' block")
    return Pattern(g, c)


def cmd_colored_augment(args: argparse.Namespace) -> int:
    h = _colored_pattern(args.pattern)
    hs = build_hstar(h)
    _emit(args, _render(args, hs.graph, terminals=hs.terminals))
    _write_side(args.terminals, gio.format_terminals(hs.terminals))
    if hs.meta.get("empty_classes"):
        print(f"note: empty color classes {hs.meta['empty_classes']} attach no gadgets", file=sys.stderr)
    return 0


def _gadget_checks(g: Graph, terms: dict[str, int], check: str) -> bool:
    if check == "pair-rigidity":
        return x_pair_rigidity(Gadget(g, terms, "X"))
    if check in ("eq", "neq"):
        rows = enumerate_extendable_colorings(g, [terms["u"], terms["v"]])
        want = [(a, b) for a in range(3) for b in range(3) if (a == b) == (check == "eq")]
        return rows == want
    if check == "triangle-free":
        return count_triangles(g) == 0
    if check == "colorable":
        return bool(enumerate_extendable_colorings(g, []))
    if check == "four-critical":
        return is_four_critical(g)
    raise CliError(f"unknown gadget check {check!r}", 2)


def cmd_verify(args: argparse.Namespace) -> int:
    results: list[tuple[str, bool]] = []
    if args.all:
        for name, fn in corpus_checks().items():
            results.append((name, fn()))
    if args.gadget:
        g, _ = _read(args.gadget)
        terms = _read_terminals(args.terminals) if args.terminals else {}
        for check in args.check or ["triangle-free", "colorable"]:
            results.append((f"{check} ({args.gadget})", _gadget_checks(g, terms, check)))
    if args.pattern:
        checks = args.check or ["augment"]
        for check in checks:
            if check == "augment":
                g, _ = _read(args.pattern)
                r = verify_augment_preserves(g)
                results.append((f"augment preserves ({args.pattern})", r.chromatic_ok and r.triangle_ok))
            elif check == "hstar-soundness":
                h = _colored_pattern(args.pattern)
                hs = build_hstar(h)
                rep = hstar_soundness(h, hs)
                ok = rep.holds and not check_invariants(hs)
                results.append((f"H* soundness ({args.pattern})", ok))
            else:
                raise CliError(f"unknown pattern check {check!r}", 2)
    if not results:
        raise CliError("verify: give --all, --gadget or --pattern", 2)
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return 0 if all(ok for _, ok in results) else 1


def cmd_degenerate(args: argparse.Namespace) -> int:
    g, c = _read(args.pattern)
    if c is not None and not args.search:
        ok = check_degenerate_coloring(g, c)
        print("degenerate" if ok else "not degenerate")
        return 0 if ok else 1
    try:
        found = find_degenerate_coloring(g, args.budget)
    except Inconclusive as e:
        print(f"inconclusive: {e}")
        return 1
    if found is None:
        print("no degenerate coloring")
        return 1
    _emit(args, gio.format_graph(g, found))
    return 0


def cmd_colorcode(args: argparse.Namespace) -> int:
    g, _ = _read(args.host)
    t0 = time.monotonic()
    part = color_partition(g)
    payload = {"command": "colorcode", "seed": args.seed, "n": g.n, "m": g.m}
    if not isinstance(part, ColorCoding):
        print(f"triangle {' '.join(map(str, part))}")
        payload |= {"instance_count": 0, "max_instance_size": 0, "triangle_partition_ok": None, "triangle": list(part)}
    else:
        count = biggest = total = 0
        for i, inst in enumerate(part.instances()):
            count += 1
            biggest = max(biggest, inst.n)
            if args.check_partition:
                total += count_triangles(inst.subgraph)
            if args.out_dir:
                _write_instance(Path(args.out_dir) / f"instance_{i:06d}.el", inst)
        ok = total == count_triangles(g) if args.check_partition else None
        print(f"classes {len(part.classes)} instances {count} max_size {biggest}")
        payload |= {"instance_count": count, "max_instance_size": biggest, "triangle_partition_ok": ok}
    payload["wall_ms"] = round((time.monotonic() - t0) * 1000, 3)
    _stats_json(args.stats_json, payload)
    return 0


def _write_instance(path: Path, inst: Instance) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(gio.format_graph(inst.subgraph, inst.coloring))
        path.with_suffix(".map").write_text("".join(f"{i} {h}\n" for i, h in enumerate(inst.back_map)))
    except OSError as e:
        raise CliError(f"{path}: {e.strerror}", 2) from None


def cmd_sieve(args: argparse.Namespace) -> int:
    g, c = _read(args.host)
    if c is None or c.palette != 3 or not c.is_proper(g):
        raise CliError(f"{args.host}: sieve needs a properly 3-colored instance")
    order = sorted(range(g.n), key=lambda v: (c[v], v))
    sizes = [sum(1 for v in order if c[v] == k) for k in range(3)]
    pos = {v: i for i, v in enumerate(order)}
    inst = Instance(order, sizes, [(pos[u], pos[v]) for u, v in g.edges()])
    cfg = _config_from(args)
    outs = sieve(inst, cfg)
    hist: dict[int, int] = {}
    for o in outs:
        t = count_triangles(o.subgraph)
        hist[t] = hist.get(t, 0) + 1
        if args.out_dir:
            _write_instance(Path(args.out_dir) / f"sieve_{len(hist):06d}.el", o)
    print(f"outputs {len(outs)} unique_triangle_outputs {hist.get(1, 0)}")
    print("triangle-count histogram " + " ".join(f"{k}:{hist[k]}" for k in sorted(hist)))
    return 0


def cmd_detect(args: argparse.Namespace) -> int:
    h, _ = _read(args.pattern)
    g, _ = _read(args.host)
    cfg = _config_from(args)
    rep = detect_induced_hfree(g, h, cfg)
    if rep.witness:
        print(f"triangle_found {' '.join(map(str, rep.witness))}")
    else:
        print("triangle_free")
    payload = {
        "command": "detect",
        "seed": cfg.seed,
        "n": g.n,
        "m": g.m,
        "instance_count": rep.stats["instance_count"],
        "max_instance_size": rep.stats["max_instance_size"],
        "triangle_partition_ok": None,
        "wall_ms": rep.stats["wall_ms"],
        "verdict": rep.verdict,
        "witness": list(rep.witness) if rep.witness else None,
        "sieve_outputs": rep.stats["sieve_outputs"],
        "oracle_calls": rep.stats["oracle_calls"],
    }
    _stats_json(args.stats_json, payload)
    return 0


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        if "=" not in item:
            raise CliError(f"--param expects key=value, got {item!r}", 2)
        k, v = item.split("=", 1)
        out[k] = v
    return out


def cmd_gen(args: argparse.Namespace) -> int:
    g, c = generate_fixture(FixtureSpec(args.family, _parse_params(args.param), args.seed))
    _emit(args, _render(args, g, c if args.with_coloring else None))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        ladder = [int(x) for x in args.ladder.split(",")]
    except ValueError:
        raise CliError(f"--ladder must be comma-separated integers, got {args.ladder!r}", 2) from None
    rows = bench(ladder, args.avg_degree, args.seed)
    print(f"{'n':>7} {'m':>8} {'classes':>8} {'instances':>10} {'max_size':>9} {'bound':>6} {'ms':>10}")
    for r in rows:
        print(f"{r.n:>7} {r.m:>8} {r.classes:>8} {r.instance_count:>10} {r.max_instance_size:>9} {r.size_bound:>6} {r.wall_ms:>10}")
    exp = scaling_exponent(rows) if len(rows) > 1 else None
    if exp is not None:
        print(f"instance-count exponent {exp:.3f} (theory 1.5)")
    _stats_json(args.json, {"command": "bench", "seed": args.seed, "rows": bench_rows_as_dicts(rows), "exponent": exp})
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    g, c = _read(args.graph)
    terms = _read_terminals(args.terminals) if args.terminals else None
    if args.format == "dot":
        _emit(args, gio.format_dot(g, c, terms))
    else:
        _emit(args, gio.format_graph(g, c))
    return 0


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hfree", description="Pattern reductions for triangle detection in H-free graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help: str, fmt: bool = True) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--seed", type=int, default=None)
        if fmt:
            sp.add_argument("--out", help="output file (default: stdout)")
            sp.add_argument("--format", choices=("el", "dot"), default="el")
        return sp

    sp = add("augment", "build the augmented pattern H+")
    sp.add_argument("--pattern", required=True)
    sp.set_defaults(func=cmd_augment)

    sp = add("gadget", "emit a coloring gadget")
    sp.add_argument("--kind", required=True, choices=sorted(GADGET_BUILDERS))
    sp.add_argument("--size", type=int, default=1, help="|S| for eq_set")
    sp.add_argument("--terminals", help="write terminal sidecar here")
    sp.set_defaults(func=cmd_gadget)

    sp = add("colored-augment", "build H* from a 3-colored pattern")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--terminals", help="write terminal sidecar here")
    sp.set_defaults(func=cmd_colored_augment)

    sp = add("verify", "run verification checks", fmt=False)
    sp.add_argument("--all", action="store_true", help="run the shipped corpus")
    sp.add_argument("--gadget")
    sp.add_argument("--terminals")
    sp.add_argument("--pattern")
    sp.add_argument(
        "--check",
        action="append",
        choices=("pair-rigidity", "eq", "neq", "triangle-free", "colorable", "four-critical", "augment", "hstar-soundness"),
    )
    sp.set_defaults(func=cmd_verify)

    sp = add("degenerate-color", "check or search a degenerate 3-coloring")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--search", action="store_true", help="search even if the file carries a coloring")
    sp.add_argument("--budget", type=int, default=10**8)
    sp.set_defaults(func=cmd_degenerate)

    sp = add("colorcode", "color-code a host into 3-colored instances", fmt=False)
    sp.add_argument("--host", required=True)
    sp.add_argument("--out-dir")
    sp.add_argument("--check-partition", action="store_true")
    sp.add_argument("--stats-json")
    sp.set_defaults(func=cmd_colorcode)

    sp = add("sieve", "sieve a 3-colored instance", fmt=False)
    sp.add_argument("--host", required=True)
    sp.add_argument("--sieve-reps", type=int, default=8)
    sp.add_argument("--out-dir")
    sp.set_defaults(func=cmd_sieve)

    sp = add("detect", "triangle detection in an induced H-free host", fmt=False)
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--sieve-reps", type=int, default=8)
    sp.add_argument("--amplify", type=int, default=15)
    sp.add_argument("--base-detector", choices=sorted(BASE_DETECTORS), default="brute")
    sp.add_argument("--audit-promise", action="store_true")
    sp.add_argument("--stats-json")
    sp.set_defaults(func=cmd_detect)

    sp = add("gen", "generate a fixture graph")
    sp.add_argument("--family", required=True, choices=FAMILIES)
    sp.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    sp.add_argument("--with-coloring", action="store_true")
    sp.set_defaults(func=cmd_gen)

    sp = add("bench", "color-coding scaling ladder", fmt=False)
    sp.add_argument("--ladder", default="256,1024,4096")
    sp.add_argument("--avg-degree", type=float, default=4.0)
    sp.add_argument("--json")
    sp.set_defaults(func=cmd_bench)

    sp = add("export", "convert a graph file (e.g. to DOT)")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--terminals")
    sp.set_defaults(func=cmd_export)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        resolved = {k: v for k, v in vars(args).items() if k != "func"}
        print("config: " + json.dumps(resolved, sort_keys=True), file=sys.stderr)
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except gio.FormatError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except GraphError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
