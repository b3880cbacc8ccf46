"""Benchmark ladder and the shipped verification corpus."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from .coloring import find_proper_coloring
from .fixtures import colored_c6, complete, cycle, odd_cycle_blowup, path, random_gnp
from .gadgets import (
    build_hstar,
    check_invariants,
    eq_gadget,
    eq_set_gadget,
    gadget_x,
    grotzsch,
    is_four_critical,
    neq_gadget,
    terminal_projection,
    verify_hstar_soundness,
    x_pair_rigidity,
)
from .graph import Coloring, Graph, Pattern
from .patterns import augment, check_degenerate_coloring, find_degenerate_coloring, verify_augment_preserves
from .reductions import ColorCoding, ceil_sqrt, color_partition
from .search import count_triangles, find_colored_copy, find_copy


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    seed: int
    classes: int
    instance_count: int
    max_instance_size: int
    size_bound: int
    count_bound: int
    wall_ms: float

    @property
    def bounds_ok(self) -> bool:
        return self.max_instance_size <= self.size_bound and self.instance_count <= self.count_bound


def bench_host(n: int, avg_degree: float, seed: int, max_tries: int = 50) -> tuple[Graph, ColorCoding, int]:
    """Sparse G(n, avg_degree/n) host on which the first coloring phase finds no triangle."""
    for k in range(max_tries):
        g = random_gnp(n, min(1.0, avg_degree / max(n, 1)), seed + k)
        part = color_partition(g)
        if isinstance(part, ColorCoding):
            return g, part, seed + k
    raise RuntimeError(f"no triangle-free first phase for n={n} after {max_tries} seeds")


def bench(ladder: list[int], avg_degree: float = 4.0, seed: int = 0) -> list[BenchRow]:
    """Color-code one sparse random host per ladder size and record instance statistics."""
    rows = []
    for n in ladder:
        t0 = time.monotonic()
        g, part, used_seed = bench_host(n, avg_degree, seed)
        count = 0
        biggest = 0
        for inst in part.instances():
            count += 1
            biggest = max(biggest, inst.n)
        s = ceil_sqrt(n)
        rows.append(
            BenchRow(
                n=n,
                m=g.m,
                seed=used_seed,
                classes=len(part.classes),
                instance_count=count,
                max_instance_size=biggest,
                size_bound=6 * s,
                count_bound=math.comb(3 * s, 3),
                wall_ms=round((time.monotonic() - t0) * 1000, 3),
            )
        )
    return rows


def scaling_exponent(rows: list[BenchRow]) -> float:
    """Least-squares slope of log(instance_count) against log(n)."""
    x = np.log([r.n for r in rows])
    y = np.log([r.instance_count for r in rows])
    return float(np.polyfit(x, y, 1)[0])


def bench_rows_as_dicts(rows: list[BenchRow]) -> list[dict]:
    return [asdict(r) | {"bounds_ok": r.bounds_ok} for r in rows]


# -- shipped verification corpus ------------------------------------------------------


def triangle_with_pendant() -> Pattern:
    """K3 on 0, 1, 2 plus vertex 3 hanging off 0, colored like 1."""
    return Pattern(Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)]), Coloring(3, [0, 1, 2, 1]))


def colored_corpus() -> dict[str, Pattern]:
    return {
        "colored-C6": colored_c6(),
        "colored-edge": Pattern(path(2), Coloring(3, [0, 1])),
        "colored-P4": Pattern(path(4), Coloring(3, [0, 1, 2, 0])),
        "colored-K3": Pattern(complete(3), Coloring(3, [0, 1, 2])),
        "K3-plus-pendant": triangle_with_pendant(),
    }


Check = Callable[[], bool]


def corpus_checks() -> dict[str, Check]:
    """Name -> zero-argument check; every check returns True on success."""
    checks: dict[str, Check] = {}

    checks["P6+ has 26 vertices"] = lambda: augment(path(6)).graph.n == 26
    checks["C7+ has 35 vertices"] = lambda: augment(cycle(7)).graph.n == 35
    for name, h in (("P5", path(5)), ("P6", path(6)), ("C7", cycle(7)), ("K3+pendant", triangle_with_pendant().graph)):
        checks[f"{name}+ preserves 3-colorability and triangles"] = (
            lambda h=h: (lambda r: r.chromatic_ok and r.triangle_ok)(verify_augment_preserves(h))
        )
    checks["Groetzsch is 4-critical and triangle-free"] = lambda: (
        is_four_critical(grotzsch().graph) and count_triangles(grotzsch().graph) == 0
    )
    checks["EQ forces equal colors"] = lambda: terminal_projection(eq_gadget(), ["u", "v"]) == [
        (c, c) for c in range(3)
    ]
    checks["NEQ forces distinct colors"] = lambda: terminal_projection(neq_gadget(), ["u", "v"]) == [
        (a, b) for a in range(3) for b in range(3) if a != b
    ]
    checks["EQ_{u,S} (|S|=3) forces all-equal"] = lambda: terminal_projection(
        eq_set_gadget(3), ["u", "s1", "s2", "s3"]
    ) == [(c,) * 4 for c in range(3)]
    checks["gadget X pair rigidity"] = lambda: x_pair_rigidity(gadget_x())
    for kind, build in (("grotzsch", grotzsch), ("eq", eq_gadget), ("neq", neq_gadget), ("X", gadget_x)):
        checks[f"{kind} kind invariants"] = lambda build=build: not check_invariants(build())
    for name, h in colored_corpus().items():
        checks[f"H* soundness: {name}"] = lambda h=h: _hstar_ok(h)
    checks["P5+ admits a degenerate coloring"] = lambda: _degenerate_ok(augment(path(5)).graph)
    checks["P6+ admits a degenerate coloring"] = lambda: _degenerate_ok(augment(path(6)).graph)
    checks["C7+ admits a degenerate coloring"] = lambda: _degenerate_ok(augment(cycle(7)).graph)
    checks["colored C9 blowup is colored-C6-free but contains C6"] = _c9_blowup_check
    return checks


def _hstar_ok(h: Pattern) -> bool:
    hs = build_hstar(h)
    return (
        verify_hstar_soundness(h, hs)
        and not check_invariants(hs)
        and count_triangles(hs.graph) == count_triangles(h.graph)
        and find_proper_coloring(hs.graph, 3) is not None
    )


def _degenerate_ok(h: Graph) -> bool:
    c = find_degenerate_coloring(h)
    return c is not None and check_degenerate_coloring(h, c)


def _c9_blowup_check() -> bool:
    g, col = odd_cycle_blowup(9, 2)
    return find_colored_copy(colored_c6(), g, col) is None and find_copy(cycle(6), g) is not None
