"""Deterministic graph families used as patterns, hosts and benchmark inputs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .graph import Coloring, Graph, GraphError, Pattern
from .search import count_triangles


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty(n: int) -> Graph:
    return Graph(n)


def random_gnp(n: int, p: float, seed: int = 0) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n - 1):
        hits = np.flatnonzero(rng.random(n - i - 1) < p)
        edges.extend((i, i + 1 + int(j)) for j in hits)
    return Graph(n, edges)


def _cycle_block_colors(k: int) -> list[int]:
    colors = [i % 3 for i in range(k)]
    if k % 3 == 1:
        colors[-1] = next(c for c in range(3) if c not in (colors[-2], colors[0]))
    return colors


def cycle_blowup(sizes: list[int]) -> Graph:
    """Blowup of ``C_k`` (k = len(sizes)) with block i of size ``sizes[i]``."""
    k = len(sizes)
    if k < 3 or min(sizes) < 1:
        raise GraphError(f"cycle blowup needs >= 3 non-empty blocks, got {sizes}")
    starts = [sum(sizes[:i]) for i in range(k)]
    edges = []
    for i in range(k):
        j = (i + 1) % k
        edges += [(starts[i] + a, starts[j] + b) for a in range(sizes[i]) for b in range(sizes[j])]
    return Graph(sum(sizes), edges)


def odd_cycle_blowup(k: int, block: int) -> tuple[Graph, Coloring]:
    """Blow up ``C_k``: each vertex becomes an independent block, each edge a complete bipartite graph.

    Block ``i`` holds vertices ``i*block .. (i+1)*block - 1``.  The returned
    coloring gives every vertex of a block the same color, cyclically
    0, 1, 2, 0, 1, 2, ... around the cycle (adjusted at the seam when 3 does
    not divide ``k``).
    """
    if k < 3 or block < 1:
        raise GraphError(f"blowup needs k >= 3 and block >= 1, got k={k}, block={block}")
    edges = []
    for i in range(k):
        j = (i + 1) % k
        for a in range(block):
            for b in range(block):
                edges.append((i * block + a, j * block + b))
    colors = _cycle_block_colors(k)
    return Graph(k * block, edges), Coloring(3, [colors[v // block] for v in range(k * block)])


def complete_multipartite(sizes: list[int]) -> tuple[Graph, Coloring]:
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = len(part)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if part[u] != part[v]]
    return Graph(n, edges), Coloring(max(len(sizes), 1), part)


def complete_tripartite(s: int) -> tuple[Graph, Coloring]:
    return complete_multipartite([s, s, s])


def plant_triangle(base: Graph, seed: int = 0, attempts: int = 200) -> Graph:
    """Add edges to ``base`` (assumed triangle-free) so that exactly one triangle appears.

    Tries random vertex triples whose completion closes no extra triangle;
    falls back to appending a disjoint triangle.
    """
    rng = random.Random(seed)
    if base.n >= 3:
        for _ in range(attempts):
            tri = rng.sample(range(base.n), 3)
            new = [(a, b) for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2]))
                   if not base.has_edge(a, b)]
            g = base.add_edges(new)
            if count_triangles(g) == 1:
                return g
    n = base.n
    return Graph(n + 3, base.edges() + [(n, n + 1), (n + 1, n + 2), (n, n + 2)])


FAMILIES = (
    "random_gnp",
    "odd_cycle_blowup",
    "complete_tripartite",
    "planted_triangle",
    "path",
    "cycle",
    "clique",
)


@dataclass(frozen=True)
class FixtureSpec:
    family: str
    params: dict[str, Any] = field(default_factory=dict)
    seed: int = 0


def generate_fixture(spec: FixtureSpec) -> tuple[Graph, Coloring | None]:
    """Build the graph (and block coloring, where the family has one) described by ``spec``."""
    p = spec.params
    fam = spec.family
    try:
        if fam == "random_gnp":
            return random_gnp(int(p["n"]), float(p["p"]), spec.seed), None
        if fam == "odd_cycle_blowup":
            return odd_cycle_blowup(int(p.get("k", 9)), int(p["block"]))
        if fam == "complete_tripartite":
            return complete_tripartite(int(p["s"]))
        if fam == "planted_triangle":
            base_fam = p.get("base", "odd_cycle_blowup")
            base_params = {k[5:]: v for k, v in p.items() if k.startswith("base_")}
            base, _ = generate_fixture(FixtureSpec(base_fam, base_params, spec.seed))
            return plant_triangle(base, spec.seed), None
        if fam == "path":
            return path(int(p["n"])), None
        if fam == "cycle":
            return cycle(int(p["n"])), None
        if fam == "clique":
            return complete(int(p["n"])), None
    except KeyError as e:
        raise GraphError(f"fixture family {fam!r} needs parameter {e.args[0]!r}") from None
    raise GraphError(f"unknown fixture family {fam!r}; choose from {', '.join(FAMILIES)}")


def colored_c6() -> Pattern:
    """C6 colored 0,1,2,0,1,2 around the cycle.

    Every vertex sees both other colors, so the coloring is not degenerate, and
    the colored C9 blowup (blocks colored cyclically) contains no copy of it:
    a color-preserving closed walk would have to wind six steps forward around C9.
    """
    return Pattern(cycle(6), Coloring(3, [0, 1, 2, 0, 1, 2]))
