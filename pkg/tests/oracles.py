"""Brute-force reference implementations, independent of the search code under test."""

from __future__ import annotations

from itertools import combinations, permutations, product

from hfree.graph import Graph


def edge_set(g: Graph) -> set[frozenset[int]]:
    return {frozenset(e) for e in g.edges()}


def brute_triangles(g: Graph) -> list[tuple[int, int, int]]:
    e = edge_set(g)
    return [
        t
        for t in combinations(range(g.n), 3)
        if all(frozenset(p) in e for p in combinations(t, 2))
    ]


def brute_has_copy(pattern: Graph, host: Graph, induced: bool = False) -> bool:
    pe, he = edge_set(pattern), edge_set(host)
    for phi in permutations(range(host.n), pattern.n):
        ok = True
        for x, y in combinations(range(pattern.n), 2):
            in_p = frozenset((x, y)) in pe
            in_h = frozenset((phi[x], phi[y])) in he
            if (in_p and not in_h) or (induced and in_h and not in_p):
                ok = False
                break
        if ok:
            return True
    return False


def brute_colorings(g: Graph, k: int = 3):
    edges = g.edges()
    for a in product(range(k), repeat=g.n):
        if all(a[u] != a[v] for u, v in edges):
            yield a


def brute_projection(g: Graph, terminals: list[int], k: int = 3) -> list[tuple[int, ...]]:
    return sorted({tuple(a[t] for t in terminals) for a in brute_colorings(g, k)})


def brute_colorable(g: Graph, k: int = 3) -> bool:
    return next(brute_colorings(g, k), None) is not None


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])

