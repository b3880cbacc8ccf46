"""Proper k-coloring search with forced-vertex propagation.

Domains are bitmasks over the palette.  Whenever a vertex's domain shrinks to
a single color it is queued and that color is removed from its neighbours,
so rigid gadgets collapse without branching.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .graph import Coloring, Graph


def _single(d: int) -> bool:
    return d & (d - 1) == 0


def _propagate(domains: list[int], queue: list[int], adj: tuple[tuple[int, ...], ...]) -> bool:
    while queue:
        v = queue.pop()
        d = domains[v]
        for w in adj[v]:
            dw = domains[w]
            if dw & d:
                dw &= ~d
                if not dw:
                    return False
                domains[w] = dw
                if _single(dw):
                    queue.append(w)
    return True


def _initial(g: Graph, k: int, fixed: Mapping[int, int] | None) -> list[int] | None:
    domains = [(1 << k) - 1] * g.n
    queue = []
    for v, c in (fixed or {}).items():
        if not 0 <= c < k:
            return None
        if domains[v] != (1 << k) - 1 and domains[v] != 1 << c:
            return None
        domains[v] = 1 << c
        queue.append(v)
    # constraints among fixed vertices are checked by propagation itself
    if k == 1:
        queue = list(range(g.n))
    if not _propagate(domains, queue, g.adj):
        return None
    return domains


def _components(free: list[int], domains: list[int], g: Graph) -> list[list[int]]:
    """Connected components of the subgraph induced by undecided vertices."""
    seen = set()
    comps = []
    for s in free:
        if s in seen:
            continue
        seen.add(s)
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for w in g.adj[v]:
                if w not in seen and not _single(domains[w]):
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _solve(
    domains: list[int], g: Graph, scope: list[int] | None = None
) -> list[int] | None:
    """Depth-first search; returns a completed (all-singleton) domain list or None.

    Undecided vertices split into components that interact only through
    decided ones, so each component is solved on its own; a failure in one
    never re-enumerates another.
    """
    free = [v for v in (range(g.n) if scope is None else scope) if not _single(domains[v])]
    if not free:
        return domains
    comps = _components(free, domains, g)
    if len(comps) > 1:
        for comp in comps:
            domains = _solve(domains, g, comp)
            if domains is None:
                return None
        return domains
    best = min(free, key=lambda v: (domains[v].bit_count(), -len(g.adj[v]), v))
    d = domains[best]
    while d:
        low = d & -d
        d ^= low
        trial = domains.copy()
        trial[best] = low
        if _propagate(trial, [best], g.adj):
            done = _solve(trial, g, free)
            if done is not None:
                return done
    return None


def _decode(domains: list[int]) -> list[int]:
    return [d.bit_length() - 1 for d in domains]


def find_proper_coloring(
    g: Graph, k: int = 3, fixed: Mapping[int, int] | None = None
) -> Coloring | None:
    """Some proper k-coloring of ``g`` extending ``fixed``, or None."""
    if g.n == 0:
        return Coloring(k, ())
    domains = _initial(g, k, fixed)
    if domains is None:
        return None
    done = _solve(domains, g)
    return None if done is None else Coloring(k, _decode(done))


def is_colorable(g: Graph, k: int = 3, fixed: Mapping[int, int] | None = None) -> bool:
    return find_proper_coloring(g, k, fixed) is not None


def enumerate_extendable_colorings(
    g: Graph,
    terminals: Sequence[int],
    palette: int = 3,
    fixed: Mapping[int, int] | None = None,
) -> list[tuple[int, ...]]:
    """All color tuples on ``terminals`` that extend to a proper coloring of ``g``.

    Terminals are assigned first (in the given order) on top of ``fixed``;
    every partial assignment is checked for extendability before descending,
    so dead branches are cut as soon as they appear.  Output is sorted.
    """
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminals must be distinct")
    domains = _initial(g, palette, fixed)
    if domains is None or _solve(domains, g) is None:
        return []
    out: list[tuple[int, ...]] = []

    def rec(i: int, doms: list[int], prefix: tuple[int, ...]) -> None:
        if i == len(terminals):
            out.append(prefix)
            return
        t = terminals[i]
        d = doms[t]
        while d:
            low = d & -d
            d ^= low
            trial = doms.copy()
            trial[t] = low
            if _propagate(trial, [t], g.adj) and _solve(trial, g) is not None:
                rec(i + 1, trial, prefix + (low.bit_length() - 1,))

    rec(0, domains, ())
    return sorted(out)


def forced_colors(
    g: Graph, fixed: Mapping[int, int], vertices: Sequence[int], palette: int = 3
) -> dict[int, frozenset[int]]:
    """For each vertex, the set of colors it takes over all proper extensions of ``fixed``."""
    out = {}
    for v in vertices:
        out[v] = frozenset(
            c for (c,) in enumerate_extendable_colorings(g, [v], palette, fixed)
        )
    return out
