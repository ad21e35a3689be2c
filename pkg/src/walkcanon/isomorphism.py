"""Exhaustive isomorphism search restricted by degree classes.

Deliberately independent of colour refinement so it can serve as a second
opinion next to it. Vertices are matched in BFS order, so every vertex after
the first in its component already has a mapped neighbour, and candidates
are limited to that neighbour's image's neighbourhood.
"""

from __future__ import annotations

from collections import deque
from typing import Sequence

import numpy as np

from .graph import Graph

__all__ = ["find_isomorphism", "is_automorphism", "is_isomorphic"]


def _search_order(g: Graph, deg: np.ndarray) -> list[int]:
    # rarest degree first within each component
    freq = np.bincount(deg, minlength=1)
    seen = np.zeros(g.n, dtype=bool)
    order: list[int] = []
    for root in sorted(range(g.n), key=lambda x: (freq[deg[x]], x)):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(g.neighbors(x), key=lambda y: (freq[deg[y]], y)):
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return order


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """Return ``f`` with ``g.has_edge(u, v) == h.has_edge(f[u], f[v])``, or None."""
    n = g.n
    if n != h.n or g.num_edges != h.num_edges:
        return None
    dg = np.count_nonzero(g.adjacency, axis=1)
    dh = np.count_nonzero(h.adjacency, axis=1)
    if not np.array_equal(np.sort(dg), np.sort(dh)):
        return None
    if n == 0:
        return []
    ga, ha = g.adjacency, h.adjacency
    order = _search_order(g, dg)
    # for each position, an earlier-placed neighbour to anchor candidates on
    placed_at = {v: i for i, v in enumerate(order)}
    anchor = []
    for i, v in enumerate(order):
        prev = [u for u in g.neighbors(v) if placed_at[u] < i]
        anchor.append(min(prev, key=placed_at.__getitem__) if prev else None)
    by_degree: dict[int, list[int]] = {}
    for y in range(n):
        by_degree.setdefault(int(dh[y]), []).append(y)

    f = [-1] * n
    used = np.zeros(n, dtype=bool)

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        done = order[:i]
        images = [f[u] for u in done]
        want = ga[v, done]
        a = anchor[i]
        pool = h.neighbors(f[a]) if a is not None else by_degree.get(int(dg[v]), [])
        for y in pool:
            if used[y] or dh[y] != dg[v]:
                continue
            if images and not np.array_equal(ha[y, images], want):
                continue
            f[v] = y
            used[y] = True
            if extend(i + 1):
                return True
            used[y] = False
        f[v] = -1
        return False

    return list(f) if extend(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def is_automorphism(g: Graph, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=np.intp)
    if p.shape != (g.n,) or not np.array_equal(np.sort(p), np.arange(g.n)):
        return False
    return bool(np.array_equal(g.adjacency[np.ix_(p, p)], g.adjacency))
