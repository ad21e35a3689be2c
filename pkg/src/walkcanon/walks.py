"""Walk counts, the three-column canonical labeling and walk-matrix predicates.

``w_k(x)`` is the number of walks of length ``k`` starting at ``x``; the vector
of these counts over all vertices is ``A^k 1``. Short signatures (``k`` small
enough that ``n**k < 2**64``) are computed in ``uint64``; the full ``n x n``
walk matrix uses Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .graph import Graph, SizeError

__all__ = [
    "CanonLabeling",
    "Discreteness",
    "WalkMatrix",
    "WalkSignature",
    "WM_SINGULAR_CAP",
    "bareiss_determinant",
    "canonize_walk3",
    "is_wm_discrete",
    "is_wm_singular",
    "pair_walk_counts",
    "walk_matrix",
    "walk_signature",
    "walk_step",
    "wm_equivalent",
]

WM_SINGULAR_CAP = 128
_U64_LIMIT = 1 << 64
# rows per block in the fixed-width matvec; keeps the uint64 cast cache-sized
_BLOCK_ROWS = 64


def _matvec_u64(adj: np.ndarray, v: np.ndarray) -> np.ndarray:
    out = np.empty(adj.shape[0], dtype=np.uint64)
    for lo in range(0, adj.shape[0], _BLOCK_ROWS):
        np.matmul(adj[lo:lo + _BLOCK_ROWS].astype(np.uint64), v, out=out[lo:lo + _BLOCK_ROWS])
    return out


def _step_exact(nbrs: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(v[y] for y in nb) for nb in nbrs]


def walk_step(g: Graph, v: Sequence[int], *, exact: bool = False):
    """Return ``out[x] = sum of v[y] over neighbours y of x``.

    The default path works in ``uint64`` and raises ``OverflowError`` when the
    result could exceed 64 bits. With ``exact=True`` a list of Python ints is
    returned instead and no bound applies.
    """
    if len(v) != g.n:
        raise ValueError(f"vector has length {len(v)}, graph has {g.n} vertices")
    if exact:
        return _step_exact(g.neighbor_lists(), [int(a) for a in v])
    values = [int(a) for a in v]
    if any(a < 0 for a in values):
        raise ValueError("walk-count vectors are non-negative")
    bound = max(values, default=0) * max(g.n - 1, 0)
    if bound >= _U64_LIMIT:
        raise OverflowError("walk_step result may exceed 64 bits; use exact=True")
    return _matvec_u64(g.adjacency, np.array(values, dtype=np.uint64))


@dataclass(frozen=True)
class WalkSignature:
    """Per-vertex rows ``(w_1(x), ..., w_k(x))`` as an ``n x k`` uint64 array."""

    k: int
    rows: np.ndarray

    def row(self, x: int) -> tuple[int, ...]:
        return tuple(int(a) for a in self.rows[x])

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(r) for r in self.rows.tolist()]


def walk_signature(g: Graph, k: int) -> WalkSignature:
    if k < 1:
        raise ValueError("signature depth must be positive")
    if g.n ** k >= _U64_LIMIT:
        raise SizeError(f"n**k = {g.n}**{k} does not fit in 64 bits")
    adj = g.adjacency
    cols = [np.count_nonzero(adj, axis=1).astype(np.uint64)]
    for _ in range(k - 1):
        cols.append(_matvec_u64(adj, cols[-1]))
    rows = np.stack(cols, axis=1) if g.n else np.zeros((0, k), dtype=np.uint64)
    return WalkSignature(k, rows)


def _first_duplicate(rows: np.ndarray) -> tuple[int, int] | None:
    """First pair of equal rows in lexicographic row order, ties by vertex id."""
    if rows.shape[0] < 2:
        return None
    # lexsort uses the last key as primary
    order = np.lexsort(rows.T[::-1])
    sorted_rows = rows[order]
    same = np.all(sorted_rows[1:] == sorted_rows[:-1], axis=1)
    hits = np.flatnonzero(same)
    if hits.size == 0:
        return None
    i = int(hits[0])
    x, y = int(order[i]), int(order[i + 1])
    return (min(x, y), max(x, y))


@dataclass(frozen=True)
class CanonLabeling:
    labels: tuple[tuple[int, ...], ...]
    witness: tuple[int, int] | None = None

    @property
    def discrete(self) -> bool:
        return self.witness is None

    @property
    def outcome(self) -> str:
        return "Discrete" if self.discrete else "GiveUp"

    def to_json(self) -> dict:
        doc = {"outcome": self.outcome, "labels": [list(r) for r in self.labels]}
        if self.witness is not None:
            doc["witness"] = list(self.witness)
        return doc


def canonize_walk3(g: Graph) -> CanonLabeling:
    """Label each vertex by ``(w_1, w_2, w_3)``; give up if two labels agree.

    Degrees plus two adjacency matrix-vector products, so O(n^2) word
    operations. Stable-sorting the rows exposes any duplicate; the
    witness is the first duplicate pair in that order.
    """
    if g.n < 1:
        raise ValueError("canonize_walk3 needs at least one vertex")
    sig = walk_signature(g, 3)
    witness = _first_duplicate(sig.rows)
    return CanonLabeling(tuple(sig.as_tuples()), witness)


@dataclass(frozen=True)
class WalkMatrix:
    """Exact walk counts; ``rows[x][j] = w_j(x)`` for ``j = 0..n-1``."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> list[int]:
        return [r[j] for r in self.rows]


def walk_counts_exact(g: Graph, depth: int) -> list[list[int]]:
    """Columns ``A^j 1`` for ``j = 0..depth-1`` as Python ints."""
    nbrs = g.neighbor_lists()
    cols = [[1] * g.n]
    for _ in range(depth - 1):
        cols.append(_step_exact(nbrs, cols[-1]))
    return cols


def walk_matrix(g: Graph) -> WalkMatrix:
    if g.n < 1:
        raise ValueError("walk matrix needs at least one vertex")
    cols = walk_counts_exact(g, g.n)
    return WalkMatrix(tuple(zip(*cols)))


class Discreteness(NamedTuple):
    """Truthy when discrete; otherwise ``witness`` holds one equal-row pair."""

    discrete: bool
    witness: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.discrete


def _duplicate_rows(rows: Sequence[tuple[int, ...]]) -> tuple[int, int] | None:
    order = sorted(range(len(rows)), key=lambda x: (rows[x], x))
    for a, b in zip(order, order[1:]):
        if rows[a] == rows[b]:
            return (min(a, b), max(a, b))
    return None


def is_wm_discrete(g: Graph) -> Discreteness:
    witness = _duplicate_rows(walk_matrix(g).rows) if g.n else None
    return Discreteness(witness is None, witness)


def wm_equivalent(g: Graph, h: Graph) -> bool:
    """True when the two walk matrices agree up to a reordering of rows."""
    if g.n != h.n:
        return False
    if g.n == 0:
        return True
    return sorted(walk_matrix(g).rows) == sorted(walk_matrix(h).rows)


def bareiss_determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by fraction-free Gaussian elimination."""
    m = [list(map(int, row)) for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def is_wm_singular(g: Graph, cap: int = WM_SINGULAR_CAP) -> bool:
    if g.n > cap:
        raise SizeError(f"exact singularity test is capped at n <= {cap}, got {g.n}")
    if g.n == 0:
        return False
    return bareiss_determinant(walk_matrix(g).rows) == 0


def pair_walk_counts(g: Graph, x: int, y: int, k: int) -> int:
    """Exact number of length-``k`` walks from ``x`` to ``y``."""
    for v in (x, y):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range 0..{g.n - 1}")
    if k < 0:
        raise ValueError("walk length must be non-negative")
    v = [0] * g.n
    v[y] = 1
    nbrs = g.neighbor_lists()
    for _ in range(k):
        v = _step_exact(nbrs, v)
    return v[x]
