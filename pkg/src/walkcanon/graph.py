"""Dense undirected simple graphs, seeded G(n, p) sampling and text formats.

Vertices are ``0..n-1``. Adjacency is held as a read-only ``n x n`` boolean
numpy array; each row is the neighbourhood bitset of one vertex.

Random graphs use numpy's Philox4x32 counter-based generator seeded through
``SeedSequence(seed)``. One uniform double is drawn per unordered pair, in
lexicographic order of ``(x, y)`` with ``x < y``, and the pair becomes an edge
when the draw is ``< p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "Graph",
    "Graph6Error",
    "SizeError",
    "VertexMap",
    "MAX_GRAPH6_ORDER",
    "degree_sequence",
    "disjoint_union",
    "from_adjlist",
    "from_graph6",
    "parse_graph",
    "random_gnp",
    "to_adjlist",
    "to_graph6",
]

MAX_GRAPH6_ORDER = 1 << 16
_GRAPH6_HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    """Malformed graph6 input; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class SizeError(ValueError):
    """Input is larger than an operation supports."""


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("_adj", "_nbrs")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError(f"adjacency must be square, got shape {adj.shape}")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency must be symmetric")
        if adj.diagonal().any():
            raise ValueError("self-loops are not allowed")
        adj.flags.writeable = False
        self._adj = adj
        self._nbrs: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def _trusted(cls, adj: np.ndarray) -> Graph:
        # Caller guarantees a fresh symmetric loop-free bool array.
        g = cls.__new__(cls)
        adj.flags.writeable = False
        g._adj = adj
        g._nbrs = None
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls._trusted(adj)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls._trusted(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls._trusted(~np.eye(n, dtype=bool))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        """Read-only boolean adjacency matrix."""
        return self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self.neighbor_lists()[x]

    def neighbor_lists(self) -> tuple[tuple[int, ...], ...]:
        if self._nbrs is None:
            self._nbrs = tuple(tuple(np.flatnonzero(row).tolist()) for row in self._adj)
        return self._nbrs

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self._adj, 1))
        return zip(us.tolist(), vs.tolist())

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(self._adj)) // 2

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph in which old vertex ``x`` becomes ``perm[x]``."""
        perm = np.asarray(perm, dtype=np.intp)
        if perm.shape != (self.n,) or not np.array_equal(np.sort(perm), np.arange(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        inv = np.empty_like(perm)
        inv[perm] = np.arange(self.n)
        return Graph._trusted(self._adj[np.ix_(inv, inv)].copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class VertexMap:
    """Injective map from the vertices of one graph into another."""

    targets: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.targets)) != len(self.targets):
            raise ValueError("vertex map must be injective")

    def __getitem__(self, x: int) -> int:
        return self.targets[x]

    def __len__(self) -> int:
        return len(self.targets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.targets)


def random_gnp(n: int, p: float, seed: int) -> Graph:
    """Sample G(n, p); identical ``(n, p, seed)`` always gives the same graph."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    if not 0 <= seed < 1 << 64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    rng = np.random.Generator(np.random.Philox(seed))
    iu, ju = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    adj = np.zeros((n, n), dtype=bool)
    adj[iu[mask], ju[mask]] = True
    adj |= adj.T
    return Graph._trusted(adj)


def degree_sequence(g: Graph) -> list[int]:
    return np.count_nonzero(g.adjacency, axis=1).tolist()


def disjoint_union(g: Graph, h: Graph) -> tuple[Graph, VertexMap, VertexMap]:
    """Place ``g`` on ``0..n_g-1`` and ``h`` on ``n_g..n_g+n_h-1``."""
    ng, nh = g.n, h.n
    adj = np.zeros((ng + nh, ng + nh), dtype=bool)
    adj[:ng, :ng] = g.adjacency
    adj[ng:, ng:] = h.adjacency
    return (
        Graph._trusted(adj),
        VertexMap(tuple(range(ng))),
        VertexMap(tuple(range(ng, ng + nh))),
    )


# graph6 ---------------------------------------------------------------------


def _encode_order(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 (no ``>>graph6<<`` header, no newline)."""
    n = g.n
    if n > MAX_GRAPH6_ORDER:
        raise SizeError(f"graph6 output is capped at n <= {MAX_GRAPH6_ORDER}, got {n}")
    # upper triangle column by column: x(0,1), x(0,2), x(1,2), x(0,3), ...
    jj, ii = np.tril_indices(n, -1)
    bits = g.adjacency[ii, jj]
    pad = (-bits.size) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=bool)]).reshape(-1, 6)
    values = bits @ (1 << np.arange(5, -1, -1))
    return _encode_order(n) + "".join(chr(int(v) + 63) for v in values)


def _decode_order(data: bytes, start: int) -> tuple[int, int]:
    def sixes(lo: int, count: int) -> int:
        if lo + count > len(data):
            raise Graph6Error("truncated order header", len(data))
        value = 0
        for i in range(lo, lo + count):
            c = data[i]
            if not 63 <= c <= 126:
                raise Graph6Error(f"character {c!r} outside the graph6 range", i)
            value = (value << 6) | (c - 63)
        return value

    if start >= len(data):
        raise Graph6Error("empty graph6 string", start)
    if data[start] != 126:
        return sixes(start, 1), start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        n = sixes(start + 2, 6)
        if n <= 258047:
            raise Graph6Error("non-minimal 8-byte order header", start)
        return n, start + 8
    n = sixes(start + 1, 3)
    if n < 63:
        raise Graph6Error("non-minimal 4-byte order header", start)
    return n, start + 4


def from_graph6(text: str) -> Graph:
    """Decode a single graph6 string, optionally prefixed by ``>>graph6<<``."""
    text = text.strip()
    try:
        data = text.encode("ascii")
    except UnicodeEncodeError as exc:
        raise Graph6Error("non-ASCII character", exc.start) from None
    start = len(_GRAPH6_HEADER) if text.startswith(_GRAPH6_HEADER) else 0
    if start < len(data) and data[start] == ord(":"):
        raise Graph6Error("sparse6 input is not supported", start)
    n, pos = _decode_order(data, start)
    if n > MAX_GRAPH6_ORDER:
        raise SizeError(f"graph6 input is capped at n <= {MAX_GRAPH6_ORDER}, got {n}")
    nbits = n * (n - 1) // 2
    nchars = -(-nbits // 6)
    body = data[pos:]
    if len(body) != nchars:
        where = pos + min(len(body), nchars)
        raise Graph6Error(f"expected {nchars} data bytes for n={n}, found {len(body)}", where)
    codes = np.frombuffer(body, dtype=np.uint8).astype(np.int64)
    bad = np.flatnonzero((codes < 63) | (codes > 126))
    if bad.size:
        raise Graph6Error(f"character {body[bad[0]]!r} outside the graph6 range", pos + int(bad[0]))
    codes -= 63
    bits = ((codes[:, None] >> np.arange(5, -1, -1)) & 1).astype(bool).ravel()
    if bits[nbits:].any():
        raise Graph6Error("non-zero padding bits", len(data) - 1)
    jj, ii = np.tril_indices(n, -1)
    adj = np.zeros((n, n), dtype=bool)
    adj[ii, jj] = bits[:nbits]
    adj |= adj.T
    return Graph._trusted(adj)


# adjacency-list text -----------------------------------------------------------


def to_adjlist(g: Graph) -> str:
    lines = [str(g.n)]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_adjlist(text: str) -> Graph:
    """Parse ``n`` on the first line, then one ``u v`` edge per line (0-based).

    Blank lines and ``#`` comments are ignored. Repeated edges are rejected.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise ValueError("adjacency list is empty")
    lineno, head = rows[0]
    if len(head) != 1 or not head[0].isdigit():
        raise ValueError(f"line {lineno}: expected the vertex count")
    n = int(head[0])
    seen = set()
    for lineno, fields in rows[1:]:
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ValueError(f"line {lineno}: vertex ids must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise ValueError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"line {lineno}: repeated edge {key}")
        seen.add(key)
    return Graph.from_edges(n, seen)


def parse_graph(text: str) -> Graph:
    """Read either format: a lone integer on the first line means adjacency list."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.isdigit():
            return from_adjlist(text)
        break
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise ValueError(f"expected exactly one graph6 line, found {len(lines)}")
    return from_graph6(lines[0])
