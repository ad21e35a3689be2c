"""Color refinement (1-dimensional Weisfeiler-Leman).

Each round replaces a vertex colour by the pair (old colour, sorted list of
neighbour colours). The distinct pairs are sorted and renumbered ``0..c-1``,
so colour ids mean the same thing across graphs and across runs. A round
that leaves the number of classes unchanged leaves the partition unchanged
(the new colour contains the old one), and refinement stops there.

Rounds are computed naively in O(n + m) Python operations each. That is
plenty for graphs of a few thousand vertices.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Sequence

from .graph import Graph, disjoint_union

__all__ = [
    "Coloring",
    "PartitionRelation",
    "RefinementTrace",
    "color_multisets",
    "compare_partitions",
    "cr_distinguishes",
    "is_cr_discrete",
    "refine",
    "stable_coloring",
]


@dataclass(frozen=True)
class Coloring:
    """Vertex colouring with colour ids ``0..c-1``."""

    colors: tuple[int, ...]

    def __post_init__(self):
        used = set(self.colors)
        if used != set(range(len(used))):
            raise ValueError("color ids must form the contiguous range 0..c-1")

    @classmethod
    def uniform(cls, n: int) -> Coloring:
        return cls((0,) * n)

    @classmethod
    def discrete(cls, n: int) -> Coloring:
        return cls(tuple(range(n)))

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> Coloring:
        """Rank arbitrary sortable labels densely, preserving their order."""
        rank = {lab: i for i, lab in enumerate(sorted(set(labels)))}
        return cls(tuple(rank[lab] for lab in labels))

    @property
    def n(self) -> int:
        return len(self.colors)

    @property
    def num_colors(self) -> int:
        return len(set(self.colors))

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets per colour id, each sorted."""
        out: list[list[int]] = [[] for _ in range(self.num_colors)]
        for x, c in enumerate(self.colors):
            out[c].append(x)
        return tuple(tuple(cls) for cls in out)

    def partition(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(c) for c in self.classes)

    def is_discrete(self) -> bool:
        return self.num_colors == self.n

    def to_json(self) -> dict:
        return {"colors": list(self.colors)}


@dataclass(frozen=True)
class RefinementTrace:
    """Colourings ``C_0..C_t``.

    ``stable_at`` is the first ``t`` whose partition equals that of ``C_{t-1}``,
    or ``None`` when a round limit stopped refinement first.
    """

    rounds: tuple[Coloring, ...]
    stable_at: int | None

    @property
    def final(self) -> Coloring:
        return self.rounds[-1]

    def to_json(self) -> dict:
        return {"stable_at": self.stable_at, "colors": list(self.final.colors)}


def _refine_once(nbrs: Sequence[Sequence[int]], colors: Sequence[int]) -> tuple[int, ...]:
    sigs = [(colors[x], tuple(sorted(colors[y] for y in nb))) for x, nb in enumerate(nbrs)]
    rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
    return tuple(rank[s] for s in sigs)


def refine(g: Graph, init: Coloring | None = None, max_rounds: int | None = None) -> RefinementTrace:
    """Run colour refinement from ``init`` (uniform by default).

    ``max_rounds`` caps the number of refinement rounds performed.
    """
    if init is None:
        init = Coloring.uniform(g.n)
    if init.n != g.n:
        raise ValueError(f"coloring covers {init.n} vertices, graph has {g.n}")
    nbrs = g.neighbor_lists()
    rounds = [init]
    count = init.num_colors
    while max_rounds is None or len(rounds) <= max_rounds:
        nxt = Coloring(_refine_once(nbrs, rounds[-1].colors))
        rounds.append(nxt)
        if nxt.num_colors == count:
            return RefinementTrace(tuple(rounds), len(rounds) - 1)
        count = nxt.num_colors
    return RefinementTrace(tuple(rounds), None)


def stable_coloring(g: Graph, init: Coloring | None = None) -> Coloring:
    return refine(g, init).final


def is_cr_discrete(g: Graph, init: Coloring | None = None) -> bool:
    return stable_coloring(g, init).is_discrete()


def _union_trace(g, init_g, h, init_h, rounds):
    union, _, _ = disjoint_union(g, h)
    init_g = init_g if init_g is not None else Coloring.uniform(g.n)
    init_h = init_h if init_h is not None else Coloring.uniform(h.n)
    if init_g.n != g.n or init_h.n != h.n:
        raise ValueError("each coloring must cover its own graph")
    init = Coloring.from_labels(init_g.colors + init_h.colors)
    return refine(union, init, max_rounds=rounds)


def color_multisets(
    g: Graph,
    init_g: Coloring | None,
    h: Graph,
    init_h: Coloring | None,
    rounds: int | None = None,
) -> tuple[Counter, Counter]:
    """Colour multisets of each side after refining the disjoint union.

    Input colours are shared between the sides: colour ``c`` on ``g`` and
    colour ``c`` on ``h`` start equal. With ``rounds=None`` refinement runs
    until the union's partition is stable.
    """
    colors = _union_trace(g, init_g, h, init_h, rounds).final.colors
    return Counter(colors[: g.n]), Counter(colors[g.n :])


def cr_distinguishes(
    g: Graph,
    init_g: Coloring | None,
    h: Graph,
    init_h: Coloring | None,
) -> bool:
    left, right = color_multisets(g, init_g, h, init_h)
    return left != right


class PartitionRelation(enum.Enum):
    EQUAL = "equal"
    P_REFINES_Q = "p_refines_q"
    Q_REFINES_P = "q_refines_p"
    INCOMPARABLE = "incomparable"


def _refines(p: Sequence[int], q: Sequence[int]) -> bool:
    # p refines q iff every p-class sits inside one q-class
    image: dict[int, int] = {}
    for a, b in zip(p, q):
        if image.setdefault(a, b) != b:
            return False
    return True


def compare_partitions(p: Coloring, q: Coloring) -> PartitionRelation:
    if p.n != q.n:
        raise ValueError(f"partitions of different sets ({p.n} vs {q.n} vertices)")
    fwd = _refines(p.colors, q.colors)
    back = _refines(q.colors, p.colors)
    if fwd and back:
        return PartitionRelation.EQUAL
    if fwd:
        return PartitionRelation.P_REFINES_Q
    if back:
        return PartitionRelation.Q_REFINES_P
    return PartitionRelation.INCOMPARABLE
