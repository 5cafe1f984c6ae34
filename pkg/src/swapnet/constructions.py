"""Named graphs, the clique-with-paths family and cycle extensions."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .equilibrium import Deviation
from .graph import Graph, GraphError, block_cut_tree, is_connected, norm_edge

NAMED_KINDS = ("star", "path", "cycle", "complete")


def make_named(kind: str, n: int) -> Graph:
    """Star (centre 1), path 1-2-...-n, cycle 1-2-...-n-1, or complete graph."""
    if not isinstance(n, int) or n < 1:
        raise GraphError(f"invalid size {n!r}")
    if kind == "star":
        return Graph(n, [(1, v) for v in range(2, n + 1)])
    if kind == "path":
        return Graph(n, [(v, v + 1) for v in range(1, n)])
    if kind == "cycle":
        if n < 3:
            raise GraphError("a cycle needs n >= 3")
        return Graph(n, [(v, v % n + 1) for v in range(1, n + 1)])
    if kind == "complete":
        return Graph(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])
    raise GraphError(f"unknown named graph {kind!r}; expected one of {', '.join(NAMED_KINDS)}")


@dataclass(frozen=True)
class CliquePathsParams:
    t: int
    k: int

    def __post_init__(self):
        if self.t < 2 or self.k < 0:
            raise GraphError(f"clique-with-paths needs t >= 2 and k >= 0, got t={self.t}, k={self.k}")

    @property
    def n(self) -> int:
        return self.t * (self.k + 1)

    @property
    def in_se_regime(self) -> bool:
        return self.t >= 4 and self.k <= 4 * self.t - 5


def clique_with_paths(p: CliquePathsParams | tuple[int, int]) -> Graph:
    """Clique on 1..t; clique vertex i carries the path i - t+i - 2t+i - ... - kt+i."""
    if not isinstance(p, CliquePathsParams):
        p = CliquePathsParams(*p)
    t, k = p.t, p.k
    edges = [(u, v) for u in range(1, t + 1) for v in range(u + 1, t + 1)]
    for i in range(1, t + 1):
        for j in range(k):
            edges.append((j * t + i, (j + 1) * t + i))
    return Graph(p.n, edges)


def _shortest_cycle_through(g: Graph, block: frozenset, b: int, x: int) -> int | None:
    """Length of a shortest cycle through edge bx inside ``block``."""
    dist = {x: 0}
    q = deque([x])
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if w not in block or w in dist:
                continue
            if v == x and w == b:
                continue
            if w == b:
                return dist[v] + 2
            dist[w] = dist[v] + 1
            q.append(w)
    return None


def cycle_extension(g: Graph, b1_block, target_block) -> Deviation:
    """The cycle-extension swap ``(a, b_1, c)`` from a two-connected block toward another block.

    ``b_1`` is the cutvertex of ``b1_block`` on the block-cutvertex path to
    ``target_block``, ``a`` the smallest neighbour of ``b_1`` on a shortest cycle
    through ``b_1`` inside ``b1_block`` and ``c`` the smallest vertex of
    ``target_block`` other than its cutvertex on that path.
    """
    if not is_connected(g):
        raise GraphError("cycle extension requires a connected graph")
    b1_block, target_block = frozenset(b1_block), frozenset(target_block)
    if b1_block == target_block:
        raise GraphError("blocks must be distinct")
    if len(b1_block) < 3:
        raise GraphError("the first block must have at least 3 vertices")
    bct = block_cut_tree(g)
    try:
        i = bct.blocks.index(b1_block)
        j = bct.blocks.index(target_block)
    except ValueError:
        raise GraphError("both arguments must be blocks of the graph") from None
    path = bct.path(i, j)
    b1, bk = path[1], path[-2]
    lengths = {}
    for x in g.adj[b1]:
        if x in b1_block:
            length = _shortest_cycle_through(g, b1_block, b1, x)
            if length is not None:
                lengths[x] = length
    if not lengths:
        raise GraphError("no cycle through the cutvertex inside the first block")
    best = min(lengths.values())
    a = min(x for x, length in lengths.items() if length == best)
    candidates = [c for c in sorted(target_block) if c != bk and norm_edge(a, c) not in g.edges]
    if not candidates:
        raise GraphError("no admissible target vertex in the target block")
    return Deviation.swap(a, b1, candidates[0])
