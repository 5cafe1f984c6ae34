"""Simple undirected graphs on players 1..n and their structural decompositions.

Graphs are immutable values.  Vertex destruction is modelled as deleting all
edges at a vertex while the vertex itself stays in the graph, so ``n`` never
changes between a graph and its deviations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph input or an operation applied outside its domain."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices 1..n.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``; ``adj[0]`` is unused.
    """

    __slots__ = ("n", "edges", "adj", "_key")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if not isinstance(n, int) or n < 1:
            raise GraphError(f"player count must be a positive integer, got {n!r}")
        normalized = set()
        for pair in edges:
            u, v = pair
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphError(f"edge ({u},{v}) has an endpoint outside 1..{n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            normalized.add(norm_edge(u, v))
        self._init(n, frozenset(normalized))

    @classmethod
    def _trusted(cls, n: int, edges: frozenset) -> "Graph":
        # Skips validation; edges must already be normalized pairs in range.
        g = cls.__new__(cls)
        g._init(n, edges)
        return g

    def _init(self, n: int, edges: frozenset) -> None:
        self.n = n
        self.edges = edges
        nbrs: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self.adj = tuple(tuple(sorted(x)) for x in nbrs)
        self._key = (n, edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def without_edge(self, u: int, v: int) -> "Graph":
        e = norm_edge(u, v)
        if e not in self.edges:
            raise GraphError(f"edge ({u},{v}) not in graph")
        return Graph._trusted(self.n, self.edges - {e})

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v or not (1 <= u <= self.n and 1 <= v <= self.n):
            raise GraphError(f"cannot add edge ({u},{v})")
        return Graph._trusted(self.n, self.edges | {norm_edge(u, v)})

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]`` (``perm[0]`` ignored)."""
        return Graph._trusted(self.n, frozenset(norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"

    def __getstate__(self):
        return (self.n, self.edges)

    def __setstate__(self, state):
        self._init(*state)


def build_graph(n: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, edge_list)


def reachable(g: Graph, source: int, skip_vertex: int = 0, skip_edge: Edge | None = None) -> set[int]:
    """Vertices reachable from ``source`` avoiding ``skip_vertex`` and ``skip_edge``."""
    seen = {source}
    todo = [source]
    while todo:
        v = todo.pop()
        for w in g.adj[v]:
            if w in seen or w == skip_vertex:
                continue
            if skip_edge is not None and norm_edge(v, w) == skip_edge:
                continue
            seen.add(w)
            todo.append(w)
    return seen


def is_connected(g: Graph) -> bool:
    return len(reachable(g, 1)) == g.n


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    parts = []
    for v in g.vertices:
        if v not in seen:
            comp = reachable(g, v)
            seen |= comp
            parts.append(frozenset(comp))
    return parts


@dataclass(frozen=True)
class ComponentPartition:
    parts: tuple[frozenset[int], ...]
    excluded: int | None = None


def components_after_destruction(g: Graph, target: int | Sequence[int]) -> ComponentPartition:
    """Components after destroying a vertex (int) or an edge (pair).

    For a vertex ``u`` all edges at ``u`` are deleted and ``u`` is excluded from
    the parts.  Parts are ordered by their smallest vertex.
    """
    if isinstance(target, int):
        u = target
        if not 1 <= u <= g.n:
            raise GraphError(f"vertex {u} outside 1..{g.n}")
        seen = {u}
        parts = []
        for v in g.vertices:
            if v not in seen:
                comp = reachable(g, v, skip_vertex=u)
                seen |= comp
                parts.append(frozenset(comp))
        return ComponentPartition(tuple(parts), u)
    e = norm_edge(*target)
    if e not in g.edges:
        raise GraphError(f"edge {tuple(target)} not in graph")
    h = Graph._trusted(g.n, g.edges - {e})
    return ComponentPartition(tuple(connected_components(h)), None)


@dataclass
class DFSInfo:
    """Low-link data of one depth-first search from ``root``.

    ``disc[v] == 0`` means ``v`` was not reached.  ``size[v]`` is the size of the
    DFS subtree at ``v``.  ``order`` lists reached vertices in discovery order.
    """

    root: int
    disc: list[int]
    low: list[int]
    parent: list[int]
    size: list[int]
    order: list[int]

    @property
    def reached(self) -> int:
        return len(self.order)


def dfs_lowlink(g: Graph, root: int) -> DFSInfo:
    n, adj = g.n, g.adj
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    parent = [0] * (n + 1)
    size = [1] * (n + 1)
    disc[root] = low[root] = 1
    order = [root]
    clock = 1
    stack = [(root, iter(adj[root]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not disc[w]:
                clock += 1
                disc[w] = low[w] = clock
                parent[w] = v
                order.append(w)
                stack.append((w, iter(adj[w])))
                break
            if w != parent[v] and disc[w] < low[v]:
                low[v] = disc[w]
        else:
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                size[p] += size[v]
    return DFSInfo(root, disc, low, parent, size, order)


def _require_connected(g: Graph, what: str) -> None:
    if not is_connected(g):
        raise GraphError(f"{what} requires a connected graph")


def find_bridges(g: Graph) -> set[Edge]:
    bridges = set()
    seen = [False] * (g.n + 1)
    for r in g.vertices:
        if seen[r]:
            continue
        info = dfs_lowlink(g, r)
        for v in info.order:
            seen[v] = True
            p = info.parent[v]
            if v != r and info.low[v] > info.disc[p]:
                bridges.add(norm_edge(p, v))
    return bridges


@dataclass(frozen=True)
class BridgeTree:
    islands: tuple[frozenset[int], ...]
    tree_edges: frozenset[tuple[int, int]]
    bridge_map: dict = field(hash=False, compare=False)

    def island_of(self, v: int) -> int:
        for i, isl in enumerate(self.islands):
            if v in isl:
                return i
        raise KeyError(v)

    def diameter(self) -> int:
        return _tree_diameter(len(self.islands), self.tree_edges)


def _tree_diameter(count: int, tree_edges: Iterable[tuple[int, int]]) -> int:
    if count <= 1:
        return 0
    nbrs: list[list[int]] = [[] for _ in range(count)]
    for i, j in tree_edges:
        nbrs[i].append(j)
        nbrs[j].append(i)

    def farthest(src: int) -> tuple[int, int]:
        dist = [-1] * count
        dist[src] = 0
        q = deque([src])
        last = src
        while q:
            x = q.popleft()
            last = x
            for y in nbrs[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    q.append(y)
        return last, dist[last]

    far, _ = farthest(0)
    return farthest(far)[1]


def bridge_tree(g: Graph) -> BridgeTree:
    _require_connected(g, "bridge_tree")
    bridges = find_bridges(g)
    h = Graph._trusted(g.n, g.edges - bridges)
    islands = tuple(connected_components(h))
    where = {}
    for i, isl in enumerate(islands):
        for v in isl:
            where[v] = i
    bridge_map = {}
    for u, v in sorted(bridges):
        te = norm_edge(where[u], where[v])
        bridge_map[te] = (u, v)
    return BridgeTree(islands, frozenset(bridge_map), bridge_map)


@dataclass(frozen=True)
class BlockCutTree:
    blocks: tuple[frozenset[int], ...]
    cutvertices: frozenset[int]
    # pairs (block index, cutvertex)
    tree_edges: frozenset[tuple[int, int]]

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def path(self, src_block: int, dst_block: int) -> list:
        """Alternating path block, cutvertex, block, ... between two blocks."""
        nbrs: dict = {}
        for bi, c in self.tree_edges:
            nbrs.setdefault(("B", bi), []).append(("C", c))
            nbrs.setdefault(("C", c), []).append(("B", bi))
        start, goal = ("B", src_block), ("B", dst_block)
        prev = {start: None}
        q = deque([start])
        while q:
            x = q.popleft()
            if x == goal:
                break
            for y in sorted(nbrs.get(x, ())):
                if y not in prev:
                    prev[y] = x
                    q.append(y)
        if goal not in prev:
            raise GraphError("blocks are not connected in the block-cutvertex tree")
        out = []
        x = goal
        while x is not None:
            out.append(x[1])
            x = prev[x]
        return out[::-1]


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Blocks and cutvertices via one low-link DFS with an edge stack."""
    _require_connected(g, "block_cut_tree")
    if g.n < 2:
        raise GraphError("block_cut_tree requires n >= 2")
    n, adj = g.n, g.adj
    disc = [0] * (n + 1)
    low = [0] * (n + 1)
    parent = [0] * (n + 1)
    root = 1
    disc[root] = low[root] = 1
    clock = 1
    edge_stack: list[Edge] = []
    blocks: list[frozenset[int]] = []
    cut: set[int] = set()
    root_children = 0
    stack = [(root, iter(adj[root]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if not disc[w]:
                clock += 1
                disc[w] = low[w] = clock
                parent[w] = v
                edge_stack.append((v, w))
                stack.append((w, iter(adj[w])))
                break
            if w != parent[v] and disc[w] < disc[v]:
                edge_stack.append((v, w))
                if disc[w] < low[v]:
                    low[v] = disc[w]
        else:
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            if low[v] < low[p]:
                low[p] = low[v]
            if low[v] >= disc[p]:
                if p == root:
                    root_children += 1
                else:
                    cut.add(p)
                comp = set()
                while True:
                    x, y = edge_stack.pop()
                    comp.add(x)
                    comp.add(y)
                    if (x, y) == (p, v):
                        break
                blocks.append(frozenset(comp))
    if root_children >= 2:
        cut.add(root)
    blocks.sort(key=lambda b: sorted(b))
    tree_edges = frozenset((i, c) for i, b in enumerate(blocks) for c in b if c in cut)
    return BlockCutTree(tuple(blocks), frozenset(cut), tree_edges)


@dataclass(frozen=True)
class StructureReport:
    is_tree: bool
    is_star: bool
    is_bridgeless: bool
    is_two_connected: bool
    bridge_tree_is_star_with_singleton_outer_islands: bool
    bridge_tree_diameter: int

    def flags(self) -> dict:
        return {
            "is_tree": self.is_tree,
            "is_star": self.is_star,
            "is_bridgeless": self.is_bridgeless,
            "is_two_connected": self.is_two_connected,
            "bridge_tree_star_singleton_outer": self.bridge_tree_is_star_with_singleton_outer_islands,
            "bridge_tree_diameter": self.bridge_tree_diameter,
        }


def _singleton_outer_star(bt: BridgeTree) -> bool:
    k = len(bt.islands)
    if k < 2:
        return False
    if k == 2:
        # Single bridge: one of the two islands must be a single vertex.
        return min(len(i) for i in bt.islands) == 1
    deg = [0] * k
    for i, j in bt.tree_edges:
        deg[i] += 1
        deg[j] += 1
    centers = [i for i in range(k) if deg[i] == k - 1]
    if len(centers) != 1:
        return False
    return all(len(bt.islands[i]) == 1 for i in range(k) if i != centers[0])


def classify(g: Graph) -> StructureReport:
    _require_connected(g, "classify")
    n, m = g.n, g.m
    is_tree = m == n - 1
    is_star = is_tree and (n <= 2 or max(len(a) for a in g.adj) == n - 1)
    bt = bridge_tree(g)
    is_bridgeless = len(bt.islands) == 1
    is_two_connected = n >= 2 and len(block_cut_tree(g).blocks) == 1
    return StructureReport(
        is_tree=is_tree,
        is_star=is_star,
        is_bridgeless=is_bridgeless,
        is_two_connected=is_two_connected,
        bridge_tree_is_star_with_singleton_outer_islands=_singleton_outer_star(bt),
        bridge_tree_diameter=bt.diameter(),
    )
