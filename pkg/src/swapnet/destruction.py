"""Relevance, separation, destroyer measures and exact player / social cost.

All costs and probabilities are :class:`fractions.Fraction`; a disconnected
graph costs :data:`INFINITY`.  No floating point is used anywhere on these paths.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .graph import Edge, Graph, GraphError, dfs_lowlink, is_connected, norm_edge, reachable

EDGE_KINDS = ("uniform_edge", "uniform_bridge", "extreme_edge")
VERTEX_KINDS = ("uniform_vertex", "degree_proportional_vertex", "extreme_vertex", "mixture_vertex")

_CLI_NAMES = {
    "uniform_edge": "uniform-edge",
    "uniform_bridge": "uniform-bridge",
    "extreme_edge": "extreme-edge",
    "uniform_vertex": "uniform-vertex",
    "degree_proportional_vertex": "degree-vertex",
    "extreme_vertex": "extreme-vertex",
}
_FROM_CLI = {v: k for k, v in _CLI_NAMES.items()}


class DestroyerError(ValueError):
    pass


@total_ordering
class Infinity:
    """Positive infinity for exact costs; greater than every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("swapnet-infinity")

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())


INFINITY = Infinity()
ExactCost = Union[Fraction, Infinity]


def format_cost(x) -> str:
    """Exact text: ``p/q``, an integer, or ``inf``."""
    if x is INFINITY:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DestroyerError(f"not an exact rational: {text!r}") from None


@dataclass(frozen=True)
class DestroyerSpec:
    kind: str
    epsilon: Fraction | None = None

    def __post_init__(self):
        if self.kind not in EDGE_KINDS + VERTEX_KINDS:
            raise DestroyerError(f"unknown destroyer kind {self.kind!r}")
        if self.kind == "mixture_vertex":
            if self.epsilon is None:
                raise DestroyerError("mixture_vertex needs a mixing parameter")
            eps = Fraction(self.epsilon)
            if not 0 <= eps <= 1:
                raise DestroyerError(f"mixing parameter {eps} outside [0,1]")
            object.__setattr__(self, "epsilon", eps)
        elif self.epsilon is not None:
            raise DestroyerError(f"{self.kind} takes no parameter")

    @property
    def domain(self) -> str:
        return "edges" if self.kind in EDGE_KINDS else "vertices"

    @property
    def exploratory(self) -> bool:
        """True for the mixture family, which has no counterpart in the source model."""
        return self.kind == "mixture_vertex"

    def __str__(self) -> str:
        if self.kind == "mixture_vertex":
            e = self.epsilon
            return f"mixture-vertex:{e.numerator}/{e.denominator}"
        return _CLI_NAMES[self.kind]

    @classmethod
    def parse(cls, text: str) -> "DestroyerSpec":
        text = text.strip()
        if text.startswith("mixture-vertex:"):
            return cls("mixture_vertex", parse_fraction(text.split(":", 1)[1]))
        if text in _FROM_CLI:
            return cls(_FROM_CLI[text])
        if text in EDGE_KINDS + VERTEX_KINDS and text != "mixture_vertex":
            return cls(text)
        raise DestroyerError(
            f"unknown destroyer {text!r}; expected one of "
            + ", ".join(_CLI_NAMES.values()) + ", mixture-vertex:<p>/<q>"
        )


UNIFORM_EDGE = DestroyerSpec("uniform_edge")
UNIFORM_BRIDGE = DestroyerSpec("uniform_bridge")
EXTREME_EDGE = DestroyerSpec("extreme_edge")
UNIFORM_VERTEX = DestroyerSpec("uniform_vertex")
DEGREE_VERTEX = DestroyerSpec("degree_proportional_vertex")
EXTREME_VERTEX = DestroyerSpec("extreme_vertex")

BASE_DESTROYERS = (UNIFORM_EDGE, UNIFORM_BRIDGE, EXTREME_EDGE, UNIFORM_VERTEX, DEGREE_VERTEX, EXTREME_VERTEX)


def mixture(epsilon) -> DestroyerSpec:
    return DestroyerSpec("mixture_vertex", Fraction(epsilon))


@dataclass(frozen=True)
class ProbabilityMeasure:
    domain_kind: str
    weights: dict

    def total(self) -> Fraction:
        return sum(self.weights.values(), Fraction(0))

    def __getitem__(self, x):
        return self.weights.get(x, Fraction(0))


@dataclass(frozen=True)
class SeparationProfile:
    domain_kind: str
    values: dict
    max_value: int
    argmax: frozenset


class Snapshot:
    """Everything the cost of one player needs, from a single low-link DFS rooted at that player.

    ``rel[u]`` is the vertex relevance of ``u`` for the root, ``sep[u]`` the vertex
    separation, and ``bridges`` lists ``(edge, k)`` where ``k`` is the size of
    the side of the bridge not containing the root (its edge relevance).
    """

    __slots__ = ("n", "m", "root", "connected", "rel", "sep", "bridges", "deg")

    def __init__(self, g: Graph, root: int):
        n = g.n
        self.n, self.m, self.root = n, g.m, root
        self.deg = [len(a) for a in g.adj]
        info = dfs_lowlink(g, root)
        self.connected = info.reached == n
        if not self.connected:
            return
        disc, low, parent, size = info.disc, info.low, info.parent, info.size
        cut_sizes: list[list[int]] = [[] for _ in range(n + 1)]
        bridges = []
        for c in info.order[1:]:
            p = parent[c]
            if low[c] >= disc[p]:
                cut_sizes[p].append(size[c])
                if low[c] > disc[p]:
                    bridges.append((norm_edge(p, c), size[c]))
        rel = [0] * (n + 1)
        sep = [0] * (n + 1)
        full = n * n - 1
        for u in range(1, n + 1):
            parts = cut_sizes[u]
            s = sum(parts)
            sq = sum(b * b for b in parts)
            if u != root:
                rel[u] = 1 + s
                rest = n - 1 - s
                sq += rest * rest
            sep[u] = full - sq
        rel[root] = n - 1
        self.rel = rel
        self.sep = sep
        self.bridges = bridges

    def cost(self, spec: DestroyerSpec) -> ExactCost:
        if not self.connected:
            return INFINITY
        if self.m == 0:
            return Fraction(0)
        kind = spec.kind
        if kind == "uniform_edge":
            return Fraction(sum(k for _, k in self.bridges), self.m)
        if kind == "uniform_bridge":
            if not self.bridges:
                return Fraction(0)
            return Fraction(sum(k for _, k in self.bridges), len(self.bridges))
        if kind == "extreme_edge":
            if not self.bridges:
                return Fraction(0)
            n = self.n
            nu = [min(k, n - k) for _, k in self.bridges]
            top = max(nu)
            chosen = [k for (_, k), x in zip(self.bridges, nu) if x == top]
            return Fraction(sum(chosen), len(chosen))
        rel = self.rel
        if kind == "uniform_vertex":
            return Fraction(sum(rel), self.n)
        if kind == "degree_proportional_vertex":
            deg = self.deg
            return Fraction(sum(r * d for r, d in zip(rel, deg)), 2 * self.m)
        if kind == "extreme_vertex":
            return self._extreme_vertex_cost()
        eps = spec.epsilon
        return (1 - eps) * Fraction(sum(rel), self.n) + eps * self._extreme_vertex_cost()

    def _extreme_vertex_cost(self) -> Fraction:
        sep = self.sep
        top = max(sep[1:])
        total = count = 0
        for u in range(1, self.n + 1):
            if sep[u] == top:
                total += self.rel[u]
                count += 1
        return Fraction(total, count)


def _check_edge(g: Graph, e) -> Edge:
    ne = norm_edge(*e)
    if ne not in g.edges:
        raise GraphError(f"edge {tuple(e)} not in graph")
    return ne


def relevance_edge(g: Graph, e, v: int) -> int:
    """Number of vertices that ``v`` can reach only through edge ``e``."""
    ne = _check_edge(g, e)
    return g.n - len(reachable(g, v, skip_edge=ne))


def relevance_vertex(g: Graph, u: int, v: int) -> int:
    """Number of vertices ``w`` such that every ``v``-``w`` path visits ``u``."""
    if u == v:
        return g.n - 1
    return g.n - len(reachable(g, v, skip_vertex=u))


def separation_edge(g: Graph, e) -> int:
    ne = _check_edge(g, e)
    side = len(reachable(g, ne[0], skip_edge=ne))
    if side == g.n:
        return 0
    nu = min(side, g.n - side)
    return 2 * nu * (g.n - nu)


def separation_vertex(g: Graph, u: int) -> int:
    from .graph import components_after_destruction

    parts = components_after_destruction(g, u).parts
    return g.n * g.n - 1 - sum(len(p) ** 2 for p in parts)


def separation_profile(g: Graph, domain_kind: str) -> SeparationProfile:
    if not is_connected(g):
        raise GraphError("separation profile requires a connected graph")
    snap = Snapshot(g, 1)
    if domain_kind == "vertices":
        values = {u: snap.sep[u] for u in g.vertices}
    elif domain_kind == "edges":
        values = dict.fromkeys(g.sorted_edges(), 0)
        n = g.n
        for e, k in snap.bridges:
            nu = min(k, n - k)
            values[e] = 2 * nu * (n - nu)
    else:
        raise ValueError(f"domain kind must be 'edges' or 'vertices', got {domain_kind!r}")
    if not values:
        return SeparationProfile(domain_kind, values, 0, frozenset())
    top = max(values.values())
    return SeparationProfile(domain_kind, values, top, frozenset(x for x, s in values.items() if s == top))


def _uniform(domain_kind: str, support) -> ProbabilityMeasure:
    support = list(support)
    w = Fraction(1, len(support))
    return ProbabilityMeasure(domain_kind, {x: w for x in support})


def destroyer_measure(spec: DestroyerSpec, g: Graph) -> ProbabilityMeasure:
    if not is_connected(g):
        raise DestroyerError("destroyer measure is undefined on a disconnected graph")
    kind = spec.kind
    if spec.domain == "edges":
        if g.m == 0:
            raise DestroyerError("edge destroyer needs at least one edge")
        if kind == "uniform_edge":
            return _uniform("edges", g.sorted_edges())
        if kind == "uniform_bridge":
            prof = separation_profile(g, "edges")
            bridges = [e for e, s in prof.values.items() if s > 0]
            # bridgeless: any measure is allowed, fall back to uniform over all edges
            return _uniform("edges", bridges or g.sorted_edges())
        return _uniform("edges", sorted(separation_profile(g, "edges").argmax))
    if kind == "uniform_vertex":
        return _uniform("vertices", g.vertices)
    if kind == "degree_proportional_vertex":
        if g.m == 0:
            raise DestroyerError("degree-proportional destroyer needs at least one edge")
        two_m = 2 * g.m
        return ProbabilityMeasure("vertices", {u: Fraction(g.degree(u), two_m) for u in g.vertices})
    vmax = sorted(separation_profile(g, "vertices").argmax)
    if kind == "extreme_vertex":
        return _uniform("vertices", vmax)
    eps = spec.epsilon
    weights = {u: (1 - eps) * Fraction(1, g.n) for u in g.vertices}
    for u in vmax:
        weights[u] += eps * Fraction(1, len(vmax))
    return ProbabilityMeasure("vertices", weights)


def player_cost(g: Graph, spec: DestroyerSpec, v: int) -> ExactCost:
    if not 1 <= v <= g.n:
        raise GraphError(f"player {v} outside 1..{g.n}")
    return Snapshot(g, v).cost(spec)


def player_costs(g: Graph, spec: DestroyerSpec) -> dict[int, ExactCost]:
    return {v: player_cost(g, spec, v) for v in g.vertices}


def social_cost(g: Graph, spec: DestroyerSpec) -> ExactCost:
    """Social cost, computed as the sum of player costs and cross-checked against the expected separation."""
    if not is_connected(g):
        return INFINITY
    by_players = sum(player_costs(g, spec).values(), Fraction(0))
    if g.m == 0:
        return by_players
    measure = destroyer_measure(spec, g)
    prof = separation_profile(g, measure.domain_kind)
    by_separation = sum((prof.values[x] * w for x, w in measure.weights.items()), Fraction(0))
    if by_players != by_separation:
        raise ArithmeticError(
            f"social cost mismatch for {spec}: players {by_players} vs separation {by_separation}"
        )
    return by_players
