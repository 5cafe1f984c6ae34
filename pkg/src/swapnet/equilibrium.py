"""Swaps, single-edge removals, swap-equilibrium verification and response dynamics.

Deviations are always visited in one fixed order: every swap ``(a, b, c)`` with
``a``, then ``b``, then ``c`` ascending, followed by every removal ``(a, b)``
with ``a`` then ``b`` ascending.  Witnesses and traces are therefore
reproducible.  Only strict cost decreases refute an equilibrium.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .destruction import INFINITY, DestroyerSpec, ExactCost, Snapshot, format_cost, social_cost
from .graph import Graph, GraphError, find_bridges, is_connected, norm_edge, reachable


@dataclass(frozen=True, order=True)
class Deviation:
    kind: str  # "swap" or "removal"
    a: int
    b: int
    c: int | None = None

    @classmethod
    def swap(cls, a: int, b: int, c: int) -> "Deviation":
        return cls("swap", a, b, c)

    @classmethod
    def removal(cls, a: int, b: int) -> "Deviation":
        return cls("removal", a, b)

    def __str__(self) -> str:
        if self.kind == "swap":
            return f"swap({self.a},{self.b},{self.c})"
        return f"removal({self.a},{self.b})"

    def to_json(self) -> dict:
        d = {"kind": self.kind, "a": self.a, "b": self.b}
        if self.kind == "swap":
            d["c"] = self.c
        return d

    def validate(self, g: Graph) -> None:
        a, b, c = self.a, self.b, self.c
        if not g.has_edge(a, b):
            raise GraphError(f"{self}: edge ({a},{b}) not in graph")
        if self.kind == "swap":
            if c is None or len({a, b, c}) != 3 or not 1 <= c <= g.n:
                raise GraphError(f"{self}: players must be distinct and in range")
            if g.has_edge(a, c):
                raise GraphError(f"{self}: edge ({a},{c}) already present")
        elif self.kind != "removal":
            raise GraphError(f"unknown deviation kind {self.kind!r}")


@dataclass(frozen=True)
class Witness:
    deviation: Deviation
    cost_before: Fraction
    cost_after: Fraction

    @property
    def player(self) -> int:
        return self.deviation.a

    def to_json(self) -> dict:
        return {
            "deviation": self.deviation.to_json(),
            "player": self.player,
            "cost_before": format_cost(self.cost_before),
            "cost_after": format_cost(self.cost_after),
        }

    def __str__(self) -> str:
        return f"{self.deviation} (cost {format_cost(self.cost_before)} -> {format_cost(self.cost_after)})"


@dataclass(frozen=True)
class EquilibriumVerdict:
    is_se: bool
    witness: Witness | None = None


def enumerate_swaps(g: Graph, players: Iterable[int] | None = None) -> list[Deviation]:
    n, adj = g.n, g.adj
    out = []
    for a in players if players is not None else g.vertices:
        nbrs = set(adj[a])
        targets = [c for c in range(1, n + 1) if c != a and c not in nbrs]
        for b in adj[a]:
            out.extend(Deviation("swap", a, b, c) for c in targets)
    return out


def enumerate_removals(g: Graph, players: Iterable[int] | None = None) -> list[Deviation]:
    return [
        Deviation("removal", a, b)
        for a in (players if players is not None else g.vertices)
        for b in g.adj[a]
    ]


def enumerate_bridge_swaps(g: Graph) -> list[Deviation]:
    """Swaps of a bridge ``ab`` that keep the graph connected."""
    if not is_connected(g):
        raise GraphError("bridge swaps require a connected graph")
    bridges = find_bridges(g)
    out = []
    for s in enumerate_swaps(g):
        e = norm_edge(s.a, s.b)
        if e in bridges and s.c in reachable(g, s.b, skip_edge=e):
            out.append(s)
    return out


def apply_deviation(g: Graph, d: Deviation) -> Graph:
    d.validate(g)
    edges = g.edges - {norm_edge(d.a, d.b)}
    if d.kind == "swap":
        edges = edges | {norm_edge(d.a, d.c)}
    return Graph._trusted(g.n, edges)


def _apply_unchecked(g: Graph, d: Deviation) -> Graph:
    edges = g.edges - {norm_edge(d.a, d.b)}
    if d.c is not None:
        edges = edges | {norm_edge(d.a, d.c)}
    return Graph._trusted(g.n, edges)


def _deviations(g: Graph, players: list[int]) -> Iterator[Deviation]:
    yield from enumerate_swaps(g, players)
    yield from enumerate_removals(g, players)


def _search(g: Graph, spec: DestroyerSpec, players: list[int], best: bool) -> Witness | None:
    if not is_connected(g):
        raise GraphError("equilibrium checks require a connected graph")
    before: dict[int, ExactCost] = {}
    chosen: Witness | None = None
    for d in _deviations(g, players):
        a = d.a
        if a not in before:
            before[a] = Snapshot(g, a).cost(spec)
        current = before[a]
        if current == 0:
            continue  # costs are non-negative, nothing beats zero
        after = Snapshot(_apply_unchecked(g, d), a).cost(spec)
        if after is INFINITY or not after < current:
            continue
        if not best:
            return Witness(d, current, after)
        if chosen is None or after < chosen.cost_after:
            chosen = Witness(d, current, after)
    return chosen


def is_swap_equilibrium(g: Graph, spec: DestroyerSpec) -> EquilibriumVerdict:
    w = _search(g, spec, list(g.vertices), best=False)
    return EquilibriumVerdict(w is None, w)


def find_improving_deviation(
    g: Graph, spec: DestroyerSpec, player: int | None = None, best: bool = False
) -> Witness | None:
    """First improving deviation (or, with ``best``, a cost-minimizing one; ties go to the earliest)."""
    players = list(g.vertices) if player is None else [player]
    return _search(g, spec, players, best)


def verify_witness(g: Graph, spec: DestroyerSpec, w: Witness) -> bool:
    """Recompute both costs from scratch and confirm a strict decrease."""
    from .destruction import player_cost

    after_graph = apply_deviation(g, w.deviation)
    before = player_cost(g, spec, w.player)
    after = player_cost(after_graph, spec, w.player)
    return before == w.cost_before and after == w.cost_after and after < before


@dataclass(frozen=True)
class DynamicsStep:
    index: int
    deviation: Deviation
    cost_before: Fraction
    cost_after: Fraction
    social_cost: Fraction
    graph6: str


@dataclass
class DynamicsTrace:
    spec: DestroyerSpec
    initial_graph6: str
    initial_social_cost: ExactCost
    steps: list[DynamicsStep] = field(default_factory=list)
    outcome: str = ""  # "equilibrium", "cycle" or "cutoff"
    final: Graph | None = None

    def to_json(self) -> dict:
        return {
            "destroyer": str(self.spec),
            "initial": self.initial_graph6,
            "initial_social_cost": format_cost(self.initial_social_cost),
            "steps": [
                {
                    "step": s.index,
                    "deviation": s.deviation.to_json(),
                    "cost_before": format_cost(s.cost_before),
                    "cost_after": format_cost(s.cost_after),
                    "social_cost": format_cost(s.social_cost),
                    "graph": s.graph6,
                }
                for s in self.steps
            ],
            "outcome": self.outcome,
        }


def best_response_dynamics(
    g0: Graph, spec: DestroyerSpec, max_steps: int, best_response: bool = False
) -> DynamicsTrace:
    """Round-robin improving-move dynamics from ``g0``.

    Each step scans players cyclically, starting after the last mover, and applies
    that player's first improving deviation (or its best one with ``best_response``).
    Stops at an equilibrium, when a graph repeats, or after ``max_steps`` moves.
    """
    from .io import to_graph6

    n = g0.n
    trace = DynamicsTrace(spec, to_graph6(g0), social_cost(g0, spec))
    g = g0
    seen = {g0}
    start = 1
    while True:
        move = None
        for i in range(n):
            p = (start - 1 + i) % n + 1
            w = find_improving_deviation(g, spec, p, best=best_response)
            if w is not None:
                move = w
                break
        if move is None:
            trace.outcome = "equilibrium"
            break
        if len(trace.steps) >= max_steps:
            trace.outcome = "cutoff"
            break
        g = apply_deviation(g, move.deviation)
        trace.steps.append(
            DynamicsStep(len(trace.steps) + 1, move.deviation, move.cost_before, move.cost_after,
                         social_cost(g, spec), to_graph6(g))
        )
        if g in seen:
            trace.outcome = "cycle"
            break
        seen.add(g)
        start = move.player % n + 1
    trace.final = g
    return trace
