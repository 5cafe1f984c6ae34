"""Exhaustive graph classes, swap-equilibrium census, theorem checks and conjecture search.

Work is split into fixed-size chunks of the candidate stream.  Chunks are
evaluated independently (optionally in a process pool) and folded back in
stream order, so a report never depends on the worker count.
"""
from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from .constructions import CliquePathsParams, clique_with_paths, make_named
from .destruction import (
    DEGREE_VERTEX,
    EXTREME_VERTEX,
    DestroyerSpec,
    format_cost,
    player_cost,
    separation_profile,
    social_cost,
)
from .equilibrium import is_swap_equilibrium, verify_witness
from .graph import Graph, classify
from .io import from_graph6, to_graph6

MAX_LABELED_N = 7
MAX_TREE_N = 14
CHUNK_SIZE = 256


class CapError(ValueError):
    """Requested class exceeds the enumeration caps."""


# -- enumeration -------------------------------------------------------------

def enumerate_connected_labeled(n: int) -> Iterator[Graph]:
    """Every connected labeled graph on 1..n, ordered by edge bitmask over the lexicographic pair list."""
    if not 1 <= n <= MAX_LABELED_N:
        raise CapError(f"labeled enumeration needs 1 <= n <= {MAX_LABELED_N}, got {n}")
    pairs = list(combinations(range(1, n + 1), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        nb = [0] * (n + 1)
        chosen = []
        for bit, (u, v) in enumerate(pairs):
            if mask >> bit & 1:
                nb[u] |= 1 << (v - 1)
                nb[v] |= 1 << (u - 1)
                chosen.append((u, v))
        seen = frontier = 1
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nb[low.bit_length()]
                f ^= low
            frontier = nxt & ~seen
            seen |= nxt
        if seen == full:
            yield Graph._trusted(n, frozenset(chosen))


@lru_cache(maxsize=None)
def _rooted_trees(size: int, max_height: int) -> tuple:
    """Canonical rooted trees: a tree is the descending-sorted tuple of its children."""
    if size == 1:
        return ((),)
    if max_height == 0:
        return ()
    pool = [(s, t) for s in range(1, size) for t in _rooted_trees(s, max_height - 1)]
    out = []

    def extend(start: int, remaining: int, chosen: list) -> None:
        if remaining == 0:
            out.append(tuple(sorted(chosen, reverse=True)))
            return
        for idx in range(start, len(pool)):
            s, t = pool[idx]
            if s > remaining:
                break
            chosen.append(t)
            extend(idx, remaining - s, chosen)
            chosen.pop()

    extend(0, size - 1, [])
    return tuple(out)


@lru_cache(maxsize=None)
def _height(t: tuple) -> int:
    return 1 + max(map(_height, t)) if t else 0


def _tree_size(t: tuple) -> int:
    return 1 + sum(_tree_size(c) for c in t)


def _tree_to_graph(n: int, roots: list[tuple]) -> Graph:
    """Label vertices 1..n breadth-first from the root(s); two roots are joined by an edge."""
    edges = []
    queue = []
    label = 0
    for r in roots:
        label += 1
        queue.append((label, r))
    if len(roots) == 2:
        edges.append((1, 2))
    head = 0
    while head < len(queue):
        v, t = queue[head]
        head += 1
        for child in t:
            label += 1
            edges.append((v, label))
            queue.append((label, child))
    return Graph._trusted(n, frozenset(edges))


def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class, generated as canonical trees rooted at the centre or bicentre."""
    if not 2 <= n <= MAX_TREE_N:
        raise CapError(f"tree enumeration needs 2 <= n <= {MAX_TREE_N}, got {n}")
    # unicentral: at least two root branches reach the full height
    for t in _rooted_trees(n, (n - 1) // 2):
        h = _height(t)
        if len(t) >= 2 and _height(t[0]) == h - 1 and _height(t[1]) == h - 1:
            yield _tree_to_graph(n, [t])
    if n == 1:
        return
    # bicentral: central edge joins two halves of equal height
    for s in range(1, n // 2 + 1):
        for h in range(0, s):
            left = [t for t in _rooted_trees(s, h) if _height(t) == h]
            right = left if 2 * s == n else [t for t in _rooted_trees(n - s, h) if _height(t) == h]
            for i, a in enumerate(left):
                for b in (right[i:] if 2 * s == n else right):
                    yield _tree_to_graph(n, [a, b])


def _single_vertex() -> Iterator[Graph]:
    yield Graph(1)


@dataclass(frozen=True)
class GraphClass:
    n: int
    trees: bool = False

    @property
    def iso_dedup(self) -> bool:
        return self.trees

    def graphs(self) -> Iterator[Graph]:
        if self.trees:
            if self.n == 1:
                return _single_vertex()
            return enumerate_free_trees(self.n)
        return enumerate_connected_labeled(self.n)

    def check_caps(self) -> None:
        if self.trees and not 1 <= self.n <= MAX_TREE_N:
            raise CapError(f"tree class needs 1 <= n <= {MAX_TREE_N}, got {self.n}")
        if not self.trees and not 1 <= self.n <= MAX_LABELED_N:
            raise CapError(f"labeled class needs 1 <= n <= {MAX_LABELED_N}, got {self.n}")

    def describe(self) -> dict:
        return {"n": self.n, "trees": self.trees, "iso_dedup": self.iso_dedup}


# -- census ------------------------------------------------------------------

# Structural assertions attached to a census, per destroyer kind.
_ASSERTIONS = {
    "uniform_edge": ("uniform_edge_star", "bridge_tree_diam2", "bridgeless_is_se"),
    "uniform_bridge": ("uniform_bridge_star", "bridge_tree_diam2", "bridgeless_is_se"),
    "extreme_edge": ("extreme_edge_star", "bridgeless_is_se"),
    "uniform_vertex": ("uniform_vertex_tree", "uniform_vertex_star"),
    "extreme_vertex": ("no_tree_se_nmax1",),
}


def _assertion_holds(name: str, is_se: bool, flags: dict, n: int, n_max: int) -> bool:
    """Whether one graph is consistent with an assertion (vacuously true where it does not apply)."""
    if name == "bridgeless_is_se":
        return is_se or not flags["is_bridgeless"]
    if not is_se:
        return True
    if name == "uniform_edge_star":
        return flags["is_bridgeless"] or flags["is_star"]
    if name in ("uniform_bridge_star", "extreme_edge_star"):
        return flags["is_bridgeless"] or flags["bridge_tree_star_singleton_outer"]
    if name == "bridge_tree_diam2":
        return flags["bridge_tree_diameter"] <= 2
    if name == "uniform_vertex_tree":
        return flags["is_two_connected"] or flags["is_tree"]
    if name == "uniform_vertex_star":
        return flags["is_two_connected"] or flags["is_star"]
    if name == "no_tree_se_nmax1":
        return n < 8 or not flags["is_tree"] or n_max != 1
    raise KeyError(name)


@dataclass(frozen=True)
class SERecord:
    index: int
    graph6: str
    flags: dict
    social_cost: str
    n_max: int

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "graph": self.graph6,
            "flags": self.flags,
            "social_cost": self.social_cost,
            "n_max": self.n_max,
        }


@dataclass
class AssertionResult:
    name: str
    passed: bool
    checked: int
    witness: str | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "witness": self.witness, "detail": self.detail}


@dataclass
class CensusReport:
    graph_class: GraphClass
    destroyer: DestroyerSpec
    examined: int = 0
    records: list[SERecord] = field(default_factory=list)
    assertions: list[AssertionResult] = field(default_factory=list)

    @property
    def se_count(self) -> int:
        return len(self.records)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def to_json(self) -> dict:
        return {
            "class": self.graph_class.describe(),
            "destroyer": str(self.destroyer),
            "exploratory": self.destroyer.exploratory,
            "examined": self.examined,
            "se_count": self.se_count,
            "records": [r.to_json() for r in self.records],
            "assertions": [a.to_json() for a in self.assertions],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def table(self) -> str:
        c = self.graph_class
        kind = "free trees" if c.trees else "connected labeled graphs"
        lines = [f"census: {kind}, n={c.n}, destroyer {self.destroyer}"
                 + (" (exploratory)" if self.destroyer.exploratory else ""),
                 f"examined {self.examined}, SE found {self.se_count}",
                 f"{'graph6':<12} {'SC':>10} {'n_max':>5}  structure"]
        for r in self.records:
            tags = [k[3:] if k.startswith("is_") else k for k, v in r.flags.items() if v is True]
            lines.append(f"{r.graph6:<12} {r.social_cost:>10} {r.n_max:>5}  "
                         + ",".join(tags) + f" diam={r.flags['bridge_tree_diameter']}")
        for a in self.assertions:
            status = "PASS" if a.passed else "FAIL"
            extra = f" witness={a.witness}" if a.witness else ""
            lines.append(f"[{status}] {a.name} (checked {a.checked}){extra}")
        return "\n".join(lines)


def _chunks(items: Iterable, size: int) -> Iterator[list]:
    buf = []
    for x in items:
        buf.append(x)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def _census_chunk(args) -> tuple[int, list, dict]:
    spec, names, batch = args
    records = []
    first_violation: dict[str, tuple[int, str]] = {}
    for index, g in batch:
        verdict = is_swap_equilibrium(g, spec)
        need_flags = verdict.is_se or "bridgeless_is_se" in names
        if not need_flags:
            continue
        flags = classify(g).flags() if g.n >= 2 else _trivial_flags()
        n_max = len(separation_profile(g, "vertices").argmax)
        if verdict.is_se:
            records.append(SERecord(index, to_graph6(g), flags, format_cost(social_cost(g, spec)), n_max))
        for name in names:
            if name not in first_violation and not _assertion_holds(name, verdict.is_se, flags, g.n, n_max):
                first_violation[name] = (index, to_graph6(g))
    return len(batch), records, first_violation


def _trivial_flags() -> dict:
    return {"is_tree": True, "is_star": True, "is_bridgeless": True, "is_two_connected": False,
            "bridge_tree_star_singleton_outer": False, "bridge_tree_diameter": 0}


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SWAPNET_WORKERS", "1")))
    except ValueError:
        return 1


def _run_chunks(func, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [func(j) for j in jobs]
    ctx = multiprocessing.get_context("fork" if hasattr(os, "fork") else "spawn")
    with ctx.Pool(workers) as pool:
        return pool.map(func, jobs, chunksize=1)


def se_census(graph_class: GraphClass, spec: DestroyerSpec, workers: int | None = None) -> CensusReport:
    graph_class.check_caps()
    workers = default_workers() if workers is None else workers
    names = _ASSERTIONS.get(spec.kind, ())
    jobs = [(spec, names, batch) for batch in _chunks(enumerate(graph_class.graphs()), CHUNK_SIZE)]
    report = CensusReport(graph_class, spec)
    violations: dict[str, tuple[int, str]] = {}
    for examined, records, first in _run_chunks(_census_chunk, jobs, workers):
        report.examined += examined
        report.records.extend(records)
        for name, hit in first.items():
            if name not in violations or hit[0] < violations[name][0]:
                violations[name] = hit
    report.records.sort(key=lambda r: r.index)
    for name in names:
        hit = violations.get(name)
        report.assertions.append(AssertionResult(name, hit is None, report.examined, hit[1] if hit else None))
    return report


# -- theorem checks ----------------------------------------------------------

@dataclass
class TheoremResult:
    name: str
    passed: bool
    checked: int
    witness: str | None = None
    detail: str = ""
    reports: list[CensusReport] = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"theorem": self.name, "passed": self.passed, "checked": self.checked,
                "witness": self.witness, "detail": self.detail}

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        w = f" witness={self.witness}" if self.witness else ""
        return f"[{status}] {self.name}: checked {self.checked}{w}" + (f" ({self.detail})" if self.detail else "")


_CENSUS_THEOREMS = {
    "uniform_edge_star": ("uniform_edge", ("uniform_edge_star", "bridgeless_is_se")),
    "uniform_bridge_star": ("uniform_bridge", ("uniform_bridge_star", "bridgeless_is_se")),
    "extreme_edge_star": ("extreme_edge", ("extreme_edge_star", "bridgeless_is_se")),
    "uniform_vertex_tree": ("uniform_vertex", ("uniform_vertex_tree", "uniform_vertex_star")),
}

THEOREMS = (
    "uniform_edge_star",
    "uniform_bridge_star",
    "extreme_edge_star",
    "bridge_tree_diam2",
    "uniform_vertex_tree",
    "degree_prop_star_se",
    "extreme_construction_se",
    "extreme_construction_breaks",
    "no_tree_se_nmax1",
)

_DEFAULT_N = {
    "uniform_edge_star": (3, 6),
    "uniform_bridge_star": (3, 6),
    "extreme_edge_star": (3, 6),
    "bridge_tree_diam2": (3, 6),
    "uniform_vertex_tree": (3, 6),
    "degree_prop_star_se": (3, 30),
    "no_tree_se_nmax1": (8, 12),
}


def _census_assertions(name: str, kinds: list[tuple[str, tuple]], n_range, workers) -> TheoremResult:
    checked = 0
    reports = []
    for n in range(n_range[0], n_range[1] + 1):
        for kind, wanted in kinds:
            rep = se_census(GraphClass(n), DestroyerSpec(kind), workers)
            reports.append(rep)
            checked += rep.examined
            for a in rep.assertions:
                if a.name in wanted and not a.passed:
                    return TheoremResult(name, False, checked, a.witness, f"{a.name} violated under {kind}", reports)
    return TheoremResult(name, True, checked, None, f"n={n_range[0]}..{n_range[1]}", reports)


def _star_degree_check(n_range) -> TheoremResult:
    checked = 0
    for n in range(n_range[0], n_range[1] + 1):
        g = make_named("star", n)
        checked += 1
        verdict = is_swap_equilibrium(g, DEGREE_VERTEX)
        sc = social_cost(g, DEGREE_VERTEX)
        leaf = player_cost(g, DEGREE_VERTEX, 2)
        want_sc = Fraction(n * n + n, 2) - 1
        want_leaf = Fraction(1, 2) * (n + 1 - Fraction(1, n - 1))
        if not verdict.is_se or sc != want_sc or leaf != want_leaf:
            return TheoremResult("degree_prop_star_se", False, checked, to_graph6(g),
                                 f"n={n}: SE={verdict.is_se}, SC={sc}, leaf cost={leaf}")
    return TheoremResult("degree_prop_star_se", True, checked, None, f"n={n_range[0]}..{n_range[1]}")


def _construction_params(t_values, k_values, breaks: bool) -> list[tuple[int, int]]:
    out = []
    for t in t_values:
        if k_values is not None:
            ks = k_values
        elif breaks:
            ks = [4 * t - 4]
        else:
            ks = range(0, 4 * t - 4)
        out.extend((t, k) for k in ks)
    return out


def _construction_se(params) -> TheoremResult:
    checked = 0
    for t, k in params:
        p = CliquePathsParams(t, k)
        g = clique_with_paths(p)
        checked += 1
        n = p.n
        verdict = is_swap_equilibrium(g, EXTREME_VERTEX)
        sc = social_cost(g, EXTREME_VERTEX)
        vmax = separation_profile(g, "vertices").argmax
        clique_cost = player_cost(g, EXTREME_VERTEX, 1)
        ok = (
            verdict.is_se
            and sc == 2 * ((n - 1) + k * (n - 1 - k))
            and vmax == frozenset(range(1, t + 1))
            and clique_cost == Fraction((n - 1) + (t - 1) * (k + 1), t)
        )
        if not ok:
            why = f"t={t},k={k}: SE={verdict.is_se}, SC={sc}"
            if verdict.witness:
                why += f", witness {verdict.witness}"
            return TheoremResult("extreme_construction_se", False, checked, to_graph6(g), why)
    return TheoremResult("extreme_construction_se", True, checked, None,
                         ", ".join(f"t={t},k={k}" for t, k in params) if len(params) <= 4 else f"{len(params)} instances")


def _construction_breaks(params) -> TheoremResult:
    checked = 0
    details = []
    for t, k in params:
        g = clique_with_paths(CliquePathsParams(t, k))
        checked += 1
        verdict = is_swap_equilibrium(g, EXTREME_VERTEX)
        if verdict.is_se or not verify_witness(g, EXTREME_VERTEX, verdict.witness):
            return TheoremResult("extreme_construction_breaks", False, checked, to_graph6(g),
                                 f"t={t},k={k}: no verified improving deviation")
        details.append(f"t={t},k={k}: {verdict.witness}")
    return TheoremResult("extreme_construction_breaks", True, checked, None, "; ".join(details))


def _no_tree_se_nmax1(n_range, workers) -> TheoremResult:
    checked = 0
    reports = []
    for n in range(n_range[0], n_range[1] + 1):
        rep = se_census(GraphClass(n, trees=True), EXTREME_VERTEX, workers)
        reports.append(rep)
        checked += rep.examined
        for r in rep.records:
            if n >= 8 and r.n_max == 1:
                return TheoremResult("no_tree_se_nmax1", False, checked, r.graph6,
                                     f"SE tree with n_max=1 at n={n}", reports)
    return TheoremResult("no_tree_se_nmax1", True, checked, None, f"trees n={n_range[0]}..{n_range[1]}", reports)


def check_theorem(name: str, n_range: tuple[int, int] | None = None, t_values=None, k_values=None,
                  workers: int | None = None) -> TheoremResult:
    if name not in THEOREMS:
        raise KeyError(f"unknown theorem {name!r}; expected one of {', '.join(THEOREMS)}")
    n_range = n_range or _DEFAULT_N.get(name)
    if name in _CENSUS_THEOREMS:
        kind, wanted = _CENSUS_THEOREMS[name]
        return _census_assertions(name, [(kind, wanted)], n_range, workers)
    if name == "bridge_tree_diam2":
        kinds = [("uniform_edge", ("bridge_tree_diam2",)), ("uniform_bridge", ("bridge_tree_diam2",))]
        return _census_assertions(name, kinds, n_range, workers)
    if name == "degree_prop_star_se":
        return _star_degree_check(n_range)
    if name == "no_tree_se_nmax1":
        return _no_tree_se_nmax1(n_range, workers)
    t_values = list(t_values) if t_values is not None else [4, 5]
    breaks = name == "extreme_construction_breaks"
    params = _construction_params(t_values, list(k_values) if k_values is not None else None, breaks)
    return _construction_breaks(params) if breaks else _construction_se(params)


# -- conjecture search -------------------------------------------------------

CONJECTURES = ("no_single_maxsep_se", "no_tree_se")


@dataclass
class ConjectureReport:
    which: str
    n_range: tuple[int, int]
    trees: bool
    examined: int = 0
    se_count: int = 0
    hits: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"conjecture": self.which, "n": list(self.n_range), "trees": self.trees,
                "examined": self.examined, "se_count": self.se_count, "hits": self.hits}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def table(self) -> str:
        kind = "free trees" if self.trees else "connected labeled graphs"
        lines = [f"conjecture search {self.which}: {kind}, n={self.n_range[0]}..{self.n_range[1]}, destroyer extreme-vertex",
                 f"examined {self.examined}, SE found {self.se_count}, hits {len(self.hits)} (findings, not failures)"]
        for h in self.hits:
            lines.append(f"  n={h['n']:<3} {h['graph']:<12} n_max={h['n_max']} tree={str(h['is_tree']).lower()} SC={h['social_cost']}")
        return "\n".join(lines)


def conjecture_search(which: str, n_range: tuple[int, int], trees: bool | None = None,
                      workers: int | None = None) -> ConjectureReport:
    """Report every extreme-vertex SE matching the conjecture's target shape; never asserts."""
    if which not in CONJECTURES:
        raise KeyError(f"unknown conjecture {which!r}; expected one of {', '.join(CONJECTURES)}")
    if trees is None:
        trees = which == "no_tree_se"
    report = ConjectureReport(which, tuple(n_range), trees)
    for n in range(n_range[0], n_range[1] + 1):
        rep = se_census(GraphClass(n, trees), EXTREME_VERTEX, workers)
        report.examined += rep.examined
        report.se_count += rep.se_count
        for r in rep.records:
            is_tree = r.flags["is_tree"]
            if (which == "no_tree_se" and is_tree) or (which == "no_single_maxsep_se" and r.n_max == 1):
                report.hits.append({"n": n, "graph": r.graph6, "n_max": r.n_max,
                                    "is_tree": is_tree, "social_cost": r.social_cost})
    return report


def reverify(report: CensusReport) -> bool:
    """Re-run the equilibrium check on every recorded SE and every assertion witness."""
    spec = report.destroyer
    for r in report.records:
        if not is_swap_equilibrium(from_graph6(r.graph6), spec).is_se:
            return False
    for a in report.assertions:
        if a.witness is not None:
            g = from_graph6(a.witness)
            verdict = is_swap_equilibrium(g, spec)
            flags = classify(g).flags()
            n_max = len(separation_profile(g, "vertices").argmax)
            if _assertion_holds(a.name, verdict.is_se, flags, g.n, n_max):
                return False
    return True
