"""One record per acceptance criterion; run with ``pytest tests/test_acceptance.py -s``."""
import time
from fractions import Fraction
from functools import lru_cache

from oracle import PathOracle, all_connected_graphs, oracle_cost, oracle_is_se
from swapnet.census import GraphClass, check_theorem, reverify, se_census
from swapnet.constructions import CliquePathsParams, clique_with_paths, make_named
from swapnet.destruction import (
    BASE_DESTROYERS,
    DEGREE_VERTEX,
    EXTREME_VERTEX,
    UNIFORM_BRIDGE,
    UNIFORM_EDGE,
    UNIFORM_VERTEX,
    DestroyerSpec,
    destroyer_measure,
    player_cost,
    separation_profile,
    separation_vertex,
    social_cost,
)
from swapnet.equilibrium import apply_deviation, enumerate_bridge_swaps, is_swap_equilibrium, verify_witness
from swapnet.graph import Graph
from swapnet.io import from_graph6

EDGE_SPECS = [DestroyerSpec(k) for k in ("uniform_edge", "uniform_bridge", "extreme_edge")]


@lru_cache(maxsize=None)
def census(n, kind, workers=1):
    return se_census(GraphClass(n), DestroyerSpec(kind), workers)


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


# -- 1: closed forms ---------------------------------------------------------

def test_ac1_degree_proportional_star(acceptance):
    def check():
        bad = []
        for n in range(3, 31):
            g = make_named("star", n)
            leaf = player_cost(g, DEGREE_VERTEX, 2)
            if leaf != Fraction(1, 2) * (n + 1 - Fraction(1, n - 1)) or social_cost(g, DEGREE_VERTEX) != Fraction(n * n + n, 2) - 1:
                bad.append(n)
        return bad

    bad, secs = _timed(check)
    acceptance("AC1a degree-proportional star leaf cost and SC, n=3..30",
               not bad and secs < 1, f"mismatches {bad}, {secs:.2f}s")


def test_ac1_uniform_vertex_star(acceptance):
    def check():
        return [n for n in range(3, 31)
                if social_cost(make_named("star", n), UNIFORM_VERTEX) != 3 * n - 5 + Fraction(2, n)]

    bad, secs = _timed(check)
    acceptance("AC1b uniform-vertex star SC = 3n-5+2/n, n=3..30", not bad and secs < 1,
               f"mismatches {bad}, {secs:.2f}s")


def test_ac1_extreme_vertex_construction_closed_form(acceptance):
    def check():
        bad = []
        for t in (4, 5):
            for k in range(0, 4 * t - 4):
                p = CliquePathsParams(t, k)
                g = clique_with_paths(p)
                n = p.n
                sc_ok = social_cost(g, EXTREME_VERTEX) == 2 * ((n - 1) + k * (n - 1 - k))
                vmax_ok = separation_profile(g, "vertices").argmax == frozenset(range(1, t + 1))
                if not (sc_ok and vmax_ok):
                    bad.append((t, k))
        return bad

    bad, secs = _timed(check)
    acceptance("AC1c extreme-vertex clique-with-paths SC and V_max, t=4,5, k<=4t-5",
               not bad and secs < 1, f"mismatches {bad}, {secs:.2f}s")


# -- 2: structural census ----------------------------------------------------

def test_ac2_edge_destroyer_census(acceptance):
    problems = []
    examined = 0
    for spec in EDGE_SPECS:
        for n in range(1, 7):
            rep = census(n, spec.kind)
            examined += rep.examined
            problems += [f"{spec} n={n} {a.name} {a.witness}" for a in rep.assertions if not a.passed]
            for r in rep.records:
                star_shape = r.flags["is_star"] if spec == UNIFORM_EDGE else r.flags["bridge_tree_star_singleton_outer"]
                if not (r.flags["is_bridgeless"] or star_shape):
                    problems.append(f"{spec} structure {r.graph6}")
                if not r.flags["is_bridgeless"] and r.flags["bridge_tree_diameter"] > 2:
                    problems.append(f"{spec} diameter {r.graph6}")
    acceptance("AC2a edge destroyers n<=6: SE => bridgeless or star shape; bridgeless => SE; bridge-tree diameter <= 2",
               not problems, f"{examined} graph checks" + (f", problems {problems[:3]}" if problems else ""))


def test_ac2_uniform_vertex_census(acceptance):
    problems = []
    examined = 0
    for n in range(1, 7):
        rep = census(n, "uniform_vertex")
        examined += rep.examined
        problems += [r.graph6 for r in rep.records
                     if not (r.flags["is_two_connected"] or r.flags["is_star"])]
    acceptance("AC2b uniform-vertex n<=6: every SE is two-connected or a star", not problems,
               f"{examined} graphs" + (f", violations {problems[:3]}" if problems else ""))


def test_ac2_degree_proportional_star_se(acceptance):
    bad = [n for n in range(3, 31) if not is_swap_equilibrium(make_named("star", n), DEGREE_VERTEX).is_se]
    acceptance("AC2c degree-proportional star is SE, n=3..30", not bad, f"failures {bad}" if bad else "28 stars")


# -- 3: construction boundary ------------------------------------------------

def test_ac3_construction_boundary(acceptance):
    se = check_theorem("extreme_construction_se", t_values=[4, 5])
    witnesses = []
    ok = se.passed and se.checked == 12 + 16
    for t in (4, 5):
        g = clique_with_paths((t, 4 * t - 4))
        v = is_swap_equilibrium(g, EXTREME_VERTEX)
        ok = ok and not v.is_se and verify_witness(g, EXTREME_VERTEX, v.witness)
        witnesses.append(f"t={t}: {v.witness}")
    acceptance("AC3 clique-with-paths SE for t=4,5, k<=4t-5; verified witness at k=4t-4", ok,
               f"{se.checked} SE instances; " + "; ".join(witnesses))


# -- 4: no SE tree with a single max-sep vertex -------------------------------

def test_ac4_no_tree_se_nmax1(acceptance):
    res, secs = _timed(lambda: check_theorem("no_tree_se_nmax1", n_range=(8, 12)))
    counts = [r.examined for r in res.reports]
    acceptance("AC4 no extreme-vertex SE tree with n_max=1, free trees n=8..12",
               res.passed and counts == [23, 47, 106, 235, 551] and secs < 60,
               f"trees {counts}, {secs:.1f}s" + (f", witness {res.witness}" if res.witness else ""))


# -- 5: oracle equivalence ---------------------------------------------------

def test_ac5_oracle_equivalence(acceptance):
    mismatches = []
    checked = 0
    for n in range(1, 6):
        for edges in all_connected_graphs(n):
            g = Graph(n, edges)
            for spec in BASE_DESTROYERS:
                for v in g.vertices:
                    if player_cost(g, spec, v) != oracle_cost(n, edges, spec.kind, v):
                        mismatches.append(("cost", n, edges, spec.kind, v))
                if n >= 2:
                    verdict = is_swap_equilibrium(g, spec)
                    ok, dev = oracle_is_se(n, edges, spec.kind)
                    mine = None
                    if verdict.witness:
                        d = verdict.witness.deviation
                        mine = (d.kind, d.a, d.b) + ((d.c,) if d.c else ())
                    if verdict.is_se != ok or mine != dev:
                        mismatches.append(("verdict", n, edges, spec.kind))
                checked += 1
    sep_checked = 0
    for n in range(1, 7):
        for edges in all_connected_graphs(n):
            g = Graph(n, edges)
            oracle = PathOracle(n, edges)
            for u in g.vertices:
                sep_checked += 1
                if separation_vertex(g, u) != oracle.sep_vertex(u):
                    mismatches.append(("sep", n, edges, u))
    acceptance("AC5 costs and SE verdicts match the path oracle (n<=5); vertex separation matches (n<=6)",
               not mismatches, f"{checked} graph-destroyer pairs, {sep_checked} separations"
               + (f", first mismatch {mismatches[0]}" if mismatches else ""))


# -- 6: fixed probabilities under bridge swaps -------------------------------

def test_ac6_bridge_swaps_preserve_probabilities(acceptance):
    bad = []
    swaps = 0
    for n in range(2, 7):
        for edges in all_connected_graphs(n):
            g = Graph(n, edges)
            for s in enumerate_bridge_swaps(g):
                h = apply_deviation(g, s)
                swaps += 1
                for spec in (UNIFORM_EDGE, UNIFORM_BRIDGE):
                    before = destroyer_measure(spec, g)
                    after = destroyer_measure(spec, h)
                    moved = before[(min(s.a, s.b), max(s.a, s.b))] == after[(min(s.a, s.c), max(s.a, s.c))]
                    shared = all(before[e] == after[e] for e in g.edges & h.edges)
                    if not (moved and shared):
                        bad.append((spec.kind, g.sorted_edges(), str(s)))
    acceptance("AC6 uniform-edge/uniform-bridge probabilities fixed under every bridge swap, n<=6",
               not bad and swaps > 0, f"{swaps} bridge swaps" + (f", first failure {bad[0]}" if bad else ""))


# -- 7: determinism ----------------------------------------------------------

def test_ac7_determinism(acceptance):
    differing = []
    unverified = []
    runs = [(GraphClass(5), DestroyerSpec(spec.kind)) for spec in BASE_DESTROYERS]
    runs += [(GraphClass(6), UNIFORM_EDGE), (GraphClass(11, trees=True), EXTREME_VERTEX)]
    for cls, spec in runs:
        one = se_census(cls, spec, workers=1)
        many = se_census(cls, spec, workers=3)
        if one.dumps() != many.dumps():
            differing.append(f"{spec} n={cls.n}")
        if not reverify(one):
            unverified.append(f"{spec} n={cls.n}")
    broken = check_theorem("extreme_construction_breaks")
    g = clique_with_paths((4, 12))
    witness_ok = broken.passed and verify_witness(g, EXTREME_VERTEX, is_swap_equilibrium(g, EXTREME_VERTEX).witness)
    bad_t3 = check_theorem("extreme_construction_se", t_values=[3], k_values=[3])
    fail_reproduces = not bad_t3.passed and not is_swap_equilibrium(from_graph6(bad_t3.witness), EXTREME_VERTEX).is_se
    acceptance("AC7 census reports byte-identical for 1 and 3 workers; all witnesses re-verify",
               not differing and not unverified and witness_ok and fail_reproduces,
               f"{len(runs)} censuses" + (f", differing {differing}" if differing else "")
               + (f", unverified {unverified}" if unverified else ""))
