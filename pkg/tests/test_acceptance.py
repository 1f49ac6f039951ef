"""Acceptance criteria, one test each.

Each test prints a single ``PASS`` / ``FAIL`` line (visible with ``-s`` or in
the verbose log) and then asserts the same condition.  Every random draw uses
a fixed seed.
"""

import itertools
import random
import time
from fractions import Fraction

import networkx as nx
from networkx.algorithms.approximation import treewidth_min_degree

from cmcut.approx import FptasConfig, solve_fptas
from cmcut.core import WeightedGraph, evaluate, validate_connected
from cmcut.kernel import kernelize, solve_fpt, solve_kernel_exhaustive
from cmcut.oracle import (
    brute_force_cmc,
    brute_force_mmc,
    gap_search,
    repair_to_connected,
    verify_stc_bounds,
)
from cmcut.polytope import verify_face_structure
from cmcut.reductions import gen_exact_cost, gen_k3n, gen_tw2, gen_xc_tree, subsets_with_sum
from cmcut.treesolve import exact_cost_decide, solve_exact_tree

from conftest import random_connected_graph, random_tree


def report(capsys, number, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number:>2}: {detail}")
    assert ok, detail


def multisets(max_len, max_value):
    for k in range(1, max_len + 1):
        yield from itertools.combinations_with_replacement(range(1, max_value + 1), k)


def three_way_exists(numbers):
    target = sum(numbers) // 3
    for labels in itertools.product(range(3), repeat=len(numbers)):
        sums = [0, 0, 0]
        for a, lab in zip(numbers, labels):
            sums[lab] += a
        if sums[0] == sums[1] == target:
            return True
    return False


def test_01_oracle_equivalence(capsys):
    rng = random.Random(101)
    start = time.perf_counter()
    mismatches = 0
    count = 600
    for _ in range(count):
        n = rng.randint(1, 10)
        tree = random_tree(rng, n, rng.randint(1, min(4, n)), 8)
        a = solve_exact_tree(tree).cost
        b = solve_fpt(tree).cost
        c = brute_force_cmc(tree.base).cost
        mismatches += not (a == b == c)
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and elapsed <= 60
    report(capsys, 1, ok, f"{count} trees n<=10, exact = fpt = brute force, {mismatches} mismatches, {elapsed:.1f}s (limit 60s)")


def test_02_fptas_guarantee(capsys):
    rng = random.Random(202)
    start = time.perf_counter()
    violations = 0
    phase1 = 0
    phase1_mismatch = 0
    runs = 0
    for i in range(200):
        n = rng.randint(2, 30)
        # mix magnitudes so both the small-optimum branch and the scaling branch run
        wmax = (10, 1000, 10**6)[i % 3]
        tree = random_tree(rng, n, rng.randint(2, min(8, n)), wmax)
        exact = solve_exact_tree(tree).cost
        for eps in ("0.1", "0.5", "1.0"):
            e = Fraction(eps)
            res = solve_fptas(tree, eps)
            runs += 1
            if res.cost > (1 + e) * exact or not validate_connected(tree.base, res.solution).valid:
                violations += 1
            if exact <= FptasConfig(e).threshold(n):
                phase1 += 1
                phase1_mismatch += res.cost != exact
    elapsed = time.perf_counter() - start
    ok = violations == 0 and phase1_mismatch == 0 and phase1 > 0 and elapsed <= 120
    report(
        capsys,
        2,
        ok,
        f"{runs} runs, {violations} ratio violations, {phase1} small-optimum runs with "
        f"{phase1_mismatch} inexact, {elapsed:.1f}s (limit 120s)",
    )


def test_03_kernel_bound(capsys):
    rng = random.Random(303)
    too_big = 0
    wrong = 0
    largest = 0
    for _ in range(200):
        n = rng.randint(2, 200)
        k = rng.randint(1, min(8, n))
        tree = random_tree(rng, n, k, 100)
        mapping = kernelize(tree)
        largest = max(largest, mapping.kernel.n - (2 * k - 1))
        too_big += mapping.kernel.n > 2 * k - 1
        exact = solve_exact_tree(tree).cost
        wrong += solve_kernel_exhaustive(mapping.kernel).cost != exact or solve_fpt(tree).cost != exact
    ok = too_big == 0 and wrong == 0
    report(capsys, 3, ok, f"200 trees n<=200 |terminals|<=8: {too_big} kernels above 2k-1 (max excess {largest}), {wrong} optimum changes")


def test_04_three_terminal_equality(capsys):
    rng = random.Random(404)
    unequal = 0
    increased = 0
    disconnected = 0
    for _ in range(300):
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, 3, (1, 2))
        mmc = brute_force_mmc(g)
        unequal += mmc.cost != brute_force_cmc(g).cost
        cuts = [mmc.solution]
        cuts.append(evaluate(g, [v if g.is_terminal(v) else rng.choice(g.terminals) for v in range(1, n + 1)]))
        for cut in cuts:
            fixed = repair_to_connected(g, cut)
            increased += fixed.cost > cut.cost
            disconnected += not validate_connected(g, fixed).valid
    ok = unequal == 0 and increased == 0 and disconnected == 0
    report(capsys, 4, ok, f"300 graphs n<=7: {unequal} mmc != cmc, repair raised cost {increased}x, left disconnected {disconnected}x")


def test_05_gap_instance(capsys):
    start = time.perf_counter()
    found = gap_search(5, (1, 2))
    elapsed = time.perf_counter() - start
    six_seven = gap_search(5, (1, 2), costs=(6, 7))
    ok = (
        found is not None
        and found.graph.n <= 5
        and found.mmc_cost < found.cmc_cost
        and brute_force_mmc(found.graph).cost == found.mmc_cost
        and brute_force_cmc(found.graph).cost == found.cmc_cost
        and elapsed <= 10
    )
    detail = "no instance" if found is None else f"n={found.graph.n}, mmc {found.mmc_cost} < cmc {found.cmc_cost}"
    extra = "" if six_seven is None else f"; a 6-vs-7 instance also exists ({six_seven.graph.m} edges)"
    report(capsys, 5, ok, f"{detail}, {elapsed:.1f}s (limit 10s){extra}")


def test_06_k3n_iff(capsys):
    checked = 0
    bad = 0
    for nums in multisets(6, 10):
        if sum(nums) % 3:
            continue
        gen = gen_k3n(nums)
        cost = brute_force_cmc(gen.graph).cost
        target = gen.scale * 2 * gen.numbers.target
        checked += 1
        bad += cost < target or (cost == target) != three_way_exists(nums)
    report(capsys, 6, bad == 0, f"{checked} 3-way instances n<=6 values<=10, {bad} iff failures")


def test_07_tw2_iff(capsys):
    checked = 0
    bad = 0
    shape_bad = 0
    for nums in multisets(5, 10):
        if sum(nums) % 2:
            continue
        gen = gen_tw2(nums)
        cost = brute_force_cmc(gen.graph).cost
        target = gen.scale * gen.numbers.target
        checked += 1
        bad += cost < target or (cost == target) != bool(subsets_with_sum(nums, gen.numbers.target))
        g = nx.Graph((u, v) for u, v, _ in gen.graph.edges)
        shape_bad += not (nx.is_bipartite(g) and nx.check_planarity(g)[0] and treewidth_min_degree(g)[0] <= 2)
    ok = bad == 0 and shape_bad == 0
    report(capsys, 7, ok, f"{checked} PARTITION instances n<=5 values<=10, {bad} iff failures, {shape_bad} not bipartite/planar/width<=2")


def _xc_range():
    # the generator requires every number to be at most B
    for nums in multisets(5, 10):
        if sum(nums) % 2 == 0 and max(nums) <= sum(nums) // 2:
            yield nums


def test_08_face_structure(capsys):
    checked = 0
    bad = 0
    for nums in _xc_range():
        checked += 1
        bad += not verify_face_structure(gen_xc_tree(nums), limit=64).ok
    report(capsys, 8, bad == 0, f"{checked} xc trees n<=5 values<=10 (each number <= B), {bad} face-structure failures")


def test_09_exact_cost_iff(capsys):
    checked = 0
    bad = 0
    for nums in _xc_range():
        gen = gen_exact_cost(nums)
        target = gen.scale * 7 * gen.numbers.target // 2
        found = exact_cost_decide(gen.tree(), target)
        checked += 1
        bad += (found is not None) != bool(subsets_with_sum(nums, gen.numbers.target))
        bad += found is not None and found.cost != target
    report(capsys, 9, bad == 0, f"{checked} exact-cost trees, {bad} iff failures")


def test_10_stc_bounds(capsys):
    rng = random.Random(1010)
    failures = 0
    checks = 0
    for _ in range(30):
        n = rng.randint(3, 7)
        g = random_connected_graph(rng, n, 1, (1,), extra=0.3)
        for r in range(1, n + 1):
            checks += 1
            failures += not verify_stc_bounds(g, r).ok
    tri = WeightedGraph(3, ((1, 2, 1), (2, 3, 1), (1, 3, 1)), (1,))
    tri_ok = True
    for r in (1, 2, 3):
        rep = verify_stc_bounds(tri, r)
        tri_ok &= rep.stc == 2 and rep.lower.rhs == 2 and rep.upper.rhs == 2
    ok = failures == 0 and tri_ok
    report(capsys, 10, ok, f"30 graphs n<=7, {checks} (graph, r) checks, {failures} failures; triangle STC 2 tight: {tri_ok}")


def test_11_unweighted_large(capsys):
    rng = random.Random(1111)
    times = []
    valid = True
    for _ in range(3):
        tree = random_tree(rng, 10_000, 50, 1, wmin=1)
        start = time.perf_counter()
        res = solve_exact_tree(tree)
        times.append(time.perf_counter() - start)
        valid &= validate_connected(tree.base, res.solution).valid and res.solution.cost == res.cost
    ok = valid and max(times) <= 30
    report(capsys, 11, ok, f"3 unit-weight trees n=10000 with 50 terminals, slowest {max(times):.1f}s (limit 30s)")
