import random

import pytest

from cmcut.core import WeightedGraph, as_tree


def random_tree_graph(rng: random.Random, n: int, k: int, wmax: int, wmin: int = 0) -> WeightedGraph:
    """Random labelled tree on 1..n (random parent attachment, then a random relabel)."""
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    edges = []
    for i in range(1, n):
        j = rng.randrange(i)
        edges.append((perm[i], perm[j], rng.randint(wmin, wmax)))
    terminals = tuple(sorted(rng.sample(range(1, n + 1), k)))
    return WeightedGraph(n, tuple(edges), terminals)


def random_tree(rng, n, k, wmax, wmin=0):
    return as_tree(random_tree_graph(rng, n, k, wmax, wmin))


def random_connected_graph(rng: random.Random, n: int, k: int, weights, extra: float = 0.4) -> WeightedGraph:
    """Random spanning tree plus each remaining pair with probability ``extra``."""
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    pairs = set()
    for i in range(1, n):
        a, b = perm[i], perm[rng.randrange(i)]
        pairs.add((min(a, b), max(a, b)))
    for u in range(1, n + 1):
        for v in range(u + 1, n + 1):
            if (u, v) not in pairs and rng.random() < extra:
                pairs.add((u, v))
    edges = tuple((u, v, rng.choice(weights)) for u, v in sorted(pairs))
    terminals = tuple(sorted(rng.sample(range(1, n + 1), k)))
    return WeightedGraph(n, edges, terminals)


def path_graph(weights, terminals) -> WeightedGraph:
    n = len(weights) + 1
    return WeightedGraph(n, tuple((i, i + 1, w) for i, w in enumerate(weights, start=1)), tuple(terminals))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def path35():
    # t1 -3- v -5- t2 with t1 = 1, v = 2, t2 = 3
    return path_graph([3, 5], (1, 3))


@pytest.fixture
def star123():
    # centre 1, leaves 2, 3, 4 are terminals; weights 1, 2, 3
    return WeightedGraph(4, ((1, 2, 1), (1, 3, 2), (1, 4, 3)), (2, 3, 4))
