import itertools

import numpy as np
import pytest

from cvnet import Network, gen_ba, gen_er, gen_regular, gen_ws


def enumerate_all_paths(net, a, b):
    """Reference oracle: every simple a-b path by exhaustive DFS."""
    paths = []

    def walk(u, path):
        if u == b:
            paths.append(tuple(path))
            return
        for v in net.neighbors(u):
            if v not in path:
                walk(v, path + [v])

    walk(a, [a])
    return paths


def shortest_paths_oracle(net, a, b):
    paths = enumerate_all_paths(net, a, b)
    if not paths:
        return set(), None
    dmin = min(len(p) for p in paths) - 1
    return {p for p in paths if len(p) - 1 == dmin}, dmin


@pytest.fixture
def mixed_small_networks():
    """A grab bag of small deterministic and seeded networks."""
    nets = [
        gen_regular("linear", 5),
        gen_regular("ring", 6),
        gen_regular("star", 6),
        gen_regular("diamond", 6),
        gen_regular("complete", 5),
        gen_er(8, 0.4, seed=3),
        gen_ba(8, 2, seed=5),
        gen_ws(8, 2, 0.3, seed=7),
    ]
    return nets


def random_network(rng, n_max=8, gs=(0.5, 1.0, 2.0), s_max=10.0):
    """Random small weighted network with random per-node squeezing."""
    n = int(rng.integers(2, n_max + 1))
    adj = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.5:
            adj[i, j] = adj[j, i] = rng.choice(gs)
    squeeze = rng.uniform(0.0, s_max, size=n)
    return Network(adj=adj, node_squeeze_db=squeeze)
