"""Graph generators: deterministic topologies and seeded random models.

Every stochastic generator takes an explicit integer seed and draws from
``numpy.random.Generator(PCG64(seed))`` (64-bit state), so identical
(parameters, seed) always produce the identical network, including across
processes. Batch drivers derive per-sample seeds as ``master_seed + index``.
"""

from __future__ import annotations

import itertools

import numpy as np

from .errors import ParameterError
from .network import Network

REGULAR_TOPOLOGIES = ("linear", "ring", "star", "diamond", "complete")
RANDOM_TOPOLOGIES = ("er", "ba", "ws", "pp", "as")

# gen_as defaults; leaves attach to a single provider and never become
# providers themselves, which keeps the graph leaf-heavy and low-rank.
AS_CORE_SIZE = 4
AS_LEAF_PROB = 0.6
AS_MIDTIER_PROVIDERS = 2


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _net(adj, meta) -> Network:
    return Network.from_adjacency(adj, squeeze_db=0.0, meta=meta)


def gen_regular(topology: str, n: int, g: float = 1.0) -> Network:
    """Deterministic topologies: linear, ring, star, diamond, complete.

    The diamond has hubs 0 and n-1, each linked to every interior node
    (the complete bipartite graph K_{2,n-2}).
    """
    if topology not in REGULAR_TOPOLOGIES:
        raise ParameterError(f"unknown regular topology {topology!r}")
    minimum = 3 if topology == "diamond" else 2
    if n < minimum:
        raise ParameterError(f"{topology} needs n >= {minimum}, got {n}")
    if g < 0:
        raise ParameterError("edge weight must be nonnegative")
    adj = np.zeros((n, n))
    if topology == "linear":
        for i in range(n - 1):
            adj[i, i + 1] = adj[i + 1, i] = g
    elif topology == "ring":
        for i in range(n):
            j = (i + 1) % n
            adj[i, j] = adj[j, i] = g
    elif topology == "star":
        adj[0, 1:] = adj[1:, 0] = g
    elif topology == "diamond":
        for c in range(1, n - 1):
            adj[0, c] = adj[c, 0] = g
            adj[n - 1, c] = adj[c, n - 1] = g
    elif topology == "complete":
        adj[:] = g
        np.fill_diagonal(adj, 0.0)
    return _net(adj, {"topology": topology, "n": n, "g": g})


def gen_lattice(dim: int, side: int, g: float = 1.0, variant: str = "square") -> Network:
    """Cubic lattice in 1-3 dimensions; 2D triangular variants.

    Nodes are indexed row-major over the coordinate grid. ``tri_T`` adds the
    anti-diagonal of each square face, which leaves the corner-to-corner
    distance unchanged; ``tri_Ttilde`` adds the main diagonal, which halves
    it.
    """
    if dim not in (1, 2, 3):
        raise ParameterError(f"dim must be 1, 2 or 3, got {dim}")
    if side < 2:
        raise ParameterError(f"side must be >= 2, got {side}")
    if variant not in ("square", "tri_T", "tri_Ttilde"):
        raise ParameterError(f"unknown lattice variant {variant!r}")
    if variant != "square" and dim != 2:
        raise ParameterError(f"variant {variant!r} requires dim=2")
    shape = (side,) * dim
    n = side**dim
    adj = np.zeros((n, n))

    def idx(coord):
        return int(np.ravel_multi_index(coord, shape))

    for coord in itertools.product(range(side), repeat=dim):
        i = idx(coord)
        for axis in range(dim):
            if coord[axis] + 1 < side:
                nb = list(coord)
                nb[axis] += 1
                j = idx(nb)
                adj[i, j] = adj[j, i] = g
    if variant != "square":
        for r in range(side - 1):
            for c in range(side - 1):
                if variant == "tri_T":
                    i, j = idx((r + 1, c)), idx((r, c + 1))
                else:
                    i, j = idx((r, c)), idx((r + 1, c + 1))
                adj[i, j] = adj[j, i] = g
    return _net(adj, {"topology": "lattice", "dim": dim, "side": side, "g": g, "variant": variant})


def gen_diamond_chain(k: int, n_inner: int, g: float = 1.0) -> Network:
    """Two hubs joined by k vertex-disjoint paths of n_inner interior nodes.

    Node 0 and node 2 + k*n_inner - 1 are the hubs; k=1 reduces to the
    linear graph.
    """
    if k < 1:
        raise ParameterError(f"branch count must be >= 1, got {k}")
    if n_inner < 1:
        raise ParameterError(f"nodes per branch must be >= 1, got {n_inner}")
    n = 2 + k * n_inner
    adj = np.zeros((n, n))
    hub_a, hub_b = 0, n - 1
    for b in range(k):
        branch = [1 + b * n_inner + t for t in range(n_inner)]
        chain = [hub_a] + branch + [hub_b]
        for u, v in zip(chain, chain[1:]):
            adj[u, v] = adj[v, u] = g
    return _net(adj, {"topology": "diamond_chain", "k": k, "n_inner": n_inner, "g": g})


def gen_diamond_interconnected(n: int, g: float = 1.0) -> Network:
    """Diamond K_{2,n-2} with consecutive interior nodes also linked."""
    net = gen_regular("diamond", n, g)
    adj = net.adj.copy()
    for c in range(1, n - 2):
        adj[c, c + 1] = adj[c + 1, c] = g
    return _net(adj, {"topology": "diamond_interconnected", "n": n, "g": g})


def gen_er(n: int, p: float, g: float = 1.0, seed: int = 0) -> Network:
    """Erdos-Renyi: each unordered pair linked independently with probability p."""
    if not 0 <= p <= 1:
        raise ParameterError(f"p must be in [0, 1], got {p}")
    if n < 1:
        raise ParameterError("n must be >= 1")
    rng = _rng(seed)
    u = rng.random((n, n))
    mask = np.triu(u < p, 1)
    adj = np.where(mask | mask.T, g, 0.0)
    return _net(adj, {"topology": "er", "n": n, "p": p, "g": g, "seed": seed})


def _preferential_pick(rng, weights, k):
    """k distinct indices, each drawn proportionally to weight (uniform while
    all remaining weights are zero)."""
    w = np.asarray(weights, dtype=float).copy()
    alive = list(range(len(w)))
    chosen = []
    for _ in range(k):
        total = w[alive].sum()
        if total > 0:
            probs = w[alive] / total
            pos = rng.choice(len(alive), p=probs)
        else:
            pos = int(rng.integers(len(alive)))
        chosen.append(alive.pop(pos))
    return chosen


def gen_ba(n: int, k_attach: int, g: float = 1.0, seed: int = 0) -> Network:
    """Barabasi-Albert growth: the first K nodes start unlinked, each later
    node wires to K distinct existing nodes with probability proportional to
    degree (uniform for the degree-0 bootstrap). Yields exactly (n-K)K edges;
    K=1 gives a tree.
    """
    if not 1 <= k_attach < n:
        raise ParameterError(f"need 1 <= k_attach < n, got k_attach={k_attach}, n={n}")
    rng = _rng(seed)
    adj = np.zeros((n, n))
    deg = np.zeros(n)
    for v in range(k_attach, n):
        targets = _preferential_pick(rng, deg[:v], k_attach)
        for t in targets:
            adj[v, t] = adj[t, v] = g
            deg[v] += 1
            deg[t] += 1
    return _net(adj, {"topology": "ba", "n": n, "k": k_attach, "g": g, "seed": seed})


def gen_ws(n: int, q_neigh: int, beta: float, g: float = 1.0, seed: int = 0) -> Network:
    """Watts-Strogatz: circulant ring with q_neigh neighbors per node, then
    each edge rewired with probability beta (no self-loops or duplicates).
    Edge count n*q_neigh/2 is preserved.
    """
    if q_neigh % 2 != 0 or q_neigh < 2:
        raise ParameterError(f"q_neigh must be even and >= 2, got {q_neigh}")
    if q_neigh >= n:
        raise ParameterError(f"q_neigh must be < n, got q_neigh={q_neigh}, n={n}")
    if not 0 <= beta <= 1:
        raise ParameterError(f"beta must be in [0, 1], got {beta}")
    rng = _rng(seed)
    adj = np.zeros((n, n))
    for j in range(1, q_neigh // 2 + 1):
        for i in range(n):
            t = (i + j) % n
            adj[i, t] = adj[t, i] = g
    if beta > 0:
        for j in range(1, q_neigh // 2 + 1):
            for i in range(n):
                old = (i + j) % n
                if rng.random() >= beta:
                    continue
                if np.count_nonzero(adj[i]) >= n - 1:
                    continue  # node already saturated, nothing to rewire to
                while True:
                    w = int(rng.integers(n))
                    if w != i and adj[i, w] == 0:
                        break
                adj[i, old] = adj[old, i] = 0.0
                adj[i, w] = adj[w, i] = g
    return _net(adj, {"topology": "ws", "n": n, "q": q_neigh, "beta": beta, "g": g, "seed": seed})


def gen_pp(n: int, sigma_retain: float, g: float = 1.0, seed: int = 0) -> Network:
    """Duplication model of protein-interaction networks: starting from a
    single edge, repeatedly duplicate a random node, keeping each of its
    links independently with probability sigma_retain. The duplicate is
    never linked to the original. Repeated neighborhoods make the adjacency
    strongly rank-deficient.
    """
    if not 0 <= sigma_retain <= 1:
        raise ParameterError(f"sigma_retain must be in [0, 1], got {sigma_retain}")
    if n < 2:
        raise ParameterError("n must be >= 2")
    rng = _rng(seed)
    adj = np.zeros((n, n))
    adj[0, 1] = adj[1, 0] = g
    cur = 2
    while cur < n:
        orig = int(rng.integers(cur))
        for nb in np.flatnonzero(adj[orig, :cur]):
            if rng.random() < sigma_retain:
                adj[cur, nb] = adj[nb, cur] = g
        cur += 1
    return _net(adj, {"topology": "pp", "n": n, "sigma": sigma_retain, "g": g, "seed": seed})


def gen_as(
    n: int,
    g: float = 1.0,
    seed: int = 0,
    core_size: int = AS_CORE_SIZE,
    leaf_prob: float = AS_LEAF_PROB,
    midtier_providers: int = AS_MIDTIER_PROVIDERS,
) -> Network:
    """Multi-tier internet-like growth model (simplified).

    A fully meshed core of ``core_size`` transit nodes; every later node
    joins either as a leaf customer (probability ``leaf_prob``, one provider)
    or as a mid-tier provider (``midtier_providers`` distinct providers).
    Providers are picked degree-preferentially from the core plus mid-tier
    pool, so leaves stay degree 1 and the adjacency is heavily
    rank-deficient.
    """
    if n < core_size:
        raise ParameterError(f"n must be >= core size {core_size}, got {n}")
    rng = _rng(seed)
    adj = np.zeros((n, n))
    for i in range(core_size):
        for j in range(i + 1, core_size):
            adj[i, j] = adj[j, i] = g
    providers = list(range(core_size))
    deg = np.count_nonzero(adj, axis=1).astype(float)
    for v in range(core_size, n):
        if rng.random() < leaf_prob:
            picks = _preferential_pick(rng, deg[providers], 1)
        else:
            picks = _preferential_pick(rng, deg[providers], min(midtier_providers, len(providers)))
        for pos in picks:
            t = providers[pos]
            adj[v, t] = adj[t, v] = g
            deg[v] += 1
            deg[t] += 1
        if len(picks) > 1:
            providers.append(v)
    return _net(adj, {"topology": "as", "n": n, "g": g, "seed": seed})
