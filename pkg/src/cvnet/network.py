"""Weighted undirected networks: the container type, graph queries, file I/O.

Conventions fixed across the package: nodes are 0-indexed, the adjacency
matrix is real symmetric with zero diagonal and nonnegative weights, and
``node_squeeze_db[i]`` is the p-quadrature squeezing of node i in dB
(variance reduced by the factor ``10**(-s/10)``).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import GraphFormatError, ParameterError

FORMAT_HEADER = "cvnet-graph v1"


@dataclass(frozen=True)
class Network:
    """Immutable weighted graph plus per-node squeezing factors."""

    adj: np.ndarray
    node_squeeze_db: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        adj = np.ascontiguousarray(self.adj, dtype=float)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ParameterError(f"adjacency must be square, got {adj.shape}")
        if adj.shape[0] < 1:
            raise ParameterError("network needs at least one node")
        if not np.array_equal(adj, adj.T):
            raise ParameterError("adjacency must be symmetric")
        if np.any(np.diag(adj) != 0):
            raise ParameterError("adjacency diagonal must be zero (no self-loops)")
        if np.any(adj < 0):
            raise ParameterError("edge weights must be nonnegative")
        sq = np.ascontiguousarray(self.node_squeeze_db, dtype=float)
        if sq.shape != (adj.shape[0],):
            raise ParameterError(
                f"node_squeeze_db must have length {adj.shape[0]}, got {sq.shape}"
            )
        adj.flags.writeable = False
        sq.flags.writeable = False
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "node_squeeze_db", sq)

    @classmethod
    def from_adjacency(cls, adj, squeeze_db=0.0, meta=None) -> "Network":
        adj = np.asarray(adj, dtype=float)
        sq = np.broadcast_to(np.asarray(squeeze_db, dtype=float), (adj.shape[0],)).copy()
        return cls(adj=adj, node_squeeze_db=sq, meta=dict(meta or {}))

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    @property
    def num_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.adj, 1)))

    def degrees(self) -> np.ndarray:
        """Unweighted degree (number of incident edges) per node."""
        return np.count_nonzero(self.adj, axis=1)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adj[i])

    def edges(self):
        """Yield (i, j, weight) with i < j, in lexicographic order."""
        ii, jj = np.nonzero(np.triu(self.adj, 1))
        for i, j in zip(ii.tolist(), jj.tolist()):
            yield i, j, float(self.adj[i, j])

    def with_squeezing(self, squeeze_db) -> "Network":
        """Copy of the network with node_squeeze_db replaced (scalar or per-node)."""
        sq = np.broadcast_to(np.asarray(squeeze_db, dtype=float), (self.n,)).copy()
        return replace(self, node_squeeze_db=sq)


@dataclass(frozen=True)
class PathSet:
    """All shortest paths between one node pair.

    ``distance`` is the hop count, ``math.inf`` when target is unreachable
    (then ``paths`` is empty). Paths are node tuples from source to target,
    enumerated in lexicographic order of node indices.
    """

    source: int
    target: int
    distance: float
    paths: tuple

    @property
    def n_paths(self) -> int:
        return len(self.paths)


def _check_node(net: Network, i: int, name: str):
    if not (isinstance(i, (int, np.integer)) and 0 <= i < net.n):
        raise ParameterError(f"{name}={i} is not a valid node index (n={net.n})")


def bfs_distances(net: Network, source: int) -> np.ndarray:
    """Hop distances from source on the unweighted support; inf if unreachable."""
    _check_node(net, source, "source")
    dist = np.full(net.n, np.inf)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in net.neighbors(u):
            if dist[v] == np.inf:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def all_shortest_paths(net: Network, a: int, b: int) -> PathSet:
    """Enumerate every shortest a-to-b path (BFS on the edge support)."""
    _check_node(net, a, "a")
    _check_node(net, b, "b")
    if a == b:
        raise ParameterError("endpoints must differ")
    dist_a = bfs_distances(net, a)
    if dist_a[b] == np.inf:
        return PathSet(source=a, target=b, distance=math.inf, paths=())
    dist_b = bfs_distances(net, b)
    total = dist_a[b]
    # nodes on at least one shortest path
    on_path = dist_a + dist_b == total
    paths = []
    stack = [(a, [a])]
    while stack:
        u, path = stack.pop()
        if u == b:
            paths.append(tuple(path))
            continue
        nxt = [
            v
            for v in net.neighbors(u)
            if on_path[v] and dist_a[v] == dist_a[u] + 1
        ]
        # reverse-sorted push so pop() explores lowest index first
        for v in sorted(nxt, reverse=True):
            stack.append((v, path + [v]))
    return PathSet(source=a, target=b, distance=int(total), paths=tuple(paths))


def dump_edgelist(net: Network, fh) -> None:
    """Write the versioned text format (see load_edgelist) to a file object."""
    sq = net.node_squeeze_db
    fh.write(FORMAT_HEADER + "\n")
    fh.write(f"n {net.n}\n")
    if np.all(sq == sq[0]):
        fh.write(f"squeeze_db uniform {sq[0]:.12g}\n")
    else:
        fh.write("squeeze_db " + " ".join(f"{s:.12g}" for s in sq) + "\n")
    for i, j, w in net.edges():
        fh.write(f"{i} {j} {w:.12g}\n")


def save_edgelist(net: Network, path) -> None:
    with open(path, "w") as fh:
        dump_edgelist(net, fh)


def load_edgelist(path) -> Network:
    """Parse the ``cvnet-graph v1`` text format.

    Layout: header line, ``n <N>``, ``squeeze_db uniform <s>`` or
    ``squeeze_db <s_0> ... <s_{N-1}>``, then one ``<i> <j> <w>`` line per
    edge. ``#`` starts a comment; blank lines are ignored. Self-loops,
    repeated pairs and conflicting (i,j)/(j,i) weights are rejected.
    """
    with open(path) as fh:
        raw_lines = fh.readlines()

    lines = []
    for lineno, raw in enumerate(raw_lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if text:
            lines.append((lineno, text))

    if not lines or lines[0][1] != FORMAT_HEADER:
        raise GraphFormatError(
            f"expected header {FORMAT_HEADER!r}", line=lines[0][0] if lines else 1
        )
    if len(lines) < 2 or not lines[1][1].startswith("n "):
        raise GraphFormatError("expected 'n <N>' after header", line=lines[0][0] + 1)
    lineno, text = lines[1]
    try:
        n = int(text.split()[1])
    except (IndexError, ValueError):
        raise GraphFormatError(f"cannot parse node count from {text!r}", line=lineno)
    if n < 1:
        raise GraphFormatError("node count must be >= 1", line=lineno)

    if len(lines) < 3 or not lines[2][1].startswith("squeeze_db"):
        raise GraphFormatError("expected 'squeeze_db ...' line", line=lineno + 1)
    lineno, text = lines[2]
    fields = text.split()
    try:
        if len(fields) == 3 and fields[1] == "uniform":
            squeeze = np.full(n, float(fields[2]))
        elif len(fields) == n + 1:
            squeeze = np.array([float(x) for x in fields[1:]])
        else:
            raise ValueError
    except ValueError:
        raise GraphFormatError(
            f"squeeze_db needs 'uniform <s>' or {n} values", line=lineno
        )

    adj = np.zeros((n, n))
    seen = {}
    for lineno, text in lines[3:]:
        fields = text.split()
        if len(fields) != 3:
            raise GraphFormatError(f"expected '<i> <j> <w>', got {text!r}", line=lineno)
        try:
            i, j, w = int(fields[0]), int(fields[1]), float(fields[2])
        except ValueError:
            raise GraphFormatError(f"cannot parse edge {text!r}", line=lineno)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphFormatError(f"node index out of range in {text!r}", line=lineno)
        if i == j:
            raise GraphFormatError(f"self-loop on node {i}", line=lineno)
        if w < 0:
            raise GraphFormatError(f"negative weight in {text!r}", line=lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            if seen[key] != w:
                raise GraphFormatError(
                    f"asymmetric weights for edge {key}: {seen[key]} vs {w}",
                    line=lineno,
                )
            raise GraphFormatError(f"duplicate edge {key}", line=lineno)
        seen[key] = w
        adj[i, j] = adj[j, i] = w

    return Network(adj=adj, node_squeeze_db=squeeze, meta={"topology": "file"})
