"""Simple undirected graphs and the combinatorics the certificates rely on.

Vertices are dense integers ``0..n-1``. Vertex sets are passed around as any
iterable of ints and returned as ``frozenset``; internally adjacency is kept as
integer bit masks (bit ``v`` set means vertex ``v`` is present).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional


class GraphError(ValueError):
    """Malformed graph input or a graph that violates a precondition."""


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _members(mask: int) -> frozenset[int]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.
    """

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GraphError("graph must have at least one vertex")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop on vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: Optional[int] = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            if not edges:
                raise GraphError("cannot infer vertex count from an empty edge list")
            n = 1 + max(max(e) for e in edges)
        return cls(n, frozenset(edges))

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour bit mask of every vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def neighbours(self, v: int) -> frozenset[int]:
        return _members(self.adjacency[v])

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


# -- parsing -----------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the edge-list text format.

    Each non-blank line not starting with ``#`` is ``u v``. An optional first
    content line ``n <count>`` fixes the vertex count so isolated vertices
    survive parsing.
    """
    n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if first and tokens[0] == "n":
            if len(tokens) != 2:
                raise GraphError(f"line {lineno}: header must be 'n <count>'")
            n = _parse_index(tokens[1], lineno)
            first = False
            continue
        first = False
        if len(tokens) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = (_parse_index(t, lineno) for t in tokens)
        if u == v:
            raise GraphError(f"line {lineno}: self-loop on vertex {u}")
        edges.append((u, v))
    if not edges and n is None:
        raise GraphError("empty graph")
    if n is not None and edges and max(max(e) for e in edges) >= n:
        raise GraphError(f"edge index exceeds declared vertex count {n}")
    return Graph.from_edges(edges, n)


def _parse_index(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise GraphError(f"line {lineno}: {token!r} is not an unsigned integer")
    return int(token)


def format_graph(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# -- structure ---------------------------------------------------------------


def bfs_distances(g: Graph, sources: Iterable[int]) -> list[Optional[int]]:
    """Multi-source BFS; ``None`` marks unreachable vertices."""
    dist: list[Optional[int]] = [None] * g.n
    queue = deque()
    for s in sources:
        if dist[s] is None:
            dist[s] = 0
            queue.append(s)
    while queue:
        a = queue.popleft()
        for b in sorted(g.neighbours(a)):
            if dist[b] is None:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def is_connected(g: Graph) -> bool:
    return all(d is not None for d in bfs_distances(g, [0]))


def two_coloring(g: Graph) -> Optional[list[int]]:
    """A proper 2-colouring (list of 0/1) or ``None`` if the graph has an odd cycle."""
    colour: list[Optional[int]] = [None] * g.n
    for start in range(g.n):
        if colour[start] is not None:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for b in g.neighbours(a):
                if colour[b] is None:
                    colour[b] = 1 - colour[a]
                    queue.append(b)
                elif colour[b] == colour[a]:
                    return None
    return colour  # type: ignore[return-value]


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None


def _bfs_tree(g: Graph, root: int) -> tuple[list[Optional[int]], list[Optional[int]]]:
    dist: list[Optional[int]] = [None] * g.n
    parent: list[Optional[int]] = [None] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in sorted(g.neighbours(a)):
            if dist[b] is None:
                dist[b] = dist[a] + 1
                parent[b] = a
                queue.append(b)
    return dist, parent


def _path_to_root(parent: list[Optional[int]], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return path


def _canonical_cycle(cycle: list[int]) -> tuple[int, ...]:
    # start at the smallest vertex, walk towards its smaller cycle neighbour
    k = cycle.index(min(cycle))
    rot = cycle[k:] + cycle[:k]
    rev = [rot[0]] + rot[1:][::-1]
    return tuple(min(rot, rev))


def find_odd_induced_cycle(g: Graph) -> Optional[tuple[int, ...]]:
    """Shortest odd cycle of ``g`` as an ordered vertex tuple, or ``None`` if bipartite.

    A shortest odd cycle has no chord (a chord would split off a shorter odd
    cycle), so the result is always induced. Ties are broken by the sorted
    vertex tuple, then the canonical ordering, so the answer is deterministic.
    """
    best: Optional[tuple[int, tuple[int, ...], tuple[int, ...]]] = None
    for root in range(g.n):
        dist, parent = _bfs_tree(g, root)
        for a, b in g.sorted_edges():
            if dist[a] is None or dist[a] != dist[b]:
                continue
            length = 2 * dist[a] + 1
            if best is not None and length > best[0]:
                continue
            pa = _path_to_root(parent, a)
            pb = _path_to_root(parent, b)
            walk = pa[::-1] + pb[:-1]  # root ... a, b ... (child of root)
            if len(set(walk)) != length:
                continue  # closed walk, not a simple cycle
            cyc = _canonical_cycle(walk)
            key = (length, tuple(sorted(cyc)), cyc)
            if best is None or key < best:
                best = key
    return None if best is None else best[2]


def is_induced_cycle(g: Graph, cycle: Iterable[int]) -> bool:
    """True iff ``cycle`` (ordered) is a chordless cycle of length >= 3."""
    cyc = list(cycle)
    k = len(cyc)
    if k < 3 or len(set(cyc)) != k or any(not 0 <= v < g.n for v in cyc):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = (cyc[j] in g.neighbours(cyc[i]))
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                return False
    return True


def neighbourhood_parity(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices with an odd number of neighbours in ``s``."""
    acc = 0
    for v in set(s):
        acc ^= g.adjacency[v]
    return _members(acc)


def induced_edge_count(g: Graph, s: Iterable[int]) -> int:
    m = _mask(s)
    return sum(1 for u, v in g.edges if (m >> u) & 1 and (m >> v) & 1)


def distance_params(g: Graph, anchor: Iterable[int], cycle: bool) -> tuple[int, Optional[int]]:
    """Return ``(l, c)``: largest distance from any vertex to ``anchor`` and the
    anchor cycle length (``None`` when the anchor is not a cycle)."""
    anchor = list(anchor)
    if not anchor:
        raise GraphError("anchor must be nonempty")
    dist = bfs_distances(g, anchor)
    if any(d is None for d in dist):
        raise GraphError("graph is not connected")
    return max(dist), (len(set(anchor)) if cycle else None)  # type: ignore[type-var]
