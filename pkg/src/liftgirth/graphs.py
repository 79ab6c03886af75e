"""Multigraphs with half-loops and whole-loops.

A graph is stored as a set of directed edges with an involution pairing
each edge with its inverse.  A half-loop is a self-inverse directed edge
(it contributes 1 to the degree of its vertex); a whole-loop is a pair of
mutually inverse directed edges at one vertex (contributing 2).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass


class GraphError(Exception):
    """Structurally invalid graph or violated precondition."""


class ParseError(GraphError):
    """Malformed graph, lift, or map file."""


class MultiGraph:
    """Immutable multigraph given by directed edges and an involution.

    Directed edge ``e`` has ``tail[e]``, ``head[e]`` and inverse ``inv[e]``.
    Vertex and edge ids are dense 0-based integers.
    """

    __slots__ = ("vertex_count", "tail", "head", "inv", "_out", "_deg")

    def __init__(self, vertex_count, tail, head, inv):
        if vertex_count <= 0:
            raise GraphError("vertex_count must be positive")
        tail = tuple(tail)
        head = tuple(head)
        inv = tuple(inv)
        m = len(tail)
        if len(head) != m or len(inv) != m:
            raise GraphError("tail/head/inv length mismatch")
        for e in range(m):
            if not (0 <= tail[e] < vertex_count and 0 <= head[e] < vertex_count):
                raise GraphError(f"edge {e}: vertex index out of range")
            f = inv[e]
            if not 0 <= f < m:
                raise GraphError(f"edge {e}: inverse id out of range")
            if inv[f] != e:
                raise GraphError(f"edge {e}: inverse is not an involution")
            if head[f] != tail[e] or tail[f] != head[e]:
                raise GraphError(f"edge {e}: inverse head/tail mismatch")
        self.vertex_count = vertex_count
        self.tail = tail
        self.head = head
        self.inv = inv
        out = [[] for _ in range(vertex_count)]
        for e in range(m):
            out[tail[e]].append(e)
        self._out = tuple(tuple(es) for es in out)
        self._deg = tuple(len(es) for es in out)

    # -- basic accessors ---------------------------------------------------

    @property
    def edge_count(self):
        """Number of directed edges (a half-loop counts once)."""
        return len(self.tail)

    def out_edges(self, v):
        return self._out[v]

    def degree(self, v):
        return self._deg[v]

    def degrees(self):
        return self._deg

    def is_half_loop(self, e):
        return self.inv[e] == e

    def is_loop(self, e):
        return self.tail[e] == self.head[e]

    def undirected_edges(self):
        """One directed representative per undirected edge (the smaller id)."""
        return tuple(e for e in range(self.edge_count) if e <= self.inv[e])

    def neighbors(self, v):
        return tuple(self.head[e] for e in self._out[v])

    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and self.tail == other.tail
                and self.head == other.head
                and self.inv == other.inv)

    def __hash__(self):
        return hash((self.vertex_count, self.tail, self.head, self.inv))

    def __repr__(self):
        return (f"MultiGraph(vertices={self.vertex_count}, "
                f"directed_edges={self.edge_count})")

    # -- construction helpers ----------------------------------------------

    @staticmethod
    def build(vertex_count, directives):
        """Build from a sequence of ('edge', a, b) / ('wholeloop', a) /
        ('halfloop', a) directives, assigning directed ids in order."""
        tail, head, inv = [], [], []
        for d in directives:
            kind = d[0]
            if kind == "edge":
                a, b = d[1], d[2]
                e = len(tail)
                tail += [a, b]
                head += [b, a]
                inv += [e + 1, e]
            elif kind == "wholeloop":
                a = d[1]
                e = len(tail)
                tail += [a, a]
                head += [a, a]
                inv += [e + 1, e]
            elif kind == "halfloop":
                a = d[1]
                e = len(tail)
                tail.append(a)
                head.append(a)
                inv.append(e)
            else:
                raise GraphError(f"unknown directive {kind!r}")
        return MultiGraph(vertex_count, tail, head, inv)

    @staticmethod
    def from_pairs(vertex_count, pairs):
        """Simple-graph style constructor from undirected vertex pairs."""
        return MultiGraph.build(vertex_count, [("edge", a, b) for a, b in pairs])


@dataclass(frozen=True)
class GraphClass:
    connected: bool
    min_degree: int
    max_degree: int

    @property
    def admissible(self):
        return self.connected and self.min_degree >= 2 and self.max_degree > 2


def validate(g: MultiGraph) -> GraphClass:
    """Connectivity and degree statistics; admissibility for the spectral
    and bound machinery (connected, min degree >= 2, max degree > 2)."""
    degs = g.degrees()
    return GraphClass(
        connected=is_connected(g),
        min_degree=min(degs),
        max_degree=max(degs),
    )


def is_connected(g: MultiGraph) -> bool:
    seen = bytearray(g.vertex_count)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for e in g.out_edges(v):
            w = g.head[e]
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count == g.vertex_count


# -- distances -------------------------------------------------------------

def distance(g: MultiGraph, u, v):
    """Length of the shortest walk from u to v; math.inf if unreachable."""
    if u == v:
        return 0
    dist = [-1] * g.vertex_count
    dist[u] = 0
    q = deque([u])
    while q:
        w = q.popleft()
        d = dist[w] + 1
        for e in g.out_edges(w):
            x = g.head[e]
            if dist[x] < 0:
                if x == v:
                    return d
                dist[x] = d
                q.append(x)
    return math.inf


def _bfs_all(g: MultiGraph, s):
    dist = [-1] * g.vertex_count
    dist[s] = 0
    q = deque([s])
    while q:
        w = q.popleft()
        d = dist[w] + 1
        for e in g.out_edges(w):
            x = g.head[e]
            if dist[x] < 0:
                dist[x] = d
                q.append(x)
    return dist


def eccentricity(g: MultiGraph, v):
    dist = _bfs_all(g, v)
    if min(dist) < 0:
        raise GraphError("eccentricity undefined on a disconnected graph")
    return max(dist)


def farthest_pair(g: MultiGraph):
    """(u, v, d) with d = diameter; ties broken by smallest (u, v) pair."""
    best = None
    for u in range(g.vertex_count):
        dist = _bfs_all(g, u)
        if min(dist) < 0:
            raise GraphError("farthest_pair requires a connected graph")
        for v in range(g.vertex_count):
            cand = (dist[v], u, v)
            if best is None or cand[0] > best[0]:
                best = cand
    d, u, v = best
    return u, v, d


def diameter(g: MultiGraph):
    return farthest_pair(g)[2]


# -- girth -----------------------------------------------------------------

def girth(g: MultiGraph):
    """Shortest cycle length: 1 with any loop, 2 with a parallel pair,
    else the simple-graph girth via per-root BFS with parent-edge
    avoidance; math.inf for forests."""
    for e in range(g.edge_count):
        if g.is_loop(e):
            return 1
    seen_pairs = set()
    for e in g.undirected_edges():
        key = (min(g.tail[e], g.head[e]), max(g.tail[e], g.head[e]))
        if key in seen_pairs:
            return 2
        seen_pairs.add(key)

    best = math.inf
    for s in range(g.vertex_count):
        dist = [-1] * g.vertex_count
        parent_edge = [-1] * g.vertex_count
        dist[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            if 2 * dist[u] >= best:
                break
            pe = parent_edge[u]
            for e in g.out_edges(u):
                if pe >= 0 and e == g.inv[pe]:
                    continue
                w = g.head[e]
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent_edge[w] = e
                    q.append(w)
                elif e != parent_edge[w]:
                    cand = dist[u] + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


# -- serialization ---------------------------------------------------------

def parse_graph(text: str) -> MultiGraph:
    """Parse the line-oriented graph format (see serialize_graph)."""
    vertex_count = None
    directives = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        word = parts[0]
        try:
            args = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer argument") from None
        if word == "vertices":
            if vertex_count is not None or len(args) != 1:
                raise ParseError(f"line {lineno}: bad vertices header")
            vertex_count = args[0]
        elif word == "edge":
            if len(args) != 2:
                raise ParseError(f"line {lineno}: edge wants two vertices")
            directives.append(("edge", args[0], args[1]))
        elif word in ("wholeloop", "halfloop"):
            if len(args) != 1:
                raise ParseError(f"line {lineno}: {word} wants one vertex")
            directives.append((word, args[0]))
        else:
            raise ParseError(f"line {lineno}: unknown directive {word!r}")
    if vertex_count is None:
        raise ParseError("missing 'vertices' header")
    return MultiGraph.build(vertex_count, directives)


def serialize_graph(g: MultiGraph) -> str:
    """Inverse of parse_graph, emitting directives in directed-id order."""
    lines = [f"vertices {g.vertex_count}"]
    for e in range(g.edge_count):
        if g.inv[e] < e:
            continue
        if g.is_half_loop(e):
            lines.append(f"halfloop {g.tail[e]}")
        elif g.is_loop(e):
            lines.append(f"wholeloop {g.tail[e]}")
        else:
            lines.append(f"edge {g.tail[e]} {g.head[e]}")
    return "\n".join(lines) + "\n"


def file_edge_ids(g: MultiGraph):
    """Edge ids parse_graph would assign after a serialize_graph round
    trip, as a tuple indexed by the current ids."""
    new = [None] * g.edge_count
    c = 0
    for e in range(g.edge_count):
        if g.inv[e] < e:
            continue
        if g.is_half_loop(e):
            new[e] = c
            c += 1
        else:
            new[e], new[g.inv[e]] = c, c + 1
            c += 2
    return tuple(new)


# -- shared fixtures -------------------------------------------------------

def h23() -> MultiGraph:
    """Two vertices: v (degree 2, id 0) and u (degree 3, id 1) joined by a
    parallel pair, with a half-loop at u."""
    return MultiGraph.build(2, [("edge", 0, 1), ("edge", 0, 1), ("halfloop", 1)])


def k32() -> MultiGraph:
    """Complete bipartite K_{3,2}: sides {0,1} (degree 3) and {2,3,4}."""
    return MultiGraph.from_pairs(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)])


def cycle_graph(n: int) -> MultiGraph:
    return MultiGraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> MultiGraph:
    return MultiGraph.from_pairs(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k4_minus_edge() -> MultiGraph:
    return MultiGraph.from_pairs(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def petersen() -> MultiGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return MultiGraph.from_pairs(10, outer + inner + spokes)
