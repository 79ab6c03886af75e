"""Lifts of multigraphs: permutation assignments, cover maps, 2-lifts."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .graphs import (GraphError, MultiGraph, ParseError, file_edge_ids,
                     parse_graph, serialize_graph)


def _perm_inverse(p):
    q = [0] * len(p)
    for i, j in enumerate(p):
        q[j] = i
    return tuple(q)


class LiftAssignment:
    """Height-n lift of a base graph given by one permutation of [n] per
    directed base edge; perm(e^-1) = perm(e)^-1 and half-loop permutations
    are involutions."""

    __slots__ = ("base", "height", "perms")

    def __init__(self, base: MultiGraph, height: int, perms):
        if height < 1:
            raise GraphError("height must be >= 1")
        perms = tuple(tuple(p) for p in perms)
        if len(perms) != base.edge_count:
            raise GraphError("one permutation per directed base edge required")
        for e, p in enumerate(perms):
            if sorted(p) != list(range(height)):
                raise GraphError(f"edge {e}: not a permutation of the fiber")
            if perms[base.inv[e]] != _perm_inverse(p):
                raise GraphError(f"edge {e}: perm(e^-1) != perm(e)^-1")
        self.base = base
        self.height = height
        self.perms = perms

    @staticmethod
    def identity(base: MultiGraph, height: int) -> "LiftAssignment":
        ident = tuple(range(height))
        return LiftAssignment(base, height, [ident] * base.edge_count)


@dataclass(frozen=True)
class CoverMap:
    """Projection G -> H as dense vertex and directed-edge maps."""

    vertex_map: tuple
    edge_map: tuple

    def compose(self, outer: "CoverMap") -> "CoverMap":
        """Map G -> K from G -> H (self) and H -> K (outer)."""
        return CoverMap(
            vertex_map=tuple(outer.vertex_map[v] for v in self.vertex_map),
            edge_map=tuple(outer.edge_map[e] for e in self.edge_map),
        )


@dataclass
class CoverReport:
    ok: bool
    violations: list

    def __bool__(self):
        return self.ok


def build_lift(a: LiftAssignment):
    """Materialize the lift graph and its canonical cover map.

    Lifted vertex (v, i) gets id i*|V(H)| + v and the lifted copy of edge e
    with tail in layer i gets id i*|E(H)| + e.
    """
    h = a.base
    n = a.height
    nv, ne = h.vertex_count, h.edge_count
    tail = [0] * (n * ne)
    head = [0] * (n * ne)
    inv = [0] * (n * ne)
    for i in range(n):
        for e in range(ne):
            eid = i * ne + e
            tail[eid] = i * nv + h.tail[e]
            head[eid] = a.perms[e][i] * nv + h.head[e]
            inv[eid] = a.perms[e][i] * ne + h.inv[e]
    g = MultiGraph(n * nv, tail, head, inv)
    cover = CoverMap(
        vertex_map=tuple(v % nv for v in range(n * nv)),
        edge_map=tuple(e % ne for e in range(n * ne)),
    )
    return g, cover


def verify_cover(g: MultiGraph, h: MultiGraph, m: CoverMap) -> CoverReport:
    """Check the cover-map invariants; violations are reported, not raised."""
    bad = []
    if len(m.vertex_map) != g.vertex_count or len(m.edge_map) != g.edge_count:
        return CoverReport(False, ["map size mismatch"])
    for v in range(g.vertex_count):
        if not 0 <= m.vertex_map[v] < h.vertex_count:
            bad.append(f"vertex {v}: image out of range")
    for e in range(g.edge_count):
        fe = m.edge_map[e]
        if not 0 <= fe < h.edge_count:
            bad.append(f"edge {e}: image out of range")
            continue
        if m.vertex_map[g.tail[e]] != h.tail[fe]:
            bad.append(f"edge {e}: tail does not commute")
        if m.vertex_map[g.head[e]] != h.head[fe]:
            bad.append(f"edge {e}: head does not commute")
        if m.edge_map[g.inv[e]] != h.inv[fe]:
            bad.append(f"edge {e}: inverse does not commute")
    if bad:
        return CoverReport(False, bad)
    for v in range(g.vertex_count):
        images = sorted(m.edge_map[e] for e in g.out_edges(v))
        expected = sorted(h.out_edges(m.vertex_map[v]))
        if images != expected:
            bad.append(f"vertex {v}: emanating edges not a local bijection")
    vertex_fibers = [0] * h.vertex_count
    for v in range(g.vertex_count):
        vertex_fibers[m.vertex_map[v]] += 1
    edge_fibers = [0] * h.edge_count
    for e in range(g.edge_count):
        edge_fibers[m.edge_map[e]] += 1
    sizes = set(vertex_fibers) | set(edge_fibers)
    if len(sizes) != 1:
        bad.append(f"fiber sizes not constant: {sorted(sizes)}")
    return CoverReport(not bad, bad)


def random_two_lift_assignment(g: MultiGraph, rng) -> LiftAssignment:
    """Independent identity/swap choice per undirected edge (one choice per
    whole-loop; both S2 elements are involutions)."""
    for e in range(g.edge_count):
        if g.is_half_loop(e):
            raise GraphError(
                f"edge {e} is a half-loop; apply half_loop_elimination first")
    ident, swap = (0, 1), (1, 0)
    perms = [None] * g.edge_count
    for e in g.undirected_edges():
        p = swap if rng.random() < 0.5 else ident
        perms[e] = p
        perms[g.inv[e]] = p
    return LiftAssignment(g, 2, perms)


def random_two_lift(g: MultiGraph, rng) -> MultiGraph:
    return build_lift(random_two_lift_assignment(g, rng))[0]


def half_loop_elimination(h: MultiGraph):
    """The 2-lift in which each half-loop becomes the cross edge between the
    two copies of its vertex and every other edge lifts by identity."""
    ident, swap = (0, 1), (1, 0)
    perms = [swap if h.is_half_loop(e) else ident for e in range(h.edge_count)]
    return build_lift(LiftAssignment(h, 2, perms))


def assignment_from_cover(g: MultiGraph, h: MultiGraph,
                          m: CoverMap) -> tuple:
    """Express an arbitrary cover as a LiftAssignment over h.

    Fibers are labelled in increasing vertex-id order; edge fibers inherit
    the tail labelling.  Returns (assignment, relabel) where relabel maps
    each vertex of g to its (base vertex, layer) id in the rebuilt lift.
    """
    rep = verify_cover(g, h, m)
    if not rep.ok:
        raise GraphError(f"not a cover: {rep.violations[:3]}")
    n = g.vertex_count // h.vertex_count
    layer = [0] * g.vertex_count
    counter = [0] * h.vertex_count
    for v in range(g.vertex_count):
        b = m.vertex_map[v]
        layer[v] = counter[b]
        counter[b] += 1
    # lifted edge over base e leaving layer i of t(e): find it per vertex
    perms = [[None] * n for _ in range(h.edge_count)]
    for ge in range(g.edge_count):
        be = m.edge_map[ge]
        perms[be][layer[g.tail[ge]]] = layer[g.head[ge]]
    a = LiftAssignment(h, n, [tuple(p) for p in perms])
    relabel = tuple(layer[v] * h.vertex_count + m.vertex_map[v]
                    for v in range(g.vertex_count))
    return a, relabel


def relabel_layers(a: LiftAssignment, lam) -> LiftAssignment:
    """Apply one layer permutation at every vertex: perm'(e) = lam o perm(e)
    o lam^-1.  Tree-identity permutations stay identity."""
    lam = tuple(lam)
    lam_inv = _perm_inverse(lam)
    perms = [tuple(lam[p[lam_inv[i]]] for i in range(a.height))
             for p in a.perms]
    return LiftAssignment(a.base, a.height, perms)


def normalize_tree_layers(a: LiftAssignment, tree_edges) -> LiftAssignment:
    """Relabel fibers per base vertex so every spanning-tree edge lifts by
    the identity (each copy of the tree then lies in one layer)."""
    h = a.base
    n = a.height
    tree_set = set(tree_edges) | {h.inv[e] for e in tree_edges}
    tau = [None] * h.vertex_count
    tau[0] = tuple(range(n))
    stack = [0]
    while stack:
        v = stack.pop()
        for e in h.out_edges(v):
            if e not in tree_set:
                continue
            w = h.head[e]
            if tau[w] is None:
                # want tau_w o perm(e) o tau_v^-1 = id
                tau[w] = _perm_inverse(
                    tuple(a.perms[e][tau[v].index(i)] for i in range(n)))
                stack.append(w)
    if any(t is None for t in tau):
        raise GraphError("tree does not span the base graph")
    perms = []
    for e in range(h.edge_count):
        tv = tau[h.tail[e]]
        tw = tau[h.head[e]]
        tv_inv = _perm_inverse(tv)
        perms.append(tuple(tw[a.perms[e][tv_inv[i]]] for i in range(n)))
    return LiftAssignment(h, n, perms)


# -- lift files ------------------------------------------------------------

def parse_lift(text: str, base: MultiGraph) -> LiftAssignment:
    """Parse a lift file against an already-loaded base graph.

    Permutation images are written 1-based, one `perm` line per undirected
    base edge in id order; the `base` path line is handled by load_lift.
    """
    height = None
    given = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "base":
            continue
        if parts[0] == "height":
            height = int(parts[1])
        elif parts[0] == "perm":
            e = int(parts[1])
            given[e] = tuple(int(x) - 1 for x in parts[2:])
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if height is None:
        raise ParseError("missing 'height' line")
    perms = [None] * base.edge_count
    for e in base.undirected_edges():
        if e not in given:
            raise ParseError(f"missing perm line for undirected edge {e}")
        perms[e] = given[e]
        perms[base.inv[e]] = _perm_inverse(given[e])
    return LiftAssignment(base, height, perms)


def serialize_lift(a: LiftAssignment, base_path: str) -> str:
    lines = [f"base {base_path}", f"height {a.height}"]
    for e in a.base.undirected_edges():
        images = " ".join(str(i + 1) for i in a.perms[e])
        lines.append(f"perm {e} {images}")
    return "\n".join(lines) + "\n"


def load_lift(path: str):
    """Read a lift file, resolving its base path relative to the file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    base_path = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line.startswith("base "):
            base_path = line.split(None, 1)[1]
            break
    if base_path is None:
        raise ParseError("lift file has no 'base' line")
    resolved = os.path.join(os.path.dirname(os.path.abspath(path)), base_path)
    with open(resolved, encoding="utf-8") as fh:
        base = parse_graph(fh.read())
    return parse_lift(text, base), base


def serialize_cover_map(m: CoverMap, g: MultiGraph = None,
                        h: MultiGraph = None) -> str:
    """Write a cover map; when the graphs are given, edge ids are the ones
    parse_graph reassigns after a serialize_graph round trip, so the file
    stays consistent with saved graph files."""
    gid = file_edge_ids(g) if g is not None else range(len(m.edge_map))
    hid = file_edge_ids(h) if h is not None else None
    lines = []
    for v, hv in enumerate(m.vertex_map):
        lines.append(f"vmap {v} {hv}")
    rows = sorted((gid[e], he if hid is None else hid[he])
                  for e, he in enumerate(m.edge_map))
    for e, he in rows:
        lines.append(f"emap {e} {he}")
    return "\n".join(lines) + "\n"


def parse_cover_map(text: str, g: MultiGraph, h: MultiGraph) -> CoverMap:
    vmap = [None] * g.vertex_count
    emap = [None] * g.edge_count
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            kind, src, dst = parts[0], int(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            raise ParseError(f"line {lineno}: bad map line {raw!r}")
        if kind == "vmap":
            if not (0 <= src < g.vertex_count and 0 <= dst < h.vertex_count):
                raise ParseError(f"line {lineno}: vertex out of range")
            vmap[src] = dst
        elif kind == "emap":
            if not (0 <= src < g.edge_count and 0 <= dst < h.edge_count):
                raise ParseError(f"line {lineno}: edge out of range")
            emap[src] = dst
        else:
            raise ParseError(f"line {lineno}: unknown directive {kind!r}")
    if None in vmap or None in emap:
        raise ParseError("cover map file leaves vertices or edges unmapped")
    return CoverMap(tuple(vmap), tuple(emap))


__all__ = [
    "LiftAssignment", "CoverMap", "CoverReport", "build_lift", "verify_cover",
    "random_two_lift", "random_two_lift_assignment", "half_loop_elimination",
    "assignment_from_cover", "relabel_layers", "normalize_tree_layers",
    "parse_lift", "serialize_lift", "load_lift", "serialize_graph",
    "serialize_cover_map", "parse_cover_map",
]
