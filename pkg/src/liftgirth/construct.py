"""Constructive algorithms for small high-girth covers.

Three families:
  * iterated random 2-lifts that boost girth (with a cycle census as the
    progress measure), plus the layer-trimming step that turns a
    high-girth cover into one of bounded diameter;
  * greedy completion of a cycle by a matching on its even vertices
    (variants a/b/c), specific to the two-vertex half-loop base;
  * growth by edge surgery starting from K4 minus an edge (variants
    gd/gf), also specific to that base.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .bounds import SpanningTreeInfo, spanning_tree
from .graphs import (GraphError, MultiGraph, distance, farthest_pair, girth,
                     h23, k4_minus_edge, validate)
from .lifts import (CoverMap, LiftAssignment, assignment_from_cover,
                    build_lift, half_loop_elimination, normalize_tree_layers,
                    relabel_layers, verify_cover)


# -- cycle counting --------------------------------------------------------

def cycles_of_length(g: MultiGraph, length: int):
    """All vertex-simple cycles of exactly the given length, as tuples of
    directed edges, each cycle listed once."""
    if length == 1:
        return [(e,) for e in g.undirected_edges() if g.is_loop(e)]
    if length == 2:
        by_pair = {}
        for e in g.undirected_edges():
            if g.is_loop(e):
                key = (g.tail[e], g.tail[e])
            else:
                key = (min(g.tail[e], g.head[e]), max(g.tail[e], g.head[e]))
            by_pair.setdefault(key, []).append(e)
        out = []
        for edges in by_pair.values():
            for i in range(len(edges)):
                for j in range(i + 1, len(edges)):
                    out.append((edges[i], g.inv[edges[j]]))
        return out

    cycles = []
    nv = g.vertex_count

    def extend(start, v, visited, path):
        depth = len(path)
        for e in g.out_edges(v):
            w = g.head[e]
            if depth == length - 1:
                # closing edge; direction dedup: second vertex < last vertex
                if w == start and g.head[path[0]] < g.tail[e]:
                    cycles.append(tuple(path) + (e,))
            elif w > start and w not in visited:
                visited.add(w)
                path.append(e)
                extend(start, w, visited, path)
                path.pop()
                visited.remove(w)

    for s in range(nv):
        extend(s, s, {s}, [])
    return cycles


def cycle_census(g: MultiGraph, length: int) -> int:
    """Number of distinct cycles of exactly the given length."""
    return len(cycles_of_length(g, length))


def nb_cycle_profile(g: MultiGraph, e: int, g_max: int):
    """(c_1, ..., c_gmax) where c_l counts closed non-backtracking walks of
    length l through edge e, one per cyclic orientation class (the walk is
    pinned to start with the directed edge e)."""
    counts = [0] * (g_max + 1)
    start = g.tail[e]
    first_inv = g.inv[e]

    def walk(last, v, depth):
        if depth > g_max:
            return
        if v == start and last != first_inv:
            counts[depth] += 1
        if depth == g_max:
            return
        forbidden = g.inv[last]
        for f in g.out_edges(v):
            if f != forbidden:
                walk(f, g.head[f], depth + 1)

    walk(e, g.head[e], 1)
    return tuple(counts[1:])


# -- girth boosting by 2-lifts ---------------------------------------------

def _identity_cover(h: MultiGraph) -> CoverMap:
    return CoverMap(tuple(range(h.vertex_count)), tuple(range(h.edge_count)))


def high_girth_cover(h: MultiGraph, g: int, rng, budget: int = 1000):
    """A cover of h with girth >= g by iterated random 2-lifts.

    At girth level gamma the shortest cycles are enumerated once; each
    candidate 2-lift is scored by the parity of its edge choices along
    those cycles (a cycle survives as two copies iff the product of its
    fiber swaps is the identity).  The best candidate in the budget is
    accepted as long as it strictly reduces the census; a candidate with
    census zero raises the girth level.
    """
    if min(h.degrees()) < 2:
        raise GraphError("high_girth_cover needs minimal degree >= 2")
    G, cover = h, _identity_cover(h)
    if girth(G) >= g:
        return G, cover
    if any(h.is_half_loop(e) for e in range(h.edge_count)):
        G, cover = half_loop_elimination(h)

    while True:
        gamma = girth(G)
        if gamma >= g:
            return G, cover
        cycles = cycles_of_length(G, gamma)
        phi = len(cycles)
        und = G.undirected_edges()
        slot = {e: i for i, e in enumerate(und)}
        cycle_slots = [tuple(slot[min(e, G.inv[e])] for e in c)
                       for c in cycles]
        best_bits, best_phi = None, phi
        for _ in range(budget):
            bits = [rng.random() < 0.5 for _ in und]
            phi2 = 2 * sum(1 for slots in cycle_slots
                           if not sum(bits[s] for s in slots) % 2)
            if phi2 < best_phi:
                best_bits, best_phi = bits, phi2
                if phi2 == 0:
                    break
        if best_bits is None:
            raise GraphError(
                f"no 2-lift in budget {budget} reduced the census "
                f"(girth {gamma}, {phi} shortest cycles)")
        ident, swap = (0, 1), (1, 0)
        perms = [None] * G.edge_count
        for i, e in enumerate(und):
            p = swap if best_bits[i] else ident
            perms[e] = p
            perms[G.inv[e]] = p
        G, step = build_lift(LiftAssignment(G, 2, perms))
        cover = step.compose(cover)


# -- Erdos-Sachs layer trimming --------------------------------------------

@dataclass
class TrimState:
    """A connected cover in tree-normalized permutation form.

    Layers are the connected components of the preimage of the spanning
    tree; with tree permutations normalized to the identity, the vertex
    (v, i) has id i*|V(H)| + v and its layer is an integer division.
    """
    assignment: LiftAssignment
    tree: SpanningTreeInfo
    graph: MultiGraph
    cover: CoverMap

    @property
    def height(self):
        return self.assignment.height


def _connected_component_cover(g: MultiGraph, h: MultiGraph, m: CoverMap,
                               start: int = 0):
    """Restrict a cover to the component of `start` (a component of a cover
    of a connected base is itself a cover)."""
    comp = []
    seen = bytearray(g.vertex_count)
    seen[start] = 1
    stack = [start]
    while stack:
        v = stack.pop()
        comp.append(v)
        for e in g.out_edges(v):
            w = g.head[e]
            if not seen[w]:
                seen[w] = 1
                stack.append(w)
    comp.sort()
    vmap = {v: i for i, v in enumerate(comp)}
    edges = [e for e in range(g.edge_count) if seen[g.tail[e]]]
    emap = {e: i for i, e in enumerate(edges)}
    sub = MultiGraph(
        len(comp),
        [vmap[g.tail[e]] for e in edges],
        [vmap[g.head[e]] for e in edges],
        [emap[g.inv[e]] for e in edges],
    )
    cover = CoverMap(tuple(m.vertex_map[v] for v in comp),
                     tuple(m.edge_map[e] for e in edges))
    return sub, cover


def trim_state_from_cover(g: MultiGraph, h: MultiGraph, m: CoverMap,
                          tree: SpanningTreeInfo = None) -> TrimState:
    if tree is None:
        tree = spanning_tree(h)
    g, m = _connected_component_cover(g, h, m)
    a, _ = assignment_from_cover(g, h, m)
    a = normalize_tree_layers(a, tree.tree_edges)
    graph, cover = build_lift(a)
    return TrimState(a, tree, graph, cover)


def es_trim_step(state: TrimState, g: int) -> TrimState:
    """Remove the two layers holding a farthest vertex pair and reconnect
    the deficient vertices; girth >= g and the cover property persist when
    the pair is farther apart than D0 = g + 2 diam(T)."""
    h = state.assignment.base
    n = state.height
    nv = h.vertex_count
    d0 = state.tree.d0(g)
    vp, up, dist = farthest_pair(state.graph)
    if dist <= d0:
        raise GraphError(f"diameter {dist} <= D0 {d0}: nothing to trim")
    i, j = vp // nv, up // nv
    if i == j:
        raise GraphError("farthest pair in one layer; tree normalization "
                         "or the distance precondition is broken")

    order = [None] * n          # old layer -> new layer
    order[i], order[j] = n - 1, n - 2
    rest = iter(range(n - 2))
    for x in range(n):
        if order[x] is None:
            order[x] = next(rest)
    a = relabel_layers(state.assignment, order)

    tree_set = set(state.tree.tree_edges) | {h.inv[e]
                                             for e in state.tree.tree_edges}
    perms = []
    for e in range(h.edge_count):
        p = a.perms[e]
        if e in tree_set:
            perms.append(tuple(range(n - 2)))
            continue
        p_inv = [0] * n
        for x, y in enumerate(p):
            p_inv[y] = x
        touching = (p[n - 1], p[n - 2], p_inv[n - 1], p_inv[n - 2])
        if any(x >= n - 2 for x in touching):
            raise GraphError(
                f"red-edge count above base edge {e} is not two; the "
                f"distance precondition did not actually hold")
        q = list(p[:n - 2])
        q[p_inv[n - 2]] = p[n - 1]
        q[p_inv[n - 1]] = p[n - 2]
        perms.append(tuple(q))
    new_a = LiftAssignment(h, n - 2, perms)
    graph, cover = build_lift(new_a)
    if girth(graph) < g:
        raise GraphError("trim produced a short cycle; internal invariant "
                         "violated")
    return TrimState(new_a, state.tree, graph, cover)


def es_construct(h: MultiGraph, g: int, rng, budget: int = 1000):
    """Girth >= g cover of h with diameter <= g + 2 diam(T): boost the
    girth by 2-lifts, then trim layers until the diameter bound holds."""
    tree = spanning_tree(h)
    if g < tree.g0:
        raise GraphError(f"g={g} below g0={tree.g0}")
    big, cover = high_girth_cover(h, g, rng, budget)
    state = trim_state_from_cover(big, h, cover, tree)
    d0 = tree.d0(g)
    while farthest_pair(state.graph)[2] > d0:
        state = es_trim_step(state, g)
    return state.graph, state.cover


# -- greedy matching on a cycle (variants a/b/c) ---------------------------

def _near_deficient(adj, start, cutoff, deficient):
    """Deficient vertices within distance < cutoff of start (incl. start)."""
    dist = {start: 0}
    q = deque([start])
    near = {start} if start in deficient else set()
    while q:
        v = q.popleft()
        if dist[v] + 1 >= cutoff:
            continue
        for w in adj[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                if w in deficient:
                    near.add(w)
                q.append(w)
    return near


def greedy_cycle(variant: str, n: int, g: int, rng):
    """Complete the cycle C_n to a cover of the half-loop base by matching
    its even (deficient) vertices, adding only edges whose endpoints are at
    distance >= g-1.  Variants differ in how the next edge is picked:
      a - uniform over all permissible pairs,
      b - uniform deficient vertex, then uniform permissible partner,
      c - deficient vertex of minimal permissible degree, then partner.
    Returns (success, graph); a dead end is a failure, not an error.
    """
    variant = variant.lower()
    if variant not in ("a", "b", "c"):
        raise GraphError(f"unknown greedy variant {variant!r}")
    if n % 4:
        raise GraphError("n must be a multiple of 4")
    if g < 3:
        raise GraphError("g must be >= 3")
    adj = [[(i - 1) % n, (i + 1) % n] for i in range(n)]
    matching = []
    deficient = set(range(0, n, 2))

    while deficient:
        partners = {}
        for u in sorted(deficient):
            near = _near_deficient(adj, u, g - 1, deficient)
            partners[u] = sorted(deficient - near)
        if variant == "a":
            pairs = [(u, v) for u, vs in partners.items() for v in vs if u < v]
            if not pairs:
                return False, None
            u, v = pairs[rng.randrange(len(pairs))]
        else:
            if variant == "b":
                pool = [u for u in sorted(deficient) if partners[u]]
                if not pool:
                    return False, None
            else:
                low = min(len(vs) for vs in partners.values())
                if low == 0:
                    return False, None
                pool = [u for u in sorted(deficient) if len(partners[u]) == low]
            u = pool[rng.randrange(len(pool))]
            v = partners[u][rng.randrange(len(partners[u]))]
        matching.append((u, v))
        adj[u].append(v)
        adj[v].append(u)
        deficient -= {u, v}

    pairs = [(i, (i + 1) % n) for i in range(n)] + matching
    graph = MultiGraph.from_pairs(n, pairs)
    if girth(graph) < g:       # the base n-cycle itself may be too short
        return False, None
    return True, graph


# -- covers of the half-loop base by structure -----------------------------

def h23_cover_map(g: MultiGraph) -> CoverMap:
    """Cover map onto the two-vertex half-loop base read off the degrees:
    degree-2 vertices form the fiber of v, degree-3 of u; u-u edges lift
    the half-loop and the u-v edges 2-color along their alternating
    cycles."""
    base = h23()
    degs = g.degrees()
    if set(degs) != {2, 3}:
        raise GraphError("vertex degrees must be exactly {2, 3}")
    vmap = tuple(1 if d == 3 else 0 for d in degs)
    emap = [None] * g.edge_count
    uv = []
    for e in range(g.edge_count):
        a, b = degs[g.tail[e]], degs[g.head[e]]
        if a == 2 and b == 2:
            raise GraphError(f"edge {e} joins two degree-2 vertices")
        if a == 3 and b == 3:
            emap[e] = 4
        elif e <= g.inv[e]:
            uv.append(e)
    # alternate colors along the uv cycles; color 0 -> first parallel pair
    incident = {}
    for e in uv:
        incident.setdefault(g.tail[e], []).append(e)
        incident.setdefault(g.head[e], []).append(g.inv[e])
    colored = {}
    for e0 in uv:
        if e0 in colored or g.inv[e0] in colored:
            continue
        e, color = e0, 0
        while True:
            colored[min(e, g.inv[e])] = color
            nxt = [f for f in incident[g.head[e]]
                   if min(f, g.inv[f]) not in colored]
            if not nxt:
                break
            e, color = nxt[0], 1 - color
    for e in uv:
        color = colored[min(e, g.inv[e])]
        # base directed ids: pair A = (0: v->u, 1: u->v), pair B = (2, 3)
        down = 1 if color == 0 else 3     # u -> v
        up = 0 if color == 0 else 2       # v -> u
        if degs[g.tail[e]] == 3:
            emap[e], emap[g.inv[e]] = down, up
        else:
            emap[e], emap[g.inv[e]] = up, down
    m = CoverMap(vmap, tuple(emap))
    rep = verify_cover(g, base, m)
    if not rep.ok:
        raise GraphError(f"graph does not cover the base: {rep.violations[:3]}")
    return m


# -- surgery growth (variants gd/gf) ---------------------------------------

def _uv_edges(g: MultiGraph):
    degs = g.degrees()
    return [e for e in g.undirected_edges()
            if {degs[g.tail[e]], degs[g.head[e]]} == {2, 3}]


def surgery_transform(g: MultiGraph, e: int, f: int) -> MultiGraph:
    """Replace edges e and f (each with a degree-3 and a degree-2 end) by
    two three-edge paths through four new vertices, joined by one new edge
    between the two new degree-3 vertices."""
    degs = g.degrees()
    e, f = min(e, g.inv[e]), min(f, g.inv[f])
    if e == f:
        raise GraphError("surgery needs two distinct edges")
    ends = []
    for x in (e, f):
        a, b = g.tail[x], g.head[x]
        if {degs[a], degs[b]} != {2, 3}:
            raise GraphError(f"edge {x} endpoints must have degrees 3 and 2")
        ends.append((a, b) if degs[a] == 3 else (b, a))
    (u1, v1), (u2, v2) = ends
    nv = g.vertex_count
    v3, u3, v4, u4 = nv, nv + 1, nv + 2, nv + 3
    pairs = [(g.tail[x], g.head[x]) for x in g.undirected_edges()
             if x not in (e, f)]
    pairs += [(u1, v3), (v3, u3), (u3, v1),
              (u2, v4), (v4, u4), (u4, v2), (u3, u4)]
    return MultiGraph.from_pairs(nv + 4, pairs)


def _short_cycle_through(g: MultiGraph, e: int) -> float:
    """Length of the shortest cycle through undirected edge e: one BFS in
    g minus e between its endpoints."""
    a, b = g.tail[e], g.head[e]
    banned = {e, g.inv[e]}
    dist = {a: 0}
    q = deque([a])
    while q:
        v = q.popleft()
        if v == b:
            return dist[b] + 1
        for x in g.out_edges(v):
            if x in banned:
                continue
            w = g.head[x]
            if w not in dist:
                dist[w] = dist[v] + 1
                q.append(w)
    return math.inf


def _edge_distance(g: MultiGraph, e: int, f: int) -> int:
    return min(distance(g, a, b)
               for a in (g.tail[e], g.head[e])
               for b in (g.tail[f], g.head[f]))


def _pick_max(items, key, rng):
    best = max(key(x) for x in items)
    pool = [x for x in items if key(x) == best]
    return pool[rng.randrange(len(pool))]


def grow(variant: str, g: int, rng, max_steps: int = 10000) -> MultiGraph:
    """Grow a cover of the half-loop base from K4 minus an edge by edge
    surgery until girth >= g.

    gd: surger a random edge on a short cycle against a most distant edge.
    gf: surger the edge on the most short cycles (lexicographic census)
        against a partner keeping new cycles long.
    """
    variant = variant.lower()
    if variant not in ("gd", "gf"):
        raise GraphError(f"unknown growth variant {variant!r}")
    if g < 3:
        raise GraphError("g must be >= 3")
    graph = k4_minus_edge()
    for _ in range(max_steps):
        if girth(graph) >= g:
            return graph
        uv = _uv_edges(graph)
        if variant == "gd":
            on_short = [e for e in uv if _short_cycle_through(graph, e) < g]
            e = on_short[rng.randrange(len(on_short))]
            others = [f for f in uv if f != e]
            f = _pick_max(others, lambda f: _edge_distance(graph, e, f), rng)
        else:
            profiles = {x: nb_cycle_profile(graph, x, g - 1) for x in uv}
            e = _pick_max(uv, lambda x: profiles[x], rng)
            degs = graph.degrees()

            def v_end(x):
                return graph.tail[x] if degs[graph.tail[x]] == 2 \
                    else graph.head[x]

            others = [f for f in uv if f != e]
            dmap = {f: distance(graph, v_end(e), v_end(f)) + 3
                    for f in others}
            if max(dmap.values()) < g:
                f = _pick_max(others, lambda f: dmap[f], rng)
            else:
                far = [f for f in others if dmap[f] >= g]
                f = _pick_max(far, lambda f: profiles[f], rng)
        graph = surgery_transform(graph, e, f)
    raise GraphError(
        f"max_steps={max_steps} exceeded at girth {girth(graph)}")


__all__ = [
    "cycles_of_length", "cycle_census", "nb_cycle_profile",
    "high_girth_cover", "TrimState", "trim_state_from_cover", "es_trim_step",
    "es_construct", "greedy_cycle", "h23_cover_map", "surgery_transform",
    "grow",
]
