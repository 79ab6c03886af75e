"""Lazy exploration of the universal covering tree.

Ball sizes are computed by counting non-backtracking walks in the base
graph.  Frontier states are (arriving directed edge) keys with integer
multiplicities, so layer sizes stay polynomial in the number of base
edges even though the ball itself grows exponentially.
"""

from __future__ import annotations

from .graphs import GraphError, MultiGraph, validate


def _expand(g: MultiGraph, counts):
    """One non-backtracking step: state e (just-traversed edge) branches to
    every edge leaving head(e) except e^-1."""
    nxt = [0] * g.edge_count
    for e, c in enumerate(counts):
        if not c:
            continue
        inv_e = g.inv[e]
        for f in g.out_edges(g.head[e]):
            if f != inv_e:
                nxt[f] += c
    return nxt


def layer_counts(base: MultiGraph, v: int, rmax: int):
    """Numbers of non-backtracking walks of lengths 1..rmax from a tree
    vertex over v."""
    if rmax < 0:
        raise GraphError("rmax must be >= 0")
    out = []
    counts = [0] * base.edge_count
    for e in base.out_edges(v):
        counts[e] = 1
    for _ in range(rmax):
        out.append(sum(counts))
        counts = _expand(base, counts)
    return out[:rmax]


def ball_size_vertex(base: MultiGraph, v: int, r: int) -> int:
    """|B_r| around a tree vertex over v: 1 + sum of the layer counts."""
    return 1 + sum(layer_counts(base, v, r))


def ball_size_edge_two_sided(base: MultiGraph, e: int, r: int) -> int:
    """Vertices within distance r of either endpoint of a tree edge over e.

    Each side expands away from the edge: the first step from the tail
    excludes e itself, the first step from the head excludes e^-1.  For a
    half-loop the two sides coincide over one base vertex and both exclude
    the single directed edge.
    """
    if r < 0:
        raise GraphError("r must be >= 0")
    total = 2
    for start_vertex, forbidden in ((base.tail[e], e),
                                    (base.head[e], base.inv[e])):
        counts = [0] * base.edge_count
        for f in base.out_edges(start_vertex):
            if f != forbidden:
                counts[f] = 1
        for _ in range(r):
            total += sum(counts)
            counts = _expand(base, counts)
    return total


def growth_estimate(base: MultiGraph, rmax: int) -> float:
    """Growth rate of universal cover balls around a fixed root.

    Uses the two-point ratio (|B_rmax| / |B_rmax/2|)^(1/(rmax - rmax/2)),
    which cancels the constant in front of rho^r; the plain |B_r|^(1/r)
    converges too slowly to be a useful sanity display.  Still only an
    estimate, not a precision computation.
    """
    if rmax < 10:
        raise GraphError("rmax must be >= 10 for a meaningful estimate")
    if not validate(base).admissible:
        raise GraphError("growth_estimate needs an admissible base graph")
    half = rmax // 2
    ratio = ball_size_vertex(base, 0, rmax) / ball_size_vertex(base, 0, half)
    return ratio ** (1.0 / (rmax - half))


__all__ = ["layer_counts", "ball_size_vertex", "ball_size_edge_two_sided",
           "growth_estimate"]
