"""Non-backtracking matrix, Perron radius, and degree-based invariants."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .graphs import GraphError, MultiGraph, validate


class NBMatrix:
    """0-1 matrix over directed edges: entry (f, e) is 1 when walks may
    continue from e to f, i.e. tail(f) = head(e) and e != f^-1.

    Stored as sparse rows; matvec over plain Python numbers stays exact
    for integer inputs.
    """

    __slots__ = ("dimension", "rows")

    def __init__(self, dimension, rows):
        self.dimension = dimension
        self.rows = tuple(tuple(r) for r in rows)

    def matvec(self, x):
        return [sum(x[e] for e in row) for row in self.rows]

    def rmatvec(self, x):
        out = [0] * self.dimension
        for f, row in enumerate(self.rows):
            xf = x[f]
            if xf:
                for e in row:
                    out[e] += xf
        return out

    def entry(self, f, e):
        return 1 if e in self.rows[f] else 0


def build_nb_matrix(h: MultiGraph) -> NBMatrix:
    rows = []
    for f in range(h.edge_count):
        inv_f = h.inv[f]
        t = h.tail[f]
        rows.append(tuple(e for e in range(h.edge_count)
                          if h.head[e] == t and e != inv_f))
    return NBMatrix(h.edge_count, rows)


def _strongly_connected(b: NBMatrix) -> bool:
    if b.dimension == 0:
        return False
    fwd = [[] for _ in range(b.dimension)]
    bwd = [[] for _ in range(b.dimension)]
    for f, row in enumerate(b.rows):
        for e in row:
            fwd[e].append(f)   # continuation arc e -> f
            bwd[f].append(e)
    for adj in (fwd, bwd):
        seen = bytearray(b.dimension)
        seen[0] = 1
        q = deque([0])
        count = 1
        while q:
            x = q.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    q.append(y)
        if count != b.dimension:
            return False
    return True


def is_irreducible(h: MultiGraph) -> bool:
    """Structural admissibility test, cross-checked against strong
    connectivity of the continuation digraph."""
    structural = validate(h).admissible
    direct = _strongly_connected(build_nb_matrix(h))
    if structural != direct:
        raise RuntimeError(
            "structural irreducibility test disagrees with strong "
            "connectivity; graph invariants are broken")
    return structural


def spectral_radius(b: NBMatrix, tol: float = 1e-10, max_iter: int = 10**6):
    """Perron radius by power iteration on B + I.

    The shift makes the iteration matrix primitive even when B has several
    peripheral eigenvalues (e.g. period 2 for bipartite-like bases), so
    plain power iteration converges.  Returns (rho, iterations, residual)
    with residual the scaled infinity norm of (B+I)x - (rho+1)x.
    """
    if not _strongly_connected(b):
        raise GraphError("spectral_radius requires an irreducible matrix")
    n = b.dimension
    x = [1.0] * n
    lam = 0.0
    for it in range(1, max_iter + 1):
        bx = b.matvec(x)
        y = [x[i] + bx[i] for i in range(n)]
        norm = max(abs(v) for v in y)
        y = [v / norm for v in y]
        lam = norm  # with x normalized in inf-norm, |y|_inf estimates rho+1
        residual = max(abs(x[i] + bx[i] - lam * x[i]) for i in range(n)) \
            / max(abs(v) for v in x)
        x = y
        if residual <= tol * lam:
            return lam - 1.0, it, residual
    raise GraphError(
        f"power iteration did not converge: residual {residual:.3e} "
        f"after {max_iter} iterations")


def avg_degree(h: MultiGraph) -> float:
    return sum(h.degrees()) / h.vertex_count


def lambda_ahl(h: MultiGraph) -> float:
    """Degree-geometric mean prod_v (d_v - 1)^(d_v / |E|), in log space."""
    m = h.edge_count
    acc = 0.0
    for v in range(h.vertex_count):
        d = h.degree(v)
        if d < 2:
            raise GraphError(f"vertex {v} has degree {d} < 2")
        acc += d * math.log(d - 1)
    return math.exp(acc / m)


def _chains(h: MultiGraph):
    """Maximal non-backtracking paths whose internal vertices have degree
    two and whose endpoints are branch vertices (degree > 2)."""
    seen = set()
    for start in range(h.edge_count):
        if h.degree(h.tail[start]) <= 2:
            continue
        edges = [start]
        e = start
        while h.degree(h.head[e]) == 2:
            v = h.head[e]
            e = next(f for f in h.out_edges(v) if f != h.inv[e])
            edges.append(e)
        key = min(tuple(edges), tuple(h.inv[e] for e in reversed(edges)))
        if key in seen:
            continue
        seen.add(key)
        vertices = [h.tail[start]] + [h.head[e] for e in edges]
        yield tuple(edges), tuple(vertices)


def rho_lambda_equality(h: MultiGraph, tol: float = 1e-9):
    """Whether the Perron radius equals the degree-geometric mean.

    Checks, for every maximal degree-two chain P between branch vertices,
    that the per-walk geometric mean (prod_{v in P} (deg v - 1))^(1/(2|P|))
    matches lambda_ahl; returns (equal, witness) with witness the first
    failing chain's vertex list (None when equal).
    """
    if not validate(h).admissible:
        raise GraphError("rho_lambda_equality needs an admissible graph")
    lam = lambda_ahl(h)
    for edges, vertices in _chains(h):
        prod = 1.0
        for v in vertices:
            prod *= h.degree(v) - 1
        val = prod ** (1.0 / (2 * len(edges)))
        if abs(val - lam) > tol:
            return False, vertices
    return True, None


@dataclass(frozen=True)
class SpectralSummary:
    rho: float
    lam: float
    avg_degree_minus_one: float
    equality_rho_lambda: bool
    iterations: int
    residual: float


def summarize(h: MultiGraph, tol: float = 1e-10) -> SpectralSummary:
    if not is_irreducible(h):
        raise GraphError("graph is not admissible (connected, mindeg >= 2, "
                         "maxdeg > 2)")
    rho, iters, residual = spectral_radius(build_nb_matrix(h), tol)
    equal, _ = rho_lambda_equality(h)
    return SpectralSummary(
        rho=rho,
        lam=lambda_ahl(h),
        avg_degree_minus_one=avg_degree(h) - 1.0,
        equality_rho_lambda=equal,
        iterations=iters,
        residual=residual,
    )


__all__ = ["NBMatrix", "build_nb_matrix", "is_irreducible", "spectral_radius",
           "avg_degree", "lambda_ahl", "rho_lambda_equality",
           "SpectralSummary", "summarize"]
