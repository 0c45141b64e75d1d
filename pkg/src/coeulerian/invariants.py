"""Algebraic invariants of a strongly connected multigraph: the tree-count
vector kappa, its gcd (the Pham index M), the primitive period vector
pi = kappa / M, the order of the total-Laplacian cokernel, and the
Eulerian / coEulerian / directed-cactus classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .errors import TooLargeError
from .graphs import DirectedMultigraph, laplacian, reduced_laplacian
from .intlinalg import column_echelon, determinant


@dataclass(frozen=True)
class GraphInvariants:
    kappa: tuple
    pham_index: int
    period: tuple
    cokernel_order: int
    is_eulerian: bool
    is_coeulerian: bool
    is_cactus: bool


@lru_cache(maxsize=None)
def tree_count_vector(g: DirectedMultigraph) -> tuple:
    """kappa(v) = number of oriented spanning trees rooted at v, computed as
    det of the reduced Laplacian at v (matrix-tree theorem)."""
    return tuple(determinant(reduced_laplacian(g, v)) for v in range(g.n))


def pham_index(g: DirectedMultigraph) -> int:
    """gcd of the spanning-tree counts kappa(v)."""
    return gcd(*tree_count_vector(g)) if g.n > 1 else tree_count_vector(g)[0]


@lru_cache(maxsize=None)
def period_vector(g: DirectedMultigraph) -> tuple:
    """The unique primitive vector pi > 0 with (Laplacian) * pi = 0.

    Equals kappa / M; firing each vertex v exactly pi(v) times is a no-op.
    """
    kappa = tree_count_vector(g)
    m = pham_index(g)
    pi = tuple(k // m for k in kappa)
    lap = laplacian(g)
    assert all(
        sum(lap[v][w] * pi[w] for w in range(g.n)) == 0 for v in range(g.n)
    )
    assert all(p > 0 for p in pi)
    assert gcd(*pi) == 1 if g.n > 1 else pi[0] == 1
    return pi


@lru_cache(maxsize=None)
def cokernel_order(g: DirectedMultigraph) -> int:
    """Order of Z^n_0 / (Laplacian lattice), computed independently of kappa.

    Dropping the last row of the Laplacian expresses its columns in the
    basis {e_i - e_n} of the zero-sum sublattice; the index of their span in
    Z^{n-1} is the product of the Hermite pivots.
    """
    if g.n == 1:
        return 1
    lap = laplacian(g)
    trimmed = lap[: g.n - 1]
    pivots, cols = column_echelon(trimmed)
    assert len(pivots) == g.n - 1
    return prod(cols[t][r] for t, r in enumerate(pivots))


def is_eulerian(g: DirectedMultigraph) -> bool:
    """Degree criterion: indegree equals outdegree at every vertex."""
    return g.in_degree == g.out_degree


def is_coeulerian(g: DirectedMultigraph) -> bool:
    """Pham index 1: the Laplacian lattice is all of Z^n_0."""
    return pham_index(g) == 1


def is_directed_cactus(g: DirectedMultigraph) -> bool:
    """Loopless with exactly one oriented spanning tree toward each root,
    which characterizes the graphs that are both Eulerian and coEulerian."""
    if any(g.adj[v][v] for v in range(g.n)):
        return False
    return all(k == 1 for k in tree_count_vector(g))


def ucp_bruteforce(g: DirectedMultigraph, max_vertices: int = 8) -> bool:
    """Test oracle: does every edge lie on exactly one simple directed cycle?

    Enumerates all simple directed cycles (exponential), weighting parallel
    edges by multiplicity.  A loop counts as the one-vertex simple cycle of
    its own edge.
    """
    n = g.n
    if n > max_vertices:
        raise TooLargeError(f"cycle enumeration refused for n={n} > {max_vertices}")
    adj = g.adj
    # counts[(v, w)] = number of simple cycles each single v->w edge lies on
    counts = {}

    def record(arcs):
        weight = prod(adj[v][w] for v, w in arcs)
        for v, w in arcs:
            counts[(v, w)] = counts.get((v, w), 0) + weight // adj[v][w]

    for start in range(n):
        if adj[start][start]:
            counts[(start, start)] = counts.get((start, start), 0) + 1
        # simple cycles whose minimal vertex is `start`
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for w in range(start, n):
                if adj[v][w] == 0 or w == v:
                    continue
                if w == start:
                    if len(path) >= 2:
                        arcs = list(zip(path, path[1:] + [start]))
                        record(arcs)
                elif w not in path:
                    stack.append((w, path + [w]))
    # every edge of a strongly connected graph lies on >= 1 simple cycle
    for v in range(n):
        for w in range(n):
            if adj[v][w] and counts.get((v, w), 0) != 1:
                return False
    return True


def compute_invariants(g: DirectedMultigraph) -> GraphInvariants:
    return GraphInvariants(
        kappa=tree_count_vector(g),
        pham_index=pham_index(g),
        period=period_vector(g),
        cokernel_order=cokernel_order(g),
        is_eulerian=is_eulerian(g),
        is_coeulerian=is_coeulerian(g),
        is_cactus=is_directed_cactus(g),
    )
