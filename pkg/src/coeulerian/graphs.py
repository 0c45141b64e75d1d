"""Finite directed multigraphs (loops and parallel edges allowed) and their
Laplacians.

The adjacency convention throughout: ``adj[v][w]`` is the number of directed
edges v -> w.  The Laplacian follows the column convention

    lap[v][v] = outdeg(v) - adj[v][v],     lap[v][w] = -adj[w][v]  (v != w),

so every column sums to zero and firing vertex v subtracts column v from a
chip configuration.
"""

from __future__ import annotations

from .errors import (
    NotSquareError,
    NotStronglyConnectedError,
    VertexOutOfRangeError,
    ZeroOutdegreeError,
)


def is_strongly_connected(adj) -> bool:
    """True iff the adjacency matrix describes a single strongly connected
    component.  Plain BFS from vertex 0 in the graph and its reverse."""
    n = len(adj)
    if any(len(row) != n for row in adj):
        raise NotSquareError("adjacency matrix must be square")
    if n == 0:
        return False

    def reaches_all(forward):
        seen = [False] * n
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(n):
                mult = adj[v][w] if forward else adj[w][v]
                if mult > 0 and not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return all(seen)

    return reaches_all(True) and reaches_all(False)


class DirectedMultigraph:
    """A validated, immutable strongly connected directed multigraph."""

    __slots__ = ("n", "adj", "out_degree", "in_degree", "_lap")

    def __init__(self, adj):
        n = len(adj)
        if n == 0 or any(len(row) != n for row in adj):
            raise NotSquareError("adjacency matrix must be square and nonempty")
        for row in adj:
            for entry in row:
                if not isinstance(entry, int) or entry < 0:
                    raise NotSquareError(
                        "edge multiplicities must be nonnegative integers"
                    )
        out_deg = [sum(row) for row in adj]
        for v, d in enumerate(out_deg):
            if d == 0:
                raise ZeroOutdegreeError(v)
        if not is_strongly_connected(adj):
            raise NotStronglyConnectedError("graph is not strongly connected")

        self.n = n
        self.adj = tuple(tuple(row) for row in adj)
        self.out_degree = tuple(out_deg)
        self.in_degree = tuple(sum(adj[v][w] for v in range(n)) for w in range(n))
        lap = [
            [
                out_deg[v] - adj[v][v] if v == w else -adj[w][v]
                for w in range(n)
            ]
            for v in range(n)
        ]
        self._lap = tuple(tuple(row) for row in lap)

    @classmethod
    def from_adjacency(cls, matrix) -> "DirectedMultigraph":
        return cls(matrix)

    @property
    def edge_count(self) -> int:
        return sum(self.out_degree)

    def __eq__(self, other):
        return isinstance(other, DirectedMultigraph) and self.adj == other.adj

    def __hash__(self):
        return hash(self.adj)

    def __repr__(self):
        return f"DirectedMultigraph(n={self.n}, adj={[list(r) for r in self.adj]})"


def from_adjacency(matrix) -> DirectedMultigraph:
    """Validate a square nonnegative integer matrix and build the graph."""
    return DirectedMultigraph(matrix)


def laplacian(g: DirectedMultigraph):
    """The n x n total Laplacian as a fresh list of rows."""
    return [list(row) for row in g._lap]


def reduced_laplacian(g: DirectedMultigraph, s: int):
    """The Laplacian with row s and column s deleted ((n-1) x (n-1))."""
    if not 0 <= s < g.n:
        raise VertexOutOfRangeError(f"sink {s} out of range for n={g.n}")
    return [
        [g._lap[v][w] for w in range(g.n) if w != s]
        for v in range(g.n)
        if v != s
    ]
