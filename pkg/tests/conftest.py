"""Shared graph builders, exhaustive corpora, and independent oracles."""

import itertools
import random

import pytest

from coeulerian.graphs import DirectedMultigraph, from_adjacency, is_strongly_connected


# ---------------------------------------------------------------- builders

def fig_path_graph(n):
    """Path on vertices 0..n with multiplicity 2 rightward and 3 leftward;
    tree counts 2^v * 3^(n-v)."""
    size = n + 1
    adj = [[0] * size for _ in range(size)]
    for v in range(n):
        adj[v][v + 1] = 2
        adj[v + 1][v] = 3
    return from_adjacency(adj)


def bidirected_triangle():
    return from_adjacency([[0, 1, 1], [1, 0, 1], [1, 1, 0]])


def directed_cycle(n):
    adj = [[0] * n for _ in range(n)]
    for v in range(n):
        adj[v][(v + 1) % n] = 1
    return from_adjacency(adj)


def bidirected_path(n):
    adj = [[0] * n for _ in range(n)]
    for v in range(n - 1):
        adj[v][v + 1] = 1
        adj[v + 1][v] = 1
    return from_adjacency(adj)


# ---------------------------------------------------------------- corpora

def iter_exhaustive_adjacency(n, max_mult, loopless=False):
    """All n x n adjacency matrices with entries <= max_mult that define a
    strongly connected graph with positive outdegrees."""
    cells = [(i, j) for i in range(n) for j in range(n) if not (loopless and i == j)]
    for flat in itertools.product(range(max_mult + 1), repeat=len(cells)):
        adj = [[0] * n for _ in range(n)]
        for (i, j), m in zip(cells, flat):
            adj[i][j] = m
        if any(sum(row) == 0 for row in adj):
            continue
        if is_strongly_connected(adj):
            yield adj


@pytest.fixture(scope="session")
def small_corpus():
    """Every strongly connected multigraph with n <= 3, multiplicities <= 2."""
    graphs = []
    for n in (1, 2, 3):
        for adj in iter_exhaustive_adjacency(n, 2):
            graphs.append(DirectedMultigraph(adj))
    return graphs


@pytest.fixture(scope="session")
def random_corpus():
    """300 seeded random strongly connected graphs with n <= 5."""
    from coeulerian.cli import random_graph_adjacency

    graphs = []
    seed = 0
    while len(graphs) < 300:
        n = 2 + seed % 4  # 2..5
        graphs.append(DirectedMultigraph(random_graph_adjacency(n, 2, seed)))
        seed += 1
    return graphs


def random_small_graph(rng, n_max=4, max_mult=2):
    from coeulerian.cli import random_graph_adjacency

    n = rng.randint(2, n_max)
    return DirectedMultigraph(random_graph_adjacency(n, max_mult, rng.getrandbits(32)))


# ---------------------------------------------------------------- oracles

def cofactor_determinant(m):
    """Textbook cofactor expansion, the independent determinant oracle."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_determinant(minor)
        total += term if j % 2 == 0 else -term
    return total


def spanning_tree_count(g, root):
    """Count oriented spanning trees toward ``root`` by enumerating, for
    every non-root vertex, its unique outgoing tree edge (weighted by edge
    multiplicity) and keeping the acyclic assignments."""
    n = g.n
    others = [v for v in range(n) if v != root]
    total = 0
    choices = []
    for v in others:
        choices.append([w for w in range(n) if w != v and g.adj[v][w] > 0])
        if not choices[-1]:
            return 0
    for pick in itertools.product(*choices):
        parent = dict(zip(others, pick))
        ok = True
        for v in others:
            seen = set()
            cur = v
            while cur != root:
                if cur in seen:
                    ok = False
                    break
                seen.add(cur)
                cur = parent[cur]
            if not ok:
                break
        if ok:
            weight = 1
            for v, w in parent.items():
                weight *= g.adj[v][w]
            total += weight
    return total


def cokernel_classes(basis, box):
    """Independent cokernel oracle: group the integer points of
    [0, box)^m by congruence modulo the column span (pairwise membership),
    returning the list of classes."""
    from coeulerian.intlinalg import lattice_contains

    m = len(basis)
    points = list(itertools.product(range(box), repeat=m))
    classes = []
    for p in points:
        for cls in classes:
            q = cls[0]
            if lattice_contains(basis, [a - b for a, b in zip(p, q)]):
                cls.append(p)
                break
        else:
            classes.append([p])
    return classes
