"""Chip-firing dynamics: single firings, the halting decider with the
period-vector divergence cutoff, the linear-time coEulerian decider, sink
stabilization with odometer, and Least-Action certificate checking.

Chip configurations are integer vectors over all vertices; negative values
are holes and a vertex with negative chips is never active.  A vertex v is
active when sigma(v) >= outdeg(v).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .errors import (
    DimensionMismatchError,
    NotCoEulerianError,
    VertexOutOfRangeError,
)
from .graphs import DirectedMultigraph, laplacian
from .invariants import pham_index, period_vector

HALTS = "halts"
DIVERGES = "diverges"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class HaltingVerdict:
    """Outcome of the halting decider.

    ``certificate`` is the odometer of a stabilizing legal sequence when the
    status is ``halts``; ``witness`` is the odometer of a legal sequence
    that fired every vertex at least its period-vector count when the status
    is ``diverges``.
    """

    status: str
    certificate: tuple | None
    witness: tuple | None
    steps: int


def _check_config(g: DirectedMultigraph, sigma):
    if len(sigma) != g.n:
        raise DimensionMismatchError(
            f"configuration has length {len(sigma)}, graph has {g.n} vertices"
        )


def max_stable(g: DirectedMultigraph):
    """sigma_max(v) = outdeg(v) - 1, the largest stable configuration."""
    return [d - 1 for d in g.out_degree]


def is_stable(g: DirectedMultigraph, sigma) -> bool:
    _check_config(g, sigma)
    return all(sigma[v] < g.out_degree[v] for v in range(g.n))


def fire(g: DirectedMultigraph, sigma, v):
    """Fire vertex v once (subtract Laplacian column v); legality is not
    checked here."""
    _check_config(g, sigma)
    if not 0 <= v < g.n:
        raise VertexOutOfRangeError(f"vertex {v} out of range")
    out = list(sigma)
    out[v] -= g.out_degree[v] - g.adj[v][v]
    for w in range(g.n):
        if w != v and g.adj[v][w]:
            out[w] += g.adj[v][w]
    return out


def apply_firing_vector(g: DirectedMultigraph, sigma, x):
    """sigma - Laplacian @ x for an arbitrary integer vector x."""
    _check_config(g, sigma)
    if len(x) != g.n:
        raise DimensionMismatchError("firing vector length does not match graph")
    lap = laplacian(g)
    return [
        sigma[v] - sum(lap[v][w] * x[w] for w in range(g.n)) for v in range(g.n)
    ]


def verify_halting_certificate(g: DirectedMultigraph, sigma, x) -> bool:
    """Least-Action check: x >= 0 and sigma - Laplacian @ x is stable.

    By the Least Action Principle this is equivalent to sigma stabilizing.
    """
    if any(c < 0 for c in x):
        raise ValueError("certificate entries must be nonnegative")
    return is_stable(g, apply_firing_vector(g, sigma, x))


def decide_halting(
    g: DirectedMultigraph, sigma, step_cap=None, on_fire=None
) -> HaltingVerdict:
    """Decide whether sigma stabilizes by fair simulation.

    Among active vertices the one with the smallest odometer count fires
    (ties broken by index), so in an infinite run every count grows without
    bound and the period-vector cutoff is always eventually certified:
    once every vertex has fired at least pi(v) times the configuration
    provably never stabilizes.  ``on_fire(step, vertex, config)`` is called
    after each firing when given.
    """
    _check_config(g, sigma)
    n = g.n
    sigma = list(sigma)
    pi = period_vector(g)
    deg = g.out_degree
    adj = g.adj
    odometer = [0] * n
    reached = 0  # vertices whose odometer has reached pi(v)
    steps = 0
    heap = [(0, v) for v in range(n) if sigma[v] >= deg[v]]
    heapq.heapify(heap)
    while heap:
        cnt, v = heapq.heappop(heap)
        if cnt != odometer[v] or sigma[v] < deg[v]:
            continue
        if step_cap is not None and steps >= step_cap:
            return HaltingVerdict(UNKNOWN, None, None, steps)
        steps += 1
        odometer[v] += 1
        if odometer[v] == pi[v]:
            reached += 1
        sigma[v] -= deg[v] - adj[v][v]
        for w in range(n):
            if w != v and adj[v][w]:
                sigma[w] += adj[v][w]
                if sigma[w] >= deg[w]:
                    heapq.heappush(heap, (odometer[w], w))
        if on_fire is not None:
            on_fire(steps, v, sigma)
        if reached == n:
            return HaltingVerdict(DIVERGES, None, tuple(odometer), steps)
        if sigma[v] >= deg[v]:
            heapq.heappush(heap, (odometer[v], v))
    return HaltingVerdict(HALTS, tuple(odometer), None, steps)


def decide_halting_coeulerian(
    g: DirectedMultigraph, sigma, check_graph: bool = False
) -> bool:
    """Linear-time decider valid on coEulerian graphs: a nonnegative
    configuration stabilizes iff it has at most #E - #V chips."""
    _check_config(g, sigma)
    if any(c < 0 for c in sigma):
        raise ValueError("the fast decider requires sigma >= 0")
    if check_graph and pham_index(g) != 1:
        raise NotCoEulerianError("graph has Pham index != 1")
    return sum(sigma) <= g.edge_count - g.n


def nonsink_vertices(g: DirectedMultigraph, s):
    if not 0 <= s < g.n:
        raise VertexOutOfRangeError(f"sink {s} out of range")
    return [v for v in range(g.n) if v != s]


def restrict_to_nonsink(vec, s):
    """sigma-tilde: drop the sink coordinate."""
    return [x for i, x in enumerate(vec) if i != s]


def extend_with_sink(eta, s, total):
    """eta_k: insert a sink coordinate so the entries sum to ``total``."""
    out = list(eta)
    out.insert(s, total - sum(eta))
    return out


def stabilize_with_sink(g: DirectedMultigraph, s, eta, rng=None):
    """Stabilize the sandpile eta (indexed by nonsink vertices, sink s never
    fires).  Returns (stable sandpile, odometer).

    The default policy batches consecutive firings of one vertex; passing a
    ``random.Random`` fires one uniformly chosen active vertex at a time.
    The abelian property makes the result policy-independent.
    """
    verts = nonsink_vertices(g, s)
    if len(eta) != g.n - 1:
        raise DimensionMismatchError("sandpile length must be n - 1")
    pos = {v: i for i, v in enumerate(verts)}
    eta = list(eta)
    odometer = [0] * len(verts)
    deg = g.out_degree
    adj = g.adj

    if rng is not None:
        while True:
            active = [i for i, v in enumerate(verts) if eta[i] >= deg[v]]
            if not active:
                return eta, odometer
            i = active[rng.randrange(len(active))]
            v = verts[i]
            odometer[i] += 1
            eta[i] -= deg[v] - adj[v][v]
            for w in verts:
                if w != v and adj[v][w]:
                    eta[pos[w]] += adj[v][w]

    stack = [i for i, v in enumerate(verts) if eta[i] >= deg[v]]
    while stack:
        i = stack.pop()
        v = verts[i]
        loss = deg[v] - adj[v][v]  # > 0: strong connectivity forbids all-loop vertices
        if eta[i] < deg[v]:
            continue
        t = (eta[i] - deg[v]) // loss + 1
        eta[i] -= t * loss
        odometer[i] += t
        for w in verts:
            if w != v and adj[v][w]:
                j = pos[w]
                was_active = eta[j] >= deg[w]
                eta[j] += t * adj[v][w]
                if not was_active and eta[j] >= deg[w]:
                    stack.append(j)
    return eta, odometer
