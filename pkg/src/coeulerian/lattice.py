"""Realizing a full-rank sublattice of the zero-sum lattice Z^n_0 as the
total Laplacian lattice of a strongly connected multigraph, and the
reduction from the nonnegative-rank decision problem to chip-firing
halting, together with a brute-force nonnegative-rank oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import prod

from .chipfiring import max_stable
from .errors import (
    ColumnsNotZeroSumError,
    DimensionMismatchError,
    RankDeficientError,
    TooLargeError,
)
from .graphs import DirectedMultigraph, from_adjacency
from .intlinalg import determinant, hermite_normal_form, lattice_contains


class ZeroSumLatticeBasis:
    """Basis of an (n-1)-dimensional lattice inside Z^n_0.

    ``basis`` is the n x (n-1) matrix whose columns span the lattice; every
    column sums to zero and the top (n-1) x (n-1) block is nonsingular.
    """

    __slots__ = ("n", "basis")

    def __init__(self, basis):
        n = len(basis)
        if n < 2 or any(len(row) != n - 1 for row in basis):
            raise DimensionMismatchError("basis must be an n x (n-1) matrix, n >= 2")
        for j in range(n - 1):
            if sum(basis[i][j] for i in range(n)) != 0:
                raise ColumnsNotZeroSumError(f"column {j} does not sum to zero")
        if determinant([row[:] for row in basis[: n - 1]]) == 0:
            raise RankDeficientError("basis columns are linearly dependent")
        self.n = n
        self.basis = tuple(tuple(row) for row in basis)

    def rows(self):
        return [list(row) for row in self.basis]

    def column(self, j):
        return [row[j] for row in self.basis]

    def __repr__(self):
        return f"ZeroSumLatticeBasis(n={self.n})"


@dataclass(frozen=True)
class ConstructionTrace:
    """Intermediate data of the lattice-to-Laplacian construction."""

    a: tuple  # basis minus its last row
    h: tuple  # Hermite normal form of a
    d: int  # det h
    k: tuple  # subdiagonal correction multipliers
    b: tuple  # h with k_j * d subtracted below the diagonal
    delta: tuple  # the resulting total Laplacian


def _as_basis(lattice):
    if isinstance(lattice, ZeroSumLatticeBasis):
        return lattice
    return ZeroSumLatticeBasis(lattice)


def laplacian_from_lattice(lattice):
    """Build a strongly connected multigraph whose total Laplacian lattice
    is exactly the span of the given zero-sum basis.

    Steps: drop the last row, take the Hermite normal form H with d = det H,
    subtract k_j * d immediately below the diagonal so each column sum
    becomes nonpositive, then assemble the n x n Laplacian with first column
    d*e_1 - d*e_n and a bottom row making every column sum to zero.  All
    entries are bounded by n*d and the graph contains the Hamiltonian cycle
    1 -> n -> n-1 -> ... -> 1.
    """
    lat = _as_basis(lattice)
    n, m = lat.n, lat.n - 1
    a = [list(row) for row in lat.basis[:m]]
    hf = hermite_normal_form(a)
    h = hf.rows()
    d = hf.det
    colsums = [sum(h[i][j] for i in range(m)) for j in range(m)]
    k = []
    b = [row[:] for row in h]
    for j in range(m - 1):
        kj = -((-colsums[j]) // d)  # ceil(colsum / d)
        assert (kj - 1) * d < colsums[j] <= kj * d and kj >= 0
        k.append(kj)
        b[j + 1][j] = h[j + 1][j] - kj * d
    # each adjusted column must still lie in the Hermite lattice; together
    # with the unchanged diagonal this pins span(b) = span(a)
    for j in range(m):
        assert lattice_contains(h, [b[i][j] for i in range(m)])

    delta = [[0] * n for _ in range(n)]
    delta[0][0] = d
    delta[n - 1][0] = -d
    for i in range(m):
        for j in range(m):
            delta[i][j + 1] = -b[i][j]
    for c in range(1, n):
        delta[n - 1][c] = -sum(delta[r][c] for r in range(m))
    assert all(abs(e) <= n * d for row in delta for e in row)
    assert all(delta[n - 1][c] <= 0 for c in range(n - 1))

    adj = [
        [-delta[w][v] if w != v else 0 for w in range(n)] for v in range(n)
    ]
    g = from_adjacency(adj)
    trace = ConstructionTrace(
        a=tuple(tuple(r) for r in a),
        h=tuple(tuple(r) for r in h),
        d=d,
        k=tuple(k),
        b=tuple(tuple(r) for r in b),
        delta=tuple(tuple(r) for r in delta),
    )
    return g, trace


def _adjugate_row_abs_sums(a):
    # row sums of |adj(a)|, used to bound |a^{-1} w| for bounded w
    m = len(a)
    sums = []
    for j in range(m):
        total = 0
        for i in range(m):
            minor = [
                [a[r][c] for c in range(m) if c != j]
                for r in range(m)
                if r != i
            ]
            total += abs(determinant(minor))
        sums.append(total)
    return sums


def nonneg_rank_bruteforce(lattice, sigma, box_bound=None, limit=2_000_000):
    """Exhaustive oracle: is there tau >= 0 with sigma - tau in the lattice?

    Searches coefficient vectors c with |c_j| <= box_bound for
    sigma - basis @ c >= 0.  The default bound is provably exhaustive: any
    feasible residue has entries between -|sigma|-max|sigma_i| and
    max|sigma_i|, and Cramer's rule caps the coefficients solving for it.
    """
    lat = _as_basis(lattice)
    n, m = lat.n, lat.n - 1
    if len(sigma) != n:
        raise DimensionMismatchError("sigma length must equal n")
    total = sum(sigma)
    if total < 0:
        return False  # tau >= 0 forces |tau| = |sigma| >= 0
    if box_bound is None:
        a = [list(row) for row in lat.basis[:m]]
        d = abs(determinant(a))
        w = max(abs(x) for x in sigma) + total
        box_bound = max(
            -((-s * w) // d) for s in _adjugate_row_abs_sums(a)
        )
    if (2 * box_bound + 1) ** m > limit:
        raise TooLargeError(
            f"coefficient box (2*{box_bound}+1)^{m} exceeds the search limit"
        )
    rows = lat.basis
    for c in product(range(-box_bound, box_bound + 1), repeat=m):
        if all(
            sigma[i] - sum(rows[i][j] * c[j] for j in range(m)) >= 0
            for i in range(n)
        ):
            return True
    return False


def reduce_rank_to_halting(lattice, sigma):
    """Karp reduction: sigma has nonnegative rank relative to the lattice
    iff the returned chip configuration stabilizes on the returned graph.

    The configuration is sigma_max - sigma and may well be negative."""
    lat = _as_basis(lattice)
    if len(sigma) != lat.n:
        raise DimensionMismatchError("sigma length must equal n")
    g, _ = laplacian_from_lattice(lat)
    smax = max_stable(g)
    return g, [m - x for m, x in zip(smax, sigma)]
