"""Exact integer linear algebra over arbitrary-precision ints.

Matrices are lists of rows of Python ints; columns of a matrix span an
integer lattice.  Provided here:

* fraction-free (Bareiss) determinants,
* lower-triangular Hermite normal form of a nonsingular matrix, computed
  modulo the determinant so that stored entries never exceed |det|,
* a general column echelon form (HNF basis of the column span of any
  integer matrix), which backs lattice membership / equality / index,
* Smith normal form invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .errors import DimensionMismatchError, NotSquareError, SingularMatrixError


def _xgcd(a, b):
    # returns (g, x, y) with g = x*a + y*b, g = gcd(a, b) >= 0 when (a,b) != (0,0)
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def _check_rect(m):
    if len(m) and any(len(row) != len(m[0]) for row in m):
        raise NotSquareError("ragged matrix")


def _columns(m):
    if not m:
        return []
    return [[row[j] for row in m] for j in range(len(m[0]))]


def determinant(m) -> int:
    """Exact determinant by Bareiss fraction-free elimination.

    The empty 0x0 matrix has determinant 1 (needed for one-vertex graphs).
    """
    _check_rect(m)
    n = len(m)
    if n == 0:
        return 1
    if len(m[0]) != n:
        raise NotSquareError("determinant requires a square matrix")
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _echelon_columns(cols, nrows, mod=None):
    """Bring a list of columns to canonical lower column echelon form.

    Returns (pivot_rows, pivot_cols).  The pivot columns are an HNF-style
    basis of the column span: positive pivots, and in every pivot row the
    entries to the left of the pivot are reduced into [0, pivot).

    With ``mod=d`` set, entries in rows below the current pivot row are
    reduced modulo d after every operation.  The caller must arrange that
    the generator columns d*e_i are part of ``cols``; a reduction at row i
    then subtracts a multiple of a set element (d*e_i is untouched until
    its own row pass), so the column span is preserved exactly.
    """
    cols = [list(c) for c in cols]
    ncols = len(cols)
    pivots = []
    k = 0
    for r in range(nrows):
        piv = None
        for j in range(k, ncols):
            if cols[j][r] == 0:
                continue
            if piv is None:
                piv = j
                continue
            a, b = cols[piv][r], cols[j][r]
            g, x, y = _xgcd(a, b)
            u, v = a // g, b // g
            cp, cj = cols[piv], cols[j]
            for i in range(r, nrows):
                ai, bi = cp[i], cj[i]
                cp[i] = x * ai + y * bi
                cj[i] = u * bi - v * ai
            if mod is not None:
                for i in range(r + 1, nrows):
                    cp[i] %= mod
                    cj[i] %= mod
        if piv is None:
            continue
        cols[k], cols[piv] = cols[piv], cols[k]
        cp = cols[k]
        if cp[r] < 0:
            for i in range(r, nrows):
                cp[i] = -cp[i]
        pivots.append(r)
        k += 1
        if mod is not None:
            assert all(abs(e) <= mod for c in cols for e in c[: nrows])
    # normalize: reduce entries left of each pivot into [0, pivot)
    for t, r in enumerate(pivots):
        h = cols[t][r]
        for j in range(t):
            q = cols[j][r] // h
            if q:
                cj, ct = cols[j], cols[t]
                for i in range(r, nrows):
                    cj[i] -= q * ct[i]
                    if mod is not None and i > r:
                        cj[i] %= mod
    return pivots, [cols[t] for t in range(len(pivots))]


def column_echelon(m):
    """Canonical HNF basis of the column span of any integer matrix.

    Returns (pivot_rows, columns); two matrices have equal column spans iff
    these agree.
    """
    _check_rect(m)
    return _echelon_columns(_columns(m), len(m))


@dataclass(frozen=True)
class HermiteForm:
    """Lower-triangular Hermite normal form H of a nonsingular matrix, with
    d = det H = |det input| (product of the diagonal)."""

    h: tuple
    det: int

    def rows(self):
        return [list(row) for row in self.h]


def hermite_normal_form(a) -> HermiteForm:
    """Hermite normal form of a nonsingular square integer matrix.

    Lower-triangular column convention: 0 < h_ii and 0 <= h_ij < h_ii for
    j < i, with H spanning the same column lattice as the input.  All
    arithmetic is done modulo d = |det a| (the generators d*e_i lie in the
    lattice), so intermediate entries stay bounded by d.
    """
    _check_rect(m=a)
    n = len(a)
    if n == 0 or len(a[0]) != n:
        raise NotSquareError("Hermite normal form requires a square matrix")
    d = abs(determinant(a))
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    cols = [[row[j] % d for row in a] for j in range(n)]
    for i in range(n):
        extra = [0] * n
        extra[i] = d
        cols.append(extra)
    pivots, hcols = _echelon_columns(cols, n, mod=d)
    assert pivots == list(range(n))
    assert prod(hcols[i][i] for i in range(n)) == d
    h = tuple(tuple(hcols[j][i] for j in range(n)) for i in range(n))
    return HermiteForm(h=h, det=d)


@dataclass(frozen=True)
class SmithForm:
    """Invariant factors d_1 | d_2 | ... | d_r of an integer matrix."""

    factors: tuple
    rank: int


def smith_normal_form(m) -> SmithForm:
    """Smith normal form invariant factors via row and column reduction."""
    _check_rect(m)
    if not m or not m[0]:
        return SmithForm((), 0)
    a = [list(row) for row in m]
    nrows, ncols = len(a), len(a[0])
    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry of the remaining block becomes the pivot
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        p = a[t][t]
        dirty = False
        for i in range(t + 1, nrows):
            q = a[i][t] // p
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[t])]
            if a[i][t]:
                dirty = True
        for j in range(t + 1, ncols):
            q = a[t][j] // p
            if q:
                for row in a:
                    row[j] -= q * row[t]
            if a[t][j]:
                dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry
        done = True
        for i in range(t + 1, nrows):
            if any(a[i][j] % p for j in range(t + 1, ncols)):
                a[t] = [x + y for x, y in zip(a[t], a[i])]
                done = False
                break
        if done:
            t += 1
    return SmithForm(tuple(a[i][i] for i in range(t)), t)


def lattice_contains(basis, v) -> bool:
    """True iff v is an integer combination of the columns of ``basis``."""
    _check_rect(basis)
    nrows = len(basis)
    if len(v) != nrows:
        raise DimensionMismatchError("vector length does not match ambient dimension")
    pivots, cols = column_echelon(basis)
    w = list(v)
    for t, r in enumerate(pivots):
        rem = w[r] % cols[t][r]
        if rem:
            return False
        q = w[r] // cols[t][r]
        if q:
            for i in range(r, nrows):
                w[i] -= q * cols[t][i]
    return all(x == 0 for x in w)


def lattice_equal(b1, b2) -> bool:
    """True iff the columns of b1 and b2 span the same integer lattice."""
    _check_rect(b1)
    _check_rect(b2)
    if len(b1) != len(b2):
        raise DimensionMismatchError("ambient dimensions differ")
    return column_echelon(b1) == column_echelon(b2)


def lattice_index(m) -> int:
    """Index [Z^nrows : column span], i.e. the product of the echelon pivots.

    Raises SingularMatrixError when the span has rank < nrows (infinite
    index).
    """
    _check_rect(m)
    pivots, cols = column_echelon(m)
    if len(pivots) != len(m):
        raise SingularMatrixError("column span does not have full row rank")
    return prod(cols[t][r] for t, r in enumerate(pivots))
