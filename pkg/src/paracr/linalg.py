"""Exact rational linear algebra: kernels, rank, span tests, signatures.

Two independent kernel routines are provided on purpose.  The main path
scales rows to integers and runs fraction-free (Bareiss) elimination with
partial pivoting on pivot magnitude, which avoids rational blow-up during
elimination.  The second path is a plain Gauss-Jordan reduction over
Fraction, kept separate so cross-checks do not share an elimination route.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

Vector = Tuple[Fraction, ...]
Matrix = Sequence[Sequence[Fraction]]


def _row_to_int(row: Sequence[Fraction]) -> List[int]:
    denom = 1
    for v in row:
        denom = lcm(denom, Fraction(v).denominator)
    return [int(Fraction(v) * denom) for v in row]


def normalize_primitive(vec: Sequence[Fraction]) -> Vector:
    """Scale to a primitive integer vector whose first nonzero entry is > 0."""
    fracs = [Fraction(v) for v in vec]
    denom = 1
    for v in fracs:
        denom = lcm(denom, v.denominator)
    ints = [int(v * denom) for v in fracs]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    for v in ints:
        if v != 0:
            if v < 0:
                ints = [-w for w in ints]
            break
    return tuple(Fraction(v) for v in ints)


def nullspace_bareiss(rows: Matrix, ncols: int) -> List[Vector]:
    """Kernel basis of the matrix, primitive-integer normalized.

    Basis vectors are indexed by the free columns in ascending order, so the
    result is deterministic.
    """
    m = [_row_to_int(row) for row in rows if any(v != 0 for v in row)]
    nrows = len(m)
    pivots: List[Tuple[int, int]] = []  # (row, col) in echelon order
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best = None
        for i in range(r, nrows):
            if m[i][c] != 0 and (best is None or abs(m[i][c]) > abs(m[best][c])):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        for i in range(r + 1, nrows):
            # exact integer division: entries stay minors of the input
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append((r, c))
        r += 1
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis: List[Vector] = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, col in reversed(pivots):
            s = Fraction(0)
            for j in range(col + 1, ncols):
                if vec[j]:
                    s += Fraction(m[row][j]) * vec[j]
            vec[col] = -s / Fraction(m[row][col])
        basis.append(normalize_primitive(vec))
    return basis


def rref(rows: Matrix, ncols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Fraction; returns (rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in rows]
    pivot_cols: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivot_cols


def nullspace_gauss_jordan(rows: Matrix, ncols: int) -> List[Vector]:
    """Kernel basis via plain Gauss-Jordan; same normalization as Bareiss."""
    reduced, pivot_cols = rref(rows, ncols)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis: List[Vector] = []
    for f in free_cols:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, col in zip(reduced, pivot_cols):
            vec[col] = -row[f]
        basis.append(normalize_primitive(vec))
    return basis


def rank(rows: Matrix, ncols: int) -> int:
    _, pivot_cols = rref(rows, ncols)
    return len(pivot_cols)


def solve_in_span(
    basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """Coefficients z with sum_i z_i basis_i = target, or None if outside.

    Solved exactly by eliminating the transposed system.
    """
    n = len(target)
    k = len(basis)
    if k == 0:
        return [] if all(Fraction(v) == 0 for v in target) else None
    rows = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(target[i])] for i in range(n)]
    reduced, pivot_cols = rref(rows, k + 1)
    if k in pivot_cols:
        return None
    coeffs = [Fraction(0)] * k
    for row, col in zip(reduced, pivot_cols):
        coeffs[col] = row[k]
    return coeffs


def in_span(basis: Sequence[Sequence[Fraction]], target: Sequence[Fraction]) -> bool:
    return solve_in_span(basis, target) is not None


def row_space_basis(rows: Matrix, ncols: int) -> List[Vector]:
    reduced, _ = rref(rows, ncols)
    return [tuple(row) for row in reduced]


def same_span(u: Sequence[Sequence[Fraction]], v: Sequence[Sequence[Fraction]], ncols: int) -> bool:
    ru = rank(u, ncols)
    rv = rank(v, ncols)
    if ru != rv:
        return False
    return rank(list(u) + list(v), ncols) == ru


def symmetric_signature(matrix: Matrix) -> Tuple[int, int, int]:
    """Signature (pos, neg, zero) of a symmetric matrix over Q.

    Computed by congruence diagonalization; no floating point involved.
    """
    n = len(matrix)
    m = [[Fraction(v) for v in row] for row in matrix]
    for i in range(n):
        if m[i][i] == 0:
            swap = None
            for j in range(i + 1, n):
                if m[j][j] != 0:
                    swap = j
                    break
            if swap is not None:
                m[i], m[swap] = m[swap], m[i]
                for row in m:
                    row[i], row[swap] = row[swap], row[i]
            else:
                off = None
                for j in range(i + 1, n):
                    if m[i][j] != 0:
                        off = j
                        break
                if off is None:
                    continue  # row and column vanish: zero diagonal entry
                for col in range(n):
                    m[i][col] += m[off][col]
                for row in m:
                    row[i] += row[off]
        pivot = m[i][i]
        if pivot == 0:
            continue
        for j in range(i + 1, n):
            if m[j][i] != 0:
                f = m[j][i] / pivot
                for col in range(n):
                    m[j][col] -= f * m[i][col]
                for row in m:
                    row[j] = row[j] - f * row[i]
    pos = sum(1 for i in range(n) if m[i][i] > 0)
    neg = sum(1 for i in range(n) if m[i][i] < 0)
    zero = n - pos - neg
    return (pos, neg, zero)
