"""Exact Gaussian elimination over a field given by duck-typed elements.

Works for both ``fractions.Fraction`` and ``LevelScalar``: entries need
+, -, *, /, truthiness (zero is falsy) and an additive inverse.  Pivoting is
deterministic: columns left to right, first nonzero row wins.
"""

from __future__ import annotations


def rref(rows):
    """Reduce in place to reduced row echelon form; returns pivot column list."""
    if not rows:
        return []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != piv / piv:  # scale pivot row to 1
            inv = (piv / piv) / piv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rank(rows):
    work = [list(r) for r in rows]
    return len(rref(work))


def kernel_basis(rows, ncols, zero, one):
    """Deterministic basis of the right kernel, one vector per free column.

    Each basis vector has 1 in its own free column and 0 in the others, with
    pivot coordinates back-substituted; the result is already in reduced
    echelon form with respect to the column order.
    """
    work = [list(r) for r in rows]
    pivots = rref(work)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for r, pc in enumerate(pivots):
            if work[r][free]:
                vec[pc] = -work[r][free]
        basis.append(vec)
    return basis


def solve(columns, rhs, zero):
    """One exact solution x of sum_j x_j * columns[j] = rhs, or None.

    Free variables are set to zero (earliest-column pivot preference), so the
    answer is deterministic in the column order.
    """
    ncols = len(columns)
    nrows = len(rhs)
    aug = [[columns[j][i] for j in range(ncols)] + [rhs[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if aug[i][c]:
                pr = i
                break
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        piv = aug[r][c]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c] / piv
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == nrows:
            break
    # consistency: rows past the pivot rows must have zero rhs
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [zero] * ncols
    for row, col in pivots:
        x[col] = aug[row][ncols] / aug[row][col]
    return x


def invert(matrix, zero, one):
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(matrix)
    aug = [list(matrix[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]
