"""Exact Gauss-Jordan elimination over Q(i). No tolerances anywhere."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Optional, Sequence, Tuple

from .scalars import ONE, ZERO, Scalar

Matrix = List[List[Scalar]]


def rref(rows: Sequence[Sequence[Scalar]], ncols: Optional[int] = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = ONE / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    return len(rref(rows)[1])


def normalize_vector(v: Sequence[Scalar]) -> List[Scalar]:
    """Scale to Gaussian integers with positive leading entry and content 1."""
    lead = next((x for x in v if x), None)
    if lead is None:
        return list(v)
    w = [x / lead for x in v]
    den = 1
    for x in w:
        den = lcm(den, x.re.denominator, x.im.denominator)
    w = [x * den for x in w]
    g = 0
    for x in w:
        g = gcd(g, x.re.numerator, x.im.numerator)
    return [x * Fraction(1, g) for x in w]


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    """Kernel basis, one vector per free column, normalized."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(normalize_vector(v))
    return basis


def row_space(vectors: Sequence[Sequence[Scalar]], ncols: int) -> Matrix:
    return rref(vectors, ncols)[0] if vectors else []


def in_span(v: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]]) -> bool:
    return rank(list(vectors) + [list(v)]) == rank(vectors) if vectors else not any(v)


def same_span(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]], ncols: int) -> bool:
    return row_space(a, ncols) == row_space(b, ncols)


def solve(rows: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> Optional[Tuple[List[Scalar], Matrix]]:
    """Solve ``A x = b``. Returns (particular solution, kernel basis) or None."""
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x, nullspace(rows, ncols)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), ZERO) for j in range(len(b[0]))] for i in range(len(a))]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(a[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def det(a: Matrix) -> Scalar:
    """Determinant by elimination (Bareiss not needed at these sizes)."""
    m = [list(r) for r in a]
    n = len(m)
    result = ONE
    for col in range(n):
        pr = next((i for i in range(col, n) if m[i][col]), None)
        if pr is None:
            return ZERO
        if pr != col:
            m[col], m[pr] = m[pr], m[col]
            result = -result
        result = result * m[col][col]
        inv = ONE / m[col][col]
        for i in range(col + 1, n):
            if m[i][col]:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return result
