"""Exact matrix arithmetic over rational expressions.

Small dimensions only; determinants expand by cofactors and inverses go
through the adjugate, so every entry stays an exact RatExpr.
"""

from __future__ import annotations

from .ratexpr import Chart, RatExpr


def identity_matrix(chart: Chart, n: int):
    one = RatExpr.const(chart, 1)
    zero = RatExpr.zero(chart)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, m, k = len(A), len(B[0]), len(B)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for t in range(1, k):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def _minor(M, i, j):
    return [row[:j] + row[j + 1:] for r, row in enumerate(M) if r != i]


def det_matrix(M) -> RatExpr:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        term = M[0][j] * det_matrix(_minor(M, 0, j))
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    if acc is None:
        return RatExpr.zero(M[0][0].chart)
    return acc


def invert_matrix(M):
    """Adjugate inverse; None when the determinant vanishes."""
    n = len(M)
    d = det_matrix(M)
    if d.is_zero():
        return None
    if n == 1:
        return [[RatExpr.const(M[0][0].chart, 1) / d]]
    inv = []
    for i in range(n):
        row = []
        for j in range(n):
            c = det_matrix(_minor(M, j, i))
            if (i + j) % 2:
                c = -c
            row.append(c / d)
        inv.append(row)
    return inv
