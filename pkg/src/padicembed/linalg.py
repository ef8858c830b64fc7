"""Exact linear algebra over Z and Q.

Integer work uses fraction-free (Bareiss) elimination so intermediate entries
stay bounded by minors of the input; rational systems are scaled to integers
first.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = list


def _to_integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * pivot - A[i][k] * A[k][j]) // prev
        prev = pivot
    return sign * A[n - 1][n - 1]


def det_rational(M: Sequence[Sequence]) -> Fraction:
    dens = [math.lcm(*(Fraction(x).denominator for x in row)) for row in M]
    return Fraction(bareiss_det(_to_integer_rows(M)), math.prod(dens))


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve A x = b exactly for square nonsingular rational A."""
    n = len(A)
    aug = _to_integer_rows([list(A[i]) + [b[i]] for i in range(n)])
    prev = 1
    for k in range(n):
        if aug[k][k] == 0:
            for i in range(k + 1, n):
                if aug[i][k] != 0:
                    aug[k], aug[i] = aug[i], aug[k]
                    break
            else:
                raise ZeroDivisionError("singular matrix")
        pivot = aug[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * pivot - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = pivot
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n]) - sum(aug[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / aug[i][i]
    return x


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def charpoly(A: Sequence[Sequence]) -> list:
    """Coefficients of det(xI - A), highest degree first (Berkowitz).

    Division-free, so exact for int and Fraction entries alike.
    """
    n = len(A)
    vect = [1]
    for r in range(n):
        R = A[r][:r]
        v = [A[i][r] for i in range(r)]
        col = [1, -A[r][r]]
        for _ in range(r):
            col.append(-sum(R[i] * v[i] for i in range(r)))
            v = [sum(A[i][j] * v[j] for j in range(r)) for i in range(r)]
        vect = [
            sum(col[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(col))
            for i in range(r + 2)
        ]
    return vect
