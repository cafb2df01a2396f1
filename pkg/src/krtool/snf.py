"""Smith normal form of integer matrices with unimodular transforms.

Matrices are lists of lists of Python ints (arbitrary precision).
"""

from __future__ import annotations

from dataclasses import dataclass


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    if not b:
        return [[] for _ in a]
    cols = len(b[0])
    inner = len(b)
    out = []
    for row in a:
        out.append([sum(row[k] * b[k][j] for k in range(inner) if row[k]) for j in range(cols)])
    return out


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*a)]


@dataclass
class SNF:
    """``P @ A @ Q == S`` with ``S`` diagonal, d_1 | d_2 | ..., all d_i > 0."""

    S: list
    P: list
    Pinv: list
    Q: list
    Qinv: list
    diag: list

    @property
    def rank(self) -> int:
        return len(self.diag)


def smith(A, nrows: int | None = None, ncols: int | None = None) -> SNF:
    m = len(A) if nrows is None else nrows
    n = (len(A[0]) if A else 0) if ncols is None else ncols
    S = [list(map(int, row)) for row in A] if m else []
    P, Pinv = identity(m), identity(m)
    Q, Qinv = identity(n), identity(n)

    # row op on S and P: row_i += c row_j ; inverse: Pinv col_j -= c col_i
    def row_add(i, j, c):
        S[i] = [a + c * b for a, b in zip(S[i], S[j])]
        P[i] = [a + c * b for a, b in zip(P[i], P[j])]
        for r in Pinv:
            r[j] -= c * r[i]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        P[i], P[j] = P[j], P[i]
        for r in Pinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        S[i] = [-a for a in S[i]]
        P[i] = [-a for a in P[i]]
        for r in Pinv:
            r[i] = -r[i]

    # col op on S and Q: col_i += c col_j ; inverse: Qinv row_j -= c row_i
    def col_add(i, j, c):
        for r in S:
            r[i] += c * r[j]
        for r in Q:
            r[i] += c * r[j]
        Qinv[j] = [a - c * b for a, b in zip(Qinv[j], Qinv[i])]

    def col_swap(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in Q:
            r[i], r[j] = r[j], r[i]
        Qinv[i], Qinv[j] = Qinv[j], Qinv[i]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        row_swap(t, i)
        col_swap(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if S[i][t]:
                    q = S[i][t] // S[t][t]
                    row_add(i, t, -q)
                    if S[i][t]:
                        row_swap(t, i)
                        done = False
            for j in range(t + 1, n):
                if S[t][j]:
                    q = S[t][j] // S[t][t]
                    col_add(j, t, -q)
                    if S[t][j]:
                        col_swap(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if S[i][j] % S[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if S[t][t] < 0:
            row_neg(t)
        t += 1
    diag = [S[i][i] for i in range(min(m, n)) if S[i][i]]
    return SNF(S, P, Pinv, Q, Qinv, diag)


def kernel_rank(A, ncols: int) -> int:
    """Rank of the integer kernel of a matrix with ``ncols`` columns."""
    if not A or ncols == 0:
        return ncols
    return ncols - smith(A, len(A), ncols).rank


def rank(A, ncols: int | None = None) -> int:
    if not A:
        return 0
    return smith(A, len(A), ncols).rank


def det(A) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, r)) for r in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if M[i][k]), None)
            if sw is None:
                return 0
            M[k], M[sw] = M[sw], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
