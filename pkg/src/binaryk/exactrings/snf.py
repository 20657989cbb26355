"""Smith normal form over the integers."""
from __future__ import annotations

from ..errors import RingMismatch
from .matrix import Matrix
from .rings import Integers


def snf(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, S, V)`` with ``U @ a @ V == S``.

    U and V are unimodular, S is diagonal with nonnegative entries and
    ``s_1 | s_2 | ...``.
    """
    if not isinstance(a.ring, Integers):
        raise RingMismatch(f"snf needs Z, got {a.ring}")
    ring = a.ring
    m, n = a.rows, a.cols
    A = a.tolist()
    U = Matrix.identity(ring, m).tolist()
    V = Matrix.identity(ring, n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for M in (A, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // piv))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // piv))
            rest = [(abs(A[i][t]), i, "r") for i in range(t + 1, m) if A[i][t]]
            rest += [(abs(A[t][j]), j, "c") for j in range(t + 1, n) if A[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return (Matrix(ring, m, m, U), Matrix(ring, m, n, A), Matrix(ring, n, n, V))


def invariant_factors(a: Matrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form."""
    _, s, _ = snf(a)
    return [s[i, i] for i in range(min(s.rows, s.cols)) if s[i, i]]
