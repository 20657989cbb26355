"""Exact elimination over fields and integer determinants."""
from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..errors import DimensionMismatch, NotAField
from . import kernels
from .matrix import Matrix, hstack
from .rings import ExtensionField, Integers, PrimeField, Rationals, Ring


def rref(a: Matrix) -> tuple[Matrix, list[int], object]:
    """Reduced row echelon form over a field.

    Returns ``(r, pivots, scale)``; ``scale`` is the product of the pivots met
    times the sign of the row swaps (the determinant when ``a`` is invertible).
    """
    ring = a.ring
    if not ring.is_field:
        raise NotAField(f"row reduction needs a field, got {ring}")
    if isinstance(ring, PrimeField):
        if a.rows == 0 or a.cols == 0:
            return a, [], 1
        data, pivots, scale = kernels.rref_mod_p(a.tolist(), ring.p)
        return Matrix(ring, a.rows, a.cols, data), pivots, scale
    return _rref_generic(a)


def _rref_generic(a: Matrix):
    ring = a.ring
    sub, mul, inv, is_zero = ring.sub, ring.mul, ring.inv, ring.is_zero
    m = a.tolist()
    pivots: list[int] = []
    scale = ring.one
    r = 0
    for c in range(a.cols):
        if r == a.rows:
            break
        piv = next((i for i in range(r, a.rows) if not is_zero(m[i][c])), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            scale = ring.neg(scale)
        lead = m[r][c]
        scale = mul(scale, lead)
        li = inv(lead)
        row = [mul(x, li) for x in m[r]]
        m[r] = row
        for i in range(a.rows):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [sub(x, mul(f, y)) for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return Matrix(ring, a.rows, a.cols, m), pivots, scale


def rank(a: Matrix) -> int:
    if a.ring.is_field:
        return len(rref(a)[1])
    # over Z the rank equals the rank over Q
    return len(rref(a.map(Fraction, Rationals()))[1])


def pivot_columns(a: Matrix, reverse: bool = False) -> list[int]:
    """Greedy independent columns: first (or last) maximal independent set."""
    if not reverse:
        return rref(a)[1]
    n = a.cols
    flipped = a.submatrix(cols=list(range(n - 1, -1, -1)))
    return sorted(n - 1 - c for c in rref(flipped)[1])


def rank_and_kernel(a: Matrix) -> tuple[int, Matrix]:
    """Rank and a kernel basis (as columns) of a matrix over a field."""
    ring = a.ring
    if not ring.is_field:
        raise NotAField("rank_and_kernel needs a field; use snf over Z")
    r, pivots, _ = rref(a)
    free = [c for c in range(a.cols) if c not in set(pivots)]
    z, o = ring.zero, ring.one
    basis = []
    for f in free:
        v = [z] * a.cols
        v[f] = o
        for row_idx, pc in enumerate(pivots):
            v[pc] = ring.neg(r[row_idx, f])
        basis.append(v)
    kernel = Matrix(ring, a.cols, len(free), [list(x) for x in zip(*basis)] if basis else
                    [[] for _ in range(a.cols)])
    return len(pivots), kernel


def det(a: Matrix):
    """Exact determinant; fraction-free (Bareiss) over Z and Q."""
    if not a.is_square():
        raise DimensionMismatch(f"det of non-square {a.rows}x{a.cols} matrix")
    ring = a.ring
    if a.rows == 0:
        return ring.one
    if isinstance(ring, PrimeField):
        return kernels.det_mod_p(a.tolist(), ring.p)
    if isinstance(ring, Integers):
        return bareiss(a.tolist())
    if isinstance(ring, Rationals):
        rows = a.tolist()
        denom = 1
        scaled = []
        for r in rows:
            l = lcm(*(Fraction(x).denominator for x in r))
            denom *= l
            scaled.append([int(Fraction(x) * l) for x in r])
        return Fraction(bareiss(scaled), denom)
    if isinstance(ring, ExtensionField):
        _, pivots, scale = _rref_generic(a)
        return scale if len(pivots) == a.rows else ring.zero
    raise NotAField(f"det not supported over {ring}")


def bareiss(m: list[list[int]]) -> int:
    """Fraction-free elimination for integer matrices."""
    n = len(m)
    if n == 0:
        return 1
    m = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse(a: Matrix) -> Matrix:
    """Inverse over a field; over Z the inverse of a unimodular matrix."""
    if not a.is_square():
        raise DimensionMismatch("inverse of non-square matrix")
    ring = a.ring
    n = a.rows
    if isinstance(ring, Integers):
        q = inverse(a.map(Fraction, Rationals()))
        if any(x.denominator != 1 for r in q.data for x in r):
            raise ZeroDivisionError("matrix is not unimodular")
        return q.map(int, ring)
    if n == 0:
        return a
    aug = hstack(ring, n, [a, Matrix.identity(ring, n)])
    r, pivots, _ = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return r.submatrix(cols=list(range(n, 2 * n)))


def is_invertible(a: Matrix) -> bool:
    if not a.is_square():
        return False
    d = det(a)
    return a.ring.is_unit(d)


def right_inverse(a: Matrix, reverse: bool = False) -> Matrix:
    """A section s with a @ s = I, for a surjective map over a field.

    The section is supported on the greedy pivot columns; ``reverse`` scans
    columns right to left, giving a different (equally valid) section.
    """
    ring = a.ring
    ring.require_field()
    cols = pivot_columns(a, reverse=reverse)
    if len(cols) != a.rows:
        raise ValueError("map is not surjective")
    sq_inv = inverse(a.submatrix(cols=cols))
    z = ring.zero
    data = [[z] * a.rows for _ in range(a.cols)]
    for k, c in enumerate(cols):
        data[c] = list(sq_inv.row(k))
    return Matrix(ring, a.cols, a.rows, data)


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with a @ X = b over a field, or None when inconsistent."""
    ring = a.ring
    ring.require_field()
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row mismatch")
    aug = hstack(ring, a.rows, [a, b])
    r, pivots, _ = rref(aug)
    if any(p >= a.cols for p in pivots):
        return None
    z = ring.zero
    x = [[z] * b.cols for _ in range(a.cols)]
    for row_idx, pc in enumerate(pivots):
        x[pc] = [r[row_idx, a.cols + j] for j in range(b.cols)]
    return Matrix(ring, a.cols, b.cols, x)


def field_embed(x, source: Ring, target: Ring):
    """Image of an element of F_p in an extension of the same characteristic."""
    from ..errors import RingMismatch

    if not isinstance(source, PrimeField):
        raise RingMismatch(f"field_embed source must be a prime field, got {source}")
    if target.characteristic != source.p or not target.is_field:
        raise RingMismatch(f"characteristic mismatch: {source} -> {target}")
    return target.from_int(x)
