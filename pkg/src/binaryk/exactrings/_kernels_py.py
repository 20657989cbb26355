"""Pure-Python mod-p kernels; the fallback for the compiled ``_kernels`` module.

Matrices are lists of rows of ints already reduced into ``range(p)``.
"""
from __future__ import annotations


def matmul_mod_p(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    bt = [[b[k][j] for k in range(inner)] for j in range(cols)]
    return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]


def rref_mod_p(rows: list[list[int]], p: int):
    """Reduced row echelon form over F_p.

    Returns ``(rref, pivots, scale)`` where ``scale`` is the product of the
    pivots met times the sign of the row swaps; for a square invertible input
    it is the determinant.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    scale = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            scale = -scale
        lead = m[r][c]
        scale = scale * lead % p
        inv = pow(lead, -1, p)
        row = [x * inv % p for x in m[r]]
        m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m, pivots, scale % p


def det_mod_p(rows: list[list[int]], p: int) -> int:
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        lead = m[c][c]
        det = det * lead % p
        inv = pow(lead, -1, p)
        for i in range(c + 1, n):
            f = m[i][c] * inv % p
            if f:
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[c])]
    return det % p
