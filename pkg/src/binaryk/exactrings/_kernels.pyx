# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled mod-p kernels. Same contract as ``_kernels_py``; p must be < 2**31."""

from libc.stdlib cimport malloc, free

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p):
    # a^(p-2) mod p
    cdef i64 result = 1, e = p - 2
    a %= p
    while e > 0:
        if e & 1:
            result = result * a % p
        a = a * a % p
        e >>= 1
    return result


cdef i64* _load(list rows, Py_ssize_t nrows, Py_ssize_t ncols, i64 p) except NULL:
    cdef i64* buf = <i64*> malloc((nrows * ncols + 1) * sizeof(i64))
    cdef Py_ssize_t i, j
    cdef list row
    if buf == NULL:
        raise MemoryError()
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            buf[i * ncols + j] = (<i64> row[j]) % p
    return buf


cdef list _dump(i64* buf, Py_ssize_t nrows, Py_ssize_t ncols):
    cdef Py_ssize_t i, j
    return [[buf[i * ncols + j] for j in range(ncols)] for i in range(nrows)]


def matmul_mod_p(list a, list b, i64 p):
    cdef Py_ssize_t n = len(a)
    if n == 0:
        return []
    cdef Py_ssize_t inner = len(b)
    cdef Py_ssize_t m = len(b[0]) if inner else 0
    cdef i64* x = _load(a, n, inner, p)
    cdef i64* y = _load(b, inner, m, p)
    cdef i64* z = <i64*> malloc((n * m + 1) * sizeof(i64))
    cdef Py_ssize_t i, j, k
    cdef i64 acc, xik
    try:
        for i in range(n * m):
            z[i] = 0
        for i in range(n):
            for k in range(inner):
                xik = x[i * inner + k]
                if xik:
                    for j in range(m):
                        z[i * m + j] = (z[i * m + j] + xik * y[k * m + j]) % p
        return _dump(z, n, m)
    finally:
        free(x)
        free(y)
        free(z)


def rref_mod_p(list rows, i64 p):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef i64* m = _load(rows, nrows, ncols, p)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 scale = 1, lead, inv, f, t
    cdef list pivots = []
    try:
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if m[i * ncols + c]:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    t = m[r * ncols + j]
                    m[r * ncols + j] = m[piv * ncols + j]
                    m[piv * ncols + j] = t
                scale = (p - scale) % p
            lead = m[r * ncols + c]
            scale = scale * lead % p
            inv = _inv(lead, p)
            for j in range(ncols):
                m[r * ncols + j] = m[r * ncols + j] * inv % p
            for i in range(nrows):
                if i != r:
                    f = m[i * ncols + c]
                    if f:
                        for j in range(ncols):
                            m[i * ncols + j] = (m[i * ncols + j] + (p - f) * m[r * ncols + j]) % p
            pivots.append(c)
            r += 1
        return _dump(m, nrows, ncols), pivots, scale % p
    finally:
        free(m)


def det_mod_p(list rows, i64 p):
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    cdef i64* m = _load(rows, n, n, p)
    cdef Py_ssize_t c, i, j, piv
    cdef i64 det = 1, inv, f, t
    try:
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if m[i * n + c]:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = m[c * n + j]
                    m[c * n + j] = m[piv * n + j]
                    m[piv * n + j] = t
                det = (p - det) % p
            det = det * m[c * n + c] % p
            inv = _inv(m[c * n + c], p)
            for i in range(c + 1, n):
                f = m[i * n + c] * inv % p
                if f:
                    for j in range(c, n):
                        m[i * n + j] = (m[i * n + j] + (p - f) * m[c * n + j]) % p
        return det
    finally:
        free(m)
