"""Dense row-major matrices over an exact ring.

Matrices act on column vectors, so ``a @ b`` applies ``b`` first.
"""
from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence

from ..errors import DimensionMismatch, RingMismatch
from .rings import PrimeField, Ring


class Matrix:
    __slots__ = ("ring", "rows", "cols", "data", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, data: Sequence[Sequence[Any]] | None = None):
        if rows < 0 or cols < 0:
            raise DimensionMismatch("negative dimension")
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if data is None:
            z = ring.zero
            self.data = tuple((z,) * cols for _ in range(rows))
        else:
            data = tuple(tuple(r) for r in data)
            if len(data) != rows or any(len(r) != cols for r in data):
                raise DimensionMismatch(f"data does not have shape {rows}x{cols}")
            self.data = data
        self._hash = None

    # construction

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence[Any]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), cols, rows)

    @classmethod
    def parse(cls, ring: Ring, rows: Sequence[Sequence[Any]], shape: tuple[int, int] | None = None) -> "Matrix":
        """Build from wire entries (strings or ints), parsed exactly by the ring."""
        parsed = [[ring.parse(x) for x in r] for r in rows]
        if shape is not None:
            if parsed and (len(parsed), len(parsed[0])) != shape:
                raise DimensionMismatch(f"expected shape {shape}, got {len(parsed)}x{len(parsed[0])}")
            if not parsed:
                return cls(ring, *shape)
        return cls.from_rows(ring, parsed)

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero, ring.one
        return cls(ring, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: Ring, entries: Sequence[Any]) -> "Matrix":
        n = len(entries)
        z = ring.zero
        return cls(ring, n, n, [[entries[i] if i == j else z for j in range(n)] for i in range(n)])

    # access

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def tolist(self) -> list[list[Any]]:
        return [list(r) for r in self.data]

    def to_strings(self) -> list[list[str]]:
        return [[self.ring.to_str(x) for x in r] for r in self.data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        z = self.ring.is_zero
        return all(z(x) for r in self.data for x in r)

    def nonzero_entries(self) -> Iterable[tuple[int, int]]:
        for i, r in enumerate(self.data):
            for j, x in enumerate(r):
                if not self.ring.is_zero(x):
                    yield i, j

    # equality is extensional: same ring, shape and entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.ring == other.ring and self.shape == other.shape and self.data == other.data

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self.data))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.ring.to_str(x) for x in r) for r in self.data)
        return f"Matrix<{self.ring} {self.rows}x{self.cols}>[{body}]"

    # arithmetic

    def _check_same(self, other: "Matrix") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        add = self.ring.add
        return Matrix(self.ring, self.rows, self.cols,
                      [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        sub = self.ring.sub
        return Matrix(self.ring, self.rows, self.cols,
                      [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, self.rows, self.cols, [[neg(x) for x in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def scale(self, c) -> "Matrix":
        mul = self.ring.mul
        return Matrix(self.ring, self.rows, self.cols, [[mul(c, x) for x in r] for r in self.data])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, self.cols, self.rows, [list(c) for c in zip(*self.data)] if self.rows else
                      [[] for _ in range(self.cols)])

    def map(self, fn: Callable[[Any], Any], ring: Ring) -> "Matrix":
        return Matrix(ring, self.rows, self.cols, [[fn(x) for x in r] for r in self.data])

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return Matrix(self.ring, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        data = self.tolist()
        data[i][j] = value
        return Matrix(self.ring, self.rows, self.cols, data)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    ring = a.ring
    if a.rows == 0 or b.cols == 0:
        return Matrix(ring, a.rows, b.cols)
    if a.cols == 0:
        return Matrix(ring, a.rows, b.cols)
    if isinstance(ring, PrimeField):
        from . import kernels
        return Matrix(ring, a.rows, b.cols, kernels.matmul_mod_p(a.tolist(), b.tolist(), ring.p))
    add, mul, zero = ring.add, ring.mul, ring.zero
    cols = list(zip(*b.data))
    out = []
    for r in a.data:
        row = []
        for c in cols:
            acc = zero
            for x, y in zip(r, c):
                if x and y:
                    acc = add(acc, mul(x, y))
            row.append(acc)
        out.append(row)
    return Matrix(ring, a.rows, b.cols, out)


def hstack(ring: Ring, rows: int, blocks: Sequence[Matrix]) -> Matrix:
    for b in blocks:
        if b.rows != rows:
            raise DimensionMismatch("hstack row mismatch")
    data = [sum((list(b.data[i]) for b in blocks), []) for i in range(rows)]
    return Matrix(ring, rows, sum(b.cols for b in blocks), data)


def vstack(ring: Ring, cols: int, blocks: Sequence[Matrix]) -> Matrix:
    data: list[list[Any]] = []
    for b in blocks:
        if b.cols != cols:
            raise DimensionMismatch("vstack column mismatch")
        data.extend(list(r) for r in b.data)
    return Matrix(ring, len(data), cols, data)


def block(ring: Ring, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix; every block in a block row has the same row count."""
    rows = [hstack(ring, bl[0].rows, bl) for bl in blocks]
    cols = rows[0].cols if rows else 0
    return vstack(ring, cols, rows)


def block_diag(ring: Ring, *ms: Matrix) -> Matrix:
    total_c = sum(m.cols for m in ms)
    data: list[list[Any]] = []
    offset = 0
    z = ring.zero
    for m in ms:
        for r in m.data:
            data.append([z] * offset + list(r) + [z] * (total_c - offset - m.cols))
        offset += m.cols
    return Matrix(ring, len(data), total_c, data)
