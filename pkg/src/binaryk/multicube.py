"""n-dimensional (binary) multicomplexes and the relations of the K_n presentation.

A multicomplex of dimension n is a Z^n-graded free module with one family of
differentials per axis (two families on a binary axis).  Differentials on
distinct axes commute strictly: the object is an iterated complex of
complexes, with no Koszul sign.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, Sequence

from .binary import BinaryComplex
from .complexes import ChainComplex, check_exact_at, is_acyclic
from .errors import InvalidInput, RingMismatch
from .exactrings import Matrix, block_diag, vstack
from .exactrings.rings import Ring
from .verdict import OK, Verdict

Point = tuple[int, ...]
CQ, BQ = "Cq", "Bq"


def _step(pt: Point, axis: int, delta: int = -1) -> Point:
    return pt[:axis] + (pt[axis] + delta,) + pt[axis + 1:]


class MultiComplex:
    """``axes[i]`` is a tuple of one (unary) or two (top, bottom) families;
    a family maps a source point to the matrix into ``pt - e_i``."""

    __slots__ = ("ring", "n", "dims", "axes")

    def __init__(self, ring: Ring, n: int, dims: Mapping[Point, int],
                 axes: Sequence[Sequence[Mapping[Point, Matrix]]]):
        if n < 1:
            raise InvalidInput("multicomplex dimension must be >= 1")
        if len(axes) != n:
            raise InvalidInput(f"expected {n} axes, got {len(axes)}")
        self.ring = ring
        self.n = n
        self.dims = MappingProxyType({tuple(p): k for p, k in sorted(dims.items()) if k})
        for p in self.dims:
            if len(p) != n:
                raise InvalidInput(f"point {p} is not in Z^{n}")
        fams = []
        for families in axes:
            if len(families) not in (1, 2):
                raise InvalidInput("each axis carries one or two differential families")
            clean = []
            for fam in families:
                f = {}
                for p, m in fam.items():
                    if m.ring != ring:
                        raise RingMismatch("differential over the wrong ring")
                    if m.rows and m.cols and not m.is_zero():
                        f[tuple(p)] = m
                clean.append(MappingProxyType(f))
            fams.append(tuple(clean))
        self.axes = tuple(fams)

    def dim(self, pt: Point) -> int:
        return self.dims.get(tuple(pt), 0)

    def is_binary(self, axis: int) -> bool:
        return len(self.axes[axis]) == 2

    def choices(self, axis: int) -> range:
        return range(len(self.axes[axis]))

    def diff(self, axis: int, choice: int, pt: Point) -> Matrix:
        m = self.axes[axis][choice].get(tuple(pt))
        if m is None:
            return Matrix(self.ring, self.dim(_step(pt, axis)), self.dim(pt))
        return m

    def signature(self) -> tuple[str, ...]:
        return tuple(BQ if self.is_binary(i) else CQ for i in range(self.n))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiComplex):
            return NotImplemented
        return (self.ring == other.ring and self.n == other.n and dict(self.dims) == dict(other.dims)
                and [[dict(f) for f in a] for a in self.axes] == [[dict(f) for f in a] for a in other.axes])

    def __hash__(self) -> int:
        return hash((self.ring, self.n, tuple(self.dims.items())))

    def __repr__(self) -> str:
        return f"MultiComplex<{self.ring} n={self.n} sig={list(self.signature())} points={len(self.dims)}>"

    def replace_axis(self, axis: int, families) -> "MultiComplex":
        axes = list(self.axes)
        axes[axis] = tuple(families)
        return MultiComplex(self.ring, self.n, self.dims, axes)


def validate_multicomplex(x: MultiComplex, sig: Sequence[str]) -> Verdict:
    sig = list(sig)
    if len(sig) != x.n:
        return Verdict.failed(f"signature has length {len(sig)}, object has dimension {x.n}")
    for i, s in enumerate(sig):
        if s not in (CQ, BQ):
            return Verdict.failed(f"unknown category {s!r} on axis {i}", axis=i)
        if (s == BQ) != x.is_binary(i):
            return Verdict.failed(f"axis {i} is {'binary' if x.is_binary(i) else 'unary'} but signature says {s}",
                                  axis=i)
    for i in range(x.n):
        for c in x.choices(i):
            for p, m in x.axes[i][c].items():
                if m.shape != (x.dim(_step(p, i)), x.dim(p)):
                    return Verdict.failed(f"axis {i} differential at {list(p)} has shape {m.shape}",
                                          axis=i, choice=c, pt=list(p))
    for i in range(x.n):
        for c in x.choices(i):
            for p in x.dims:
                if not (x.diff(i, c, _step(p, i)) @ x.diff(i, c, p)).is_zero():
                    return Verdict.failed(f"axis {i} differential does not square to zero at {list(p)}",
                                          axis=i, choice=c, pt=list(p))
    for i, j in itertools.combinations(range(x.n), 2):
        for ci in x.choices(i):
            for cj in x.choices(j):
                for p in x.dims:
                    lhs = x.diff(i, ci, _step(p, j)) @ x.diff(j, cj, p)
                    rhs = x.diff(j, cj, _step(p, i)) @ x.diff(i, ci, p)
                    if lhs != rhs:
                        return Verdict.failed(f"axes {i} and {j} do not commute at {list(p)}",
                                              axes=[i, j], choices=[ci, cj], pt=list(p))
    for i in range(x.n):
        for c in x.choices(i):
            for line, comp in _lines(x, i, c):
                if not is_acyclic(comp):
                    return Verdict.failed(f"line along axis {i} through {list(line)} is not acyclic",
                                          axis=i, choice=c, pt=list(line))
    return OK


def _lines(x: MultiComplex, axis: int, choice: int):
    """Complexes along axis ``axis`` through each occupied line."""
    groups: dict[Point, list[Point]] = {}
    for p in x.dims:
        key = p[:axis] + (0,) + p[axis + 1:]
        groups.setdefault(key, []).append(p)
    for key, pts in sorted(groups.items()):
        dims = {p[axis]: x.dim(p) for p in pts}
        d = {}
        for p in pts:
            q = _step(p, axis)
            if x.dim(q):
                d[p[axis]] = x.diff(axis, choice, p)
        yield key, ChainComplex(x.ring, dims, d)


def axis_top(x: MultiComplex, i: int) -> MultiComplex:
    if not x.is_binary(i):
        raise InvalidInput(f"axis {i} is not binary")
    return x.replace_axis(i, [x.axes[i][0]])


def axis_bot(x: MultiComplex, i: int) -> MultiComplex:
    if not x.is_binary(i):
        raise InvalidInput(f"axis {i} is not binary")
    return x.replace_axis(i, [x.axes[i][1]])


def axis_diag(x: MultiComplex, i: int) -> MultiComplex:
    if x.is_binary(i):
        raise InvalidInput(f"axis {i} is already binary")
    return x.replace_axis(i, [x.axes[i][0], x.axes[i][0]])


def is_axis_diagonal(x: MultiComplex, i: int) -> bool:
    if not x.is_binary(i):
        raise InvalidInput(f"axis {i} is not binary")
    return dict(x.axes[i][0]) == dict(x.axes[i][1])


def from_binary(b: BinaryComplex) -> MultiComplex:
    def fam(d):
        return {(n,): m for n, m in d.items()}
    return MultiComplex(b.ring, 1, {(n,): k for n, k in b.dims.items()}, [[fam(b.top_d), fam(b.bot_d)]])


def from_complex(c: ChainComplex) -> MultiComplex:
    return MultiComplex(c.ring, 1, {(n,): k for n, k in c.dims.items()}, [[{(n,): m for n, m in c.d.items()}]])


def to_binary(x: MultiComplex) -> BinaryComplex:
    if x.n != 1 or not x.is_binary(0):
        raise InvalidInput("only one-dimensional binary multicomplexes convert")
    dims = {p[0]: k for p, k in x.dims.items()}
    return BinaryComplex(x.ring, dims, {p[0]: m for p, m in x.axes[0][0].items()},
                         {p[0]: m for p, m in x.axes[0][1].items()})


def kron(a: Matrix, b: Matrix) -> Matrix:
    ring = a.ring
    mul = ring.mul
    data = [[mul(a[i, j], b[k, l]) for j in range(a.cols) for l in range(b.cols)]
            for i in range(a.rows) for k in range(b.rows)]
    return Matrix(ring, a.rows * b.rows, a.cols * b.cols, data)


def tensor(x: MultiComplex, y: MultiComplex) -> MultiComplex:
    """External product: axes of x followed by axes of y, no Koszul signs."""
    if x.ring != y.ring:
        raise RingMismatch("tensor of multicomplexes over different rings")
    ring = x.ring
    dims = {p + q: a * b for p, a in x.dims.items() for q, b in y.dims.items()}
    axes = []
    for i in range(x.n):
        fams = []
        for c in x.choices(i):
            fams.append({p + q: kron(x.diff(i, c, p), Matrix.identity(ring, b))
                         for p in x.dims for q, b in y.dims.items() if x.dim(_step(p, i))})
        axes.append(fams)
    for j in range(y.n):
        fams = []
        for c in y.choices(j):
            fams.append({p + q: kron(Matrix.identity(ring, a), y.diff(j, c, q))
                         for p, a in x.dims.items() for q in y.dims if y.dim(_step(q, j))})
        axes.append(fams)
    return MultiComplex(ring, x.n + y.n, dims, axes)


def conjugate(x: MultiComplex, autos: Mapping[Point, Matrix]) -> MultiComplex:
    """Transport x along pointwise isomorphisms."""
    from .exactrings import inverse

    inv = {p: inverse(g) for p, g in autos.items()}
    axes = []
    for i in range(x.n):
        fams = []
        for c in x.choices(i):
            fams.append({p: autos[_step(p, i)] @ m @ inv[p] for p, m in x.axes[i][c].items()})
        axes.append(fams)
    return MultiComplex(x.ring, x.n, x.dims, axes)


def direct_sum(x: MultiComplex, y: MultiComplex) -> MultiComplex:
    from .exactrings import block_diag

    if x.signature() != y.signature():
        raise InvalidInput("direct sum needs matching signatures")
    ring = x.ring
    pts = sorted(set(x.dims) | set(y.dims))
    dims = {p: x.dim(p) + y.dim(p) for p in pts}
    axes = []
    for i in range(x.n):
        axes.append([{p: block_diag(ring, x.diff(i, c, p), y.diff(i, c, p)) for p in pts}
                     for c in x.choices(i)])
    return MultiComplex(ring, x.n, dims, axes)


# relations of the presentation

@dataclass(frozen=True)
class SESRelation:
    """``[Y] = [X] + [Z]`` for a pointwise short exact sequence X >-> Y ->> Z."""

    left: MultiComplex
    middle: MultiComplex
    right: MultiComplex
    mono: Mapping[Point, Matrix]
    epi: Mapping[Point, Matrix]


@dataclass(frozen=True)
class DiagonalRelation:
    """``[D] = 0`` for D diagonal along ``axis``."""

    obj: MultiComplex
    axis: int


def _map_comp(maps: Mapping[Point, Matrix], src: MultiComplex, tgt: MultiComplex, p: Point) -> Matrix:
    m = maps.get(tuple(p))
    return m if m is not None else Matrix(src.ring, tgt.dim(p), src.dim(p))


def _check_morphism(f, src: MultiComplex, tgt: MultiComplex, name: str) -> Verdict:
    for i in range(src.n):
        for c in src.choices(i):
            for p in sorted(set(src.dims) | set(tgt.dims)):
                lhs = tgt.diff(i, c, p) @ _map_comp(f, src, tgt, p)
                rhs = _map_comp(f, src, tgt, _step(p, i)) @ src.diff(i, c, p)
                if lhs != rhs:
                    return Verdict.failed(f"{name} does not commute with axis {i} at {list(p)}",
                                          map=name, axis=i, choice=c, pt=list(p))
    return OK


def certify_relation(r, sig: Sequence[str] | None = None) -> Verdict:
    """Check the side condition that makes r an instance of a defining relation."""
    if isinstance(r, DiagonalRelation):
        x = r.obj
        v = validate_multicomplex(x, sig or x.signature())
        if not v:
            return v
        if not (0 <= r.axis < x.n) or not x.is_binary(r.axis):
            return Verdict.failed(f"axis {r.axis} is not a binary axis", axis=r.axis)
        if not is_axis_diagonal(x, r.axis):
            return Verdict.failed(f"object is not diagonal along axis {r.axis}", axis=r.axis)
        return OK
    if isinstance(r, SESRelation):
        sig = sig or r.middle.signature()
        for name, obj in (("left", r.left), ("middle", r.middle), ("right", r.right)):
            v = validate_multicomplex(obj, sig)
            if not v:
                return Verdict.failed(f"{name}: {v.message}", object=name, **v.witness)
        for p in sorted(set(r.left.dims) | set(r.middle.dims) | set(r.right.dims)):
            problem = check_exact_at(_map_comp(r.mono, r.left, r.middle, p),
                                     _map_comp(r.epi, r.middle, r.right, p))
            if problem:
                return Verdict.failed(f"not exact at {list(p)}: {problem}", pt=list(p))
        v = _check_morphism(r.mono, r.left, r.middle, "mono")
        if not v:
            return v
        return _check_morphism(r.epi, r.middle, r.right, "epi")
    from . import relative

    if isinstance(r, (relative.WeakEquivRelation, relative.TripleSESRelation, relative.TripleDiagonalRelation)):
        return relative.certify_rel_relation(r)
    raise InvalidInput(f"unknown relation type {type(r).__name__}")


def split_ses(x: MultiComplex, z: MultiComplex) -> SESRelation:
    """The canonical ``X >-> X+Z ->> Z``."""
    ring = x.ring
    y = direct_sum(x, z)
    mono = {p: vstack(ring, x.dim(p), [Matrix.identity(ring, x.dim(p)), Matrix(ring, z.dim(p), x.dim(p))])
            for p in y.dims}
    epi = {p: block_diag(ring, Matrix(ring, 0, x.dim(p)), Matrix.identity(ring, z.dim(p))) for p in y.dims}
    return SESRelation(x, y, z, mono, epi)
