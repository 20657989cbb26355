"""Bounded chain complexes of free modules.

Homological indexing: the differential ``d[n]`` maps degree ``n`` to ``n - 1``.
Sign conventions, used everywhere downstream:

* ``shift(c)[n] = c[n - 1]`` with differential ``-d``;
* ``cone(f: A -> B)[n] = B[n] + A[n - 1]`` with differential
  ``[[d_B, f], [0, -d_A]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping, NamedTuple

from .errors import DimensionMismatch, InvalidInput, RingMismatch
from .exactrings import Matrix, block, block_diag, inverse, rank, rank_and_kernel, snf
from .exactrings.rings import Integers, Ring
from .verdict import OK, Verdict


class ChainComplex:
    """Finite support ``{degree: rank}`` and differentials ``{degree: Matrix}``.

    Construction does not check ``d∘d = 0``; use :func:`validate_complex`.
    """

    __slots__ = ("ring", "dims", "d", "_hash")

    def __init__(self, ring: Ring, dims: Mapping[int, int] | None = None, d: Mapping[int, Matrix] | None = None):
        self.ring = ring
        self.dims = MappingProxyType({int(n): int(k) for n, k in sorted((dims or {}).items()) if k})
        clean = {}
        for n, m in (d or {}).items():
            if m.ring != ring:
                raise RingMismatch(f"differential in degree {n} is over {m.ring}, complex over {ring}")
            if m.rows and m.cols and not m.is_zero():
                clean[int(n)] = m
        self.d = MappingProxyType(dict(sorted(clean.items())))
        self._hash = None

    @classmethod
    def zero(cls, ring: Ring) -> "ChainComplex":
        return cls(ring)

    @classmethod
    def concentrated(cls, ring: Ring, degree: int, rank: int) -> "ChainComplex":
        return cls(ring, {degree: rank})

    @classmethod
    def elementary(cls, ring: Ring, a, degree: int = 0) -> "ChainComplex":
        """``0 -> R --a--> R -> 0`` in degrees ``degree + 1, degree``."""
        return cls(ring, {degree + 1: 1, degree: 1}, {degree + 1: Matrix(ring, 1, 1, [[a]])})

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def diff(self, n: int) -> Matrix:
        m = self.d.get(n)
        if m is None:
            return Matrix(self.ring, self.dim(n - 1), self.dim(n))
        return m

    @property
    def degrees(self) -> list[int]:
        return list(self.dims)

    def diff_degrees(self) -> list[int]:
        """Degrees n where d[n] has both ends nonzero."""
        return [n for n in self.dims if self.dim(n - 1)]

    def is_zero(self) -> bool:
        return not self.dims

    def bounds(self) -> tuple[int, int] | None:
        if not self.dims:
            return None
        ds = list(self.dims)
        return ds[0], ds[-1]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return self.ring == other.ring and dict(self.dims) == dict(other.dims) and dict(self.d) == dict(other.d)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, tuple(self.dims.items()), tuple(self.d.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"ChainComplex<{self.ring} dims={dict(self.dims)}>"


class ChainMap:
    """Degreewise matrices ``comps[n]: source[n] -> target[n]``.

    Source and target are any graded objects exposing ``ring``, ``dim`` and
    ``dims`` (chain complexes, binary complexes).
    """

    __slots__ = ("source", "target", "comps")

    def __init__(self, source, target, comps: Mapping[int, Matrix] | None = None):
        if source.ring != target.ring:
            raise RingMismatch("chain map between complexes over different rings")
        self.source = source
        self.target = target
        clean = {}
        for n, m in (comps or {}).items():
            if m.rows and m.cols and not m.is_zero():
                clean[int(n)] = m
        self.comps = MappingProxyType(clean)

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def comp(self, n: int) -> Matrix:
        m = self.comps.get(n)
        if m is None:
            return Matrix(self.ring, self.target.dim(n), self.source.dim(n))
        return m

    def degrees(self) -> list[int]:
        return sorted(set(self.source.dims) | set(self.target.dims))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.comps) == dict(other.comps))

    def __hash__(self) -> int:
        return hash((self.source, self.target, tuple(sorted(self.comps.items()))))

    def __repr__(self) -> str:
        return f"ChainMap<{self.source!r} -> {self.target!r}>"


def identity_map(c) -> ChainMap:
    return ChainMap(c, c, {n: Matrix.identity(c.ring, k) for n, k in c.dims.items()})


def zero_map(source, target) -> ChainMap:
    return ChainMap(source, target)


def compose(g: ChainMap, f: ChainMap) -> ChainMap:
    """``g ∘ f`` (apply f first)."""
    return ChainMap(f.source, g.target, {n: g.comp(n) @ f.comp(n) for n in f.source.dims})


def validate_complex(c: ChainComplex) -> Verdict:
    for n, m in c.d.items():
        if m.shape != (c.dim(n - 1), c.dim(n)):
            return Verdict.failed(
                f"differential in degree {n} has shape {m.shape}, expected {(c.dim(n - 1), c.dim(n))}",
                degree=n)
    for n in c.dims:
        dd = c.diff(n - 1) @ c.diff(n)
        if not dd.is_zero():
            i, j = next(iter(dd.nonzero_entries()))
            return Verdict.failed(f"d∘d != 0 at degree {n}", degree=n, entry=[i, j])
    return OK


def validate_chain_map(f: ChainMap, diff_name: str = "diff") -> Verdict:
    """Shape checks and ``d_target ∘ f_n = f_{n-1} ∘ d_source`` in every degree."""
    src, tgt = f.source, f.target
    for n, m in f.comps.items():
        if m.shape != (tgt.dim(n), src.dim(n)):
            return Verdict.failed(f"component {n} has shape {m.shape}", degree=n)
    d_src, d_tgt = getattr(src, diff_name), getattr(tgt, diff_name)
    for n in f.degrees():
        lhs = d_tgt(n) @ f.comp(n)
        rhs = f.comp(n - 1) @ d_src(n)
        if lhs != rhs:
            return Verdict.failed(f"chain map square fails at degree {n}", degree=n)
    return OK


class ZHomology(NamedTuple):
    """Finitely generated abelian group Z^rank + sum Z/t."""

    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z^{self.rank}"] if self.rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _z_homology(c: ChainComplex, n: int) -> ZHomology:
    d_out = c.diff(n)
    d_in = c.diff(n + 1)
    dim = c.dim(n)
    if dim == 0:
        return ZHomology(0)
    _, s, v = snf(d_out)
    r = sum(1 for i in range(min(s.rows, s.cols)) if s[i, i])
    kdim = dim - r
    if kdim == 0:
        return ZHomology(0)
    # coordinates of the image of d_{n+1} in the kernel basis (last columns of V)
    coords = (inverse(v) @ d_in).submatrix(rows=list(range(r, dim)))
    factors = [f for f in _nonzero_diag(snf(coords)[1])]
    torsion = tuple(f for f in factors if f > 1)
    return ZHomology(kdim - len(factors), torsion)


def _nonzero_diag(s: Matrix) -> list[int]:
    return [s[i, i] for i in range(min(s.rows, s.cols)) if s[i, i]]


def homology(c: ChainComplex, n: int):
    """Dimension of H_n over a field, or a :class:`ZHomology` over Z."""
    if isinstance(c.ring, Integers):
        return _z_homology(c, n)
    kdim = c.dim(n) - rank(c.diff(n)) if c.dim(n) else 0
    return kdim - (rank(c.diff(n + 1)) if c.dim(n) and c.dim(n + 1) else 0)


def homology_all(c: ChainComplex) -> dict:
    return {n: homology(c, n) for n in c.dims}


def is_acyclic(c: ChainComplex) -> bool:
    if isinstance(c.ring, Integers):
        return all(_z_homology(c, n).is_zero() for n in c.dims)
    return all(homology(c, n) == 0 for n in c.dims)


def shift(c: ChainComplex, k: int = 1) -> ChainComplex:
    """``c[k]``: degrees move up by k, differential multiplied by ``(-1)^k``."""
    sign = -1 if k % 2 else 1
    d = {n + k: (m if sign == 1 else -m) for n, m in c.d.items()}
    return ChainComplex(c.ring, {n + k: v for n, v in c.dims.items()}, d)


def shift_map(f: ChainMap, k: int = 1) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), {n + k: m for n, m in f.comps.items()})


def cone(f: ChainMap) -> ChainComplex:
    a, b = f.source, f.target
    ring = f.ring
    degrees = sorted(set(b.dims) | {n + 1 for n in a.dims})
    dims = {n: b.dim(n) + a.dim(n - 1) for n in degrees}
    d = {}
    for n in degrees:
        d[n] = block(ring, [
            [b.diff(n), f.comp(n - 1)],
            [Matrix(ring, a.dim(n - 2), b.dim(n)), -a.diff(n - 1)],
        ])
    return ChainComplex(ring, dims, d)


def direct_sum(a: ChainComplex, b: ChainComplex) -> ChainComplex:
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    degrees = sorted(set(a.dims) | set(b.dims))
    dims = {n: a.dim(n) + b.dim(n) for n in degrees}
    d = {n: block_diag(a.ring, a.diff(n), b.diff(n)) for n in degrees}
    return ChainComplex(a.ring, dims, d)


def direct_sum_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    src = direct_sum(f.source, g.source)
    tgt = direct_sum(f.target, g.target)
    return ChainMap(src, tgt, {n: block_diag(f.ring, f.comp(n), g.comp(n)) for n in src.dims})


def euler_char(c) -> int:
    return sum((-1 if n % 2 else 1) * k for n, k in c.dims.items())


def naive_stage(c: ChainComplex, i: int) -> ChainComplex:
    """The subcomplex of degrees 0..i."""
    dims = {n: k for n, k in c.dims.items() if n <= i}
    return ChainComplex(c.ring, dims, {n: m for n, m in c.d.items() if n <= i})


def naive_truncate(c: ChainComplex, i: int) -> tuple[ChainComplex, ChainMap, ChainComplex]:
    """Stage i of the naive filtration, its inclusion into stage i+1, and the quotient.

    The quotient ``stage(i+1) / stage(i)`` is ``c[i+1]`` as a one-object complex
    in degree i+1 (zero once i is past the top degree).
    """
    b = c.bounds()
    if b is not None and b[0] < 0:
        raise InvalidInput("naive filtration needs support in degrees >= 0")
    sub = naive_stage(c, i)
    nxt = naive_stage(c, i + 1)
    inc = ChainMap(sub, nxt, {n: Matrix.identity(c.ring, k) for n, k in sub.dims.items()})
    quotient = ChainComplex(c.ring, {i + 1: c.dim(i + 1)})
    return sub, inc, quotient


def naive_filtration(c: ChainComplex) -> list[tuple[ChainComplex, ChainMap, ChainComplex]]:
    """All steps from stage -1 (zero) up to the full complex."""
    b = c.bounds()
    if b is None:
        return []
    return [naive_truncate(c, i) for i in range(-1, b[1])]


# admissibility for free modules: injective with free cokernel / surjective

def is_admissible_mono(m: Matrix) -> bool:
    if isinstance(m.ring, Integers):
        if m.cols == 0:
            return True
        f = _nonzero_diag(snf(m)[1])
        return len(f) == m.cols and all(x == 1 for x in f)
    return rank(m) == m.cols


def is_admissible_epi(m: Matrix) -> bool:
    if isinstance(m.ring, Integers):
        if m.rows == 0:
            return True
        f = _nonzero_diag(snf(m)[1])
        return len(f) == m.rows and all(x == 1 for x in f)
    return rank(m) == m.rows


def check_exact_at(mono: Matrix, epi: Matrix) -> str | None:
    """Why ``0 -> . -mono-> . -epi-> . -> 0`` is not exact, or None."""
    if mono.rows != epi.cols:
        return "mono and epi do not share a middle object"
    if not (epi @ mono).is_zero():
        return "epi∘mono != 0"
    if not is_admissible_mono(mono):
        return "mono is not an admissible monomorphism"
    if not is_admissible_epi(epi):
        return "epi is not surjective"
    if mono.cols + epi.rows != mono.rows:
        return "kernel of epi is larger than image of mono"
    return None


@dataclass(frozen=True)
class SES:
    """``left >-mono-> middle -epi->> right`` with graded maps."""

    left: object
    middle: object
    right: object
    mono: ChainMap
    epi: ChainMap


def check_graded_exactness(s: SES) -> Verdict:
    if s.mono.source != s.left or s.mono.target != s.middle:
        return Verdict.failed("mono does not go from left to middle")
    if s.epi.source != s.middle or s.epi.target != s.right:
        return Verdict.failed("epi does not go from middle to right")
    degrees = sorted(set(s.left.dims) | set(s.middle.dims) | set(s.right.dims))
    for n in degrees:
        try:
            problem = check_exact_at(s.mono.comp(n), s.epi.comp(n))
        except DimensionMismatch as exc:
            problem = str(exc)
        if problem:
            return Verdict.failed(f"degree {n}: {problem}", degree=n)
    return OK


def validate_complex_ses(s: SES) -> Verdict:
    for v in (validate_complex(s.left), validate_complex(s.middle), validate_complex(s.right)):
        if not v:
            return v
    v = check_graded_exactness(s)
    if not v:
        return v
    for name, f in (("mono", s.mono), ("epi", s.epi)):
        v = validate_chain_map(f)
        if not v:
            return Verdict.failed(f"{name}: {v.message}", **v.witness)
    return OK


def is_quasi_iso(f: ChainMap) -> bool:
    return is_acyclic(cone(f))


def kernel_dim(m: Matrix) -> int:
    return rank_and_kernel(m)[1].cols
