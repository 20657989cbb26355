"""Binary chain complexes: one graded object carrying two differentials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .complexes import (SES, ChainComplex, ChainMap, check_exact_at, check_graded_exactness, cone,
                        direct_sum, identity_map, is_acyclic, shift, validate_complex,
                        validate_complex_ses)
from .errors import InvalidInput, RingMismatch
from .exactrings import Matrix, block_diag, vstack
from .exactrings.rings import Ring
from .verdict import OK, Verdict


class BinaryComplex:
    __slots__ = ("ring", "dims", "top_d", "bot_d", "_acyclic")

    def __init__(self, ring: Ring, dims: Mapping[int, int] | None = None,
                 top: Mapping[int, Matrix] | None = None, bot: Mapping[int, Matrix] | None = None):
        t = ChainComplex(ring, dims, top)
        b = ChainComplex(ring, dims, bot)
        self.ring = ring
        self.dims = t.dims
        self.top_d = t.d
        self.bot_d = b.d
        self._acyclic = None

    @classmethod
    def from_pair(cls, top: ChainComplex, bot: ChainComplex) -> "BinaryComplex":
        if top.ring != bot.ring:
            raise RingMismatch("top and bottom over different rings")
        if dict(top.dims) != dict(bot.dims):
            raise InvalidInput("top and bottom must live on the same graded object")
        return cls(top.ring, top.dims, top.d, bot.d)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    @property
    def degrees(self) -> list[int]:
        return list(self.dims)

    def top_diff(self, n: int) -> Matrix:
        return self.top_d.get(n) or Matrix(self.ring, self.dim(n - 1), self.dim(n))

    def bot_diff(self, n: int) -> Matrix:
        return self.bot_d.get(n) or Matrix(self.ring, self.dim(n - 1), self.dim(n))

    def is_acyclic(self) -> bool:
        """Membership in B^q: both rows acyclic (cached)."""
        if self._acyclic is None:
            self._acyclic = is_acyclic(top(self)) and is_acyclic(bot(self))
        return self._acyclic

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryComplex):
            return NotImplemented
        return (self.ring == other.ring and dict(self.dims) == dict(other.dims)
                and dict(self.top_d) == dict(other.top_d) and dict(self.bot_d) == dict(other.bot_d))

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self.dims.items()), tuple(self.top_d.items()), tuple(self.bot_d.items())))

    def __repr__(self) -> str:
        return f"BinaryComplex<{self.ring} dims={dict(self.dims)}>"


def top(b: BinaryComplex) -> ChainComplex:
    return ChainComplex(b.ring, b.dims, b.top_d)


def bot(b: BinaryComplex) -> ChainComplex:
    return ChainComplex(b.ring, b.dims, b.bot_d)


def diag(c: ChainComplex) -> BinaryComplex:
    return BinaryComplex(c.ring, c.dims, c.d, c.d)


def is_diagonal(b: BinaryComplex) -> bool:
    return dict(b.top_d) == dict(b.bot_d)


def validate_binary(b: BinaryComplex) -> Verdict:
    for name, c in (("top", top(b)), ("bottom", bot(b))):
        v = validate_complex(c)
        if not v:
            return Verdict.failed(f"{name}: {v.message}", row=name, **v.witness)
    return OK


def direct_sum_binary(a: BinaryComplex, b: BinaryComplex) -> BinaryComplex:
    t = direct_sum(top(a), top(b))
    return BinaryComplex(a.ring, t.dims, t.d, direct_sum(bot(a), bot(b)).d)


def shift_binary(b: BinaryComplex, k: int = 1) -> BinaryComplex:
    return BinaryComplex.from_pair(shift(top(b), k), shift(bot(b), k))


def h_functor(a: BinaryComplex) -> BinaryComplex:
    """Top ``⊤A ⊕ ⊥A[1]``, bottom ``cone(id: ⊥A -> ⊥A)``; degree n is ``A_n ⊕ A_{n-1}``."""
    b = bot(a)
    t = direct_sum(top(a), shift(b))
    c = cone(identity_map(b))
    return BinaryComplex.from_pair(t, c)


def _first_summand(a, total) -> ChainMap:
    """Inclusion ``A_n -> A_n ⊕ A_{n-1}``."""
    ring = a.ring
    comps = {}
    for n in total.dims:
        comps[n] = vstack(ring, a.dim(n), [Matrix.identity(ring, a.dim(n)), Matrix(ring, a.dim(n - 1), a.dim(n))])
    return ChainMap(a, total, comps)


def _second_summand(a, total, quotient) -> ChainMap:
    """Projection ``A_n ⊕ A_{n-1} -> A_{n-1}``."""
    ring = a.ring
    comps = {}
    for n in total.dims:
        comps[n] = block_diag(ring, Matrix(ring, 0, a.dim(n)), Matrix.identity(ring, a.dim(n - 1)))
    return ChainMap(total, quotient, comps)


def h_ses_witnesses(n: BinaryComplex) -> tuple[SES, SES]:
    """``N >-> HN ->> Δ⊥N[1]`` and ``Δ⊥N >-> HΔ⊥N ->> Δ⊥N[1]``, both validated."""
    dbn = diag(bot(n))
    right = shift_binary(dbn)
    out = []
    for left in (n, dbn):
        middle = h_functor(left)
        s = SES(left, middle, right, _first_summand(left, middle), _second_summand(left, middle, right))
        v = validate_ses(s)
        if not v:
            raise AssertionError(f"H-functor witness failed to validate: {v.message}")
        out.append(s)
    return out[0], out[1]


def _maps_commute(f: ChainMap, src_diff, tgt_diff) -> Verdict:
    for n in f.degrees():
        if tgt_diff(f.target, n) @ f.comp(n) != f.comp(n - 1) @ src_diff(f.source, n):
            return Verdict.failed(f"map does not commute with differential at degree {n}", degree=n)
    return OK


def validate_binary_map(f: ChainMap) -> Verdict:
    """A morphism of binary complexes: one graded map commuting with both differentials."""
    for row, getter in (("top", BinaryComplex.top_diff), ("bottom", BinaryComplex.bot_diff)):
        v = _maps_commute(f, getter, getter)
        if not v:
            return Verdict.failed(f"{row}: {v.message}", row=row, **v.witness)
    return OK


def validate_ses(s: SES) -> Verdict:
    """Exactness of a short exact sequence of chain or binary complexes."""
    if isinstance(s.middle, ChainComplex):
        return validate_complex_ses(s)
    for obj in (s.left, s.middle, s.right):
        v = validate_binary(obj)
        if not v:
            return v
    v = check_graded_exactness(s)
    if not v:
        return v
    for name, f in (("mono", s.mono), ("epi", s.epi)):
        v = validate_binary_map(f)
        if not v:
            return Verdict.failed(f"{name} {v.message}", map=name, **v.witness)
    return OK


def ses_top(s: SES) -> SES:
    """Image of a binary SES under ⊤ (the same graded maps)."""
    return _ses_row(s, top)


def ses_bot(s: SES) -> SES:
    return _ses_row(s, bot)


def _ses_row(s: SES, row) -> SES:
    l, m, r = row(s.left), row(s.middle), row(s.right)
    return SES(l, m, r, ChainMap(l, m, s.mono.comps), ChainMap(m, r, s.epi.comps))


@dataclass(frozen=True)
class NenashevDSES:
    """Two short exact sequences ``A -i-> B -p-> C`` and ``A -j-> B -q-> C``."""

    ring: Ring
    a: int
    b: int
    c: int
    i: Matrix
    j: Matrix
    p: Matrix
    q: Matrix


def validate_dses(n: NenashevDSES) -> Verdict:
    for name, m, shape in (("i", n.i, (n.b, n.a)), ("j", n.j, (n.b, n.a)),
                           ("p", n.p, (n.c, n.b)), ("q", n.q, (n.c, n.b))):
        if m.shape != shape:
            return Verdict.failed(f"{name} has shape {m.shape}, expected {shape}", map=name)
        if m.ring != n.ring:
            return Verdict.failed(f"{name} is over {m.ring}", map=name)
    for name, mono, epi in (("top (i, p)", n.i, n.p), ("bottom (j, q)", n.j, n.q)):
        problem = check_exact_at(mono, epi)
        if problem:
            return Verdict.failed(f"{name}: {problem}", row=name.split()[0])
    return OK


def embed_nenashev(n: NenashevDSES) -> BinaryComplex:
    """Degrees 2, 1, 0 hold A, B, C; top row uses (i, p), bottom row (j, q)."""
    v = validate_dses(n)
    if not v:
        raise InvalidInput(f"invalid double short exact sequence: {v.message}")
    dims = {2: n.a, 1: n.b, 0: n.c}
    return BinaryComplex(n.ring, dims, {2: n.i, 1: n.p}, {2: n.j, 1: n.q})


def direct_sum_dses(x: NenashevDSES, y: NenashevDSES) -> NenashevDSES:
    r = x.ring
    return NenashevDSES(r, x.a + y.a, x.b + y.b, x.c + y.c,
                        block_diag(r, x.i, y.i), block_diag(r, x.j, y.j),
                        block_diag(r, x.p, y.p), block_diag(r, x.q, y.q))


__all__ = [
    "BinaryComplex", "NenashevDSES", "SES", "top", "bot", "diag", "is_diagonal", "validate_binary",
    "direct_sum_binary", "shift_binary", "h_functor", "h_ses_witnesses", "validate_binary_map",
    "validate_ses", "ses_top", "ses_bot", "validate_dses", "embed_nenashev", "direct_sum_dses",
]
