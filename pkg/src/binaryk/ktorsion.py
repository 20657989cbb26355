"""Torsion of based acyclic complexes and the K_1 class of binary acyclic complexes.

For an acyclic complex with standard bases, pick in each degree the greedy
pivot columns ``b_n`` of ``d_n`` (their images form a basis of ``im d_n``).
The torsion is the alternating product

    prod_n det[ d_{n+1}(b_{n+1}) | e_{b_n} ] ^ ((-1)^n)

normalized so that ``0 -> k --a--> k -> 0`` in degrees 1, 0 has torsion ``a``.
It is independent of the choice of ``b_n`` and satisfies ``torsion(cone(id)) = 1``.
Shift and based short exact sequences change it only by signs that depend on
ranks alone (see :func:`shift_sign` and :func:`ses_sign`); those signs cancel
in :func:`k1_class` because both rows of a binary acyclic complex have equal
ranks in every degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .binary import BinaryComplex, NenashevDSES, bot, embed_nenashev, top, validate_dses
from .complexes import ChainComplex, is_acyclic
from .errors import CalibrationError, InvalidInput, NotAcyclic, NotAField
from .exactrings import Matrix, det, hstack, inverse, pivot_columns, right_inverse
from .exactrings.rings import Integers, Rationals, Ring


@dataclass(frozen=True)
class UnitClass:
    ring: Ring
    value: object

    def __post_init__(self):
        if self.ring.is_zero(self.value):
            raise ValueError("unit class must be nonzero")

    def __mul__(self, other: "UnitClass") -> "UnitClass":
        return UnitClass(self.ring, self.ring.mul(self.value, other.value))

    def __truediv__(self, other: "UnitClass") -> "UnitClass":
        return UnitClass(self.ring, self.ring.div(self.value, other.value))

    def inverse(self) -> "UnitClass":
        return UnitClass(self.ring, self.ring.inv(self.value))

    def __pow__(self, k: int) -> "UnitClass":
        return UnitClass(self.ring, self.ring.pow(self.value, k))

    def is_one(self) -> bool:
        return self.value == self.ring.one

    def __str__(self) -> str:
        return self.ring.display(self.value)


def ranks(c: ChainComplex) -> dict[int, int]:
    """``r_n = rank(d_{n+1})`` computed from dimensions (valid for acyclic c)."""
    out: dict[int, int] = {}
    b = c.bounds()
    if b is None:
        return out
    acc = 0
    for n in range(b[0], b[1] + 1):
        acc = c.dim(n) - acc
        out[n] = acc
    return out


def shift_sign(c: ChainComplex) -> int:
    """``torsion(shift(c)) == shift_sign(c) * torsion(c)**-1``."""
    return -1 if sum(ranks(c).values()) % 2 else 1


def ses_sign(left: ChainComplex, right: ChainComplex) -> int:
    """Sign in ``torsion(mid) = sign * torsion(left) * torsion(right)`` for the
    block-compatible basis (left basis first, then a lift of the right basis)."""
    rl, rr = ranks(left), ranks(right)
    e = sum(rr.get(n, 0) * rl.get(n - 1, 0) for n in set(rr) | {n + 1 for n in rl})
    return -1 if e % 2 else 1


def _torsion_value(c: ChainComplex):
    ring = c.ring
    piv = {n: pivot_columns(c.diff(n)) for n in c.dims}
    value = ring.one
    for n, dim in c.dims.items():
        upper = c.diff(n + 1).submatrix(cols=piv.get(n + 1, [])) if c.dim(n + 1) else Matrix(ring, dim, 0)
        z, o = ring.zero, ring.one
        basis = Matrix(ring, dim, len(piv[n]), [[o if r == j else z for j in piv[n]] for r in range(dim)])
        m = hstack(ring, dim, [upper, basis])
        if m.cols != dim:
            raise NotAcyclic(f"complex is not acyclic at degree {n}")
        dn = det(m)
        if ring.is_zero(dn):
            raise NotAcyclic(f"complex is not acyclic at degree {n}")
        value = ring.mul(value, dn if n % 2 == 0 else ring.inv(dn))
    return value


def torsion(c: ChainComplex) -> UnitClass:
    ring = c.ring
    if isinstance(ring, Integers):
        # Z-acyclic complexes of free modules have torsion +-1; compute over Q.
        if not is_acyclic(c):
            raise NotAcyclic("complex is not acyclic over Z")
        q = ChainComplex(Rationals(), c.dims, {n: m.map(Fraction, Rationals()) for n, m in c.d.items()})
        v = _torsion_value(q)
        if v not in (1, -1):
            raise AssertionError(f"integral torsion {v} is not a unit")
        return UnitClass(ring, int(v))
    if not ring.is_field:
        raise NotAField(f"torsion needs a field, got {ring}")
    if not is_acyclic(c):
        raise NotAcyclic("torsion of a non-acyclic complex")
    return UnitClass(ring, _torsion_value(c))


def k1_class(n: BinaryComplex) -> UnitClass:
    """``torsion(⊤N) / torsion(⊥N)``: the class of ``[N] - [Δ⊥N]`` in k*."""
    if not n.is_acyclic():
        raise NotAcyclic("k1_class needs both rows acyclic")
    return torsion(top(n)) / torsion(bot(n))


def nenashev_det_oracle(n: NenashevDSES, reverse_pivots: bool = False) -> UnitClass:
    """``det(Q^-1 P)`` for ``P = [i | s_p]``, ``Q = [j | s_q]`` with sections of p, q."""
    v = validate_dses(n)
    if not v:
        raise InvalidInput(f"invalid double short exact sequence: {v.message}")
    ring = n.ring
    ring.require_field()
    sp = right_inverse(n.p, reverse=reverse_pivots)
    sq = right_inverse(n.q, reverse=reverse_pivots)
    P = hstack(ring, n.b, [n.i, sp])
    Q = hstack(ring, n.b, [n.j, sq])
    return UnitClass(ring, det(inverse(Q) @ P))


def calibrate_epsilon(samples: Iterable[NenashevDSES]) -> int:
    """The single exponent e in {+1, -1} with k1_class(embed(s)) == oracle(s)**e for all samples."""
    candidates = {1, -1}
    count = 0
    for s in samples:
        count += 1
        lhs = k1_class(embed_nenashev(s))
        rhs = nenashev_det_oracle(s)
        candidates = {e for e in candidates if lhs == rhs ** e}
        if not candidates:
            raise CalibrationError(f"sample {count - 1} is consistent with neither exponent")
    # tie-break when every sample has oracle value +-1
    return 1 if 1 in candidates else -1


def elementary_binary(ring: Ring, a, degree: int = 0) -> BinaryComplex:
    """Two-term binary complex with top differential a and bottom differential 1."""
    one = Matrix(ring, 1, 1, [[ring.one]])
    return BinaryComplex(ring, {degree + 1: 1, degree: 1}, {degree + 1: Matrix(ring, 1, 1, [[a]])},
                         {degree + 1: one})
