"""Relative generators (M, N, u) for an exact functor F, and their invariants.

A triple holds a pair of complexes ``M = (M+, M-)`` over the source ring, a
binary complex N over the target ring, and quasi-isomorphisms
``u+: F(M+) -> ⊤N``, ``u-: F(M-) -> ⊥N``.

Supported functors are base change along a field embedding ``F_p -> F_q`` (or
``F_p -> F_p``) and the identity.  For triples whose N lies in B^q the class in
``K*/k*`` is computable (:func:`rel_class`).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .binary import (SES, BinaryComplex, bot, diag, direct_sum_binary, top, validate_binary,
                     validate_binary_map, validate_ses)
from .complexes import (ChainComplex, ChainMap, cone, direct_sum, direct_sum_maps, euler_char,
                        is_acyclic, validate_chain_map, validate_complex)
from .errors import InvalidInput, NotAcyclic, RingMismatch
from .exactrings import Matrix, is_invertible
from .exactrings.rings import PrimeField, Ring
from .ktorsion import UnitClass, k1_class, torsion
from .verdict import OK, Verdict


@dataclass(frozen=True)
class ExactFunctorSpec:
    source: Ring
    target: Ring
    kind: str = "base_change"

    def __post_init__(self):
        if self.kind == "identity":
            if self.source != self.target:
                raise RingMismatch("identity functor needs equal rings")
            return
        if self.kind != "base_change":
            raise InvalidInput(f"unknown functor kind {self.kind!r}")
        if self.source == self.target:
            return
        if not isinstance(self.source, PrimeField) or not self.target.is_field \
                or self.target.characteristic != self.source.p:
            raise RingMismatch(f"no supported embedding {self.source} -> {self.target}")
        if not self.check_embedding():
            raise RingMismatch("embedding is not a unital ring homomorphism")

    @classmethod
    def identity(cls, ring: Ring) -> "ExactFunctorSpec":
        return cls(ring, ring, "identity")

    def scalar(self, x):
        if self.source == self.target:
            return x
        return self.target.from_int(x)

    def check_embedding(self) -> bool:
        s, t = self.source, self.target
        if self.scalar(s.one) != t.one:
            return False
        gens = list(s.elements()) if s.order and s.order <= 64 else [s.one, s.from_int(2)]
        for a in gens:
            for b in gens:
                if self.scalar(s.add(a, b)) != t.add(self.scalar(a), self.scalar(b)):
                    return False
                if self.scalar(s.mul(a, b)) != t.mul(self.scalar(a), self.scalar(b)):
                    return False
        return True

    def matrix(self, m: Matrix) -> Matrix:
        if m.ring != self.source:
            raise RingMismatch(f"matrix over {m.ring}, functor source {self.source}")
        if self.source == self.target:
            return m
        return m.map(self.scalar, self.target)

    def descriptor(self) -> dict[str, Any]:
        return {"functor": self.kind, "source": self.source.descriptor(), "target": self.target.descriptor()}


def base_change(obj, f: ExactFunctorSpec):
    """Apply F to a complex, chain map or binary complex (entrywise on matrices)."""
    if isinstance(obj, ChainComplex):
        if obj.ring != f.source:
            raise RingMismatch(f"complex over {obj.ring}, functor source {f.source}")
        return ChainComplex(f.target, obj.dims, {n: f.matrix(m) for n, m in obj.d.items()})
    if isinstance(obj, BinaryComplex):
        if obj.ring != f.source:
            raise RingMismatch(f"complex over {obj.ring}, functor source {f.source}")
        return BinaryComplex(f.target, obj.dims, {n: f.matrix(m) for n, m in obj.top_d.items()},
                             {n: f.matrix(m) for n, m in obj.bot_d.items()})
    if isinstance(obj, ChainMap):
        return ChainMap(base_change(obj.source, f), base_change(obj.target, f),
                        {n: f.matrix(m) for n, m in obj.comps.items()})
    if isinstance(obj, Matrix):
        return f.matrix(obj)
    raise TypeError(f"cannot base change {type(obj).__name__}")


@dataclass(frozen=True)
class RelTriple:
    m_plus: ChainComplex
    m_minus: ChainComplex
    n: BinaryComplex
    u_plus: ChainMap
    u_minus: ChainMap


def validate_triple(t: RelTriple, f: ExactFunctorSpec) -> Verdict:
    for name, c in (("M+", t.m_plus), ("M-", t.m_minus)):
        if c.ring != f.source:
            return Verdict.failed(f"{name} is over {c.ring}, expected {f.source}", part=name)
        v = validate_complex(c)
        if not v:
            return Verdict.failed(f"{name}: {v.message}", part=name, **v.witness)
    if t.n.ring != f.target:
        return Verdict.failed(f"N is over {t.n.ring}, expected {f.target}", part="N")
    v = validate_binary(t.n)
    if not v:
        return Verdict.failed(f"N: {v.message}", part="N", **v.witness)
    for name, u, m, row in (("u+", t.u_plus, t.m_plus, top(t.n)), ("u-", t.u_minus, t.m_minus, bot(t.n))):
        fm = base_change(m, f)
        if u.source != fm or u.target != row:
            return Verdict.failed(f"{name} does not go from F(M) to the matching row of N", part=name)
        v = validate_chain_map(u)
        if not v:
            return Verdict.failed(f"{name}: {v.message}", part=name, **v.witness)
        if not is_acyclic(cone(u)):
            return Verdict.failed(f"{name} is not a quasi-isomorphism", part=name)
    return OK


def is_p_weak_equivalence(phi: tuple[ChainMap, ChainMap], psi: ChainMap) -> bool:
    """Both components of phi are quasi-isomorphisms and psi is an isomorphism
    of binary complexes."""
    for component in phi:
        if not validate_chain_map(component) or not is_acyclic(cone(component)):
            return False
    if not validate_binary_map(psi):
        return False
    if dict(psi.source.dims) != dict(psi.target.dims):
        return False
    return all(is_invertible(psi.comp(n)) for n in psi.source.dims)


def boundary(t: RelTriple) -> int:
    """``χ(M+) - χ(M-)`` in K_0 of the source (ranks)."""
    return euler_char(t.m_plus) - euler_char(t.m_minus)


def from_k1(n: BinaryComplex, f: ExactFunctorSpec) -> RelTriple:
    """The triple ``(0, N, 0)``."""
    if n.ring != f.target:
        raise RingMismatch(f"N over {n.ring}, functor target {f.target}")
    if not n.is_acyclic():
        raise NotAcyclic("from_k1 needs N in B^q")
    z = ChainComplex(f.source)
    fz = ChainComplex(f.target)
    return RelTriple(z, z, n, ChainMap(fz, top(n)), ChainMap(fz, bot(n)))


def in_source_units(z, f: ExactFunctorSpec) -> bool:
    """Whether a unit of the target lies in the image of the source units."""
    t = f.target
    if f.source == t:
        return True
    k = f.source.order
    return t.pow(z, k - 1) == t.one


@dataclass(frozen=True)
class RelClass:
    """An element of ``K*/k*`` represented by a unit of the target field."""

    functor: ExactFunctorSpec
    value: Any

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RelClass) or other.functor != self.functor:
            return NotImplemented
        t = self.functor.target
        return in_source_units(t.div(self.value, other.value), self.functor)

    def __hash__(self) -> int:
        return hash(self.functor)

    def __mul__(self, other: "RelClass") -> "RelClass":
        return RelClass(self.functor, self.functor.target.mul(self.value, other.value))

    def is_trivial(self) -> bool:
        return in_source_units(self.value, self.functor)

    def order(self) -> int | None:
        """Order in K*/k*, or None when infinite (never happens for finite fields)."""
        t = self.functor.target
        if self.functor.source == t:
            return 1
        bound = (t.order - 1) // (self.functor.source.order - 1)
        x = self.value
        for m in range(1, bound + 1):
            if in_source_units(x, self.functor):
                return m
            x = t.mul(x, self.value)
        raise AssertionError("class order exceeds |K*|/|k*|")

    def __str__(self) -> str:
        t = self.functor.target
        return f"[{t.to_str(self.value)}] in {t}*/{self.functor.source}*"


def correction_bracket(t: RelTriple, f: ExactFunctorSpec) -> UnitClass:
    """``torsion(F M+) / torsion(F M-)``; lies in the embedded source units."""
    return torsion(base_change(t.m_plus, f)) / torsion(base_change(t.m_minus, f))


def rel_class(t: RelTriple, f: ExactFunctorSpec, validate: bool = True) -> RelClass:
    if validate:
        v = validate_triple(t, f)
        if not v:
            raise InvalidInput(f"invalid triple: {v.message}")
    if not t.n.is_acyclic():
        raise NotAcyclic("rel_class is only defined for triples with N in B^q")
    corr = correction_bracket(t, f)
    if not in_source_units(corr.value, f):
        raise AssertionError("correction bracket left the embedded source units")
    value = k1_class(t.n) / corr
    return RelClass(f, value.value)


# relations

@dataclass(frozen=True)
class TripleMorphism:
    source: RelTriple
    target: RelTriple
    phi_plus: ChainMap
    phi_minus: ChainMap
    psi: ChainMap


@dataclass(frozen=True)
class WeakEquivRelation:
    """``[X] = [Y]`` for a p-weak equivalence X -> Y."""

    morphism: TripleMorphism
    functor: ExactFunctorSpec


@dataclass(frozen=True)
class TripleSESRelation:
    """``[Y] = [X] + [Z]`` for a short exact sequence of triples."""

    left: RelTriple
    middle: RelTriple
    right: RelTriple
    mono: TripleMorphism
    epi: TripleMorphism
    functor: ExactFunctorSpec


@dataclass(frozen=True)
class TripleDiagonalRelation:
    """``[X] = 0`` for X = (ΔM, ΔN, Δu)."""

    triple: RelTriple
    functor: ExactFunctorSpec


def check_morphism(m: TripleMorphism, f: ExactFunctorSpec) -> Verdict:
    s, t = m.source, m.target
    for name, phi, src, tgt in (("phi+", m.phi_plus, s.m_plus, t.m_plus), ("phi-", m.phi_minus, s.m_minus, t.m_minus)):
        if phi.source != src or phi.target != tgt:
            return Verdict.failed(f"{name} has the wrong source or target", part=name)
        v = validate_chain_map(phi)
        if not v:
            return Verdict.failed(f"{name}: {v.message}", part=name, **v.witness)
    if m.psi.source != s.n or m.psi.target != t.n:
        return Verdict.failed("psi has the wrong source or target", part="psi")
    v = validate_binary_map(m.psi)
    if not v:
        return Verdict.failed(f"psi: {v.message}", part="psi", **v.witness)
    for name, u_s, u_t, phi, row in (("+", s.u_plus, t.u_plus, m.phi_plus, top(t.n)),
                                     ("-", s.u_minus, t.u_minus, m.phi_minus, bot(t.n))):
        fphi = base_change(phi, f)
        for n in sorted(set(fphi.source.dims) | set(row.dims)):
            if m.psi.comp(n) @ u_s.comp(n) != u_t.comp(n) @ fphi.comp(n):
                return Verdict.failed(f"square psi∘u{name} = u'{name}∘F(phi{name}) fails at degree {n}",
                                      part=f"u{name}", degree=n)
    return OK


def _evaluable(*triples: RelTriple) -> bool:
    return all(t.n.is_acyclic() for t in triples)


def certify_rel_relation(r) -> Verdict:
    """Validate the side condition of a relation and, on evaluable triples,
    that :func:`rel_class` and :func:`boundary` respect it."""
    if isinstance(r, TripleDiagonalRelation):
        t, f = r.triple, r.functor
        v = validate_triple(t, f)
        if not v:
            return v
        if t.m_plus != t.m_minus or t.u_plus.comps != t.u_minus.comps or \
                dict(t.n.top_d) != dict(t.n.bot_d):
            return Verdict.failed("triple is not diagonal")
        if boundary(t) != 0:
            return Verdict.failed("boundary of a diagonal triple is nonzero")
        if _evaluable(t) and not rel_class(t, f, validate=False).is_trivial():
            return Verdict.failed("rel_class of a diagonal triple is nontrivial")
        return OK
    if isinstance(r, WeakEquivRelation):
        m, f = r.morphism, r.functor
        for name, t in (("source", m.source), ("target", m.target)):
            v = validate_triple(t, f)
            if not v:
                return Verdict.failed(f"{name}: {v.message}", **v.witness)
        v = check_morphism(m, f)
        if not v:
            return v
        if not is_p_weak_equivalence((m.phi_plus, m.phi_minus), m.psi):
            return Verdict.failed("morphism is not a p-weak equivalence")
        if boundary(m.source) != boundary(m.target):
            return Verdict.failed("boundary differs across a weak equivalence")
        if _evaluable(m.source, m.target) and rel_class(m.source, f, False) != rel_class(m.target, f, False):
            return Verdict.failed("rel_class differs across a weak equivalence")
        return OK
    if isinstance(r, TripleSESRelation):
        f = r.functor
        for name, t in (("left", r.left), ("middle", r.middle), ("right", r.right)):
            v = validate_triple(t, f)
            if not v:
                return Verdict.failed(f"{name}: {v.message}", **v.witness)
        for name, mor in (("mono", r.mono), ("epi", r.epi)):
            v = check_morphism(mor, f)
            if not v:
                return Verdict.failed(f"{name}: {v.message}", **v.witness)
        parts = (
            ("M+", SES(r.left.m_plus, r.middle.m_plus, r.right.m_plus, r.mono.phi_plus, r.epi.phi_plus)),
            ("M-", SES(r.left.m_minus, r.middle.m_minus, r.right.m_minus, r.mono.phi_minus, r.epi.phi_minus)),
            ("N", SES(r.left.n, r.middle.n, r.right.n, r.mono.psi, r.epi.psi)),
        )
        for name, s in parts:
            v = validate_ses(s)
            if not v:
                return Verdict.failed(f"{name} sequence: {v.message}", part=name, **v.witness)
        if boundary(r.middle) != boundary(r.left) + boundary(r.right):
            return Verdict.failed("boundary is not additive on this sequence")
        if _evaluable(r.left, r.middle, r.right):
            lhs = rel_class(r.middle, f, False)
            if lhs != rel_class(r.left, f, False) * rel_class(r.right, f, False):
                return Verdict.failed("rel_class is not multiplicative on this sequence")
        return OK
    raise InvalidInput(f"unknown relation type {type(r).__name__}")


# constructions used by generators and tests

def direct_sum_triples(a: RelTriple, b: RelTriple) -> RelTriple:
    return RelTriple(direct_sum(a.m_plus, b.m_plus), direct_sum(a.m_minus, b.m_minus),
                     direct_sum_binary(a.n, b.n), direct_sum_maps(a.u_plus, b.u_plus),
                     direct_sum_maps(a.u_minus, b.u_minus))


def diagonal_triple(m: ChainComplex, c: ChainComplex, u: ChainMap) -> RelTriple:
    """``(ΔM, ΔC, Δu)`` for a quasi-isomorphism u: F(M) -> C."""
    n = diag(c)
    return RelTriple(m, m, n, ChainMap(u.source, top(n), u.comps), ChainMap(u.source, bot(n), u.comps))


def transport(t: RelTriple, psi: dict[int, Matrix]) -> tuple[RelTriple, ChainMap]:
    """Move N along a graded automorphism psi; returns the new triple and psi as a map."""
    from .exactrings import inverse

    inv = {n: inverse(g) for n, g in psi.items()}
    n = t.n
    new_top = {k: psi[k - 1] @ n.top_diff(k) @ inv[k] for k in n.dims if n.dim(k - 1)}
    new_bot = {k: psi[k - 1] @ n.bot_diff(k) @ inv[k] for k in n.dims if n.dim(k - 1)}
    n2 = BinaryComplex(n.ring, n.dims, new_top, new_bot)
    psi_map = ChainMap(n, n2, psi)
    up = ChainMap(t.u_plus.source, top(n2), {k: psi[k] @ t.u_plus.comp(k) for k in n.dims})
    um = ChainMap(t.u_minus.source, bot(n2), {k: psi[k] @ t.u_minus.comp(k) for k in n.dims})
    return RelTriple(t.m_plus, t.m_minus, n2, up, um), psi_map


__all__ = [
    "ExactFunctorSpec", "RelTriple", "RelClass", "TripleMorphism", "WeakEquivRelation",
    "TripleSESRelation", "TripleDiagonalRelation", "base_change", "validate_triple",
    "is_p_weak_equivalence", "boundary", "from_k1", "rel_class", "correction_bracket",
    "in_source_units", "certify_rel_relation", "check_morphism", "direct_sum_triples",
    "diagonal_triple", "transport",
]
