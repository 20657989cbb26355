import pytest
from hypothesis import given

from binaryk.binary import diag
from binaryk.complexes import ChainComplex, ChainMap, euler_char
from binaryk.errors import NotAcyclic, RingMismatch
from binaryk.exactrings import PrimeField, ring_from_string
from binaryk.ktorsion import elementary_binary
from binaryk.randgen import (random_acyclic, random_binary_acyclic, random_diagonal_triple, random_evaluable_triple,
                             random_triple, random_triple_ses, random_weak_equivalence)
from binaryk.relative import (ExactFunctorSpec, RelClass, RelTriple, base_change, boundary, certify_rel_relation,
                              correction_bracket, from_k1, in_source_units, rel_class, validate_triple)

from .strategies import rng_from, seeds

F2 = PrimeField(2)
F4 = ring_from_string("F4")
F2F4 = ExactFunctorSpec(F2, F4)


def test_functor_checks():
    assert F2F4.check_embedding()
    with pytest.raises(RingMismatch):
        ExactFunctorSpec(F2, ring_from_string("F25"))
    with pytest.raises(RingMismatch):
        ExactFunctorSpec.identity(F2).__class__(F2, F4, "identity")
    assert ExactFunctorSpec.identity(F4).source == F4


def test_source_units():
    x = F4.parse("x")
    assert in_source_units(F4.one, F2F4)
    assert not in_source_units(x, F2F4)
    assert not in_source_units(F4.mul(x, x), F2F4)


def test_generator_has_order_three():
    x = F4.parse("x")
    c = rel_class(from_k1(elementary_binary(F4, x), F2F4), F2F4)
    assert c.order() == 3
    assert str(c) == "[x] in F4*/F2*"
    assert (c * c * c).is_trivial()


def test_cosets_all_realized():
    seen = {rel_class(from_k1(elementary_binary(F4, a), F2F4), F2F4) for a in (F4.parse(s) for s in ("1", "x", "x+1"))}
    assert len({c.order() for c in seen}) == 2
    classes = [RelClass(F2F4, F4.parse(s)) for s in ("1", "x", "x+1")]
    assert all(classes[i] != classes[j] for i in range(3) for j in range(i))


def test_from_k1_requires_acyclic():
    n = diag(ChainComplex.concentrated(F4, 0, 1))
    with pytest.raises(NotAcyclic):
        from_k1(n, F2F4)


@given(seeds)
def test_from_k1_boundary_zero(seed):
    n = random_binary_acyclic(F4, 3, rng_from(seed))
    assert boundary(from_k1(n, F2F4)) == 0


@given(seeds)
def test_source_k1_trivial(seed):
    n = random_binary_acyclic(F2, 3, rng_from(seed))
    assert rel_class(from_k1(base_change(n, F2F4), F2F4), F2F4).is_trivial()


@given(seeds)
def test_evaluable_triples_validate(seed):
    t = random_evaluable_triple(F2F4, 3, rng_from(seed))
    assert validate_triple(t, F2F4)
    assert in_source_units(correction_bracket(t, F2F4).value, F2F4)
    rel_class(t, F2F4)


@given(seeds)
def test_general_triples_validate(seed):
    t = random_triple(F2F4, 3, rng_from(seed))
    assert validate_triple(t, F2F4)
    # boundary equals the Euler characteristic difference of the rows of N
    assert boundary(t) == euler_char(ChainComplex(F4, t.n.dims)) - euler_char(ChainComplex(F4, t.n.dims)) == 0


@pytest.mark.parametrize("make", [random_triple_ses, random_weak_equivalence, random_diagonal_triple],
                         ids=["ses", "weak", "diagonal"])
@given(seed=seeds)
def test_relations_certified(make, seed):
    assert certify_rel_relation(make(F2F4, 2, rng_from(seed)))


def test_broken_quasi_iso_rejected():
    m = random_acyclic(F2, 2, rng_from(1))
    fm = base_change(m, F2F4)
    z = ChainComplex(F4)
    n = from_k1(elementary_binary(F4, F4.one), F2F4).n
    t = RelTriple(m, ChainComplex(F2), n, ChainMap(fm, ChainComplex(F4, n.dims)), ChainMap(z, ChainComplex(F4, n.dims)))
    v = validate_triple(t, F2F4)
    assert not v


def test_invalid_triple_boundary_counts_ranks():
    k = ChainComplex.concentrated(F2, 0, 1)
    z = ChainComplex(F2)
    n = diag(ChainComplex(F4))
    t = RelTriple(k, z, n, ChainMap(base_change(k, F2F4), ChainComplex(F4)), ChainMap(ChainComplex(F4), ChainComplex(F4)))
    assert boundary(t) == 1
    assert not validate_triple(t, F2F4)
