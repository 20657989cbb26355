import pytest
from hypothesis import given

from binaryk.complexes import (ChainComplex, ChainMap, cone, direct_sum, euler_char, homology, homology_all,
                               identity_map, is_acyclic, is_quasi_iso, naive_filtration, naive_truncate,
                               shift, validate_chain_map, validate_complex)
from binaryk.exactrings import QQ, ZZ, Matrix, PrimeField
from binaryk.randgen import quasi_iso_extension, random_acyclic, random_complex
from binaryk.suites import homology_dims

from .strategies import rng_from, seeds

F5 = PrimeField(5)


def elementary(ring, a):
    return ChainComplex.elementary(ring, a, 0)


def test_elementary_complex():
    c = elementary(F5, 3)
    assert validate_complex(c)
    assert dict(c.dims) == {1: 1, 0: 1}
    assert is_acyclic(c)
    assert not is_acyclic(elementary(F5, 0))


def test_d_squared_witness():
    d = {2: Matrix.parse(F5, [[1]]), 1: Matrix.parse(F5, [[1]])}
    v = validate_complex(ChainComplex(F5, {2: 1, 1: 1, 0: 1}, d))
    assert not v and v.witness["degree"] == 2


def test_shape_mismatch_rejected():
    v = validate_complex(ChainComplex(F5, {1: 2, 0: 1}, {1: Matrix.parse(F5, [[1]])}))
    assert not v


def test_integer_homology():
    c = ChainComplex(ZZ, {1: 1, 0: 1}, {1: Matrix.parse(ZZ, [[2]])})
    h = homology_all(c)
    assert str(h[0]) == "Z/2" and str(h[1]) == "0"
    assert not is_acyclic(c)
    # over Q the same complex is acyclic
    assert is_acyclic(ChainComplex(QQ, {1: 1, 0: 1}, {1: Matrix.parse(QQ, [[2]])}))


def test_rational_homology_rank():
    c = ChainComplex(QQ, {1: 2, 0: 1}, {1: Matrix.parse(QQ, [[1, 1]])})
    assert homology(c, 1) == 1 and homology(c, 0) == 0


def test_shift_negates_differential():
    c = elementary(F5, 2)
    s = shift(c)
    assert dict(s.dims) == {2: 1, 1: 1}
    assert s.diff(2) == Matrix.parse(F5, [[3]])
    assert shift(s, -1) == c


def test_cone_of_identity_layout():
    c = elementary(F5, 2)
    k = cone(identity_map(c))
    assert dict(k.dims) == {2: 1, 1: 2, 0: 1}
    assert validate_complex(k) and is_acyclic(k)


def test_naive_truncate_quotient():
    c = random_acyclic(F5, 3, rng_from(4))
    lo, hi = c.bounds()
    sub, inc, quo = naive_truncate(c, lo)
    assert validate_chain_map(inc)
    # the quotient of consecutive stages is one object placed in degree lo + 1
    assert dict(quo.dims) == {lo + 1: c.dim(lo + 1)}
    assert dict(sub.dims) == {n: k for n, k in c.dims.items() if n <= lo}
    assert naive_filtration(c)[-1][1].target == c


@given(seeds)
def test_cone_identity_acyclic(seed):
    c = random_complex(F5, 3, rng_from(seed))
    assert is_acyclic(cone(identity_map(c)))


@given(seeds, seeds)
def test_euler_identities(s1, s2):
    a, b = random_complex(QQ, 3, rng_from(s1)), random_complex(QQ, 3, rng_from(s2))
    assert euler_char(direct_sum(a, b)) == euler_char(a) + euler_char(b)
    assert euler_char(shift(a)) == -euler_char(a)
    assert euler_char(cone(identity_map(a))) == 0
    h = homology_dims(a)
    assert euler_char(a) == sum((-1) ** n * k for n, k in h.items())


@given(seeds)
def test_quasi_iso_extension(seed):
    rng = rng_from(seed)
    c = random_complex(F5, 2, rng)
    d, u = quasi_iso_extension(c, rng)
    assert validate_chain_map(u)
    assert is_quasi_iso(u)
    nonzero = lambda h: {n: k for n, k in h.items() if k}  # noqa: E731
    assert nonzero(homology_dims(c)) == nonzero(homology_dims(d))


def test_non_chain_map_rejected():
    c = elementary(F5, 1)
    bad = ChainMap(c, c, {1: Matrix.parse(F5, [[1]]), 0: Matrix.parse(F5, [[2]])})
    assert not validate_chain_map(bad)
    assert validate_chain_map(identity_map(c))


def test_zero_complex():
    z = ChainComplex.zero(F5)
    assert z.is_zero() and is_acyclic(z) and euler_char(z) == 0
    assert naive_filtration(z) == []
    with pytest.raises(Exception):
        naive_truncate(ChainComplex.concentrated(F5, -1, 1), 0)
