from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binaryk.errors import DimensionMismatch, NotAField, ParseError, RingMismatch
from binaryk.exactrings import (QQ, ZZ, ExtensionField, Matrix, PrimeField, det, field_embed, inverse,
                                invariant_factors, is_irreducible, mat_mul, rank, rank_and_kernel,
                                ring_from_descriptor, ring_from_string, snf, solve)
from binaryk.suites import cofactor_det, naive_matmul

from .strategies import FIELDS, RINGS, elements, matrices

F2, F5 = PrimeField(2), PrimeField(5)
F4 = ring_from_string("F4")


def m(ring, rows):
    return Matrix.parse(ring, rows)


# mat_mul

def test_identity_times_a():
    a = m(F5, [[1, 2], [3, 4]])
    assert Matrix.identity(F5, 2) @ a == a


def test_f2_product():
    assert m(F2, [[1, 1], [0, 1]]) @ m(F2, [[1, 0], [1, 1]]) == m(F2, [[0, 1], [1, 1]])


def test_empty_product_shape():
    c = Matrix(F5, 0, 3) @ Matrix(F5, 3, 2)
    assert c.shape == (0, 2)
    # inner dimension zero gives a zero matrix, not an empty one
    assert Matrix(F5, 2, 0) @ Matrix(F5, 0, 3) == Matrix(F5, 2, 3)


def test_mat_mul_errors():
    with pytest.raises(DimensionMismatch):
        Matrix(F5, 2, 2) @ Matrix(F5, 3, 1)
    with pytest.raises(RingMismatch):
        mat_mul(Matrix(F5, 1, 1), Matrix(PrimeField(7), 1, 1))


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_mat_mul_matches_naive(ring, data):
    a = data.draw(matrices(ring))
    b = data.draw(matrices(ring, rows=a.cols))
    assert (a @ b).tolist() == naive_matmul(a, b)


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_mat_mul_associative(ring, data):
    a = data.draw(matrices(ring, max_dim=3))
    b = data.draw(matrices(ring, rows=a.cols, max_dim=3))
    c = data.draw(matrices(ring, rows=b.cols, max_dim=3))
    assert (a @ b) @ c == a @ (b @ c)


# rank and kernel

def test_rank_kernel_examples():
    r, k = rank_and_kernel(Matrix(F5, 3, 3))
    assert r == 0 and k == Matrix.identity(F5, 3)
    r, k = rank_and_kernel(Matrix.identity(QQ, 4))
    assert r == 4 and k.shape == (4, 0)
    r, k = rank_and_kernel(m(QQ, [[1, 2], [2, 4]]))
    assert r == 1 and k.shape == (2, 1)
    # spanned by (-2, 1)
    assert k[0, 0] == -2 * k[1, 0] and k[1, 0] != 0


def test_rank_kernel_rejects_z():
    with pytest.raises(NotAField):
        rank_and_kernel(m(ZZ, [[2]]))


@pytest.mark.parametrize("ring", FIELDS, ids=str)
@given(data=st.data())
def test_rank_nullity(ring, data):
    a = data.draw(matrices(ring))
    r, k = rank_and_kernel(a)
    assert r + k.cols == a.cols
    assert (a @ k).is_zero()
    assert rank(k) == k.cols


# det

def test_det_examples():
    assert det(Matrix.identity(F5, 4)) == 1
    assert det(m(QQ, [[1, 1], [0, 2]])) == 2
    assert det(Matrix(QQ, 0, 0)) == 1
    with pytest.raises(DimensionMismatch):
        det(Matrix(F5, 1, 2))


@pytest.mark.parametrize("ring", RINGS, ids=str)
@given(data=st.data())
def test_det_multiplicative_and_cofactor(ring, data):
    n = data.draw(st.integers(0, 4))
    a = data.draw(matrices(ring, n, n))
    b = data.draw(matrices(ring, n, n))
    assert det(a @ b) == ring.mul(det(a), det(b))
    assert det(a) == cofactor_det(a)


@pytest.mark.parametrize("ring", FIELDS, ids=str)
@given(data=st.data())
def test_inverse_and_solve(ring, data):
    n = data.draw(st.integers(1, 4))
    a = data.draw(matrices(ring, n, n))
    if ring.is_zero(det(a)):
        with pytest.raises(ZeroDivisionError):
            inverse(a)
        return
    ai = inverse(a)
    assert a @ ai == Matrix.identity(ring, n) == ai @ a
    b = data.draw(matrices(ring, n, 1))
    assert a @ solve(a, b) == b


def test_integer_inverse_needs_unimodular():
    assert inverse(m(ZZ, [[2, 1], [1, 1]])) == m(ZZ, [[1, -1], [-1, 2]])
    with pytest.raises(ZeroDivisionError):
        inverse(m(ZZ, [[2, 0], [0, 1]]))


# Smith normal form

def test_snf_examples():
    assert snf(Matrix.identity(ZZ, 2))[1] == Matrix.identity(ZZ, 2)
    assert snf(m(ZZ, [[2, 0], [0, 3]]))[1] == m(ZZ, [[1, 0], [0, 6]])
    assert snf(m(ZZ, [[0]]))[1] == m(ZZ, [[0]])
    with pytest.raises(RingMismatch):
        snf(m(F5, [[1]]))


@given(a=st.integers(-30, 30), b=st.integers(-30, 30))
def test_snf_diagonal_2x2_gcd_lcm(a, b):
    from math import gcd
    g = gcd(a, b)
    l = abs(a * b) // g if g else 0
    assert invariant_factors(m(ZZ, [[a, 0], [0, b]])) == [f for f in (g, l) if f]


@given(matrices(ZZ))
def test_snf_reconstructs(a):
    u, s, v = snf(a)
    assert u @ a @ v == s
    assert det(u) in (1, -1) and det(v) in (1, -1)
    diag = [s[i, i] for i in range(min(s.shape))]
    assert all(s[i, j] == 0 for i in range(s.rows) for j in range(s.cols) if i != j)
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)


# rings

F4_TABLE = {  # hand table of F2[x]/(x^2+x+1): elements 0, 1, x, x+1
    ("x", "x"): "x+1", ("x", "x+1"): "1", ("x+1", "x+1"): "x",
    ("1", "x"): "x", ("1", "x+1"): "x+1", ("1", "1"): "1",
}


def test_f4_multiplication_table():
    for (a, b), c in F4_TABLE.items():
        assert F4.to_str(F4.mul(F4.parse(a), F4.parse(b))) == c
        assert F4.to_str(F4.mul(F4.parse(b), F4.parse(a))) == c
    assert F4.to_str(F4.add(F4.parse("x"), F4.parse("x+1"))) == "1"


@pytest.mark.parametrize("name", ["F4", "F8", "F9", "F25", "F27", "F2^4", "F5", "F7"])
def test_units_satisfy_fermat(name):
    k = ring_from_string(name)
    for x in k.elements():
        if not k.is_zero(x):
            assert k.pow(x, k.order - 1) == k.one
            assert k.mul(x, k.inv(x)) == k.one


@pytest.mark.parametrize("ring", FIELDS, ids=str)
@given(data=st.data())
def test_field_axioms(ring, data):
    a, b, c = (data.draw(elements(ring)) for _ in range(3))
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.add(a, ring.neg(a)) == ring.zero
    assert ring.parse(ring.to_str(a)) == a
    if not ring.is_zero(b):
        assert ring.mul(ring.div(a, b), b) == a


def test_irreducibility_is_checked():
    assert is_irreducible([1, 1, 1], 2)
    assert not is_irreducible([1, 0, 1], 2)  # (x+1)^2
    with pytest.raises(ParseError):
        ExtensionField(2, [1, 0, 1])
    with pytest.raises(ParseError):
        PrimeField(9)


def test_modulus_made_monic():
    k = ExtensionField(5, [4, 0, 2])  # 2x^2 + 4 ~ x^2 + 2
    assert k.modulus == (2, 0, 1)


def test_rationals_stay_reduced():
    x = QQ.parse("4/6")
    assert x == Fraction(2, 3) and QQ.to_str(x) == "2/3"
    assert QQ.parse("3/6") == Fraction(1, 2)
    assert QQ.to_str(QQ.parse("5")) == "5"


def test_descriptors_round_trip():
    for ring in RINGS:
        assert ring_from_descriptor(ring.descriptor()) == ring
    assert ring_from_descriptor({"ring": "Fq", "p": 2, "modulus": [1, 1, 1]}) == F4
    with pytest.raises(ParseError):
        ring_from_descriptor({"ring": "Fq", "p": 2})
    with pytest.raises(ParseError):
        ring_from_descriptor({"ring": "R"})


def test_ring_names():
    assert ring_from_string("F25").modulus == (2, 0, 1)
    assert ring_from_string("F2^3").order == 8
    with pytest.raises(ParseError):
        ring_from_string("F6")


def test_field_embed():
    f25 = ring_from_string("F25")
    assert field_embed(0, F5, f25) == 0
    assert field_embed(1, F2, F4) == F4.one
    assert f25.to_str(field_embed(2, F5, f25)) == "2"
    with pytest.raises(RingMismatch):
        field_embed(1, F2, f25)


def test_element_display():
    assert F5.display(3) == "3 mod 5"
    assert QQ.display(Fraction(2, 7)) == "2/7"
    assert F4.display(F4.parse("x+1")) == "x+1 in F4"
