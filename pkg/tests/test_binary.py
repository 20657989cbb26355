from hypothesis import given

from binaryk.binary import (BinaryComplex, NenashevDSES, bot, diag, direct_sum_binary, embed_nenashev, h_functor,
                            h_ses_witnesses, is_diagonal, shift_binary, top, validate_binary, validate_dses,
                            validate_ses)
from binaryk.complexes import ChainComplex
from binaryk.exactrings import Matrix, PrimeField
from binaryk.randgen import r_example, random_binary_acyclic, random_binary_ses, random_dses

from .strategies import rng_from, seeds

F5, F7 = PrimeField(5), PrimeField(7)


def test_rows_share_graded_object():
    b = random_binary_acyclic(F7, 3, rng_from(1))
    assert dict(top(b).dims) == dict(bot(b).dims) == dict(b.dims)
    assert b.is_acyclic()


def test_diag_is_diagonal():
    c = ChainComplex.elementary(F5, 2)
    assert is_diagonal(diag(c)) and top(diag(c)) == c == bot(diag(c))


def test_invalid_bottom_row_reported():
    one = Matrix.parse(F5, [[1]])
    b = BinaryComplex(F5, {2: 1, 1: 1, 0: 1}, {}, {2: one, 1: one})
    v = validate_binary(b)
    assert not v and v.witness["row"] == "bottom"


def test_h_functor_shape():
    b = random_binary_acyclic(F5, 2, rng_from(3))
    h = h_functor(b)
    for n in h.dims:
        assert h.dim(n) == b.dim(n) + b.dim(n - 1)
    assert h.is_acyclic()


@given(seeds)
def test_h_witnesses_validate(seed):
    b = random_binary_acyclic(F7, 3, rng_from(seed))
    for s in h_ses_witnesses(b):
        assert validate_ses(s)


@given(seeds)
def test_random_binary_ses_valid(seed):
    s = random_binary_ses(F5, 3, rng_from(seed))
    assert validate_ses(s)


def test_sum_and_shift_stay_acyclic():
    a = random_binary_acyclic(F5, 2, rng_from(5))
    b = random_binary_acyclic(F5, 2, rng_from(6))
    assert direct_sum_binary(a, b).is_acyclic()
    assert shift_binary(a).is_acyclic()


def test_r_example_embeds():
    n = r_example(F5, 2)
    assert validate_dses(n)
    b = embed_nenashev(n)
    assert dict(b.dims) == {2: 1, 1: 2, 0: 1}
    assert b.is_acyclic()


def test_non_exact_dses_rejected():
    n = r_example(F5, 2)
    bad = NenashevDSES(F5, 1, 2, 1, n.i, n.j, n.p, Matrix.parse(F5, [[0, 1]]))
    v = validate_dses(bad)
    assert not v and v.witness["row"] == "bottom"


@given(seeds)
def test_random_dses_valid(seed):
    assert validate_dses(random_dses(F7, 2, 1, rng_from(seed)))
