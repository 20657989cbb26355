import random

import pytest
from hypothesis import given

from binaryk.errors import InvalidInput
from binaryk.exactrings import PrimeField
from binaryk.ktorsion import k1_class
from binaryk.multicube import (BQ, CQ, DiagonalRelation, axis_bot, axis_diag, axis_top, certify_relation,
                               from_binary, is_axis_diagonal, split_ses, to_binary, validate_multicomplex)
from binaryk.randgen import corrupt_entry, random_binary_acyclic, random_multicomplex
from binaryk.suites import multi_oracle

from .strategies import rng_from, seeds

F7 = PrimeField(7)
SIGS = [(BQ, BQ), (BQ, CQ), (CQ, BQ), (CQ, CQ)]


@pytest.mark.parametrize("sig", SIGS, ids=lambda s: ",".join(s))
@given(seed=seeds)
def test_generated_objects_validate(sig, seed):
    x = random_multicomplex(F7, sig, 2, rng_from(seed))
    assert validate_multicomplex(x, sig)
    assert multi_oracle(x)


@given(seeds)
def test_bot_after_diag_is_identity(seed):
    x = random_multicomplex(F7, (CQ, CQ), 2, rng_from(seed))
    for i in range(2):
        d = axis_diag(x, i)
        assert is_axis_diagonal(d, i)
        assert axis_bot(d, i) == x == axis_top(d, i)
        assert validate_multicomplex(d, (BQ, CQ) if i == 0 else (CQ, BQ))
    with pytest.raises(InvalidInput):
        axis_diag(axis_diag(x, 0), 0)


@given(seeds)
def test_axis_functors_commute(seed):
    x = random_multicomplex(F7, (BQ, BQ), 2, rng_from(seed))
    assert axis_top(axis_bot(x, 1), 0) == axis_bot(axis_top(x, 0), 1)
    y = random_multicomplex(F7, (CQ, CQ), 2, rng_from(seed))
    assert axis_diag(axis_diag(y, 0), 1) == axis_diag(axis_diag(y, 1), 0)


def test_signature_mismatch_rejected():
    x = random_multicomplex(F7, (BQ, CQ), 1, random.Random(2))
    assert not validate_multicomplex(x, (CQ, CQ))
    assert not validate_multicomplex(x, (BQ,))


def test_corruptions_agree_with_oracle():
    rng = random.Random(5)
    rejected = 0
    for _ in range(60):
        x = random_multicomplex(F7, (BQ, BQ), 2, rng)
        y, where = corrupt_entry(x, rng)
        v = validate_multicomplex(y, (BQ, BQ))
        assert bool(v) == multi_oracle(y)
        rejected += not v
    assert rejected > 50


def test_failure_witness_names_axis():
    rng = random.Random(8)
    while True:
        y, where = corrupt_entry(random_multicomplex(F7, (CQ, CQ), 2, rng), rng)
        v = validate_multicomplex(y, (CQ, CQ))
        if not v:
            break
    assert "axis" in v.witness or "axes" in v.witness


@given(seeds, seeds)
def test_split_ses_certified(s1, s2):
    x = random_multicomplex(F7, (BQ, CQ), 1, rng_from(s1))
    z = random_multicomplex(F7, (BQ, CQ), 1, rng_from(s2))
    assert certify_relation(split_ses(x, z), (BQ, CQ))


def test_diagonal_relation_needs_diagonal():
    x = random_multicomplex(F7, (BQ, BQ), 2, random.Random(3))
    assert certify_relation(DiagonalRelation(axis_diag(axis_bot(x, 0), 0), 0), (BQ, BQ))
    if not is_axis_diagonal(x, 0):
        assert not certify_relation(DiagonalRelation(x, 0), (BQ, BQ))


@given(seeds)
def test_one_dimensional_case_is_binary(seed):
    b = random_binary_acyclic(F7, 3, rng_from(seed))
    x = from_binary(b)
    assert validate_multicomplex(x, (BQ,))
    assert to_binary(x) == b
    assert k1_class(to_binary(x)) == k1_class(b)
    assert is_axis_diagonal(x, 0) == (b.top_d == b.bot_d)
    assert axis_top(x, 0).signature() == (CQ,)
