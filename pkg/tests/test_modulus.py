from math import gcd, prod

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from commgraph import (CoprimeSplit, PreconditionError, Prime, PrimePower,
                       check_units_lemma, classify, factorize)
from commgraph.modulus import is_prime


def sieve(limit):
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if flags[p]:
            flags[p * p::p] = False
    return flags


PRIMES = sieve(10 ** 6)


@pytest.mark.parametrize("m,expected", [(2, [(2, 1)]), (4, [(2, 2)]), (6, [(2, 1), (3, 1)]),
                                        (360, [(2, 3), (3, 2), (5, 1)]), (997, [(997, 1)])])
def test_factorize_examples(m, expected):
    assert factorize(m) == expected


@pytest.mark.parametrize("m", [1, 0, -6])
def test_factorize_rejects_small(m):
    with pytest.raises(PreconditionError):
        factorize(m)


@given(st.integers(2, 10 ** 6))
def test_factorization_is_prime_and_ascending(m):
    f = factorize(m)
    assert prod(p ** e for p, e in f) == m
    assert [p for p, _ in f] == sorted({p for p, _ in f})
    assert all(PRIMES[p] and e >= 1 for p, e in f)


def test_classify_examples():
    assert classify(7) == Prime(7)
    assert classify(9) == PrimePower(3, 2)
    assert classify(12) == CoprimeSplit(s=4, t=3)
    assert classify(6) == CoprimeSplit(2, 3)
    assert classify(45) == CoprimeSplit(9, 5)


@given(st.integers(2, 10 ** 6))
def test_classify_reconstructs_and_matches_sieve(m):
    c = classify(m)
    assert c.m == m
    assert isinstance(c, Prime) == bool(PRIMES[m]) == is_prime(m)
    if isinstance(c, CoprimeSplit):
        assert c.s > 1 and c.t > 1 and gcd(c.s, c.t) == 1
        assert c.s == factorize(m)[0][0] ** factorize(m)[0][1]


def test_composites_below_ten_thousand_never_prime():
    for m in range(4, 10_001):
        if not PRIMES[m]:
            assert not isinstance(classify(m), Prime), m


@pytest.mark.parametrize("args", [(1, 1, 2, 3, 1, 1), (5, 7, 2, 3, 3, 2), (1, 1, 1, 1, 1, 1),
                                  (-1, 1, 2, 3, 1, 1), (7, 11, 4, 9, 5, 8)])
def test_units_examples(args):
    assert check_units_lemma(*args) is True


@pytest.mark.parametrize("args", [(2, 1, 2, 3, 1, 1), (1, 1, 4, 6, 1, 1), (1, 1, 2, 3, 0, 1),
                                  (1, 1, 2, 3, 1, 0), (3, 5, 7, 3, 1, 1)])
def test_units_preconditions(args):
    with pytest.raises(PreconditionError):
        check_units_lemma(*args)


@given(st.lists(st.integers(1, 10 ** 6), min_size=4, max_size=4), st.integers(1, 40), st.integers(1, 40))
def test_units_matches_direct_gcd(vals, k, l):
    u, v, s, t = vals
    if any(gcd(a, b) != 1 for i, a in enumerate(vals) for b in vals[i + 1:]):
        with pytest.raises(PreconditionError):
            check_units_lemma(u, v, s, t, k, l)
    else:
        assert check_units_lemma(u, v, s, t, k, l) == (gcd(u * s ** k + v * t ** l, s * t) == 1)
