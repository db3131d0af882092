from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from optensor import perm as P

perms = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(n))).map(tuple))


@given(perms)
def test_inverse_cancels(p):
    n = len(p)
    assert P.mul(p, P.inverse(p)) == P.identity(n) == P.mul(P.inverse(p), p)


@given(st.integers(1, 5).flatmap(
    lambda n: st.tuples(*[st.permutations(list(range(n))).map(tuple)] * 3)))
def test_mul_associative(pqr):
    p, q, r = pqr
    assert P.mul(P.mul(p, q), r) == P.mul(p, P.mul(q, r))


def test_mul_convention():
    # (p q)[i] = p[q[i]]
    assert P.mul((1, 2, 0), (0, 2, 1)) == (1, 0, 2)


@pytest.mark.parametrize("n,count", [(0, 1), (1, 1), (3, 6), (4, 24)])
def test_all_perms(n, count):
    ps = P.all_perms(n)
    assert len(ps) == len(set(ps)) == count
    assert all(P.is_perm(p) for p in ps)


def test_is_perm_rejects():
    assert not P.is_perm((0, 0))
    assert not P.is_perm((1, 2))


def test_block_sum():
    assert P.block_sum([(1, 0), (0,), (1, 0)]) == (1, 0, 2, 4, 3)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=4), st.data())
def test_block_perm_is_perm(arities, data):
    sigma = data.draw(st.permutations(list(range(len(arities)))).map(tuple))
    rho = P.block_perm(sigma, arities)
    assert P.is_perm(rho) and len(rho) == sum(arities)


@pytest.mark.parametrize("keys", [(3, 1, 2), (1, 1, 0), ("b", "a", "a", "c")])
def test_sorting_perms(keys):
    got = P.sorting_perms(keys)
    want = [p for p in itertools.permutations(range(len(keys)))
            if all(keys[p[i]] <= keys[p[i + 1]] for i in range(len(keys) - 1))]
    assert sorted(got) == sorted(want)
