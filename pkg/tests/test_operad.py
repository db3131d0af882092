from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optensor.operad import (AssOperad, ComOperad, FiniteOperad, Monoid, check_laws,
                             com_tensor_formula, family_operads, random_operad,
                             random_operad_pairs, ru_operad, small_monoids)


@pytest.mark.parametrize("name", sorted(family_operads(3)))
def test_family_laws(name):
    assert check_laws(family_operads(3)[name]) == []


@pytest.mark.parametrize("n,size", [(0, 1), (1, 1), (2, 2), (3, 6)])
def test_ass_carrier(n, size):
    assert len(AssOperad(3).carrier(n)) == size


@pytest.mark.parametrize("n", range(4))
def test_com_carrier(n):
    assert len(ComOperad(3).carrier(n)) == 1


def test_ass_compose_and_act():
    A = AssOperad(3)
    x = (1, 2)
    assert A.compose(x, [x, A.unit]) == (1, 2, 3)
    assert A.act(x, (1, 0)) == (2, 1)
    assert A.label((2, 1)) == "s21"


@pytest.mark.parametrize("name", sorted(small_monoids()))
def test_small_monoids_are_monoids(name):
    small_monoids()[name].check()


def test_monoid_zero():
    m = small_monoids()
    assert m["z2"].zero_element() == "z"
    assert m["c3"].zero_element() is None


def test_monoid_product_size():
    M = Monoid.product(Monoid.cyclic(2), Monoid.cyclic(3))
    assert len(M) == 6
    M.check()


@pytest.mark.parametrize("name", ["trivial", "c2", "z3_idem"])
def test_ru_operad_laws(name):
    op = ru_operad(small_monoids()[name], 3)
    assert check_laws(op) == []


def test_com_tensor_formula_carrier():
    B = family_operads(3)["zm_z3_inv"]
    op = com_tensor_formula(B, 3)
    assert len(op.carrier(1)) == len(B.carrier(1))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_random_operads_satisfy_laws(seed):
    op = random_operad(random.Random(seed))
    assert all(s <= 3 for s in op.sizes())
    assert check_laws(op) == []


def test_random_pairs_deterministic():
    a = [(A.name, B.name) for A, B in random_operad_pairs(7, 5)]
    b = [(A.name, B.name) for A, B in random_operad_pairs(7, 5)]
    assert a == b and len(a) == 5


def test_finite_operad_json_roundtrip():
    op = FiniteOperad.tabulate(AssOperad(3), name="ass")
    back = FiniteOperad.from_json(op.to_json())
    assert back.to_json() == op.to_json()
    assert check_laws(back) == []


def test_check_laws_detects_broken_action():
    class Broken(AssOperad):
        def act(self, x, p):
            return x
    assert check_laws(Broken(3))
