from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optensor.operad import (AssOperad, CapacityError, ComOperad, ass_tensor_formula,
                             com_tensor_formula, family_operads, random_operad_pairs)
from optensor.tensor import (CoproductModel, bounded_tensor_classes, pushout_to_term,
                             tensor_binary_carrier, tensor_unary_carrier, unary_normalize)
from optensor.words import MonoidalWord, compose_words, leq

PAIRS = random_operad_pairs(3, 4)


def test_normal_form_and_epsilon():
    A = AssOperad(3)
    M = CoproductModel(A, A)
    t = M.normalize(("A", (1, 2), (("B", (1, 2), (1, 2)), ("B", (1, 2), (3, 4)))))
    assert M.encode(t) == "A:s12(B:s12(1,2),B:s12(3,4))"
    assert M.epsilon(t).serialize() == "o1(o2(1,2),o2(3,4))"


@pytest.mark.parametrize("a,b", [("ass", "ass"), ("ass", "com"), ("com", "com")])
@pytest.mark.parametrize("n", [0, 1, 2])
def test_eckmann_hilton(a, b, n):
    ops = {"ass": AssOperad(3), "com": ComOperad(3)}
    res = bounded_tensor_classes(ops[a], ops[b], n, 4)
    assert res.stable and res.count == 1


@pytest.mark.parametrize("A,B", PAIRS, ids=[f"{A.name}-{B.name}" for A, B in PAIRS])
def test_unary_classes(A, B):
    res = bounded_tensor_classes(A, B, 1, 5)
    assert res.stable and res.count == len(tensor_unary_carrier(A, B))


@pytest.mark.parametrize("A,B", PAIRS[:2], ids=[f"{A.name}-{B.name}" for A, B in PAIRS[:2]])
def test_binary_classes_match_pushout(A, B):
    res = bounded_tensor_classes(A, B, 2, 5)
    assert res.stable and res.count == len(tensor_binary_carrier(A, B))


@pytest.mark.parametrize("A,B", PAIRS, ids=[f"{A.name}-{B.name}" for A, B in PAIRS])
def test_pushout_classes_are_interchange_classes(A, B):
    # elements glued in the pushout land in one class of the bounded relation
    model = CoproductModel(A, B)
    res = bounded_tensor_classes(A, B, 2, 5, model=model)
    uni = model.universe(2, 5)
    owner = {}
    for c in res.classes:
        owner[c.representative] = c
    from optensor.tensor import _partition
    _, index, roots, _ = _partition(model, 2, 5)
    for group in tensor_binary_carrier(A, B):
        terms = {pushout_to_term(model, x) for x in group}
        assert len({roots[index[t]] for t in terms}) == 1
    assert len(uni) == res.universe_size


def test_capacity_errors():
    A = family_operads(3)["ass2"]
    with pytest.raises(CapacityError):
        bounded_tensor_classes(A, A, 3, 4)


@pytest.mark.parametrize("A,B", PAIRS, ids=[f"{A.name}-{B.name}" for A, B in PAIRS])
def test_moves_are_symmetric(A, B):
    model = CoproductModel(A, B)
    uni = set(model.universe(2, 4))
    for t in uni:
        for u in model.moves(t):
            if u in uni:
                assert t in model.moves(u)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(PAIRS) - 1), st.data())
def test_unary_normal_form(i, data):
    A, B = PAIRS[i]
    model = CoproductModel(A, B)
    t = data.draw(st.sampled_from(model.universe(2, 4)))
    u = unary_normalize(model, t)
    assert unary_normalize(model, u) == u
    assert model.epsilon(u) == model.epsilon(t)


@pytest.mark.parametrize("A,B", PAIRS, ids=[f"{A.name}-{B.name}" for A, B in PAIRS])
def test_unary_normal_form_counts_arity_one(A, B):
    model = CoproductModel(A, B)
    forms = {unary_normalize(model, t) for t in model.universe(1, 5)}
    assert len(forms) == len(A.carrier(1)) * len(B.carrier(1))


@pytest.mark.parametrize("A,B", PAIRS, ids=[f"{A.name}-{B.name}" for A, B in PAIRS])
def test_moves_follow_the_word_order(A, B):
    # an interchange can change the epsilon-image (o1(1,2) <-> o2(1,2) once stumps
    # collapse), but the two images are always comparable in M_2^ab
    model = CoproductModel(A, B)
    for t in model.universe(2, 4):
        e = model.epsilon(t)
        for u in model.moves(t):
            f = model.epsilon(u)
            assert leq(e, f) or leq(f, e)


def test_stump_collapse_changes_epsilon():
    A, B = AssOperad(3), AssOperad(3)
    model = CoproductModel(A, B)
    cls = bounded_tensor_classes(A, B, 2, 4, model=model)
    assert cls.count == 1
    eps = {model.epsilon(t).serialize() for t in model.universe(2, 4)}
    assert {"o1(1,2)", "o2(1,2)"} <= eps


WIDE = [(A, B) for A, B in random_operad_pairs(11, 12) if min(A.max_arity, B.max_arity) >= 3][:3]


@pytest.mark.parametrize("A,B", WIDE, ids=[f"{A.name}-{B.name}" for A, B in WIDE])
def test_epsilon_is_an_operad_map(A, B):
    model = CoproductModel(A, B)
    ident = MonoidalWord.make(1, 2, True)
    for t in model.universe(2, 3):
        for s in model.universe(2, 3):
            for i in (1, 2):
                bs = [ident, ident]
                bs[i - 1] = model.epsilon(s)
                assert model.epsilon(model.graft(t, i, s)) == compose_words(model.epsilon(t), bs)


FAMILY = family_operads(3)


@pytest.mark.parametrize("name", sorted(FAMILY))
@pytest.mark.parametrize("n", [1, 2])
def test_com_tensor_matches_ru(name, n):
    B = FAMILY[name]
    if B.max_arity < n:
        pytest.skip("operad truncated below this arity")
    res = bounded_tensor_classes(ComOperad(3), B, n, 5)
    assert res.stable and res.count == len(com_tensor_formula(B).carrier(n))


@pytest.mark.parametrize("name", ["ass2", "zm_z2"])
def test_ass_tensor_formula_low_arity(name):
    B = FAMILY[name]
    got = [bounded_tensor_classes(AssOperad(3), B, n, 5).count for n in (1, 2)]
    assert got == [len(ass_tensor_formula(B, 2).carrier(n)) for n in (1, 2)]
