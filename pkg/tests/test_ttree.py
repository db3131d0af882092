from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optensor.operad import check_laws
from optensor.ttree import (TreeOperad, TTreeError, cancellation_failures, factor_table,
                            left_factor_failures, leaves, mlf_failures, node_count, parse,
                            pair_reduction_failures, tuples_within, word_tree_ops)
from optensor.words import WordOperad, word


@pytest.fixture(scope="module")
def U1(ops):
    return ops.enumerate(1, 5, 2)


@pytest.fixture(scope="module")
def U2(ops):
    return ops.enumerate(2, 5, 2)


def test_corolla_parse(ops):
    t = parse(ops, "{o1(1,2)}(1,2)")
    assert t == ops.corolla(word("o1(1,2)"))
    assert ops.encode(t) == "{o1(1,2)}[1](1,2)"


def test_source_and_target(ops):
    t = parse(ops, "{o1(1,2)}({o2(1,2)}[0](1,2),3)")
    assert ops.encode(ops.target(t)) == "{o1(o2(1,2),3)}[1](1,2,3)"
    assert ops.source(t) == parse(ops, "{o1(1,2)}({o2(1,2)}(1,2),3)")


def test_axial_components_of_corolla(ops):
    t = ops.corolla(word("o1(1,2,3)"))
    assert [ops.encode(c) for c in ops.axial_image(t)] == [
        "{o1(1,2,3)}[1](1,0,0)", "{o1(2,1,3)}[1](1,0,0)", "{o1(2,3,1)}[1](1,0,0)"]


def test_unit_nodes_vanish(ops):
    unit = ops.op.unit
    stacked = (unit, ((1, (unit, ((0, 1),))),))
    assert ops.reduce(stacked) == 1


def test_parse_errors(ops):
    with pytest.raises(TTreeError):
        parse(ops, "{o1(1,2)}(1,2)x")
    with pytest.raises(TTreeError):
        ops.recover_from_axial(())


@pytest.mark.parametrize("n,N", [(1, 5), (2, 5), (3, 4)])
def test_axial_injective(ops, n, N):
    U = ops.enumerate(n, N, 2)
    assert len({ops.axial_image(t) for t in U}) == len(U)
    for t in U:
        assert ops.recover_from_axial(ops.axial_image(t)) == t


def test_enumeration_reduced_and_distinct(ops, U2):
    assert len(set(U2)) == len(U2)
    assert all(ops.is_reduced(t) and node_count(t) <= 5 and leaves(t) == (1, 2) for t in U2)


def test_enumeration_monotone_in_bound(ops):
    assert set(ops.enumerate(2, 3, 2)) <= set(ops.enumerate(2, 4, 2))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_act_is_an_action(ops, U2, data):
    t = data.draw(st.sampled_from(U2))
    swap = (1, 0)
    assert ops.act(ops.act(t, swap), swap) == t


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_graft_restrict(ops, U1, U2, data):
    t = data.draw(st.sampled_from(U2))
    s = data.draw(st.sampled_from(U1))
    g = ops.graft(t, 1, s)
    assert leaves(g) == (1, 2)
    # restricting to the second input forgets the grafted branch
    assert ops.restrict(g, [2]) == ops.restrict(t, [2])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_boundary_maps_are_reduced(ops, U2, data):
    t = data.draw(st.sampled_from(U2))
    s, tt = ops.boundary(t)
    assert ops.is_reduced(s) and ops.is_reduced(tt)
    # both ends have only 1-edges left, so they are fixed by the source map
    assert ops.source(s) == s and ops.source(tt) == tt


def test_mlf_basics(ops, U1):
    for x in U1[:40]:
        assert ops.mlf((x, x)) == x
        assert ops.mlf((x, 1)) == 1


def test_left_factors_exhaustive(ops):
    assert left_factor_failures(ops, 5) == []


def test_mlf_against_factor_table(ops):
    table = factor_table(ops, 5)
    pairs = tuples_within(ops.enumerate(1, 5, 2), 2, 6)
    assert pairs and mlf_failures(ops, pairs, table) == []


def test_pair_reduction(ops):
    tuples = tuples_within(ops.enumerate(1, 5, 2), 3, 5)
    assert tuples and pair_reduction_failures(ops, tuples) == []


def test_cancellation(ops):
    assert cancellation_failures(ops, ops.enumerate(2, 4, 2)) == []


def test_tuples_within_is_multiset_enumeration():
    U = [1, (0, ()), ("x", ((1, 1),))]
    got = tuples_within(U, 2, 10)
    assert len(got) == 6


def test_tree_operad_laws():
    op = TreeOperad(WordOperad(1), max_nodes=2, max_arity=2)
    assert check_laws(op) == []


def test_word_tree_ops_label_cap():
    ops = word_tree_ops(max_arity=2)
    assert all(node_count(t) <= 3 for t in ops.enumerate(2, 3, 2))


def _insert_units(ops, t, rng):
    """Wrap random subtrees in unit nodes joined by a 0-edge; reduction must undo this.

    Merging edges across a unit node takes the larger length, so 0 is neutral.
    """
    if isinstance(t, int):
        return (ops.op.unit, ((0, t),)) if rng.random() < 0.5 else t
    x, links = t
    out = tuple((e, _insert_units(ops, c, rng)) for e, c in links)
    node = (x, out)
    return (ops.op.unit, ((0, node),)) if rng.random() < 0.3 else node


@settings(max_examples=80, deadline=None)
@given(st.data(), st.integers(0, 10**6))
def test_reduction_ignores_unit_insertions(ops, U2, data, seed):
    import random
    t = data.draw(st.sampled_from(U2))
    raw = _insert_units(ops, t, random.Random(seed))
    assert ops.reduce(raw) == t


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_reduction_commutes_with_grafting(ops, U1, U2, data):
    # reducing the pieces first or the raw graft last gives the same tree
    t, s = data.draw(st.sampled_from(U2)), data.draw(st.sampled_from(U1))
    from optensor.ttree import relabel
    raw = relabel(t, {1: s, 2: 2})
    assert ops.reduce(raw) == ops.graft(t, 1, s)
