from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optensor import binodal as bn
from optensor.interchange import (InterchangeError, L_monotone_failures, L_prime,
                                  L_prime_failures, binodal_contained,
                                  carrier_compatibility_failures, cell_bijection_cases,
                                  emptiness_witness, grothendieck_poset,
                                  intersection_closure_holds, operad_compatibility_holds,
                                  simplex_nonempty, simplex_trees, terminal_in_over,
                                  trees_to_word, word_to_trees)
from optensor.kcomplex import all_simplices, vertices
from optensor.topology import Dismantlable, TerminalObject, betti, nerve
from optensor.words import enumerate_words, leq, word


@pytest.mark.parametrize("v", vertices(3), ids=lambda v: v.serialize())
def test_word_tree_roundtrip(v):
    p = word_to_trees(v)
    assert trees_to_word(p.S) == v
    assert simplex_trees([v]) == p


def test_word_to_trees_example():
    p = word_to_trees(word("o1(o2(1,2),3)", 2, True))
    assert (bn.serialize(p.S), bn.serialize(p.T)) == ("b(w(1,2),3)", "w(b(1,2),3)")


def test_edge_m2():
    p = simplex_trees([word("o1(1,2)", 2, True), word("o2(1,2)", 2, True)])
    assert bn.serialize(p.S) == bn.serialize(p.T) == "b(1,2)"


def test_non_simplex_has_witness():
    vs = [word("o1(o2(1,2),3)", 2, True), word("o1(o2(1,3),2)", 2, True)]
    assert not simplex_nonempty(vs)
    T, side, a, b = emptiness_witness(vs)
    assert T == (1, 2, 3) and side == "S"


@pytest.mark.parametrize("s", all_simplices(3)[:40], ids=str)
def test_simplices_have_no_emptiness_witness(s):
    assert simplex_nonempty(s) and emptiness_witness(s) is None


def test_simplex_trees_rejects_non_simplex():
    with pytest.raises(InterchangeError):
        simplex_trees([word("o1(o2(1,2),3)", 2, True), word("o1(o2(1,3),2)", 2, True)])


trees3 = st.sampled_from(bn.enumerate_binodal((1, 2, 3)))


@settings(max_examples=100, deadline=None)
@given(trees3, trees3, trees3)
def test_containment_is_a_preorder(a, b, c):
    assert binodal_contained(a, a)
    if binodal_contained(a, b) and binodal_contained(b, c):
        assert binodal_contained(a, c)


@pytest.mark.parametrize("m", [2, 3])
def test_faces_contain_the_cell(m):
    assert carrier_compatibility_failures(m) == []


@pytest.mark.parametrize("m", [2, 3])
def test_L_prime(m):
    assert L_prime_failures(m) == []


def test_L_prime_vertex():
    v = word("o1(o2(1,2),3)", 2, True)
    assert L_prime([v]) == v


@pytest.mark.parametrize("klm", [(1, 1, 2), (1, 2, 2)])
def test_L_monotone(klm):
    assert L_monotone_failures(*klm) == []


def test_grothendieck_sizes():
    assert len(grothendieck_poset(1, 1, 2)) == 8
    assert betti(nerve(grothendieck_poset(1, 1, 2))) == (1, 1)


@pytest.mark.parametrize("g", enumerate_words(2, range(1, 3)), ids=lambda g: g.serialize())
def test_over_posets_are_contractible(g):
    # every L/gamma for (1,1,2) dismantles, even where it lacks a terminal object
    _, cert = terminal_in_over(g, 1, 1)
    assert isinstance(cert, (TerminalObject, Dismantlable))


def test_closure_and_compatibility_m2():
    assert intersection_closure_holds(1, 1, 2)
    assert operad_compatibility_holds(1, 1, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cell_bijection_round_trip(m):
    cases = list(cell_bijection_cases(m, 25, seed=m))
    assert len(cases) == 25 and all(ok for *_, ok in cases)

