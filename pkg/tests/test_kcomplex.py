from __future__ import annotations

import itertools

import pytest

from optensor.kcomplex import (all_simplices, f_vector, faces, is_simplex, maximal_simplices,
                               orbits, subdivision_poset, vertices)
from optensor.topology import Dismantlable, contractibility_certificate, nerve, betti
from optensor.words import word


@pytest.mark.parametrize("m,fv", [(1, [1]), (2, [2, 1]), (3, [8, 22, 24, 9])])
def test_f_vectors(m, fv):
    assert f_vector(m) == fv


def test_vertices_are_abelian_words():
    assert len(vertices(3)) == 8
    assert all(v.ab for v in vertices(3))


def test_faces_closed():
    simp = set(all_simplices(3))
    for s in simp:
        assert all(f in simp for f in faces(s))


def test_simplex_is_clique():
    # being a simplex is a pairwise condition
    for s in all_simplices(3):
        for a, b in itertools.combinations(s, 2):
            assert is_simplex(3, [a, b])


def test_two_orbits_of_maximal_simplices():
    mx = maximal_simplices(3)
    assert len(mx) == 9 and len(orbits(3, mx)) == 2
    assert sorted(len(o) for o in orbits(3, mx)) == [3, 6]


def test_subdivision_poset():
    P = subdivision_poset(3)
    assert len(P) == 63
    # the nerve of I(3) has the homology of a point and dismantles
    assert betti(nerve(P)) == (1,)
    assert isinstance(contractibility_certificate(P), Dismantlable)


def test_edge_m2():
    a, b = word("o1(1,2)", 2, True), word("o2(1,2)", 2, True)
    assert is_simplex(2, [a, b])
