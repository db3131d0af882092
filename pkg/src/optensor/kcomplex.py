"""The simplicial complexes K(m) on abelian 2-fold words and their subdivision posets I(m)."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .operad import CapacityError
from .topology import FinitePoset
from .words import MonoidalWord, enumerate_words, relabel, restrict_word

MAX_M = 4

Simplex = tuple  # sorted tuple of MonoidalWord


def make_simplex(vertices: Iterable[MonoidalWord]) -> Simplex:
    vs = tuple(sorted(set(vertices), key=MonoidalWord.serialize))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    return vs


def vertices(m: int) -> list[MonoidalWord]:
    if m > MAX_M:
        raise CapacityError(f"m={m} exceeds {MAX_M}")
    return enumerate_words(2, range(1, m + 1), ab=True)


def column(w: MonoidalWord) -> int:
    """Column of a three-generator vertex in the standard display of K(3).

    0: flat first operation, 1: second operation nested in the first,
    2: first nested in the second, 3: flat second operation.
    """
    if w.arity != 3:
        raise ValueError("columns are defined on three generators")
    op = w.op
    flat = all(isinstance(c, int) for c in w.tree[1])
    if op == 1:
        return 0 if flat else 1
    return 3 if flat else 2


def _standard3(w: MonoidalWord) -> MonoidalWord:
    g = w.generators
    return relabel(w, {x: i + 1 for i, x in enumerate(g)})


@lru_cache(maxsize=None)
def _compatible(a: MonoidalWord, b: MonoidalWord) -> bool:
    gs = a.generators
    if len(gs) <= 2:
        return True
    for T in itertools.combinations(gs, 3):
        x, y = restrict_word(a, T), restrict_word(b, T)
        if x != y and column(x) == column(y):
            return False
    return True


def is_simplex(m: int, V: Iterable[MonoidalWord]) -> bool:
    V = list(V)
    if not V:
        return False
    vs = set(vertices(m))
    for v in V:
        if v not in vs:
            raise ValueError(f"{v} is not a vertex of K({m})")
    return all(_compatible(a, b) for a, b in itertools.combinations(set(V), 2))


@lru_cache(maxsize=None)
def enumerate_simplices(m: int) -> tuple[tuple[Simplex, ...], ...]:
    """All simplices grouped by dimension (cliques of the pairwise compatibility graph)."""
    vs = vertices(m)
    n = len(vs)
    adj = [{j for j in range(n) if j != i and _compatible(vs[i], vs[j])} for i in range(n)]
    levels: list[list[Simplex]] = []

    def grow(clique, cands):
        d = len(clique) - 1
        while len(levels) <= d:
            levels.append([])
        levels[d].append(make_simplex(vs[i] for i in clique))
        for j in sorted(cands):
            if j > clique[-1]:
                grow(clique + [j], cands & adj[j])
    for i in range(n):
        grow([i], adj[i])
    return tuple(tuple(sorted(level, key=simplex_key)) for level in levels)


def simplex_key(s: Simplex) -> tuple:
    return (len(s), tuple(v.serialize() for v in s))


def all_simplices(m: int) -> list[Simplex]:
    return [s for level in enumerate_simplices(m) for s in level]


def f_vector(m: int) -> list[int]:
    return [len(level) for level in enumerate_simplices(m)]


def relabel_simplex(s: Simplex, mapping: dict) -> Simplex:
    return make_simplex(relabel(v, mapping) for v in s)


def orbits(m: int, simplices: Sequence[Simplex]) -> list[list[Simplex]]:
    """Orbits of a family of simplices under relabelling the generators."""
    remaining = set(simplices)
    out = []
    for s in sorted(simplices, key=simplex_key):
        if s not in remaining:
            continue
        orb = set()
        for p in itertools.permutations(range(1, m + 1)):
            t = relabel_simplex(s, dict(zip(range(1, m + 1), p)))
            orb.add(t)
        remaining -= orb
        out.append(sorted(orb & set(simplices), key=simplex_key))
    return out


def maximal_simplices(m: int) -> list[Simplex]:
    alls = all_simplices(m)
    sets = [set(s) for s in alls]
    return [s for s, S in zip(alls, sets) if not any(S < T for T in sets)]


def faces(s: Simplex) -> list[Simplex]:
    """All nonempty faces, including ``s`` itself."""
    return [make_simplex(c) for r in range(1, len(s) + 1) for c in itertools.combinations(s, r)]


def subdivision_poset(m: int) -> FinitePoset:
    """I(m): simplices ordered opposite to inclusion."""
    simp = all_simplices(m)
    idx = {s: i for i, s in enumerate(simp)}
    above = []
    for s in simp:
        above.append([idx[f] for f in faces(s) if f != s])
    return FinitePoset(simp, above, check=False)


def simplex_label(s: Simplex) -> str:
    return "{" + ",".join(v.serialize() for v in s) + "}"
