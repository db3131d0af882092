"""Simplex trees, the Grothendieck poset I(k,l)(m) and the functors L' and L.

Vertices are abelian 2-fold words (``MonoidalWord`` with ``k=2, ab=True``).
Binodal trees come from :mod:`optensor.binodal`. A decoration of a binodal
tree by words of ``M_k`` is a tuple of words, one per black node, in the order
of :func:`black_nodes`; the word at a node lives on ``1..r`` where generator
``j`` stands for the ``j``-th child (children sorted by least input).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import binodal as bn
from .kcomplex import _compatible, all_simplices, make_simplex
from .operad import CapacityError
from .topology import FinitePoset, contractibility_certificate
from .words import (MonoidalWord, compose_words, enumerate_words, leq, relabel, restrict_word,
                    shift_ops)

MAX_M = 3
MAX_KL = 3


class InterchangeError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexTreesPair:
    S: object
    T: object

    def serialize(self) -> str:
        return f"({bn.serialize(self.S)}, {bn.serialize(self.T)})"


# ---------------------------------------------------------------------------
# vertices and simplices


def _tree_colored(t, first: str, second: str):
    if isinstance(t, int):
        return t
    op, kids = t
    color = first if op == 1 else second
    return (color, tuple(_tree_colored(c, first, second) for c in kids))


def word_to_trees(alpha: MonoidalWord) -> SimplexTreesPair:
    """Read the first operation as black in S and white in T, the second the other way."""
    if not alpha.ab or alpha.k != 2:
        raise InterchangeError("expected an abelian 2-fold word")
    S = bn.canonicalize(_tree_colored(alpha.tree, bn.BLACK, bn.WHITE))
    T = bn.canonicalize(_tree_colored(alpha.tree, bn.WHITE, bn.BLACK))
    return SimplexTreesPair(S, T)


def trees_to_word(S) -> MonoidalWord:
    """Recolor a binodal tree back into a word: black is the first operation."""
    def rec(t):
        if isinstance(t, int):
            return t
        return (1 if t[0] == bn.BLACK else 2, tuple(rec(c) for c in t[1]))
    return MonoidalWord.make(rec(S), 2, ab=True)


def _partition_of(w: MonoidalWord) -> list[frozenset]:
    return [frozenset(b.generators) for b in w.blocks()]


def _join(parts: Sequence[list[frozenset]], universe: Iterable[int]) -> list[tuple]:
    """Finest partition coarser than every partition in ``parts``."""
    parent = {x: x for x in universe}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for part in parts:
        for block in part:
            b = sorted(block)
            for y in b[1:]:
                parent[find(y)] = find(b[0])
    groups: dict = {}
    for x in parent:
        groups.setdefault(find(x), []).append(x)
    return sorted((tuple(sorted(g)) for g in groups.values()), key=min)


def max_common_decomposition(vertices: Sequence[MonoidalWord], op: int) -> tuple[tuple, ...]:
    """Blocks of the maximal common decomposition along operation ``op``."""
    vertices = list(vertices)
    if not vertices:
        raise InterchangeError("no vertices")
    if any(v.op != op for v in vertices):
        raise InterchangeError(f"not every vertex has outermost operation {op}")
    gens = vertices[0].generators
    blocks = _join([_partition_of(v) for v in vertices], gens)
    if len(blocks) < 2:
        raise InterchangeError("vertices have no common decomposition; not a simplex")
    return tuple(blocks)


def is_simplex(vertices: Iterable[MonoidalWord]) -> bool:
    vs = list(set(vertices))
    if not vs:
        return False
    g = vs[0].generators
    if any(v.generators != g for v in vs):
        return False
    return all(_compatible(a, b) for a, b in itertools.combinations(vs, 2))


def restrict_simplex(simplex: Iterable[MonoidalWord], U: Iterable[int]) -> tuple:
    U = tuple(U)
    return make_simplex(restrict_word(v, U) for v in simplex)


def simplex_trees(simplex: Iterable[MonoidalWord]) -> SimplexTreesPair:
    """The pair of binodal trees assigned to a simplex by the recursive construction."""
    s = make_simplex(simplex)
    if not is_simplex(s):
        raise InterchangeError("vertices do not form a simplex")
    return _simplex_trees(s)


@lru_cache(maxsize=None)
def _simplex_trees(s: tuple) -> SimplexTreesPair:
    gens = s[0].generators
    if len(gens) == 1:
        return SimplexTreesPair(gens[0], gens[0])
    first = [v for v in s if v.op == 1]
    second = [v for v in s if v.op == 2]
    if first and second:
        U = max_common_decomposition(first, 1)
        V = max_common_decomposition(second, 2)
        S = (bn.BLACK, tuple(_simplex_trees(restrict_simplex(s, u)).S for u in U))
        T = (bn.BLACK, tuple(_simplex_trees(restrict_simplex(s, v)).T for v in V))
    elif first:
        U = max_common_decomposition(first, 1)
        parts = [_simplex_trees(restrict_simplex(s, u)) for u in U]
        S = (bn.BLACK, tuple(p.S for p in parts))
        T = (bn.WHITE, tuple(p.T for p in parts))
    else:
        V = max_common_decomposition(second, 2)
        parts = [_simplex_trees(restrict_simplex(s, v)) for v in V]
        S = (bn.WHITE, tuple(p.S for p in parts))
        T = (bn.BLACK, tuple(p.T for p in parts))
    return SimplexTreesPair(bn.canonicalize(S), bn.canonicalize(T))


def simplex_nonempty(vertices: Iterable[MonoidalWord]) -> bool:
    """Whether the cells of the given vertices have a common point.

    Equivalent to the pairwise compatibility test; when it fails there is a
    triple of generators on which two restricted vertices are distinct and
    their trees have disjoint carriers (see :func:`emptiness_witness`).
    """
    return is_simplex(vertices)


def emptiness_witness(vertices: Iterable[MonoidalWord]):
    """``(triple, side, a, b)`` with disjoint carriers on that triple, or ``None``."""
    vs = sorted(set(vertices))
    gens = vs[0].generators
    for T in itertools.combinations(gens, 3):
        rs = sorted({restrict_word(v, T) for v in vs})
        for a, b in itertools.combinations(rs, 2):
            pa, pb = word_to_trees(a), word_to_trees(b)
            for side in ("S", "T"):
                x, y = getattr(pa, side), getattr(pb, side)
                if x != y and isinstance(bn.intersect3(x, y), bn.Empty):
                    return T, side, a, b
    return None


# ---------------------------------------------------------------------------
# carrier containment


def binodal_contained(t1, t2) -> bool:
    """Is the carrier of ``t1`` contained in that of ``t2``? Decided on triples via the table."""
    S = bn.inputs(t1)
    if S != bn.inputs(t2):
        raise InterchangeError("trees have different inputs")
    if t1 == t2 or len(S) == 1:
        return True
    if len(S) == 2:
        return t1[0] == bn.BLACK or t2[0] == bn.WHITE
    for r in (2, 3):
        for U in itertools.combinations(S, r):
            a, b = bn.restrict_binodal(t1, U), bn.restrict_binodal(t2, U)
            if a == b:
                continue
            if r == 2:
                if not binodal_contained(a, b):
                    return False
            elif bn.intersect3(a, b) != bn.Tree(a):
                return False
    return True


def carrier_contained(p: SimplexTreesPair, q: SimplexTreesPair) -> bool:
    return binodal_contained(p.S, q.S) and binodal_contained(p.T, q.T)


def saturation(simplex: Iterable[MonoidalWord]) -> tuple:
    """Every vertex whose cell contains the cell of ``simplex``."""
    s = make_simplex(simplex)
    m = s[0].arity
    if s[0].generators != tuple(range(1, m + 1)):
        raise InterchangeError("simplices live on generators 1..m")
    p = simplex_trees(s)
    return make_simplex(v for v in enumerate_words(2, range(1, m + 1), ab=True)
                        if carrier_contained(p, word_to_trees(v)))


def L_prime(simplex: Iterable[MonoidalWord]) -> MonoidalWord:
    """The least vertex containing the cell: recolor S of the saturated simplex."""
    sat = saturation(simplex)
    return trees_to_word(simplex_trees(sat).S)


# ---------------------------------------------------------------------------
# decorations and fiber maps


def black_nodes(t) -> list[tuple[tuple, tuple]]:
    """``(inputs, child input sets)`` for each black node, sorted by inputs."""
    out = []

    def rec(u):
        if isinstance(u, int):
            return
        if u[0] == bn.BLACK:
            out.append((bn.inputs(u), tuple(bn.inputs(c) for c in u[1])))
        for c in u[1]:
            rec(c)
    rec(t)
    return sorted(out)


@lru_cache(maxsize=None)
def fiber(t, k: int) -> tuple:
    """All decorations of the black nodes of ``t`` by objects of ``M_k``."""
    opts = [enumerate_words(k, range(1, len(ch) + 1)) for _, ch in black_nodes(t)]
    return tuple(itertools.product(*opts))


def decorated_word(t, dec: Sequence[MonoidalWord], keep: Iterable[int]) -> MonoidalWord:
    """The composite word of the black part of ``t`` restricted to ``keep``.

    Every node with two or more surviving branches must be black.
    """
    keep = set(keep)
    words = {ins: w for (ins, _), w in zip(black_nodes(t), dec)}

    def rec(u):
        if isinstance(u, int):
            return u if u in keep else None
        subs = [(j + 1, rec(c)) for j, c in enumerate(u[1])]
        subs = [(j, x) for j, x in subs if x is not None]
        if not subs:
            return None
        if len(subs) == 1:
            return subs[0][1]
        if u[0] != bn.BLACK:
            raise InterchangeError("restriction meets a white node")
        w = words[bn.inputs(u)]
        kept = [j for j, _ in subs]
        w = restrict_word(w, kept)
        w = relabel(w, {j: i + 1 for i, j in enumerate(kept)})
        inner = [x if isinstance(x, MonoidalWord) else MonoidalWord(x, w.k) for _, x in subs]
        return compose_words(w, inner, renumber=False)
    out = rec(t)
    if out is None:
        raise InterchangeError("nothing kept")
    return out if isinstance(out, MonoidalWord) else MonoidalWord(out, dec[0].k if dec else 1)


def push_decoration(src, dec: Sequence[MonoidalWord], tgt, k: int) -> tuple:
    """Image of a decoration of ``src`` under the carrier inclusion into ``tgt``."""
    out = []
    for _, children in black_nodes(tgt):
        reps = [min(c) for c in children]
        w = decorated_word(src, dec, reps)
        if not isinstance(w, MonoidalWord) or w.arity != len(reps):
            raise InterchangeError("decoration does not restrict to a word")
        out.append(MonoidalWord(relabel(w, {r: i + 1 for i, r in enumerate(reps)}).tree, k))
    return tuple(out)


def decoration_leq(a: Sequence[MonoidalWord], b: Sequence[MonoidalWord]) -> bool:
    return all(leq(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# the Grothendieck poset


@dataclass(frozen=True)
class GrothendieckObject:
    simplex: tuple
    dec_s: tuple
    dec_t: tuple

    def label(self) -> str:
        s = "{" + ",".join(v.serialize() for v in self.simplex) + "}"
        a = ",".join(w.serialize() for w in self.dec_s)
        b = ",".join(w.serialize() for w in self.dec_t)
        return f"{s}|{a}|{b}"


def _check_bounds(k: int, l: int, m: int):
    if k < 1 or l < 1 or k + l > MAX_KL or m > MAX_M or m < 1:
        raise CapacityError(f"(k,l,m)=({k},{l},{m}) is outside k+l<={MAX_KL}, m<={MAX_M}")


def grothendieck_objects(k: int, l: int, m: int) -> list[GrothendieckObject]:
    _check_bounds(k, l, m)
    out = []
    for s in all_simplices(m):
        p = simplex_trees(s)
        for a in fiber(p.S, k):
            for b in fiber(p.T, l):
                out.append(GrothendieckObject(s, a, b))
    return out


def push_object(obj: GrothendieckObject, target: SimplexTreesPair, k: int, l: int) -> tuple:
    p = simplex_trees(obj.simplex)
    return (push_decoration(p.S, obj.dec_s, target.S, k),
            push_decoration(p.T, obj.dec_t, target.T, l))


@lru_cache(maxsize=None)
def grothendieck_poset(k: int, l: int, m: int) -> FinitePoset:
    """Objects (simplex, decoration pair); x <= y when y's simplex is a face of x's and the pushed decoration is below y's."""
    objs = grothendieck_objects(k, l, m)
    by_simplex: dict = {}
    for i, o in enumerate(objs):
        by_simplex.setdefault(o.simplex, []).append(i)
    above = []
    for i, o in enumerate(objs):
        up = []
        S = set(o.simplex)
        for s2, idxs in by_simplex.items():
            if not set(s2) <= S:
                continue
            a, b = push_object(o, simplex_trees(s2), k, l)
            for j in idxs:
                if j == i:
                    continue
                t = objs[j]
                if decoration_leq(a, t.dec_s) and decoration_leq(b, t.dec_t):
                    up.append(j)
        above.append(up)
    return FinitePoset(objs, above, check=False)


def _assemble(shape, dec_s, dec_t, k: int, l: int) -> MonoidalWord:
    """Merge the decorations of S and T (same shape, opposite colors) into one word of M_{k+l}."""
    ws = {ins: w for (ins, _), w in zip(black_nodes(shape), dec_s)}
    T = _swap(shape)
    wt = {ins: w for (ins, _), w in zip(black_nodes(T), dec_t)}

    def rec(u):
        if isinstance(u, int):
            return MonoidalWord(u, k + l)
        ins = bn.inputs(u)
        if u[0] == bn.BLACK:
            w = MonoidalWord(ws[ins].tree, k + l)
        else:
            w = shift_ops(wt[ins], k, k + l)
        return compose_words(w, [rec(c) for c in u[1]], renumber=False)
    return rec(shape)


def _swap(t):
    if isinstance(t, int):
        return t
    return (bn.WHITE if t[0] == bn.BLACK else bn.BLACK, tuple(_swap(c) for c in t[1]))


def L_functor(obj: GrothendieckObject, k: int, l: int) -> MonoidalWord:
    """Push the decoration to the least containing vertex and merge it into one word."""
    lam = L_prime(obj.simplex)
    target = word_to_trees(lam)
    a, b = push_object(obj, target, k, l)
    return _assemble(target.S, a, b, k, l)


def terminal_candidate(gamma: MonoidalWord, k: int, l: int) -> GrothendieckObject:
    """The object built from ``gamma`` by sending the first k operations to black and the rest to white."""
    def rec(t):
        if isinstance(t, int):
            return t
        return (1 if t[0] <= k else 2, tuple(rec(c) for c in t[1]))
    alpha = MonoidalWord.make(rec(gamma.tree), 2, ab=True)
    p = word_to_trees(alpha)
    dec_s, dec_t = [], []
    for side, out, lo in ((p.S, dec_s, 0), (p.T, dec_t, k)):
        for _, children in black_nodes(side):
            reps = [min(c) for c in children]
            w = relabel(restrict_word(gamma, reps), {r: i + 1 for i, r in enumerate(reps)})
            width = k if lo == 0 else l
            out.append(MonoidalWord(shift_ops(w, -lo, width).tree, width))
    obj = GrothendieckObject(make_simplex([alpha]), tuple(dec_s), tuple(dec_t))
    if L_functor(obj, k, l) != gamma:
        raise InterchangeError("candidate does not map to gamma")
    return obj


def over_category(gamma: MonoidalWord, k: int, l: int) -> tuple[FinitePoset, list[int]]:
    """The subposet L/gamma and the indices of its objects in I(k,l)(m)."""
    m = gamma.arity
    G = grothendieck_poset(k, l, m)
    Ls = L_values(k, l, m)
    keep = [i for i in range(len(G)) if leq(Ls[i], gamma)]
    return G.induced(keep), keep


@lru_cache(maxsize=None)
def L_values(k: int, l: int, m: int) -> tuple:
    G = grothendieck_poset(k, l, m)
    return tuple(L_functor(o, k, l) for o in G.elements)


def terminal_in_over(gamma: MonoidalWord, k: int, l: int):
    """``(candidate, certificate)``; the certificate is whatever the over-poset supports."""
    cand = terminal_candidate(gamma, k, l)
    P, _ = over_category(gamma, k, l)
    return cand, contractibility_certificate(P)


def coarse_cells(k: int, l: int, m: int) -> dict:
    """``gamma -> sorted indices of objects x with L(x) <= gamma``."""
    _check_bounds(k, l, m)
    Ls = L_values(k, l, m)
    out = {}
    for g in enumerate_words(k + l, range(1, m + 1)):
        out[g] = tuple(i for i, x in enumerate(Ls) if leq(x, g))
    return out


def intersection_closure_holds(k: int, l: int, m: int) -> bool:
    """Every common lower bound of cells of F(g1) and F(g2) lies in F(g3) for some g3 below both."""
    G = grothendieck_poset(k, l, m)
    below = G.below
    Ls = L_values(k, l, m)
    F = coarse_cells(k, l, m)
    gammas = list(F)
    for g1, g2 in itertools.combinations_with_replacement(gammas, 2):
        lower = [g3 for g3 in gammas if leq(g3, g1) and leq(g3, g2)]
        union = set()
        for g3 in lower:
            union |= set(F[g3])
        for x1 in F[g1]:
            for x2 in F[g2]:
                common = (below[x1] | {x1}) & (below[x2] | {x2})
                if not common <= union:
                    return False
    return True


def operad_compatibility_holds(k: int, l: int, max_total: int = 3) -> bool:
    """L(a)·(L(b_1)+...+L(b_n)) <= g·(f_1+...+f_n) whenever L(a) <= g and L(b_i) <= f_i."""
    vals: dict = {}
    for m in range(1, max_total + 1):
        vals[m] = sorted({L_functor(GrothendieckObject(make_simplex([v]), a, b), k, l)
                          for v in enumerate_words(2, range(1, m + 1), ab=True)
                          for p in [word_to_trees(v)]
                          for a in fiber(p.S, k) for b in fiber(p.T, l)}, key=MonoidalWord.serialize)
    words = {m: enumerate_words(k + l, range(1, m + 1)) for m in range(1, max_total + 1)}
    for m in range(1, max_total + 1):
        for ps in itertools.product(range(1, max_total + 1), repeat=m):
            if sum(ps) > max_total:
                continue
            for a in vals[m]:
                for g in words[m]:
                    if not leq(a, g):
                        continue
                    for bs in itertools.product(*(vals[p] for p in ps)):
                        for fs in itertools.product(*(words[p] for p in ps)):
                            if not all(leq(b, f) for b, f in zip(bs, fs)):
                                continue
                            if not leq(compose_words(a, bs), compose_words(g, fs)):
                                return False
    return True


# ---------------------------------------------------------------------------
# the cell bijection: decorated pairs versus two-sided trees


def merge(alpha: MonoidalWord, dS: bn.DecoratedBinodal, dT: bn.DecoratedBinodal, model):
    """The two-sided tree of a decorated pair, in unary-normal form.

    ``model`` is a :class:`~optensor.tensor.CoproductModel` whose side A is
    the tree operad decorating ``S`` and side B the one decorating ``T``.
    First-operation nodes of ``alpha`` become A-nodes carrying the black
    decoration of ``S``; inputs pick up the free decoration of the tree in
    which their parent is white.
    """
    pair = word_to_trees(alpha)
    if dS.tree != pair.S or dT.tree != pair.T:
        raise InterchangeError("decorations do not sit on the trees of this word")
    unitA, unitB = model.ops["A"].unit, model.ops["B"].unit

    def leaf(i, parent):
        t = i
        if parent != 2:
            b = dT.free.get(i, unitB)
            t = ("B", b, (t,)) if b != unitB else t
        if parent != 1:
            a = dS.free.get(i, unitA)
            t = ("A", a, (t,)) if a != unitA else t
        return t

    def rec(t, path, parent):
        if isinstance(t, int):
            return leaf(t, parent)
        op, kids = t
        lab = dS.black[path] if op == 1 else dT.black[path]
        return ("A" if op == 1 else "B", lab,
                tuple(rec(c, path + (j,), op) for j, c in enumerate(kids)))
    return model.unary_normalize(model.normalize(rec(alpha.tree, (), None)))


def split(alpha: MonoidalWord, term, model) -> tuple[bn.DecoratedBinodal, bn.DecoratedBinodal]:
    """Inverse of :func:`merge` on unary-interchange classes with epsilon-image ``alpha``."""
    u = model.unary_normalize(model.normalize(term))
    if model.epsilon(u) != alpha:
        raise InterchangeError(f"term reads as {model.epsilon(u).serialize()}, "
                               f"not {alpha.serialize()}")
    pair = word_to_trees(alpha)
    blackS, blackT, freeS, freeT = {}, {}, {}, {}

    def leaf(i, v):
        while not isinstance(v, int):
            side, lab, (v,) = v
            (freeS if side == "A" else freeT)[i] = lab

    def rec(t, v, path):
        if isinstance(t, int):
            return leaf(t, v)
        op, kids = t
        side, lab, vkids = v
        if side != ("A" if op == 1 else "B") or len(vkids) != len(kids):
            raise InterchangeError("term does not follow the shape of the word")
        (blackS if op == 1 else blackT)[path] = lab
        for j, (c, w) in enumerate(zip(kids, vkids)):
            rec(c, w, path + (j,))
    rec(alpha.tree, u, ())
    return (bn.DecoratedBinodal(pair.S, blackS, freeS), bn.DecoratedBinodal(pair.T, blackT, freeT))


def term_axial(term, model) -> tuple:
    """Unary-normal forms of the restrictions of ``term`` to each single input."""
    from .tensor import STUMP, leaf_list
    n = len(leaf_list(term))
    out = []
    for i in range(1, n + 1):
        def rec(t):
            if isinstance(t, int):
                return 1 if t == i else STUMP
            if t == STUMP:
                return t
            return (t[0], t[1], tuple(rec(c) for c in t[2]))
        out.append(model.unary_normalize(model.normalize(rec(term))))
    return tuple(out)


def random_decorated_pair(alpha: MonoidalWord, A, B, rng) -> tuple:
    """A decorated pair on ``word_to_trees(alpha)`` with labels drawn from the carriers of ``A``, ``B``."""
    pair = word_to_trees(alpha)

    def deco(tree, op):
        black, free = {}, {}

        def rec(t, path, parent):
            if isinstance(t, int):
                if parent != bn.BLACK:
                    u = rng.choice(op.carrier(1))
                    if u != op.unit:
                        free[t] = u
                return
            color, kids = t
            if color == bn.BLACK:
                black[path] = rng.choice(op.carrier(len(kids)))
            for j, c in enumerate(kids):
                rec(c, path + (j,), color)
        rec(tree, (), None)
        return bn.DecoratedBinodal(tree, black, free)
    return deco(pair.S, A), deco(pair.T, B)


def cell_bijection_cases(m: int, count: int, seed: int, max_nodes: int = 3):
    """Round trips ``split(merge(d)) == d`` and ``merge(split(t)) == t`` on a random corpus.

    Yields ``(alpha, pair, term, ok)``. Decorations come from trees over
    ``M_1`` with at most ``max_nodes`` nodes.
    """
    import random

    from .tensor import CoproductModel
    from .ttree import TreeOperad
    from .words import WordOperad
    rng = random.Random(seed)
    A = TreeOperad(WordOperad(1), max_nodes=max_nodes, max_arity=m)
    B = TreeOperad(WordOperad(1), max_nodes=max_nodes, max_arity=m)
    model = CoproductModel(A, B)
    words = enumerate_words(2, range(1, m + 1), ab=True)
    for _ in range(count):
        alpha = rng.choice(words)
        d = random_decorated_pair(alpha, A, B, rng)
        term = merge(alpha, *d, model)
        back = split(alpha, term, model)
        ok = back == d and merge(alpha, *back, model) == term
        yield alpha, d, term, ok


def axial_collisions(model, terms) -> tuple[list, list]:
    """Pairs of unary-normal forms sharing an axial image.

    Returns ``(same_cell, unexplained)``: collisions between terms with the
    same epsilon-image, and collisions across cells that are not one
    interchange apart. Both are empty when the bounded model is axial.
    """
    groups: dict = {}
    for t in terms:
        nf = model.unary_normalize(model.normalize(t))
        groups.setdefault(term_axial(nf, model), set()).add(nf)
    same, unexplained = [], []
    for members in groups.values():
        if len(members) < 2:
            continue
        members = sorted(members, key=model.encode)
        cells = {}
        for x in members:
            cells.setdefault(model.epsilon(x), []).append(x)
        for xs in cells.values():
            same.extend(itertools.combinations(xs, 2))
        base = members[0]
        near = {model.unary_normalize(v) for v in model.moves(base)}
        unexplained.extend((base, x) for x in members[1:] if x not in near)
    return same, unexplained


# ---------------------------------------------------------------------------
# exhaustive invariant checks


def carrier_compatibility_failures(m: int) -> list:
    """Pairs (simplex, face) where the simplex's cell is not inside the face's cell."""
    bad = []
    for s in all_simplices(m):
        p = simplex_trees(s)
        for r in range(1, len(s)):
            for f in itertools.combinations(s, r):
                if not carrier_contained(p, simplex_trees(f)):
                    bad.append((s, make_simplex(f)))
    return bad


def L_prime_failures(m: int) -> list:
    """Simplices where L' is not a lower bound of the vertices, not least, or not monotone."""
    bad = []
    verts = enumerate_words(2, range(1, m + 1), ab=True)
    for s in all_simplices(m):
        lp = L_prime(s)
        p = simplex_trees(s)
        sat = set(saturation(s))
        containing = [v for v in verts if carrier_contained(p, word_to_trees(v))]
        if not all(leq(lp, v) for v in s):
            bad.append((s, "not below a vertex"))
        elif any(v not in sat or not leq(lp, v) for v in containing):
            bad.append((s, "not least"))
        elif any(not leq(lp, L_prime(f)) for r in range(1, len(s))
                 for f in itertools.combinations(s, r)):
            bad.append((s, "not monotone"))
    return bad


def L_monotone_failures(k: int, l: int, m: int) -> list:
    """Covering pairs ``x < y`` of I(k,l)(m) with ``L(x) <= L(y)`` failing."""
    G = grothendieck_poset(k, l, m)
    Ls = L_values(k, l, m)
    return [(x, y) for x, y in G.covers() if not leq(Ls[x], Ls[y])]
