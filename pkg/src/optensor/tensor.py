"""Two-sided trees for A and B: normal forms, interchange moves and bounded tensor classes.

A term is an ``int`` input label, the stump ``STUMP``, or ``(side, label, children)``
with ``side`` in ``"A"``/``"B"``. Normal forms alternate sides along every
edge, contain no stumps below the root, no unary identity nodes, and order
children by least input label (the permutation is absorbed into the label).
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from . import perm as P
from .operad import CapacityError, SetOperad
from .words import MonoidalWord, normalize_tree, set_partitions

STUMP = ("S", None, ())
OTHER = {"A": "B", "B": "A"}
MAX_TENSOR_ARITY = 3
MAX_NODES = 8


def is_node(t) -> bool:
    return not isinstance(t, int)


@lru_cache(maxsize=None)
def leaf_list(t) -> tuple:
    if isinstance(t, int):
        return (t,)
    out: tuple = ()
    for c in t[2]:
        out += leaf_list(c)
    return out


def min_leaf(t) -> int:
    return min(leaf_list(t))


def node_count(t) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(node_count(c) for c in t[2])


class CoproductModel:
    """Normal forms and moves for trees labelled by two finite reduced operads."""

    def __init__(self, A: SetOperad, B: SetOperad):
        self.ops = {"A": A, "B": B}
        self._lower: dict = {}
        self._upper: dict = {}
        self._local: dict = {}

    # -- normal forms ---------------------------------------------------------

    def normalize(self, t):
        if isinstance(t, int):
            return t
        return self._node(t[0], t[1], [self.normalize(c) for c in t[2]])

    def _node(self, side, x, kids):
        """Normal form of a node whose children are already normal."""
        if side == "S":
            return STUMP
        op = self.ops[side]
        if op.arity(x) != len(kids):
            raise ValueError(f"node {op.label(x)} has {len(kids)} children")
        for pos in range(len(kids) - 1, -1, -1):
            if kids[pos] == STUMP:
                x = op.partial(x, pos, op.zero)
        kids = [c for c in kids if c != STUMP]
        out = []
        pos = 0
        for c in kids:
            if is_node(c) and c[0] == side:
                x = op.partial(x, pos, c[1])
                out.extend(c[2])
                pos += len(c[2])
            else:
                out.append(c)
                pos += 1
        if not out:
            return STUMP
        if len(out) == 1 and x == op.unit:
            return out[0]
        p = tuple(sorted(range(len(out)), key=lambda j: min_leaf(out[j])))
        return (side, op.act(x, p), tuple(out[j] for j in p))

    def encode(self, t) -> str:
        if isinstance(t, int):
            return str(t)
        if t == STUMP:
            return "0"
        lab = f"{t[0]}:{self.ops[t[0]].label(t[1])}"
        if any(ch in lab for ch in "()[],{} "):
            lab = "{" + lab + "}"
        return lab + "(" + ",".join(self.encode(c) for c in t[2]) + ")"

    def epsilon(self, t) -> MonoidalWord:
        """Read a term as an abelian 2-fold word: A-nodes as the first product, B-nodes as the second."""
        def rec(u):
            if isinstance(u, int):
                return u
            if u == STUMP:
                return 0
            return (1 if u[0] == "A" else 2, tuple(rec(c) for c in u[2]))
        return MonoidalWord(normalize_tree(rec(t), ab=True), 2, True)

    def corolla(self, side: str, x):
        n = self.ops[side].arity(x)
        return self.normalize((side, x, tuple(range(1, n + 1)))) if n else STUMP

    def graft(self, t, i: int, s):
        """Insert ``s`` at input ``i`` of ``t`` and renumber inputs order-preservingly."""
        n, m = len(leaf_list(t)) if t != STUMP else 0, len(leaf_list(s)) if s != STUMP else 0
        if not 1 <= i <= n:
            raise IndexError(f"graft index {i} outside 1..{n}")

        def shift(u, f):
            if isinstance(u, int):
                return f(u)
            return (u[0], u[1], tuple(shift(c, f) for c in u[2]))
        sub = shift(s, lambda j: j + i - 1) if s != STUMP else STUMP
        return self.normalize(shift(t, lambda j: sub if j == i else (j if j < i else j + m - 1)))

    # -- unary interchanges ----------------------------------------------------

    def unary_normalize(self, t):
        """Push every unary factor upward until it sits on an input.

        A unary node of one side commutes past a node of the other side by
        copying itself onto each child; on an input the two kinds of unary
        factor commute, and the A-factor is kept below the B-factor.
        """
        return self._absorb(self._lift(t))

    def _lift(self, t):
        if isinstance(t, int) or t == STUMP:
            return t
        side, x, kids = t
        kids = [self._lift(c) for c in kids]
        if len(kids) == 1:
            return self._push(side, x, kids[0])
        return self._node(side, x, kids)

    def _absorb(self, t):
        """Fold a B-factor sitting on an input under a B-node into that node."""
        if isinstance(t, int) or t == STUMP:
            return t
        side, x, kids = t
        kids = [self._absorb(c) for c in kids]
        if side == "B" and len(kids) > 1:
            op = self.ops["B"]
            for j, c in enumerate(kids):
                if is_node(c) and c[0] == "A" and len(c[2]) == 1 and is_node(c[2][0]) \
                        and c[2][0][0] == "B" and isinstance(c[2][0][2][0], int):
                    x = op.partial(x, j, c[2][0][1])
                    kids[j] = ("A", c[1], c[2][0][2])
        return (side, x, tuple(kids))

    def _push(self, side, u, t):
        op = self.ops[side]
        if u == op.unit:
            return t
        if isinstance(t, int):
            return (side, u, (t,))
        if t == STUMP:
            return STUMP
        tside, x, kids = t
        if tside == side:
            return self._node(side, op.compose(u, (x,)), list(kids))
        if len(kids) == 1 and side == "A" and (isinstance(kids[0], int) or kids[0][0] == "B"):
            return (side, u, (t,))
        return self._node(tside, x, [self._push(side, u, c) for c in kids])

    # -- factorisation tables --------------------------------------------------

    def lower_factorizations(self, side: str, x) -> list:
        """``(a0, j, alpha, sinv)`` with ``(a0 o_j alpha) . sigma == x`` and ``alpha != id``.

        ``sinv`` is the inverse of sigma: slot ``s`` of the composite receives child ``sinv[s]``.
        """
        key = (side, x)
        if key not in self._lower:
            op = self.ops[side]
            r = op.arity(x)
            out = []
            for k in range(1, r + 1):
                for alpha in op.carrier(k):
                    if k == 1 and alpha == op.unit:
                        continue
                    for a0 in op.carrier(r - k + 1):
                        for j in range(r - k + 1):
                            z = op.partial(a0, j, alpha)
                            for s in P.all_perms(r):
                                if op.act(z, s) == x:
                                    out.append((a0, j, alpha, P.inverse(s)))
            self._lower[key] = out
        return self._lower[key]

    def upper_factorizations(self, side: str, y) -> dict:
        """``beta -> [(bs, rinv)]`` with ``(beta o (bs)) . rho == y``."""
        key = (side, y)
        if key not in self._upper:
            op = self.ops[side]
            s = op.arity(y)
            cap = op.max_arity if op.max_arity is not None else 4
            out: dict = defaultdict(list)
            for l in range(1, cap + 1):
                for beta in op.carrier(l):
                    if beta == op.unit:
                        continue  # the move would be the identity
                    for ar in _compositions(s, l, cap):
                        for bs in itertools.product(*(op.carrier(a) for a in ar)):
                            w = op.compose(beta, bs)
                            for rho in P.all_perms(s):
                                if op.act(w, rho) == y:
                                    out[beta].append((bs, P.inverse(rho)))
            self._upper[key] = dict(out)
        return self._upper[key]

    # -- interchange -----------------------------------------------------------

    def interchange_raw(self, side: str, a0, j: int, alpha, kids: Sequence, sinv, beta,
                        facts: Sequence) -> tuple:
        """Raw tree after replacing ``alpha(beta(T_0*), ..., beta(T_{k-1}*))`` by ``beta(alpha(T_*0), ...)``.

        ``kids`` are the children of the node being rewritten; ``facts[i]`` is
        the factorisation ``(bs, rinv, grandchildren)`` of the i-th block child.
        """
        X, Y = side, OTHER[side]
        opX, opY = self.ops[X], self.ops[Y]
        k = opX.arity(alpha)
        l = opY.arity(beta)
        T = []
        for bs, rinv, ds in facts:
            row = []
            slot = 0
            for b in bs:
                m = opY.arity(b)
                chosen = tuple(ds[rinv[slot + u]] for u in range(m))
                slot += m
                if m == 0:
                    row.append(STUMP)
                elif m == 1 and b == opY.unit:
                    row.append(chosen[0])
                else:
                    row.append((Y, b, chosen))
            T.append(row)
        new = (Y, beta, tuple((X, alpha, tuple(T[i][u] for i in range(k))) for u in range(l)))
        r = len(kids)
        slots = []
        for t in range(opX.arity(a0)):
            if t < j:
                slots.append(kids[sinv[t]])
            elif t == j:
                slots.append(new)
            else:
                slots.append(kids[sinv[t + k - 1]])
        assert len(slots) + k - 1 == r
        return (X, a0, tuple(slots))

    def node_moves(self, v) -> Iterator[tuple]:
        """Raw rewrites of a single node ``v`` (already normal) by one interchange."""
        side = v[0]
        Y = OTHER[side]
        opY = self.ops[Y]
        kids = v[2]
        for a0, j, alpha, sinv in self.lower_factorizations(side, v[1]):
            k = self.ops[side].arity(alpha)
            block = [kids[sinv[j + u]] for u in range(k)]
            per_kid = []
            for c in block:
                if is_node(c) and c[0] == Y:
                    per_kid.append((self.upper_factorizations(Y, c[1]), c[2]))
                else:
                    per_kid.append((self.upper_factorizations(Y, opY.unit), (c,)))
            common = set(per_kid[0][0])
            for tab, _ in per_kid[1:]:
                common &= set(tab)
            for beta in sorted(common, key=opY.label):
                choices = [[(bs, rinv, ds) for bs, rinv in tab[beta]] for tab, ds in per_kid]
                for facts in itertools.product(*choices):
                    yield self.interchange_raw(side, a0, j, alpha, kids, sinv, beta, facts)

    def local_moves(self, v) -> frozenset:
        hit = self._local.get(v)
        if hit is None:
            hit = self._local[v] = frozenset(self.normalize(raw) for raw in self.node_moves(v))
        return hit

    def _rebuild(self, t, path, new):
        """Normal form of ``t`` with the subtree at ``path`` replaced by the normal tree ``new``."""
        if not path:
            return new
        kids = list(t[2])
        kids[path[0]] = self._rebuild(kids[path[0]], path[1:], new)
        return self._node(t[0], t[1], kids)

    def moves(self, t) -> set:
        """Normal forms one interchange away from the normal form ``t``."""
        out = set()
        for path, v in _nodes(t):
            for u in self.local_moves(v):
                out.add(self._rebuild(t, path, u))
        if t != STUMP:
            for side in "AB":
                if not (is_node(t) and t[0] == side):
                    op = self.ops[side]
                    out |= self.local_moves((side, op.unit, (t,)))
        out.discard(t)
        return out

    def interchange_step(self, t, path: tuple, index: int = 0):
        """Apply the ``index``-th interchange available at the node addressed by ``path``."""
        v = _at(t, path)
        if not is_node(v) or v == STUMP:
            raise ValueError("no node at that position")
        raws = list(self.node_moves(v))
        if not raws:
            raise ValueError("no interchange pattern matches at that node")
        return self._rebuild(t, path, self.normalize(raws[index % len(raws)]))

    # -- enumeration -----------------------------------------------------------

    def universe(self, n: int, N: int) -> list:
        """All normal forms of arity ``n`` with at most ``N`` nodes."""
        if n == 0:
            return [STUMP]
        S = tuple(range(1, n + 1))
        out = [t for t, _ in self._gen(S, "", N)]
        return sorted(out, key=lambda t: (node_count(t), self.encode(t)))

    @lru_cache(maxsize=None)
    def _gen(self, S: tuple, forbid: str, budget: int) -> tuple:
        out = []
        if len(S) == 1:
            out.append((S[0], 0))
        if budget == 0:
            return tuple(out)
        for side in "AB":
            if side == forbid:
                continue
            op = self.ops[side]
            cap = op.max_arity if op.max_arity is not None else 4
            for part in set_partitions(S):
                r = len(part)
                if r > cap:
                    continue
                blocks = sorted((tuple(sorted(b)) for b in part), key=min)
                labels = [x for x in op.carrier(r) if not (r == 1 and x == op.unit)]
                if not labels:
                    continue
                subs = [self._gen(b, side, budget - 1) for b in blocks]
                for combo in itertools.product(*subs):
                    used = 1 + sum(c for _, c in combo)
                    if used > budget:
                        continue
                    kids = tuple(c for c, _ in combo)
                    for x in labels:
                        out.append(((side, x, kids), used))
        return tuple(out)


def _compositions(s: int, l: int, cap: int):
    """Ordered tuples of ``l`` arities in ``0..cap`` summing to ``s``."""
    if l == 0:
        if s == 0:
            yield ()
        return
    for a in range(0, min(s, cap) + 1):
        for rest in _compositions(s - a, l - 1, cap):
            yield (a,) + rest


def _nodes(t, path=()):
    if isinstance(t, int) or t == STUMP:
        return
    yield path, t
    for i, c in enumerate(t[2]):
        yield from _nodes(c, path + (i,))


def _at(t, path):
    for i in path:
        t = t[2][i]
    return t


def _replace(t, path, new):
    if not path:
        return new
    i = path[0]
    kids = list(t[2])
    kids[i] = _replace(kids[i], path[1:], new)
    return (t[0], t[1], tuple(kids))


# ---------------------------------------------------------------------------
# bounded classes


@dataclass
class TensorClass:
    representative: object
    size: int
    open: bool
    stable: bool
    epsilon: MonoidalWord


@dataclass
class TensorClasses:
    arity: int
    nodes: int
    delta: int
    classes: list = field(default_factory=list)
    universe_size: int = 0

    @property
    def count(self) -> int:
        return len(self.classes)

    @property
    def stable_count(self) -> int:
        return sum(1 for c in self.classes if c.stable)

    @property
    def stable(self) -> bool:
        return all(c.stable for c in self.classes)


def _partition(model: CoproductModel, n: int, N: int):
    uni = model.universe(n, N)
    index = {t: i for i, t in enumerate(uni)}
    parent = list(range(len(uni)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    escapes = [False] * len(uni)
    for i, t in enumerate(uni):
        for u in model.moves(t):
            j = index.get(u)
            if j is None:
                escapes[i] = True
                continue
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return uni, index, [find(i) for i in range(len(uni))], escapes


def bounded_tensor_classes(A: SetOperad, B: SetOperad, n: int, N: int, delta: int = 1,
                           model: CoproductModel | None = None) -> TensorClasses:
    """Classes of arity-``n`` normal forms with at most ``N`` nodes under interchange.

    A class is ``open`` when a member has a move leaving the node bound. It is
    ``stable`` when recomputing with bound ``N + delta`` merges it with no other
    class of the smaller universe (with ``delta == 0``: when it is not open).
    """
    if n > MAX_TENSOR_ARITY or N > MAX_NODES:
        raise CapacityError(f"bounds n={n}, N={N} exceed {MAX_TENSOR_ARITY}, {MAX_NODES}")
    for op in (A, B):
        if op.max_arity is not None and n > op.max_arity:
            raise CapacityError(f"{op.name} is truncated at arity {op.max_arity}")
    model = model or CoproductModel(A, B)
    uni, _, roots, escapes = _partition(model, n, N)
    groups: dict = defaultdict(list)
    for i, r in enumerate(roots):
        groups[r].append(i)
    is_open = {r: any(escapes[i] for i in g) for r, g in groups.items()}
    if delta > 0:
        big, big_index, big_roots, _ = _partition(model, n, N + delta)
        owners: dict = defaultdict(set)
        for i, t in enumerate(uni):
            owners[big_roots[big_index[t]]].add(roots[i])
        merged = {r for own in owners.values() if len(own) > 1 for r in own}
        stable = {r: r not in merged for r in groups}
    else:
        stable = {r: not is_open[r] for r in groups}
    out = TensorClasses(n, N, delta, universe_size=len(uni))
    for r in sorted(groups):
        rep = uni[groups[r][0]]
        out.classes.append(TensorClass(rep, len(groups[r]), is_open[r], stable[r], model.epsilon(rep)))
    return out


# ---------------------------------------------------------------------------
# closed formulas in arity <= 2


def tensor_unary_carrier(A: SetOperad, B: SetOperad) -> list[tuple]:
    return [(a, b) for a in A.carrier(1) for b in B.carrier(1)]


def unary_product(A: SetOperad, B: SetOperad, x: tuple, y: tuple) -> tuple:
    """The product monoid structure on ``A(1) x B(1)``."""
    return (A.compose(x[0], (y[0],)), B.compose(x[1], (y[1],)))


def tensor_binary_carrier(A: SetOperad, B: SetOperad) -> list[list]:
    """Set pushout of ``A(1)^2 x B(2) <- A(2) x B(2) -> A(2) x B(1)^2``; returns the classes."""
    left = [("L", a1, a2, b) for a1 in A.carrier(1) for a2 in A.carrier(1) for b in B.carrier(2)]
    right = [("R", a, b1, b2) for a in A.carrier(2) for b1 in B.carrier(1) for b2 in B.carrier(1)]
    parent = {x: x for x in left + right}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for a in A.carrier(2):
        for b in B.carrier(2):
            fa, fb = A.axial(a), B.axial(b)
            f = ("L", fa[0], fa[1], b)
            g = ("R", a, fb[0], fb[1])
            ra, rb = find(f), find(g)
            if ra != rb:
                parent[ra] = rb
    groups: dict = defaultdict(list)
    for x in left + right:
        groups[find(x)].append(x)
    return sorted((sorted(g, key=repr) for g in groups.values()), key=lambda g: repr(g[0]))


def pushout_to_term(model: CoproductModel, x: tuple):
    """The normal form represented by a pushout element."""
    if x[0] == "L":
        _, a1, a2, b = x
        return model.normalize(("B", b, (("A", a1, (1,)), ("A", a2, (2,)))))
    _, a, b1, b2 = x
    return model.normalize(("A", a, (("B", b1, (1,)), ("B", b2, (2,)))))


def unary_normalize(model: CoproductModel, t):
    return model.unary_normalize(model.normalize(t))
