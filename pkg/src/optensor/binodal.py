"""Binodal trees, their carriers inside A(1)^S, and the three-input intersection table.

A binodal tree is an ``int`` (a single input) or ``(color, children)`` with
``color`` in ``{"b", "w"}``; children are sorted by least input. Carriers are
computed over the tree operad of a set operad with trivial unary part, through
a :class:`~optensor.ttree.TreeOps` instance.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

from .ttree import TreeOps, node_count

BLACK, WHITE = "b", "w"


class BinodalError(ValueError):
    pass


# ---------------------------------------------------------------------------
# shapes


def inputs(t) -> tuple:
    if isinstance(t, int):
        return (t,)
    return tuple(sorted(s for c in t[1] for s in inputs(c)))


def _min(t) -> int:
    return t if isinstance(t, int) else min(inputs(t))


def canonicalize(t):
    """Merge white-white edges, drop unary nodes and sort children by least input."""
    if isinstance(t, int):
        return t
    color, kids = t
    if color not in (BLACK, WHITE):
        raise BinodalError(f"unknown color {color!r}")
    if not kids:
        raise BinodalError("binodal trees have no stumps")
    out = []
    for c in kids:
        c = canonicalize(c)
        if color == WHITE and not isinstance(c, int) and c[0] == WHITE:
            out.extend(c[1])
        else:
            out.append(c)
    if len(out) == 1:
        return out[0]
    seen = [s for c in out for s in inputs(c)]
    if len(seen) != len(set(seen)):
        raise BinodalError("repeated input")
    return (color, tuple(sorted(out, key=_min)))


def serialize(t) -> str:
    if isinstance(t, int):
        return str(t)
    return t[0] + "(" + ",".join(serialize(c) for c in t[1]) + ")"


def parse(text: str):
    from .terms import split_args
    text = text.replace(" ", "")

    def rec(s):
        if s.isdigit():
            return int(s)
        if s[:1] not in (BLACK, WHITE) or s[1:2] != "(":
            raise BinodalError(f"cannot parse {s!r}")
        try:
            parts, rest = split_args(s[1:])
        except ValueError as exc:
            raise BinodalError(f"cannot parse {s!r}: {exc}") from None
        if rest:
            raise BinodalError(f"trailing input {rest!r}")
        return (s[0], tuple(rec(p) for p in parts))
    return canonicalize(rec(text))


def relabel(t, mapping: Mapping[int, int]):
    if isinstance(t, int):
        return mapping[t]
    return canonicalize((t[0], tuple(relabel(c, mapping) for c in t[1])))


def restrict_binodal(t, keep: Iterable[int]):
    """Delete the inputs outside ``keep`` and clean up."""
    keep = set(keep)
    if not keep:
        raise BinodalError("cannot restrict to the empty set")

    def rec(u):
        if isinstance(u, int):
            return u if u in keep else None
        kids = [k for k in (rec(c) for c in u[1]) if k is not None]
        if not kids:
            return None
        return kids[0] if len(kids) == 1 else (u[0], tuple(kids))
    out = rec(t)
    if out is None:
        raise BinodalError("no inputs left")
    return canonicalize(out)


@lru_cache(maxsize=None)
def enumerate_binodal(S: tuple) -> tuple:
    """All canonical binodal trees with input set ``S``."""
    S = tuple(sorted(S))
    if len(S) > 4:
        raise BinodalError("enumeration is limited to four inputs")
    if not S:
        raise BinodalError("binodal trees have at least one input")
    if len(S) == 1:
        return (S[0],)
    from .words import set_partitions
    out = set()
    for part in set_partitions(S):
        if len(part) < 2:
            continue
        blocks = sorted((tuple(sorted(b)) for b in part), key=min)
        for color in (BLACK, WHITE):
            opts = []
            for b in blocks:
                subs = enumerate_binodal(b)
                if color == WHITE:
                    subs = tuple(s for s in subs if isinstance(s, int) or s[0] == BLACK)
                opts.append(subs)
            for kids in itertools.product(*opts):
                out.add(canonicalize((color, kids)))
    return tuple(sorted(out, key=lambda t: (_size(t), serialize(t))))


def _size(t) -> int:
    return 0 if isinstance(t, int) else 1 + sum(_size(c) for c in t[1])


# ---------------------------------------------------------------------------
# carriers


def _sub(x: Mapping[int, object], t) -> dict:
    return {s: x[s] for s in inputs(t)}


def membership(ops: TreeOps, x: Mapping[int, object], t, method: str = "recursive") -> bool:
    """Is the tuple ``x`` (input -> arity-1 tree) in the carrier of ``t``?

    ``recursive`` follows the left-factor description of the carrier; ``triples``
    checks every restriction to at most three inputs.
    """
    if set(x) != set(inputs(t)):
        raise BinodalError("tuple and tree have different input sets")
    if method == "triples":
        return _triples(ops, x, t)
    if method != "recursive":
        raise BinodalError(f"unknown method {method!r}")
    return _mem(ops, x, t)


def _mem(ops, x, t) -> bool:
    if isinstance(t, int):
        return True
    color, kids = t
    if not all(_mem(ops, _sub(x, c), c) for c in kids):
        return False
    if color == WHITE:
        return True
    factors = []
    for c in kids:
        if isinstance(c, int):
            factors.append(ops.reduce(x[c]))
        else:
            factors.append(ops.mlf([x[s] for s in inputs(c)]))
    return ops.has_preimage(factors)


def _triples(ops, x, t) -> bool:
    S = inputs(t)
    if len(S) <= 3:
        return _mem(ops, x, t)
    for T in itertools.combinations(S, 3):
        sub = restrict_binodal(t, T)
        if not _mem(ops, _sub(x, sub), sub):
            return False
    return True


def relabel_tuple(x: Mapping[int, object], mapping: Mapping[int, int]) -> dict:
    return {mapping[s]: v for s, v in x.items()}


@dataclass(frozen=True)
class DecoratedBinodal:
    """A binodal tree with operad elements on its black nodes and on the inputs of white nodes.

    ``black`` maps the path of each black node (child indices from the root) to
    an element of matching arity; ``free`` maps inputs attached to a white node
    (or the lone input of a one-input tree) to an arity-1 element. Other edge
    decorations can always be absorbed into an adjacent black node, so this is
    a complete set of representatives; equality is decided on the image.
    """

    tree: object
    black: dict = field(default_factory=dict)
    free: dict = field(default_factory=dict)

    def evaluate(self, ops: TreeOps) -> dict:
        return _evaluate(ops, self.tree, (), self.black, self.free, parent=WHITE)


def _evaluate(ops, t, path, black, free, parent):
    if isinstance(t, int):
        if parent == WHITE:
            return {t: ops.reduce(free.get(t, 1))}
        return {t: 1}
    color, kids = t
    parts = [_evaluate(ops, c, path + (i,), black, free, color) for i, c in enumerate(kids)]
    if color == WHITE:
        out = {}
        for p in parts:
            out.update(p)
        return out
    x = black[path]
    ax = ops.axial_image(x)
    out = {}
    for a, p in zip(ax, parts):
        for s, y in p.items():
            out[s] = ops.compose1(a, y)
    return out


def carrier_elements(ops: TreeOps, t, max_nodes: int, label_arity: int = 2) -> dict:
    """Tuples generated by decorating ``t`` with at most ``max_nodes`` nodes in total.

    Returns a map from tuples (ordered by input) to the least number of nodes
    used. This builds the carrier directly from its definition and serves as an
    oracle for :func:`membership`.
    """
    gen = _CarrierGen(ops, max_nodes, label_arity)
    return gen.run(t)


class _CarrierGen:
    def __init__(self, ops, max_nodes, cap):
        self.ops, self.N, self.cap = ops, max_nodes, cap
        self._univ: dict = {}

    def universe(self, n):
        if n not in self._univ:
            self._univ[n] = [(u, node_count(u)) for u in self.ops.enumerate(n, self.N, self.cap)]
        return self._univ[n]

    def run(self, t):
        res = self._gen(t, WHITE)
        S = inputs(t)
        return {tuple(m[s] for s in S): c for m, c in ((dict(k), c) for k, c in res.items())}

    def _gen(self, t, parent) -> dict:
        """Map from frozen tuple (sorted items) to least node count."""
        ops, N = self.ops, self.N
        if isinstance(t, int):
            if parent == WHITE:
                return {((t, u),): c for u, c in self.universe(1)}
            return {((t, 1),): 0}
        color, kids = t
        parts = [sorted(self._gen(c, color).items(), key=lambda kv: kv[1]) for c in kids]
        out: dict = {}
        if color == WHITE:
            for combo, cost in _bounded_product(parts, N):
                key = tuple(sorted(kv for k, _ in combo for kv in k))
                if cost < out.get(key, N + 1):
                    out[key] = cost
            return out
        r = len(kids)
        leaf_only = all(isinstance(c, int) for c in kids)
        for x, cx in self.universe(r):
            if cx > N:
                continue
            ax = ops.axial_image(x)
            if leaf_only:
                ops.note_preimage(ax)
            for combo, cost in _bounded_product(parts, N - cx):
                cost += cx
                items = []
                for a, (k, _) in zip(ax, combo):
                    for s, y in k:
                        items.append((s, ops.compose1(a, y)))
                key = tuple(sorted(items))
                if cost < out.get(key, N + 1):
                    out[key] = cost
        return out


def _bounded_product(ordered, budget):
    """Choices of one ``(item, cost)`` per list with total cost at most ``budget``.

    Each list must be sorted by cost.
    """
    floors = [o[0][1] if o else budget + 1 for o in ordered]
    rest = [sum(floors[i:]) for i in range(len(floors) + 1)]

    def rec(i, acc, cost):
        if i == len(ordered):
            yield tuple(acc), cost
            return
        for item in ordered[i]:
            c = cost + item[1]
            if c + rest[i + 1] > budget:
                break
            acc.append(item)
            yield from rec(i + 1, acc, c)
            acc.pop()
    yield from rec(0, [], 0)


# ---------------------------------------------------------------------------
# the three-input intersection table


@dataclass(frozen=True)
class Tree:
    tree: object


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class NotRepresentable:
    pass


def shape(t) -> tuple:
    """``(kind, pair, single)`` for a canonical tree on three inputs.

    ``kind`` is ``"B"``/``"W"`` for corollas and two letters (upper node, root)
    otherwise; ``pair`` is the inputs of the upper node.
    """
    if isinstance(t, int) or len(inputs(t)) != 3:
        raise BinodalError("not a three-input binodal tree")
    color, kids = t
    if len(kids) == 3:
        return (color.upper(), (), None)
    inner = next(c for c in kids if not isinstance(c, int))
    single = next(c for c in kids if isinstance(c, int))
    return (inner[0].upper() + color.upper(), inputs(inner), single)


def from_shape(kind: str, pair: tuple = (), single: int | None = None, S: tuple = (1, 2, 3)):
    if len(kind) == 1:
        return canonicalize((kind.lower(), tuple(S)))
    upper, root = kind.lower()
    return canonicalize((root, ((upper, tuple(pair)), single)))


TABLE_ROWS = (
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "E1", "E2", "E3",
)


def table_row(t1, t2) -> str | None:
    """Which table row covers the pair (``None`` when the trees are equal)."""
    a, b = shape(t1), shape(t2)
    if inputs(t1) != inputs(t2):
        raise BinodalError("trees have different inputs")
    if a == b:
        return None
    if a[0] > b[0] or (a[0] == b[0] and a > b):
        a, b = b, a
    ka, kb = a[0], b[0]
    same = a[1] == b[1]
    if "W" in (ka, kb):
        return "A1"
    rows = {
        ("B", "BB"): "A2", ("B", "BW"): "A3", ("B", "WB"): "A4", ("BB", "BW"): "A5",
    }
    if (ka, kb) in rows:
        return rows[(ka, kb)]
    if (ka, kb) == ("BB", "WB"):
        return "A6" if same else "E2"
    if (ka, kb) == ("BW", "WB"):
        return "A7" if same else "A8"
    if (ka, kb) == ("BW", "BW"):
        return "A9"
    if (ka, kb) == ("BB", "BB"):
        return "E1"
    if (ka, kb) == ("WB", "WB"):
        return "E3"
    raise BinodalError(f"no table row for {ka} and {kb}")


def intersect3(t1, t2):
    """Intersection of the carriers of two three-input trees, read off the table."""
    t1, t2 = canonicalize(t1), canonicalize(t2)
    row = table_row(t1, t2)
    if row is None:
        return Tree(t1)
    a, b = shape(t1), shape(t2)
    if a[0] > b[0] or (a[0] == b[0] and a > b):
        a, b, t1, t2 = b, a, t2, t1
    S = inputs(t1)
    if row == "A1":
        return Tree(t2 if a[0] == "W" else t1)
    if row == "A2":
        return Tree(t2)
    if row == "A3":
        return Tree(t1)
    if row == "A4":
        return Tree(from_shape("BB", b[1], b[2], S))
    if row in ("A5", "A6"):
        return Tree(t1)
    if row == "A7":
        return Tree(from_shape("BB", a[1], a[2], S))
    if row == "A8":
        return Tree(t2)
    if row == "A9":
        return NotRepresentable()
    return Empty()


# ---------------------------------------------------------------------------
# exhaustive check of the table


@dataclass
class RowCheck:
    row: str
    t1: object
    t2: object
    answer: object
    ok: bool
    size: int  # elements of the corpus in both carriers


def verify_table(ops: TreeOps, max_nodes: int, label_arity: int = 2, S: tuple = (1, 2, 3)):
    """Check every pair of distinct three-input shapes against membership on a generated corpus.

    The corpus is the union of the carriers generated from all shapes with at
    most ``max_nodes`` decoration nodes. Returns ``(checks, unsound)``, where
    ``unsound`` counts generated tuples rejected by membership in their own shape.
    """
    shapes = enumerate_binodal(S)
    car = {t: set(carrier_elements(ops, t, max_nodes, label_arity)) for t in shapes}
    corpus = sorted(set().union(*car.values()), key=repr)
    mem = {t: {x for x in corpus if membership(ops, dict(zip(S, x)), t)} for t in shapes}
    unsound = sum(len(car[t] - mem[t]) for t in shapes)
    black = mem[from_shape("B", S=S)]
    checks = []
    for t1, t2 in itertools.combinations(shapes, 2):
        row, ans = table_row(t1, t2), intersect3(t1, t2)
        both = mem[t1] & mem[t2]
        if isinstance(ans, Tree):
            ok = both == mem[ans.tree]
        elif isinstance(ans, Empty):
            ok = not both
        else:
            ok = bool(both) and black <= both and all(both != mem[t] for t in shapes)
        checks.append(RowCheck(row, t1, t2, ans, ok, len(both)))
    return checks, unsound
