"""Planar tree terms over one operad, with grafting, relabelling and canonical forms.

A tree is either an ``int`` (an input carrying that label, 1-based) or a pair
``(label, children)`` where ``label`` is an operad element whose arity equals
``len(children)``. A stump is ``(zero, ())``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from . import perm as P
from .operad import SetOperad


def leaves(t) -> list[int]:
    if isinstance(t, int):
        return [t]
    out: list[int] = []
    for c in t[1]:
        out.extend(leaves(c))
    return out


def node_count(t) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(node_count(c) for c in t[1])


def relabel(t, mapping):
    if isinstance(t, int):
        return mapping[t]
    return (t[0], tuple(relabel(c, mapping) for c in t[1]))


def encode(op: SetOperad, t) -> str:
    if isinstance(t, int):
        return str(t)
    lab = op.label(t[0])
    if not t[1]:
        return _quote(lab)
    return _quote(lab) + "(" + ",".join(encode(op, c) for c in t[1]) + ")"


def _quote(lab: str) -> str:
    if any(ch in lab for ch in "()[],{} "):
        return "{" + lab + "}"
    return lab


def canonical(op: SetOperad, t):
    """Remove unit nodes and sort branches, moving the permutation into node labels."""
    if isinstance(t, int):
        return t
    label, children = t
    kids = [canonical(op, c) for c in children]
    if len(kids) == 1 and label == op.unit:
        return kids[0]
    keys = [_sort_key(op, c) for c in kids]
    best = None
    for p in P.sorting_perms(keys):
        cand = (op.act(label, p), tuple(kids[j] for j in p))
        if best is None or encode(op, cand) < encode(op, best):
            best = cand
    return best


def _sort_key(op, t):
    ls = leaves(t)
    return (0, min(ls), "") if ls else (1, 0, encode(op, t))


def evaluate(op: SetOperad, t):
    """The operad element represented by the tree, inputs read by their labels."""
    e = _eval_planar(op, t)
    order = [x - 1 for x in leaves(t)]
    return op.act(e, P.inverse(order))


def _eval_planar(op, t):
    if isinstance(t, int):
        return op.unit
    label, children = t
    return op.compose(label, [_eval_planar(op, c) for c in children])


@dataclass(frozen=True)
class OperadTerm:
    op: SetOperad
    tree: Any

    def __post_init__(self):
        ls = leaves(self.tree)
        if sorted(ls) != list(range(1, len(ls) + 1)):
            raise ValueError(f"input labels {ls} are not a bijection onto 1..{len(ls)}")
        _check_arities(self.op, self.tree)

    @property
    def arity(self) -> int:
        return len(leaves(self.tree))

    def graft(self, i: int, s: "OperadTerm") -> "OperadTerm":
        return graft(self, i, s)

    def act(self, sigma) -> "OperadTerm":
        return act_sigma(self, sigma)

    def canonical(self) -> "OperadTerm":
        return OperadTerm(self.op, canonical(self.op, self.tree))

    def evaluate(self):
        return evaluate(self.op, self.tree)

    def serialize(self) -> str:
        return encode(self.op, self.tree)

    def __eq__(self, other):
        return isinstance(other, OperadTerm) and self.op is other.op and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)


def _check_arities(op, t):
    if isinstance(t, int):
        return
    if op.arity(t[0]) != len(t[1]):
        raise ValueError(f"node {op.label(t[0])} has {len(t[1])} children")
    for c in t[1]:
        _check_arities(op, c)


def corolla(op: SetOperad, x) -> OperadTerm:
    n = op.arity(x)
    return OperadTerm(op, (x, tuple(range(1, n + 1))))


def graft(t: OperadTerm, i: int, s: OperadTerm) -> OperadTerm:
    """Attach ``s`` at the input labelled ``i`` of ``t``; labels renumber in order."""
    n, m = t.arity, s.arity
    if not 1 <= i <= n:
        raise IndexError(f"graft index {i} outside 1..{n}")
    lower = {j: (j if j < i else j + m - 1) for j in range(1, n + 1) if j != i}
    upper = {j: j + i - 1 for j in range(1, m + 1)}
    sub = relabel(s.tree, upper)

    def rec(x):
        if isinstance(x, int):
            return sub if x == i else lower[x]
        return (x[0], tuple(rec(c) for c in x[1]))
    return OperadTerm(t.op, rec(t.tree))


def act_sigma(t: OperadTerm, sigma) -> OperadTerm:
    """Relabel inputs so that the term evaluates to ``evaluate(t) . sigma``."""
    inv = P.inverse(sigma)
    return OperadTerm(t.op, relabel(t.tree, {j: inv[j - 1] + 1 for j in range(1, t.arity + 1)}))


def parse_term(op: SetOperad, text: str) -> OperadTerm:
    tree, rest = _parse(op, text.replace(" ", ""))
    if rest:
        raise ValueError(f"trailing input {rest!r}")
    return OperadTerm(op, tree)


def read_label(text: str) -> tuple[str, str]:
    if text.startswith("{"):
        depth = 0
        for k, ch in enumerate(text):
            depth += ch == "{"
            depth -= ch == "}"
            if depth == 0:
                return text[1:k], text[k + 1:]
        raise ValueError("unbalanced braces")
    k = 0
    while k < len(text) and text[k] not in "()[],":
        k += 1
    return text[:k], text[k:]


def split_args(text: str) -> tuple[list[str], str]:
    """Split ``(a,b,...)rest`` at top-level commas."""
    assert text[0] == "("
    depth, start, parts = 0, 1, []
    for k, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth == 0:
                parts.append(text[start:k])
                return parts, text[k + 1:]
        elif ch == "," and depth == 1:
            parts.append(text[start:k])
            start = k + 1
    raise ValueError("unbalanced parentheses")


def _parse(op, text):
    lab, rest = read_label(text)
    if lab.isdigit() and not rest.startswith("(") and lab != "0":
        return int(lab), rest
    x = op.from_label(lab)
    if not rest.startswith("("):
        return (x, ()), rest
    parts, rest = split_args(rest)
    kids = []
    for part in parts:
        c, r = _parse(op, part)
        if r:
            raise ValueError(f"trailing input {r!r}")
        kids.append(c)
    return (x, tuple(kids)), rest
