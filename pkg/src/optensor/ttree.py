"""Trees with 0/1 edge labels over a set operad: the set-level W-construction at a fixed degree.

A tree is an ``int`` (an input, whose edge is outer and labelled 1) or
``(label, links)`` where ``links`` is a tuple of ``(edge, child)`` pairs and
``edge`` is 0 or 1. A stump is ``(zero, ())``. The root edge is outer.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from . import perm as P
from .operad import SetOperad
from .words import WordOperad, set_partitions


class TTreeError(ValueError):
    pass


# ---------------------------------------------------------------------------
# basic structure


@lru_cache(maxsize=None)
def leaves(t) -> tuple:
    if isinstance(t, int):
        return (t,)
    out: tuple = ()
    for _, c in t[1]:
        out += leaves(c)
    return out


def node_count(t) -> int:
    if isinstance(t, int):
        return 0
    return 1 + sum(node_count(c) for _, c in t[1])


def has_inputs(t) -> bool:
    return bool(leaves(t))


def relabel(t, mapping):
    """Rename inputs through ``mapping``; a value may be a whole subtree."""
    if isinstance(t, int):
        return mapping[t]
    return (t[0], tuple((e, relabel(c, mapping)) for e, c in t[1]))


def encode(op: SetOperad, t, edge: int = 1) -> str:
    if isinstance(t, int):
        return str(t)
    lab = op.label(t[0])
    if any(ch in lab for ch in "()[],{} "):
        lab = "{" + lab + "}"
    if not t[1]:
        return lab if edge == 1 else f"{lab}[{edge}]"
    return f"{lab}[{edge}](" + ",".join(encode(op, c, e) for e, c in t[1]) + ")"


def _min_edge_leaf(link):
    return min(leaves(link[1]))


class TreeOps:
    """Reduction, canonical forms and the operations of the tree operad over ``op``."""

    def __init__(self, op: SetOperad):
        self.op = op
        self.stump = (op.zero, ())
        self._red: dict = {}
        self._pre: dict = {}
        self._mlf: dict = {}
        self._enc: dict = {}
        self._c1: dict = {}
        self._ax: dict = {}

    # -- normal forms ---------------------------------------------------------

    def reduce(self, t, edge: int = 1):
        """Apply the identity and stump relations exhaustively, then sort branches.

        ``edge`` is the label of the edge below ``t``; input-free trees collapse
        to a stump only above a 1-edge.
        """
        if isinstance(t, int):
            return t
        key = (t, edge)
        hit = self._red.get(key)
        if hit is None:
            hit = self._red[key] = self._reduce(t, edge)
        return hit

    def _reduce(self, t, edge):
        op = self.op
        x, links = t
        if op.arity(x) != len(links):
            raise TTreeError(f"node {op.label(x)} has {len(links)} children")
        out = []
        for e, c in links:
            c = self.reduce(c, e)
            while True:
                if isinstance(c, int):
                    e = 1
                    break
                if len(c[1]) == 1 and c[0] == op.unit:
                    e2, d = c[1][0]
                    e, c = max(e, e2), d
                    continue
                if e == 1 and c[1] and not has_inputs(c):
                    c = self.stump
                break
            out.append((e, c))
        node = (x, tuple(out))
        if edge == 1 and not has_inputs(node):
            return self.stump
        if edge == 1 and len(out) == 1 and x == op.unit:
            return out[0][1]
        return self.canonical_node(node)

    def canonical_node(self, node):
        x, links = node
        keys = [(0, min(leaves(c)), e, "") if has_inputs(c) else (1, 0, e, self.code(c, e))
                for e, c in links]
        perms = P.sorting_perms(keys)
        if len(perms) == 1:
            p = perms[0]
            return (self.op.act(x, p), tuple(links[j] for j in p))
        best = None
        best_code = None
        for p in perms:
            cand = (self.op.act(x, p), tuple(links[j] for j in p))
            code = self.code(cand)
            if best is None or code < best_code:
                best, best_code = cand, code
        return best

    def code(self, t, edge: int = 1) -> str:
        """Memoized :func:`encode`."""
        key = (t, edge)
        hit = self._enc.get(key)
        if hit is None:
            hit = self._enc[key] = encode(self.op, t, edge)
        return hit

    def is_reduced(self, t) -> bool:
        return self.reduce(t) == t

    def encode(self, t) -> str:
        return self.code(t)

    # -- structure maps ---------------------------------------------------------

    def source(self, t):
        """Set every edge label to 1."""
        def rec(u):
            if isinstance(u, int):
                return u
            return (u[0], tuple((1, rec(c)) for _, c in u[1]))
        return self.reduce(rec(t))

    def target(self, t):
        """Shrink every 0-edge, composing the labels at its ends."""
        def rec(u):
            if isinstance(u, int):
                return u
            x = u[0]
            links = []
            pos = 0
            for e, c in u[1]:
                c = rec(c)
                if e == 0 and not isinstance(c, int):
                    x = self.op.partial(x, pos, c[0])
                    links.extend(c[1])
                    pos += len(c[1])
                else:
                    links.append((e, c))
                    pos += 1
            return (x, tuple(links))
        return self.reduce(rec(t))

    def boundary(self, t):
        return self.source(t), self.target(t)

    def corolla(self, x):
        n = self.op.arity(x)
        return self.reduce((x, tuple((1, j) for j in range(1, n + 1))))

    def graft(self, t, i: int, s):
        """Graft ``s`` onto input ``i`` of ``t`` (new edge labelled 1) and renumber."""
        n, m = len(leaves(t)), len(leaves(s))
        if not 1 <= i <= n:
            raise IndexError(f"graft index {i} outside 1..{n}")
        sub = relabel(s, {j: j + i - 1 for j in range(1, m + 1)})
        mapping = {j: (sub if j == i else (j if j < i else j + m - 1)) for j in range(1, n + 1)}
        return self.reduce(relabel(t, mapping))

    def act(self, t, sigma):
        inv = P.inverse(sigma)
        return self.reduce(relabel(t, {j: inv[j - 1] + 1 for j in range(1, len(sigma) + 1)}))

    def restrict(self, t, keep: Iterable[int]):
        """Stump every input outside ``keep`` and renumber the rest order-preservingly."""
        keep = sorted(set(keep))
        pos = {j: k + 1 for k, j in enumerate(keep)}
        return self.reduce(relabel(t, {j: pos.get(j, self.stump) for j in leaves(t)}))

    def axial_image(self, t) -> tuple:
        hit = self._ax.get(t)
        if hit is None:
            hit = self._ax[t] = self._axial(t)
        return hit

    def _axial(self, t) -> tuple:
        return tuple(self.restrict(t, [i]) for i in range(1, len(leaves(t)) + 1))

    # -- recovery from the axial image ------------------------------------------

    def recover_from_axial(self, comps: Sequence) -> Any:
        """The reduced tree whose axial image is ``comps``, or ``None``."""
        if not comps:
            raise TTreeError("the axial image of a nullary tree carries no information")
        comps = [self.reduce(c) for c in comps]
        for c in comps:
            if leaves(c) != (1,):
                raise TTreeError("components must have exactly one input")
        labelled = {i + 1: relabel(c, {1: i + 1}) for i, c in enumerate(comps)}
        t = self._recover(labelled)
        if t is None:
            return None
        t = self.reduce(t)
        return t if self.axial_image(t) == tuple(comps) else None

    def _recover(self, comps: dict):
        """``comps`` maps an input label to its component, whose single leaf carries that label."""
        labels = sorted(comps)
        if len(labels) == 1:
            return comps[labels[0]]
        if any(isinstance(comps[i], int) for i in labels):
            return None
        i0 = labels[0]
        x0, links0 = comps[i0]
        r = len(links0)
        # align every component's root with the first one
        options = []
        for i in labels:
            xi, links = comps[i]
            perms = [p for p in P.all_perms(r) if self.op.arity(xi) == r and self.op.act(xi, p) == x0]
            if not perms:
                return None
            options.append([tuple(links[j] for j in p) for p in perms])
        for choice in itertools.product(*options):
            t = self._assemble_root(x0, labels, choice)
            if t is not None:
                return t
        return None

    def _assemble_root(self, x0, labels, aligned):
        r = len(aligned[0])
        slot_of = {}
        for i, links in zip(labels, aligned):
            hits = [j for j, (_, c) in enumerate(links) if i in leaves(c)]
            if len(hits) != 1:
                return None
            slot_of[i] = hits[0]
        children = []
        for j in range(r):
            group = [i for i in labels if slot_of[i] == j]
            edges = {links[j][0] for links in aligned}
            if len(edges) != 1:
                return None
            e = edges.pop()
            if group:
                sub = self._recover({i: aligned[labels.index(i)][j][1] for i in group})
                if sub is None:
                    return None
            else:
                subs = {aligned[k][j][1] for k in range(len(labels))}
                if len(subs) != 1:
                    return None
                sub = subs.pop()
            children.append((e, sub))
        # components that do not pass through slot j must see its stumped version
        for k, i in enumerate(labels):
            for j in range(r):
                if slot_of[i] == j:
                    continue
                e, sub = children[j]
                want = self._stumped(e, sub)
                if aligned[k][j] != want:
                    return None
        return (x0, tuple(children))

    def _stumped(self, e, sub):
        if isinstance(sub, int):
            return (1, self.stump)
        return (e, self.reduce(relabel(sub, {j: self.stump for j in leaves(sub)}), e))

    def has_preimage(self, comps: Sequence) -> bool:
        key = tuple(comps)
        hit = self._pre.get(key)
        if hit is None:
            hit = self._pre[key] = self.recover_from_axial(comps) is not None
        return hit

    def note_preimage(self, comps: Sequence) -> None:
        """Record that ``comps`` is an axial image, e.g. because it was computed as one."""
        self._pre[tuple(comps)] = True

    def assemble_pairwise(self, comps: Sequence, witnesses: dict) -> Any:
        """Assemble an n-ary tree from components whose pairs are realised by ``witnesses``.

        ``witnesses[(i, j)]`` (0-based, i < j) must be a 2-ary tree with axial image
        ``(comps[i], comps[j])``. The construction recurses over the root's branches,
        following the inductive argument: inputs sharing a branch are assembled
        together and the other branches must agree with the stumped versions.
        """
        n = len(comps)
        comps = [self.reduce(c) for c in comps]
        for i in range(n):
            for j in range(i + 1, n):
                w = witnesses.get((i, j))
                if w is None or self.axial_image(self.reduce(w)) != (comps[i], comps[j]):
                    return None
        if n == 2:
            return self.reduce(witnesses[(0, 1)])
        t = self.recover_from_axial(comps)
        if t is None:
            raise TTreeError("pairwise-realisable components failed to assemble")
        return t

    # -- left factors -------------------------------------------------------------

    def left_factors(self, t) -> list:
        """``(factor, rest, height)`` for every cut at a 1-edge of the input path of an arity-1 tree."""
        if leaves(t) != (1,):
            raise TTreeError("left factors are defined for arity-1 trees")
        out = [(1, t, 0)]  # cut at the root edge: trivial factor
        path = []
        u = t
        while not isinstance(u, int):
            j = next(k for k, (_, c) in enumerate(u[1]) if has_inputs(c))
            path.append((u, j))
            u = u[1][j][1]
        # cutting the edge above the d-th node of the path
        for d in range(len(path)):
            node, j = path[d]
            e, above = node[1][j]
            if e != 1:
                continue
            bottom = self._cut(t, d)
            out.append((self.reduce(bottom), self.reduce(above), d + 1))
        return out

    def _cut(self, t, depth):
        x, links = t
        j = next(k for k, (_, c) in enumerate(links) if has_inputs(c))
        if depth == 0:
            new = (1, 1)
        else:
            e, c = links[j]
            new = (e, self._cut(c, depth - 1))
        return (x, links[:j] + (new,) + links[j + 1:])

    def mlf(self, comps: Sequence):
        """The maximal common left factor of arity-1 trees."""
        key = tuple(comps)
        hit = self._mlf.get(key)
        if hit is None:
            hit = self._mlf[key] = self._mlf_uncached([self.reduce(c) for c in comps])
        return hit

    def _mlf_uncached(self, comps):
        facs = [{f: h for f, _, h in self.left_factors(c)} for c in comps]
        common = set(facs[0])
        for f in facs[1:]:
            common &= set(f)
        top = max(facs[0][f] for f in common)
        best = [f for f in common if facs[0][f] == top]
        if len(best) != 1:
            raise TTreeError("maximal left factor is not unique")
        return best[0]

    def compose1(self, a, b):
        """Composite of arity-1 trees: ``b`` grafted on top of ``a``."""
        key = (a, b)
        hit = self._c1.get(key)
        if hit is None:
            hit = self._c1[key] = self.graft(a, 1, b)
        return hit

    # -- enumeration --------------------------------------------------------------

    def enumerate(self, n: int, max_nodes: int, label_arity: int = 3) -> list:
        """All reduced trees with inputs ``1..n`` and at most ``max_nodes`` nodes."""
        S = tuple(range(1, n + 1))
        out = {t for t, _ in self._gen(S, max_nodes, label_arity)}
        return sorted(out, key=lambda t: (node_count(t), self.encode(t)))

    @lru_cache(maxsize=None)
    def _gen(self, S: tuple, budget: int, cap: int) -> tuple:
        """Trees on input set ``S`` with at most ``budget`` nodes.

        For nonempty ``S`` these are reduced trees. For empty ``S`` they are the
        input-free trees allowed above a 0-edge: every 1-edge inside tops a stump.
        """
        op = self.op
        out = set()
        if len(S) == 1:
            out.add((S[0], 0))
        if not S:
            out.add((self.stump, 1))
        if budget <= 1 and not (budget == 1 and S):
            return tuple(out)
        for r in range(1, cap + 1):
            labels = [x for x in op.carrier(r) if not (r == 1 and x == op.unit)]
            if not labels:
                continue
            for blocks in _slot_assignments(S, r):
                subs = []
                for b in blocks:
                    opts = []
                    for c, cnt in self._gen(b, budget - 1, cap):
                        if isinstance(c, int):
                            opts.append(((1, c), cnt))
                        elif not b:
                            if c == self.stump:
                                opts.append(((1, c), cnt))
                            opts.append(((0, c), cnt))
                        else:
                            opts.append(((0, c), cnt))
                            opts.append(((1, c), cnt))
                    subs.append(opts)
                for combo in itertools.product(*subs):
                    used = 1 + sum(cnt for _, cnt in combo)
                    if used > budget:
                        continue
                    links = tuple(l for l, _ in combo)
                    for x in labels:
                        out.add((self.canonical_node((x, links)), used))
        return tuple(out)


def _slot_assignments(S: tuple, r: int):
    """Ways to distribute ``S`` over ``r`` ordered slots (slots may be empty), up to reordering.

    Nonempty blocks appear in order of least element, empty slots last; the
    equivariance relation makes other orders redundant.
    """
    seen = set()
    for part in set_partitions(S) if S else [[]]:
        k = len(part)
        if k > r:
            continue
        blocks = sorted((tuple(sorted(b)) for b in part), key=min)
        key = tuple(blocks) + ((),) * (r - k)
        if key not in seen:
            seen.add(key)
            yield key


@dataclass(frozen=True)
class TTree:
    """A reduced tree together with the operad it is labelled by."""

    ops: TreeOps
    tree: Any

    @classmethod
    def make(cls, ops: TreeOps, raw) -> "TTree":
        return cls(ops, ops.reduce(raw))

    @property
    def arity(self) -> int:
        return len(leaves(self.tree))

    def serialize(self) -> str:
        return self.ops.encode(self.tree)

    def __str__(self):
        return self.serialize()


class TreeOperad(SetOperad):
    """The trees over ``op`` as a set operad; carriers are cut off at ``max_nodes`` nodes."""

    def __init__(self, op: SetOperad, max_nodes: int = 4, label_arity: int = 2,
                 max_arity: int | None = 3):
        self.ops = TreeOps(op)
        self.max_nodes = max_nodes
        self.label_arity = label_arity
        self.max_arity = max_arity
        self.unit = 1
        self.zero = self.ops.stump
        self.name = f"T{op.name}"
        self._carriers: dict = {}

    def arity(self, x):
        return len(leaves(x))

    def carrier(self, n):
        self.check_arity(n)
        if n not in self._carriers:
            self._carriers[n] = tuple(self.ops.enumerate(n, self.max_nodes, self.label_arity))
        return self._carriers[n]

    def compose(self, x, ys):
        if len(ys) != self.arity(x):
            raise ValueError("wrong number of arguments")
        for i in range(len(ys) - 1, -1, -1):
            x = self.ops.graft(x, i + 1, ys[i])
        return x

    def act(self, x, p):
        return self.ops.act(x, p)

    def label(self, x):
        return self.ops.encode(x)

    def from_label(self, s):
        return parse(self.ops, s)


def word_tree_ops(max_arity: int | None = None) -> TreeOps:
    """Tree operations over the set operad of 2-fold monoidal words."""
    return TreeOps(WordOperad(2, max_arity=max_arity))


# ---------------------------------------------------------------------------
# parsing


def parse(ops: TreeOps, text: str):
    from .terms import read_label, split_args
    text = text.replace(" ", "")

    def rec(s):
        lab, rest = read_label(s)
        if lab.isdigit() and lab != "0" and not rest.startswith("(") and not rest.startswith("["):
            return int(lab), 1, rest
        e = 1
        if rest.startswith("["):
            e = int(rest[1])
            rest = rest[3:]
        x = ops.op.from_label(lab)
        if not rest.startswith("("):
            return (x, ()), e, rest
        parts, rest = split_args(rest)
        links = []
        for part in parts:
            c, ec, r = rec(part)
            if r:
                raise TTreeError(f"trailing input {r!r}")
            links.append((ec, c))
        return (x, tuple(links)), e, rest
    t, _, rest = rec(text)
    if rest:
        raise TTreeError(f"trailing input {rest!r}")
    return ops.reduce(t)


# ---------------------------------------------------------------------------
# exhaustive oracles for the left-factor lemmas


def factor_table(ops: TreeOps, max_nodes: int, label_arity: int = 2) -> dict:
    """Left factors found by composing every pair of arity-1 trees within the node bound.

    Maps each composite ``t`` to the set of ``f`` with ``compose1(f, g) == t`` for
    some ``g``, using only ``f`` and ``g`` of at most ``max_nodes`` nodes together.
    """
    U = ops.enumerate(1, max_nodes, label_arity)
    sized = sorted(((node_count(u), u) for u in U), key=lambda p: p[0])
    table: dict = {}
    for nf, f in sized:
        for ng, g in sized:
            if nf + ng > max_nodes:
                break
            table.setdefault(ops.compose1(f, g), set()).add(f)
    return table


def left_factor_failures(ops: TreeOps, max_nodes: int, label_arity: int = 2) -> list:
    """Trees where :meth:`TreeOps.left_factors` disagrees with :func:`factor_table`."""
    table = factor_table(ops, max_nodes, label_arity)
    bad = []
    for t in ops.enumerate(1, max_nodes, label_arity):
        listed = ops.left_factors(t)
        if any(ops.compose1(f, r) != t for f, r, _ in listed):
            bad.append(t)
        elif not table.get(t, set()) <= {f for f, _, _ in listed}:
            bad.append(t)
    return bad


def mlf_failures(ops: TreeOps, tuples, table: dict) -> list:
    """Tuples whose mlf is not a common factor or misses a common factor found by ``table``."""
    bad = []
    for comps in tuples:
        m = ops.mlf(comps)
        lf = [{f for f, _, _ in ops.left_factors(c)} for c in comps]
        if not all(m in s for s in lf):
            bad.append(comps)
            continue
        common = set.intersection(*(table.get(c, set()) for c in comps))
        divisors = {f for f, _, _ in ops.left_factors(m)}
        if not common <= divisors:
            bad.append(comps)
    return bad


def pair_reduction_failures(ops: TreeOps, tuples) -> list:
    """Tuples whose mlf equals the mlf of no pair of their components."""
    bad = []
    for comps in tuples:
        m = ops.mlf(comps)
        if not any(ops.mlf((comps[i], comps[j])) == m
                   for i, j in itertools.combinations(range(len(comps)), 2)):
            bad.append(comps)
    return bad


def cancellation_failures(ops: TreeOps, binary_trees) -> list:
    """Pairs ``(a, c)`` violating: ``(a.b, c)`` and ``(a, c.d)`` realised imply ``(a, c)`` realised.

    Realised pairs are the axial images of ``binary_trees``; ``a`` ranges over
    left factors of first components and ``c`` over left factors of second ones.
    """
    pairs = {ops.axial_image(t) for t in binary_trees}
    first = set()
    second = set()
    for x, y in pairs:
        for f, _, _ in ops.left_factors(x):
            first.add((f, y))
        for g, _, _ in ops.left_factors(y):
            second.add((x, g))
    return sorted((p for p in first & second if not ops.has_preimage(p)), key=repr)


def tuples_within(U: Sequence, n: int, max_total: int) -> list:
    """Multisets of ``n`` elements of ``U`` with at most ``max_total`` nodes in total."""
    sized = sorted(((node_count(u), i) for i, u in enumerate(U)))
    out = []

    def rec(start, left, acc, budget):
        if left == 0:
            out.append(tuple(U[i] for i in acc))
            return
        for pos in range(start, len(sized)):
            c, i = sized[pos]
            if c > budget:
                break
            rec(pos, left - 1, acc + [i], budget - c)
    rec(0, n, [], max_total)
    return out
