"""k-fold monoidal words: normal forms, enumeration, the interchange order and composition.

A word tree is an ``int`` generator (``0`` is the unit / empty word) or a pair
``(op, children)`` with ``1 <= op <= k``. Normal forms have at least two
children per node, no child sharing its parent's operation, and no units.
Abelian words (k = 2) additionally keep children sorted by least generator.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Sequence

from . import perm as P
from .operad import CapacityError, SetOperad

DEFAULT_BOUND = 5


class WordError(ValueError):
    pass


# ---------------------------------------------------------------------------
# trees


def gens(t) -> list[int]:
    if isinstance(t, int):
        return [t] if t else []
    out: list[int] = []
    for c in t[1]:
        out.extend(gens(c))
    return out


def min_gen(t) -> int:
    return min(gens(t))


def normalize_tree(raw, ab: bool = False):
    """Flatten equal operations, drop units and unary nodes; sort children if ``ab``."""
    seen = gens(raw)
    if len(seen) != len(set(seen)):
        raise WordError(f"duplicate generator in {raw!r}")
    return _norm(raw, ab)


def _norm(t, ab):
    if isinstance(t, int):
        return t
    op, children = t
    flat: list = []
    for c in children:
        c = _norm(c, ab)
        if c == 0:
            continue
        if not isinstance(c, int) and c[0] == op:
            flat.extend(c[1])
        else:
            flat.append(c)
    if not flat:
        return 0
    if len(flat) == 1:
        return flat[0]
    if ab:
        flat.sort(key=min_gen)
    return (op, tuple(flat))


def serialize_tree(t) -> str:
    if isinstance(t, int):
        return str(t)
    return f"o{t[0]}(" + ",".join(serialize_tree(c) for c in t[1]) + ")"


def parse_tree(text: str):
    text = text.replace(" ", "")
    t, rest = _parse(text)
    if rest:
        raise WordError(f"trailing input {rest!r}")
    return t


def _parse(text):
    if text[:1] == "o":
        k = 1
        while text[k].isdigit():
            k += 1
        op = int(text[1:k])
        if text[k] != "(":
            raise WordError(f"expected '(' in {text!r}")
        rest = text[k + 1:]
        kids = []
        while True:
            c, rest = _parse(rest)
            kids.append(c)
            if rest[:1] == ",":
                rest = rest[1:]
                continue
            if rest[:1] == ")":
                return (op, tuple(kids)), rest[1:]
            raise WordError(f"unexpected {rest[:10]!r}")
    k = 0
    while k < len(text) and text[k].isdigit():
        k += 1
    if k == 0:
        raise WordError(f"expected generator at {text[:10]!r}")
    return int(text[:k]), text[k:]


def relabel_tree(t, mapping):
    if isinstance(t, int):
        return mapping[t] if t else 0
    return (t[0], tuple(relabel_tree(c, mapping) for c in t[1]))


def max_op(t) -> int:
    if isinstance(t, int):
        return 0
    return max([t[0]] + [max_op(c) for c in t[1]])


# ---------------------------------------------------------------------------
# the word type


@dataclass(frozen=True)
class MonoidalWord:
    tree: Any
    k: int
    ab: bool = False

    @classmethod
    def make(cls, raw, k: int, ab: bool = False) -> "MonoidalWord":
        if isinstance(raw, str):
            raw = parse_tree(raw)
        t = normalize_tree(raw, ab)
        if max_op(t) > k:
            raise WordError(f"operation index above k={k} in {serialize_tree(t)}")
        return cls(t, k, ab)

    @property
    def generators(self) -> tuple[int, ...]:
        return tuple(sorted(gens(self.tree)))

    @property
    def arity(self) -> int:
        return len(gens(self.tree))

    @property
    def op(self) -> int:
        """Outermost operation, 0 for a generator or the empty word."""
        return 0 if isinstance(self.tree, int) else self.tree[0]

    def blocks(self) -> list["MonoidalWord"]:
        if isinstance(self.tree, int):
            return [self]
        return [MonoidalWord(c, self.k, self.ab) for c in self.tree[1]]

    def serialize(self) -> str:
        return serialize_tree(self.tree)

    def __str__(self):
        return self.serialize()

    def __lt__(self, other):
        return self.serialize() < other.serialize()

    def __hash__(self):
        # words sit inside large tree keys; hashing them once saves most of the cost
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.tree, self.k, self.ab))
            object.__setattr__(self, "_hash", h)
        return h


def word(text: str, k: int = 2, ab: bool = False) -> MonoidalWord:
    return MonoidalWord.make(text, k, ab)


def normalize(raw, k: int = 2, ab: bool = False) -> MonoidalWord:
    return MonoidalWord.make(raw, k, ab)


# ---------------------------------------------------------------------------
# enumeration


def set_partitions(items: Sequence) -> list[list[tuple]]:
    items = list(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append([(first,)] + part)
        for i in range(len(part)):
            out.append(part[:i] + [(first,) + part[i]] + part[i + 1:])
    return out


@lru_cache(maxsize=None)
def _enum(S: tuple, forbid: int, k: int, ab: bool) -> tuple:
    if len(S) == 1:
        return (S[0],)
    out = []
    for op in range(1, k + 1):
        if op == forbid:
            continue
        for part in set_partitions(S):
            if len(part) < 2:
                continue
            blocks = [tuple(sorted(b)) for b in part]
            orders = [sorted(blocks)] if ab else list(itertools.permutations(blocks))
            for order in orders:
                choices = [_enum(b, op, k, ab) for b in order]
                for kids in itertools.product(*choices):
                    out.append((op, tuple(kids)))
    return tuple(out)


def enumerate_words(k: int, S: Iterable[int], ab: bool = False, bound: int = DEFAULT_BOUND
                    ) -> list[MonoidalWord]:
    S = tuple(sorted(S))
    if len(S) > bound:
        raise CapacityError(f"generator set of size {len(S)} exceeds bound {bound}")
    if ab and k != 2:
        raise WordError("abelian words are defined for k = 2")
    if not S:
        return [MonoidalWord(0, k, ab)]
    ws = [MonoidalWord(t, k, ab) for t in _enum(S, 0, k, ab)]
    return sorted(ws, key=MonoidalWord.serialize)


# ---------------------------------------------------------------------------
# the order


@lru_cache(maxsize=None)
def pair_relations(t) -> dict:
    """``(a, b) -> (op, a_before_b)`` for every ordered pair of distinct generators."""
    rel: dict = {}
    if isinstance(t, int):
        return rel
    op, children = t
    glist = [gens(c) for c in children]
    for c in children:
        rel.update(pair_relations(c))
    for i in range(len(children)):
        for j in range(i + 1, len(children)):
            for a in glist[i]:
                for b in glist[j]:
                    rel[(a, b)] = (op, True)
                    rel[(b, a)] = (op, False)
    return rel


def leq(alpha: MonoidalWord, beta: MonoidalWord) -> bool:
    """The pairwise morphism criterion between words on the same generators."""
    if alpha.generators != beta.generators:
        raise WordError("words on different generator sets")
    ra, rb = pair_relations(alpha.tree), pair_relations(beta.tree)
    for (a, b), (i, first) in ra.items():
        if not first:
            continue
        j, same = rb[(a, b)]
        if alpha.ab:
            if j < i:
                return False
        elif not ((same and j >= i) or (not same and j > i)):
            return False
    return True


def _views(x, j):
    """Ways to read the word tree ``x`` as ``A o_j B`` (units allowed)."""
    out = [(x, 0), (0, x)]
    if not isinstance(x, int) and x[0] == j:
        ch = x[1]
        for v in range(1, len(ch)):
            a = ch[0] if v == 1 else (j, ch[:v])
            b = ch[v] if v == len(ch) - 1 else (j, ch[v:])
            out.append((a, b))
    return out


def eta_successors(t, k: int) -> set:
    """Normal forms reachable from ``t`` by one interchange generator in some context."""
    out = set()
    for new in _eta_local(t, k):
        out.add(_norm(new, False))
    return out


def _eta_local(t, k):
    if isinstance(t, int):
        return
    i, ch = t
    for pos, c in enumerate(ch):
        for new_c in _eta_local(c, k):
            yield (i, ch[:pos] + (new_c,) + ch[pos + 1:])
    n = len(ch)
    for s in range(n):
        for e in range(s + 2, n + 1):
            for u in range(s + 1, e):
                X = ch[s] if u - s == 1 else (i, ch[s:u])
                Y = ch[u] if e - u == 1 else (i, ch[u:e])
                for j in range(i + 1, k + 1):
                    for A, B in _views(X, j):
                        for C, D in _views(Y, j):
                            new = (j, ((i, (A, C)), (i, (B, D))))
                            yield (i, ch[:s] + (new,) + ch[e:])


def leq_oracle(k: int, m: int) -> set:
    """Reflexive-transitive closure of the interchange generators on ``M_k(m)``."""
    if (k == 2 and m > 4) or (k == 3 and m > 3) or k > 3:
        raise CapacityError(f"oracle bound exceeded for k={k}, m={m}")
    ws = enumerate_words(k, range(1, m + 1))
    succ = {w.tree: eta_successors(w.tree, k) for w in ws}
    rel = set()
    for w in ws:
        seen = {w.tree}
        queue = deque([w.tree])
        while queue:
            x = queue.popleft()
            for y in succ[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        rel.update((w, MonoidalWord(y, k)) for y in seen)
    return rel


# ---------------------------------------------------------------------------
# operad structure


def compose_words(alpha: MonoidalWord, betas: Sequence[MonoidalWord], renumber: bool = True
                  ) -> MonoidalWord:
    """Substitute ``betas[i]`` for generator ``i + 1`` of ``alpha``.

    With ``renumber`` each ``betas[i]`` lives on ``1..j_i`` and is shifted into
    consecutive blocks; otherwise generator sets must already be disjoint.
    """
    n = alpha.arity
    if alpha.generators != tuple(range(1, n + 1)):
        raise WordError("composition expects alpha on 1..n")
    if len(betas) != n:
        raise WordError("wrong number of arguments")
    subs = {}
    off = 0
    used: set = set()
    for i, b in enumerate(betas):
        if renumber:
            m = b.arity
            if b.generators != tuple(range(1, m + 1)):
                raise WordError("renumbered composition expects betas on 1..j")
            subs[i + 1] = relabel_tree(b.tree, {g: g + off for g in range(1, m + 1)})
            off += m
        else:
            if used & set(b.generators):
                raise WordError("generator sets are not disjoint")
            used |= set(b.generators)
            subs[i + 1] = b.tree
    k = max([alpha.k] + [b.k for b in betas])
    return MonoidalWord(_norm(_substitute(alpha.tree, subs), alpha.ab), k, alpha.ab)


def _substitute(t, subs):
    if isinstance(t, int):
        return subs[t] if t else 0
    return (t[0], tuple(_substitute(c, subs) for c in t[1]))


def restrict_word(alpha: MonoidalWord, S: Iterable[int]) -> MonoidalWord:
    keep = set(S)
    mapping = {g: (g if g in keep else 0) for g in gens(alpha.tree)}
    return MonoidalWord(_norm(relabel_tree(alpha.tree, mapping), alpha.ab), alpha.k, alpha.ab)


def relabel(alpha: MonoidalWord, mapping: dict) -> MonoidalWord:
    return MonoidalWord(_norm(relabel_tree(alpha.tree, mapping), alpha.ab), alpha.k, alpha.ab)


def standardize(alpha: MonoidalWord) -> tuple[MonoidalWord, tuple[int, ...]]:
    """Relabel generators order-preservingly onto ``1..n``; returns the word and old labels."""
    g = alpha.generators
    return relabel(alpha, {x: i + 1 for i, x in enumerate(g)}), g


def abelianize(alpha: MonoidalWord) -> MonoidalWord:
    if alpha.k != 2:
        raise WordError("abelianization is defined for k = 2")
    return MonoidalWord(_norm(alpha.tree, True), 2, True)


def shift_ops(alpha: MonoidalWord, by: int, k: int) -> MonoidalWord:
    def rec(t):
        if isinstance(t, int):
            return t
        return (t[0] + by, tuple(rec(c) for c in t[1]))
    return MonoidalWord(rec(alpha.tree), k, alpha.ab)


class WordOperad(SetOperad):
    """The set operad of objects of ``M_k`` (or ``M_2^ab`` when ``ab``)."""

    def __init__(self, k: int, ab: bool = False, max_arity: int | None = 4):
        self.k = k
        self.ab = ab
        self.max_arity = max_arity
        self.unit = MonoidalWord(1, k, ab)
        self.zero = MonoidalWord(0, k, ab)
        self.name = f"M{k}ab" if ab else f"M{k}"
        self._carriers: dict[int, tuple] = {}

    def arity(self, x):
        return x.arity

    def carrier(self, n):
        self.check_arity(n)
        if n not in self._carriers:
            self._carriers[n] = tuple(enumerate_words(self.k, range(1, n + 1), self.ab,
                                                      bound=max(n, DEFAULT_BOUND)))
        return self._carriers[n]

    def compose(self, x, ys):
        out = compose_words(x, ys)
        self.check_arity(out.arity)
        return out

    def act(self, x, p):
        inv = P.inverse(p)
        return relabel(x, {g: inv[g - 1] + 1 for g in range(1, x.arity + 1)})

    def label(self, x):
        return x.serialize()

    def from_label(self, s):
        return MonoidalWord.make(s, self.k, self.ab)
