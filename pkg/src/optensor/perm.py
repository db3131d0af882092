"""Permutations of {0..n-1} stored as image tuples: ``p[i]`` is the image of ``i``.

Right actions compose as ``act(act(x, s), t) == act(x, mul(s, t))`` with
``mul(s, t)[i] == s[t[i]]``.
"""
from __future__ import annotations

from itertools import permutations
from typing import Sequence

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def inverse(p: Sequence[int]) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def mul(p: Sequence[int], q: Sequence[int]) -> Perm:
    return tuple(p[j] for j in q)


def all_perms(n: int) -> list[Perm]:
    return list(permutations(range(n)))


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def block_sum(blocks: Sequence[Sequence[int]]) -> Perm:
    out: list[int] = []
    off = 0
    for b in blocks:
        out.extend(off + x for x in b)
        off += len(b)
    return tuple(out)


def block_perm(sigma: Sequence[int], arities: Sequence[int]) -> Perm:
    """The permutation rho with ``(x.sigma) o (y) == (x o (y permuted)) . rho``.

    ``arities[i]`` is the arity of the i-th argument in the original order.
    """
    inv = inverse(sigma)
    offsets = []
    off = 0
    for a in arities:
        offsets.append(off)
        off += a
    rearranged: list[int] = []
    for t in range(len(sigma)):
        src = inv[t]
        rearranged.extend(range(offsets[src], offsets[src] + arities[src]))
    return inverse(rearranged)


def sorting_perms(keys: Sequence) -> list[Perm]:
    """All p such that ``keys[p[0]] <= keys[p[1]] <= ...``; ties give several."""
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    groups: list[list[int]] = []
    for i in order:
        if groups and keys[groups[-1][0]] == keys[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    out: list[list[int]] = [[]]
    for g in groups:
        if len(g) == 1:
            out = [o + g for o in out]
        else:
            out = [o + list(q) for o in out for q in permutations(g)]
    return [tuple(o) for o in out]
