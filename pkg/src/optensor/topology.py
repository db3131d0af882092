"""Finite posets, their order complexes, exact integer homology and contractibility certificates."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

DEFAULT_MAX_OBJECTS = int(os.environ.get("OPTENSOR_MAX_POSET", "20000"))
DEFAULT_MAX_CHAINS = int(os.environ.get("OPTENSOR_MAX_CHAINS", "3000000"))


class BudgetError(RuntimeError):
    pass


class FinitePoset:
    """Objects ``0..n-1`` carried by ``elements``; ``above[i]`` is the strict up-set of ``i``."""

    def __init__(self, elements: Sequence[Hashable], above: Sequence[Iterable[int]], check: bool = True):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.above = [frozenset(a) for a in above]
        if check:
            self._check()
        self._below: list[frozenset] | None = None

    def _check(self):
        for i, a in enumerate(self.above):
            if i in a:
                raise ValueError(f"{self.elements[i]!r} lies strictly above itself")
            for j in a:
                if i in self.above[j]:
                    raise ValueError("order is not antisymmetric")
                if not self.above[j] <= a:
                    raise ValueError("order is not transitive")

    @classmethod
    def from_leq(cls, elements: Sequence, leq: Callable[[Any, Any], bool],
                 max_objects: int = DEFAULT_MAX_OBJECTS) -> "FinitePoset":
        if len(elements) > max_objects:
            raise BudgetError(f"{len(elements)} objects exceed the budget {max_objects}")
        els = list(elements)
        above = [[j for j, y in enumerate(els) if j != i and leq(x, y)] for i, x in enumerate(els)]
        return cls(els, above)

    @classmethod
    def from_covers(cls, elements: Sequence, covers: Iterable[tuple]) -> "FinitePoset":
        els = list(elements)
        idx = {e: i for i, e in enumerate(els)}
        succ: list[set] = [set() for _ in els]
        for a, b in covers:
            succ[idx[a]].add(idx[b])
        above: list[set | None] = [None] * len(els)

        def up(i, stack=()):
            if above[i] is None:
                if i in stack:
                    raise ValueError("cycle in cover relation")
                acc: set = set()
                for j in succ[i]:
                    acc.add(j)
                    acc |= up(j, stack + (i,))
                above[i] = acc
            return above[i]
        for i in range(len(els)):
            up(i)
        return cls(els, above)

    def __len__(self):
        return len(self.elements)

    def leq(self, a, b) -> bool:
        i, j = self.index[a], self.index[b]
        return i == j or j in self.above[i]

    @property
    def below(self) -> list[frozenset]:
        if self._below is None:
            b: list[set] = [set() for _ in self.elements]
            for i, a in enumerate(self.above):
                for j in a:
                    b[j].add(i)
            self._below = [frozenset(x) for x in b]
        return self._below

    def covers(self) -> list[tuple[int, int]]:
        out = []
        for i, a in enumerate(self.above):
            for j in a:
                if not any(j in self.above[m] for m in a):
                    out.append((i, j))
        return sorted(out)

    def relations(self) -> int:
        return sum(len(a) for a in self.above)

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.elements, self.below, check=False)

    def induced(self, keep: Iterable[int]) -> "FinitePoset":
        keep = sorted(set(keep))
        pos = {i: n for n, i in enumerate(keep)}
        return FinitePoset([self.elements[i] for i in keep],
                           [[pos[j] for j in self.above[i] if j in pos] for i in keep], check=False)

    def terminal(self) -> int | None:
        n = len(self)
        for i in range(n):
            if len(self.below[i]) == n - 1:
                return i
        return None

    def initial(self) -> int | None:
        n = len(self)
        for i in range(n):
            if len(self.above[i]) == n - 1:
                return i
        return None

    def components(self) -> int:
        parent = list(range(len(self)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for i, a in enumerate(self.above):
            for j in a:
                parent[find(i)] = find(j)
        return len({find(i) for i in range(len(self))})

    def core(self) -> "FinitePoset":
        """Remove beat points until none remain; the order complex keeps its homotopy type."""
        alive = set(range(len(self)))
        changed = True
        while changed and len(alive) > 1:
            changed = False
            for x in sorted(alive):
                up = self.above[x] & alive
                if up and _has_min(self, up):
                    alive.discard(x)
                    changed = True
                    continue
                down = self.below[x] & alive
                if down and _has_max(self, down):
                    alive.discard(x)
                    changed = True
        return self.induced(alive)

    def to_json(self, label: Callable[[Any], str] = str) -> dict:
        names = [label(e) for e in self.elements]
        return {"objects": names,
                "covers": [[names[i], names[j]] for i, j in self.covers()]}

    def to_dot(self, label: Callable[[Any], str] = str, name: str = "P") -> str:
        names = [label(e) for e in self.elements]
        lines = [f"digraph {name} {{"]
        for n in names:
            lines.append(f'  "{n}";')
        for i, j in self.covers():
            lines.append(f'  "{names[i]}" -> "{names[j]}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _has_min(P: FinitePoset, S: frozenset) -> bool:
    return any(S - {s} <= P.above[s] for s in S)


def _has_max(P: FinitePoset, S: frozenset) -> bool:
    return any(S - {s} <= P.below[s] for s in S)


# ---------------------------------------------------------------------------
# chain complexes


@dataclass
class ChainComplex:
    """Order complex: ``simplices[d]`` lists increasing chains of length d+1."""

    simplices: list[list[tuple]]
    index: list[dict] = field(default_factory=list)

    def __post_init__(self):
        if not self.index:
            self.index = [{s: i for i, s in enumerate(level)} for level in self.simplices]

    @property
    def f_vector(self) -> list[int]:
        return [len(level) for level in self.simplices]

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def boundary(self, d: int) -> list[dict]:
        """Columns of the boundary map from degree d to degree d-1, as ``{row: coefficient}``."""
        if d <= 0 or d >= len(self.simplices):
            return [dict() for _ in (self.simplices[d] if 0 <= d < len(self.simplices) else [])]
        idx = self.index[d - 1]
        cols = []
        for s in self.simplices[d]:
            col = {}
            for k in range(len(s)):
                col[idx[s[:k] + s[k + 1:]]] = -1 if k % 2 else 1
            cols.append(col)
        return cols

    def euler(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))


def nerve(P: FinitePoset, max_chains: int = DEFAULT_MAX_CHAINS) -> ChainComplex:
    levels: list[list[tuple]] = []
    count = 0
    frontier = [(i,) for i in range(len(P))]
    while frontier:
        levels.append(frontier)
        count += len(frontier)
        if count > max_chains:
            raise BudgetError(f"more than {max_chains} chains")
        nxt = []
        for c in frontier:
            for j in sorted(P.above[c[-1]]):
                nxt.append(c + (j,))
        frontier = nxt
    for level in levels:
        level.sort()
    return ChainComplex(levels)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_diagonal(cols: list[dict], nrows: int) -> list[int]:
    """Nonzero invariant factors of an integer matrix given by sparse columns."""
    cols = {c: dict(v) for c, v in enumerate(cols) if v}
    rows: dict[int, set] = {}
    for c, v in cols.items():
        for r in v:
            rows.setdefault(r, set()).add(c)
    diag: list[int] = []
    # unit pivots, cheapest first
    progress = True
    while progress:
        progress = False
        for c in sorted(cols, key=lambda c: len(cols[c])):
            if c not in cols:
                continue
            col = cols[c]
            best = None
            for r, v in col.items():
                if v in (1, -1) and (best is None or len(rows[r]) < len(rows[best])):
                    best = r
            if best is None:
                continue
            _pivot(cols, rows, c, best)
            diag.append(1)
            progress = True
    if cols:
        rlist = sorted({r for v in cols.values() for r in v})
        rpos = {r: i for i, r in enumerate(rlist)}
        M = [[0] * len(cols) for _ in rlist]
        for j, c in enumerate(sorted(cols)):
            for r, v in cols[c].items():
                M[rpos[r]][j] = v
        diag.extend(dense_smith(M))
    return diag


def _pivot(cols, rows, c, r):
    p = cols[c][r]
    for c2 in list(rows[r]):
        if c2 == c:
            continue
        f = cols[c2][r] * p  # p is a unit, so this is cols[c2][r] / p
        col2 = cols[c2]
        for r2, v in cols[c].items():
            nv = col2.get(r2, 0) - f * v
            if nv:
                if r2 not in col2:
                    rows[r2].add(c2)
                col2[r2] = nv
            elif r2 in col2:
                del col2[r2]
                rows[r2].discard(c2)
        if not col2:
            del cols[c2]
    for r2 in cols[c]:
        rows[r2].discard(c)
    del cols[c]
    del rows[r]


def dense_smith(M: list[list[int]]) -> list[int]:
    """Invariant factors (positive, nonzero) of a dense integer matrix."""
    A = [row[:] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    out = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry as pivot
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (piv is None or abs(A[i][j]) < abs(A[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                piv = min(((i, t) for i in range(t, m) if A[i][t]), key=lambda x: abs(A[x[0]][t]),
                          default=None)
                cand = min(((t, j) for j in range(t, n) if A[t][j]), key=lambda x: abs(A[t][x[1]]))
                if piv is None or abs(A[cand[0]][cand[1]]) < abs(A[piv[0]][piv[1]]):
                    piv = cand
                i, j = piv
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # divisibility condition
            p = A[t][t]
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is not None:
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                done = False
        out.append(abs(A[t][t]))
        t += 1
    return out


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def homology(C: ChainComplex) -> list[HomologyGroup]:
    dims = C.f_vector
    top = len(dims)
    diags = [[] for _ in range(top + 1)]
    for d in range(1, top):
        diags[d] = smith_diagonal(C.boundary(d), dims[d - 1])
    out = []
    for d in range(top):
        rank_out = len(diags[d]) if d >= 1 else 0
        rank_in = len(diags[d + 1]) if d + 1 < top else 0
        tors = tuple(sorted(x for x in (diags[d + 1] if d + 1 < top else []) if x > 1))
        out.append(HomologyGroup(dims[d] - rank_out - rank_in, tors))
    while len(out) > 1 and out[-1].betti == 0 and not out[-1].torsion:
        out.pop()
    return out


def betti(C: ChainComplex) -> tuple[int, ...]:
    return tuple(h.betti for h in homology(C))


def poset_homology(P: FinitePoset, use_core: bool = True) -> list[HomologyGroup]:
    """Homology of the order complex; beat-point removal first unless disabled."""
    if len(P) == 0:
        return [HomologyGroup(0)]
    return homology(nerve(P.core() if use_core else P))


def boundary_squared_zero(C: ChainComplex) -> bool:
    for d in range(2, len(C.simplices)):
        b1 = C.boundary(d - 1)
        for col in C.boundary(d):
            acc: dict = {}
            for r, v in col.items():
                for r2, w in b1[r].items():
                    acc[r2] = acc.get(r2, 0) + v * w
            if any(acc.values()):
                return False
    return True


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class TerminalObject:
    obj: Any
    kind = "terminal"


@dataclass(frozen=True)
class InitialObject:
    obj: Any
    kind = "initial"


@dataclass(frozen=True)
class Dismantlable:
    """Beat-point removal collapses the poset to one point; the nerve is contractible."""
    removed: int
    kind = "dismantlable"


@dataclass(frozen=True)
class HomologyPoint:
    """Reduced homology vanishes; necessary for contractibility, not sufficient."""
    kind = "homology-point only"


@dataclass(frozen=True)
class Inconclusive:
    betti: tuple
    kind = "inconclusive"


def contractibility_certificate(P: FinitePoset):
    if len(P) == 0:
        return Inconclusive((0,))
    t = P.terminal()
    if t is not None:
        return TerminalObject(P.elements[t])
    i = P.initial()
    if i is not None:
        return InitialObject(P.elements[i])
    core = P.core()
    if len(core) == 1:
        return Dismantlable(len(P) - 1)
    hs = homology(nerve(core))
    if hs[0].betti == 1 and not hs[0].torsion and all(h.betti == 0 and not h.torsion for h in hs[1:]):
        return HomologyPoint()
    return Inconclusive(tuple(h.betti for h in hs))
