"""Finite reduced set operads: the interface, built-in families and law checks.

An element ``x`` of arity ``n`` is read as an operation ``x(T_0, ..., T_{n-1})``.
The right action is ``(x . s)(T) = x(T_{s^-1(0)}, ..., T_{s^-1(n-1)})`` and
composition ``x o (y_0, ..., y_{n-1})`` feeds consecutive input blocks to the
``y_i``.
"""
from __future__ import annotations

import itertools
import json
import random
from typing import Any, Iterable, Sequence

from . import perm as P


class CapacityError(ValueError):
    """Raised when a carrier beyond the configured arity cap is requested."""


class LawViolation(AssertionError):
    pass


class SetOperad:
    """Base class. Subclasses provide ``arity``, ``carrier``, ``compose``, ``act``."""

    name = "operad"
    max_arity: int | None = 4
    unit: Any = None
    zero: Any = None

    def arity(self, x) -> int:
        raise NotImplementedError

    def carrier(self, n: int) -> tuple:
        raise NotImplementedError

    def compose(self, x, ys: Sequence) -> Any:
        raise NotImplementedError

    def act(self, x, p: Sequence[int]) -> Any:
        raise NotImplementedError

    def label(self, x) -> str:
        return str(x)

    # -- derived operations -------------------------------------------------

    def check_arity(self, n: int) -> None:
        if self.max_arity is not None and n > self.max_arity:
            raise CapacityError(f"{self.name}: arity {n} exceeds cap {self.max_arity}")

    def partial(self, x, i: int, y):
        """``x o_i y`` with 0-based ``i``."""
        n = self.arity(x)
        ys = [self.unit] * n
        ys[i] = y
        return self.compose(x, ys)

    def restrict(self, x, subset: Iterable[int]):
        """Compose with ``id`` at 1-based positions in ``subset`` and ``0`` elsewhere."""
        keep = set(subset)
        n = self.arity(x)
        if not keep <= set(range(1, n + 1)):
            raise ValueError(f"restriction set {sorted(keep)} not inside 1..{n}")
        return self.compose(x, [self.unit if i + 1 in keep else self.zero for i in range(n)])

    def axial(self, x) -> tuple:
        return tuple(self.restrict(x, {i}) for i in range(1, self.arity(x) + 1))

    def from_label(self, s: str):
        if not hasattr(self, "_labels"):
            self._labels = {}
        if s not in self._labels:
            cap = self.max_arity if self.max_arity is not None else 4
            for n in range(cap + 1):
                for x in self.carrier(n):
                    self._labels[self.label(x)] = x
        try:
            return self._labels[s]
        except KeyError:
            raise ValueError(f"{self.name}: unknown element {s!r}") from None

    def unary_monoid(self) -> "Monoid":
        els = self.carrier(1)
        table = {(a, b): self.compose(a, (b,)) for a in els for b in els}
        return Monoid(els, table, self.unit, names={e: self.label(e) for e in els})

    def stabilizer_perms(self, x, y) -> list:
        """All permutations p with ``act(x, p) == y``."""
        n = self.arity(x)
        if self.arity(y) != n:
            return []
        return [p for p in P.all_perms(n) if self.act(x, p) == y]

    def sizes(self, upto: int | None = None) -> list[int]:
        cap = self.max_arity if upto is None else upto
        return [len(self.carrier(n)) for n in range(cap + 1)]


# ---------------------------------------------------------------------------
# Monoids


class Monoid:
    def __init__(self, elements: Sequence, table: dict, unit, names: dict | None = None):
        self.elements = tuple(elements)
        self.table = dict(table)
        self.unit = unit
        self.names = names or {e: str(e) for e in self.elements}

    def mul(self, a, b):
        return self.table[(a, b)]

    def __len__(self):
        return len(self.elements)

    def check(self) -> None:
        for a in self.elements:
            if self.mul(self.unit, a) != a or self.mul(a, self.unit) != a:
                raise LawViolation(f"unit law fails at {a}")
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                raise LawViolation(f"monoid associativity fails at {a},{b},{c}")

    def zero_element(self):
        for z in self.elements:
            if all(self.mul(z, a) == z == self.mul(a, z) for a in self.elements):
                return z
        return None

    @classmethod
    def from_rows(cls, names: Sequence[str], rows: Sequence[Sequence[str]]) -> "Monoid":
        """Multiplication table given row by row; ``names[0]`` is the unit."""
        table = {(a, b): rows[i][j] for i, a in enumerate(names) for j, b in enumerate(names)}
        m = cls(names, table, names[0])
        m.check()
        return m

    @classmethod
    def trivial(cls) -> "Monoid":
        return cls.from_rows(["1"], [["1"]])

    @classmethod
    def cyclic(cls, n: int) -> "Monoid":
        names = ["1"] + [f"g{i}" for i in range(1, n)]
        rows = [[names[(i + j) % n] for j in range(n)] for i in range(n)]
        return cls.from_rows(names, rows)

    @classmethod
    def product(cls, m1: "Monoid", m2: "Monoid") -> "Monoid":
        els = [(a, b) for a in m1.elements for b in m2.elements]
        table = {(x, y): (m1.mul(x[0], y[0]), m2.mul(x[1], y[1])) for x in els for y in els}
        names = {e: f"{m1.names[e[0]]}.{m2.names[e[1]]}" for e in els}
        return cls(els, table, (m1.unit, m2.unit), names)


def small_monoids() -> dict[str, Monoid]:
    """A few monoids of order <= 3 used by the built-in families."""
    return {
        "trivial": Monoid.trivial(),
        "c2": Monoid.cyclic(2),
        "c3": Monoid.cyclic(3),
        "z2": Monoid.from_rows(["1", "z"], [["1", "z"], ["z", "z"]]),
        "z3_idem": Monoid.from_rows(
            ["1", "a", "z"], [["1", "a", "z"], ["a", "a", "z"], ["z", "z", "z"]]),
        "z3_nil": Monoid.from_rows(
            ["1", "a", "z"], [["1", "a", "z"], ["a", "z", "z"], ["z", "z", "z"]]),
        "z3_inv": Monoid.from_rows(
            ["1", "a", "z"], [["1", "a", "z"], ["a", "1", "z"], ["z", "z", "z"]]),
        "rz3": Monoid.from_rows(
            ["1", "p", "q"], [["1", "p", "q"], ["p", "p", "q"], ["q", "p", "q"]]),
    }


# ---------------------------------------------------------------------------
# Built-in operads


class AssOperad(SetOperad):
    """Elements of arity n are words ``(w_1..w_n)`` meaning ``x_{w_1} ... x_{w_n}``."""

    name = "Ass"

    def __init__(self, max_arity: int | None = 4):
        self.max_arity = max_arity
        self.unit = (1,)
        self.zero = ()

    def arity(self, x):
        return len(x)

    def carrier(self, n):
        self.check_arity(n)
        return tuple(sorted(tuple(i + 1 for i in p) for p in P.all_perms(n)))

    def compose(self, x, ys):
        if len(ys) != len(x):
            raise ValueError("arity mismatch")
        offs = list(itertools.accumulate([0] + [len(y) for y in ys]))
        out = []
        for letter in x:
            out.extend(offs[letter - 1] + u for u in ys[letter - 1])
        self.check_arity(len(out))
        return tuple(out)

    def act(self, x, p):
        inv = P.inverse(p)
        return tuple(inv[w - 1] + 1 for w in x)

    def label(self, x):
        return "0" if not x else "s" + "".join(map(str, x))


class ComOperad(SetOperad):
    """One element ``lambda_n`` per arity, stored as the integer n."""

    name = "Com"

    def __init__(self, max_arity: int | None = 4):
        self.max_arity = max_arity
        self.unit = 1
        self.zero = 0

    def arity(self, x):
        return x

    def carrier(self, n):
        self.check_arity(n)
        return (n,)

    def compose(self, x, ys):
        if len(ys) != x:
            raise ValueError("arity mismatch")
        n = sum(ys)
        self.check_arity(n)
        return n

    def act(self, x, p):
        return x

    def label(self, x):
        return "0" if x == 0 else f"c{x}"


class RUOperad(SetOperad):
    """``RM(k) = M^k``; composition multiplies each inner factor on the left."""

    def __init__(self, monoid: Monoid, max_arity: int | None = 4, name: str | None = None):
        self.monoid = monoid
        self.max_arity = max_arity
        self.unit = (monoid.unit,)
        self.zero = ()
        self.name = name or f"RU[{len(monoid)}]"

    def arity(self, x):
        return len(x)

    def carrier(self, n):
        self.check_arity(n)
        return tuple(itertools.product(self.monoid.elements, repeat=n))

    def compose(self, x, ys):
        if len(ys) != len(x):
            raise ValueError("arity mismatch")
        out = tuple(self.monoid.mul(a, b) for a, y in zip(x, ys) for b in y)
        self.check_arity(len(out))
        return out

    def act(self, x, p):
        return tuple(x[p[j]] for j in range(len(x)))

    def label(self, x):
        if not x:
            return "0"
        return "r_" + "_".join(self.monoid.names[e] for e in x)


class ZeroMonoidOperad(SetOperad):
    """``O(1) = M`` for a monoid with zero ``z``, one element ``lambda_n`` for n >= 2.

    Restricting ``lambda_n`` to a single input gives ``z``.
    """

    def __init__(self, monoid: Monoid, max_arity: int | None = 3, name: str | None = None):
        z = monoid.zero_element()
        if z is None:
            raise ValueError("monoid needs a two-sided zero")
        self.monoid = monoid
        self.z = z
        self.max_arity = max_arity
        self.unit = ("m", monoid.unit)
        self.zero = ("0",)
        self.name = name or f"ZM[{len(monoid)}]"

    def arity(self, x):
        if x[0] == "0":
            return 0
        if x[0] == "m":
            return 1
        return x[1]

    def carrier(self, n):
        self.check_arity(n)
        if n == 0:
            return (self.zero,)
        if n == 1:
            return tuple(("m", e) for e in self.monoid.elements)
        return (("lam", n),)

    def compose(self, x, ys):
        if len(ys) != self.arity(x):
            raise ValueError("arity mismatch")
        ar = [self.arity(y) for y in ys]
        s = sum(ar)
        self.check_arity(s)
        if s == 0:
            return self.zero
        if s >= 2:
            return ("lam", s)
        if x[0] == "m":
            y = ys[0]
            return ("m", self.monoid.mul(x[1], y[1]))
        return ("m", self.z)

    def act(self, x, p):
        return x

    def label(self, x):
        if x[0] == "0":
            return "0"
        if x[0] == "m":
            return "m_" + self.monoid.names[x[1]]
        return f"lam{x[1]}"


class ProjectionOperad(SetOperad):
    """Projections and constants inside an endomorphism operad; ``|O(n)| = n + 1``."""

    name = "Proj"

    def __init__(self, max_arity: int | None = 2):
        self.max_arity = max_arity
        self.unit = ("p", 1, 1)
        self.zero = ("bot", 0)

    def arity(self, x):
        return x[1]

    def carrier(self, n):
        self.check_arity(n)
        return tuple([("p", n, i) for i in range(1, n + 1)] + [("bot", n)])

    def compose(self, x, ys):
        if len(ys) != x[1]:
            raise ValueError("arity mismatch")
        ar = [y[1] for y in ys]
        s = sum(ar)
        self.check_arity(s)
        if x[0] == "bot":
            return ("bot", s)
        i = x[2] - 1
        y = ys[i]
        if y[0] == "bot":
            return ("bot", s)
        return ("p", s, sum(ar[:i]) + y[2])

    def act(self, x, p):
        if x[0] == "bot":
            return x
        inv = P.inverse(p)
        return ("p", x[1], inv[x[2] - 1] + 1)

    def label(self, x):
        if x[0] == "bot":
            return "0" if x[1] == 0 else f"bot{x[1]}"
        return f"p{x[1]}_{x[2]}"


class ProductOperad(SetOperad):
    """Arity-wise product; zero and unit are pairs."""

    def __init__(self, a: SetOperad, b: SetOperad, max_arity: int | None = None):
        self.a, self.b = a, b
        caps = [c for c in (a.max_arity, b.max_arity, max_arity) if c is not None]
        self.max_arity = min(caps) if caps else None
        self.unit = (a.unit, b.unit)
        self.zero = (a.zero, b.zero)
        self.name = f"{a.name}x{b.name}"

    def arity(self, x):
        return self.a.arity(x[0])

    def carrier(self, n):
        self.check_arity(n)
        return tuple(itertools.product(self.a.carrier(n), self.b.carrier(n)))

    def compose(self, x, ys):
        return (self.a.compose(x[0], [y[0] for y in ys]),
                self.b.compose(x[1], [y[1] for y in ys]))

    def act(self, x, p):
        return (self.a.act(x[0], p), self.b.act(x[1], p))

    def label(self, x):
        if self.arity(x) == 0:
            return "0"
        return f"{self.a.label(x[0])}__{self.b.label(x[1])}"


class FiniteOperad(SetOperad):
    """Explicit carriers with full composition and action tables over element names."""

    def __init__(self, name: str, carriers: dict[int, Sequence[str]], unit: str, zero: str,
                 compose_table: dict, action_table: dict, max_arity: int):
        self.name = name
        self.carriers = {n: tuple(v) for n, v in carriers.items()}
        self.unit = unit
        self.zero = zero
        self.compose_table = dict(compose_table)
        self.action_table = dict(action_table)
        self.max_arity = max_arity
        self._arity = {x: n for n, els in self.carriers.items() for x in els}

    def arity(self, x):
        return self._arity[x]

    def carrier(self, n):
        self.check_arity(n)
        return self.carriers.get(n, ())

    def compose(self, x, ys):
        key = (x, tuple(ys))
        if key not in self.compose_table:
            s = sum(self._arity[y] for y in ys)
            self.check_arity(s)
            raise KeyError(f"{self.name}: composition {key} missing from table")
        return self.compose_table[key]

    def act(self, x, p):
        return self.action_table[(x, tuple(p))]

    def label(self, x):
        return x

    def from_label(self, s):
        if s not in self._arity:
            raise ValueError(f"{self.name}: unknown element {s!r}")
        return s

    @classmethod
    def tabulate(cls, op: SetOperad, max_arity: int | None = None, name: str | None = None
                 ) -> "FiniteOperad":
        cap = op.max_arity if max_arity is None else max_arity
        if cap is None:
            raise CapacityError("tabulation needs a finite arity cap")
        lab = op.label
        carriers = {n: [lab(x) for x in op.carrier(n)] for n in range(cap + 1)}
        for n, els in carriers.items():
            if len(set(els)) != len(els):
                raise ValueError(f"{op.name}: labels not distinct in arity {n}")
        comp = {}
        for n in range(cap + 1):
            for x in op.carrier(n):
                for ys in _argument_tuples(op, n, cap):
                    comp[(lab(x), tuple(lab(y) for y in ys))] = lab(op.compose(x, ys))
        act = {}
        for n in range(cap + 1):
            for x in op.carrier(n):
                for p in P.all_perms(n):
                    act[(lab(x), p)] = lab(op.act(x, p))
        return cls(name or op.name, carriers, lab(op.unit), lab(op.zero), comp, act, cap)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "max_arity": self.max_arity,
            "carriers": {str(n): list(v) for n, v in sorted(self.carriers.items())},
            "unit": self.unit,
            "zero": self.zero,
            "compose": sorted([x, list(ys), z] for (x, ys), z in self.compose_table.items()),
            "action": sorted([x, list(p), z] for (x, p), z in self.action_table.items()),
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "FiniteOperad":
        if isinstance(data, str):
            data = json.loads(data)
        carriers = {int(n): v for n, v in data["carriers"].items()}
        comp = {(x, tuple(ys)): z for x, ys, z in data["compose"]}
        act = {(x, tuple(p)): z for x, p, z in data["action"]}
        return cls(data["name"], carriers, data["unit"], data["zero"], comp, act,
                   int(data["max_arity"]))


def _argument_tuples(op: SetOperad, n: int, cap: int):
    """All argument tuples for an arity-n element whose total arity stays <= cap."""
    def rec(i, budget):
        if i == n:
            yield ()
            return
        for j in range(budget + 1):
            for y in op.carrier(j):
                for rest in rec(i + 1, budget - j):
                    yield (y,) + rest
    yield from rec(0, cap)


# ---------------------------------------------------------------------------
# Law checks


def check_laws(op: SetOperad, max_arity: int | None = None) -> list[str]:
    """Exhaustively check unit, associativity and equivariance; returns violations."""
    cap = op.max_arity if max_arity is None else max_arity
    if op.max_arity is not None:
        cap = min(cap, op.max_arity)
    bad: list[str] = []
    car = {n: op.carrier(n) for n in range(cap + 1)}
    if len(car[0]) != 1 or car[0][0] != op.zero:
        bad.append("arity-0 carrier is not {0}")
    if op.unit not in car.get(1, ()):
        bad.append("unit missing from arity 1")
    for n in range(cap + 1):
        for x in car[n]:
            if op.compose(op.unit, (x,)) != x:
                bad.append(f"left unit fails at {op.label(x)}")
            if op.compose(x, (op.unit,) * n) != x:
                bad.append(f"right unit fails at {op.label(x)}")
            for p in P.all_perms(n):
                xp = op.act(x, p)
                if op.arity(xp) != n:
                    bad.append("action changes arity")
                for q in P.all_perms(n):
                    if op.act(xp, q) != op.act(x, P.mul(p, q)):
                        bad.append(f"action law fails at {op.label(x)}")
            if op.act(x, P.identity(n)) != x:
                bad.append(f"identity action fails at {op.label(x)}")
    # sequential and parallel associativity of partial compositions
    for n, m, k in itertools.product(range(1, cap + 1), range(cap + 1), range(cap + 1)):
        for x, y, z in itertools.product(car[n], car[m], car[k]):
            fits = max(n + m - 1, n + k - 1, m + k - 1, n + m + k - 2) <= cap
            if not fits:
                continue
            for i in range(n):
                if m >= 1:
                    xy = op.partial(x, i, y)
                    for j in range(m):
                        lhs = op.partial(xy, i + j, z)
                        rhs = op.partial(x, i, op.partial(y, j, z))
                        if lhs != rhs:
                            bad.append(f"sequential associativity fails at "
                                       f"{op.label(x)},{op.label(y)},{op.label(z)}")
                for j in range(i + 1, n):
                    lhs = op.partial(op.partial(x, j, z), i, y)
                    rhs = op.partial(op.partial(x, i, y), j + m - 1, z)
                    if lhs != rhs:
                        bad.append(f"parallel associativity fails at "
                                   f"{op.label(x)},{op.label(y)},{op.label(z)}")
    # equivariance of partial composition in both slots
    for n, m in itertools.product(range(1, cap + 1), range(cap + 1)):
        if n + m - 1 > cap:
            continue
        for x, y in itertools.product(car[n], car[m]):
            for i in range(n):
                ar = [1] * n
                ar[i] = m
                for p in P.all_perms(n):
                    lhs = op.partial(op.act(x, p), i, y)
                    rhs = op.act(op.partial(x, p[i], y), P.block_perm(p, ar))
                    if lhs != rhs:
                        bad.append(f"equivariance fails at {op.label(x)},{op.label(y)}")
                for q in P.all_perms(m):
                    lhs = op.partial(x, i, op.act(y, q))
                    blocks = [(0,)] * n
                    blocks[i] = q
                    rhs = op.act(op.partial(x, i, y), P.block_sum(blocks))
                    if lhs != rhs:
                        bad.append(f"inner equivariance fails at {op.label(x)},{op.label(y)}")
    return sorted(set(bad))


# ---------------------------------------------------------------------------
# Constructions attached to the RU adjunction


def ru_operad(monoid: Monoid, max_arity: int | None = 4) -> RUOperad:
    return RUOperad(monoid, max_arity)


def axial_element(op: SetOperad, x) -> tuple:
    return op.axial(x)


def com_tensor_formula(op: SetOperad, max_arity: int | None = None) -> RUOperad:
    """``Com (x) B`` as ``RU(B)``, i.e. ``ru_operad`` of the monoid ``B(1)``."""
    cap = op.max_arity if max_arity is None else max_arity
    return RUOperad(op.unary_monoid(), cap, name=f"Com*{op.name}")


class AssTensorOperad(SetOperad):
    """``Ass (x) B`` as ``Sigma_n x B(1)^n`` modulo swaps of axially realisable pairs."""

    def __init__(self, op: SetOperad, max_arity: int | None = None):
        self.base = op
        self.ass = AssOperad(op.max_arity if max_arity is None else max_arity)
        self.max_arity = self.ass.max_arity
        self.name = f"Ass*{op.name}"
        self.monoid = op.unary_monoid()
        self.pairs = set(op.axial(c) for c in op.carrier(2))
        self._classes: dict[int, dict] = {}
        self.unit = self.canon(((1,), (op.unit,)))
        self.zero = ((), ())

    def related(self, a, b) -> bool:
        (w1, bs), (w2, cs) = a, b
        if bs != cs:
            return False
        pos1 = {v: t for t, v in enumerate(w1)}
        pos2 = {v: t for t, v in enumerate(w2)}
        n = len(w1)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if (pos1[i] < pos1[j]) != (pos2[i] < pos2[j]):
                    lo, hi = (i, j) if pos1[i] < pos1[j] else (j, i)
                    if (bs[lo - 1], bs[hi - 1]) not in self.pairs:
                        return False
        return True

    def _classes_of(self, n: int) -> dict:
        if n not in self._classes:
            self.check_arity(n)
            raw = [(w, bs) for w in self.ass.carrier(n)
                   for bs in itertools.product(self.monoid.elements, repeat=n)]
            parent = {r: r for r in raw}

            def find(r):
                while parent[r] != r:
                    parent[r] = parent[parent[r]]
                    r = parent[r]
                return r
            by_b: dict = {}
            for r in raw:
                by_b.setdefault(r[1], []).append(r)
            for group in by_b.values():
                for a, b in itertools.combinations(group, 2):
                    if self.related(a, b):
                        ra, rb = find(a), find(b)
                        if ra != rb:
                            parent[max(ra, rb, key=self._key)] = min(ra, rb, key=self._key)
            groups: dict = {}
            for r in raw:
                groups.setdefault(find(r), []).append(r)
            rep = {root: min(g, key=self._key) for root, g in groups.items()}
            self._classes[n] = {r: rep[find(r)] for r in raw}
        return self._classes[n]

    def _key(self, r):
        return (r[0], tuple(self.monoid.names[b] for b in r[1]))

    def canon(self, r):
        return self._classes_of(len(r[0]))[r]

    def arity(self, x):
        return len(x[0])

    def carrier(self, n):
        return tuple(sorted(set(self._classes_of(n).values()), key=self._key))

    def compose(self, x, ys):
        w = self.ass.compose(x[0], [y[0] for y in ys])
        bs = tuple(self.monoid.mul(a, b) for a, y in zip(x[1], ys) for b in y[1])
        # the Ass word reorders inputs; factors follow their input labels
        return self.canon((w, bs))

    def act(self, x, p):
        w = self.ass.act(x[0], p)
        bs = tuple(x[1][p[j]] for j in range(len(p)))
        return self.canon((w, bs))

    def label(self, x):
        if not x[0]:
            return "0"
        return self.ass.label(x[0]) + "_" + "_".join(self.monoid.names[b] for b in x[1])


def ass_tensor_formula(op: SetOperad, max_arity: int | None = None) -> AssTensorOperad:
    return AssTensorOperad(op, max_arity)


# ---------------------------------------------------------------------------
# Random corpus


def family_operads(max_arity: int = 3) -> dict[str, SetOperad]:
    """Named family members with carriers of size <= 3 in arities <= ``max_arity``."""
    mons = small_monoids()
    fams: dict[str, SetOperad] = {
        "com": ComOperad(max_arity),
        "ass2": AssOperad(min(2, max_arity)),
        "proj": ProjectionOperad(min(2, max_arity)),
    }
    for key in ("z2", "z3_idem", "z3_nil", "z3_inv"):
        fams[f"zm_{key}"] = ZeroMonoidOperad(mons[key], max_arity, name=f"zm_{key}")
    prod = ProductOperad(ZeroMonoidOperad(mons["z2"], max_arity), AssOperad(min(2, max_arity)))
    prod.name = "zm_z2xass2"
    fams[prod.name] = prod
    return fams


def random_operad(rng: random.Random, max_carrier: int = 3, max_arity: int = 3) -> FiniteOperad:
    fams = family_operads(max_arity)
    names = sorted(fams)
    while True:
        key = rng.choice(names)
        op = fams[key]
        if all(s <= max_carrier for s in op.sizes()):
            return FiniteOperad.tabulate(op, name=key)


def random_operad_pairs(seed: int, count: int = 5, max_carrier: int = 3, max_arity: int = 3
                        ) -> list[tuple[FiniteOperad, FiniteOperad]]:
    rng = random.Random(seed)
    return [(random_operad(rng, max_carrier, max_arity), random_operad(rng, max_carrier, max_arity))
            for _ in range(count)]
