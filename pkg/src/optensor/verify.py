"""Verification suites: every module's invariants as named cases with pass/fail/unstable status.

A suite is a list of case specs ``(case_id, function, kwargs)``. The functions
are module level so that ``jobs > 1`` can farm them out to worker processes;
results are always reported in spec order, so the content of a report does
not depend on the number of workers.
"""
from __future__ import annotations

import itertools
import json
import os
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable

from .operad import CapacityError

PASS, FAIL, UNSTABLE = "pass", "fail", "unstable"

SUITES = ("laws", "words", "kcomplex", "tensor", "tconstruction", "binodal", "interchange",
          "homology")

# bounds used when the caller gives none; they keep `verify all` at a few minutes
DEFAULT_BOUNDS: dict[str, dict[str, Any]] = {
    "laws": {"random": 10, "arity": 3},
    "words": {"m2": 3, "m3": 3},
    "kcomplex": {},
    "tensor": {"count": 5, "unary_nodes": 6, "binary_nodes": 6, "collapse_nodes": 5},
    "tconstruction": {"recover": [[1, 5], [2, 5], [3, 4]], "factor_nodes": 5, "pair_total": 6,
                      "cancel_nodes": 4},
    "binodal": {"nodes": 4},
    "interchange": {"m": 3, "bijection": 200, "terminal": [[1, 1, 2], [1, 2, 2], [1, 1, 3]],
                    "closure_m": 2},
    "homology": {},
}

# ceilings on the expensive bounds; OPTENSOR_MAX_NODES raises or lowers them
MAX_NODES = int(os.environ.get("OPTENSOR_MAX_NODES", "7"))


class UnknownSuite(ValueError):
    pass


@dataclass
class Case:
    id: str
    status: str
    witness: Any = None

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "witness": self.witness}


@dataclass
class VerificationReport:
    suite: str
    cases: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.cases)

    def counts(self) -> dict:
        out = {PASS: 0, FAIL: 0, UNSTABLE: 0}
        for c in self.cases:
            out[c.status] += 1
        return out

    def to_json(self, timing: bool = False) -> dict:
        data = {"suite": self.suite, "cases": [c.to_json() for c in self.cases],
                "counts": self.counts(), "passed": self.passed}
        if timing:
            data["wall_time"] = round(self.wall_time, 3)
        return data

    def to_text(self) -> str:
        lines = [f"{c.status.upper():8s} {c.id}" + (f"  {_short(c.witness)}" if c.witness else "")
                 for c in self.cases]
        n = self.counts()
        lines.append(f"{self.suite}: {n[PASS]} pass, {n[FAIL]} fail, {n[UNSTABLE]} unstable")
        return "\n".join(lines)


def _short(w) -> str:
    s = json.dumps(w, sort_keys=True) if not isinstance(w, str) else w
    return s if len(s) <= 160 else s[:157] + "..."


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# laws


def case_laws(name: str, arity: int, seed: int | None = None):
    from .operad import check_laws, family_operads, random_operad
    from .words import WordOperad
    if name.startswith("random"):
        import random
        op = random_operad(random.Random(seed), 3, arity)
    elif name.startswith("words"):
        k, ab = {"words-m1": (1, False), "words-m2": (2, False), "words-m2ab": (2, True)}[name]
        op = WordOperad(k, ab, max_arity=arity)
    elif name == "trees-m1":
        from .ttree import TreeOperad
        op = TreeOperad(WordOperad(1), max_nodes=2, max_arity=2)
    else:
        op = family_operads(arity)[name]
    errors = check_laws(op)
    return _status(not errors), {"operad": op.name, "errors": errors[:3]} if errors else None


def suite_laws(b, seed):
    from .operad import family_operads
    specs = [(f"laws/{n}", case_laws, {"name": n, "arity": b["arity"]})
             for n in sorted(family_operads(b["arity"]))]
    specs += [(f"laws/{n}", case_laws, {"name": n, "arity": 3})
              for n in ("words-m1", "words-m2", "words-m2ab", "trees-m1")]
    specs += [(f"laws/random-{i}", case_laws, {"name": f"random-{i}", "arity": b["arity"],
                                               "seed": seed * 1000 + i})
              for i in range(b["random"])]
    return specs


# ---------------------------------------------------------------------------
# words


def case_leq(k: int, m: int):
    from .words import enumerate_words, leq, leq_oracle
    rel = leq_oracle(k, m)
    ws = enumerate_words(k, range(1, m + 1))
    for a in ws:
        for b in ws:
            if leq(a, b) != ((a, b) in rel):
                return FAIL, {"alpha": a.serialize(), "beta": b.serialize(),
                              "leq": leq(a, b)}
    return PASS, {"words": len(ws), "relations": len(rel)}


def suite_words(b, seed):
    specs = [(f"words/leq-M2({m})", case_leq, {"k": 2, "m": m}) for m in range(1, b["m2"] + 1)]
    specs += [(f"words/leq-M3({m})", case_leq, {"k": 3, "m": m}) for m in range(1, b["m3"] + 1)]
    return specs


# ---------------------------------------------------------------------------
# kcomplex


def case_kcomplex(what: str):
    from . import kcomplex as K
    if what == "f-vector":
        fv = K.f_vector(3)
        return _status(fv == [8, 22, 24, 9]), {"f_vector": fv}
    if what == "maximal-orbits":
        orb = K.orbits(3, K.maximal_simplices(3))
        return _status(len(orb) == 2), {"orbits": len(orb),
                                        "sizes": [len(o) for o in orb]}
    if what == "subdivision":
        n = len(K.subdivision_poset(3))
        return _status(n == 63), {"objects": n}
    raise ValueError(what)


def suite_kcomplex(b, seed):
    return [(f"kcomplex/{w}", case_kcomplex, {"what": w})
            for w in ("f-vector", "maximal-orbits", "subdivision")]


# ---------------------------------------------------------------------------
# tensor


def _named(name: str):
    from .operad import AssOperad, ComOperad
    return {"ass": AssOperad(3), "com": ComOperad(3)}[name]


def case_tensor_unary(seed: int, index: int, nodes: int):
    from .operad import random_operad_pairs
    from .tensor import bounded_tensor_classes
    A, B = random_operad_pairs(seed, index + 1)[index]
    res = bounded_tensor_classes(A, B, 1, nodes)
    want = len(A.carrier(1)) * len(B.carrier(1))
    w = {"A": A.name, "B": B.name, "classes": res.count, "stable": res.stable_count,
         "expected": want}
    if not res.stable:
        return UNSTABLE, w
    return _status(res.count == want), w


def case_tensor_binary(seed: int, index: int, nodes: int):
    from .operad import random_operad_pairs
    from .tensor import bounded_tensor_classes, tensor_binary_carrier
    A, B = random_operad_pairs(seed, index + 1)[index]
    res = bounded_tensor_classes(A, B, 2, nodes)
    want = len(tensor_binary_carrier(A, B))
    w = {"A": A.name, "B": B.name, "classes": res.count, "stable": res.stable_count,
         "pushout": want}
    if not res.stable:
        return UNSTABLE, w
    return _status(res.count == want), w


def case_tensor_collapse(a: str, b: str, n: int, nodes: int):
    from .tensor import bounded_tensor_classes
    res = bounded_tensor_classes(_named(a), _named(b), n, nodes)
    w = {"classes": res.count, "stable": res.stable_count}
    if not res.stable:
        return UNSTABLE, w
    return _status(res.count == 1), w


def suite_tensor(b, seed):
    specs = []
    for i in range(b["count"]):
        specs.append((f"tensor/unary-{i}", case_tensor_unary,
                      {"seed": seed, "index": i, "nodes": b["unary_nodes"]}))
    for i in range(b["count"]):
        specs.append((f"tensor/binary-{i}", case_tensor_binary,
                      {"seed": seed, "index": i, "nodes": b["binary_nodes"]}))
    for a, c in (("ass", "ass"), ("ass", "com"), ("com", "com")):
        for n in range(4):
            specs.append((f"tensor/collapse-{a}x{c}-{n}", case_tensor_collapse,
                          {"a": a, "b": c, "n": n, "nodes": b["collapse_nodes"]}))
    return specs


# ---------------------------------------------------------------------------
# T-construction


def _ops():
    from .ttree import word_tree_ops
    return word_tree_ops()


def case_recover(n: int, nodes: int):
    ops = _ops()
    bad = 0
    first = None
    U = ops.enumerate(n, nodes, 2)
    for t in U:
        if ops.recover_from_axial(ops.axial_image(t)) != t:
            bad += 1
            first = first or ops.encode(t)
    return _status(bad == 0), {"trees": len(U), "failures": bad, "first": first}


def case_left_factors(nodes: int):
    from .ttree import left_factor_failures
    bad = left_factor_failures(_ops(), nodes)
    return _status(not bad), {"failures": len(bad)}


def case_mlf(nodes: int):
    from .ttree import factor_table, mlf_failures, tuples_within
    ops = _ops()
    table = factor_table(ops, nodes)
    pairs = tuples_within(ops.enumerate(1, nodes, 2), 2, nodes + 1)
    bad = mlf_failures(ops, pairs, table)
    return _status(not bad), {"pairs": len(pairs), "failures": len(bad)}


def case_pair_reduction(n: int, total: int, each: int | None = None):
    from .ttree import pair_reduction_failures, tuples_within
    ops = _ops()
    if each is None:
        tuples = tuples_within(ops.enumerate(1, total, 2), n, total)
    else:
        tuples = list(itertools.combinations_with_replacement(ops.enumerate(1, each, 2), n))
    bad = pair_reduction_failures(ops, tuples)
    return _status(not bad), {"tuples": len(tuples), "failures": len(bad)}


def case_cancellation(nodes: int):
    from .ttree import cancellation_failures
    ops = _ops()
    U2 = ops.enumerate(2, nodes, 2)
    bad = cancellation_failures(ops, U2)
    return _status(not bad), {"binary_trees": len(U2), "failures": len(bad)}


def suite_tconstruction(b, seed):
    specs = [(f"tconstruction/recover-n{n}-N{N}", case_recover, {"n": n, "nodes": N})
             for n, N in b["recover"]]
    specs.append(("tconstruction/left-factors", case_left_factors, {"nodes": b["factor_nodes"]}))
    specs.append(("tconstruction/mlf", case_mlf, {"nodes": b["factor_nodes"]}))
    for n in (3, 4):
        specs.append((f"tconstruction/pair-reduction-{n}", case_pair_reduction,
                      {"n": n, "total": b["pair_total"]}))
    if b.get("pair_each"):
        specs.append(("tconstruction/pair-reduction-3-each", case_pair_reduction,
                      {"n": 3, "total": 0, "each": b["pair_each"]}))
    specs.append(("tconstruction/cancellation", case_cancellation, {"nodes": b["cancel_nodes"]}))
    return specs


# ---------------------------------------------------------------------------
# binodal


def case_binodal_table(nodes: int):
    from .binodal import TABLE_ROWS, verify_table
    checks, unsound = verify_table(_ops(), nodes)
    rows = defaultdict(list)
    for c in checks:
        rows[c.row].append(c)
    per_row = {r: {"pairs": len(rows[r]), "ok": all(c.ok for c in rows[r]),
                   "sizes": sorted(c.size for c in rows[r])} for r in TABLE_ROWS}
    ok = unsound == 0 and all(v["ok"] and v["pairs"] for v in per_row.values())
    return _status(ok), {"unsound": unsound, "rows": per_row}


def suite_binodal(b, seed):
    return [(f"binodal/table-N{b['nodes']}", case_binodal_table, {"nodes": b["nodes"]})]


# ---------------------------------------------------------------------------
# interchange

FIRST_MAXIMAL = ("o1(1,2,3)", "o1(o2(1,2),3)", "o2(o1(2,3),1)", "o2(1,2,3)")

# subsimplex (indices into FIRST_MAXIMAL) -> (S, T)
SIMPLEX_TREES_TABLE = {
    (0,): ("b(1,2,3)", "w(1,2,3)"),
    (1,): ("b(w(1,2),3)", "w(b(1,2),3)"),
    (2,): ("w(b(2,3),1)", "b(w(2,3),1)"),
    (3,): ("w(1,2,3)", "b(1,2,3)"),
    (0, 1): ("b(b(1,2),3)", "w(b(1,2),3)"),
    (0, 2): ("b(1,2,3)", "b(w(2,3),1)"),
    (0, 3): ("b(1,2,3)", "b(1,2,3)"),
    (1, 2): ("b(w(1,2),3)", "b(w(2,3),1)"),
    (1, 3): ("b(w(1,2),3)", "b(1,2,3)"),
    (2, 3): ("w(b(2,3),1)", "b(b(2,3),1)"),
    (0, 1, 2): ("b(b(1,2),3)", "b(w(2,3),1)"),
    (0, 1, 3): ("b(b(1,2),3)", "b(1,2,3)"),
    (0, 2, 3): ("b(1,2,3)", "b(b(2,3),1)"),
    (1, 2, 3): ("b(w(1,2),3)", "b(b(2,3),1)"),
    (0, 1, 2, 3): ("b(b(1,2),3)", "b(b(2,3),1)"),
}
SECOND_EDGE = ("o1(o2(1,2),3)", "o2(o1(1,2),3)")
SECOND_EDGE_TREES = ("b(b(1,2),3)", "b(b(1,2),3)")


def simplex_tree_mismatches() -> list:
    """Rows of the m=3 tables the recursion does not reproduce."""
    from . import binodal as bn
    from .interchange import simplex_trees
    from .kcomplex import all_simplices
    from .words import word
    verts = [word(s, 2, True) for s in FIRST_MAXIMAL]
    bad = []
    for idx, (S, T) in SIMPLEX_TREES_TABLE.items():
        p = simplex_trees([verts[i] for i in idx])
        if (p.S, p.T) != (bn.parse(S), bn.parse(T)):
            bad.append([list(idx), bn.serialize(p.S), bn.serialize(p.T)])
    edge = {word(s, 2, True) for s in SECOND_EDGE}
    for s in all_simplices(3):
        if edge <= set(s):
            p = simplex_trees(s)
            if (p.S, p.T) != tuple(bn.parse(x) for x in SECOND_EDGE_TREES):
                bad.append([[v.serialize() for v in s], bn.serialize(p.S), bn.serialize(p.T)])
    return bad


def case_simplex_trees():
    bad = simplex_tree_mismatches()
    return _status(not bad), {"mismatches": bad[:5]} if bad else None


def case_cell_bijection(count: int, seed: int):
    from .interchange import cell_bijection_cases
    total = bad = 0
    for m in (1, 2, 3):
        for alpha, _, term, ok in cell_bijection_cases(m, count // 3 + (m <= count % 3), seed + m):
            total += 1
            bad += not ok
    return _status(bad == 0), {"pairs": total, "failures": bad}


def case_axiality(nodes: int, arity: int):
    from .interchange import axial_collisions
    from .tensor import CoproductModel
    from .ttree import TreeOperad
    from .words import WordOperad
    A = TreeOperad(WordOperad(1), max_nodes=2, max_arity=3)
    B = TreeOperad(WordOperad(1), max_nodes=2, max_arity=3)
    model = CoproductModel(A, B)
    same, unexplained = axial_collisions(model, model.universe(arity, nodes))
    return _status(not same and not unexplained), {"same_cell": len(same),
                                                   "unexplained": len(unexplained)}


def case_compat(m: int):
    from .interchange import carrier_compatibility_failures
    bad = carrier_compatibility_failures(m)
    return _status(not bad), {"failures": len(bad)}


def case_L_prime(m: int):
    from .interchange import L_prime_failures
    bad = L_prime_failures(m)
    return _status(not bad), {"failures": [[[v.serialize() for v in s], why] for s, why in bad[:3]]}


def case_L_monotone(k: int, l: int, m: int):
    from .interchange import L_monotone_failures
    bad = L_monotone_failures(k, l, m)
    return _status(not bad), {"failures": len(bad)}


def terminal_report(k: int, l: int, m: int) -> list[dict]:
    """One entry per gamma: whether L/gamma has a terminal object, and its certificate."""
    from .interchange import terminal_in_over
    from .topology import TerminalObject
    from .words import enumerate_words
    out = []
    for g in enumerate_words(k + l, range(1, m + 1)):
        cand, cert = terminal_in_over(g, k, l)
        out.append({"gamma": g.serialize(), "terminal": isinstance(cert, TerminalObject),
                    "certificate": cert.kind, "candidate": cand.label()})
    return out


def case_terminal(k: int, l: int, m: int):
    rep = terminal_report(k, l, m)
    missing = [r for r in rep if not r["terminal"]]
    kinds = sorted({r["certificate"] for r in missing})
    return _status(not missing), {"gammas": len(rep), "without_terminal": len(missing),
                                  "certificates": kinds,
                                  "examples": [r["gamma"] for r in missing[:4]]}


def case_closure(m: int):
    from .interchange import intersection_closure_holds
    return _status(intersection_closure_holds(1, 1, m)), None


def case_operad_compat(total: int):
    from .interchange import operad_compatibility_holds
    return _status(operad_compatibility_holds(1, 1, total)), None


def suite_interchange(b, seed):
    m = b["m"]
    specs = [("interchange/simplex-trees", case_simplex_trees, {}),
             ("interchange/cell-bijection", case_cell_bijection,
              {"count": b["bijection"], "seed": seed}),
             ("interchange/axiality", case_axiality, {"nodes": 3, "arity": 2})]
    for mm in range(2, m + 1):
        specs.append((f"interchange/carrier-compat-{mm}", case_compat, {"m": mm}))
        specs.append((f"interchange/L-prime-{mm}", case_L_prime, {"m": mm}))
    for k, l, mm in ((1, 1, 2), (1, 2, 2), (1, 1, 3)):
        if mm <= m:
            specs.append((f"interchange/L-monotone-{k}{l}{mm}", case_L_monotone,
                          {"k": k, "l": l, "m": mm}))
    for k, l, mm in b["terminal"]:
        specs.append((f"interchange/terminal-{k}{l}{mm}", case_terminal, {"k": k, "l": l, "m": mm}))
    for mm in range(2, b["closure_m"] + 1):
        specs.append((f"interchange/intersection-closure-{mm}", case_closure, {"m": mm}))
    specs.append(("interchange/operad-compatibility", case_operad_compat, {"total": 3}))
    return specs


# ---------------------------------------------------------------------------
# homology

EXPECTED_BETTI = {
    "I(1,1)(2)": (1, 1),
    "I(1,2)(2)": (1, 0, 1),
    "I(1,1)(3)": (1, 3, 2),
    "M2(3)": (1, 3, 2),
    "K(3)": (1,),
}


def poset_for(name: str):
    from .interchange import grothendieck_poset
    from .kcomplex import subdivision_poset
    from .topology import FinitePoset
    from .words import enumerate_words, leq
    if name.startswith("I(") and name.count("(") == 2:
        k, l = (int(x) for x in name[2:name.index(")")].split(","))
        m = int(name[name.index(")") + 2:-1])
        return grothendieck_poset(k, l, m)
    if name.startswith("M2("):
        return FinitePoset.from_leq(enumerate_words(2, range(1, int(name[3:-1]) + 1)), leq)
    if name == "K(3)":
        return subdivision_poset(3)
    raise ValueError(f"unknown poset {name}")


def case_betti(name: str):
    from .topology import betti, nerve
    C = nerve(poset_for(name))
    got = betti(C)
    while len(got) > 1 and got[-1] == 0:
        got = got[:-1]
    return _status(tuple(got) == EXPECTED_BETTI[name]), {"betti": list(got),
                                                         "f_vector": list(C.f_vector)}


def suite_homology(b, seed):
    return [(f"homology/{n}", case_betti, {"name": n}) for n in EXPECTED_BETTI]


# ---------------------------------------------------------------------------
# driver

_BUILDERS: dict[str, Callable] = {
    "laws": suite_laws, "words": suite_words, "kcomplex": suite_kcomplex,
    "tensor": suite_tensor, "tconstruction": suite_tconstruction, "binodal": suite_binodal,
    "interchange": suite_interchange, "homology": suite_homology,
}


def _check_budget(suite: str, b: dict) -> None:
    if suite == "binodal" and b["nodes"] > min(MAX_NODES, 6):
        raise CapacityError(f"binodal corpus bound {b['nodes']} exceeds {min(MAX_NODES, 6)}")
    if suite == "tconstruction":
        for n, N in b["recover"]:
            if N > MAX_NODES:
                raise CapacityError(f"tree bound {N} exceeds {MAX_NODES}")
    if suite == "interchange" and b["m"] > 3:
        raise CapacityError("interchange checks are bounded by m <= 3")


def suite_specs(suite: str, bounds: dict | None = None, seed: int = 0) -> list:
    if suite not in _BUILDERS:
        raise UnknownSuite(f"unknown suite {suite!r}; choose from {', '.join(SUITES)} or all")
    b = dict(DEFAULT_BOUNDS[suite])
    b.update(bounds or {})
    _check_budget(suite, b)
    return _BUILDERS[suite](b, seed)


def _run_case(spec) -> Case:
    cid, fn, kwargs = spec
    status, witness = fn(**kwargs)
    return Case(cid, status, witness)


def run_verify(suite: str, bounds: dict | None = None, seed: int = 0, jobs: int = 1
               ) -> VerificationReport:
    """Run one suite (or ``all``) and collect a report; case order never depends on ``jobs``."""
    start = time.perf_counter()
    names = SUITES if suite == "all" else (suite,)
    specs = []
    for name in names:
        specs += suite_specs(name, (bounds or {}).get(name) if suite == "all" else bounds, seed)
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_case, specs))
    else:
        cases = [_run_case(s) for s in specs]
    return VerificationReport(suite, cases, time.perf_counter() - start)
