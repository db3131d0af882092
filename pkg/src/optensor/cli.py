"""Command line front end: ``optensor <command> [options]``.

Exit codes: 0 when the command ran and every check passed, 1 when a check
failed, 2 on bad input or an exceeded bound.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any

from .operad import CapacityError

SCHEMA_VERSION = 1


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# output helpers


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _envelope(kind: str, params: dict, body: dict) -> dict:
    return {"kind": kind, "version": SCHEMA_VERSION, "params": params, **body}


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n} is required")


# ---------------------------------------------------------------------------
# builders shared by the commands and by export


def poset_doc(k: int, m: int, ab: bool = False):
    from .topology import FinitePoset
    from .words import enumerate_words, leq
    if ab and k != 2:
        raise UsageError("the abelian words are 2-fold")
    if m > 4 or (k >= 3 and m > 3):
        raise CapacityError(f"M_{k}({m}) exceeds the poset bound")
    words = enumerate_words(k, range(1, m + 1), ab=ab)
    P = FinitePoset.from_leq(words, leq)
    return P, lambda w: w.serialize()


def kcomplex_doc(m: int) -> dict:
    from . import kcomplex as K
    simp = K.all_simplices(m)
    return {"f_vector": K.f_vector(m),
            "simplices": [[v.serialize() for v in s] for s in simp],
            "maximal": [[v.serialize() for v in s] for s in K.maximal_simplices(m)]}


def kcomplex_dot(m: int) -> str:
    from . import kcomplex as K
    lines = [f"graph K{m} {{"]
    for v in K.vertices(m):
        lines.append(f'  "{v.serialize()}";')
    for s in K.enumerate_simplices(m)[1] if len(K.enumerate_simplices(m)) > 1 else []:
        a, b = s
        lines.append(f'  "{a.serialize()}" -- "{b.serialize()}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def grothendieck_doc(k: int, l: int, m: int):
    from .interchange import grothendieck_poset
    return grothendieck_poset(k, l, m), lambda o: o.label()


def poset_by_name(name: str):
    from .verify import poset_for
    return poset_for(name)


def complex_doc(P) -> dict:
    from .topology import contractibility_certificate, homology, nerve
    C = nerve(P)
    hs = homology(C)
    return {"f_vector": list(C.f_vector), "euler": C.euler(),
            "homology": [{"degree": d, "betti": h.betti, "torsion": list(h.torsion)}
                         for d, h in enumerate(hs)],
            "certificate": contractibility_certificate(P).kind}


def _poset_output(P, label, fmt: str, params: dict, kind: str, name: str) -> str:
    if fmt == "dot":
        return P.to_dot(label, name=name)
    if fmt == "text":
        return "".join(f"{label(P.elements[a])} < {label(P.elements[b])}\n" for a, b in P.covers())
    return dump_json(_envelope(kind, params, P.to_json(label)))


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate_mk(args) -> int:
    from .words import enumerate_words
    _need(args, "k", "m")
    if args.m > 5:
        raise CapacityError("enumeration is bounded by m <= 5")
    ws = enumerate_words(args.k, range(1, args.m + 1), ab=args.ab)
    if args.format == "dot":
        raise UsageError("enumerate-mk writes json or text")
    if args.format == "text":
        _emit("".join(w.serialize() + "\n" for w in ws), args.out)
    else:
        _emit(dump_json(_envelope("words", {"k": args.k, "m": args.m, "ab": args.ab},
                                  {"count": len(ws), "words": [w.serialize() for w in ws]})),
              args.out)
    return 0


def cmd_poset(args) -> int:
    _need(args, "k", "m")
    P, lab = poset_doc(args.k, args.m, args.ab)
    params = {"k": args.k, "m": args.m, "ab": args.ab}
    _emit(_poset_output(P, lab, args.format, params, "poset", f"M{args.k}_{args.m}"), args.out)
    return 0


def cmd_kcomplex(args) -> int:
    _need(args, "m")
    if args.format == "dot":
        _emit(kcomplex_dot(args.m), args.out)
    else:
        _emit(dump_json(_envelope("kcomplex", {"m": args.m}, kcomplex_doc(args.m))), args.out)
    return 0


def _load_operad(spec: str):
    from .operad import AssOperad, ComOperad, FiniteOperad, family_operads
    named = {"ass": AssOperad(3), "com": ComOperad(3), **family_operads(3)}
    if spec in named:
        return named[spec]
    try:
        with open(spec, encoding="utf-8") as fh:
            return FiniteOperad.from_json(json.load(fh))
    except OSError as exc:
        raise UsageError(f"cannot read operad {spec!r}: {exc}") from None


def cmd_tensor_classes(args) -> int:
    from .tensor import CoproductModel, bounded_tensor_classes
    _need(args, "A", "B", "arity", "nodes")
    A, B = _load_operad(args.A), _load_operad(args.B)
    model = CoproductModel(A, B)
    res = bounded_tensor_classes(A, B, args.arity, args.nodes, model=model)
    body = {"count": res.count, "stable_count": res.stable_count, "stable": res.stable,
            "universe": res.universe_size,
            "classes": [{"representative": model.encode(c.representative), "size": c.size,
                         "stable": c.stable, "open": c.open,
                         "epsilon": c.epsilon.serialize()} for c in res.classes]}
    params = {"A": A.name, "B": B.name, "arity": args.arity, "nodes": args.nodes}
    _emit(dump_json(_envelope("tensor-classes", params, body)), args.out)
    return 0


def cmd_intersect_binodal(args) -> int:
    from . import binodal as bn
    t1, t2 = bn.canonicalize(bn.parse(args.tree1)), bn.canonicalize(bn.parse(args.tree2))
    ans = bn.intersect3(t1, t2)
    if isinstance(ans, bn.Tree):
        result = {"result": "tree", "tree": bn.serialize(ans.tree)}
    elif isinstance(ans, bn.Empty):
        result = {"result": "empty"}
    else:
        result = {"result": "not-representable"}
    body = {"row": bn.table_row(t1, t2), **result}
    _emit(dump_json(_envelope("binodal-intersection",
                              {"t1": bn.serialize(t1), "t2": bn.serialize(t2)}, body)), args.out)
    return 0


def cmd_grothendieck(args) -> int:
    _need(args, "k", "l", "m")
    P, lab = grothendieck_doc(args.k, args.l, args.m)
    params = {"k": args.k, "l": args.l, "m": args.m}
    _emit(_poset_output(P, lab, args.format, params, "grothendieck",
                        f"I{args.k}{args.l}_{args.m}"), args.out)
    return 0


def cmd_coarse_cells(args) -> int:
    from .interchange import coarse_cells, grothendieck_poset
    from .topology import contractibility_certificate
    _need(args, "k", "l", "m")
    G = grothendieck_poset(args.k, args.l, args.m)
    cells = []
    for g, idx in coarse_cells(args.k, args.l, args.m).items():
        cert = contractibility_certificate(G.induced(idx))
        cells.append({"gamma": g.serialize(), "objects": [G.elements[i].label() for i in idx],
                      "certificate": cert.kind})
    cells.sort(key=lambda c: c["gamma"])
    _emit(dump_json(_envelope("coarse-cells", {"k": args.k, "l": args.l, "m": args.m},
                              {"cells": cells})), args.out)
    return 0


def load_poset(path: str):
    """A poset from a JSON file with ``objects`` and ``covers`` (the poset export format)."""
    from .topology import FinitePoset
    with open(path) as fh:
        data = json.load(fh)
    if "objects" not in data or "covers" not in data:
        raise UsageError(f"{path}: expected keys 'objects' and 'covers'")
    return FinitePoset.from_covers(data["objects"], [tuple(c) for c in data["covers"]])


def _poset_from_args(args):
    if args.poset:
        if os.path.isfile(args.poset):
            return load_poset(args.poset), args.poset
        return poset_by_name(args.poset), args.poset
    _need(args, "k", "m")
    if args.l is not None:
        P, _ = grothendieck_doc(args.k, args.l, args.m)
        return P, f"I({args.k},{args.l})({args.m})"
    P, _ = poset_doc(args.k, args.m, args.ab)
    return P, f"M{args.k}({args.m})"


def cmd_homology(args) -> int:
    P, name = _poset_from_args(args)
    _emit(dump_json(_envelope("complex", {"poset": name}, complex_doc(P))), args.out)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_verify
    bounds = json.loads(args.bounds) if args.bounds else None
    if bounds is None and args.nodes is not None:
        bounds = {"nodes": args.nodes} if args.suite == "binodal" else None
    rep = run_verify(args.suite, bounds, seed=args.seed, jobs=args.jobs)
    if args.format == "json":
        _emit(dump_json({"kind": "verification-report", "version": SCHEMA_VERSION,
                         **rep.to_json()}), args.out)
    else:
        _emit(rep.to_text() + "\n", args.out)
    return 0 if rep.passed else 1


def cmd_export(args) -> int:
    kind = args.kind
    if kind == "poset":
        return cmd_poset(args)
    if kind == "kcomplex":
        return cmd_kcomplex(args)
    if kind == "grothendieck":
        return cmd_grothendieck(args)
    if kind == "complex":
        if args.format == "dot":
            raise UsageError("complex exports are json only")
        return cmd_homology(args)
    raise UsageError(f"unknown export kind {kind!r}")


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int)
    common.add_argument("--l", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--arity", type=int)
    common.add_argument("--nodes", type=int)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("json", "dot", "text"), default="json")
    common.add_argument("--out")
    common.add_argument("--ab", action="store_true", help="abelian 2-fold words")

    p = argparse.ArgumentParser(prog="optensor", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("enumerate-mk", parents=[common], help="list the words of M_k(m)")
    sub.add_parser("poset", parents=[common], help="the poset M_k(m)")
    sub.add_parser("kcomplex", parents=[common], help="the simplicial complex K(m)")
    t = sub.add_parser("tensor-classes", parents=[common], help="bounded tensor classes")
    t.add_argument("--A", required=True, help="operad name or JSON file")
    t.add_argument("--B", required=True, help="operad name or JSON file")
    b = sub.add_parser("intersect-binodal", parents=[common], help="look up the intersection table")
    b.add_argument("tree1")
    b.add_argument("tree2")
    sub.add_parser("grothendieck", parents=[common], help="the poset I(k,l)(m)")
    sub.add_parser("coarse-cells", parents=[common], help="the sets F_m(gamma)")
    h = sub.add_parser("homology", parents=[common], help="homology of a nerve")
    h.add_argument("--poset", help="JSON file or named poset, e.g. 'I(1,1)(2)', 'M2(3)', 'K(3)'")
    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite")
    v.add_argument("--bounds", help="JSON object overriding the suite's default bounds")
    e = sub.add_parser("export", parents=[common], help="write a poset, complex or diagram")
    e.add_argument("kind", choices=("poset", "kcomplex", "grothendieck", "complex"))
    e.add_argument("--poset", help="named poset for complex exports")
    return p


COMMANDS = {
    "enumerate-mk": cmd_enumerate_mk, "poset": cmd_poset, "kcomplex": cmd_kcomplex,
    "tensor-classes": cmd_tensor_classes, "intersect-binodal": cmd_intersect_binodal,
    "grothendieck": cmd_grothendieck, "coarse-cells": cmd_coarse_cells,
    "homology": cmd_homology, "verify": cmd_verify, "export": cmd_export,
}


def main(argv: list[str] | None = None) -> int:
    from .verify import UnknownSuite
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.format == "dot" and args.command not in ("poset", "kcomplex", "grothendieck", "export"):
        print("error: dot output is available for posets, K(m) and I(k,l)(m)", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command](args)
    except (UsageError, CapacityError, UnknownSuite, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
