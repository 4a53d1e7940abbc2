"""Command-line front end.

Every subcommand prints one JSON report (sorted keys, two-space indent) with
``result`` and, where relevant, ``witness`` and ``violations``.  Exit codes:
0 success, 1 domain error (the report names the error), 2 parse or
validation error.  Inputs are document paths, ``-`` for stdin, or
``builtin:<name>``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

import numpy as np

from . import constructions as cons
from .affine import (AffReal, Conjugate, NotConjugate, Representation, conjugacy_check,
                     trivial_representation, validate_representation)
from .cocycles import (ChernCocycle, CoverNerve, Equal, TransitionData, cech_cohomology, chern_cocycle,
                       class_coordinates, cohomologous, class_representative, monodromy_of,
                       realize_class, twist_by_class, verify_cocycle)
from .complexes import TwistedComplex, cohomology, to_cochain_complex
from .datasets import BUILTINS, rp2_nerve_and_atlas
from .errors import LagfibError, SchemaError
from .io import enc_int, enc_matrix_rows, enc_rat, loads, to_document
from .linalg import IntMatrix, complete_primitive, smith_normal_form, vector_gcd


def load(source: str):
    if source.startswith("builtin:"):
        name = source[len("builtin:"):]
        if name not in BUILTINS:
            raise SchemaError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
        return BUILTINS[name]()
    try:
        if source == "-":
            text = sys.stdin.read()
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise SchemaError(f"cannot read {source}: {exc.strerror}") from None
    return loads(text)


def _expect(obj, *types, what: str):
    if not isinstance(obj, types):
        raise SchemaError(f"expected {what}, got {_kind(obj)}")
    return obj


def _kind(obj) -> str:
    if isinstance(obj, tuple) and obj and isinstance(obj[0], TwistedComplex):
        return "complex"
    return {IntMatrix: "matrix", Representation: "representation", CoverNerve: "nerve",
            TransitionData: "transition-data", ChernCocycle: "cocycle"}.get(type(obj), type(obj).__name__)


def parse_vector(text: str) -> tuple:
    parts = [p for p in re.split(r"[\s,\[\]]+", text) if p]
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise SchemaError(f"cannot parse integer vector {text!r}") from None


def jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return enc_int(x)
    if isinstance(x, Fraction):
        return enc_rat(x)
    if isinstance(x, float):
        return x
    if isinstance(x, IntMatrix):
        return enc_matrix_rows(x)
    if isinstance(x, AffReal):
        return {"linear": enc_matrix_rows(x.linear), "translation": [enc_rat(v) for v in x.translation]}
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else " ".join(map(str, k)): jsonable(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return repr(x)


def _rep_images(rep: Representation) -> dict:
    return {name: enc_matrix_rows(m) for name, m in zip(rep.presentation.generators, rep.images)}


def _group(g) -> dict:
    return {"group": str(g), "free_rank": g.free_rank, "torsion": list(g.torsion)}


def _as_rep(obj) -> Representation:
    if isinstance(obj, Representation):
        return obj
    if isinstance(obj, TransitionData):
        return monodromy_of(obj)
    raise SchemaError(f"expected representation or transition-data, got {_kind(obj)}")


# subcommands


def cmd_snf(args):
    m = _expect(load(args.input), IntMatrix, what="matrix")
    s = smith_normal_form(m)
    return {"result": {"diagonal": jsonable(s.diagonal), "rank": s.rank},
            "witness": {"U": jsonable(s.U), "D": jsonable(s.D), "V": jsonable(s.V)}}


def cmd_cohomology(args):
    objs = [load(s) for s in args.inputs]
    first = objs[0]
    if isinstance(first, tuple) and first and isinstance(first[0], TwistedComplex):
        cx, rep = first
        if len(objs) > 1:
            rep = _as_rep(objs[1])
        if rep is None:
            raise SchemaError("complex has no representation; pass one as a second input")
        if rep.presentation != cx.presentation:
            raise SchemaError("representation and complex use different presentations")
        g = cohomology(to_cochain_complex(cx, rep), args.degree)
    elif isinstance(first, TransitionData):
        g = cech_cohomology(first.nerve, first.linear_parts(), args.degree, first.n)
    elif isinstance(first, ChernCocycle):
        g = cech_cohomology(first.nerve, first.local_system, args.degree, first.n)
    else:
        raise SchemaError(f"cannot take cohomology of a {_kind(first)}")
    return {"result": _group(g)}


def cmd_monodromy(args):
    obj = load(args.input)
    if isinstance(obj, ChernCocycle):
        rep = obj.twisting
    else:
        rep = monodromy_of(_expect(obj, TransitionData, what="transition-data"))
    return {"result": {"dim": rep.n, "generators": _rep_images(rep)}}


def _values(c: ChernCocycle) -> list:
    return [{"triangle": list(t), "vector": jsonable(c.values[t])} for t in c.nerve.triangles]


def cmd_chern(args):
    td = _expect(load(args.input), TransitionData, what="transition-data")
    c = chern_cocycle(td)
    coords = class_coordinates(c) if c.nerve.triangles else ()
    h2 = cech_cohomology(td.nerve, td.linear_parts(), 2, td.n)
    return {"result": {"class": jsonable(coords), "cohomology": _group(h2)},
            "witness": {"cocycle": _values(c)}}


def cmd_verify(args):
    td = _expect(load(args.input), TransitionData, what="transition-data")
    report = verify_cocycle(td)
    violations = [{"kind": v.kind, "location": jsonable(v.location),
                   "discrepancy": jsonable(v.discrepancy)} for v in report.violations]
    out = {"result": "ok" if report.ok else "violated", "violations": violations}
    if not report.ok:
        out["error"] = {"name": "CocycleViolation", "message": f"{len(violations)} violations"}
        out["_exit"] = 1
    return out


def _class_shift(td: TransitionData, v) -> dict:
    if len(v) != td.n:
        raise SchemaError(f"class vector has length {len(v)}, fibre dimension is {td.n}")
    if not td.nerve.triangles:
        raise SchemaError("the nerve has no triangles")
    return {td.nerve.triangles[0]: v}


def _bundle_report(td: TransitionData, c: ChernCocycle, target) -> dict:
    rep = monodromy_of(td)
    return {"result": to_document(td),
            "witness": {"class": jsonable(class_coordinates(c)),
                        "cohomologous_to_target": isinstance(cohomologous(c, target), Equal),
                        "monodromy": _rep_images(rep)}}


def cmd_twist(args):
    td = _expect(load(args.input), TransitionData, what="transition-data")
    v = parse_vector(args.klass)
    new = twist_by_class(td, _class_shift(td, v))
    before, after = chern_cocycle(td), chern_cocycle(new)
    target = before + class_representative(td.nerve, td.linear_parts(), v)
    return _bundle_report(new, after, target)


def cmd_realize(args):
    objs = [load(s) for s in args.inputs]
    if isinstance(objs[0], TransitionData):
        nerve, rep = objs[0].nerve, monodromy_of(objs[0])
    elif isinstance(objs[0], CoverNerve) and len(objs) > 1:
        nerve, rep = objs[0], _as_rep(objs[1])
    else:
        raise SchemaError("realize takes transition-data, or a nerve and a representation")
    v = parse_vector(args.klass)
    if len(v) != rep.n:
        raise SchemaError(f"class vector has length {len(v)}, fibre dimension is {rep.n}")
    if not nerve.triangles:
        raise SchemaError("the nerve has no triangles")
    td = realize_class(nerve, rep, {nerve.triangles[0]: v})
    target = class_representative(nerve, td.linear_parts(), v)
    return _bundle_report(td, chern_cocycle(td), target)


def cmd_conjugacy(args):
    r1, r2 = _as_rep(load(args.first)), _as_rep(load(args.second))
    res = conjugacy_check(r1, r2, args.bound)
    if isinstance(res, Conjugate):
        return {"result": "conjugate", "witness": {"P": jsonable(res.witness)}}
    if isinstance(res, NotConjugate):
        return {"result": "not-conjugate",
                "witness": {"reason": res.reason, "word": res.word, "invariant": res.invariant,
                            "first": jsonable(res.first), "second": jsonable(res.second)}}
    return {"result": "unknown", "witness": {"reason": res.reason}}


def _examples():
    """(name, passed, detail) for each reproduced example."""
    out = []
    cx, rep = BUILTINS["rp2-twisted"]()
    cc = to_cochain_complex(cx, rep)
    got = [str(cohomology(cc, k)) for k in range(3)]
    out.append(("rp2 twisted cohomology", got == ["0", "(Z/2)^3", "Z^3"], got))
    cc0 = to_cochain_complex(cx, trivial_representation(cx.presentation, 3))
    got = [str(cohomology(cc0, k)) for k in range(3)]
    out.append(("rp2 untwisted cohomology", got == ["Z^3", "0", "(Z/2)^3"], got))

    bundle = BUILTINS["rp2-bundle"]()
    mono = monodromy_of(bundle)
    minus = validate_representation(mono.presentation, [IntMatrix.scalar(3, -1)])
    out.append(("rp2 bundle monodromy a -> -I", isinstance(conjugacy_check(mono, minus), Conjugate),
                _rep_images(mono)))
    got = [str(cech_cohomology(bundle.nerve, bundle.linear_parts(), k, 3)) for k in range(3)]
    out.append(("rp2 Cech cohomology matches cellular", got == ["0", "(Z/2)^3", "Z^3"], got))
    out.append(("rp2 bundle has Chern class 0",
                class_coordinates(chern_cocycle(bundle)) == (0, 0, 0), None))

    nerve, _ = rp2_nerve_and_atlas()
    v = (2, 5, -1)
    td = realize_class(nerve, mono, {nerve.triangles[0]: v})
    c = chern_cocycle(td)
    ok = (isinstance(cohomologous(c, class_representative(nerve, td.linear_parts(), v)), Equal)
          and monodromy_of(td).images == mono.images)
    out.append(("realize class (2, 5, -1) with monodromy unchanged", ok, list(v)))

    s2 = BUILTINS["s2-tetra"]()
    c = chern_cocycle(s2)
    out.append(("s2-tetra Chern number 1", sum(x for t in c.values.values() for x in t) == 1
                and class_coordinates(c) == (1,), None))

    rng = np.random.default_rng(20240601)
    eq = 0.0
    for _ in range(1000):
        x = rng.uniform(-3, 3, 3)
        t = rng.uniform(0, cons.TWO_PI, 3)
        eq = max(eq, cons.check_equivariance(x, t))
    out.append(("equivariance of the attaching maps", eq < 1e-9, {"max_residual": eq}))
    cl = 0.0
    for _ in range(200):
        cl = max(cl, cons.check_closedness(cons.branch_safe_sample(rng), 1e-4))
    out.append(("closedness of the connection form", cl < 1e-6, {"max_residual": cl}))

    gcds = set()
    for _ in range(200):
        gcds.add(vector_gcd(cons.chern_vector(cons.random_primitive_unimodular(rng))))
    out.append(("chern_vector(G) is primitive", gcds == {1}, sorted(gcds)))
    G = complete_primitive((2, 3, 5))
    out.append(("complete_primitive realizes (2, 3, 5)", cons.chern_vector(G) == (2, 3, 5), None))
    return out


def cmd_examples(args):
    rows = [{"name": n, "passed": bool(p), "detail": jsonable(d)} for n, p, d in _examples()]
    out = {"result": {"passed": sum(r["passed"] for r in rows), "total": len(rows), "examples": rows}}
    if not all(r["passed"] for r in rows):
        out["error"] = {"name": "ExampleFailed", "message": "some examples did not reproduce"}
        out["_exit"] = 1
    return out


CLASS_HELP = "integer vector such as 1,0,0 (write --class=-1,2,3 when it starts with a minus)"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lagfib", description="Exact invariants of Lagrangian torus "
                                "fibrations from chart and cocycle data.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("snf", help="Smith normal form of a matrix")
    s.add_argument("input")
    s.set_defaults(func=cmd_snf)

    s = sub.add_parser("cohomology", help="twisted cohomology of a complex or nerve")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("inputs", nargs="+", metavar="input")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("monodromy", help="monodromy representation of transition data")
    s.add_argument("input")
    s.set_defaults(func=cmd_monodromy)

    s = sub.add_parser("chern", help="Chern cocycle and its class")
    s.add_argument("input")
    s.set_defaults(func=cmd_chern)

    s = sub.add_parser("verify-cocycle", help="check the cocycle condition")
    s.add_argument("input")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("twist", help="add a class to the Chern class")
    s.add_argument("--class", dest="klass", required=True, metavar="v", help=CLASS_HELP)
    s.add_argument("input")
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("realize", help="build transition data with a given Chern class")
    s.add_argument("--class", dest="klass", required=True, metavar="v", help=CLASS_HELP)
    s.add_argument("inputs", nargs="+", metavar="input")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("conjugacy", help="compare two representations up to GL(n, Z) conjugacy")
    s.add_argument("--bound", type=int, default=2)
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_conjugacy)

    s = sub.add_parser("paper-examples", help="reproduce the worked examples")
    s.set_defaults(func=cmd_examples)
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    code = 0
    try:
        report = args.func(args)
        code = report.pop("_exit", 0)
    except SchemaError as exc:
        report, code = {"result": None, "error": {"name": type(exc).__name__, "message": str(exc)}}, 2
    except LagfibError as exc:
        report, code = {"result": None, "error": {"name": type(exc).__name__, "message": str(exc)}}, 1
    except ValueError as exc:
        report, code = {"result": None, "error": {"name": type(exc).__name__, "message": str(exc)}}, 2
    stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
