"""JSON documents.

Every document is an object ``{"schema": "lagfib/1", "kind": ..., ...}``.
Integers outside the 53-bit range are written as decimal strings; rationals
are written as ``"p/q"`` strings (plain integers may appear as numbers).
Words are strings such as ``"a b^-1"``; the empty string is the identity.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .affine import AffToral, GroupPresentation, Representation, validate_representation
from .cocycles import ChernCocycle, CoverNerve, TransitionData
from .complexes import GroupRingElement, TwistedComplex
from .errors import LagfibError, SchemaError
from .linalg import IntMatrix

SCHEMA_VERSION = "lagfib/1"
KINDS = ("matrix", "complex", "representation", "nerve", "transition-data", "cocycle")

_int = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+$"}]}
_rat = {"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}]}
_rows = {"type": "array", "items": {"type": "array", "items": _int}}
_names = {"type": "array", "items": {"type": "string"}}
_simplex = {"type": "array", "items": {"type": "string"}}
_presentation = {"generators": _names, "relators": {"type": "array", "items": {"type": "string"}}}

_nerve_body = {
    "type": "object",
    "required": ["vertices", "edges", "triangles", "spanning_tree", "generators", "loop_words"],
    "properties": {
        "vertices": _names,
        "edges": {"type": "array", "items": _simplex},
        "triangles": {"type": "array", "items": _simplex},
        "tetrahedra": {"type": "array", "items": _simplex},
        "spanning_tree": {"type": "array", "items": _simplex},
        "loop_words": {"type": "array", "items": {
            "type": "object", "required": ["edge", "word"],
            "properties": {"edge": _simplex, "word": {"type": "string"}}}},
        **_presentation,
    },
}

_rep_body = {
    "type": "object",
    "required": ["generators", "images"],
    "properties": {**_presentation, "images": {"type": "array", "items": _rows},
                   "dim": {"type": "integer", "minimum": 0}},
}

SCHEMAS = {
    "matrix": {"type": "object", "required": ["rows", "cols", "entries"],
               "properties": {"rows": {"type": "integer", "minimum": 0},
                              "cols": {"type": "integer", "minimum": 0},
                              "entries": _rows}},
    "representation": _rep_body,
    "complex": {
        "type": "object", "required": ["generators", "ranks", "boundaries"],
        "properties": {
            **_presentation,
            "ranks": {"type": "array", "items": {"type": "integer", "minimum": 0}},
            "boundaries": {"type": "array", "items": {"type": "array", "items": {
                "type": "array", "items": {"type": "array", "items": {
                    "type": "array", "prefixItems": [_int, {"type": "string"}],
                    "minItems": 2, "maxItems": 2}}}}},
            "representation": _rep_body,
        },
    },
    "nerve": _nerve_body,
    "transition-data": {
        "type": "object", "required": ["nerve", "labels"],
        "properties": {
            "nerve": _nerve_body,
            "labels": {"type": "array", "items": {
                "type": "object", "required": ["edge", "linear", "translation"],
                "properties": {"edge": _simplex, "linear": _rows,
                               "translation": {"type": "array", "items": _rat}}}},
            "windings": {"type": "array", "items": {
                "type": "object", "required": ["triangle", "edge", "vector"],
                "properties": {"triangle": _simplex, "edge": _simplex,
                               "vector": {"type": "array", "items": _int}}}},
        },
    },
    "cocycle": {
        "type": "object", "required": ["nerve", "local_system", "values"],
        "properties": {
            "nerve": _nerve_body,
            "local_system": {"type": "array", "items": {
                "type": "object", "required": ["edge", "linear"],
                "properties": {"edge": _simplex, "linear": _rows}}},
            "values": {"type": "array", "items": {
                "type": "object", "required": ["triangle", "vector"],
                "properties": {"triangle": _simplex, "vector": {"type": "array", "items": _int}}}},
        },
    },
}

_SAFE = 2 ** 53


def enc_int(x: int):
    x = int(x)
    return x if -_SAFE < x < _SAFE else str(x)


def dec_int(x) -> int:
    if isinstance(x, bool):
        raise SchemaError("booleans are not integers")
    return int(x)


def enc_rat(x) -> str | int:
    x = Fraction(x)
    return enc_int(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def dec_rat(x) -> Fraction:
    return Fraction(x) if isinstance(x, str) else Fraction(dec_int(x))


def enc_matrix_rows(m: IntMatrix) -> list:
    return [[enc_int(x) for x in row] for row in m.to_lists()]


def dec_matrix_rows(rows, cols=None) -> IntMatrix:
    return IntMatrix.from_rows([[dec_int(x) for x in r] for r in rows], cols)


def _enc_presentation(p: GroupPresentation) -> dict:
    return {"generators": list(p.generators), "relators": [p.format_word(w) for w in p.relators]}


def _dec_presentation(d) -> GroupPresentation:
    return GroupPresentation.parse(d.get("generators", []), d.get("relators", []))


# encoders


def _enc_rep(rep: Representation) -> dict:
    return {**_enc_presentation(rep.presentation),
            "images": [enc_matrix_rows(m) for m in rep.images], "dim": rep.n}


def _enc_nerve(nerve: CoverNerve) -> dict:
    p = nerve.presentation
    return {
        "vertices": list(nerve.vertices),
        "edges": [list(e) for e in nerve.edges],
        "triangles": [list(t) for t in nerve.triangles],
        "tetrahedra": [list(t) for t in nerve.tetrahedra],
        "spanning_tree": [list(e) for e in nerve.spanning_tree],
        **_enc_presentation(p),
        "loop_words": [{"edge": list(e), "word": p.format_word(w)} for e, w in nerve.loop_words],
    }


def _enc_complex(cx: TwistedComplex, rep: Representation | None = None) -> dict:
    p = cx.presentation
    out = {**_enc_presentation(p), "ranks": list(cx.ranks),
           "boundaries": [[[[[enc_int(c), p.format_word(w)] for c, w in x.terms] for x in row]
                           for row in b] for b in cx.boundaries]}
    if rep is not None:
        out["representation"] = _enc_rep(rep)
    return out


def to_document(obj, rep: Representation | None = None) -> dict:
    if isinstance(obj, IntMatrix):
        kind, body = "matrix", {"rows": obj.rows, "cols": obj.cols, "entries": enc_matrix_rows(obj)}
    elif isinstance(obj, Representation):
        kind, body = "representation", _enc_rep(obj)
    elif isinstance(obj, TwistedComplex):
        kind, body = "complex", _enc_complex(obj, rep)
    elif isinstance(obj, CoverNerve):
        kind, body = "nerve", _enc_nerve(obj)
    elif isinstance(obj, TransitionData):
        nerve = obj.nerve
        kind, body = "transition-data", {
            "nerve": _enc_nerve(nerve),
            "labels": [{"edge": list(e), "linear": enc_matrix_rows(obj.labels[e].linear),
                        "translation": [enc_rat(x) for x in obj.labels[e].translation]}
                       for e in nerve.edges],
            "windings": [{"triangle": list(t), "edge": list(e), "vector": [enc_int(x) for x in w]}
                         for (t, e), w in sorted(obj.windings.items(),
                                                 key=lambda kv: (nerve.triangles.index(kv[0][0]),
                                                                 nerve.edges.index(kv[0][1])))],
        }
    elif isinstance(obj, ChernCocycle):
        nerve = obj.nerve
        kind, body = "cocycle", {
            "nerve": _enc_nerve(nerve),
            "local_system": [{"edge": list(e), "linear": enc_matrix_rows(obj.local_system[e])}
                             for e in nerve.edges],
            "values": [{"triangle": list(t), "vector": [enc_int(x) for x in obj.values[t]]}
                       for t in nerve.triangles],
        }
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"schema": SCHEMA_VERSION, "kind": kind, **body}


# decoders


def _dec_rep(d) -> Representation:
    pres = _dec_presentation(d)
    images = [dec_matrix_rows(m) for m in d["images"]]
    return validate_representation(pres, images, d.get("dim"))


def _dec_nerve(d) -> CoverNerve:
    pres = _dec_presentation(d)
    return CoverNerve(
        tuple(d["vertices"]), tuple(tuple(e) for e in d["edges"]),
        tuple(tuple(t) for t in d["triangles"]), tuple(tuple(e) for e in d["spanning_tree"]),
        pres, tuple((tuple(x["edge"]), x["word"]) for x in d["loop_words"]),
        tuple(tuple(t) for t in d.get("tetrahedra", [])))


def from_document(doc: dict):
    """Parse a document; returns the object (and, for complexes, ``(complex, rep-or-None)``)."""
    if not isinstance(doc, dict):
        raise SchemaError("a document must be a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema {doc.get('schema')!r}, expected {SCHEMA_VERSION!r}")
    kind = doc.get("kind")
    if kind not in SCHEMAS:
        raise SchemaError(f"unknown document kind {kind!r}")
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"{kind} document: {exc.message}") from None
    try:
        return _decode(kind, doc)
    except SchemaError:
        raise
    except (LagfibError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{kind} document: {exc}") from exc


def _decode(kind, d):
    if kind == "matrix":
        m = dec_matrix_rows(d["entries"], d["cols"])
        if m.rows != d["rows"]:
            raise SchemaError("row count does not match entries")
        return m
    if kind == "representation":
        return _dec_rep(d)
    if kind == "complex":
        pres = _dec_presentation(d)
        bds = tuple(tuple(tuple(GroupRingElement.parse(pres, [(dec_int(c), w) for c, w in x])
                                for x in row) for row in b) for b in d["boundaries"])
        cx = TwistedComplex(pres, tuple(d["ranks"]), bds)
        rep = _dec_rep(d["representation"]) if "representation" in d else None
        if rep is not None and rep.presentation != pres:
            raise SchemaError("embedded representation uses a different presentation")
        return cx, rep
    if kind == "nerve":
        return _dec_nerve(d)
    if kind == "transition-data":
        nerve = _dec_nerve(d["nerve"])
        labels = {tuple(x["edge"]): AffToral(dec_matrix_rows(x["linear"]),
                                             tuple(dec_rat(v) for v in x["translation"]))
                  for x in d["labels"]}
        windings = {(tuple(x["triangle"]), tuple(x["edge"])): tuple(dec_int(v) for v in x["vector"])
                    for x in d.get("windings", [])}
        return TransitionData(nerve, labels, windings)
    if kind == "cocycle":
        nerve = _dec_nerve(d["nerve"])
        ls = {tuple(x["edge"]): dec_matrix_rows(x["linear"]) for x in d["local_system"]}
        values = {tuple(x["triangle"]): tuple(dec_int(v) for v in x["vector"]) for x in d["values"]}
        return ChernCocycle(nerve, ls, values)
    raise SchemaError(kind)  # pragma: no cover


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def dumps(obj, **kwargs) -> str:
    return json.dumps(to_document(obj, **kwargs), indent=2, sort_keys=True)
