"""Model documents (JSON) and their conversion to :class:`VarietyModel`.

Example::

    {"kind": "proj_bundle_curve", "genus": 0, "quotients": [[1, -1], [2, 0]],
     "known_eff": {"1": ["f", "xi"], "2": ["xi*f", "xi^2"]}}

Rationals inside documents are written as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .cones import PolyCone
from .errors import ParseError, PosconesError
from .expr import evaluate_expr
from .positivity import VarietyModel, grassmannian_model, product_model, projbundle_model
from .projbundle import HNData
from .ring import MixedClass, format_rational
from .schur import VectorBundle

_COMMON = {"kind", "name", "bundles", "known_eff", "annotations"}
_KIND_FIELDS = {
    "grassmannian": {"k", "n"},
    "product": {"factors"},
    "proj_bundle_curve": {"genus", "quotients"},
}
_BUNDLE_FIELDS = {"name", "rank", "chern", "flags"}
_FLAGS = {"globally_generated", "nef", "ample"}


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ParseError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise ParseError(f"not a rational: {x!r}") from None
    raise ParseError(f"rationals are integers or 'p/q' strings, got {x!r}")


def _int(doc: dict, key: str) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ParseError(f"field {key!r} must be an integer, got {v!r}")
    return v


def _reject_unknown(doc: dict, allowed: set[str], where: str) -> None:
    extra = sorted(set(doc) - allowed)
    if extra:
        raise ParseError(f"unknown field(s) in {where}: {', '.join(extra)}")


def load_document(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read model file {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"model file {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ParseError("model document must be a JSON object")
    return doc


def model_from_document(doc: dict) -> VarietyModel:
    kind = doc.get("kind")
    if kind not in _KIND_FIELDS:
        raise ParseError(f"field 'kind' must be one of {sorted(_KIND_FIELDS)}, got {kind!r}")
    _reject_unknown(doc, _COMMON | _KIND_FIELDS[kind], "model")
    try:
        if kind == "grassmannian":
            model = grassmannian_model(_int(doc, "k"), _int(doc, "n"))
        elif kind == "product":
            factors = doc.get("factors")
            if not isinstance(factors, list) or not factors:
                raise ParseError("field 'factors' must be a nonempty list")
            pairs = []
            for i, fac in enumerate(factors):
                if not isinstance(fac, dict):
                    raise ParseError(f"factor {i} must be an object with 'k' and 'n'")
                _reject_unknown(fac, {"kind", "k", "n"}, f"factor {i}")
                if fac.get("kind", "grassmannian") != "grassmannian":
                    raise ParseError(f"factor {i}: only grassmannian factors are supported")
                pairs.append((_int(fac, "k"), _int(fac, "n")))
            model = product_model(pairs)
        else:
            qs = doc.get("quotients")
            if not isinstance(qs, list) or not all(isinstance(q, list) and len(q) == 2 for q in qs):
                raise ParseError("field 'quotients' must be a list of [rank, degree] pairs")
            genus = _int(doc, "genus") if "genus" in doc else 0
            model = projbundle_model(HNData(tuple((int(r), int(d)) for r, d in qs), genus))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    ring = model.ring

    for i, b in enumerate(doc.get("bundles", [])):
        if not isinstance(b, dict):
            raise ParseError(f"bundle {i} must be an object")
        _reject_unknown(b, _BUNDLE_FIELDS, f"bundle {i}")
        name = b.get("name")
        if not isinstance(name, str) or not name.isidentifier():
            raise ParseError(f"bundle {i}: 'name' must be an identifier")
        rank = _int(b, "rank")
        chern = b.get("chern", [])
        if not isinstance(chern, list) or not all(isinstance(c, str) for c in chern):
            raise ParseError(f"bundle {name}: 'chern' must be a list of expressions for c_1, c_2, ...")
        flags = b.get("flags", {})
        if not isinstance(flags, dict):
            raise ParseError(f"bundle {name}: 'flags' must be an object")
        _reject_unknown(flags, _FLAGS, f"flags of bundle {name}")
        parts = [ring.one()] + [evaluate_expr(c, ring, model.bundles) for c in chern]
        try:
            mixed = MixedClass(ring, parts)
            bundle = VectorBundle(name, rank, mixed, **{f: bool(v) for f, v in flags.items()})
        except ValueError as exc:
            raise ParseError(f"bundle {name}: {exc}") from None
        model.register(bundle)

    eff = doc.get("known_eff", {})
    if not isinstance(eff, dict):
        raise ParseError("'known_eff' must map codimensions to ray lists")
    for key, rays in eff.items():
        try:
            k = int(key)
        except ValueError:
            raise ParseError(f"known_eff key {key!r} is not a codimension") from None
        if not isinstance(rays, list):
            raise ParseError(f"known_eff[{key}] must be a list")
        classes = []
        for r in rays:
            if isinstance(r, str):
                classes.append(evaluate_expr(r, ring, model.bundles))
            elif isinstance(r, list):
                classes.append(ring.from_coords(k, [parse_rational(x) for x in r]))
            else:
                raise ParseError(f"known_eff[{key}]: rays are expressions or coordinate lists")
        model.known_eff[k] = PolyCone.from_classes(classes, ring=ring, codim=k)

    ann = doc.get("annotations", {})
    if not isinstance(ann, dict):
        raise ParseError("'annotations' must map codimensions to lists of strings")
    for key, items in ann.items():
        try:
            k = int(key)
        except ValueError:
            raise ParseError(f"annotations key {key!r} is not a codimension") from None
        if not isinstance(items, list):
            raise ParseError(f"annotations[{key}] must be a list of strings")
        model.annotations.setdefault(k, []).extend(str(a) for a in items)
    return model


def load_model(path: str | Path) -> VarietyModel:
    return model_from_document(load_document(path))


def load_matrix(path: str | Path) -> list[list[Fraction]]:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read matrix file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"matrix file {path} is not valid JSON: {exc}") from None
    if not isinstance(data, list) or not all(isinstance(row, list) for row in data):
        raise ParseError("matrix file must hold a list of rows")
    return [[parse_rational(x) for x in row] for row in data]


def cone_to_json(cone: PolyCone) -> dict:
    return cone.to_json()


def cone_from_json(data: dict) -> PolyCone:
    try:
        return PolyCone.from_json(data)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed cone payload: {exc}") from None


__all__ = [
    "PosconesError",
    "load_model",
    "load_document",
    "model_from_document",
    "load_matrix",
    "cone_to_json",
    "cone_from_json",
    "parse_rational",
    "format_rational",
]
