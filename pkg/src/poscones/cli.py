"""Command-line front end.

Usage::

    poscones --model M.json ring
    poscones --model M.json eval  EXPR
    poscones --model M.json deg   EXPR
    poscones --model M.json cone  {eff,nef,pliant,ci} --codim K
    poscones --model M.json member {eff,nef,pliant,ci} EXPR [--interior]
    poscones --model M.json report --codim K
    poscones --model M.json signature EXPR
    poscones signature --matrix G.json

Every subcommand accepts ``--json`` for machine-readable output.  Expression
grammar: ``^`` power, ``*`` product, ``+``/``-``, ``⊗`` (or ``@``) for pure
tensors in product rings, integer and ``p/q`` literals, and the tokens ``xi``,
``f``, ``s[2,1]``, ``c{i}(E)``, ``s{i}(E)``, ``s{i}(E^v)``, ``schur[2,1](E)``.
See :mod:`poscones.expr` for the full grammar.

Exit codes: 0 success, 2 parse error, 3 semantic error, 4 unsupported
computation for the model kind.

``POSCONES_THREADS`` is read as a hint and otherwise ignored; every
computation runs in a single thread so output never depends on it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .cones import PolyCone
from .errors import ParseError, PosconesError, SemanticError, Unsupported
from .expr import evaluate_expr
from .modelio import format_rational, load_matrix, load_model
from .positivity import (
    VarietyModel,
    ci_cone,
    containment_report,
    eff_cone,
    hodge_obstruction,
    hodge_obstruction_matrix,
    nef_cone,
    nef_divisors,
    pliant_cone,
)
from .ring import RingClass, degree, format_class, pairing_matrix

EXIT_PARSE, EXIT_SEMANTIC, EXIT_UNSUPPORTED = 2, 3, 4
CONES = ("eff", "nef", "pliant", "ci")


def thread_hint() -> int | None:
    raw = os.environ.get("POSCONES_THREADS")
    try:
        return max(1, int(raw)) if raw else None
    except ValueError:
        return None


# --- payload helpers -------------------------------------------------------


def class_payload(cl: RingClass) -> dict:
    return {
        "codim": cl.codim,
        "basis": list(cl.ring.basis(cl.codim)),
        "coords": [format_rational(x) for x in cl.coords()],
        "class": format_class(cl),
    }


def cone_payload(cone: PolyCone, model: VarietyModel, k: int) -> dict:
    out = cone.to_json()
    out["ray_classes"] = [format_class(model.ring.from_coords(k, r)) for r in cone.extremal_rays()]
    out["fulldim"] = cone.is_fulldim()
    out["salient"] = cone.is_salient()
    return out


def compute_cone(model: VarietyModel, which: str, k: int) -> PolyCone:
    if which == "eff":
        return eff_cone(model, k)
    if which == "nef":
        return nef_cone(model, k)
    if which == "pliant":
        return pliant_cone(model, k)
    return ci_cone(model, k, nef_divisors(model))


def _vec(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# --- subcommands -----------------------------------------------------------
# Each returns (payload, text lines).


def cmd_ring(model: VarietyModel, args) -> tuple[dict, list[str]]:
    ring = model.ring
    n = ring.dim
    codims = []
    lines = [f"dimension {n}"]
    for k in range(n + 1):
        P = pairing_matrix(ring, k)
        codims.append({
            "codim": k,
            "basis": list(ring.basis(k)),
            "pairing": [[format_rational(x) for x in row] for row in P],
        })
        lines.append(f"codim {k}: {', '.join(ring.basis(k))}")
        lines.append(f"  pairing with codim {n - k}: " + "; ".join(" ".join(format_rational(x) for x in row) for row in P))
    bundles = [
        {"name": b.name, "rank": b.rank, "globally_generated": b.globally_generated, "nef": b.nef}
        for _, b in sorted(model.bundles.items())
    ]
    for b in bundles:
        lines.append(f"bundle {b['name']}: rank {b['rank']}" + (", globally generated" if b["globally_generated"] else ""))
    return {"kind": model.kind, "dim": n, "codims": codims, "bundles": bundles}, lines


def cmd_eval(model: VarietyModel, args) -> tuple[dict, list[str]]:
    cl = evaluate_expr(args.expr, model.ring, model.bundles)
    payload = {"expression": args.expr, **class_payload(cl)}
    return payload, [format_class(cl)]


def cmd_deg(model: VarietyModel, args) -> tuple[dict, list[str]]:
    cl = evaluate_expr(args.expr, model.ring, model.bundles)
    d = degree(cl)
    return {"expression": args.expr, "degree": format_rational(d)}, [format_rational(d)]


def cmd_cone(model: VarietyModel, args) -> tuple[dict, list[str]]:
    k = args.codim
    cone = compute_cone(model, args.which, k)
    payload = {"cone": args.which, **cone_payload(cone, model, k)}
    lines = [f"{args.which} cone in codimension {k}, basis ({', '.join(model.ring.basis(k))})"]
    lines += [f"  ray {_vec(r)}  {c}" for r, c in zip(cone.extremal_rays(), payload["ray_classes"])]
    lines += [f"  facet {_vec(f)}" for f in cone.facets()]
    return payload, lines


def cmd_member(model: VarietyModel, args) -> tuple[dict, list[str]]:
    cl = evaluate_expr(args.expr, model.ring, model.bundles)
    k = cl.codim
    if args.codim is not None and args.codim != k:
        raise SemanticError(f"expression has codimension {k}, --codim says {args.codim}")
    cone = compute_cone(model, args.which, k)
    v = cl.coords()
    values = [(f, sum(a * b for a, b in zip(f, v))) for f in cone.facets()]
    if args.interior:
        if not cone.is_fulldim():
            verdict, cert = False, {"reason": "cone is not full-dimensional", "equation": list(cone.equations()[0])}
        else:
            bad = next(((f, x) for f, x in values if x <= 0 and f in cone.proper_facets()), None)
            verdict = bad is None
            cert = {"facet": list(bad[0]), "value": format_rational(bad[1])} if bad else None
    else:
        bad = next(((f, x) for f, x in values if x < 0), None)
        verdict = bad is None
        cert = {"facet": list(bad[0]), "value": format_rational(bad[1])} if bad else None
    if cert is None:
        cert = {"facet_values": [format_rational(x) for _, x in values]}
    payload = {
        "expression": args.expr,
        "cone": args.which,
        "codim": k,
        "interior": bool(args.interior),
        "member": verdict,
        "certificate": cert,
        "class": class_payload(cl),
    }
    word = "interior to" if args.interior else "in"
    lines = [f"{format_class(cl)} is {'' if verdict else 'not '}{word} the {args.which} cone"]
    if "facet" in cert:
        lines.append(f"  witness facet {_vec(cert['facet'])} takes value {cert['value']}")
    elif "reason" in cert:
        lines.append(f"  {cert['reason']}")
    return payload, lines


def cmd_report(model: VarietyModel, args) -> tuple[dict, list[str]]:
    rep = containment_report(model, args.codim)
    payload = rep.to_json()
    payload["ok"] = rep.ok()
    lines = [f"codimension {args.codim}"]
    for c in rep.checks:
        tag = " [theorem]" if c.theorem else ""
        lines.append(f"  {c.name}: {c.status}{tag}" + (f" ({c.detail})" if c.detail else ""))
        if c.witness:
            lines.append(f"    witness {c.witness['class']} violates facet {_vec(c.witness['facet'])}")
    return payload, lines


def cmd_signature(model: VarietyModel | None, args) -> tuple[dict, list[str]]:
    if args.matrix is not None:
        if args.expr is not None:
            raise ParseError("give either an expression or --matrix, not both")
        inert, verdict = hodge_obstruction_matrix(load_matrix(args.matrix))
        source = {"matrix": args.matrix}
    else:
        if args.expr is None:
            raise ParseError("signature needs an expression or --matrix FILE")
        if model is None:
            raise ParseError("signature with an expression needs --model FILE")
        alpha = evaluate_expr(args.expr, model.ring, model.bundles)
        inert, verdict = hodge_obstruction(model, alpha)
        source = {"expression": args.expr}
    payload = {**source, "inertia": list(inert), "n_plus": inert.n_plus, "n_zero": inert.n_zero,
               "n_minus": inert.n_minus, "verdict": verdict}
    return payload, [f"inertia ({inert.n_plus}, {inert.n_zero}, {inert.n_minus}): {verdict}"]


COMMANDS = {
    "ring": cmd_ring,
    "eval": cmd_eval,
    "deg": cmd_deg,
    "cone": cmd_cone,
    "member": cmd_member,
    "report": cmd_report,
    "signature": cmd_signature,
}


# --- argument parsing ------------------------------------------------------


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS lets the flags appear before or after the subcommand
    common.add_argument("--model", metavar="FILE", default=argparse.SUPPRESS, help="JSON model document")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")

    p = _ArgParser(prog="poscones", description="Positive cones of numerical rings.", parents=[common])
    p.add_argument("--version", action="version", version=f"poscones {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND", parser_class=_ArgParser)
    sub.required = True

    def add(name, help_):
        return sub.add_parser(name, help=help_, parents=[common])

    add("ring", "basis tables and pairing matrices")
    add("eval", "evaluate an expression").add_argument("expr")
    add("deg", "degree of a top-codimension expression").add_argument("expr")
    c = add("cone", "rays and facets of a cone")
    c.add_argument("which", choices=CONES)
    c.add_argument("--codim", type=int, required=True)
    m = add("member", "cone membership with a facet certificate")
    m.add_argument("which", choices=CONES)
    m.add_argument("expr")
    m.add_argument("--codim", type=int, default=None)
    m.add_argument("--interior", action="store_true", default=False)
    r = add("report", "containment report")
    r.add_argument("--codim", type=int, required=True)
    s = add("signature", "Hodge-index obstruction")
    s.add_argument("expr", nargs="?", default=None)
    s.add_argument("--matrix", metavar="FILE", default=None)
    return p


def dumps(payload) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2)


def run(argv: list[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    thread_hint()
    try:
        args = build_parser().parse_args(argv)
        if not hasattr(args, "json"):
            args.json = False
        model_path = getattr(args, "model", None)
        model = load_model(model_path) if model_path else None
        if model is None and not (args.command == "signature" and args.matrix is not None):
            raise ParseError(f"{args.command} needs --model FILE")
        payload, lines = COMMANDS[args.command](model, args)
    except ParseError as exc:
        print(f"poscones: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SemanticError as exc:
        print(f"poscones: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except Unsupported as exc:
        print(f"poscones: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except PosconesError as exc:
        print(f"poscones: error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    if args.json:
        print(dumps(payload), file=out)
    else:
        print("\n".join(lines), file=out)
    return 0


def main(argv: list[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
