"""Command line front end.

Every invocation prints a single JSON object::

    {"command": ..., "version": ..., "input": {...}, "result": {...}, "evidence": {...}}

or, on failure, ``{"command", "version", "input", "error": {"type", "message"}}``.
Exit codes: 0 on success, 1 for unreadable input (syntax, schema,
homogeneity), 2 when a mathematical precondition fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import jsonschema

from . import __version__
from .antipolar import (GENERICITY_ASSUMPTION, antipolar, antipolar_eval, forbidden_certificate,
                        forbidden_scan_quartic)
from .apolarity import (binary_apolar_generators, binary_rank_complex, catalecticant,
                        rs_witness_binary, tangential_membership_binary)
from .errors import InputError, PreconditionError, SchemaError
from .exactalg import ExactMatrix, det_exact, rational_str
from .hyperdet import (Pencil, Tensor2222, bergqvist_real_rank, hyperdet_2222, hyperdet_2nn,
                       pencil_form, projective_real_root_count, slice_polynomial)
from .realcert import omega_real_zero_exists, rank_certify, signature, typical_rank_sample
from .syntax import parse_form

FORM_COMMANDS = ("catalecticant", "antipolar", "rs-membership", "forbidden-scan",
                 "rank-certify", "boundary-side", "binary-rank")
JSON_COMMANDS = ("signature", "pencil-form", "hyperdet", "bergqvist", "hyperdet2222")
COMMANDS = FORM_COMMANDS + JSON_COMMANDS + ("sample-typical",)

_BASE_PROPERTIES = {
    "subcommand": {"enum": list(COMMANDS)},
    "text": {"type": "string", "minLength": 1},
    "B": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 1},
    "d": {"type": "integer", "minimum": 1},
    "seed": {"type": "integer"},
    "samples": {"type": "integer", "minimum": 0},
    "jobs": {"type": "integer"},
    "ring": {"enum": ["p1p1", "ternary", "binary", "pnp1"]},
    "point": {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
    "out": {"type": "string"},
    "max_terms": {"type": "integer", "minimum": 0},
    "full_output": {"type": "string"},
}

_REQUIRED = {c: ["text"] for c in FORM_COMMANDS + JSON_COMMANDS}
_REQUIRED["rs-membership"] = ["text", "point"]
_REQUIRED["sample-typical"] = ["d", "samples", "seed"]

JOB_SCHEMA = {
    "type": "object",
    "properties": _BASE_PROPERTIES,
    "required": ["subcommand"],
    "allOf": [
        {"if": {"properties": {"subcommand": {"const": c}}},
         "then": {"required": req}}
        for c, req in _REQUIRED.items()
    ],
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricapolar",
                     description="Exact apolarity, antipolars, real-rank certificates and "
                                 "hyperdeterminants.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", metavar="COMMAND", parser_class=_Parser)
    helps = {
        "catalecticant": "catalecticant matrix phi_{f,B}",
        "antipolar": "antipolar form Omega(f)",
        "rs-membership": "Ranestad-Schreyer / forbidden-locus test at a point",
        "forbidden-scan": "symbolic rank-one scan of a ternary quartic",
        "signature": "exact inertia of a symmetric matrix (JSON)",
        "rank-certify": "real-rank certificate for a (2,2d) form on P1xP1",
        "boundary-side": "side of the real rank boundary via the antipolar",
        "sample-typical": "seeded typical-rank statistics",
        "pencil-form": "det(a1 T1 + a2 T2) of a pencil (JSON)",
        "hyperdet": "2xnxn hyperdeterminant of a pencil (JSON)",
        "bergqvist": "real rank class of a 2xnxn pencil (JSON)",
        "hyperdet2222": "2x2x2x2 hyperdeterminant (JSON, 16 entries)",
        "binary-rank": "apolar generators and complex rank of a binary form",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=helps[name])
        src = p.add_mutually_exclusive_group()
        src.add_argument("--input", metavar="FILE", help="read the form or JSON from FILE")
        src.add_argument("--expr", metavar="TEXT", help="form text, or JSON for matrix commands")
        p.add_argument("--B", metavar="u,v", help="multidegree of the operators")
        p.add_argument("--d", type=int, help="half the second degree, forms of bidegree (2,2d)")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--jobs", type=int, default=1, help="worker processes for sampling")
        p.add_argument("--ring", choices=["p1p1", "ternary", "binary", "pnp1"])
        p.add_argument("--point", help="point, blocks separated by ';' (e.g. '1,2;3,-1') or JSON")
        p.add_argument("--out", metavar="FILE", help="write the JSON document to FILE")
        p.add_argument("--format", choices=["json"], default="json")
        p.add_argument("--max-terms", type=int, default=200,
                       help="truncate long symbolic output (forbidden-scan)")
        p.add_argument("--full-output", metavar="FILE",
                       help="write the untruncated symbolic result to FILE (forbidden-scan)")
    return parser


# -- request decoding ----------------------------------------------------------------------

def _parse_ints(text, what):
    try:
        return [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise InputError(f"cannot read {what} from {text!r}") from None


def _parse_point(text):
    text = text.strip()
    try:
        if text.startswith("["):
            data = json.loads(text)
            if data and not isinstance(data[0], list):
                data = [data]
        else:
            data = [[v for v in block.split(",")] for block in text.split(";")]
        return [[str(Fraction(str(v).strip())) for v in block] for block in data]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"cannot read point {text!r}: {exc}") from None


def make_request(args) -> dict:
    """Collect the parsed arguments into a schema-validated job request."""
    if args.subcommand is None:
        raise InputError("no subcommand given")
    req = {"subcommand": args.subcommand}
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                req["text"] = fh.read().strip()
        except OSError as exc:
            raise InputError(f"cannot read {args.input}: {exc}") from None
    elif args.expr is not None:
        req["text"] = args.expr
    if args.B is not None:
        req["B"] = _parse_ints(args.B, "B")
    for key in ("d", "seed", "samples", "ring", "out"):
        val = getattr(args, key)
        if val is not None:
            req[key] = val
    req["jobs"] = args.jobs
    req["max_terms"] = args.max_terms
    if args.full_output is not None:
        req["full_output"] = args.full_output
    if args.point is not None:
        req["point"] = _parse_point(args.point)
    try:
        jsonschema.validate(req, JOB_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"invalid request: {exc.message}") from None
    return req


def _json_payload(req):
    try:
        return json.loads(req["text"])
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from None


def _matrix(data, what="matrix"):
    try:
        return ExactMatrix(data)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"cannot read {what}: {exc}") from None


def _pencil(req):
    data = _json_payload(req)
    if not isinstance(data, dict) or "T1" not in data or "T2" not in data:
        raise SchemaError("pencil input must be a JSON object with keys T1 and T2")
    return Pencil(_matrix(data["T1"], "T1"), _matrix(data["T2"], "T2"),
                  bool(data.get("symmetric", False)))


def _form(req):
    return parse_form(req["text"], ring=req.get("ring"))


def _default_B(f, req):
    if "B" in req:
        return tuple(req["B"])
    if f.degree is None or any(a % 2 for a in f.degree):
        raise InputError("--B is required for forms whose degree is not even in every block")
    return tuple(a // 2 for a in f.degree)


# -- commands ----------------------------------------------------------------------------------

def cmd_catalecticant(req):
    f = _form(req)
    B = _default_B(f, req)
    cat = catalecticant(f, B)
    result = cat.to_json()
    result["rank"] = cat.rank()
    if cat.matrix.is_square():
        result["det"] = rational_str(det_exact(cat.matrix))
        result["symmetric"] = cat.matrix.is_symmetric()
    return result, {"form": str(f), "A": list(f.degree)}


def cmd_antipolar(req):
    f = _form(req)
    omega = antipolar(f, _default_B(f, req))
    return omega.to_json(), {"form": str(f), "assumptions": [GENERICITY_ASSUMPTION]}


def cmd_rs_membership(req):
    f = _form(req)
    omega = antipolar(f, _default_B(f, req))
    point = req["point"]
    value = antipolar_eval(omega, point)
    verdict = forbidden_certificate(omega, point=point)
    result = {"member": value == 0, "forbidden": verdict.value, "omega_value": rational_str(value)}
    return result, {"antipolar": str(omega.form), "det_phi": rational_str(omega.det_phi),
                    "assumptions": [GENERICITY_ASSUMPTION]}


def cmd_forbidden_scan(req):
    f = _form(req)
    if "ring" not in req and f.ring.block_sizes != (3,):
        f = parse_form(req["text"], ring="ternary")
    report = forbidden_scan_quartic(f)
    result = report.to_json()
    terms = report.delta_poly.sorted_terms()
    limit = req["max_terms"]
    truncated = len(terms) > limit
    if truncated:
        from .exactalg import GradedForm
        head = GradedForm(report.delta_poly.ring, dict(terms[:limit]))
        result["delta_poly"] = str(head) + " + ..."
    result["truncated"] = truncated
    if "full_output" in req:
        with open(req["full_output"], "w", encoding="utf-8") as fh:
            json.dump(report.to_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
        result["full_output"] = req["full_output"]
    return result, {"form": str(f), "catalecticant_rank": report.rank_Cf}


def cmd_signature(req):
    m = _matrix(_json_payload(req))
    sig = signature(m)
    return sig.to_json(), {"size": m.nrows, "rank": m.rank()}


def cmd_rank_certify(req):
    f = _form(req)
    cert = rank_certify(f)
    out = cert.to_json()
    evidence = out.pop("evidence")
    return out, evidence


def cmd_boundary_side(req):
    f = _form(req)
    omega = antipolar(f, _default_B(f, req))
    side = omega_real_zero_exists(omega)
    body = side.to_json()
    return {"side": body.pop("side"), "witness_t": body.pop("witness_t")}, dict(
        body, antipolar=str(omega.form))


def cmd_sample_typical(req):
    rec = typical_rank_sample(req["d"], req["samples"], req["seed"], n_jobs=req.get("jobs", 1))
    return rec, {"samples_are_independent_of_jobs": True}


def cmd_pencil_form(req):
    T = _pencil(req)
    p = pencil_form(T)
    return {"pencil_form": str(p), "binary_form": p.to_json()}, {"n": T.n}


def cmd_hyperdet(req):
    T = _pencil(req)
    h = hyperdet_2nn(T, with_flag=True)
    return {"hyperdet": rational_str(h.value), "degenerate": h.degenerate,
            "vanishes": h.value == 0}, {"pencil_form": str(h.form)}


def cmd_bergqvist(req):
    T = _pencil(req)
    verdict, ev = bergqvist_real_rank(T, with_evidence=True)
    return {"verdict": verdict.value}, ev


def cmd_hyperdet2222(req):
    data = _json_payload(req)
    try:
        Z = Tensor2222(tuple(data) if isinstance(data, list) else data)
    except (ValueError, TypeError, ZeroDivisionError, IndexError) as exc:
        raise InputError(f"cannot read tensor: {exc}") from None
    h = hyperdet_2222(Z, with_flag=True)
    p = slice_polynomial(Z)
    return ({"p": str(p), "p_coefficients": p.to_json(), "hyperdet": rational_str(h.value),
             "degenerate": h.degenerate, "vanishes": h.value == 0},
            {"real_roots_of_p": projective_real_root_count(h.form) if not h.degenerate else None})


def cmd_binary_rank(req):
    f = parse_form(req["text"], ring=req.get("ring") or "binary")
    g1, g2 = binary_apolar_generators(f)
    d = f.degree[0]
    result = {"degree": d, "generators": [str(g1), str(g2)],
              "generator_degrees": [g1.degree[0], g2.degree[0]],
              "rank": binary_rank_complex(f)}
    if d >= 2:
        result["tangential"] = tangential_membership_binary(f)
    if "point" in req:
        result["rs_witness"] = rs_witness_binary(f, req["point"][0])
    return result, {"form": str(f), "field": "complex"}


DISPATCH = {
    "catalecticant": cmd_catalecticant,
    "antipolar": cmd_antipolar,
    "rs-membership": cmd_rs_membership,
    "forbidden-scan": cmd_forbidden_scan,
    "signature": cmd_signature,
    "rank-certify": cmd_rank_certify,
    "boundary-side": cmd_boundary_side,
    "sample-typical": cmd_sample_typical,
    "pencil-form": cmd_pencil_form,
    "hyperdet": cmd_hyperdet,
    "bergqvist": cmd_bergqvist,
    "hyperdet2222": cmd_hyperdet2222,
    "binary-rank": cmd_binary_rank,
}


def run(request: dict):
    """Execute a validated job request; returns ``(document, exit_code)``."""
    doc = {"command": request.get("subcommand"), "version": __version__,
           "input": {k: v for k, v in request.items() if k not in ("out", "full_output")}}
    try:
        jsonschema.validate(request, JOB_SCHEMA)
        result, evidence = DISPATCH[request["subcommand"]](request)
    except InputError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return doc, 1
    except jsonschema.ValidationError as exc:
        doc["error"] = {"type": "SchemaError", "message": exc.message}
        return doc, 1
    except PreconditionError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return doc, 2
    doc["result"] = result
    doc["evidence"] = evidence
    return doc, 0


def _emit(doc, out=None):
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        request = make_request(args)
    except InputError as exc:
        command = None
        if argv is None:
            argv = sys.argv[1:]
        if argv and argv[0] in COMMANDS:
            command = argv[0]
        _emit({"command": command, "version": __version__, "input": {"argv": list(argv)},
               "error": {"type": type(exc).__name__, "message": str(exc)}})
        return 1
    doc, code = run(request)
    _emit(doc, request.get("out"))
    return code


if __name__ == "__main__":
    sys.exit(main())
