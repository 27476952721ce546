"""Command-line front end: one subcommand per operation, JSON on stdout."""

import argparse
import json
import sys
from fractions import Fraction

from . import serialize as ser
from .errors import DomainError, IndeterminateError
from .goodcore import check_hypotheses, goodify_group, goodify_lie, tame_prime_bounds
from .rootsys import (
    RootDatum, bad_primes, closure, connection_index, subsystem_from_simple,
)
from .torus import TorusLieElement, depth_group, depth_lie, is_good_group, is_good_lie
from .weyl import (
    DEFAULT_CAP, WeylGroup, conjugacy_report, diagram_fixed_subgroup, minus_one,
    weyl_order_formula,
)

EXIT_OK, EXIT_DOMAIN, EXIT_INDETERMINATE = 0, 2, 3
EXIT_USAGE, EXIT_MALFORMED = 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _datum(args):
    if args.input_doc is not None and "datum" in args.input_doc:
        return ser.datum_from_json(args.input_doc["datum"])
    if args.input_doc is not None and "components" in args.input_doc:
        return ser.datum_from_json(args.input_doc)
    if args.type is None:
        raise DomainError("need --type and --rank (or an input document)")
    if args.rank is None and len(args.type) > 1:
        return RootDatum(args.type, args.lattice)
    if args.rank is None:
        raise DomainError("need --rank")
    return RootDatum([(args.type, args.rank)], args.lattice)


def _group(args):
    group = WeylGroup(_datum(args))
    return group.enumerate(cap=args.cap)


def _torus(args):
    if args.input_doc is None:
        raise DomainError("this command needs --input")
    doc = args.input_doc.get("element", args.input_doc)
    prec = None if args.precision is None else Fraction(args.precision)
    return ser.torus_from_json(doc, prec)


def cmd_roots(args):
    d = _datum(args)
    return {"datum": ser.datum_to_json(d),
            "roots": [{"label": ser.root_label(c), "simple_coefficients": list(c),
                       "character": list(x), "coroot": list(y)}
                      for c, x, y in zip(d.root_coeffs, d.roots, d.coroots)],
            "simple": [ser.root_label(d.root_coeffs[i]) for i in d.simple],
            "cartan": d.cartan}


def cmd_weyl_order(args):
    d = _datum(args)
    return {"type": d.type_tag, "order": weyl_order_formula(d)}


def cmd_weyl_generate(args):
    group = _group(args)
    return {"type": group.datum.type_tag, "order": len(group.elements),
            "formula": group.order, "elements": group.elements.tolist()}


def cmd_minus_one(args):
    group = _group(args)
    return {"type": group.datum.type_tag, "contains_minus_one": minus_one(group) is not None}


def cmd_conjugacy(args):
    group = _group(args)
    return {"type": group.datum.type_tag, "count": len(group.class_data),
            "classes": [{"size": c["size"], "order": c["order"],
                         "centralizer_order": c["centralizer_order"],
                         "char_poly": c["char_poly"],
                         "representative": c["representative"]}
                        for c in conjugacy_report(group)]}


def cmd_fixed_subgroup(args):
    group = _group(args)
    sigma = args.input_doc.get("sigma") if args.input_doc else None
    if sigma is None:
        raise DomainError("need an input document with 'sigma' (0-based permutation)")
    return {"type": group.datum.type_tag, "sigma": sigma,
            "order": diagram_fixed_subgroup(group, sigma)}


def cmd_bad_primes(args):
    d = _datum(args)
    return {"type": d.type_tag, "bad_primes": sorted(bad_primes(d))}


def cmd_connection_index(args):
    d = _datum(args)
    return {"type": d.type_tag, "connection_index": connection_index(d)}


def cmd_tame_primes(args):
    if args.type is None or args.rank is None:
        raise DomainError("need --type and --rank")
    rep = tame_prime_bounds(args.type, args.rank)
    return {"type": rep.type_tag, "excluded_lower": rep.excluded_lower,
            "excluded_upper": rep.excluded_upper, "form_note": rep.form_note,
            "open_cases": rep.open_cases}


def cmd_check_hypotheses(args):
    d = _datum(args)
    if args.p is None:
        raise DomainError("need --p")
    doc = args.input_doc or {}
    if "phi0" in doc:
        phi0 = closure(d, [tuple(c) for c in doc["phi0"]])
    else:
        phi0 = subsystem_from_simple(d, doc.get("simple_subset", []))
    rep = check_hypotheses(args.p, d, phi0)
    out = ser.hypotheses_to_json(rep)
    out["phi0"] = [ser.root_label(d.root_coeffs[i]) for i in sorted(phi0.members)]
    return out


def cmd_goodify_lie(args):
    X = _torus(args)
    if not isinstance(X, TorusLieElement):
        raise DomainError("goodify-lie needs a Lie algebra element")
    doc = ser.goodification_to_json(goodify_lie(X, args.p))
    del doc["kind"]
    return doc


def cmd_goodify_group(args):
    g = _torus(args)
    if isinstance(g, TorusLieElement):
        raise DomainError("goodify-group needs a group element")
    doc = ser.goodification_to_json(goodify_group(g, args.p))
    del doc["kind"]
    return doc


def cmd_depth(args):
    x = _torus(args)
    r = depth_lie(x) if isinstance(x, TorusLieElement) else depth_group(x)
    return {"depth": ser.rational(r)}


def cmd_is_good(args):
    x = _torus(args)
    rep = is_good_lie(x) if isinstance(x, TorusLieElement) else is_good_group(x)
    doc = ser.goodness_to_json(x.datum, rep)
    del doc["kind"]
    return doc


def cmd_verify(args):
    from .suites import run_suite
    reports = run_suite(args.suite)
    return {"passed": all(r.passed for r in reports.values()),
            "criteria": [{"claim": r.claim, "method": r.method, "passed": r.passed,
                          "seconds": round(r.elapsed, 3), "result": r.result}
                         for r in reports.values()]}


COMMANDS = {
    "roots": cmd_roots,
    "weyl-order": cmd_weyl_order,
    "weyl-generate": cmd_weyl_generate,
    "minus-one": cmd_minus_one,
    "conjugacy": cmd_conjugacy,
    "fixed-subgroup": cmd_fixed_subgroup,
    "bad-primes": cmd_bad_primes,
    "connection-index": cmd_connection_index,
    "tame-primes": cmd_tame_primes,
    "check-hypotheses": cmd_check_hypotheses,
    "goodify-lie": cmd_goodify_lie,
    "goodify-group": cmd_goodify_group,
    "depth": cmd_depth,
    "is-good": cmd_is_good,
    "verify": cmd_verify,
}

# emitted kind per subcommand
KINDS = {"goodify-lie": "goodify-lie", "goodify-group": "goodify-group",
         "is-good": "goodness"}


def build_parser():
    parser = _Parser(prog="tamegood", description=__doc__)
    parser.add_argument("command", help="one of: " + ", ".join(COMMANDS))
    parser.add_argument("--type")
    parser.add_argument("--rank", type=int)
    parser.add_argument("--lattice", default="adjoint")
    parser.add_argument("--p", type=int)
    parser.add_argument("--input", help="path to a JSON document, '-' for stdin, or inline JSON")
    parser.add_argument("--output")
    parser.add_argument("--precision")
    parser.add_argument("--suite", default="all")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP)
    return parser


def _load_input(source):
    if source is None:
        return None
    if source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        with open(source) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ser.MalformedInput("invalid JSON", error=str(exc))


def _emit(doc, output):
    text = ser.dumps(doc) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        _emit({"kind": "error", "code": "usage", "message": str(exc), "context": {}}, None)
        return EXIT_USAGE
    if args.command not in COMMANDS:
        _emit({"kind": "error", "code": "unknown-command",
               "message": f"unknown subcommand {args.command!r}",
               "context": {"known": list(COMMANDS)}}, None)
        return EXIT_USAGE
    try:
        args.input_doc = _load_input(args.input)
        if args.input_doc is not None and not isinstance(args.input_doc, dict):
            raise ser.MalformedInput("input must be a JSON object")
        body = COMMANDS[args.command](args)
    except ser.MalformedInput as exc:
        _emit(_error(exc), None)
        return EXIT_MALFORMED
    except IndeterminateError as exc:
        _emit(_error(exc), None)
        return EXIT_INDETERMINATE
    except DomainError as exc:
        _emit(_error(exc), None)
        return EXIT_DOMAIN
    except OSError as exc:
        _emit({"kind": "error", "code": "io", "message": str(exc), "context": {}}, None)
        return EXIT_DOMAIN
    doc = {"kind": KINDS.get(args.command, args.command)}
    doc.update(body)
    _emit(doc, args.output)
    if args.command == "verify" and not doc["passed"]:
        return 1
    return EXIT_OK


def _error(exc):
    context = json.loads(ser.dumps(exc.context))
    return {"kind": "error", "code": exc.code, "message": str(exc), "context": context}


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
