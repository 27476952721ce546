"""JSON documents.

Rationals are always strings "a/b"; an exact valuation of +infinity is
"inf". Every document written here carries a ``kind`` tag and is accepted by
``read_document``.
"""

import json
from fractions import Fraction

from .errors import DomainError
from .localfield import INF, FieldContext
from .rootsys import RootDatum
from .torus import TorusGroupElement, TorusLieElement


class MalformedInput(DomainError):
    code = "malformed-json"


def rational(x):
    if x is INF:
        return "inf"
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s):
    if s == "inf":
        return INF
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise MalformedInput("rational must be a string 'a/b'", value=repr(s))
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise MalformedInput("unreadable rational", value=s)


def _need(doc, *keys):
    if not isinstance(doc, dict):
        raise MalformedInput("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise MalformedInput("missing keys", missing=missing)


# root data


def datum_to_json(d):
    if d.lattice == "custom":
        lattice = {"generators": d.char_basis}
    else:
        lattice = d.lattice
    return {"components": [{"type": c.kind, "rank": c.rank} for c in d.components],
            "lattice": lattice}


def datum_from_json(doc):
    _need(doc, "components")
    comps = doc["components"]
    if not isinstance(comps, list) or not all(isinstance(c, dict) for c in comps):
        raise MalformedInput("components must be a list of objects")
    for c in comps:
        _need(c, "type", "rank")
    return RootDatum(comps, doc.get("lattice", "adjoint"))


def root_label(coeffs):
    """'a1+2a2' style name from simple-root coefficients."""
    parts = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        sign = "-" if c < 0 else ("+" if parts else "")
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}a{i + 1}")
    return "".join(parts)


# field and series


def field_to_json(ctx):
    return {"p": ctx.p, "f": ctx.f, "m": ctx.m, "e": ctx.e,
            "precision": rational(ctx.precision)}


def field_from_json(doc, precision=None):
    _need(doc, "p")
    try:
        prec = precision if precision is not None else parse_rational(doc.get("precision", "20"))
        return FieldContext(int(doc["p"]), int(doc.get("f", 1)), int(doc.get("m", 1)),
                            int(doc.get("e", 1)), prec)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise MalformedInput("bad field description", error=str(exc))


def series_to_json(x):
    return {"terms": [{"exp": rational(e), "coeff": list(c)} for e, c in x.terms()],
            "known_up_to": "exact" if x.prec is None else rational(x.known_up_to())}


def series_from_json(ctx, doc):
    if isinstance(doc, int) and not isinstance(doc, bool):
        return ctx.constant(doc)
    _need(doc, "terms")
    terms = {}
    for t in doc["terms"]:
        _need(t, "exp", "coeff")
        exp = parse_rational(t["exp"])
        coeff = t["coeff"]
        if isinstance(coeff, int):
            coeff = [coeff] + [0] * (ctx.residue.degree - 1)
        if not isinstance(coeff, list) or len(coeff) != ctx.residue.degree:
            raise MalformedInput("coefficient must list the residue-field coordinates",
                                 degree=ctx.residue.degree)
        if exp in terms:
            raise MalformedInput("repeated exponent", exp=t["exp"])
        terms[exp] = [int(c) for c in coeff]
    known = doc.get("known_up_to", "exact")
    known = None if known == "exact" else parse_rational(known)
    return ctx.from_terms(terms, known)


# torus elements


def torus_to_json(x):
    doc = {"datum": datum_to_json(x.datum), "field": field_to_json(x.field)}
    if isinstance(x, TorusLieElement):
        doc["lie"] = [series_to_json(c) for c in x.coords]
    else:
        doc["group"] = [series_to_json(v) for v in x.values]
    return doc


def torus_from_json(doc, precision=None):
    """Lie element from "lie" (X_* coordinates) or "simple_root_values";
    group element from "group" (values on the basis of X*)."""
    _need(doc, "datum", "field")
    d = datum_from_json(doc["datum"])
    ctx = field_from_json(doc["field"], precision)
    for key in ("lie", "group", "simple_root_values"):
        if key in doc:
            vals = doc[key]
            if not isinstance(vals, list):
                raise MalformedInput(f"{key} must be a list")
            series = [series_from_json(ctx, v) for v in vals]
            if key == "lie":
                return TorusLieElement(d, ctx, series)
            if key == "group":
                return TorusGroupElement(d, ctx, series)
            if len(series) != d.rank:
                raise DomainError("need one value per simple root", rank=d.rank)
            return TorusLieElement.from_root_values(d, ctx, series)
    raise MalformedInput("torus element needs 'lie', 'group' or 'simple_root_values'")


# reports


def valuation_json(v):
    if v is INF:
        return "zero"
    if isinstance(v, tuple):
        return {"vanishes_to": rational(v[1])}
    return rational(v)


def _per_root(d, values):
    return {root_label(c): valuation_json(v) for c, v in zip(d.root_coeffs, values)}


def goodness_to_json(d, rep):
    return {
        "kind": "goodness",
        "good": rep.good,
        "certain": rep.certain,
        "depth": rational(rep.depth),
        "vanishing": [root_label(d.root_coeffs[i]) for i in rep.vanishing],
        "vanishing_to_precision": [root_label(d.root_coeffs[i])
                                   for i in rep.vanishing_to_precision],
        "violating": [root_label(d.root_coeffs[i]) for i in rep.violating],
        "valuations": _per_root(d, [rep.valuations[i] for i in range(len(d.roots))]),
    }


def hypotheses_to_json(rep):
    return {"p": rep.p, "ok": rep.ok, "bad_prime_ok": rep.bad_prime_ok,
            "char_torsion_ok": rep.char_torsion_ok,
            "subsystem_index_ok": rep.subsystem_index_ok,
            "witnesses": rep.witnesses}


def goodification_to_json(res):
    group = hasattr(res, "gamma2")
    out, part = (res.gamma2, res.gamma1) if group else (res.X2, res.X1)
    d = out.datum
    doc = {
        "kind": "goodify-group" if group else "goodify-lie",
        "depth": rational(res.depth),
        "phi0": [root_label(d.root_coeffs[i]) for i in sorted(res.phi0.members)],
        "basis": [root_label(d.root_coeffs[i]) for i in res.basis],
        "coweights": {root_label(d.root_coeffs[a]): [rational(x) for x in v]
                      for a, v in res.coweights.items()},
        "hypotheses": hypotheses_to_json(res.hypotheses),
        "valuations_before": _per_root(d, res.before),
        "valuations_after": _per_root(d, res.after),
        "good": torus_to_json(out),
        "correction": torus_to_json(part),
    }
    if group:
        doc["n"] = {root_label(d.root_coeffs[a]): n for a, n in res.n_map.items()}
    return doc


# generic reader


def _read_goodification(doc):
    _need(doc, "depth", "good", "correction", "valuations_before", "valuations_after")
    parse_rational(doc["depth"])
    out = dict(doc)
    out["good"] = torus_from_json(doc["good"])
    out["correction"] = torus_from_json(doc["correction"])
    return out


def _read_rationals(*keys):
    def reader(doc):
        _need(doc, *keys)
        out = dict(doc)
        for k in keys:
            out[k] = parse_rational(doc[k])
        return out
    return reader


def _read_keys(*keys):
    def reader(doc):
        _need(doc, *keys)
        return dict(doc)
    return reader


def _read_roots(doc):
    _need(doc, "datum", "roots")
    out = dict(doc)
    out["datum"] = datum_from_json(doc["datum"])
    return out


def _read_torus(doc):
    _need(doc, "element")
    out = dict(doc)
    out["element"] = torus_from_json(doc["element"])
    return out


READERS = {
    "roots": _read_roots,
    "weyl-order": _read_keys("order"),
    "weyl-generate": _read_keys("order", "elements"),
    "minus-one": _read_keys("contains_minus_one"),
    "conjugacy": _read_keys("classes"),
    "fixed-subgroup": _read_keys("order"),
    "bad-primes": _read_keys("bad_primes"),
    "connection-index": _read_keys("connection_index"),
    "tame-primes": _read_keys("excluded_lower", "excluded_upper"),
    "check-hypotheses": _read_keys("ok", "witnesses"),
    "goodify-lie": _read_goodification,
    "goodify-group": _read_goodification,
    "depth": _read_rationals("depth"),
    "goodness": _read_rationals("depth"),
    "torus-element": _read_torus,
    "verify": _read_keys("passed", "criteria"),
    "error": _read_keys("code", "message", "context"),
}


def read_document(text):
    """Parse a document emitted by the command-line tool."""
    try:
        doc = json.loads(text) if isinstance(text, str) else text
    except json.JSONDecodeError as exc:
        raise MalformedInput("invalid JSON", error=str(exc))
    _need(doc, "kind")
    reader = READERS.get(doc["kind"])
    if reader is None:
        raise MalformedInput("unknown document kind", kind=doc["kind"])
    return reader(doc)


def dumps(doc):
    """Deterministic rendering."""
    return json.dumps(doc, sort_keys=False, separators=(",", ":"), default=_default)


def _default(x):
    if x is INF:
        return "inf"
    if isinstance(x, Fraction):
        return rational(x)
    if isinstance(x, (set, frozenset)):
        return sorted(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not serializable: {type(x).__name__}")
