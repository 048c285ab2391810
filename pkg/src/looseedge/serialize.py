"""JSON documents for series, edges and factorization results.

Rationals are written as strings ("a/b"), infinite valuations as "+inf".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import Field
from .parser import parse_expression
from .polyhedron import EdgeFrame
from .series import INF, LinearForm, Series, Truncation, default_names

__all__ = [
    "InputDocument",
    "InputError",
    "load_document",
    "parse_document",
    "rational",
    "parse_rational",
    "series_to_json",
    "series_from_json",
    "edge_to_json",
    "dumps",
]


class InputError(ValueError):
    pass


def rational(q) -> str:
    if q == INF:
        return "+inf"
    return str(Fraction(q))


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid rational {text!r}") from exc


def _vector(v) -> list:
    return [rational(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x) for x in v]


def series_to_json(s: Series, names: Sequence[str] | None = None) -> dict:
    names = list(names) if names is not None else default_names(s.n)
    doc = {
        "terms": [{"exp": list(e), "coeff": s.field.format(c)} for e, c in s.items()],
        "text": s.to_str(names),
        "truncation": None,
    }
    if s.truncation is not None:
        doc["truncation"] = {
            "form": _vector(s.truncation.form.coeffs),
            "cutoff": rational(s.truncation.cutoff),
        }
    return doc


def series_from_json(doc: dict, n: int, field: Field) -> Series:
    terms = {}
    try:
        for t in doc["terms"]:
            exp = tuple(int(x) for x in t["exp"])
            if len(exp) != n:
                raise InputError(f"exponent {list(exp)} does not match {n} variables")
            c = field(str(t["coeff"]))
            if exp in terms:
                raise InputError(f"exponent {list(exp)} listed twice")
            terms[exp] = c
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed term list: {exc}") from exc
    except ZeroDivisionError as exc:
        raise InputError(f"coefficient is not defined in {field}") from exc
    trunc = None
    if doc.get("truncation"):
        tr = doc["truncation"]
        trunc = Truncation(LinearForm(tuple(parse_rational(x) for x in tr["form"])), parse_rational(tr["cutoff"]))
    return Series(n, field, terms, trunc)


def edge_to_json(e: EdgeFrame, index: int | None = None) -> dict:
    doc = {} if index is None else {"index": index}
    doc.update(
        {
            "ends": [list(e.alpha), list(e.beta)],
            "direction": list(e.d),
            "length": e.k,
            "L": _vector(e.L.coeffs),
            "value": rational(e.value),
            "loose": e.loose,
            "descendant": e.is_descendant,
        }
    )
    return doc


@dataclass
class InputDocument:
    field: Field
    vars: list
    series: Series
    options: dict = dc_field(default_factory=dict)


def parse_document(doc) -> InputDocument:
    if not isinstance(doc, dict):
        raise InputError("input document must be a JSON object")
    try:
        field = Field.from_json(doc.get("field", "QQ"))
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    names = doc.get("vars")
    has_expr, has_terms = "expr" in doc, "terms" in doc
    if has_expr == has_terms:
        raise InputError("give exactly one of 'expr' and 'terms'")
    if names is None:
        if has_expr:
            raise InputError("'vars' is required with 'expr'")
        try:
            n = len(doc["terms"][0]["exp"])
        except (IndexError, KeyError, TypeError) as exc:
            raise InputError("cannot infer the number of variables") from exc
        names = default_names(n)
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names) or not names:
        raise InputError("'vars' must be a nonempty list of names")
    if len(set(names)) != len(names):
        raise InputError("duplicate variable names")
    if has_expr:
        if not isinstance(doc["expr"], str):
            raise InputError("'expr' must be a string")
        series = parse_expression(doc["expr"], names, field)
    else:
        series = series_from_json({"terms": doc["terms"]}, len(names), field)
    options = doc.get("options") or {}
    if not isinstance(options, dict):
        raise InputError("'options' must be an object")
    return InputDocument(field, list(names), series, options)


def load_document(text: str) -> InputDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return parse_document(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False)
