"""JSON formats: OPE declarations, scalar/Laurent parsing and canonical report dumps."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import sympy

from .fields import CONST, FieldPolynomial, FieldSymbol, FieldTerm, OpeData
from .laurent import LaurentPoly
from .scalars import CentralScalar

OPE_FORMAT_VERSION = 1

_W, _C = sympy.symbols("w c")


class FormatError(ValueError):
    """Malformed declaration file or expression."""


def parse_expression(text: str) -> LaurentPoly:
    """Parse an exact expression in w and c (e.g. ``"w"``, ``"c/2"``, ``"3*w**2 - w"``).

    Returns a Laurent polynomial in w with coefficients in Q[c].
    """
    try:
        expr = sympy.sympify(text, locals={"w": _W, "c": _C}, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise FormatError(f"cannot parse {text!r}: {exc}") from None
    extra = expr.free_symbols - {_W, _C}
    if extra:
        raise FormatError(f"unknown symbols {sorted(map(str, extra))} in {text!r}")
    coeffs: dict[int, CentralScalar] = {}
    for term in sympy.Add.make_args(sympy.expand(expr)):
        if term == 0:
            continue
        coef, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict() if rest != 1 else {}
        a = powers.get(_W, 0)
        b = powers.get(_C, 0)
        if set(powers) - {_W, _C} or not coef.is_Rational:
            raise FormatError(f"{text!r} is not a Laurent polynomial with rational coefficients")
        if not (sympy.Integer(a) == a and sympy.Integer(b) == b and b >= 0):
            raise FormatError(f"non-integer power in {text!r}")
        s = CentralScalar({int(b): Fraction(int(coef.p), int(coef.q))})
        coeffs[int(a)] = coeffs[int(a)] + s if int(a) in coeffs else s
    return LaurentPoly(coeffs, "w")


def parse_scalar(value: Any) -> CentralScalar:
    """A scalar record: JSON object {degree: rational}, integer, or expression string."""
    if isinstance(value, bool):
        raise FormatError("booleans are not scalars")
    if isinstance(value, int):
        return CentralScalar.const(value)
    if isinstance(value, dict):
        try:
            return CentralScalar.from_json(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad scalar {value!r}: {exc}") from None
    if isinstance(value, str):
        poly = parse_expression(value)
        if any(e != 0 for e in poly.support()):
            raise FormatError(f"scalar {value!r} depends on w")
        return poly.coefficient(0)
    raise FormatError(f"bad scalar {value!r}")


def ope_from_json(data: dict, strict: bool = True) -> OpeData:
    try:
        fields = {f["name"]: FieldSymbol(f["name"], int(f["weight"])) for f in data["fields"]}
        left, right = fields[data["left"]], fields[data["right"]]
        singular = {}
        for j, records in data["singular"].items():
            terms = []
            for r in records:
                name = r["symbol"]
                sym = CONST if name == "CONST" else fields[name]
                terms.append(FieldTerm(parse_scalar(r["scalar"]), int(r.get("derivative_order", 0)),
                                       sym, int(r.get("w_exponent", 0))))
            singular[int(j)] = FieldPolynomial(terms)
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"malformed OPE declaration: missing or bad {exc}") from None
    return OpeData(left, right, singular, strict=strict)


def ope_to_json(ope: OpeData) -> dict:
    syms = {ope.left, ope.right}
    for cj in ope.singular.values():
        syms |= cj.symbols()
    syms.discard(CONST)
    return {
        "format_version": OPE_FORMAT_VERSION,
        "fields": [{"name": s.name, "weight": s.weight} for s in sorted(syms, key=lambda s: s.name)],
        "left": ope.left.name,
        "right": ope.right.name,
        "singular": {
            str(j): [{"scalar": t.scalar.to_json(), "derivative_order": t.derivative_order,
                      "symbol": t.symbol.name, "w_exponent": t.w_exponent}
                     for t in ope.singular[j].terms]
            for j in sorted(ope.singular)
        },
    }


def load_ope(path, strict: bool = True) -> OpeData:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return ope_from_json(data, strict=strict)


def _sort_key(k: str):
    try:
        return (0, int(k), "")
    except ValueError:
        return (1, 0, k)


def canonicalize(obj):
    """Recursively order dict keys, integer-like keys numerically and first."""
    if isinstance(obj, dict):
        return {k: canonicalize(obj[k]) for k in sorted(obj, key=lambda k: _sort_key(str(k)))}
    if isinstance(obj, (list, tuple)):
        return [canonicalize(v) for v in obj]
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, CentralScalar):
        return obj.to_json()
    return obj


def canonical_dumps(obj) -> str:
    return json.dumps(canonicalize(obj), indent=2, ensure_ascii=False) + "\n"
