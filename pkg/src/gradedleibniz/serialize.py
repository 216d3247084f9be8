"""JSON forms for laws, witnesses and scalars.

Law JSON::

    {"dim": 3, "basis": ["e1", "e2", "e3"],
     "products": [{"left": "e1", "right": "e1", "value": {"e2": "1"}}]}

Product order is irrelevant and zero products are omitted.  Scalars are
strings such as ``"3/4"``, ``"-i"`` or ``"1/2+3*i"``.
"""
from __future__ import annotations

import json
from typing import Any

from .algebra import AlgebraLaw
from .scalar import Scalar, format_scalar, parse_scalar

__all__ = ["LawFormatError", "law_to_json", "law_from_json", "dumps_law",
           "loads_law", "witness_to_json", "witness_from_json", "scalar_str"]


class LawFormatError(ValueError):
    """Malformed law or witness JSON; ``where`` names the offending element."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def scalar_str(z: Scalar) -> str:
    return format_scalar(z)


def law_to_json(law: AlgebraLaw) -> dict:
    labels = list(law.labels)
    products = []
    for (i, j), vec in sorted(law.products.items()):
        products.append({
            "left": labels[i], "right": labels[j],
            "value": {labels[k]: format_scalar(c) for k, c in sorted(vec.items())},
        })
    out = {"dim": law.dim, "basis": labels, "products": products}
    if law.name:
        out["name"] = law.name
    return out


def _scalar(text: Any, where: str) -> Scalar:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise LawFormatError(f"scalar must be a string, got {text!r}", where)
    try:
        return parse_scalar(str(text))
    except ValueError as exc:
        raise LawFormatError(str(exc), where) from None


def law_from_json(data: Any) -> AlgebraLaw:
    if not isinstance(data, dict):
        raise LawFormatError("law must be a JSON object", "$")
    dim = data.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise LawFormatError(f"'dim' must be a non-negative integer, got {dim!r}", "$.dim")
    basis = data.get("basis", [f"e{k}" for k in range(1, dim + 1)])
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise LawFormatError(f"'basis' must list {dim} names", "$.basis")
    if len(set(basis)) != dim:
        raise LawFormatError("basis names must be distinct", "$.basis")
    index = {b: k for k, b in enumerate(basis)}
    prods = data.get("products", [])
    if not isinstance(prods, list):
        raise LawFormatError("'products' must be a list", "$.products")
    table: dict = {}
    for pos, entry in enumerate(prods):
        where = f"$.products[{pos}]"
        if not isinstance(entry, dict):
            raise LawFormatError("product must be an object", where)
        try:
            i, j = index[entry["left"]], index[entry["right"]]
        except KeyError as exc:
            raise LawFormatError(f"unknown or missing basis name {exc}", where) from None
        value = entry.get("value", {})
        if not isinstance(value, dict):
            raise LawFormatError("'value' must be an object", where + ".value")
        vec = table.setdefault((i, j), {})
        if vec:
            raise LawFormatError(f"duplicate product [{entry['left']},{entry['right']}]", where)
        for name, c in value.items():
            if name not in index:
                raise LawFormatError(f"unknown basis name {name!r}", where + ".value")
            vec[index[name]] = _scalar(c, f"{where}.value.{name}")
    return AlgebraLaw(dim, table, basis, data.get("name"))


def dumps_law(law: AlgebraLaw, **kw) -> str:
    return json.dumps(law_to_json(law), **kw)


def loads_law(text: str) -> AlgebraLaw:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LawFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} col {exc.colno}") from None
    return law_from_json(data)


def witness_to_json(P) -> dict:
    matrix = getattr(P, "matrix", P)
    return {"matrix": [[format_scalar(x) for x in row] for row in matrix]}


def witness_from_json(data: Any):
    from .iso import BasisChange
    if not isinstance(data, dict) or not isinstance(data.get("matrix"), list):
        raise LawFormatError("witness must be {\"matrix\": [[...]]}", "$")
    rows = data["matrix"]
    n = len(rows)
    out = []
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise LawFormatError(f"row must have {n} entries", f"$.matrix[{r}]")
        out.append([_scalar(x, f"$.matrix[{r}][{c}]") for c, x in enumerate(row)])
    return BasisChange(out)
