"""JSON input formats and report serialization.

Frame input::

    {"dim": 3, "vectors": [[1, 0, 0], ["1/2", "1-sqrt(2)", 2]]}

Subspace-family input::

    {"dim": 3, "subspaces": [{"basis": [[1, 0, 0], [0, 1, 0]], "weight": 1}]}

Scalars are integers, ``"p/q"`` strings, decimal floats, or expression
strings built from integers, ``sqrt(k)``, ``+ - * /`` and parentheses.
Expressions free of irrational square roots stay exact.
"""
from __future__ import annotations

import ast
import dataclasses
import enum
import json
import math
import operator
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .frames import Frame
from .linalg import DEFAULT_TOL, Subspace, as_array, exact_sqrt, format_scalar
from .projections import ProjectionFamily


class InputError(ValueError):
    """Malformed or inconsistent input document."""


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval(node):
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Fraction(node.value)
    if isinstance(node, ast.Constant) and isinstance(node.value, float):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        a, b = _eval(node.left), _eval(node.right)
        if isinstance(node.op, ast.Div) and b == 0:
            raise InputError("division by zero")
        if isinstance(a, float) or isinstance(b, float):
            a, b = float(a), float(b)
        return _BINOPS[type(node.op)](a, b)
    if (
        isinstance(node, ast.Call)
        and isinstance(node.func, ast.Name)
        and node.func.id == "sqrt"
        and len(node.args) == 1
        and not node.keywords
    ):
        v = _eval(node.args[0])
        if v < 0:
            raise InputError("sqrt of a negative number")
        if isinstance(v, Fraction):
            r = exact_sqrt(v)
            if r is not None:
                return r
        return math.sqrt(v)
    raise InputError(f"unsupported expression element: {ast.dump(node)}")


def parse_scalar(token) -> Fraction | float:
    if isinstance(token, bool):
        raise InputError("booleans are not scalars")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, float):
        return token
    if isinstance(token, str):
        s = token.strip()
        try:
            return Fraction(s) if "." not in s and "e" not in s.lower() else float(s)
        except ZeroDivisionError as exc:
            raise InputError(f"division by zero in {token!r}") from exc
        except ValueError:
            pass
        try:
            tree = ast.parse(s, mode="eval")
        except SyntaxError as exc:
            raise InputError(f"cannot parse scalar {token!r}") from exc
        return _eval(tree)
    raise InputError(f"cannot parse scalar {token!r}")


def _parse_rows(rows, dim: int, what: str, exact: bool | None):
    if not isinstance(rows, list) or not rows:
        raise InputError(f"{what}: expected a non-empty list of vectors")
    parsed = []
    for k, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{what}[{k}] is not a list")
        if len(row) != dim:
            raise InputError(f"{what}[{k}] has length {len(row)}, expected dim = {dim}")
        parsed.append([parse_scalar(t) for t in row])
    try:
        arr = as_array(parsed, exact)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    # inferred mode: hand the parsed scalars on so mixed literals are reported as promoted
    return parsed if exact is None else arr


def load_document(doc: dict, exact: bool | None = None, tol: float = DEFAULT_TOL, allow_zero: bool = False):
    """Build a :class:`Frame` or :class:`ProjectionFamily` from a parsed document."""
    if not isinstance(doc, dict):
        raise InputError("top level must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InputError("'dim' must be a positive integer")
    label = doc.get("label")
    if ("vectors" in doc) == ("subspaces" in doc):
        raise InputError("exactly one of 'vectors' or 'subspaces' is required")
    try:
        if "vectors" in doc:
            V = _parse_rows(doc["vectors"], dim, "vectors", exact)
            return Frame(V, label=label, allow_zero=allow_zero, tol=tol)
        subs, weights = [], []
        if not isinstance(doc["subspaces"], list) or not doc["subspaces"]:
            raise InputError("subspaces: expected a non-empty list")
        for k, entry in enumerate(doc["subspaces"]):
            if not isinstance(entry, dict) or "basis" not in entry:
                raise InputError(f"subspaces[{k}] needs a 'basis'")
            B = _parse_rows(entry["basis"], dim, f"subspaces[{k}].basis", exact)
            subs.append(Subspace(dim, B, tol))
            weights.append(parse_scalar(entry.get("weight", 1)))
        return ProjectionFamily(tuple(subs), tuple(weights), label)
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def load_input(path: str | Path, **kw):
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
    except OSError as exc:
        raise InputError(str(exc)) from exc
    return load_document(doc, **kw)


def frame_document(F: Frame) -> dict:
    return {"dim": F.dim, "vectors": to_jsonable(F.vectors), **({"label": F.label} if F.label else {})}


def family_document(PF: ProjectionFamily) -> dict:
    return {
        "dim": PF.dim,
        "subspaces": [
            {"basis": to_jsonable(W.basis), "weight": to_jsonable(w)} for W, w in zip(PF.subspaces, PF.weights)
        ],
    }


def to_jsonable(obj: Any):
    """Recursively convert results into JSON-ready values; rationals become ``"p/q"``."""
    if isinstance(obj, Fraction):
        return format_scalar(obj) if obj.denominator != 1 else int(obj.numerator)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if obj is None or isinstance(obj, str):
        return obj
    return repr(obj)


def dumps(report: dict) -> str:
    """Canonical JSON text; parsing and re-emitting it is byte-identical."""
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
