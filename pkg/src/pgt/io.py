"""Group files: one JSON document per group.

    {"model": "bilinear", "p": 3, "d": 2, "m": 1, "B": [[[0], [1]], [[2], [0]]], "name": "..."}
    {"model": "table", "order": 8, "mul": [[...], ...], "labels": [...]}
    {"model": "perm", "degree": 4, "generators": [[1, 2, 3, 0], [0, 3, 2, 1]]}
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import PGTError
from .groups import FiniteGroup, group_from_bilinear, group_from_permutations, group_from_table


class GroupFileError(PGTError):
    """Malformed group document; ``where`` names the file position or field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _need(doc: dict, key: str, kind, src: str):
    if key not in doc:
        raise GroupFileError(f"{src}: field '{key}'", "missing")
    val = doc[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise GroupFileError(f"{src}: field '{key}'", f"expected an integer, got {val!r}")
    if kind is list and not isinstance(val, list):
        raise GroupFileError(f"{src}: field '{key}'", "expected a list")
    return val


def _int_array(val, shape: tuple, field: str, src: str):
    """Check a nested integer list against ``shape`` and report the first bad index."""

    def walk(x, depth, path):
        if depth == len(shape):
            if isinstance(x, bool) or not isinstance(x, int):
                raise GroupFileError(f"{src}: field '{field}{path}'", f"expected an integer, got {x!r}")
            return
        if not isinstance(x, list) or len(x) != shape[depth]:
            n = len(x) if isinstance(x, list) else type(x).__name__
            raise GroupFileError(f"{src}: field '{field}{path}'", f"expected length {shape[depth]}, got {n}")
        for i, y in enumerate(x):
            walk(y, depth + 1, f"{path}[{i}]")

    walk(val, 0, "")
    return val


def group_from_document(doc, src: str = "<document>") -> FiniteGroup:
    if not isinstance(doc, dict):
        raise GroupFileError(src, "top level must be a JSON object")
    model = doc.get("model")
    name = doc.get("name")
    try:
        if model == "bilinear":
            p, d, m = (_need(doc, k, int, src) for k in ("p", "d", "m"))
            B = _int_array(_need(doc, "B", list, src), (d, d, m), "B", src)
            return group_from_bilinear(p, d, m, B, name=name)
        if model == "table":
            n = _need(doc, "order", int, src)
            mul = _int_array(_need(doc, "mul", list, src), (n, n), "mul", src)
            labels = doc.get("labels")
            if labels is not None and (not isinstance(labels, list) or len(labels) != n):
                raise GroupFileError(f"{src}: field 'labels'", f"expected a list of {n} names")
            return group_from_table(mul, labels=labels, name=name)
        if model == "perm":
            deg = _need(doc, "degree", int, src)
            gens = _need(doc, "generators", list, src)
            for i, g in enumerate(gens):
                _int_array(g, (deg,), f"generators[{i}]", src)
            return group_from_permutations(deg, gens, name=name)
    except GroupFileError:
        raise
    except PGTError as exc:
        raise GroupFileError(src, f"{type(exc).__name__}: {exc}") from exc
    raise GroupFileError(f"{src}: field 'model'", f"expected 'bilinear', 'table' or 'perm', got {model!r}")


def load_group(path) -> FiniteGroup:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GroupFileError(str(path), exc.strerror or str(exc)) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GroupFileError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    G = group_from_document(doc, str(path))
    if G.name is None:
        G.name = path.stem
    return G


def dump_group(G: FiniteGroup, path=None) -> str:
    text = json.dumps(G.to_json(), separators=(",", ":")) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
