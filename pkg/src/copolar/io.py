"""JSON and CSV formats for bodies, dual sets, exponent sets and grids."""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from .geometry import CopolarBody, DualGenerators, canonicalize, canonicalize_generators
from .newton import ExponentSet


class InputError(ValueError):
    """Malformed input file."""


def _number(x) -> float:
    if isinstance(x, str):
        try:
            return float(Fraction(x.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a number: {x!r}") from exc
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise InputError(f"not a number: {x!r}")
    return float(x)


def _rows(data, key, n):
    try:
        rows = data[key]
    except (KeyError, TypeError) as exc:
        raise InputError(f"missing field {key!r}") from exc
    out = []
    for row in rows:
        if len(row) != n:
            raise InputError(f"{key} entry {row!r} does not have dimension {n}")
        out.append([_number(x) for x in row])
    return out


def _dim(data) -> int:
    n = data.get("n") if isinstance(data, dict) else None
    if not isinstance(n, int) or n < 1:
        raise InputError("field 'n' must be a positive integer")
    return n


def load_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc})") from exc


def body_from_dict(data) -> CopolarBody:
    n = _dim(data)
    if data.get("full"):
        return CopolarBody.full_orthant(n)
    return canonicalize(n, np.array(_rows(data, "normals", n)).reshape(-1, n))


def body_to_dict(P: CopolarBody) -> dict:
    out = {"n": P.dim, "normals": P.normals.tolist()}
    if P.full:
        out["full"] = True
    return out


def dual_from_dict(data) -> DualGenerators:
    n = _dim(data)
    return canonicalize_generators(n, np.array(_rows(data, "generators", n)).reshape(-1, n))


def dual_to_dict(L: DualGenerators) -> dict:
    return {"n": L.dim, "generators": L.generators.tolist()}


def exponents_from_dict(data) -> ExponentSet:
    n = _dim(data)
    rows = []
    for row in data.get("exponents", []):
        if len(row) != n or any(not isinstance(k, int) or isinstance(k, bool) for k in row):
            raise InputError(f"exponent {row!r} is not an integer vector of dimension {n}")
        rows.append(tuple(row))
    try:
        return ExponentSet(n, tuple(rows))
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def read_body(path) -> CopolarBody:
    return body_from_dict(load_json(path))


def read_dual(path) -> DualGenerators:
    return dual_from_dict(load_json(path))


def read_exponents(path) -> ExponentSet:
    return exponents_from_dict(load_json(path))


def dumps(data) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False)


def write_grid_csv(path, grid_fn) -> None:
    """Header ``s_1,...,s_n,value``; rows in lexicographic node order."""
    nodes = grid_fn.box.nodes()
    values = grid_fn.flat()
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"s_{k + 1}" for k in range(nodes.shape[1])] + ["value"])
        for node, value in zip(nodes, values):
            writer.writerow([repr(float(x)) for x in node] + [repr(float(value))])
