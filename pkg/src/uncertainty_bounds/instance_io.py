"""JSON instance files.

Layout::

    {
      "dimension": 2,
      "observables": [{"name": "X", "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}],
      "state": {"pure": [[1, 0], [0, 0]]}
    }

Complex numbers are ``[re, im]`` pairs; bare reals are accepted on input.
``state`` holds exactly one of ``pure``, ``density`` or ``bloch``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError
from .quantum import Observable, QuantumState

STATE_KINDS = ("pure", "density", "bloch")


@dataclass(frozen=True, eq=False)
class Instance:
    dimension: int
    observables: list
    state: QuantumState | None
    source: dict
    instance_id: str = "instance"


def _complex(v, where: str) -> complex:
    if isinstance(v, bool):
        raise ParseError(f"{where}: expected a number or [re, im], got {v!r}")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) and not isinstance(t, bool) for t in v):
        return complex(v[0], v[1])
    raise ParseError(f"{where}: expected a number or [re, im], got {v!r}")


def parse_vector(v, where: str) -> np.ndarray:
    if not isinstance(v, list) or not v:
        raise ParseError(f"{where}: expected a non-empty list")
    return np.array([_complex(z, f"{where}[{i}]") for i, z in enumerate(v)], dtype=np.complex128)


def parse_matrix(m, where: str, dim: int | None = None) -> np.ndarray:
    if not isinstance(m, list) or not m or not all(isinstance(row, list) for row in m):
        raise ParseError(f"{where}: expected a list of rows")
    n = len(m)
    for i, row in enumerate(m):
        if len(row) != n:
            raise ParseError(f"{where}[{i}]: row has {len(row)} entries, expected {n} (matrix must be square)")
    if dim is not None and n != dim:
        raise ParseError(f"{where}: matrix is {n}x{n}, dimension is {dim}")
    return np.array([[_complex(z, f"{where}[{i}][{j}]") for j, z in enumerate(row)] for i, row in enumerate(m)],
                    dtype=np.complex128)


def _parse_state(st, dim: int) -> QuantumState:
    if not isinstance(st, dict):
        raise ParseError("state: expected an object")
    kinds = [k for k in STATE_KINDS if k in st]
    if len(kinds) != 1:
        raise ParseError(f"state: expected exactly one of {STATE_KINDS}, got {sorted(st)}")
    kind = kinds[0]
    if kind == "pure":
        v = parse_vector(st["pure"], "state.pure")
        if v.shape[0] != dim:
            raise DimensionMismatch(f"state.pure has length {v.shape[0]}, dimension is {dim}")
        return QuantumState.from_vector(v)
    if kind == "density":
        return QuantumState.from_density(parse_matrix(st["density"], "state.density", dim))
    r = st["bloch"]
    if not isinstance(r, list) or len(r) != 3 or not all(isinstance(t, (int, float)) for t in r):
        raise ParseError("state.bloch: expected three real numbers")
    if dim != 2:
        raise DimensionMismatch(f"state.bloch needs dimension 2, got {dim}")
    return QuantumState.from_bloch(r)


def parse_instance(data, instance_id: str = "instance", require_state: bool = True) -> Instance:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    dim = data.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"dimension: expected a positive integer, got {dim!r}")
    raw = data.get("observables")
    if not isinstance(raw, list) or not raw:
        raise ParseError("observables: expected a non-empty list")
    obs = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or "matrix" not in entry:
            raise ParseError(f"observables[{i}]: expected an object with 'matrix'")
        name = entry.get("name", f"A{i + 1}")
        if not isinstance(name, str):
            raise ParseError(f"observables[{i}].name: expected a string")
        obs.append(Observable(name, parse_matrix(entry["matrix"], f"observables[{i}].matrix", dim)))
    state = None
    if "state" in data:
        state = _parse_state(data["state"], dim)
    elif require_state:
        raise ParseError("state: missing")
    return Instance(dim, obs, state, data, str(data.get("id", instance_id)))


def loads(text: str, instance_id: str = "instance", require_state: bool = True) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return parse_instance(data, instance_id, require_state)


def load(path, require_state: bool = True) -> Instance:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return loads(text, path.stem, require_state)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def encode_complex(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(m) -> list:
    return [[encode_complex(z) for z in row] for row in np.asarray(m)]


def to_dict(inst: Instance) -> dict:
    out = {
        "id": inst.instance_id,
        "dimension": inst.dimension,
        "observables": [{"name": a.name, "matrix": encode_matrix(a.matrix)} for a in inst.observables],
    }
    s = inst.state
    if s is not None:
        if s.kind == "pure":
            out["state"] = {"pure": [encode_complex(z) for z in s.vector]}
        elif s.kind == "bloch":
            out["state"] = {"bloch": [float(t) for t in s.bloch]}
        else:
            out["state"] = {"density": encode_matrix(s.rho)}
    return out


def dumps(inst: Instance) -> str:
    return json.dumps(to_dict(inst), indent=2)


def make_instance(observables, state, instance_id: str = "instance") -> Instance:
    inst = Instance(observables[0].dim, list(observables), state, {}, instance_id)
    return parse_instance(to_dict(inst), instance_id, require_state=state is not None)
