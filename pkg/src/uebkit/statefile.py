"""JSON state files: a named set of amplitude vectors with optional metadata.

Schema (one object per file):

    {
      "name":   string or null,
      "dims":   [d1, d2, ...],
      "kind":   "UEB" | "UEB_ALL_CUTS" | "UMEB" | null,
      "states": [ [[re, im], [re, im], ...], ... ],
      "planes": { "<cut mask>": [row, row] }          optional
    }

Amplitudes are [re, im] pairs. Floats pass through Python's shortest
round-trip repr, so a save/load cycle reproduces the stored amplitudes
bit-exactly. States whose norm drifts from 1 by more than 1e-6 are rejected;
smaller drift is renormalized on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .cuts import Bipartition
from .states import PureState, QuditDims, StateSet, Tolerance, orthonormalize
from .subspaces import BasisKind


class StateFileError(ValueError):
    """Malformed or inconsistent state file content."""


@dataclass(frozen=True, eq=False)
class LoadedStateFile:
    name: str | None
    states: StateSet
    kind: BasisKind | None
    planes: dict[int, np.ndarray]


def _pair_vector(raw: object, length: int, what: str) -> np.ndarray:
    if not isinstance(raw, list) or len(raw) != length:
        raise StateFileError(f"{what} must be a list of {length} [re, im] pairs")
    out = np.empty(length, dtype=np.complex128)
    for i, pair in enumerate(raw):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in pair)
        ):
            raise StateFileError(f"{what}, component {i}: expected an [re, im] number pair")
        out[i] = complex(pair[0], pair[1])
    return out


def _vector_pairs(v: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in v]


def load_state_file(
    path: str | Path,
    tol: Tolerance | float | None = None,
    gram_fix: bool = False,
) -> LoadedStateFile:
    """Parse and validate a state file; gram_fix re-orthonormalizes drifted sets."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    return parse_state_file(text, tol=tol, gram_fix=gram_fix)


def parse_state_file(
    text: str,
    tol: Tolerance | float | None = None,
    gram_fix: bool = False,
) -> LoadedStateFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise StateFileError("top level must be an object")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise StateFileError("name must be a string or null")
    dims_raw = doc.get("dims")
    if not isinstance(dims_raw, list) or not dims_raw or not all(isinstance(d, int) and not isinstance(d, bool) for d in dims_raw):
        raise StateFileError("dims must be a nonempty list of integers")
    try:
        space = QuditDims(tuple(dims_raw))
    except ValueError as exc:
        raise StateFileError(str(exc)) from exc
    kind_raw = doc.get("kind")
    kind: BasisKind | None = None
    if kind_raw is not None:
        try:
            kind = BasisKind(kind_raw)
        except ValueError:
            raise StateFileError(f"kind must be one of {[k.value for k in BasisKind]} or null, got {kind_raw!r}")
    states_raw = doc.get("states")
    if not isinstance(states_raw, list) or not states_raw:
        raise StateFileError("states must be a nonempty list")
    vectors: list[np.ndarray] = []
    for i, raw in enumerate(states_raw):
        vectors.append(_pair_vector(raw, space.total, f"state {i}"))
    states: list[PureState] = []
    for i, v in enumerate(vectors):
        try:
            states.append(PureState(space, v))
        except ValueError as exc:
            raise StateFileError(f"state {i}: {exc}") from exc
    try:
        state_set = StateSet(space, tuple(states), name=name)
    except ValueError as exc:
        if not gram_fix:
            raise StateFileError(f"{exc} (pass the gram-fix option to re-orthonormalize)") from exc
        repaired = orthonormalize(space, [s.amps for s in states], tol)
        if repaired.dim != len(states):
            raise StateFileError(
                f"gram fix failed: {len(states)} states span only {repaired.dim} dimensions"
            ) from exc
        state_set = StateSet(space, repaired.basis, name=name)
    planes_raw = doc.get("planes")
    planes: dict[int, np.ndarray] = {}
    if planes_raw is not None:
        if not isinstance(planes_raw, dict):
            raise StateFileError("planes must be an object keyed by cut mask")
        for key, rows in planes_raw.items():
            try:
                mask = int(key)
            except ValueError:
                raise StateFileError(f"plane key {key!r} is not an integer cut mask")
            try:
                cut = Bipartition(space, mask)
            except ValueError as exc:
                raise StateFileError(f"plane key {key}: {exc}") from exc
            singles = [b for b in (cut.block_a, cut.block_b) if len(b) == 1]
            if not singles:
                raise StateFileError(f"plane key {key}: the cut must isolate a single party")
            if not isinstance(rows, list) or len(rows) != 2:
                raise StateFileError(f"plane {key}: expected exactly two rows")
            width = space.total // space.dims[singles[0][0]]
            planes[mask] = np.stack([_pair_vector(r, width, f"plane {key} row {j}") for j, r in enumerate(rows)])
    return LoadedStateFile(name=name, states=state_set, kind=kind, planes=planes)


def save_state_file(
    path: str | Path,
    states: StateSet,
    kind: BasisKind | None = None,
    planes: dict[int, np.ndarray] | None = None,
    name: str | None = None,
) -> None:
    Path(path).write_text(dumps_state_file(states, kind=kind, planes=planes, name=name))


def dumps_state_file(
    states: StateSet,
    kind: BasisKind | None = None,
    planes: dict[int, np.ndarray] | None = None,
    name: str | None = None,
) -> str:
    doc: dict[str, object] = {
        "name": name if name is not None else states.name,
        "dims": list(states.space.dims),
        "kind": kind.value if kind is not None else None,
        "states": [_vector_pairs(s.amps) for s in states.states],
    }
    if planes:
        doc["planes"] = {str(mask): [_vector_pairs(row) for row in w] for mask, w in sorted(planes.items())}
    return json.dumps(doc, indent=2) + "\n"
