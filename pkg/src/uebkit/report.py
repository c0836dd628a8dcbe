"""Report payloads for the command-line front end.

Reports are plain dicts with a fixed key order, built from verdict objects
and rendered either as JSON or as flat "key: value" text. Nothing here reads
clocks or environment, so identical inputs and options produce byte-identical
output.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .cuts import enumerate_cuts, is_genuinely_entangled, schmidt
from .slocc import classify_three_qubit
from .statefile import dumps_state_file
from .states import StateSet, Tolerance, canonical_phase, orthogonal_complement
from .subspaces import (
    BasisKind,
    BasisVerdict,
    CompletionResult,
    SearchConfig,
    SetMode,
    SubspaceVerdict,
)


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def complex_vector(amps: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in amps]


def states_payload(st: StateSet) -> list[list[list[float]]]:
    return [complex_vector(s.amps) for s in st.states]


def input_payload(path: str | Path, st: StateSet, name: str | None) -> dict:
    return {
        "path": str(path),
        "sha256": sha256_file(path),
        "name": name,
        "dims": list(st.space.dims),
        "count": len(st),
    }


def catalog_input_payload(entry_id: str, st: StateSet, kind: BasisKind | None) -> dict:
    """Input block for a set resolved from the registry; digest of its canonical serialization."""
    data = dumps_state_file(st, kind=kind, name=entry_id)
    return {
        "path": None,
        "sha256": hashlib.sha256(data.encode()).hexdigest(),
        "name": entry_id,
        "dims": list(st.space.dims),
        "count": len(st),
    }


def state_diagnostics(st: StateSet, tol: Tolerance | float | None = None) -> list[dict]:
    """Per-state Schmidt ranks across every cut, genuine-entanglement flag, class label."""
    cuts = list(enumerate_cuts(st.space))
    three_qubit = st.space.dims == (2, 2, 2)
    out: list[dict] = []
    for i, s in enumerate(st.states):
        entry: dict = {
            "index": i,
            "schmidt_ranks": {c.label: schmidt(s, c, tol).rank for c in cuts},
            "genuinely_entangled": is_genuinely_entangled(s, tol),
        }
        if three_qubit:
            v = classify_three_qubit(s, tol)
            entry["slocc"] = v.label
            entry["tangle"] = v.tangle
        out.append(entry)
    return out


def complement_payload(st: StateSet, tol: Tolerance | float | None = None) -> dict:
    comp = orthogonal_complement(st.subspace(), tol)
    return {
        "dim": comp.dim,
        "basis": [complex_vector(canonical_phase(b, tol).amps) for b in comp.basis],
    }


def cut_verdict_payload(v: SubspaceVerdict) -> dict:
    return {
        "cut": v.cut.label,
        "mask": v.cut.mask,
        "status": v.status.value,
        "grade": v.grade.value,
        "score": v.score,
        "reason": v.reason,
        "witness": complex_vector(v.witness.amps) if v.witness is not None else None,
    }


def verify_report(
    input_info: dict,
    kind: BasisKind,
    cfg: SearchConfig,
    eps: float,
    verdict: BasisVerdict,
    st: StateSet,
) -> dict:
    return {
        "command": "verify",
        "input": input_info,
        "kind": kind.value,
        "tolerance": eps,
        "seed": cfg.seed,
        "starts": cfg.starts,
        "outcome": verdict.outcome.value,
        "grade": verdict.grade.value,
        "complement_dim": verdict.complement_dim,
        "offending_state": verdict.offending_state,
        "per_cut": [cut_verdict_payload(v) for v in verdict.per_cut],
        "states": state_diagnostics(st, eps),
        "complement": complement_payload(st, eps),
    }


def completion_payload(mode: SetMode, res: CompletionResult | None) -> dict:
    """Completion block of an analyze report; res None means nothing was missing."""
    if res is None:
        return {
            "mode": mode.value,
            "complement_dim": 0,
            "found": 0,
            "completable": "YES",
            "reason": "input already spans the space",
            "added_states": [],
        }
    return {
        "mode": mode.value,
        "complement_dim": res.complement_dim,
        "found": len(res.found),
        "completable": res.completable.value,
        "reason": res.reason,
        "added_states": states_payload(res.found),
    }


def analyze_report(
    input_info: dict,
    cfg: SearchConfig,
    eps: float,
    st: StateSet,
    completion: dict | None = None,
    extended_space: dict | None = None,
    slocc: dict | None = None,
    local_indistinguishability: dict | None = None,
) -> dict:
    report = {
        "command": "analyze",
        "input": input_info,
        "tolerance": eps,
        "seed": cfg.seed,
        "starts": cfg.starts,
        "states": state_diagnostics(st, eps),
        "complement": complement_payload(st, eps),
    }
    if completion is not None:
        report["completion"] = completion
        report["extended_space"] = extended_space or {"status": "OUT_OF_SCOPE"}
    if slocc is not None:
        report["slocc"] = slocc
    if local_indistinguishability is not None:
        report["local_indistinguishability"] = local_indistinguishability
    return report


def construct_report(
    name: str,
    title: str,
    st: StateSet,
    kind: BasisKind | None,
    gate: str,
    output: str | None,
    include_states: bool,
) -> dict:
    report: dict = {
        "command": "construct",
        "name": name,
        "title": title,
        "dims": list(st.space.dims),
        "count": len(st),
        "kind": kind.value if kind is not None else None,
        "gate": gate,
        "output": output,
    }
    if include_states:
        report["states"] = states_payload(st)
    return report


def catalog_report(entries: list[dict], generators: list[dict]) -> dict:
    return {"command": "catalog", "entries": entries, "generators": generators}


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def _leaf(value: object) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, float)):
        return repr(value)
    return json.dumps(value)


def _flatten(value: object, key: str, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        if not value:
            out.append((key, "{}"))
        for k, v in value.items():
            _flatten(v, f"{key}.{k}" if key else str(k), out)
    elif isinstance(value, list) and any(isinstance(x, dict) for x in value):
        if not value:
            out.append((key, "[]"))
        for i, v in enumerate(value):
            _flatten(v, f"{key}[{i}]", out)
    else:
        out.append((key, _leaf(value)))


def render_text(report: dict) -> str:
    """Flat deterministic text: one 'key: value' line per leaf, insertion order."""
    out: list[tuple[str, str]] = []
    _flatten(report, "", out)
    return "".join(f"{k}: {v}\n" for k, v in out)
