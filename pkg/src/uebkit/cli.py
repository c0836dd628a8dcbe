"""Command-line front end: catalog listing, construction, verification, analysis.

Exit codes: 0 for VERIFIED or COMPLETE_BASIS verdicts and for successful
catalog/construct/analyze runs, 1 for REFUTED verdicts and failed
construction gates, 2 for INCONCLUSIVE verdicts, 3 for malformed input or
bad parameters. Reports go to stdout, error messages to stderr, and
identical inputs with identical options produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .catalog import (
    CATALOG,
    GENERATORS,
    CoeffVariant,
    ConstructionError,
    build_entry,
    build_generator,
    extend_padded_square_meb,
    recognize_padded_square_meb,
)
from .cuts import Bipartition, single_cut
from .locc import (
    ProjectionOrthogonalityError,
    VanishingProjectionError,
    all_cut_indistinguishability_flag,
)
from .report import (
    analyze_report,
    catalog_input_payload,
    catalog_report,
    completion_payload,
    construct_report,
    input_payload,
    render_json,
    render_text,
    verify_report,
)
from .slocc import classify_three_qubit, resource_dimension_flag
from .statefile import StateFileError, load_state_file, save_state_file
from .states import _eps
from .subspaces import (
    BasisKind,
    Outcome,
    SearchConfig,
    SetMode,
    completion_search,
    verify_basis,
)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3

_KINDS = {
    "ueb": BasisKind.UEB,
    "ueb-all-cuts": BasisKind.UEB_ALL_CUTS,
    "umeb": BasisKind.UMEB,
    "complete": BasisKind.COMPLETE,
}
_MODES = {"entangled": SetMode.ENTANGLED, "max-entangled": SetMode.MAX_ENTANGLED}
_VARIANTS = {"dft": CoeffVariant.DFT, "hadamard": CoeffVariant.HADAMARD_IF_POWER_OF_TWO}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized searches (default 0)")
    p.add_argument("--starts", type=int, default=64, help="search restarts; 0 keeps only exact routes (default 64)")
    p.add_argument("--format", choices=("text", "json"), default="json", help="report format (default json)")


def _emit(report: dict, fmt: str) -> None:
    sys.stdout.write(render_json(report) if fmt == "json" else render_text(report))


def _config(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(starts=args.starts, seed=args.seed)


def _resolve_input(args: argparse.Namespace, cfg: SearchConfig):
    """Load a state file, or fall back to a catalog entry id.

    Returns (states, kind, planes, input block). An existing file always
    wins over an identically named registry entry.
    """
    ref = args.file
    if Path(ref).exists():
        loaded = load_state_file(ref, tol=args.tol, gram_fix=args.gram_fix)
        return loaded.states, loaded.kind, loaded.planes, input_payload(ref, loaded.states, loaded.name)
    if ref in CATALOG:
        entry = CATALOG[ref]
        st = build_entry(ref, cfg, args.tol)
        return st, entry.kind, {}, catalog_input_payload(ref, st, entry.kind)
    if ref in GENERATORS:
        st = build_generator(ref, cfg, args.tol)  # parameterless generators only
        return st, None, {}, catalog_input_payload(ref, st, None)
    raise StateFileError(f"no such file or catalog entry: {ref!r}")


def _parse_cut(args: argparse.Namespace, space, kind: BasisKind) -> Bipartition | None:
    raw = getattr(args, "cut", None)
    if kind is BasisKind.COMPLETE:
        if raw is not None:
            raise ValueError("kind complete is cut-free; drop --cut")
        return None
    if raw is None:
        if kind is BasisKind.UEB_ALL_CUTS:
            return None
        return single_cut(space)  # raises for more than two parties
    if raw == "all":
        if kind is not BasisKind.UEB_ALL_CUTS:
            raise ValueError("--cut all is only meaningful for kind ueb-all-cuts")
        return None
    mask = int(raw)
    if kind is BasisKind.UEB_ALL_CUTS:
        raise ValueError("kind ueb-all-cuts enumerates every cut; drop --cut or pass 'all'")
    return Bipartition(space, mask)


def cmd_catalog(args: argparse.Namespace) -> int:
    entries = [
        {
            "id": e.entry_id,
            "tag": e.tag,
            "title": e.title,
            "dims": list(e.dims),
            "kind": e.kind.value if e.kind else None,
            "expected": e.expected.value if e.expected else None,
        }
        for e in CATALOG.values()
    ]
    generators = [{"name": g.name, "title": g.title, "params": g.params} for g in GENERATORS.values()]
    _emit(catalog_report(entries, generators), args.format)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    cfg = _config(args)
    name = args.name
    if name in CATALOG:
        entry = CATALOG[name]
        st = build_entry(name, cfg, args.tol)
        kind = entry.kind
        title = entry.title
        gate = entry.expected.value if entry.expected else "ORTHONORMAL"
    elif name in GENERATORS:
        st = build_generator(
            name,
            cfg,
            args.tol,
            d=args.d,
            n=args.n,
            variant=_VARIANTS[args.variant],
            dims=tuple(int(x) for x in args.dims.split(",")) if args.dims else None,
            kets=args.kets.split(",") if args.kets else None,
        )
        kind = {
            "bell-meb": BasisKind.UMEB,
            "embed-meb": BasisKind.UMEB,
            "nqubit-ueb": BasisKind.UEB_ALL_CUTS,
            "dft-superposition": None,
            "prop2a-set": None,
        }[name]
        title = GENERATORS[name].title
        gate = "VERIFIED" if kind else "ORTHONORMAL"
    else:
        raise ValueError(f"unknown family {name!r}; run 'uebkit catalog list'")
    if args.output:
        save_state_file(args.output, st, kind=kind, name=name)
    _emit(
        construct_report(name, title, st, kind, gate, args.output, include_states=args.output is None),
        args.format,
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _config(args)
    st, stored_kind, _planes, info = _resolve_input(args, cfg)
    kind = _KINDS[args.kind] if args.kind else stored_kind
    if kind is None:
        raise ValueError("no kind given: pass --kind or store one in the state file")
    cut = _parse_cut(args, st.space, kind)
    verdict = verify_basis(st, kind, cfg, args.tol, cut=cut)
    _emit(verify_report(info, kind, cfg, _eps(args.tol), verdict, st), args.format)
    if verdict.outcome in (Outcome.VERIFIED, Outcome.COMPLETE_BASIS):
        return EXIT_OK
    if verdict.outcome is Outcome.REFUTED:
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = _config(args)
    st, _kind, planes, info = _resolve_input(args, cfg)
    completion = None
    strong = None
    if args.completion is not None:
        mode = _MODES[args.completion]
        if len(st) == st.space.total:
            result = None
        else:
            cut = None
            if args.cut is not None:
                cut = Bipartition(st.space, int(args.cut))
            elif st.space.parties > 2:
                raise ValueError("completion on more than two parties needs --cut <mask>")
            result = completion_search(st, mode, cfg, args.tol, cut=cut)
        completion = completion_payload(mode, result)
        d = recognize_padded_square_meb(st, args.tol) if st.space.parties == 2 else None
        if d is not None:
            ext = extend_padded_square_meb(st, d)
            ext_verdict = verify_basis(ext, BasisKind.UMEB, cfg, args.tol)
            strong = {
                "status": "COMPLETABLE_IN_EXTENDED_SPACE",
                "extended_dims": [d, 2 * d],
                "extension_count": len(ext),
                "extension_outcome": ext_verdict.outcome.value,
            }
        else:
            strong = {"status": "OUT_OF_SCOPE"}
    slocc = None
    indist = None
    if st.space.dims == (2, 2, 2):
        verdicts = [classify_three_qubit(s, args.tol) for s in st.states]
        slocc = {
            "labels": [v.label for v in verdicts],
            "tangles": [v.tangle for v in verdicts],
            "resource_dimension_flag": resource_dimension_flag(st, args.tol),
        }
        try:
            flags = all_cut_indistinguishability_flag(st, args.tol, planes=planes or None)
            indist = {
                "per_cut": {
                    str(mask): {
                        "value": rec.flag.value,
                        "grade": rec.flag.grade.value,
                        "reason": rec.flag.reason,
                        "selection": list(rec.selection),
                        "probabilities": list(rec.probabilities),
                    }
                    for mask, rec in flags.items()
                },
                "all_cuts": all(rec.flag.value for rec in flags.values()),
            }
        except (VanishingProjectionError, ProjectionOrthogonalityError, ValueError) as exc:
            indist = {"status": "NOT_APPLICABLE", "reason": str(exc)}
    _emit(
        analyze_report(info, cfg, _eps(args.tol), st, completion, strong, slocc, indist),
        args.format,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="uebkit",
        description="Construct, verify and analyze unextendible entangled bases of multi-qudit systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cat = sub.add_parser("catalog", help="registry operations")
    cat_sub = p_cat.add_subparsers(dest="action", required=True)
    p_list = cat_sub.add_parser("list", help="list registered families and generators")
    p_list.add_argument("--format", choices=("text", "json"), default="json")
    p_list.set_defaults(func=cmd_catalog)

    p_con = sub.add_parser("construct", help="build a registered family or generator instance")
    p_con.add_argument("name", help="catalog entry id or generator name")
    p_con.add_argument("-o", "--output", default=None, help="write the result as a state file")
    p_con.add_argument("--d", type=int, default=None, help="local dimension for bell-meb / embed-meb")
    p_con.add_argument("--n", type=int, default=None, help="padding for embed-meb, qubit count for nqubit-ueb")
    p_con.add_argument("--variant", choices=sorted(_VARIANTS), default="dft", help="coefficient variant for nqubit-ueb")
    p_con.add_argument("--dims", default=None, help="comma-separated dims for dft-superposition")
    p_con.add_argument("--kets", default=None, help="comma-separated kets for dft-superposition")
    _add_common(p_con)
    p_con.set_defaults(func=cmd_construct)

    p_ver = sub.add_parser("verify", help="check an unextendibility claim for a state file")
    p_ver.add_argument("file")
    p_ver.add_argument("--kind", choices=sorted(_KINDS), default=None, help="claim kind; overrides the file's")
    p_ver.add_argument("--cut", default=None, help="cut mask for two-block kinds, or 'all'")
    p_ver.add_argument("--gram-fix", action="store_true", help="re-orthonormalize drifted input sets")
    _add_common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    p_ana = sub.add_parser("analyze", help="per-state diagnostics and class analysis for a state file")
    p_ana.add_argument("file")
    p_ana.add_argument(
        "--completion",
        choices=sorted(_MODES),
        default=None,
        help="also search the complement for an orthogonal completion of this kind",
    )
    p_ana.add_argument("--cut", default=None, help="cut mask the completion works across")
    p_ana.add_argument("--gram-fix", action="store_true", help="re-orthonormalize drifted input sets")
    _add_common(p_ana)
    p_ana.set_defaults(func=cmd_analyze)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except (StateFileError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
