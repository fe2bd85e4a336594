"""Command line interface.

Subcommands: construct, verify, tables, export, import.  Party and cut
indices are 0-based everywhere.  The verify exit code is keyed to the
numerical oracle: 0 when every selected cut is trivial, 1 otherwise; with
--combinatorial-only a completed run exits 0 regardless of verdicts, since
the combinatorial conditions are sufficient but not exhaustive.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import caps
from .errors import QnonlocError
from .lattice import ModifiedFamily, SetFamily
from .oracle import oracle_verify
from .serialize import (cut_report_to_json, dumps_canonical, family_from_json,
                        family_to_json, load_family, oracle_report_to_json,
                        save_family, states_to_json)
from .states import family_states
from .tables import (DEFAULT_TABLE_D, all_comparison_tables, comparison_to_json,
                     render_comparison_csv, render_comparison_text,
                     render_diagonal_csv, render_diagonal_text)
from .verifier import overall_verdict, verify_strongest_nonlocality


@dataclass
class RunConfig:
    command: str
    d: int | None = None
    n: int | None = None
    xi: int | str | None = None
    family_path: str | None = None
    cut: str = "all"
    tol: float = 1e-9
    combinatorial_only: bool = False
    fmt: str = "text"
    out: str | None = None
    states_out: str | None = None
    diagonal: int | None = None
    enum_cap: int | None = None
    op_cap: int | None = None


def _parse_xi(raw: str) -> int | str:
    try:
        return int(raw)
    except ValueError:
        if raw in ("smallest", "structured"):
            return raw
        raise argparse.ArgumentTypeError(
            f"--xi must be an integer or one of smallest/structured, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnonloc",
        description="Construct and verify strongest-nonlocal orthogonal "
                    "entangled state families (0-based party indices).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a modified family")
    p.add_argument("--d", type=int, required=True, help="local dimension (>= 2)")
    p.add_argument("--n", type=int, required=True, help="number of parties (>= 3)")
    p.add_argument("--xi", type=_parse_xi, default=None,
                   help="second removed diagonal digit or a strategy name")
    p.add_argument("--out", help="family JSON path (default: stdout)")
    p.add_argument("--states-out", dest="states_out", help="state export JSON path")
    p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    p = sub.add_parser("verify", help="check a family on all-but-one cuts")
    p.add_argument("family", help="family JSON path")
    p.add_argument("--cut", default="all", help='cut index or "all" (default)')
    p.add_argument("--tol", type=float, default=1e-9, help="rank / identity tolerance")
    p.add_argument("--combinatorial-only", action="store_true",
                   help="skip the numerical oracle")
    p.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")
    p.add_argument("--out", help="write the full JSON report here")

    p = sub.add_parser("tables", help="regenerate the size comparison tables")
    p.add_argument("--format", dest="fmt", choices=["text", "csv", "json"],
                   default="text")
    p.add_argument("--out", help="directory to write one file per table")
    p.add_argument("--diagonal", type=int, default=None,
                   help="also emit the diagonal-home grid for this d")

    p = sub.add_parser("export", help="rewrite a family JSON in canonical form")
    p.add_argument("family", help="family JSON path")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("import", help="validate a family JSON and summarize it")
    p.add_argument("family", help="family JSON path")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("d", "n", "xi", "cut", "tol", "fmt", "out", "states_out", "diagonal"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "family"):
        cfg.family_path = args.family
    if getattr(args, "combinatorial_only", False):
        cfg.combinatorial_only = True
    cfg.enum_cap, cfg.op_cap = caps.resolve_caps()
    return cfg


def cmd_construct(cfg: RunConfig) -> int:
    from .lattice import build_modified_family

    fam = build_modified_family(cfg.d, cfg.n, xi=cfg.xi, cap=cfg.enum_cap)
    doc = family_to_json(fam)
    if cfg.out:
        Path(cfg.out).write_text(dumps_canonical(doc))
    if cfg.states_out:
        Path(cfg.states_out).write_text(
            dumps_canonical(states_to_json(family_states(fam.family))))
    summary = {
        "d": fam.d, "n": fam.n, "xi_prime": fam.xi, "case": fam.case,
        "labels": [str(l) for l in fam.labels], "size": fam.total_size(),
        "beyond_guarantee": fam.beyond_guarantee,
    }
    if cfg.fmt == "json":
        print(dumps_canonical(summary), end="")
    else:
        flag = "  [beyond the d >= 4 guarantee]" if fam.beyond_guarantee else ""
        print(f"built d={fam.d} n={fam.n} family: {fam.total_size()} tuples in "
              f"{len(fam.labels)} sets, case {fam.case}, xi'={fam.xi}{flag}")
        if not cfg.out:
            print(dumps_canonical(doc), end="")
    return 0


def _selected_cuts(cfg: RunConfig, n: int) -> list[int]:
    if cfg.cut == "all":
        return list(range(n))
    k = int(cfg.cut)
    if not 0 <= k < n:
        raise QnonlocError(f"cut {k} out of range for arity {n}")
    return [k]


def cmd_verify(cfg: RunConfig) -> int:
    fam = load_family(cfg.family_path)
    base = fam.family if isinstance(fam, ModifiedFamily) else fam
    cuts = _selected_cuts(cfg, len(base.radix))

    reports = verify_strongest_nonlocality(base, cuts=cuts, cap=cfg.enum_cap)
    doc: dict = {
        "family": cfg.family_path,
        "cuts": [cut_report_to_json(r) for r in reports],
        "symmetric": reports[0].symmetric if reports else None,
        "combinatorial_overall": overall_verdict(reports),
    }

    oracle_reports = None
    disagreements: list[str] = []
    if not cfg.combinatorial_only:
        state_sets = family_states(base)
        oracle_reports = oracle_verify(state_sets, cuts=cuts, tol=cfg.tol,
                                       operator_cap=cfg.op_cap)
        doc["oracle"] = [oracle_report_to_json(r) for r in oracle_reports]
        for comb, orc in zip(reports, oracle_reports):
            if comb.overall == "trivial" and orc.verdict != "trivial":
                disagreements.append(
                    f"cut {comb.k}: combinatorial trivial but oracle {orc.verdict}")
        doc["agreement"] = disagreements or "consistent"

    if cfg.out:
        Path(cfg.out).write_text(dumps_canonical(doc))
    if cfg.fmt == "json":
        print(dumps_canonical(doc), end="")
    else:
        for r in reports:
            conds = ", ".join(f"{l}:{v.condition.value}"
                              for l, v in r.conditions.items())
            print(f"cut {r.k}: [{conds}] pair_covering={r.pair_covering} "
                  f"connectivity={r.connectivity} -> {r.overall}")
        print(f"combinatorial overall: {doc['combinatorial_overall']} "
              f"(symmetric={doc['symmetric']})")
        if oracle_reports is not None:
            for r in oracle_reports:
                warn = " [sv gap warning]" if r.gap_warning else ""
                print(f"cut {r.k}: oracle D={r.D} rows={r.rows} "
                      f"dim={r.nullspace_dim} -> {r.verdict}{warn}")
            for msg in disagreements:
                print(f"DISAGREEMENT: {msg}")

    if disagreements:
        return 1
    if cfg.combinatorial_only:
        return 0
    return 0 if all(r.verdict == "trivial" for r in oracle_reports) else 1


def cmd_tables(cfg: RunConfig) -> int:
    tables = all_comparison_tables()
    out_dir = Path(cfg.out) if cfg.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    if cfg.fmt == "json":
        doc = {"comparison": [comparison_to_json(t) for t in tables]}
        if cfg.diagonal is not None:
            from .tables import diagonal_table
            doc["diagonal"] = {"d": cfg.diagonal,
                               "grid": diagonal_table(cfg.diagonal).tolist()}
        text = dumps_canonical(doc)
        if out_dir:
            (out_dir / "tables.json").write_text(text)
        else:
            print(text, end="")
        return 0

    render = render_comparison_csv if cfg.fmt == "csv" else render_comparison_text
    ext = "csv" if cfg.fmt == "csv" else "txt"
    for t in tables:
        text = render(t)
        if out_dir:
            (out_dir / f"comparison_d{t.d}.{ext}").write_text(text)
        else:
            print(text)
    if cfg.diagonal is not None:
        text = (render_diagonal_csv if cfg.fmt == "csv"
                else render_diagonal_text)(cfg.diagonal)
        if out_dir:
            (out_dir / f"diagonal_d{cfg.diagonal}.{ext}").write_text(text)
        else:
            print(text)
    return 0


def cmd_export(cfg: RunConfig) -> int:
    fam = load_family(cfg.family_path)
    text = dumps_canonical(family_to_json(fam))
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        print(text, end="")
    return 0


def cmd_import(cfg: RunConfig) -> int:
    fam = load_family(cfg.family_path)
    base = fam.family if isinstance(fam, ModifiedFamily) else fam
    kind = "modified" if isinstance(fam, ModifiedFamily) else "plain"
    print(f"valid {kind} family: radix={base.radix} "
          f"labels={[str(l) for l in base.labels]} size={base.total_size()}")
    return 0


_DISPATCH = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "tables": cmd_tables,
    "export": cmd_export,
    "import": cmd_import,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        return _DISPATCH[cfg.command](cfg)
    except QnonlocError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1 if cfg.command == "import" else 2
    except (ValueError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
