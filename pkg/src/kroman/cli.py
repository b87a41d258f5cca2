"""Command-line interface: ``kroman <subcommand> ...``.

Exit codes: 0 success / valid, 1 semantically invalid (a labeling that is not
a [k]-RDF, a construction that failed), 2 usage or parse error, 3 resource
budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import bounds, construct, exact, render
from .errors import (
    ConstructionError,
    InvalidPackingError,
    MalformedLabelingError,
    ParameterDomainError,
    ResourceBudgetError,
    SoundnessError,
)
from .grid import Grid
from .verify import Labeling, check

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text: str) -> list[int]:
    """'4..20', '7', or a comma-separated union such as '1..2,12..27'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ".." in part:
                lo, hi = part.split("..", 1)
                a, b = int(lo), int(hi)
                if b < a:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
        except ValueError as exc:
            raise UsageError(f"bad range {part!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


def _emit(text: str | bytes, out: str | None) -> None:
    if out is None or out == "-":
        if isinstance(text, bytes):
            sys.stdout.buffer.write(text)
        else:
            sys.stdout.write(text)
        return
    path = Path(out)
    if isinstance(text, bytes):
        path.write_bytes(text)
    else:
        path.write_text(text)


def _figure_format(path: str) -> str:
    ext = Path(path).suffix.lower().lstrip(".")
    if ext not in ("svg", "png"):
        raise UsageError(f"figure path must end in .svg or .png, got {path!r}")
    return ext


def _read_labeling(path: str) -> Labeling:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return Labeling.from_json(text)


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"missing {' '.join(missing)}")


# --- subcommands --------------------------------------------------------------------------

def cmd_verify(args) -> int:
    L = _read_labeling(args.file)
    rep = check(L)
    if args.format == "json":
        doc = {"m": L.grid.m, "n": L.grid.n, "k": L.k, **rep.to_dict()}
        _emit(json.dumps(doc, indent=1) + "\n", args.out)
    else:
        lines = [
            f"C_{L.grid.m} x P_{L.grid.n}, k={L.k}: {'valid' if rep.valid else 'INVALID'}",
            f"weight {rep.weight}",
            f"min slack {'unconstrained' if rep.min_slack is None else rep.min_slack}",
            f"violations {len(rep.violations)}",
        ]
        lines += [f"  ({v.vertex.i},{v.vertex.j}) needs {v.required}, has {v.achieved}" for v in rep.violations]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if rep.valid else EXIT_INVALID


def build(family: str, m: int, n: int, k: int) -> Labeling:
    if family == "linear_c5":
        if m % 5:
            raise ParameterDomainError(f"linear_c5 needs m divisible by 5, got {m}")
        return construct.tile(construct.linear_c5(n, k), m // 5)
    if family == "linear_c9":
        if m % 9:
            raise ParameterDomainError(f"linear_c9 needs m divisible by 9, got {m}")
        return construct.tile(construct.linear_c9(n, k), m // 9)
    if family == "uniform":
        return construct.uniform_labeling(m, n, k, "base")
    if family == "uniform_slack":
        return construct.uniform_labeling(m, n, k, "slack")
    if family == "packing":
        if m == 9:
            S = construct.c9_packing_pattern(n)
        else:
            res = exact.exact_packing_number(m, n)
            S = construct.PackingSet(Grid(m, n), res.witness)
        return construct.packing_labeling(m, n, k, S)
    if family == "mod5":
        return construct.mod5_labeling(m, n, k)
    raise UsageError(f"unknown family {family!r}; choose from {', '.join(construct.FAMILIES)}")


def cmd_construct(args) -> int:
    m = args.m if args.m is not None else args.pm
    n = args.n if args.n is not None else args.pn
    k = args.k if args.k is not None else args.pk
    if None in (m, n, k):
        raise UsageError("construct needs m, n and k")
    L = build(args.family, m, n, k)
    if args.format == "ascii":
        _emit(render.render_ascii(L), args.out)
    elif args.format == "svg":
        _emit(render.labeling_figure(L, "svg"), args.out)
    else:
        _emit(json.dumps(L.to_dict()) + "\n", args.out)
    if args.render:
        path = args.render
        if path.endswith(".txt"):
            Path(path).write_text(render.render_ascii(L))
        else:
            Path(path).write_bytes(render.labeling_figure(L, _figure_format(path)))
    return EXIT_OK


def _bound_rows(m: int, n: int, k: int) -> list[bounds.BoundValue]:
    rows: list[bounds.BoundValue] = []
    if m == 9:
        rows += [bounds.bound_linear_c9(n, k), bounds.bound_uniform_c9(n, k), bounds.bound_packing_c9(n, k)]
    rows += bounds.linear_multiples(m, n, k)
    rows.append(bounds.bound_mod5(m, n, k))
    rows.append(bounds.bound_uniform_general(m, n, k))
    rho = None
    if n >= 4 and m * n <= exact.MAX_PACKING_VERTICES:
        rho = exact.exact_packing_number(m, n).value
    rows.append(bounds.bound_packing_general(m, n, k, rho))
    if k == 2:
        rows += [bounds.double_roman_multiple(r, m // r, n) for r in range(3, 10) if m % r == 0]
        rows.append(bounds.double_roman_mod5(m, n))
    return rows


def cmd_bound(args) -> int:
    _need(args, "m", "n", "k")
    out = ["m,n,k,family,value,applicable,reason"]
    for m in parse_range(args.m):
        for n in parse_range(args.n):
            for k in parse_range(args.k):
                for b in _bound_rows(m, n, k):
                    if args.family and not b.label.startswith(args.family):
                        continue
                    val = "" if b.value is None else str(b.value)
                    out.append(f"{m},{n},{k},{b.label},{val},{str(b.applicable).lower()},{b.reason}")
    if args.format == "json":
        keys = out[0].split(",")
        rows = [dict(zip(keys, line.split(",", len(keys) - 1))) for line in out[1:]]
        _emit(json.dumps(rows, indent=1) + "\n", args.out)
    else:
        _emit("\n".join(out) + "\n", args.out)
    return EXIT_OK


def _rho(m: int, n: int) -> int | None:
    if m * n > exact.MAX_PACKING_VERTICES:
        return None
    return exact.exact_packing_number(m, n).value


def cmd_region(args) -> int:
    if args.regime:
        _need(args, "k")
        regimes, bad = bounds.c9_regime_audit(parse_range(args.k), args.horizon)
        text = bounds.regime_csv(regimes)
        if bad:
            text += "# discrepancies: k,claimed,actual\n"
            text += "".join(f"# {d.k},{d.claimed},{d.actual or 'tie'}\n" for d in bad)
        _emit(text, args.out)
        return EXIT_OK
    _need(args, "m", "n", "k")
    m = int(args.m)
    ns, ks = parse_range(args.n), parse_range(args.k)
    fams = tuple(f.strip() for f in args.families.split(",") if f.strip())
    cells = bounds.region_table(m, ns, ks, fams, rho=_rho if m != 9 else None)
    if args.format == "ascii":
        _emit(render.region_ascii(cells), args.out)
    elif args.format == "svg":
        _emit(render.region_figure(cells, "svg", f"best bound, m={m}"), args.out)
    else:
        _emit(bounds.region_csv(cells), args.out)
    if args.chart:
        Path(args.chart).write_bytes(render.region_figure(cells, _figure_format(args.chart), f"best bound, m={m}"))
    return EXIT_OK


def cmd_compare_dr(args) -> int:
    _need(args, "m", "n")
    lines = ["m,n,multiple,best_r,residue,outcome,printed"]
    mismatches = 0
    for m in parse_range(args.m):
        for n in parse_range(args.n):
            r = bounds.compare_double_roman(m, n)
            printed = bounds.dr_printed_outcome(m, n)
            if printed is not None and printed != r.outcome:
                mismatches += 1
            mul = "" if r.multiple is None else str(r.multiple.value)
            best_r = "" if r.multiple is None else str(r.multiple.extra["r"])
            lines.append(
                f"{m},{n},{mul},{best_r},{r.residue.value},{r.outcome or ''},{printed or ''}"
            )
    text = "\n".join(lines) + "\n"
    if args.audit:
        text += f"# printed case list mismatches: {mismatches}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_exact(args) -> int:
    if args.what == "packing":
        if len(args.params) != 2:
            raise UsageError("exact packing needs M N")
        m, n = args.params
        res = exact.exact_packing_number(m, n)
        doc = {
            "kind": "rho",
            "m": m,
            "n": n,
            "value": res.value,
            "witness": sorted([list(v) for v in res.witness], key=lambda v: (v[1], v[0])),
        }
    else:
        if len(args.params) != 3:
            raise UsageError("exact gamma needs M N K")
        m, n, k = args.params
        if args.method == "brute":
            res = exact.brute_gamma(m, n, k)
        else:
            res = exact.exact_gamma(m, n, k, want_witness=bool(args.witness), budget_states=args.budget_states)
        doc = {
            "kind": "gamma",
            "m": m,
            "n": n,
            "k": k,
            "value": res.value,
            "method": res.method,
            "states": res.stats.states,
            "transitions": res.stats.transitions,
        }
        if args.witness and res.witness is not None:
            Path(args.witness).write_text(res.witness.to_json())
    _emit(json.dumps(doc) + "\n", args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    L = _read_labeling(args.file)
    if args.format == "ascii":
        _emit(render.render_ascii(L), args.out)
    else:
        _emit(render.labeling_figure(L, args.format), args.out)
    return EXIT_OK


# --- parser -----------------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kroman", description="[k]-Roman domination on cylindrical grids C_m x P_n")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="check a labeling JSON file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a labeling from one of the construction families")
    p.add_argument("family", nargs="?")
    p.add_argument("pm", nargs="?", type=int, metavar="M")
    p.add_argument("pn", nargs="?", type=int, metavar="N")
    p.add_argument("pk", nargs="?", type=int, metavar="K")
    p.add_argument("--family", dest="family_flag")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--format", choices=["json", "ascii", "svg"], default="json")
    p.add_argument("--render", help="also write a render (.svg, .png or .txt)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="evaluate closed-form bounds")
    p.add_argument("--m")
    p.add_argument("--n")
    p.add_argument("--k")
    p.add_argument("--family", help="only families whose label starts with this")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("region", help="best bound per (n, k) cell")
    p.add_argument("--m", default="9")
    p.add_argument("--n")
    p.add_argument("--k")
    p.add_argument("--families", default=",".join(bounds.DEFAULT_FAMILIES))
    p.add_argument("--format", choices=["csv", "ascii", "svg"], default="csv")
    p.add_argument("--chart", help="also write a hatched chart (.svg or .png)")
    p.add_argument("--regime", action="store_true", help="C_9 eventual winners and crossovers over the k range")
    p.add_argument("--horizon", type=int, default=10000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("compare-dr", help="double Roman: multiple-based against residue-class bound")
    p.add_argument("--m")
    p.add_argument("--n")
    p.add_argument("--audit", action="store_true", help="append the count of printed-case mismatches")
    p.add_argument("--out")
    p.set_defaults(func=cmd_compare_dr)

    p = sub.add_parser("exact", help="exact gamma (M N K) or packing number (M N)")
    p.add_argument("what", choices=["gamma", "packing"])
    p.add_argument("params", nargs="+", type=int)
    p.add_argument("--method", choices=["dp", "brute"], default="dp")
    p.add_argument("--budget-states", type=int, default=exact.DEFAULT_STATE_BUDGET)
    p.add_argument("--witness", help="write the optimal labeling here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("render", help="render a labeling JSON file")
    p.add_argument("file")
    p.add_argument("--format", choices=["ascii", "svg", "png"], default="ascii")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if args.cmd == "construct":
        if args.family_flag:
            args.family = args.family_flag
        if not args.family:
            ap.error("construct needs a family")
    if getattr(args, "budget_states", 1) < 1:
        ap.error("--budget-states must be positive")
    try:
        return args.func(args)
    except (UsageError, ParameterDomainError, MalformedLabelingError, InvalidPackingError, OSError) as exc:
        print(f"kroman: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceBudgetError as exc:
        print(f"kroman: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConstructionError, SoundnessError) as exc:
        print(f"kroman: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
