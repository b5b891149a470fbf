"""Command-line entry point: bounds, extremal instances, campaigns, tables."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from . import bounds, constructions, serialize, svg, verifier
from .plf import lower_envelope
from .polygon import polygon_intersection, polygon_union

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

KINDS = ("envelope", "union", "intersection")


class UsageError(Exception):
    pass


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --------------------------------------------------------------------------
# bound
# --------------------------------------------------------------------------

def _report_dict(rep: bounds.BoundReport) -> dict:
    return {"kind": rep.kind.value, "bound": rep.n_bound, "secondary_bound": rep.secondary_bound,
            "branch": rep.which_branch.value, "params": list(rep.params)}


def cmd_bound(args) -> int:
    kind = args.kind
    try:
        if kind.endswith("-free"):
            base = kind[:-len("-free")]
            grid = bounds.grid_maximize(base, args.n1, args.n2)
            result = {"kind": kind, "bound": grid.max_value,
                      "argmax": [list(p) for p in grid.argmax]}
            note = None
            if base == "envelope":
                result["closed_form"] = bounds.envelope_bound_free(args.n1, args.n2)
            elif base == "intersection":
                result["closed_form"] = bounds.intersection_bound_free(args.n1, args.n2)
            else:
                rep = bounds.union_free_report(args.n1, args.n2)
                result["floor_form"] = rep.floor_form
                result["ceil_form"] = rep.ceil_form
                result["matches"] = rep.matches
                if rep.floor_form != rep.ceil_form:
                    note = (f"note: 2n1+2n2-floor(|n2-n1|/2) = {rep.floor_form} overshoots; the grid "
                            f"maximum equals 2n1+2n2-ceil(|n2-n1|/2) = {rep.ceil_form}")
            if args.format == "json":
                _emit(json.dumps(result, indent=2) + "\n", args.out)
            else:
                lines = [str(grid.max_value),
                         "argmax (first, second): " + ", ".join(f"({a},{b})" for a, b in grid.argmax)]
                if note:
                    lines.append(note)
                _emit("\n".join(lines) + "\n", args.out)
            return EXIT_OK
        if kind == "intersection":
            if args.r1 is None or args.r2 is None:
                raise UsageError("intersection bounds take --r1 and --r2")
            rep = bounds.intersection_bound(args.n1, args.r1, args.n2, args.r2)
        else:
            if args.c1 is None or args.c2 is None:
                raise UsageError(f"{kind} bounds take --c1 and --c2")
            fn = bounds.envelope_bound if kind == "envelope" else bounds.union_bound
            rep = fn(args.n1, args.c1, args.n2, args.c2)
    except bounds.InvalidCensus as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        _emit(json.dumps(_report_dict(rep), indent=2) + "\n", args.out)
    else:
        _emit(f"{rep.n_bound}\nsecondary bound: {rep.secondary_bound}\n"
              f"active branch: {rep.which_branch.value}\n", args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# gen
# --------------------------------------------------------------------------

def _build(kind: str, args):
    if kind == "envelope":
        return constructions.build_envelope_extremal(args.c1, args.c2, args.r1, args.r2)
    if kind == "union":
        return constructions.build_union_extremal(args.c1, args.c2, args.r1, args.r2)
    return constructions.build_intersection_extremal(args.r1, args.r2, args.c1, args.c2)


def _figure(kind: str, a, b) -> str:
    if kind == "envelope":
        f0, dec = lower_envelope(a, b)
        return svg.render_envelope(a, b, f0, dec.breakpoints)
    res = (polygon_union if kind == "union" else polygon_intersection)(a, b)
    bps = [p for d in res.decompositions for p in d.breakpoints]
    return svg.render_polygons(a, b, res.components, bps)


def cmd_gen(args) -> int:
    for name in ("c1", "c2", "r1", "r2"):
        if getattr(args, name) is None:
            raise UsageError(f"gen {args.kind} needs --{name}")
    a, b, trace = _build(args.kind, args)
    doc = serialize.dump_instance(args.kind, a, b, trace)
    if args.format == "svg":
        _emit(_figure(args.kind, a, b), args.out)
    elif args.out:
        serialize.write_json(args.out, doc)
    else:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    if args.svg:
        _emit(_figure(args.kind, a, b), args.svg)
    if args.out or args.svg:
        print(f"{args.kind}: n0 = {trace.expected_n0}, secondary = {trace.expected_secondary}",
              file=sys.stderr)
    return EXIT_OK


# --------------------------------------------------------------------------
# verify
# --------------------------------------------------------------------------

def _csv_header(kind: str) -> List[str]:
    if kind == "intersection":
        return ["trial", "seed", "n1", "r1", "n2", "r2", "n0", "bound", "slack", "status"]
    return ["trial", "seed", "n1", "c1", "n2", "c2", "n0", "bound", "slack", "status"]


def _csv_row(kind: str, rep: verifier.InstanceReport) -> list:
    c1, c2 = rep.inputs
    second = (lambda c: c.r) if kind == "intersection" else (lambda c: c.c)
    status = rep.status.value if rep.reason is None or rep.status is verifier.ReportStatus.OK \
        else f"{rep.status.value}:{rep.reason}"
    n0 = rep.output.n if rep.output is not None else ""
    return [rep.trial, rep.seed, c1.n, second(c1), c2.n, second(c2), n0,
            "" if rep.bound is None else rep.bound, "" if rep.slack is None else rep.slack, status]


def _verify_file(args) -> int:
    kind, a, b = serialize.load_instance(serialize.read_json(args.from_path))
    if kind == "envelope":
        reports = [verifier.check_envelope_instance(a, b, seed=args.seed)]
    elif kind == "union":
        reports = [verifier.check_union_instance(a, b, seed=args.seed)]
    else:
        reports = verifier.check_intersection_instance(a, b, seed=args.seed)
    rows = []
    for i, rep in enumerate(reports):
        rep.trial = i
        rows.append({"component": i, "status": rep.status.value, "reason": rep.reason,
                     "n0": rep.output.n if rep.output else None, "bound": rep.bound,
                     "slack": rep.slack, "failed_checks": rep.failed_checks})
    if args.format == "json":
        _emit(json.dumps({"kind": kind, "reports": rows}, indent=2) + "\n", args.out)
    else:
        lines = [f"{kind}: {len(reports)} report(s)"]
        for r in rows:
            lines.append(f"  [{r['component']}] {r['status']} n0={r['n0']} bound={r['bound']} "
                         f"slack={r['slack']}" + (f" ({r['reason']})" if r["reason"] else ""))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if any(r.status is verifier.ReportStatus.VIOLATION for r in reports) else EXIT_OK


def cmd_verify(args) -> int:
    if args.from_path:
        return _verify_file(args)
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    n_max = args.max if args.max is not None else (8 if args.kind == "envelope" else 10)
    config = verifier.CampaignConfig(args.kind, args.trials, seed=args.seed, n_max=n_max,
                                     workers=args.workers, extremal_every=args.extremal_every)
    summary = verifier.run_campaign(config)
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(_csv_header(args.kind))
            for rep in summary.reports:
                writer.writerow(_csv_row(args.kind, rep))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(_csv_header(args.kind))
        for rep in summary.reports:
            writer.writerow(_csv_row(args.kind, rep))
        _emit(buf.getvalue(), args.out)
    elif args.format == "json":
        _emit(json.dumps(summary.to_dict(), indent=2) + "\n", args.out)
    else:
        d = summary.to_dict()
        lines = [f"{args.kind}: {d['trials']} trials, {d['ok']} ok, {d['skipped']} skipped, "
                 f"{d['violations']} violations",
                 f"min slack {d['min_slack']} (trials {d['min_slack_witnesses']})",
                 "slack histogram: " + " ".join(f"{k}:{v}" for k, v in d["slack_histogram"].items())]
        if d["skip_reasons"]:
            lines.append("skipped: " + ", ".join(f"{k}={v}" for k, v in d["skip_reasons"].items()))
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if summary.violations else EXIT_OK


# --------------------------------------------------------------------------
# table
# --------------------------------------------------------------------------

def _table_grid(kind: str, top: int, aux: int):
    if kind == "envelope":
        for c1 in range(top + 1):
            for c2 in range(c1, top + 1):
                for r1 in range(aux + 1):
                    for r2 in range(aux + 1):
                        yield {"c1": c1, "c2": c2, "r1": r1, "r2": r2}
    elif kind == "union":
        for c1 in range(3, top + 1):
            for c2 in range(c1, top + 1):
                for r1 in range(aux + 1):
                    for r2 in range(aux + 1):
                        yield {"c1": c1, "c2": c2, "r1": r1, "r2": r2}
    else:
        for r1 in range(top + 1):
            for r2 in range(r1, top + 1):
                for c1 in range(3, aux + 1):
                    for c2 in range(3, aux + 1):
                        yield {"r1": r1, "r2": r2, "c1": c1, "c2": c2}


def tightness_row(kind: str, params: dict) -> dict:
    """Build the extremal instance for ``params`` and measure it with the
    checker; ``achieved`` is the checker's n0."""
    ns = argparse.Namespace(**params)
    a, b, trace = _build(kind, ns)
    if kind == "envelope":
        reps = [verifier.check_envelope_instance(a, b)]
    elif kind == "union":
        reps = [verifier.check_union_instance(a, b)]
    else:
        reps = verifier.check_intersection_instance(a, b)
    achieved = max((r.output.n for r in reps if r.output is not None), default=None)
    ok = (len(reps) == 1 and reps[0].status is verifier.ReportStatus.OK
          and achieved == trace.expected_n0)
    return dict(params, bound=trace.expected_n0, achieved=achieved, ok=ok,
                case=trace.auxiliary.get("case", ""))


def cmd_table(args) -> int:
    top = args.max if args.max is not None else (4 if args.kind != "union" else 5)
    aux = args.aux_max if args.aux_max is not None else (6 if args.kind == "intersection" else 3)
    rows = []
    for params in _table_grid(args.kind, top, aux):
        try:
            rows.append(tightness_row(args.kind, params))
        except constructions.InfeasibleParams as exc:
            rows.append(dict(params, bound=None, achieved=None, ok=False, case=str(exc)))
    keys = list(rows[0].keys()) if rows else []
    if args.format == "json":
        _emit(json.dumps(rows, indent=2) + "\n", args.out)
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        writer.writerows(rows)
        _emit(buf.getvalue(), args.out)
    else:
        lines = [" ".join(f"{k:>8}" for k in keys)]
        for r in rows:
            lines.append(" ".join(f"{str(r[k]):>8}" for k in keys))
        bad = sum(not r["ok"] for r in rows)
        lines.append(f"{len(rows)} rows, {len(rows) - bad} tight, {bad} mismatched")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_FAIL if any(not r["ok"] for r in rows) else EXIT_OK


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="campaign or sampling seed")
    common.add_argument("--format", choices=("json", "table", "csv", "svg"), default="table")
    common.add_argument("-o", "--out", help="write the main output here instead of stdout")
    common.add_argument("--svg", help="also write an SVG figure to this path")

    parser = argparse.ArgumentParser(prog="pwlgeom", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="evaluate a vertex bound")
    p.add_argument("kind", choices=KINDS + tuple(f"{k}-free" for k in KINDS))
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    for name in ("c1", "c2", "r1", "r2"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gen", parents=[common], help="write an extremal instance")
    p.add_argument("kind", choices=KINDS)
    for name in ("c1", "c2", "r1", "r2"):
        p.add_argument(f"--{name}", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", parents=[common], help="run a checking campaign")
    p.add_argument("kind", choices=KINDS, nargs="?")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max", type=int, help="largest input vertex count")
    p.add_argument("--csv", help="per-trial CSV report")
    p.add_argument("--from", dest="from_path", help="check an instance file instead")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--extremal-every", type=int, default=0,
                   help="replace every k-th trial by an extremal construction")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", parents=[common], help="tightness table over a parameter grid")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--max", type=int, help="largest primary count (c for envelope/union, r for intersection)")
    p.add_argument("--aux-max", type=int, help="largest secondary count")
    p.set_defaults(func=cmd_table)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.kind and not args.from_path:
        parser.error("verify needs a kind or --from")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except constructions.InfeasibleParams as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, KeyError) as exc:
        if args.command == "verify" and args.from_path:
            print(f"bad instance file: {exc}", file=sys.stderr)
            return EXIT_IO
        raise


if __name__ == "__main__":
    sys.exit(main())
