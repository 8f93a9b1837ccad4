"""Command-line interface: single-point evaluation, table reproduction,
extremal-constant reproduction, bound inspection, and Monte-Carlo checks.

Exit codes: 0 success, 1 numeric assertion failure, 2 usage error,
3 I/O error.  Output is deterministic for fixed flags (and fixed seed).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from rosenthal import asymptotics, reference
from rosenthal.config import RunConfig
from rosenthal.constants import constants_at, K_series, L_series, G_value, S_value
from rosenthal.errors import DomainError, InconsistencyError, RosenthalError
from rosenthal.extrema import reproduce_theorem1
from rosenthal.mc import mc_K, mc_L, mc_rosenthal_ratio
from rosenthal.special import SeriesValue

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_USAGE = 2
EXIT_IO = 3

CSV_HEADER = ["p", "K", "K_route", "L", "L_route", "S", "G",
              "paper_K", "paper_L", "dev_K", "dev_L"]

#: Per-constant acceptance tolerances for the extremal reproduction.
EXTREMA_TOLERANCES = {
    "C3": 5e-6, "C5": 5e-6, "C7": 1e-3,
    "C9": 1e-4, "C11": 1e-4, "C_even_h": 1e-3,
}


def _write_output(text: str, out_path: str | None) -> int:
    if out_path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(out_path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {out_path}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _fmt_value(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def cmd_eval(args) -> int:
    if args.p < 2.0:
        print("error: eval requires --p >= 2", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(tolerance=args.tol)
    vals = constants_at(args.p, cfg.tolerance)
    if args.format == "json":
        obj = {}
        for kind, cv in vals.items():
            entry = {"route": cv.route, "value": cv.as_float}
            if isinstance(cv.value, int):
                entry["exact"] = str(cv.value)
            if isinstance(cv.value, SeriesValue):
                entry["rel_error_bound"] = cv.value.rel_tail_bound
            obj[kind] = entry
        return _write_output(_json_dumps({"p": args.p, "constants": obj}),
                             args.out)
    lines = [f"p = {args.p:g}"]
    for kind in ("K", "L", "S", "G"):
        cv = vals[kind]
        if isinstance(cv.value, int):
            lines.append(f"  {kind} = {cv.value} ({cv.route}, exact)")
        elif isinstance(cv.value, SeriesValue):
            lines.append(f"  {kind} = {cv.as_float:.12g} ({cv.route}, "
                         f"rel err <= {cv.value.rel_tail_bound:.1e})")
        else:
            lines.append(f"  {kind} = {cv.as_float:.12g} ({cv.route})")
    return _write_output("\n".join(lines) + "\n", args.out)


def _table_row(p: float, tol: float | None) -> dict:
    vals = constants_at(p, tol)
    row = {
        "p": round(p, 9),
        "K": vals["K"].value if isinstance(vals["K"].value, int)
        else vals["K"].as_float,
        "K_route": vals["K"].route,
        "L": vals["L"].value if isinstance(vals["L"].value, int)
        else vals["L"].as_float,
        "L_route": vals["L"].route,
        "S": vals["S"].as_float,
        "G": vals["G"].as_float,
        "paper_K": None, "paper_L": None, "dev_K": None, "dev_L": None,
    }
    printed = reference.lookup(p)
    if printed is not None:
        pk, pl = printed
        row["paper_K"] = pk
        row["paper_L"] = pl
        row["dev_K"] = (float(row["K"]) - pk) / pk
        row["dev_L"] = (float(row["L"]) - pl) / pl
    return row


def _errata_for_rows(rows: list[dict]) -> list[str]:
    lines = []
    for row in rows:
        for quantity in ("K", "L"):
            dev = row[f"dev_{quantity}"]
            if dev is not None and abs(dev) > reference.TABLE_REL_TOL:
                finding = reference.ErrataFinding(
                    p=row["p"], quantity=quantity,
                    printed=row[f"paper_{quantity}"],
                    computed=float(row[quantity]))
                lines.append(finding.line())
    return lines


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(
                ["" if row[k] is None else _fmt_value(row[k])
                 for k in CSV_HEADER])
        return buf.getvalue()
    if fmt == "json":
        return _json_dumps(rows)
    widths = {"p": 6, "K": 16, "K_route": 13, "L": 16, "L_route": 13,
              "S": 10, "G": 10, "paper_K": 12, "paper_L": 12,
              "dev_K": 10, "dev_L": 10}
    def cell(k, v):
        if v is None:
            return " " * widths[k]
        if isinstance(v, str):
            return f"{v:<{widths[k]}}"
        if k in ("S", "G"):
            return f"{v:<{widths[k]}.6f}"
        if k.startswith("dev"):
            return f"{v:<+{widths[k]}.1e}"
        return f"{v:<{widths[k]}.10g}"
    head = " ".join(f"{k:<{widths[k]}}" for k in CSV_HEADER)
    body = "\n".join(" ".join(cell(k, row[k]) for k in CSV_HEADER)
                     for row in rows)
    return head + "\n" + body + "\n"


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_table(args) -> int:
    if args.p_min < 2.0 or not args.p_min < args.p_max or args.step <= 0:
        print("error: need 2 <= p-min < p-max and step > 0", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(tolerance=args.tol, threads=args.threads)
    n_rows = int(math.floor((args.p_max - args.p_min) / args.step + 1e-9)) + 1
    ps = [args.p_min + k * args.step for k in range(n_rows)]
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda p: _table_row(p, cfg.tolerance), ps))
    else:
        rows = [_table_row(p, cfg.tolerance) for p in ps]

    errata = _errata_for_rows(rows) + reference.standing_findings()
    for line in errata:
        print(line, file=sys.stderr)
    if args.out is not None:
        errata_path = args.out + ".errata.txt"
        try:
            with open(errata_path, "w") as fh:
                fh.write("\n".join(errata) + "\n")
        except OSError as exc:
            print(f"error: cannot write {errata_path}: {exc}", file=sys.stderr)
            return EXIT_IO
    return _write_output(render_table(rows, args.format), args.out)


def cmd_extrema(args) -> int:
    report = reproduce_theorem1()
    wanted = ("C5", "C_even_h") if args.even else tuple(
        e.name for e in report.entries)
    rows = []
    ok = True
    for e in report.entries:
        if e.name not in wanted:
            continue
        tol = EXTREMA_TOLERANCES[e.name]
        within = abs(e.deviation) <= tol
        ok = ok and within
        rows.append({
            "name": e.name, "computed": e.computed, "reference": e.reference,
            "deviation": e.deviation, "tolerance": tol,
            "argmax": e.argmax, "reference_argmax": e.reference_argmax,
            "bracket_halfwidth": e.report.bracket_halfwidth,
            "evaluations": e.report.evaluations,
            "boundary_hit": e.report.boundary_hit,
            "within_tolerance": within,
        })
    if args.format == "json":
        payload = {"entries": rows,
                   "sg_envelope_at_cut": report.sg_envelope_at_cut,
                   "sg_cut": report.sg_cut, "all_within_tolerance": ok}
        code = _write_output(_json_dumps(payload), args.out)
    else:
        lines = [f"{'name':<10} {'computed':<12} {'reference':<12} "
                 f"{'deviation':<12} {'argmax':<12} {'bracket':<10} verdict"]
        for r in rows:
            verdict = "ok" if r["within_tolerance"] else "DEVIATES"
            if r["boundary_hit"]:
                verdict += " (boundary)"
            lines.append(
                f"{r['name']:<10} {r['computed']:<12.6f} {r['reference']:<12g} "
                f"{r['deviation']:<+12.2e} {r['argmax']:<12.4f} "
                f"{r['bracket_halfwidth']:<10.2g} {verdict}")
        lines.append(f"S/g envelope at p={report.sg_cut:g}: "
                     f"{report.sg_envelope_at_cut:.4f} "
                     f"(below interior maximum, so the truncated sweep is safe)")
        code = _write_output("\n".join(lines) + "\n", args.out)
    if code != EXIT_OK:
        return code
    return EXIT_OK if ok else EXIT_NUMERIC


def cmd_bounds(args) -> int:
    if args.p < 16.0:
        print("error: bounds requires --p >= 16", file=sys.stderr)
        return EXIT_USAGE
    p = args.p
    try:
        b = asymptotics.bundle(p)
    except InconsistencyError as exc:
        print(f"bracket violated: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    log_l = L_series(p).log_value
    log_k = K_series(p).log_value
    g = b.g
    obj = {
        "p": p, "g": b.g, "h": b.h, "delta": b.delta, "Delta": b.Delta,
        "M": b.M, "N": b.N, "X": b.X, "Y": b.Y, "eps": b.eps,
        "eps_plus": b.eps_plus, "eps_minus": b.eps_minus,
        "M_plus": b.M_plus, "M_minus": b.M_minus,
        "N_plus": b.N_plus, "N_minus": b.N_minus,
        "log_L_series": log_l, "log_K_series": log_k,
        "L_lower": b.L_lower, "L_upper": b.L_upper,
        "K_lower": b.K_lower, "K_upper": b.K_upper,
        "G_over_g": math.exp(log_l / p) / g,
        "S_over_g": math.exp(log_k / p) / g,
    }
    verdicts = {}
    if b.L_asserted:
        holds = b.L_lower <= log_l <= b.L_upper
        verdicts["L"] = "holds" if holds else "VIOLATED"
    else:
        verdicts["L"] = "not asserted (below P_0)"
    if b.K_asserted:
        holds = b.K_lower <= log_k <= b.K_upper
        verdicts["K"] = "holds" if holds else "VIOLATED"
    else:
        verdicts["K"] = "not asserted (below P_1)"
    obj["verdicts"] = verdicts

    if args.format == "json":
        code = _write_output(_json_dumps(obj), args.out)
    else:
        lines = [f"asymptotic bundle at p = {p:g}"]
        for key in ("g", "h", "delta", "Delta", "M", "N", "X", "Y", "eps",
                    "eps_plus", "eps_minus", "M_plus", "M_minus",
                    "N_plus", "N_minus", "log_L_series", "log_K_series",
                    "L_lower", "L_upper", "K_lower", "K_upper",
                    "G_over_g", "S_over_g"):
            lines.append(f"  {key:<14} = {obj[key]:.10g}")
        for kind in ("L", "K"):
            lines.append(f"  sandwich {kind}: {verdicts[kind]}")
        code = _write_output("\n".join(lines) + "\n", args.out)
    if code != EXIT_OK:
        return code
    if "VIOLATED" in verdicts.values():
        print("bracket violated; both sides printed above", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_mc(args) -> int:
    if args.p > 12.0 or args.p < 2.0:
        print("error: mc supports 2 <= p <= 12", file=sys.stderr)
        return EXIT_USAGE
    if args.kind == "L":
        est = mc_L(args.p, args.n, args.seed)
        series = math.exp(L_series(args.p).log_value)
        label = "L"
    elif args.kind == "K":
        est = mc_K(args.p, args.n, args.seed)
        series = math.exp(K_series(args.p).log_value)
        label = "K"
    else:
        est = mc_rosenthal_ratio("centered-poisson", args.n_terms, args.p,
                                 args.n, args.seed)
        series = G_value(args.p) if args.p >= 4 else S_value(args.p)
        label = "ratio bound"
    z = (est.mean - series) / est.stderr if est.stderr > 0 else 0.0
    obj = {
        "kind": args.kind, "p": args.p, "n_samples": est.n_samples,
        "seed": est.seed, "generator": est.generator,
        "mean": est.mean, "stderr": est.stderr,
        "series_value": series, "z_score": z,
    }
    if args.format == "json":
        return _write_output(_json_dumps(obj), args.out)
    text = (f"mc {args.kind} at p={args.p:g}: mean={est.mean!r} "
            f"stderr={est.stderr!r}\n"
            f"{label} = {series!r}  z={z!r}\n"
            f"n={est.n_samples} seed={est.seed} generator={est.generator}\n")
    return _write_output(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rosenthal",
        description="Constants of the moment inequalities for sums of "
                    "independent centered/symmetric random variables: exact "
                    "values, tables, extremal constants, asymptotic bounds, "
                    "and Monte-Carlo validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, with_seed=False):
        sp.add_argument("--format", choices=["csv", "json", "text"],
                        default="text")
        sp.add_argument("--out", default=None, help="output path")
        sp.add_argument("--tol", type=float, default=None,
                        help="relative series tolerance")
        sp.add_argument("--threads", type=int, default=1)
        if with_seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("eval", help="constants at one exponent")
    sp.add_argument("--p", type=float, required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("table", help="table over an exponent range")
    sp.add_argument("--p-min", type=float, default=2.0)
    sp.add_argument("--p-max", type=float, default=21.0)
    sp.add_argument("--step", type=float, default=0.5)
    add_common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("extrema", help="reproduce the extremal constants")
    sp.add_argument("--even", action="store_true",
                    help="report only the even-restricted constants")
    add_common(sp)
    sp.set_defaults(func=cmd_extrema)

    sp = sub.add_parser("bounds", help="asymptotic bracket inspection")
    sp.add_argument("--p", type=float, required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("mc", help="Monte-Carlo validation")
    sp.add_argument("--kind", choices=["L", "K", "ratio"], required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--n", type=int, default=1_000_000)
    sp.add_argument("--n-terms", type=int, default=100)
    add_common(sp, with_seed=True)
    sp.set_defaults(func=cmd_mc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"numeric assertion failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except RosenthalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
