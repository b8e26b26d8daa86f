"""Command-line interface: ``helix-lab {eval,sweep,poles,contour,solve,verify}``.

Every data command writes a result envelope (tool version, echoed config, UTC
timestamp, rows) as CSV with ``#`` header comments, or as JSON. Exit codes:
0 success, 1 verification failure, 2 invalid configuration, 3 computation
error.
"""

import argparse
import json
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone

import numpy as np

from . import __version__, acceptance, cplane
from .cplane import Family, MeroParams
from .energy import HelixPair, eval_gradient_at_origins, eval_M, eval_screwdiff, eval_screwsum
from .errors import HelixLabError, NoBracket, PreconditionError
from .quadrature import default_spec
from .stationary import (
    ASSERT_OMEGA_MIN,
    SCAN_EPS,
    ScrewProblem,
    SweepRow,
    SweepTable,
    solve_symmetric_screw,
    stationarity_g,
    trend_verdict,
)

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_COMPUTE = 0, 1, 2, 3
FUNCTIONALS = ("M", "screwsum", "screwdiff", "gradient")


class ConfigError(PreconditionError):
    pass


@dataclass
class ResultEnvelope:
    command: str
    config: dict
    columns: list
    rows: list
    summary: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)  # extra named tables: name -> (columns, rows)
    version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))


# ---------------------------------------------------------------------------
# serialization


def fmt_value(x):
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    return x


def _csv_table(columns, rows):
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(fmt_value(r[c]) for c in columns))
    return lines


def to_csv(env):
    lines = [
        f"# helix-lab {env.version}",
        f"# command: {env.command}",
        f"# config: {json.dumps(env.config, sort_keys=True)}",
        f"# timestamp: {env.timestamp}",
    ]
    for k, v in env.summary.items():
        lines.append(f"# {k}: {v}")
    lines += _csv_table(env.columns, env.rows)
    for name, (cols, rows) in env.tables.items():
        lines += ["", f"# table: {name}"] + _csv_table(cols, rows)
    return "\n".join(lines) + "\n"


def to_json(env):
    def table(cols, rows):
        return [{c: _json_value(r[c]) for c in cols} for r in rows]

    doc = {
        "version": env.version,
        "command": env.command,
        "config": env.config,
        "timestamp": env.timestamp,
        "summary": env.summary,
        "columns": env.columns,
        "rows": table(env.columns, env.rows),
    }
    for name, (cols, rows) in env.tables.items():
        doc[name] = table(cols, rows)
    return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"


def write_envelope(env, fmt, out):
    text = to_json(env) if fmt == "json" else to_csv(env)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# argument parsing helpers


def float_list(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from exc
    return vals


def index_list(text):
    """Indices such as '1..6', '-3..-1,2' or '0'."""
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        try:
            if ".." in tok:
                a, b = tok.split("..", 1)
                a, b = int(a), int(b)
                step = 1 if b >= a else -1
                out.extend(range(a, b + step, step))
            else:
                out.append(int(tok))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc
    return out


def resolve_threads(value):
    if value is None:
        env = os.environ.get("HELIX_LAB_THREADS")
        if env is None or env == "":
            return 1
        try:
            value = int(env)
        except ValueError as exc:
            raise ConfigError(f"HELIX_LAB_THREADS must be an integer >= 1, got {env!r}") from exc
    if value < 1:
        raise ConfigError(f"threads must be >= 1, got {value}")
    return value


def _map(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _require(cond, message):
    if not cond:
        raise ConfigError(message)


def _spec(args, *radii):
    spec = default_spec(*radii)
    if args.tol is not None:
        _require(args.tol > 0, f"--tol must be > 0, got {args.tol}")
        spec = replace(spec, target_tol=args.tol)
    return spec


def _config(args):
    skip = {"func", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args):
    funcs = [f.strip() for f in args.functional.split(",") if f.strip()]
    _require(funcs, "--functional needs at least one name")
    for f in funcs:
        _require(f in FUNCTIONALS, f"unknown functional {f!r}; choose from {', '.join(FUNCTIONALS)}")
    _require(args.omega > 0, f"omega must be > 0, got {args.omega}")
    if "M" in funcs:
        _require(args.B != 0, "B != 0 is required: B = 0 collapses the helix onto its axis")
    pair = None
    if any(f != "M" for f in funcs):
        _require(args.A is not None, "--A is required for screwsum, screwdiff and gradient")
        pair = HelixPair(args.A, args.B, args.omega)
        _require(args.A != args.B, f"A != B is required: A = B = {args.A} gives coincident helices")
    rows = []
    for f in funcs:
        spec = _spec(args, args.B, args.A or 0.0)
        if f == "M":
            r = eval_M(args.B, args.omega, spec)
            rows.append(_eval_row("M", -args.B, args, r.value, r.error_bound, r.converged))
        elif f == "screwsum":
            r = eval_screwsum(pair, spec)
            rows.append(_eval_row(f, args.A, args, r.value, r.error_bound, r.converged))
        elif f == "screwdiff":
            r = eval_screwdiff(pair, spec)
            rows.append(_eval_row(f, args.A, args, r.value, r.error_bound, r.converged))
        else:
            g = eval_gradient_at_origins(pair, spec)
            for which, vec, errs in (("g1", g.g1, g.error_bounds[0]), ("g2", g.g2, g.error_bounds[1])):
                for axis, v, e in zip("xyz", vec, errs):
                    rows.append(_eval_row(f"{which}_{axis}", args.A, args, v, e, e <= spec.target_tol))
    cols = ["functional", "A", "B", "omega", "value", "error_bound", "converged"]
    return ResultEnvelope("eval", _config(args), cols, rows)


def _eval_row(name, A, args, value, err, converged):
    return {"functional": name, "A": A, "B": args.B, "omega": args.omega,
            "value": value, "error_bound": err, "converged": bool(converged)}


def cmd_sweep(args):
    omegas = args.omega or []
    _require(omegas, "the omega grid is empty")
    _require(all(w > 0 for w in omegas), "every omega must be > 0")
    if args.functional == "g":
        _require(args.alpha is not None and args.beta is not None, "--alpha and --beta are required for g")
        if args.B_grid is not None:
            _require(args.B_grid >= 2, "--B-grid needs at least 2 points")
            Bs = [float(b) for b in np.geomspace(SCAN_EPS, 1 - SCAN_EPS, args.B_grid)]
        else:
            Bs = args.B or []
        _require(Bs, "the B grid is empty")
        _require(all(b > 0 for b in Bs), "every B must be > 0 for g")
        for w in omegas:
            ScrewProblem(w, args.alpha, args.beta)
    else:
        Bs = args.B or []
        _require(Bs, "the B grid is empty")
        _require(all(b != 0 for b in Bs), "B != 0 is required for every grid value")
    threads = resolve_threads(args.threads)
    tasks = [(B, w) for B in Bs for w in omegas]

    def work(task):
        B, w = task
        spec = _spec(args, B)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            if args.functional == "g":
                v, e = stationarity_g(B, ScrewProblem(w, args.alpha, args.beta), spec)
                return SweepRow(w, B, v, e, "g")
            r = eval_M(B, w, spec)
            return SweepRow(w, B, r.value, r.error_bound, "M")

    table = SweepTable(_map(work, tasks, threads))
    rows = table.records()
    cols = list(SweepTable.columns)
    summary = {}
    if args.trend_check:
        verdicts = {}
        for B in sorted(set(Bs)):
            _, v, e = table.column(B, args.functional)
            verdicts[B] = trend_verdict(v, e) if len(v) > 1 else "none"
        for r in rows:
            r["verdict"] = verdicts[r["B"]]
        cols.append("verdict")
        summary["verdicts"] = ",".join(f"{fmt_value(B)}:{verdicts[B]}" for B in sorted(verdicts))
    return ResultEnvelope("sweep", _config(args), cols, rows, summary)


POLE_COLUMNS = ["family", "n", "omega", "B", "seed_re", "seed_im", "refined_re", "refined_im",
                "residual", "residue_re", "residue_im", "converged"]


def _families(name):
    return list(Family) if name == "both" else [Family(name)]


def cmd_poles(args):
    _require(args.B != 0, "B != 0 is required")
    fams = _families(args.family)
    if args.ratio_sweep:
        return _ratio_sweep(args, fams)
    _require(args.omega is not None and args.omega > 0, "--omega must be given and > 0")
    p = MeroParams(args.B, args.omega)
    _require(p.coupling > 0, f"omega*B > 0 is required, got {p.coupling}")
    indices = args.n if args.n is not None else list(range(1, 7))
    for fam in fams:
        if fam is Family.MINUS:
            _require(0 not in indices or len(fams) > 1, "index 0 exists only for the plus family")
    rows = []
    cols = list(POLE_COLUMNS)
    if args.count_check:
        cols.append("count")
    for fam in fams:
        idx = [n for n in indices if n != 0 or fam is Family.PLUS]
        for n, side, seed in cplane.approx_poles(fam, idx, p):
            try:
                rec = cplane.refine_pole(seed, fam, p, index=n, side=side)
                row = rec.as_row(p)
                row["converged"] = rec.converged
            except HelixLabError as exc:
                print(f"warning: {fam.value} n={n}: {exc}", file=sys.stderr)
                row = _failed_pole_row(fam, n, side, seed, p)
            if args.count_check:
                lo, _ = cplane.designated_strip(fam, n, side)
                rect = cplane.strip_rectangle(round(lo / math.pi), p)
                try:
                    row["count"] = cplane.count_zeros_argument_principle(rect, fam, p)
                except HelixLabError as exc:
                    print(f"warning: count for {fam.value} n={n}: {exc}", file=sys.stderr)
                    row["count"] = -1
            rows.append(row)
    tables = {}
    if args.branches:
        brows = []
        for fam in fams:
            idx = [n for n in indices if n != 0 or fam is Family.PLUS]
            for n, side in cplane.pole_indices(fam, idx):
                lo, _ = cplane.designated_strip(fam, n, side)
                curves = _branch_curves(round(lo / math.pi), p, args.samples)
                label = f"{fam.value}:{'+0' if (n, side) == (0, 1) else '-0' if n == 0 else n}"
                for x, y in zip(curves.sine_x, curves.sine_y):
                    brows.append({"pole": label, "curve": "S", "x": x, "y": y})
                for x, y in zip(curves.cosine_x, curves.cosine_y):
                    brows.append({"pole": label, "curve": "C", "x": x, "y": y})
        tables["branches"] = (["pole", "curve", "x", "y"], brows)
    return ResultEnvelope("poles", _config(args), cols, rows, tables=tables)


def _branch_curves(k, p, samples):
    """Branch curves over the strip (k pi, (k+1) pi)."""
    if k >= 0:
        return cplane.emit_branch_curves(k, p, samples=samples)
    m = -(k + 1)
    if m > 0:
        return cplane.emit_branch_curves(-m, p, samples=samples)
    c = cplane.emit_branch_curves(0, p, samples=samples)
    return replace(c, strip=(-math.pi, 0.0), sine_x=-c.sine_x, cosine_x=-c.cosine_x)


def _failed_pole_row(fam, n, side, seed, p):
    label = ("+0" if side > 0 else "-0") if n == 0 else str(n)
    nan = math.nan
    return {"family": fam.value, "n": label, "omega": p.omega, "B": p.B,
            "seed_re": seed.real, "seed_im": seed.imag, "refined_re": nan, "refined_im": nan,
            "residual": nan, "residue_re": nan, "residue_im": nan, "converged": False}


def _ratio_sweep(args, fams):
    omegas = args.ratio_sweep
    _require(omegas and all(w > 0 for w in omegas), "--ratio-sweep needs positive omegas")
    indices = args.n if args.n is not None else [1]
    rows = []
    for fam in fams:
        for n, side in cplane.pole_indices(fam, indices):
            ratios = cplane.pole_asymptotics_ratio(fam, n, omegas, args.B, side=side)
            label = ("+0" if side > 0 else "-0") if n == 0 else str(n)
            for w, r in zip(omegas, ratios):
                rows.append({"family": fam.value, "n": label, "omega": w, "B": args.B,
                             "ratio_re": r.real, "ratio_im": r.imag, "deviation": abs(r - 1)})
    cols = ["family", "n", "omega", "B", "ratio_re", "ratio_im", "deviation"]
    return ResultEnvelope("poles", _config(args), cols, rows)


def cmd_contour(args):
    _require(args.B != 0, "B != 0 is required")
    _require(args.omega > 0, "omega must be > 0")
    p = MeroParams(args.B, args.omega)
    if args.R.strip() == "auto":
        targets = args.R_target
        _require(targets and all(t > 0 for t in targets), "--R-target values must be > 0")
        radii = [cplane.auto_radius(t, p) for t in targets]
    else:
        radii = float_list(args.R)
        _require(radii and all(r > 0 for r in radii), "R values must be > 0")
    rows = []
    for R in radii:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            chk = cplane.eta_contour_check(R, p)
        row = {"R": R, "n_poles": chk.n_poles,
               "integral_re": chk.contour.total.real, "integral_im": chk.contour.total.imag,
               "residues_re": chk.residue_total.real, "residues_im": chk.residue_total.imag,
               "mismatch": chk.mismatch, "relative_mismatch": chk.relative_mismatch}
        for k, s in enumerate(chk.contour.sides, start=1):
            row[f"eta{k}_re"] = s.real
            row[f"eta{k}_im"] = s.imag
        row["side_sum_abs"] = abs(chk.side_pair_sum)
        row["side_sum_over_length"] = abs(chk.side_pair_sum) / R
        row["eta3_abs"] = abs(chk.contour.sides[2])
        rows.append(row)
    cols = list(rows[0]) if rows else []
    return ResultEnvelope("contour", _config(args), cols, rows)


SOLVE_COLUMNS = ["omega", "alpha", "beta", "B_star", "residual", "error_bound", "bracket_lo",
                 "bracket_hi", "iters", "converged", "n_brackets", "status"]


def solve_verdict(rows):
    """'yes' when converged roots for omega >= 10 increase strictly and stay below 1/2."""
    sel = [r for r in sorted(rows, key=lambda r: r["omega"]) if r["omega"] >= ASSERT_OMEGA_MIN]
    if len(sel) < 2:
        return "n/a"
    if not all(r["status"] == "ok" and r["converged"] for r in sel):
        return "no"
    Bs = [r["B_star"] for r in sel]
    return "yes" if all(0 < b < 0.5 for b in Bs) and all(b > a for a, b in zip(Bs, Bs[1:])) else "no"


def cmd_solve(args):
    omegas = args.omega or []
    _require(omegas, "the omega grid is empty")
    _require(args.alpha > 0, f"alpha > 0 is required (no Mobius term to balance), got {args.alpha}")
    probs = [ScrewProblem(w, args.alpha, args.beta) for w in omegas]
    root_tol = args.root_tol
    _require(root_tol > 0, "--root-tol must be > 0")
    threads = resolve_threads(args.threads)

    def work(prob):
        spec = _spec(args, 1.0)
        try:
            s = solve_symmetric_screw(prob, tol=root_tol, spec=spec)
        except NoBracket as exc:
            print(f"warning: omega={prob.omega}: {exc}", file=sys.stderr)
            nan = math.nan
            return {"omega": prob.omega, "alpha": prob.alpha, "beta": prob.beta, "B_star": nan,
                    "residual": nan, "error_bound": nan, "bracket_lo": nan, "bracket_hi": nan,
                    "iters": 0, "converged": False, "n_brackets": 0, "status": "no_bracket"}
        row = s.as_row(prob)
        row["status"] = "ambiguous" if s.ambiguous else "ok"
        return row

    rows = sorted(_map(work, probs, threads), key=lambda r: r["omega"])
    if all(r["status"] == "no_bracket" for r in rows):
        raise NoBracket("no omega in the grid produced a bracket")
    summary = {"monotone_increasing_below_half": solve_verdict(rows)}
    return ResultEnvelope("solve", _config(args), SOLVE_COLUMNS, rows, summary)


def cmd_verify(args):
    only = None
    if args.only:
        only = [t.strip() for t in args.only.split(",") if t.strip()]
        known = set(acceptance.GROUPS) | {str(c[0]) for c in acceptance.CRITERIA}
        bad = [t for t in only if t not in known]
        _require(not bad, f"unknown group or criterion {bad}; groups: {', '.join(acceptance.GROUPS)}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        outcomes = acceptance.run(only, echo=lambda line: print(line, flush=True))
    failed = [o for o in outcomes if not o.passed]
    if failed:
        names = ", ".join(f"{o.number} ({o.title})" for o in failed)
        print(f"FAILED: {names}")
        return EXIT_VERIFY
    print(f"all {len(outcomes)} criteria passed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=argparse.SUPPRESS)
    common.add_argument("--out", metavar="PATH", default=argparse.SUPPRESS)
    common.add_argument("--tol", type=float, metavar="REAL", default=argparse.SUPPRESS,
                        help="quadrature target tolerance (default 1e-10)")
    common.add_argument("--threads", type=int, metavar="N", default=argparse.SUPPRESS,
                        help="worker threads for grid commands (fallback: HELIX_LAB_THREADS)")

    ap = argparse.ArgumentParser(prog="helix-lab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"helix-lab {__version__}")
    ap.add_argument("--format", choices=("csv", "json"), default="csv")
    ap.add_argument("--out", metavar="PATH", default=None)
    ap.add_argument("--tol", type=float, metavar="REAL", default=None)
    ap.add_argument("--threads", type=int, metavar="N", default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate gradient integrals")
    p.add_argument("--functional", default="M", help="comma list of " + ", ".join(FUNCTIONALS))
    p.add_argument("--A", type=float, default=None, help="radius of gamma_1 (default -B for M)")
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--omega", type=float, required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", parents=[common], help="M or g over (B, omega) grids")
    p.add_argument("--functional", choices=("M", "g"), default="M")
    p.add_argument("--B", type=float_list, default=None)
    p.add_argument("--B-grid", dest="B_grid", type=int, default=None,
                   help="geometric B grid on (1e-3, 1 - 1e-3) with this many points")
    p.add_argument("--omega", type=float_list, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--trend-check", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("poles", parents=[common], help="seed, refine and count poles")
    p.add_argument("--family", choices=("minus", "plus", "both"), default="both")
    p.add_argument("--n", type=index_list, default=None, help="indices, e.g. 1..6 or -2,0,3")
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--count-check", action="store_true")
    p.add_argument("--branches", action="store_true")
    p.add_argument("--samples", type=int, default=200, help="samples per branch curve")
    p.add_argument("--ratio-sweep", type=float_list, default=None, metavar="OMEGAS")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("contour", parents=[common], help="eta_R rectangle identity")
    p.add_argument("--R", default="auto", help="'auto' or a comma list of radii")
    p.add_argument("--R-target", dest="R_target", type=float_list, default=[500.0, 1000.0],
                   help="targets for --R auto (default 500,1000)")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("solve", parents=[common], help="stationary symmetric screws")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--omega", type=float_list, required=True)
    p.add_argument("--root-tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", default=None,
                   help="comma list of groups (" + ", ".join(acceptance.GROUPS) + ") or numbers")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.threads is not None:
            resolve_threads(args.threads)
        result = args.func(args)
        if isinstance(result, int):
            return result
        write_envelope(result, args.format, args.out)
        return EXIT_OK
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HelixLabError, ArithmeticError) as exc:
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
