"""Command-line front end; every machine-readable result is CSV on stdout.

Exit codes: 0 success, 1 validation mismatch, 2 usage/parse error,
3 convergence failure.
"""
import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .critical import DELTA_CEILING, MIN_TOL, NoUpperBracketError, find_critical_screening
from .golden import TABLE_IDS, GoldenFileError, compare_entry, load_golden
from .potentials import ECSC, GESC, PotentialParseError, format_potential, parse_potential, with_screening
from .spectrum import NotConvergedError, SolverConfig, converge_state, parse_state, state_label, truncate_decimal

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_NOT_CONVERGED = 0, 1, 2, 3
PARAM_DECIMALS = 8
DIFF_DECIMALS = 15


class UsageError(Exception):
    pass


def _config(args):
    return SolverConfig(N=args.N, alpha=args.alpha, r_max=args.r_max)


def _split_potential(spec):
    family, _, params = format_potential(spec).partition(":")
    # ';' keeps the CSV free of embedded commas
    return family, params.replace(",", ";")


def _write(out, rows):
    for row in rows:
        out.write(",".join(str(c) for c in row) + "\n")


def _parse_pot(text):
    try:
        return parse_potential(text)
    except PotentialParseError as exc:
        raise UsageError(str(exc)) from None


def cmd_solve(args, out):
    spec = _parse_pot(args.pot)
    if args.n <= args.l or args.l < 0:
        raise UsageError("need n > l >= 0")
    state = converge_state(spec, args.n, args.l, _config(args))
    family, params = _split_potential(spec)
    cfg = state.config_used
    _write(out, [
        ("potential", "params", "n", "l", "energy", "stable_digits", "N", "r_max"),
        (family, params, state.n, state.l, state.energy_string, state.stable_digits, cfg.N, f"{cfg.r_max:g}"),
    ])
    return EXIT_OK


def parse_states(states=None, levels=None):
    labels = []
    if states:
        for token in states.split(","):
            try:
                labels.append(parse_state(token))
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    if levels:
        for token in levels.split(","):
            if not token.strip().isdigit() or int(token) < 1:
                raise UsageError(f"bad level {token!r}")
            labels.extend((int(token), l) for l in range(min(int(token), 10)))
    if not labels:
        raise UsageError("no states requested")
    return labels


def _scan_point(task):
    spec, n, l, config = task
    try:
        return converge_state(spec, n, l, config).energy_string
    except NotConvergedError:
        return ""


def _map(fn, tasks, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


def cmd_scan(args, out):
    base = _parse_pot(args.pot if ":" in args.pot else args.pot + ":")
    if not isinstance(base, (ECSC, GESC)) and base.family != "yukawa":
        raise UsageError(f"{base.family} has no screening parameter to scan")
    if args.steps < 2:
        raise UsageError("steps must be >= 2")
    if not (0 <= args.start <= 2 and 0 <= args.stop <= 2):
        raise UsageError("scan range must lie within [0, 2]")
    states = parse_states(args.states, args.levels)
    config = _config(args)
    params = np.linspace(args.start, args.stop, args.steps)
    tasks = [(with_screening(base, float(p)), n, l, config) for p in params for n, l in states]
    energies = _map(_scan_point, tasks, args.jobs)
    rows = [("param", "state", "energy")]
    it = iter(energies)
    for p in params:
        for n, l in states:
            rows.append((f"{p:.{PARAM_DECIMALS}f}", state_label(n, l), next(it)))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            _write(fh, rows)
    else:
        _write(out, rows)
    return EXIT_OK


def _table_row(task):
    entry, config = task
    try:
        return compare_entry(entry, config)
    except NotConvergedError:
        return None


def cmd_table(args, out):
    try:
        entries = load_golden(args.golden)
    except GoldenFileError as exc:
        raise UsageError(str(exc)) from None
    if args.table_id != "all":
        entries = [e for e in entries if e.table_id == args.table_id]
    if not entries:
        raise UsageError(f"no golden entries for {args.table_id}")
    results = _map(_table_row, [(e, _config(args)) for e in entries], args.jobs)

    rows = [("state", "param", "golden", "computed", "abs_diff", "matched_digits")]
    failed = False
    diffs, matched = [], []
    for entry, res in zip(entries, results):
        golden = "-" + entry.energy_string
        if res is None:
            failed = True
            rows.append((entry.state, entry.param, golden, "", "", 0))
            matched.append(0)
            continue
        failed |= not res.ok
        diffs.append(res.abs_diff)
        matched.append(res.matched_digits)
        computed = truncate_decimal(res.computed, res.stable_digits)
        rows.append((entry.state, entry.param, golden, computed, f"{res.abs_diff:.{DIFF_DECIMALS}f}", res.matched_digits))
    max_diff = f"{max(diffs):.{DIFF_DECIMALS}f}" if diffs else ""
    rows.append(("summary", "", "", "", max_diff, min(matched)))
    _write(out, rows)
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_critical(args, out):
    spec = _parse_pot(args.pot if ":" in args.pot else args.pot + ":")
    if isinstance(spec, GESC):
        raise UsageError("GESC stays bound for every b (its strong-screening limit is -a/r); "
                         "critical screening is only defined for ECSC")
    if not isinstance(spec, ECSC):
        raise UsageError("critical screening search supports the ecsc family only")
    if args.tol < MIN_TOL:
        raise UsageError(f"--tol must be >= {MIN_TOL}")
    if args.n <= args.l or args.l < 0:
        raise UsageError("need n > l >= 0")
    try:
        res = find_critical_screening(args.n, args.l, args.tol, A=spec.A, g=spec.g, base=_config(args))
    except NoUpperBracketError as exc:
        raise UsageError(f"{exc} (ceiling {DELTA_CEILING}); check the state label") from None
    _write(out, [
        ("n", "l", "delta_c", "bracket_width", "energy_at_lower"),
        (res.n, res.l, f"{res.delta_c:.{PARAM_DECIMALS}f}", f"{res.bracket_width:.{PARAM_DECIMALS}f}",
         truncate_decimal(res.energy_at_lower, 11)),
    ])
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="gpsscreen", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_flags(p):
        p.add_argument("--N", type=int, default=200, help="collocation order")
        p.add_argument("--alpha", type=float, default=25.0, help="map parameter alpha")
        p.add_argument("--r-max", dest="r_max", type=float, default=300.0, help="box radius (a.u.)")

    p = sub.add_parser("solve", help="converged energy of one state")
    p.add_argument("--pot", required=True, help='e.g. "ecsc:delta=0.1" or "gesc:b=20"')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    grid_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="energies over a screening-parameter range")
    p.add_argument("--pot", required=True, help='family or potential string, e.g. "ecsc" or "gesc:a=1"')
    p.add_argument("--states", help="comma-separated labels, e.g. 7s,7p,10d")
    p.add_argument("--levels", help="comma-separated n values; expands to every l < n")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.add_argument("--jobs", type=int, default=1)
    grid_flags(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("table", help="compare against a reference table")
    p.add_argument("table_id", choices=TABLE_IDS + ("all",))
    p.add_argument("--golden", help="golden CSV (default: bundled tables)")
    p.add_argument("--jobs", type=int, default=1)
    grid_flags(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("critical", help="critical ECSC screening of a state")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--pot", default="ecsc", help="ecsc family (A and g may be set)")
    grid_flags(p)
    p.set_defaults(func=cmd_critical)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"gpsscreen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotConvergedError as exc:
        print(f"gpsscreen: not converged: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except ValueError as exc:
        print(f"gpsscreen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
