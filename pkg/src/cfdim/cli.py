"""Command-line interface: ``cfdim <subcommand> [flags]``.

Every subcommand writes one document (CSV by default, or JSON) that embeds
the full run configuration. Exit codes: 0 success, 2 validation error,
3 solver or budget failure, 4 check-suite failure.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import math
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, cf, checks, cover, dimension, empirics, pressure
from .errors import BudgetExceeded, CfdimError, PrecisionExhausted, SolverError, ValidationError

SCHEMA_VERSION = 1
EXIT_OK, EXIT_VALIDATION, EXIT_SOLVER, EXIT_CHECK = 0, 2, 3, 4
# flags that change how a run executes or where it goes, never what it computes
_NOT_EMBEDDED = {"config", "output", "no_timestamp", "workers", "func"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_VALIDATION)


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def _nonneg_int(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError(f"must be a finite positive number, got {text}")
    return v


def _large_position(text):
    try:
        pos, A = text.split(":")
        return int(pos), int(A)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected POSITION:A, got {text!r}") from None


def _default_workers() -> int:
    env = os.environ.get("CFDIM_WORKERS")
    if env is None:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        return 1


# -- output ------------------------------------------------------------------


def _plain(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, tuple):
        return list(o)
    if isinstance(o, float) and not math.isfinite(o):
        return repr(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def _finite_json(o):
    """Replace non-finite floats so the JSON stays strict."""
    if isinstance(o, float) and not math.isfinite(o):
        return "inf" if o > 0 else ("-inf" if o < 0 else "nan")
    if isinstance(o, dict):
        return {str(k): _finite_json(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_finite_json(v) for v in o]
    return o


def _cell(v):
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    if isinstance(v, (list, dict, tuple)):
        return json.dumps(_finite_json(v), sort_keys=True, default=_plain)
    return str(v)


def render(command: str, run_config: dict, rows: list, payload: dict, fmt: str,
           timestamp: bool) -> str:
    header = {"schema": f"cfdim/{command}/v{SCHEMA_VERSION}", "version": __version__,
              "config": run_config}
    if timestamp:
        header["timestamp"] = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    if fmt == "json":
        doc = {**header, "result": payload}
        return json.dumps(_finite_json(doc), indent=2, sort_keys=True, default=_plain) + "\n"
    buf = io.StringIO()
    for key, val in header.items():
        buf.write(f"# {key}: {json.dumps(_finite_json(val), sort_keys=True, default=_plain)}\n")
    if rows:
        fields = []
        for r in rows:
            fields += [k for k in r if k not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(r.get(k)) for k in fields})
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------


def _index(args) -> cf.LinearIndex:
    return cf.LinearIndex(args.d, args.t)


def cmd_sb(args):
    index = _index(args)
    rows, results = [], []
    for B in args.B:
        est = pressure.s_B_estimate(B, index, args.Mmax, args.nmax, args.tol, workers=args.workers)
        per_M = {M: (v, band) for M, v, band in est.per_M}
        limits = dict(est.limit_per_M)
        for (M, n), s in sorted(est.tableau.items()):
            rows.append({"kind": "tableau", "B": B, "d": index.d, "t": index.t, "M": M, "n": n, "s": s,
                         "uncertainty": None, "s_n_extrapolated": per_M.get(M, (None,))[0],
                         "s_limit_M": limits.get(M), "gamma": None, "warnings": None})
        rows.append({"kind": "summary", "B": B, "d": index.d, "t": index.t, "M": None, "n": None,
                     "s": est.value, "uncertainty": est.uncertainty, "s_n_extrapolated": None,
                     "s_limit_M": None, "gamma": est.gamma, "warnings": "; ".join(est.warnings) or None})
        results.append(est.as_dict())
    return rows, {"estimates": results}, EXIT_OK


def cmd_dim(args):
    spec = dimension.GrowthSpec(dimension.parse_psi(args.psi), _index(args))
    ex = dimension.exponents_from_psi(spec, args.N)
    solver = dimension.PressureSolver(args.Mmax, args.nmax, args.tol, workers=args.workers)
    res = dimension.dim_Ef(ex, solver)
    exp_info = {"B": ex.B, "b": ex.b, "horizon": ex.horizon, "exact": ex.exact, "skipped": ex.skipped}
    rows = [{"kind": "result", "case": res.case, "value": res.value, "B": ex.B, "b": ex.b,
             "exact": ex.exact, "N": None, "log_B_estimate": None, "log_b_estimate": None}]
    rows += [{"kind": "trace", "N": Np, "log_B_estimate": lb, "log_b_estimate": lbb}
             for Np, lb, lbb in ex.trace]
    payload = {"psi": str(spec.psi), "exponents": exp_info,
               "trace": [{"N": Np, "log_B_estimate": lb, "log_b_estimate": lbb} for Np, lb, lbb in ex.trace],
               **res.as_dict()}
    return rows, payload, EXIT_OK


def cmd_check(args):
    rep = checks.run_suite(args.suite)
    rows = [{"suite": rep.suite, "check": r.name, "passed": r.passed, "detail": r.detail,
             "counterexample": r.counterexample} for r in rep.results]
    # timings are dropped so repeated runs stay byte-identical
    payload = {"suite": rep.suite, "passed": rep.passed,
               "results": [{k: v for k, v in r.as_dict().items() if k != "seconds"} for r in rep.results]}
    return rows, payload, EXIT_OK if rep.passed else EXIT_CHECK


def _parse_real(text: str, bits: int):
    t = text.strip().lower()
    if t in ("golden", "phi-1"):
        return cf.golden_enclosure(bits)
    if t == "pi-3":
        return cf.pi_minus_3_enclosure(bits)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot parse x = {text!r}; use p/q, a decimal, 'golden' or 'pi-3'") from None


def cmd_expand(args):
    x = _parse_real(args.x, args.bits)
    digits = cf.expand(x, args.n)
    states = cf.convergents(digits)[1:]
    rows = [{"k": k, "a": a, "p": st.p_cur, "q": st.q_cur}
            for k, (a, st) in enumerate(zip(digits, states), start=1)]
    return rows, {"x": args.x, "digits": list(digits),
                  "convergents": [{"p": st.p_cur, "q": st.q_cur} for st in states]}, EXIT_OK


def cmd_cover(args):
    prof = cover.equalized_cover(args.n, args.s, args.B, args.d)
    terms = cover.cover_terms(prof)
    rows = [{"k": k, "log_A": la, "log_alpha": lal, "log_term": lt}
            for k, (la, lal, lt) in enumerate(zip(prof.logA, prof.logAlpha, terms), start=1)]
    payload = {"logA": list(prof.logA), "logAlpha": list(prof.logAlpha), "log_terms": terms,
               "cover_value": cover.cover_value(prof),
               "log_A1_limit": (2 - 1 / args.s) * args.d * math.log(args.B)}
    if args.grid:
        val, slack = cover.supremum_grid_oracle(args.n, args.s, args.B, args.d, args.grid)
        payload["grid_oracle"] = {"value": val, "slack": slack,
                                  "within_slack": val <= payload["cover_value"] + slack}
    return rows, payload, EXIT_OK


def cmd_mc(args):
    cfg = empirics.SampleConfig(args.seed, args.samples, args.digits, args.bits, args.workers)
    exp = args.experiment
    if exp == "geomean":
        rep = empirics.geometric_mean_experiment(cfg, args.n, args.tolerance)
    elif exp == "mixed":
        rep = empirics.mixed_geometric_mean(cfg, _index(args), args.n)
    elif exp == "limsup":
        spec = dimension.GrowthSpec(dimension.parse_psi(args.psi), _index(args))
        rep = empirics.limsup_event_frequency(cfg, spec, args.window, args.variant)
    elif exp in ("divisor-sum", "lemma51"):
        rep = empirics.divisor_sum_ratio(args.k, args.s, args.phi)
    elif exp == "cantor":
        rep = empirics.cantor_geometry_check(args.M, args.depth, dict(args.large or []))
    elif exp == "first-digit":
        rep = empirics.first_digit_law(cfg)
    else:  # pragma: no cover - argparse restricts choices
        raise ValidationError(f"unknown experiment {exp}")
    rows = rep.table or [{"index": i, "value": v} for i, v in enumerate(rep.values)]
    return rows, rep.as_dict(), EXIT_OK


# -- parser ------------------------------------------------------------------


def _common(p):
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("--output", "-o", help="write here instead of stdout")
    g.add_argument("--no-timestamp", action="store_true", help="omit the timestamp field")
    g.add_argument("--workers", type=_positive_int, default=_default_workers(),
                   help="worker processes (default: $CFDIM_WORKERS or 1)")
    g.add_argument("--config", help="JSON file of flag defaults (keys are flag names)")


def _solver_flags(p, M_max=6, n_max=5):
    p.add_argument("--Mmax", type=_positive_int, default=M_max)
    p.add_argument("--nmax", type=_positive_int, default=n_max)
    p.add_argument("--tol", type=_positive_float, default=1e-12)


def _index_flags(p):
    p.add_argument("--d", type=_positive_int, default=1)
    p.add_argument("--t", type=_nonneg_int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cfdim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"cfdim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sb", help="s_B(M, n) tableau and extrapolated s_B")
    p.add_argument("--B", type=_positive_float, nargs="+", required=True)
    _index_flags(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_sb)

    p = sub.add_parser("dim", help="dimension of E_f(psi) for a rate function")
    p.add_argument("--psi", required=True, help="poly(c,k) | exp(beta) | dexp(beta) | table:PATH")
    p.add_argument("--N", type=_positive_int, default=200, help="horizon for exponent estimates")
    _index_flags(p)
    _solver_flags(p)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("suite", choices=sorted(checks.SUITES))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("expand", help="certified continued-fraction digits")
    p.add_argument("--x", required=True, help="p/q, decimal, 'golden' or 'pi-3'")
    p.add_argument("--n", type=_nonneg_int, default=10)
    p.add_argument("--bits", type=_positive_int, default=256, help="enclosure precision for named reals")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("cover", help="equalized cover profile")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--s", type=float, required=True)
    p.add_argument("--B", type=_positive_float, required=True)
    p.add_argument("--d", type=_positive_int, default=1)
    p.add_argument("--grid", type=_positive_int, default=0, help="also run the grid oracle at this resolution")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("mc", help="Monte Carlo and exhaustive experiments")
    p.add_argument("--experiment", required=True,
                   choices=("geomean", "mixed", "limsup", "divisor-sum", "lemma51", "cantor", "first-digit"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=_positive_int, default=200)
    p.add_argument("--digits", type=_positive_int, default=10_000, help="digits per sample")
    p.add_argument("--bits", type=_positive_int, default=None, help="random bits per sample")
    p.add_argument("--n", type=_positive_int, default=100)
    p.add_argument("--tolerance", type=_positive_float, default=0.05)
    _index_flags(p)
    p.add_argument("--psi", default="poly(1,1)")
    p.add_argument("--window", type=_positive_int, default=100)
    p.add_argument("--variant", choices=("E1", "Ef"), default="Ef")
    p.add_argument("--k", type=_positive_int, default=2)
    p.add_argument("--s", type=float, default=0.6)
    p.add_argument("--phi", type=float, nargs="+", default=[10, 100, 1000, 10000])
    p.add_argument("--M", type=_positive_int, default=3)
    p.add_argument("--depth", type=_nonneg_int, default=3)
    p.add_argument("--large", type=_large_position, nargs="*", help="POSITION:A digit ranges [A, 2A]")
    p.set_defaults(func=cmd_mc)

    for sp in sub.choices.values():
        _common(sp)
    return parser


def _subcommands(parser):
    return parser._subparsers._group_actions[0].choices


def _apply_config(parser, argv):
    """Second parse with defaults taken from --config, so explicit flags win."""
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, rest = pre.parse_known_args(argv)
    if not known.config or not rest or rest[0] not in _subcommands(parser):
        return parser.parse_args(argv)
    args = argparse.Namespace(config=known.config, command=rest[0])
    try:
        with open(args.config) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {args.config}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ValidationError("config file must hold a JSON object")
    subparser = parser._subparsers._group_actions[0].choices[args.command]
    known = {a.dest for a in subparser._actions}
    unknown = sorted(set(cfg) - known)
    if unknown:
        raise ValidationError(f"unknown config keys: {', '.join(unknown)}")
    # route config values through the same type converters as flags
    converted = {}
    for action in subparser._actions:
        if action.dest in cfg:
            val = cfg[action.dest]
            if action.type is not None and val is not None:
                try:
                    val = [action.type(str(v)) for v in val] if isinstance(val, list) else action.type(str(val))
                except (argparse.ArgumentTypeError, ValueError) as exc:
                    raise ValidationError(f"config key {action.dest}: {exc}") from None
            converted[action.dest] = val
    subparser.set_defaults(**converted)
    for action in subparser._actions:
        if action.dest in converted:
            action.required = False
    return parser.parse_args(argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        run_config = {k: v for k, v in sorted(vars(args).items()) if k not in _NOT_EMBEDDED}
        rows, payload, code = args.func(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    except ValidationError as exc:
        _report_error(exc, EXIT_VALIDATION)
        return EXIT_VALIDATION
    except (SolverError, BudgetExceeded, PrecisionExhausted) as exc:
        _report_error(exc, EXIT_SOLVER)
        return EXIT_SOLVER
    except CfdimError as exc:
        _report_error(exc, EXIT_SOLVER)
        return EXIT_SOLVER
    text = render(args.command, run_config, rows, payload, args.format, not args.no_timestamp)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def _report_error(exc: Exception, code: int):
    err = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
    diag = getattr(exc, "diagnostics", None)
    if diag is not None:
        err["diagnostics"] = diag
    sys.stderr.write(json.dumps(_finite_json(err), sort_keys=True, default=_plain) + "\n")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
