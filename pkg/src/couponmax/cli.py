"""Command-line interface.

Every command prints one document: a JSON envelope (command, params,
results, meta) or a CSV table of the results.  Floats are written with 17
significant digits so they parse back to the same binary value; wall time is
only included with --timing, which keeps default output byte-identical
across runs.

Exit codes: 0 success, 2 usage or domain error, 3 convergence failure (the
partial results are still printed, with meta.partial = true).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from dataclasses import asdict
from typing import Any, Iterable, Sequence

from . import __version__
from .errors import ConvergenceError, ResourceError
from .finite import (
    discrete_argmax_probability,
    expected_total_draws,
    finite_argmax_continuous,
    finite_max_moment,
)
from .maxprob import DEFAULT_SPEC as MAXPROB_SPEC
from .maxprob import argmax_asymptotic, argmax_probability, argmax_row, hr_integral
from .moments import SERIES_REL_TOL, g_series, moment_bernoulli, moment_hurwitz, moment_report
from .partition import partition_asymptotic, partition_count, partition_ratio
from .quadrature import QuadratureSpec
from .simulator import SimConfig, compare_with_theory, simulate
from .zeta import SpecialPoint, ZetaEvalConfig, hurwitz_special_odd, hurwitz_zeta

EXIT_OK, EXIT_USAGE, EXIT_CONVERGENCE = 0, 2, 3

MOMENT_COLUMNS = ("k", "via_series", "via_hurwitz", "via_bernoulli", "max_rel_disagreement")
ARGMAX_COLUMNS = ("m", "exact", "asymptotic", "hr_integral", "underflow")
SIM_COLUMNS = ("quantity", "index", "value", "std_error", "theory", "z", "flagged")


def _fmt_float(x: float) -> str | None:
    return "%.17g" % x if math.isfinite(x) else None


def _to_json(obj: Any) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        s = _fmt_float(obj)
        return "null" if s is None else s
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v) or "nan"
    return str(v)


def render_table(rows: Sequence[dict], fmt: str, columns: Sequence[str] | None = None,
                 envelope: dict | None = None) -> str:
    """Render result records as CSV (header row first) or as a JSON envelope."""
    if fmt == "csv":
        cols = list(columns) if columns is not None else (list(rows[0]) if rows else [])
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_csv_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    if fmt == "json":
        doc = dict(envelope or {"command": "", "params": {}, "meta": {}})
        doc["results"] = list(rows)
        ordered = {key: doc[key] for key in ("command", "params", "results", "meta") if key in doc}
        return _to_json(ordered) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [_positive_int(t) for t in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--rel-tol", type=float, default=None,
                        help="relative tolerance for quadrature, zeta evaluation and series")
    common.add_argument("--timing", action="store_true", help="add wall time to meta")

    p = argparse.ArgumentParser(prog="couponmax", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("moments", parents=[common], help="E(M^k) by one or all routes")
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--method", choices=("all", "hurwitz", "bernoulli", "series"), default="all")

    s = sub.add_parser("table2", parents=[common], help="moments for k = 1..kmax")
    s.add_argument("--kmax", type=_positive_int, default=5)

    z = sub.add_parser("zeta", help="Hurwitz zeta values").add_subparsers(dest="zeta_command", required=True)
    s = z.add_parser("special", parents=[common], help="zeta(2m+1, p/q), q in {2,3,4,6}")
    s.add_argument("--m", type=_positive_int, required=True)
    s.add_argument("--a", required=True, help="literal p/q")
    s = z.add_parser("eval", parents=[common], help="zeta(s, a) for real s, a")
    s.add_argument("--s", type=float, required=True)
    s.add_argument("--a", type=float, required=True)

    s = sub.add_parser("maxprob", parents=[common], help="argmax probability for one m")
    s.add_argument("--m", type=_positive_int, required=True)
    s.add_argument("--columns", default="exact,asymptotic,hr")

    s = sub.add_parser("table1", parents=[common], help="argmax probabilities for a list of m")
    s.add_argument("--rows", type=_int_list, default=[1, 2, 3, 4, 5, 10, 50, 100])

    s = sub.add_parser("partition", parents=[common], help="p(m) and its asymptotic")
    s.add_argument("--m", type=int, required=True)

    f = sub.add_parser("finite", help="finite-n quantities").add_subparsers(dest="finite_command", required=True)
    s = f.add_parser("max-moment", parents=[common])
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--k", type=_positive_int, required=True)
    s = f.add_parser("argmax", parents=[common])
    s.add_argument("--model", choices=("continuous", "discrete"), required=True)
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--m", type=_positive_int, required=True)
    s = f.add_parser("draws", parents=[common])
    s.add_argument("--n", type=_positive_int, required=True)

    s = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo")
    s.add_argument("--model", choices=("continuous", "discrete"), required=True)
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--trials", type=_positive_int, required=True)
    s.add_argument("--seed", type=_u64, required=True)
    s.add_argument("--k-max", type=int, default=4)
    s.add_argument("--m-max", type=int, default=None)
    s.add_argument("--compare", action="store_true", help="add theory values and z-scores")
    return p


def _quad(rel_tol: float | None, base: QuadratureSpec) -> QuadratureSpec:
    if rel_tol is None:
        return base
    return QuadratureSpec(base.abs_tol, rel_tol, base.max_subdivisions)


def _report_record(r) -> dict:
    return {c: getattr(r, c) for c in MOMENT_COLUMNS}


def _cmd_moments(a, out: list) -> tuple[Sequence[str], dict]:
    if a.method == "all":
        out.append(_report_record(moment_report(a.k)))
        return MOMENT_COLUMNS, {}
    if a.method == "series":
        tol = a.rel_tol if a.rel_tol is not None else SERIES_REL_TOL
        if a.k > 16:
            raise ValueError("k must lie in [1, 16]")
        v = math.factorial(a.k) * 2**a.k * g_series(a.k, tol)
        out.append({"k": a.k, "method": "series", "value": v})
        return ("k", "method", "value"), {"series_rel_tol": tol}
    fn = moment_hurwitz if a.method == "hurwitz" else moment_bernoulli
    out.append({"k": a.k, "method": a.method, "value": fn(a.k)})
    return ("k", "method", "value"), {}


def _cmd_table2(a, out: list):
    if a.kmax > 16:
        raise ValueError("kmax must be <= 16")
    for k in range(1, a.kmax + 1):
        out.append(_report_record(moment_report(k)))
    return MOMENT_COLUMNS, {"series_rel_tol": SERIES_REL_TOL}


def _cmd_zeta(a, out: list):
    if a.zeta_command == "special":
        point = SpecialPoint.parse(a.a)
        out.append({"m": a.m, "s": 2 * a.m + 1, "a": str(point), "value": hurwitz_special_odd(a.m, point)})
        return ("m", "s", "a", "value"), {}
    cfg = ZetaEvalConfig() if a.rel_tol is None else ZetaEvalConfig(rel_tol=a.rel_tol)
    try:
        v = hurwitz_zeta(a.s, a.a, cfg)
    except ConvergenceError as exc:
        out.append({"s": a.s, "a": a.a, "value": exc.value})
        raise
    out.append({"s": a.s, "a": a.a, "value": v})
    return ("s", "a", "value"), {"zeta_rel_tol": cfg.rel_tol}


def _cmd_maxprob(a, out: list):
    spec = _quad(a.rel_tol, MAXPROB_SPEC)
    wanted = [c.strip() for c in a.columns.split(",") if c.strip()]
    unknown = set(wanted) - {"exact", "asymptotic", "hr"}
    if unknown:
        raise ValueError(f"unknown columns: {sorted(unknown)}")
    rec: dict[str, Any] = {"m": a.m}
    out.append(rec)
    if "exact" in wanted:
        rec["exact"] = argmax_probability(a.m, spec)
    if "asymptotic" in wanted:
        rec["asymptotic"] = argmax_asymptotic(a.m)
    if "hr" in wanted:
        rec["hr_integral"] = hr_integral(a.m, spec)
    return tuple(rec), {"quad_rel_tol": spec.rel_tol}


def _cmd_table1(a, out: list):
    spec = _quad(a.rel_tol, MAXPROB_SPEC)
    for m in a.rows:
        out.append(asdict(argmax_row(m, spec)))
    return ARGMAX_COLUMNS, {"quad_rel_tol": spec.rel_tol}


def _cmd_partition(a, out: list):
    p = partition_count(a.m)
    rec: dict[str, Any] = {"m": a.m, "p": p}
    if a.m >= 1:
        rec.update(asymptotic=partition_asymptotic(a.m), ratio=partition_ratio(a.m))
    out.append(rec)
    return ("m", "p", "asymptotic", "ratio"), {}


def _cmd_finite(a, out: list):
    from .finite import DEFAULT_SPEC as FINITE_SPEC

    spec = _quad(a.rel_tol, FINITE_SPEC)
    if a.finite_command == "max-moment":
        out.append({"n": a.n, "k": a.k, "value": finite_max_moment(a.n, a.k, spec)})
        return ("n", "k", "value"), {"quad_rel_tol": spec.rel_tol}
    if a.finite_command == "argmax":
        if a.model == "continuous":
            v = finite_argmax_continuous(a.m, a.n, spec)
        else:
            v = discrete_argmax_probability(a.m, a.n)
        out.append({"model": a.model, "n": a.n, "m": a.m, "value": v})
        return ("model", "n", "m", "value"), {"quad_rel_tol": spec.rel_tol}
    out.append({"n": a.n, "value": expected_total_draws(a.n)})
    return ("n", "value"), {}


def _cmd_simulate(a, out: list):
    cfg = SimConfig(a.model, a.n, a.trials, a.seed, k_max=a.k_max, m_max=a.m_max)
    summary = simulate(cfg)
    theory: dict[tuple[str, int], Any] = {}
    if a.compare:
        for e in compare_with_theory(summary, cfg):
            key = ("moment", e.index) if e.quantity.startswith("moment") else ("argmax_strict", e.index)
            # the finite-n value is the sharper reference when both exist
            if key not in theory or e.quantity == "moment_finite":
                theory[key] = e
    for k, mean, se in summary.moments:
        out.append({"quantity": "moment", "index": k, "value": mean, "std_error": se})
    for m, freq in summary.argmax_freq.items():
        out.append({"quantity": "argmax_strict", "index": m, "value": freq,
                    "std_error": math.sqrt(freq * (1 - freq) / summary.trials)})
    for m, freq in summary.weak_argmax_freq.items():
        out.append({"quantity": "argmax_weak", "index": m, "value": freq})
    out.append({"quantity": "tie_rate", "index": 0, "value": summary.tie_rate})
    for rec in out:
        e = theory.get((rec["quantity"], rec["index"]))
        if e is not None:
            rec.update(theory=e.theory, z=e.z, flagged=e.flagged)
    return SIM_COLUMNS, {"seed": a.seed}


_HANDLERS = {
    "moments": _cmd_moments,
    "table2": _cmd_table2,
    "zeta": _cmd_zeta,
    "maxprob": _cmd_maxprob,
    "table1": _cmd_table1,
    "partition": _cmd_partition,
    "finite": _cmd_finite,
    "simulate": _cmd_simulate,
}

_NOT_PARAMS = {"command", "format", "timing"}


def run(argv: Iterable[str], stdout=None, stderr=None) -> int:
    """Parse ``argv``, run one command, print its document, return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.rel_tol is not None and not 0 < args.rel_tol <= 1e-6:
        print("couponmax: --rel-tol must lie in (0, 1e-6]", file=stderr)
        return EXIT_USAGE

    name = args.command
    for sub in ("zeta_command", "finite_command"):
        if getattr(args, sub, None):
            name += " " + getattr(args, sub)
    params = {k: v for k, v in vars(args).items() if k not in _NOT_PARAMS and not k.endswith("_command")}
    meta: dict[str, Any] = {"version": __version__}
    results: list[dict] = []
    code = EXIT_OK
    columns: Sequence[str] | None = None
    t0 = time.perf_counter()
    try:
        columns, tolerances = _HANDLERS[args.command](args, results)
        meta["tolerances"] = tolerances
    except ConvergenceError as exc:
        meta.update(partial=True, error=str(exc), partial_value=exc.value, error_estimate=exc.error_estimate)
        print(f"couponmax: convergence failure: {exc}", file=stderr)
        code = EXIT_CONVERGENCE
    except (ValueError, TypeError, ResourceError) as exc:
        print(f"couponmax: {exc}", file=stderr)
        return EXIT_USAGE
    if "seed" in params:
        meta["seed"] = params["seed"]
    if args.timing:
        meta["wall_time"] = time.perf_counter() - t0
    envelope = {"command": name, "params": params, "meta": meta}
    stdout.write(render_table(results, args.format, columns, envelope))
    return code


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
