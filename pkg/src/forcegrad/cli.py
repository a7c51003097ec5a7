"""Command-line interface: ``forcegrad {nmin,sweep,verify,models}``.

Exit codes: 0 success, 1 check failure (or unreachable threshold with
``--strict``), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from contextlib import contextmanager
from dataclasses import asdict

from . import __version__
from .bench import DEFAULT_M_MAX, NMinResult, nmin_grid, sweep_error
from .models import MODEL_ALIASES, build_model
from .schemes import SCHEME_NAMES, make_scheme
from .verification import CHECKS, run_checks

CSV_HEADER = ("model", "coupling", "t", "scheme", "m", "n", "epsilon")
_COUPLING_SYMBOL = {"tim1d": "lambda", "tim2d": "lambda", "gauge": "k"}
_CLI_SCHEMES = tuple(s.lower() for s in SCHEME_NAMES)


def percent(eps: float) -> str:
    """Percent with two significant figures, trailing zeros kept (``0.10``)."""
    return f"{eps * 100:#.2g}"


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or v == float("inf"):
        raise argparse.ArgumentTypeError(f"must be a positive finite number: {text!r}")
    return v


def _finite_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v != v or v in (float("inf"), float("-inf")):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _m_range(text: str) -> range:
    lo, sep, hi = text.partition(":")
    try:
        lo_i, hi_i = int(lo), int(hi if sep else lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"need 1 <= lo <= hi, got {text!r}")
    return range(lo_i, hi_i + 1)


@contextmanager
def _open_output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _add_common(p: argparse.ArgumentParser, schemes: bool = True) -> None:
    p.add_argument("--model", required=True, choices=sorted(MODEL_ALIASES))
    p.add_argument("--t", type=_finite_float, default=1.0, help="evolution time (default 1)")
    if schemes:
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--scheme", choices=_CLI_SCHEMES)
        g.add_argument("--all-schemes", action="store_true")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")
    p.add_argument("--output", help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forcegrad",
        description="Product-formula error benchmarks for small spin models.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nmin", help="smallest exponential count with epsilon below a threshold")
    _add_common(p)
    p.add_argument("--coupling", type=_positive_float, nargs="+", required=True)
    p.add_argument("--threshold", type=_positive_float, default=1e-3, help="fraction, 1e-3 = 0.1%%")
    p.add_argument("--max-m", type=_positive_int, default=DEFAULT_M_MAX)
    p.add_argument("--strict", action="store_true", help="exit 1 if any threshold is unreachable")
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker threads")

    p = sub.add_parser("sweep", help="epsilon as a function of the step count")
    _add_common(p)
    p.add_argument("--coupling", type=_positive_float, required=True)
    p.add_argument("--m", type=_m_range, required=True, metavar="LO:HI")

    p = sub.add_parser("verify", help="identity, unitarity and convergence-order self-checks")
    p.add_argument("--check", choices=CHECKS + ("all",), default="all")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output")

    p = sub.add_parser("models", help="list the available models")
    p.add_argument("--model", choices=sorted(MODEL_ALIASES))
    p.add_argument("--json", action="store_true")
    p.add_argument("--output")
    return parser


def _selected_schemes(args) -> list[str]:
    return list(SCHEME_NAMES) if args.all_schemes else [args.scheme.upper()]


def nmin_record(r: NMinResult, model_name: str) -> dict:
    return {
        "tool_version": __version__,
        "model": model_name,
        "coupling": r.coupling,
        "t": r.t,
        "scheme": r.scheme.lower(),
        "threshold": r.threshold,
        "found": r.found,
        "m_min": r.m_min,
        "n_min": r.n_min,
        "epsilon": r.epsilon_at_min,
        "epsilon_percent": None if r.epsilon_at_min is None else r.epsilon_at_min * 100,
        "best_m": r.best_m,
        "best_epsilon": r.best_epsilon,
    }


def _cell(r: NMinResult) -> str:
    return f"{r.n_min} / {percent(r.epsilon_at_min)}" if r.found else f"-- (best {percent(r.best_epsilon)})"


def cmd_nmin(args) -> int:
    schemes = _selected_schemes(args)
    results = nmin_grid(
        args.model, args.coupling, schemes, args.t, args.threshold, args.max_m, workers=args.jobs
    )
    sym = _COUPLING_SYMBOL[args.model]
    with _open_output(args.output) as out:
        if args.json:
            json.dump([nmin_record(r, args.model) for r in results], out, indent=2)
            out.write("\n")
        elif args.all_schemes:
            out.write(f"# {args.model}  t={args.t:g}  threshold={percent(args.threshold)}%  cells: n_min / eps(%)\n")
            widths = [max(len(s), 16) for s in schemes]
            out.write(f"{sym:>8}  " + "  ".join(f"{s:>{w}}" for s, w in zip(schemes, widths)) + "\n")
            by_coupling: dict[float, list[NMinResult]] = {}
            for r in results:
                by_coupling.setdefault(r.coupling, []).append(r)
            for c, row in by_coupling.items():
                out.write(f"{c:>8g}  " + "  ".join(f"{_cell(r):>{w}}" for r, w in zip(row, widths)) + "\n")
        else:
            for r in results:
                if r.found:
                    out.write(
                        f"model={args.model} {sym}={r.coupling:g} t={r.t:g} scheme={r.scheme.lower()} "
                        f"m_min={r.m_min} n_min={r.n_min} epsilon={percent(r.epsilon_at_min)}%\n"
                    )
                else:
                    out.write(
                        f"model={args.model} {sym}={r.coupling:g} t={r.t:g} scheme={r.scheme.lower()} "
                        f"NOT FOUND up to m={args.max_m} (best epsilon={percent(r.best_epsilon)}% at m={r.best_m})\n"
                    )
    if args.strict and not all(r.found for r in results):
        return 1
    return 0


def sweep_rows(model_name: str, coupling: float, t: float, schemes, m_values) -> list[dict]:
    model = build_model(model_name, coupling)
    rows = []
    for s in schemes:
        for p in sweep_error(model, make_scheme(s, model), t, list(m_values)):
            rows.append(
                {"model": model_name, "coupling": coupling, "t": t, "scheme": s.lower(),
                 "m": p.m, "n": p.n, "epsilon": p.epsilon}
            )
    return rows


def write_csv(rows: list[dict], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow(
            [r["model"], repr(float(r["coupling"])), repr(float(r["t"])), r["scheme"],
             r["m"], r["n"], f"{r['epsilon']:.12e}"]
        )


def cmd_sweep(args) -> int:
    rows = sweep_rows(args.model, args.coupling, args.t, _selected_schemes(args), args.m)
    with _open_output(args.output) as out:
        if args.json:
            json.dump(rows, out, indent=2)
            out.write("\n")
        else:
            write_csv(rows, out)
    return 0


def cmd_verify(args) -> int:
    names = CHECKS if args.check == "all" else (args.check,)
    results = run_checks(names)
    ok = all(r.passed for r in results)
    with _open_output(args.output) as out:
        if args.json:
            json.dump([asdict(r) for r in results], out, indent=2)
            out.write("\n")
        else:
            for r in results:
                out.write(r.line() + "\n")
            failed = [r for r in results if not r.passed]
            out.write(f"{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 0 if ok else 1


def model_rows(name: str | None = None) -> list[dict]:
    rows = []
    for alias in sorted(MODEL_ALIASES) if name is None else [name]:
        model = build_model(alias, 1.0)
        rows.append(
            {
                "model": alias,
                "kind": model.kind,
                "qubits": model.qubits,
                "coupling_symbol": _COUPLING_SYMBOL[alias],
                "aux": {k: len(v) for k, v in model.aux.items()},
                "s_terms": len(model.s_part),
                "t_terms": len(model.t_part),
                "schemes": list(_CLI_SCHEMES),
            }
        )
    return rows


def cmd_models(args) -> int:
    rows = model_rows(args.model)
    with _open_output(args.output) as out:
        if args.json:
            json.dump(rows, out, indent=2)
            out.write("\n")
            return 0
        out.write(f"{'model':<7} {'kind':<15} {'qubits':>6} {'coupling':>8}  aux  schemes\n")
        for r in rows:
            aux = ",".join(f"{k}({n} terms)" for k, n in r["aux"].items())
            out.write(
                f"{r['model']:<7} {r['kind']:<15} {r['qubits']:>6} {r['coupling_symbol']:>8}  "
                f"{aux}  {','.join(r['schemes'])}\n"
            )
            if args.model:
                out.write(f"  S: {r['s_terms']} terms, T: {r['t_terms']} terms\n")
    return 0


_COMMANDS = {"nmin": cmd_nmin, "sweep": cmd_sweep, "verify": cmd_verify, "models": cmd_models}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        parser.error(str(exc))


if __name__ == "__main__":
    sys.exit(main())
