"""Command-line entry point.

Exit codes: 0 on success (an extension verdict for ``analyze``, a falsifier
for ``certify``), 2 when ``analyze`` finds no extension within the budget or
``certify`` finds nothing to falsify, 1 on any error.
"""
from __future__ import annotations

import argparse
import dataclasses
import datetime as _dt
import json
import platform
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .certificates import NoFalsifier, cesaro_witness, falsify, q_only_probe, sample_windings
from .errors import CauchyScopeError, InputError, ParseError
from .extension import SCHEMA_VERSION, cauchy_extend, detect_meromorphic, minimal_budget
from .formats import plot_table, plot_table_csv, read_input
from .generators import parse_generator, parse_polynomial
from .hankel import rank_report
from .oracle import RationalFunction
from .polynomial import ComplexPolynomial
from .spectrum import BoundarySamples, fourier_coefficients, sample
from .tolerances import DEFAULT_TOLERANCES
from .winding import composite_winding

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


@dataclass
class RunConfig:
    """Everything needed to reproduce a run. Echoed into every report."""

    subcommand: str
    input: Optional[str] = None
    gen: Optional[str] = None
    grid_size: int = 4096
    window: int = 256
    max_poles: int = 5
    tail_depth: Optional[int] = None
    rank_tol: Optional[float] = None
    tail_tol: Optional[float] = None
    min_mod_tol: Optional[float] = None
    seed: int = 0
    format: str = "json"
    # subcommand specific
    minimal: bool = False
    eval_points: list = field(default_factory=list)
    P: Optional[str] = None
    Q: Optional[str] = None
    draws: int = 0
    max_degree: int = 6
    q_vanish_at_zero: bool = False
    mode: str = "falsify"

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise InputError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def tolerances(self):
        return DEFAULT_TOLERANCES.updated(rank_tol=self.rank_tol, tail_tol=self.tail_tol)


# ---------------------------------------------------------------------------
# argument parsing


def _common(p: argparse.ArgumentParser):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="CSV (j,re,im) or JSON samples, or a rational JSON test case")
    src.add_argument("--gen", help="built-in generator, e.g. 'pole:0.5', 'poly:z^-2', 'lacunary:4'")
    p.add_argument("--grid-size", type=int, default=4096, help="sample count M (default 4096)")
    p.add_argument("--window", type=int, default=256, help="Fourier half window K (default 256)")
    p.add_argument("--max-poles", type=int, default=5, help="pole budget N (default 5)")
    p.add_argument("--tail-depth", type=int, default=None, help="moments checked past N (default 3N+8)")
    p.add_argument("--rank-tol", type=float, default=None, help=f"default {DEFAULT_TOLERANCES.rank_tol}")
    p.add_argument("--tail-tol", type=float, default=None, help=f"default {DEFAULT_TOLERANCES.tail_tol}")
    p.add_argument("--min-mod-tol", type=float, default=None, help="default 1e-8 * max|Pf+Q|")
    p.add_argument("--seed", type=int, default=0, help="seed for random draws (default 0)")
    p.add_argument("--output", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="default json (csv for plot-data)")


def _pq(p: argparse.ArgumentParser):
    p.add_argument("--P", dest="P", default=None, help="polynomial P, expression or ascending coefficients (default 1)")
    p.add_argument("--Q", dest="Q", default=None, help="polynomial Q (default 0)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchy-scope",
        description="Meromorphic extension tests and winding-number certificates from boundary samples.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("analyze", help="decide extension within the pole budget")
    _common(p)
    p.add_argument("--minimal", action="store_true", help="scan budgets 0..N and report the first that extends")
    p.add_argument("--eval", dest="eval_points", action="append", default=[],
                   help="interior point to evaluate the extension at (repeatable)")

    p = sub.add_parser("winding", help="winding number of P f + Q")
    _common(p)
    _pq(p)
    p.add_argument("--draws", type=int, default=0, help="also sample this many random Q")
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--q-vanish-at-zero", action="store_true", help="random Q satisfy Q(0) = 0")

    p = sub.add_parser("certify", help="build a winding-number falsifier for budget N")
    _common(p)
    p.add_argument("--mode", choices=("falsify", "cesaro"), default="falsify")

    p = sub.add_parser("plot-data", help="theta, Re f, Im f, unwrapped arg(P f + Q)")
    _common(p)
    _pq(p)

    p = sub.add_parser("probe", help="EXPERIMENTAL: windings of f + Q with P = 1 fixed")
    _common(p)
    p.add_argument("--draws", type=int, default=200)
    p.add_argument("--max-degree", type=int, default=6)

    p = sub.add_parser("rerun", help="re-execute the config block of an earlier report")
    p.add_argument("report", help="JSON report written by this tool")
    p.add_argument("--output")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(ns).items() if k in {f.name for f in dataclasses.fields(RunConfig)}}
    values.pop("output", None)
    if values.get("format") is None:
        values["format"] = "csv" if ns.subcommand == "plot-data" else "json"
    return RunConfig(**values)


# ---------------------------------------------------------------------------
# execution


def load_function(cfg: RunConfig):
    """Samples and, when available, the exact rational form."""
    if cfg.gen:
        fn = parse_generator(cfg.gen)
        return sample(fn, cfg.grid_size), fn.rational
    obj = read_input(cfg.input)
    if isinstance(obj, RationalFunction):
        return sample(obj, cfg.grid_size), obj
    return obj, None


def _spectrum(cfg: RunConfig, f: BoundarySamples):
    K = min(cfg.window, (f.grid_size - 1) // 2)
    return fourier_coefficients(f, K)


def _poly(text: Optional[str], default: float) -> ComplexPolynomial:
    return ComplexPolynomial([default]) if text is None else parse_polynomial(text)


def _complex_arg(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError as exc:
        raise ParseError(f"not a complex number: {text!r}") from exc


def run_analyze(cfg, f):
    tol = cfg.tolerances()
    spec = _spectrum(cfg, f)
    if cfg.minimal:
        report = minimal_budget(spec, cfg.max_poles, cfg.tail_depth, tol)
    else:
        report = detect_meromorphic(spec, cfg.max_poles, cfg.tail_depth, tol)
    result = report.to_dict()
    result.pop("schema", None)
    result["half_window"] = spec.half_window
    order = min(cfg.max_poles, (spec.half_window - 1) // 2)
    rr = rank_report(spec, order, tol.rank_tol, tol.coef_floor)
    result["rank"] = rr.to_dict()
    if cfg.eval_points:
        pts = [_complex_arg(s) for s in cfg.eval_points]
        if report.extends:
            vals = np.atleast_1d(cauchy_extend(f, report, pts, tol))
            result["evaluations"] = [
                {"w": [p.real, p.imag], "value": [float(v.real), float(v.imag)]} for p, v in zip(pts, vals)
            ]
    code = EXIT_OK if report.extends else EXIT_NEGATIVE
    return result, code


def run_winding(cfg, f):
    P, Q = _poly(cfg.P, 1.0), _poly(cfg.Q, 0.0)
    result = composite_winding(f, P, Q, cfg.min_mod_tol).to_dict()
    result["P"], result["Q"] = P.to_json(), Q.to_json()
    if cfg.draws:
        # P stays fixed at the given polynomial; only Q is drawn
        drawn = _draw_q(f, P, cfg)
        w = drawn["windings"]
        result["draws"] = {
            "count": len(w),
            "rejected": drawn["rejected"],
            "min_winding": min(w) if w else None,
            "windings": w,
        }
    return result, EXIT_OK


def _draw_q(f, P, cfg):
    fp = f.map(lambda z, v: P(z) * v)
    return sample_windings(fp, cfg.draws, cfg.seed, cfg.max_degree, vanish_at_zero=cfg.q_vanish_at_zero)


def run_certify(cfg, f):
    tol = cfg.tolerances()
    spec = _spectrum(cfg, f)
    if cfg.mode == "cesaro":
        cert = cesaro_witness(spec, cfg.max_poles, f, tol)
    else:
        cert = falsify(spec, f, cfg.max_poles, cfg.tail_depth, tol)
    if isinstance(cert, NoFalsifier):
        return cert.to_dict(), EXIT_NEGATIVE
    return cert.to_dict(), EXIT_OK


def run_plot(cfg, f):
    P, Q = _poly(cfg.P, 1.0), _poly(cfg.Q, 0.0)
    table = plot_table(f, P, Q)
    if cfg.format == "csv":
        return plot_table_csv(table), EXIT_OK
    cols = ["theta", "re_f", "im_f", "arg_composite"]
    return {"columns": cols, "rows": table.tolist()}, EXIT_OK


def run_probe(cfg, f):
    return q_only_probe(f, cfg.draws or 200, cfg.seed, cfg.max_degree), EXIT_OK


RUNNERS = {
    "analyze": run_analyze,
    "winding": run_winding,
    "certify": run_certify,
    "plot-data": run_plot,
    "probe": run_probe,
}


def versions() -> dict:
    return {"cauchy_scope": __version__, "numpy": np.__version__, "python": platform.python_version()}


def execute(cfg: RunConfig):
    """Run a config. Returns ``(payload, exit_code)``; payload is a dict or CSV text."""
    if cfg.subcommand not in RUNNERS:
        raise InputError(f"unknown subcommand {cfg.subcommand!r}")
    f, _ = load_function(cfg)
    result, code = RUNNERS[cfg.subcommand](cfg, f)
    if isinstance(result, str):
        return result, code
    if cfg.format == "csv":
        if cfg.subcommand != "analyze":
            raise InputError(f"--format csv is not available for {cfg.subcommand}")
        lines = ["re,im,multiplicity"]
        lines += [f"{p['location'][0]!r},{p['location'][1]!r},{p['multiplicity']}" for p in result["poles"]]
        return "\n".join(lines) + "\n", code
    report = {
        "schema": SCHEMA_VERSION,
        "command": cfg.subcommand,
        "config": cfg.to_dict(),
        "tolerances": cfg.tolerances().to_dict(),
        "versions": versions(),
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "exit_code": code,
        "result": result,
    }
    return report, code


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=True) + "\n"


def _emit(payload, output: Optional[str]):
    text = payload if isinstance(payload, str) else dumps(payload)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.subcommand == "rerun":
            try:
                old = json.loads(Path(ns.report).read_text())
                cfg = RunConfig.from_dict(old["config"])
            except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
                raise InputError(f"cannot read config block from {ns.report}: {exc}") from exc
        else:
            cfg = config_from_args(ns)
        payload, code = execute(cfg)
        _emit(payload, ns.output)
        return code
    except (CauchyScopeError, ValueError) as exc:
        print(f"cauchy-scope: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
