"""Command-line front end.

Every subcommand writes a table (CSV with a ``# schema=1`` comment line, or
JSON ``{"meta": ..., "rows": ...}``).  Defaults: hbar = C_alpha = 1,
f(0) = 1.  Exit codes: 2 domain error, 3 convergence failure, 4 tolerance
breach (``--method both`` or a failing ``validate`` property).
"""
from __future__ import annotations

import argparse
import cmath
import io
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .core import FractionalParams, PhysicalParams, Regime, SampledField, validate_params
from .errors import BranchError, ConvergenceError, DomainError
from .foxh import HFunctionSpec, fox_h_eval
from .free_particle import (Branch, GreenEval, argument_scale, green_foxh_eval, green_function,
                            green_spec, mellin_form_spec, propagate, tau_of)
from .linear_potential import (LinearPotentialSpec, TimeFractionalSpec, f_beta_spec, linear_spec,
                               mittag_leffler_solution, phi_space_eval, phi_space_oracle,
                               time_solution)
from .special import _ml_series, DEFAULT_SERIES, mittag_leffler, wright_m

logger = logging.getLogger(__name__)

SCHEMA = 1
COMMANDS = ("greens", "propagate", "linear-space", "linear-time", "foxh", "ml", "wright", "validate")
METHODS = ("foxh", "oracle", "both")

EXIT_OK, EXIT_DOMAIN, EXIT_CONVERGENCE, EXIT_TOLERANCE = 0, 2, 3, 4

# keys accepted from --config files besides the run settings
PARAM_KEYS = ("alpha", "beta", "theta", "hbar", "c_alpha", "slope_a", "energy_e")

DEFAULTS = {
    "alpha": 1.5, "beta": 1.0, "theta": 0.0, "hbar": 1.0, "c_alpha": 1.0,
    "slope_a": 1.0, "energy_e": 1.0, "f0": 1.0, "t": 1.0,
    "x_min": -8.0, "x_max": 8.0, "nx": 81,
    "t_min": 0.1, "t_max": 5.0, "nt": 50,
    "method": "foxh", "format": "csv", "output": None, "tolerance": 1e-3,
    "dampings": [], "width": 1.0, "center": 0.0, "kick": 0.0,
    "preset": "green", "m": None, "n": None, "upper": None, "lower": None, "phase": 0.0,
}

# the keys each command reads; everything else is left out of --dump-config
USED = {
    "greens": ("alpha", "beta", "theta", "hbar", "c_alpha", "t", "x_min", "x_max", "nx", "dampings"),
    "propagate": ("alpha", "beta", "theta", "hbar", "c_alpha", "t", "x_min", "x_max", "nx",
                  "dampings", "width", "center", "kick"),
    "linear-space": ("alpha", "theta", "hbar", "c_alpha", "slope_a", "energy_e",
                     "x_min", "x_max", "nx", "dampings"),
    "linear-time": ("beta", "energy_e", "hbar", "f0", "t_min", "t_max", "nt"),
    "foxh": ("preset", "alpha", "beta", "theta", "m", "n", "upper", "lower", "phase",
             "x_min", "x_max", "nx"),
    "ml": ("beta", "phase", "x_min", "x_max", "nx"),
    "wright": ("beta", "phase", "x_min", "x_max", "nx"),
    "validate": (),
}
COMMON = ("method", "format", "output", "tolerance")


@dataclass
class RunConfig:
    command: str
    settings: Dict = field(default_factory=dict)

    def get(self, key):
        return self.settings.get(key, DEFAULTS[key])

    @property
    def method(self) -> str:
        return self.get("method")

    @property
    def fmt(self) -> str:
        return self.get("format")

    @property
    def output_path(self) -> Optional[str]:
        return self.get("output")

    def grid(self, prefix: str) -> np.ndarray:
        lo, hi = float(self.get(f"{prefix}_min")), float(self.get(f"{prefix}_max"))
        count = int(self.get("nx" if prefix == "x" else "nt"))
        if count < 2:
            raise DomainError(f"grid count >= 2 violated (count={count})")
        if not lo < hi:
            raise DomainError(f"grid min < max violated ({lo} >= {hi})")
        return np.linspace(lo, hi, count)

    def fractional(self) -> FractionalParams:
        return FractionalParams(float(self.get("alpha")), float(self.get("beta")), float(self.get("theta")))

    def physical(self, **extra) -> PhysicalParams:
        return PhysicalParams(hbar=float(self.get("hbar")), c_alpha=float(self.get("c_alpha")), **extra)

    def to_dict(self) -> Dict:
        keys = USED[self.command] + COMMON
        return {"command": self.command, **{k: self.get(k) for k in keys}}

    @classmethod
    def from_dict(cls, data: Dict) -> "RunConfig":
        data = dict(data)
        command = data.pop("command", None)
        if command not in COMMANDS:
            raise DomainError(f"unknown or missing command {command!r}")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise DomainError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls(command, data)
        if cfg.method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}")
        if cfg.fmt not in ("csv", "json"):
            raise DomainError("format must be csv or json")
        return cfg


@dataclass
class Table:
    columns: List[str]
    rows: List[List[float]]
    meta: Dict = field(default_factory=dict)
    breach: bool = False


# ---------------------------------------------------------------------------
# output


def _fmt(v: float) -> str:
    return "%.17g" % v


def render(table: Table, cfg: RunConfig) -> str:
    if cfg.fmt == "json":
        doc = {"meta": {"schema": SCHEMA, "config": cfg.to_dict(), "columns": table.columns, **table.meta},
               "rows": table.rows}
        return json.dumps(doc, sort_keys=True, allow_nan=True) + "\n"
    buf = io.StringIO(newline="")
    buf.write(f"# schema={SCHEMA}\n")
    buf.write(",".join(table.columns) + "\n")
    for row in table.rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _rel(a: complex, b: complex) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def _pair_table(key: str, grid, first: Optional[Callable], second: Optional[Callable],
                names=("foxh", "oracle"), tol: float = 1e-3) -> Table:
    cols = [key]
    if first:
        cols += [f"re_{names[0]}", f"im_{names[0]}"]
    if second:
        cols += [f"re_{names[1]}", f"im_{names[1]}"]
    both = first is not None and second is not None
    if both:
        cols.append("rel_diff")
    rows, worst = [], 0.0
    for g in grid:
        row = [float(g)]
        a = b = None
        if first:
            a = complex(first(float(g)))
            row += [a.real, a.imag]
        if second:
            b = complex(second(float(g)))
            row += [b.real, b.imag]
        if both:
            d = _rel(a, b)
            worst = max(worst, d)
            row.append(d)
        rows.append(row)
    meta = {}
    if both:
        meta["max_rel_diff"] = worst
        meta["tolerance"] = tol
    return Table(cols, rows, meta, breach=both and not worst <= tol)


def _arms(cfg: RunConfig, foxh_fn, oracle_fn):
    m = cfg.method
    return (foxh_fn if m in ("foxh", "both") else None,
            oracle_fn if m in ("oracle", "both") else None)


# ---------------------------------------------------------------------------
# commands


def _cmd_greens(cfg: RunConfig) -> Table:
    fp, pp = cfg.fractional(), cfg.physical()
    t = float(cfg.get("t"))
    gf = GreenEval(fp, pp)
    go = GreenEval(fp, pp, branch=Branch.ORACLE, dampings=tuple(cfg.get("dampings")))
    errors = []

    def foxh(x):
        r = green_foxh_eval(gf, x, t)
        errors.append(r.error)
        return r.value

    f, o = _arms(cfg, foxh, lambda x: green_function(go, x, t))
    table = _pair_table("x", cfg.grid("x"), f, o, tol=float(cfg.get("tolerance")))
    if errors:
        table.meta["max_foxh_error"] = max(errors)
    return table


def _initial_packet(cfg: RunConfig, x: np.ndarray) -> np.ndarray:
    w = float(cfg.get("width"))
    if not w > 0:
        raise DomainError("width > 0 violated")
    x0, k = float(cfg.get("center")), float(cfg.get("kick"))
    return np.exp(-((x - x0) ** 2) / (2 * w * w) + 1j * k * x)


def _cmd_propagate(cfg: RunConfig) -> Table:
    fp, pp = cfg.fractional(), cfg.physical()
    t = float(cfg.get("t"))
    x = cfg.grid("x")
    f = SampledField(x, _initial_packet(cfg, x))
    results = {}
    if cfg.method in ("foxh", "both"):
        results["foxh"] = propagate(GreenEval(fp, pp), f, t).values
    if cfg.method in ("oracle", "both"):
        go = GreenEval(fp, pp, branch=Branch.ORACLE, dampings=tuple(cfg.get("dampings")))
        results["oracle"] = propagate(go, f, t).values
    lookup = {name: dict(zip(x.tolist(), vals)) for name, vals in results.items()}
    first = (lambda v: lookup["foxh"][v]) if "foxh" in lookup else None
    second = (lambda v: lookup["oracle"][v]) if "oracle" in lookup else None
    return _pair_table("x", x, first, second, tol=float(cfg.get("tolerance")))


def _cmd_linear_space(cfg: RunConfig) -> Table:
    fp = FractionalParams(float(cfg.get("alpha")), 1.0, float(cfg.get("theta")))
    pp = cfg.physical(slope_a=float(cfg.get("slope_a")), energy_e=float(cfg.get("energy_e")))
    spec = LinearPotentialSpec(fp, pp)
    d = tuple(cfg.get("dampings"))
    f, o = _arms(cfg, lambda x: phi_space_eval(spec, x).value, lambda x: phi_space_oracle(spec, x, d))
    return _pair_table("x", cfg.grid("x"), f, o, tol=float(cfg.get("tolerance")))


def _cmd_linear_time(cfg: RunConfig) -> Table:
    f0 = cfg.get("f0")
    f0 = complex(*f0) if isinstance(f0, (list, tuple)) else complex(f0)
    spec = TimeFractionalSpec(float(cfg.get("beta")), float(cfg.get("energy_e")),
                              float(cfg.get("hbar")), f0)
    f, o = _arms(cfg, lambda t: time_solution(spec, t), lambda t: mittag_leffler_solution(spec, t))
    return _pair_table("t", cfg.grid("t"), f, o, names=("h", "ml"), tol=float(cfg.get("tolerance")))


def _parse_pairs(text) -> list:
    if isinstance(text, list):
        return [tuple(map(float, p)) for p in text]
    pairs = []
    for chunk in str(text).split(";"):
        chunk = chunk.strip()
        if chunk:
            a, b = chunk.split(",")
            pairs.append((float(a), float(b)))
    return pairs


def foxh_preset(cfg: RunConfig) -> HFunctionSpec:
    preset = cfg.get("preset")
    if preset == "custom":
        m, n = cfg.get("m"), cfg.get("n")
        if m is None or n is None or cfg.get("upper") is None or cfg.get("lower") is None:
            raise DomainError("custom preset needs --m, --n, --upper and --lower")
        return HFunctionSpec.from_pairs(int(m), int(n), _parse_pairs(cfg.get("upper")),
                                        _parse_pairs(cfg.get("lower")))
    fp = cfg.fractional()
    if preset == "green":
        validate_params(fp, Regime.GENERAL)
        return green_spec(fp.alpha, tau_of(fp, 1.0))
    if preset == "mellin":
        validate_params(fp, Regime.GENERAL)
        return mellin_form_spec(fp.alpha, tau_of(fp, 1.0))
    if preset == "linear":
        validate_params(fp, Regime.LINEAR_POTENTIAL)
        return linear_spec(fp.alpha, fp.theta)
    if preset == "fbeta":
        if not 0 < fp.beta < 1:
            raise DomainError(f"0 < beta < 1 violated (beta={fp.beta})")
        return f_beta_spec(fp.beta)
    raise DomainError(f"unknown preset {preset!r}")


def _cmd_foxh(cfg: RunConfig) -> Table:
    spec = foxh_preset(cfg)
    rot = cmath.exp(1j * float(cfg.get("phase")))
    errors = []

    def contour(x):
        r = fox_h_eval(spec, x * rot)
        errors.append(r.rel_error)
        return r.value

    def series(x):
        return fox_h_eval(spec, x * rot, method="series").value

    f, o = _arms(cfg, contour, series)
    table = _pair_table("x", cfg.grid("x"), f, o, tol=float(cfg.get("tolerance")))
    if errors:
        table.meta["max_rel_error_estimate"] = max(errors)
    return table


def _cmd_ml(cfg: RunConfig) -> Table:
    beta = float(cfg.get("beta"))
    rot = cmath.exp(1j * float(cfg.get("phase")))
    f, o = _arms(cfg, lambda x: mittag_leffler(beta, x * rot),
                 lambda x: _ml_series(beta, complex(x * rot), DEFAULT_SERIES) if beta < 1 else cmath.exp(x * rot))
    return _pair_table("x", cfg.grid("x"), f, o, names=("ml", "series"), tol=float(cfg.get("tolerance")))


def _cmd_wright(cfg: RunConfig) -> Table:
    nu = float(cfg.get("beta"))
    rot = cmath.exp(1j * float(cfg.get("phase")))
    f, o = _arms(cfg, lambda x: wright_m(nu, x * rot), lambda x: wright_m(nu, x * rot, form="sine"))
    return _pair_table("x", cfg.grid("x"), f, o, names=("direct", "sine"), tol=float(cfg.get("tolerance")))


def _cmd_validate(cfg: RunConfig) -> Table:
    from .validation import run_suite

    results = run_suite()
    rows = [[i, float(r.passed), r.measure, r.bound] for i, r in enumerate(results)]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.measure:.3g} (bound {r.bound:.3g})",
              file=sys.stderr)
    meta = {"properties": [r.name for r in results]}
    return Table(["index", "passed", "measure", "bound"], rows, meta,
                 breach=not all(r.passed for r in results))


HANDLERS = {
    "greens": _cmd_greens, "propagate": _cmd_propagate, "linear-space": _cmd_linear_space,
    "linear-time": _cmd_linear_time, "foxh": _cmd_foxh, "ml": _cmd_ml, "wright": _cmd_wright,
    "validate": _cmd_validate,
}


def run(cfg: RunConfig) -> int:
    """Execute ``cfg``; returns the exit status and writes the table."""
    try:
        table = HANDLERS[cfg.command](cfg)
    except (DomainError, BranchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ConvergenceError as exc:
        print(f"convergence failure: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    text = render(table, cfg)
    if cfg.output_path:
        with open(cfg.output_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if table.breach:
        worst = table.meta.get("max_rel_diff")
        if worst is not None:
            print(f"tolerance breach: max rel_diff {worst:.3g} > {table.meta['tolerance']:.3g}",
                  file=sys.stderr)
        return EXIT_TOLERANCE
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _float_list(text: str) -> list:
    return [float(v) for v in text.split(",") if v.strip()]


def _add_options(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    g = p.add_argument_group("parameters")
    g.add_argument("--alpha", type=float, default=S, help="space order (default 1.5)")
    g.add_argument("--beta", type=float, default=S, help="time order; Wright order for `wright` (default 1)")
    g.add_argument("--theta", type=float, default=S, help="skewness (default 0)")
    g.add_argument("--hbar", type=float, default=S, help="default 1")
    g.add_argument("--c-alpha", dest="c_alpha", type=float, default=S, help="default 1")
    g.add_argument("--slope", dest="slope_a", type=float, default=S, help="potential slope A (default 1)")
    g.add_argument("--energy", dest="energy_e", type=float, default=S, help="separation constant E (default 1)")
    g.add_argument("--f0", type=complex, default=S, help="initial value f(0) (default 1)")
    g.add_argument("--t", type=float, default=S, help="time for greens/propagate (default 1)")
    g = p.add_argument_group("grid")
    g.add_argument("--x-min", dest="x_min", type=float, default=S)
    g.add_argument("--x-max", dest="x_max", type=float, default=S)
    g.add_argument("--nx", type=int, default=S)
    g.add_argument("--t-min", dest="t_min", type=float, default=S)
    g.add_argument("--t-max", dest="t_max", type=float, default=S)
    g.add_argument("--nt", type=int, default=S)
    g = p.add_argument_group("evaluation")
    g.add_argument("--method", choices=METHODS, default=S, help="default foxh")
    g.add_argument("--tolerance", type=float, default=S, help="max rel_diff for --method both (default 1e-3)")
    g.add_argument("--dampings", type=_float_list, default=S,
                   help="oracle dampings to extrapolate from, e.g. 0.2,0.1,0.05 (default: undamped)")
    g.add_argument("--width", type=float, default=S, help="packet width for propagate")
    g.add_argument("--center", type=float, default=S, help="packet centre for propagate")
    g.add_argument("--kick", type=float, default=S, help="packet momentum for propagate")
    g.add_argument("--preset", choices=("green", "mellin", "linear", "fbeta", "custom"), default=S)
    g.add_argument("--m", type=int, default=S)
    g.add_argument("--n", type=int, default=S)
    g.add_argument("--upper", default=S, help='pairs "a1,A1;a2,A2"')
    g.add_argument("--lower", default=S, help='pairs "b1,B1;b2,B2"')
    g.add_argument("--phase", type=float, default=S, help="argument phase for foxh/ml/wright grids")
    g = p.add_argument_group("output")
    g.add_argument("--format", choices=("csv", "json"), default=S)
    g.add_argument("--output", default=S, help="output file (default stdout)")
    g.add_argument("--config", default=S, help="JSON config file")
    g.add_argument("--dump-config", dest="dump_config", action="store_true", default=S,
                   help="print the resolved config as JSON and exit")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fracschro",
        description="Tables for the space-time fractional Schrodinger equation. "
                    "Defaults: hbar = C_alpha = 1, f(0) = 1.",
        epilog="exit codes: 2 domain error, 3 convergence failure, 4 tolerance breach. "
               "FRACSCHRO_THREADS caps the thread pool.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_options(p)
    sub = p.add_subparsers(dest="command")
    for name in COMMANDS:
        _add_options(sub.add_parser(name))
    return p


def resolve(argv: Optional[Sequence[str]] = None) -> tuple:
    ns = vars(build_parser().parse_args(argv))
    dump = ns.pop("dump_config", False)
    path = ns.pop("config", None)
    data = {}
    if path:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise DomainError(f"cannot read config {path}: {exc}")
        if not isinstance(data, dict):
            raise DomainError("config must be a JSON object")
    command = ns.pop("command", None) or data.get("command")
    data.update({k: v for k, v in ns.items() if v is not None})
    data["command"] = command
    if isinstance(data.get("f0"), complex):
        data["f0"] = [data["f0"].real, data["f0"].imag]
    return RunConfig.from_dict(data), dump


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg, dump = resolve(argv)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    if dump:
        sys.stdout.write(json.dumps(cfg.to_dict(), sort_keys=True, indent=2) + "\n")
        return EXIT_OK
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
