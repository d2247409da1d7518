"""Command-line interface: ``smoothgaps <command> [options]``.

Exit codes: 0 success, 1 usage or configuration error, 2 capacity error,
3 construction failed. Errors go to stderr as one JSON record.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from . import abc as abc_mod
from .arith import INT64_MAX, floor_exp, sieve_primes
from .bounds import (
    BoundParams,
    delta_log,
    eq22_bound_log,
    matveev_rhs,
    thm1_lower_log,
    thm1_upper_log,
    thm2_lower_log,
)
from .errors import CapacityError, ConstructionFailed, SmoothGapsError
from .gaps import GAP_COLUMNS, iter_gaps, min_gap_scan
from .pigeonhole import find_small_gap
from .smooth import DEFAULT_SCAN_SEGMENT, SmoothnessBound, enumerate_adaptive, ennola_main_term_log, psi_exact

SCHEMA_VERSION = 1
THREADS_ENV = "SMOOTHGAPS_THREADS"

COMMANDS = ("sequence", "gaps", "scan", "psi", "bounds", "pigeonhole", "abc", "report")


class UsageError(SmoothGapsError):
    pass


@dataclass
class RunConfig:
    command: str
    bound: dict | None = None
    limit: int | None = None
    log_x: list[float] = field(default_factory=list)
    x: int | None = None
    y: float | None = None
    n: int | None = None
    y_next: float | None = None
    r: int | None = None
    r_prime: int | None = None
    s: int | None = None
    heights: list[float] = field(default_factory=list)
    B: int | None = None
    top: int = 10
    n_floor: int = 16
    numeric: str = "64"
    params: dict = field(default_factory=lambda: asdict(BoundParams()))
    format: str = "csv"
    out: str | None = None
    segment: int = DEFAULT_SCAN_SEGMENT
    threads: int = 1

    def canonical(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_canonical(cls, text: str) -> RunConfig:
        return cls(**json.loads(text))

    @property
    def bound_obj(self) -> SmoothnessBound:
        if self.bound is None:
            raise UsageError(f"command {self.command!r} needs --bound")
        return SmoothnessBound.from_dict(self.bound)

    @property
    def bound_params(self) -> BoundParams:
        return BoundParams(**self.params)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--bound", help="const:Y | logmul:A | slow:A | powlog:A,B | step:FILE")
    common.add_argument("--limit", type=int)
    common.add_argument("--log-x", type=float, nargs="+", default=[])
    common.add_argument("--numeric", choices=["64", "big"], default="64")
    for name, flag in (("c", "--c"), ("c0", "--c0"), ("c1", "--c1"), ("c2", "--c2"),
                       ("epsilon", "--eps"), ("c1_eps", "--ceps"), ("c_abc", "--cabc")):
        common.add_argument(flag, dest=name, type=float)
    common.add_argument("--format", choices=["csv", "jsonl"], default="csv")
    common.add_argument("--out")
    common.add_argument("--segment", type=int, default=DEFAULT_SCAN_SEGMENT)
    common.add_argument("--threads", type=int)

    parser = _Parser(prog="smoothgaps", description="Gaps between integers with small prime factors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("sequence", parents=[common], help="terms of the adaptive sequence")
    sub.add_parser("gaps", parents=[common], help="one row per consecutive pair")
    p = sub.add_parser("scan", parents=[common], help="minimal gap / maximal kappa summary")
    p.add_argument("--n-floor", type=int, default=16)
    p = sub.add_parser("psi", parents=[common], help="exact Psi(x,y) with the Ennola main term")
    p.add_argument("--x", type=int)
    p.add_argument("--y", type=float, required=True)
    p = sub.add_parser("bounds", parents=[common], help="evaluate the bound formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--y", type=float, help="y(n_i); default 3")
    p.add_argument("--y-next", type=float, help="y(n_{i+1}); default --y")
    p.add_argument("--r", type=int, help="pi(y(sqrt n_i)); default pi(y)")
    p.add_argument("--r-prime", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--heights", type=float, nargs="+", default=[])
    p.add_argument("--B", type=int)
    sub.add_parser("pigeonhole", parents=[common], help="dyadic pigeonhole at each --log-x")
    p = sub.add_parser("abc", parents=[common], help="top abc qualities over consecutive pairs")
    p.add_argument("--top", type=int, default=10)
    sub.add_parser("report", parents=[common], help="gaps against bound curves, plot-ready")
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    overrides = {k: getattr(ns, k) for k in ("c", "c0", "c1", "c2", "epsilon", "c1_eps", "c_abc")
                 if getattr(ns, k) is not None}
    params = asdict(BoundParams(**overrides))
    threads = ns.threads if ns.threads is not None else int(os.environ.get(THREADS_ENV, "1"))
    cfg = RunConfig(
        command=ns.command,
        bound=SmoothnessBound.parse(ns.bound).to_dict() if ns.bound else None,
        limit=ns.limit,
        log_x=list(ns.log_x),
        numeric=ns.numeric,
        params=params,
        format=ns.format,
        out=ns.out,
        segment=ns.segment,
        threads=threads,
    )
    for name in ("x", "y", "n", "y_next", "r", "r_prime", "s", "B", "top", "n_floor"):
        if hasattr(ns, name) and getattr(ns, name) is not None:
            setattr(cfg, name, getattr(ns, name))
    if hasattr(ns, "heights"):
        cfg.heights = list(ns.heights)
    return cfg


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v) if isinstance(v, float) else str(v)


class Writer:
    """Emit rows as CSV (config as a leading comment) or JSON lines."""

    def __init__(self, stream, cfg: RunConfig, kind: str, columns: Sequence[str]):
        self.stream, self.kind, self.columns = stream, kind, tuple(columns)
        self.fmt = cfg.format
        if self.fmt == "csv":
            stream.write(f"# config: {cfg.canonical()}\n")
            self.csv = csv.writer(stream, lineterminator="\n")
            self.csv.writerow(self.columns)
        else:
            self._json({"type": "config", "config": json.loads(cfg.canonical())})

    def _json(self, rec: dict) -> None:
        self.stream.write(json.dumps({"schema_version": SCHEMA_VERSION, **rec}) + "\n")

    def row(self, values: Iterable) -> None:
        values = list(values)
        if self.fmt == "csv":
            self.csv.writerow([_fmt(v) for v in values])
        else:
            self._json({"type": self.kind, **dict(zip(self.columns, map(_json_safe, values)))})


def _json_safe(v):
    # JSON readers commonly lose precision past 64 bits
    if isinstance(v, int) and not isinstance(v, bool) and abs(v) > INT64_MAX:
        return str(v)
    return v


def _limit(cfg: RunConfig) -> int:
    if cfg.limit is None:
        raise UsageError(f"command {cfg.command!r} needs --limit")
    return cfg.limit


def _sequence(cfg: RunConfig):
    return enumerate_adaptive(
        cfg.bound_obj, _limit(cfg), segment=cfg.segment, threads=cfg.threads, numeric=cfg.numeric
    )


def cmd_sequence(cfg: RunConfig, out) -> None:
    seq = _sequence(cfg)
    w = Writer(out, cfg, "term", ("i", "n", "p_of_n"))
    for i, (n, p) in enumerate(zip(seq.terms, seq.gpf), 1):
        w.row((i, int(n), int(p)))


def cmd_gaps(cfg: RunConfig, out) -> None:
    w = Writer(out, cfg, "gap", GAP_COLUMNS)
    for rec in iter_gaps(_sequence(cfg)):
        w.row(rec.as_row())


def cmd_scan(cfg: RunConfig, out) -> None:
    rep = min_gap_scan(cfg.bound_obj, _limit(cfg), cfg.n_floor, segment=cfg.segment,
                       threads=cfg.threads, numeric=cfg.numeric)
    d = rep.as_dict()
    w = Writer(out, cfg, "scan", tuple(d))
    w.row(json.dumps(v) if isinstance(v, (dict, list)) and cfg.format == "csv" else v for v in d.values())


def cmd_psi(cfg: RunConfig, out) -> None:
    if cfg.y is None:
        raise UsageError("psi needs --y")
    xs = [cfg.x] if cfg.x is not None else []
    xs += [floor_exp(L) for L in cfg.log_x]
    if cfg.limit is not None and not xs:
        xs = [cfg.limit]
    if not xs:
        raise UsageError("psi needs --x, --log-x or --limit")
    w = Writer(out, cfg, "psi", ("x", "y", "psi", "ennola_main", "in_regime"))
    for x in xs:
        est = ennola_main_term_log(math.log(x), cfg.y) if x >= 3 else None
        w.row((x, cfg.y, psi_exact(x, cfg.y), est.value if est else None, est.in_regime if est else False))


def cmd_bounds(cfg: RunConfig, out) -> None:
    params = cfg.bound_params
    n = cfg.n
    y = cfg.y if cfg.y is not None else 3.0
    y_next = cfg.y_next if cfg.y_next is not None else y
    table = sieve_primes(max(3, math.floor(max(y, y_next))))
    r = cfg.r if cfg.r is not None else table.count_upto(y)
    r_prime = cfg.r_prime if cfg.r_prime is not None else r
    s = cfg.s if cfg.s is not None else table.count_upto(y)
    rows = [
        ("delta_c_y_next", delta_log(params.c * y_next)),
        ("thm1_lower", thm1_lower_log(n, y_next, params)),
        ("thm1_upper", thm1_upper_log(n, y, r, params)),
        ("eq22", eq22_bound_log(n, r_prime, s, y)),
        ("thm2_lower", thm2_lower_log(n, y_next, params)),
    ]
    w = Writer(out, cfg, "bound", ("bound", "value_log", "value"))
    for name, lv in rows:
        w.row((name, lv, math.exp(lv) if lv < 709 else None))
    if cfg.heights:
        # already a bound on log|Lambda|, so no linear column
        w.row(("matveev_rhs", matveev_rhs(len(cfg.heights), cfg.heights, cfg.B or 3, params), None))


PIGEON_COLUMNS = ("log_X", "y_sqrtX", "r", "regime", "members", "chosen_h", "pair", "gap",
                  "gap_log", "eq22_rhs_log", "eq22_holds", "eq20_ratio", "fallback_margin_log", "bins")


def cmd_pigeonhole(cfg: RunConfig, out) -> None:
    if not cfg.log_x:
        raise UsageError("pigeonhole needs --log-x")
    w = Writer(out, cfg, "pigeonhole", PIGEON_COLUMNS)
    for L in cfg.log_x:
        d = find_small_gap(L, cfg.bound_obj, cfg.bound_params).as_dict()
        if cfg.format == "csv":
            d["pair"] = " ".join(d["pair"]) if d["pair"] else None
            d["bins"] = " ".join(f"{k}:{c}" for k, c in d["bins"])
        w.row(d[c] for c in PIGEON_COLUMNS)


def cmd_abc(cfg: RunConfig, out) -> None:
    top = abc_mod.scan_qualities(_sequence(cfg), cfg.top)
    w = Writer(out, cfg, "abc", abc_mod.ABC_COLUMNS)
    for tr in top:
        w.row(tr.as_row())


REPORT_COLUMNS = ("n_i", "n_next", "t", "t_log", "thm1_lower_log", "thm1_upper_log",
                  "eq22_log", "thm2_lower_log", "kappa")


def cmd_report(cfg: RunConfig, out) -> None:
    bound, params = cfg.bound_obj, cfg.bound_params
    seq = _sequence(cfg)
    table = sieve_primes(max(3, math.floor(bound(seq.limit))))
    w = Writer(out, cfg, "report", REPORT_COLUMNS)
    for rec in iter_gaps(seq):
        if rec.n_i < 3:
            continue
        y_next = bound(rec.n_next)
        s = table.count_upto(rec.y_at_n)
        w.row((
            rec.n_i, rec.n_next, rec.t, math.log(rec.t),
            thm1_lower_log(rec.n_i, y_next, params),
            thm1_upper_log(rec.n_i, rec.y_at_n, rec.r_at_sqrt, params),
            eq22_bound_log(rec.n_i, rec.r_at_sqrt, s, rec.y_at_n),
            thm2_lower_log(rec.n_i, y_next, params),
            rec.kappa,
        ))


HANDLERS = {
    "sequence": cmd_sequence,
    "gaps": cmd_gaps,
    "scan": cmd_scan,
    "psi": cmd_psi,
    "bounds": cmd_bounds,
    "pigeonhole": cmd_pigeonhole,
    "abc": cmd_abc,
    "report": cmd_report,
}


def run(cfg: RunConfig, out) -> None:
    HANDLERS[cfg.command](cfg, out)


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, CapacityError):
        return 2
    if isinstance(exc, ConstructionFailed):
        return 3
    return 1


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        # buffer so a failing command leaves no partial output file
        buf = io.StringIO()
        run(cfg, buf)
        if cfg.out:
            with open(cfg.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
    except (SmoothGapsError, ValueError, OSError) as exc:
        code = _exit_code(exc)
        kind = "usage" if code == 1 else type(exc).__name__
        sys.stderr.write(json.dumps({"error": kind, "type": type(exc).__name__, "message": str(exc), "exit_code": code}) + "\n")
        return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
