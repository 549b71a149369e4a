"""Command-line front end.

    gaussq sum    --family s1 --rho 3 --q 2
    gaussq table  --family s2 --kappa 1..6 --q 0.5,2 --format csv
    gaussq verify --suite all
    gaussq coeffs --source entry7-1 --q 2 --n 7

Exit codes: 0 success, 1 internal error, 2 divergent result (``sum``),
64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

from . import __version__, cfrac, verify
from .errors import DegenerateHankelError, DomainError, GaussQError
from .numerics import MAX_PRECISION, MIN_PRECISION, format_fixed, parse_rational, to_real
from .series import Family, SeriesSpec, Status, SumResult

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_DIVERGENT = 2
EXIT_USAGE = 64

ROW_KEYS = ("family", "param", "q", "value", "status", "gap", "terms")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    precision: int = 50
    max_terms: int = 100_000
    tol: Fraction | None = None
    format: str = "text"
    output: str | None = None
    no_meta: bool = False
    digits: int | None = None
    jobs: int = 1

    def validate(self) -> "RunConfig":
        if not MIN_PRECISION <= self.precision <= MAX_PRECISION:
            raise UsageError(f"--precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}]")
        if self.max_terms < 100:
            raise UsageError("--max-terms must be >= 100")
        if self.tol is not None and self.tol <= 0:
            raise UsageError("--tol must be positive")
        if self.format not in ("text", "json", "csv"):
            raise UsageError("--format must be text, json or csv")
        if self.digits is not None and not 1 <= self.digits <= self.precision - 10:
            raise UsageError(f"--digits must lie in [1, {self.precision - 10}]")
        if self.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return self

    @property
    def shown_digits(self) -> int:
        return self.digits if self.digits is not None else min(12, self.precision - 10)


_CASTS = {
    "precision": int,
    "max_terms": int,
    "tol": lambda v: v if isinstance(v, Fraction) else parse_rational(v),
    "format": str,
    "output": str,
    "digits": int,
    "jobs": int,
    "no_meta": lambda v: v if isinstance(v, bool) else str(v).strip().lower() in ("1", "true", "yes", "on"),
}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment. Keys match the long flags."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in _CASTS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def build_config(ns: argparse.Namespace) -> RunConfig:
    values = {}
    if getattr(ns, "config", None):
        values.update(read_config_file(ns.config))
    for f in fields(RunConfig):
        if f.name in vars(ns):
            values[f.name] = getattr(ns, f.name)
    try:
        kwargs = {k: _CASTS[k](v) for k, v in values.items()}
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from exc
    return RunConfig(**kwargs).validate()


# --- argument parsing -------------------------------------------------------


def _global_options() -> argparse.ArgumentParser:
    g = _Parser(add_help=False)
    s = argparse.SUPPRESS
    g.add_argument("--precision", type=int, default=s, help="working precision in decimal digits (30..200, default 50)")
    g.add_argument("--max-terms", dest="max_terms", type=int, default=s, help="term budget per series (default 100000)")
    g.add_argument("--tol", type=parse_rational, default=s, help="tolerance for verify checks (default 10^-(P-10))")
    g.add_argument("--format", choices=("text", "json", "csv"), default=s)
    g.add_argument("--output", metavar="PATH", default=s, help="write to PATH instead of stdout")
    g.add_argument("--config", metavar="PATH", default=s, help="key=value file mirroring these flags")
    g.add_argument("--no-meta", dest="no_meta", action="store_const", const=True, default=s, help="omit the metadata header")
    g.add_argument("--digits", type=int, default=s, help="digits after the point (default min(12, P-10))")
    g.add_argument("--jobs", type=int, default=s, help="worker threads for table cells (default 1)")
    return g


def _int_range(text: str) -> list[int]:
    """``"3..8"``, ``"3,5,7"`` or ``"4"``."""
    try:
        if ".." in text:
            lo, hi = (int(v) for v in text.split("..", 1))
            values = list(range(lo, hi + 1))
        else:
            values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad integer range {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _q_list(text: str) -> list[str]:
    items = [v.strip() for v in text.split(",") if v.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty q list")
    for v in items:
        try:
            parse_rational(v)
        except DomainError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from exc
    return items


def make_parser() -> argparse.ArgumentParser:
    common = _global_options()
    parser = _Parser(prog="gaussq", description=__doc__.split("\n\n")[0], parents=[common])
    parser.add_argument("--version", action="version", version=f"gaussq {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("sum", parents=[common], help="value of one S1/S2 series")
    p.add_argument("--family", choices=("s1", "s2"), required=True)
    p.add_argument("--rho", type=int)
    p.add_argument("--kappa", type=int)
    p.add_argument("--q", required=True)

    p = sub.add_parser("table", parents=[common], help="a grid of S1/S2 values")
    p.add_argument("--family", choices=("s1", "s2"), required=True)
    p.add_argument("--rho", type=_int_range)
    p.add_argument("--kappa", type=_int_range)
    p.add_argument("--q", type=_q_list, required=True)

    p = sub.add_parser("verify", parents=[common], help="run an identity battery")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")

    p = sub.add_parser("coeffs", parents=[common], help="list continued-fraction coefficients")
    p.add_argument("--source", choices=("entry7-1", "entry7-2", "gauss4", "ramanujan", "muir"), required=True)
    p.add_argument("--q", default=None)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kappa", type=int, default=1)
    p.add_argument("--a", default="0")
    p.add_argument("--lam", default="1")
    p.add_argument("--b", default="0")
    p.add_argument("--series", default=None, help='"qpoch:q=1/2,kappa=2", "triangular:q=1/2" or "list:1,1/2,..."')
    return parser


# --- rendering --------------------------------------------------------------


def _fmt_q(q: str, digits: int) -> str:
    r = parse_rational(q)
    d = r.denominator
    for f in (2, 5):
        while d % f == 0:
            d //= f
    if d == 1:
        return format(Decimal(r.numerator) / Decimal(r.denominator), "f")
    return format_fixed(to_real(r, digits + 10), digits)


def result_row(family: str, param: int, q: str, res: SumResult | None, digits: int) -> dict:
    if res is None:
        return dict(family=family, param=param, q=_fmt_q(q, digits), value=None, status="error", gap=None, terms=0)
    return dict(
        family=family,
        param=param,
        q=_fmt_q(q, digits),
        value=None if res.value is None else format_fixed(res.value, digits),
        status=res.status.value,
        gap=None if res.gap is None else format_fixed(res.gap, digits),
        terms=res.terms_used,
    )


def _csv(rows: list[dict], keys) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(keys), lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for r in rows:
        w.writerow({k: "" if r.get(k) is None else r[k] for k in keys})
    return buf.getvalue()


def _text_table(rows: list[dict], keys) -> str:
    cells = [[k for k in keys]] + [["-" if r.get(k) is None else str(r[k]) for k in keys] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(keys))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip() + "\n" for row in cells)


def _meta(cfg: RunConfig) -> str:
    if cfg.no_meta:
        return ""
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return f"# gaussq {__version__} precision={cfg.precision} generated={stamp}\n"


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


# --- commands ---------------------------------------------------------------


def _spec_from(ns) -> SeriesSpec:
    if ns.family == "s1":
        if ns.rho is None or ns.kappa is not None:
            raise UsageError("--family s1 takes --rho")
        param = ns.rho
    else:
        if ns.kappa is None or ns.rho is not None:
            raise UsageError("--family s2 takes --kappa")
        param = ns.kappa
    try:
        q = parse_rational(ns.q)
        if q <= 0 or q == 1:
            raise UsageError(f"q must be positive and different from 1, got {ns.q}")
        return SeriesSpec(Family(ns.family), param, ns.q)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc


def cmd_sum(ns, cfg: RunConfig) -> int:
    spec = _spec_from(ns)
    res = spec.evaluate(cfg.precision, cfg.max_terms)
    row = result_row(ns.family, spec.param, ns.q, res, cfg.shown_digits)
    row["direction"] = None if res.direction is None else res.direction.value
    if cfg.format == "json":
        text = json.dumps(row) + "\n"
    elif cfg.format == "csv":
        text = _csv([row], ROW_KEYS + ("direction",))
    else:
        text = "".join(f"{k}={'-' if row[k] is None else row[k]}\n" for k in ROW_KEYS + ("direction",))
    _emit(text, cfg)
    return EXIT_DIVERGENT if res.status is Status.DIVERGENT else EXIT_OK


def _cell(args):
    family, param, q, cfg = args
    try:
        return SeriesSpec(Family(family), param, q).evaluate(cfg.precision, cfg.max_terms)
    except GaussQError:
        return None


def compute_table(family: str, params: list[int], qs: list[str], cfg: RunConfig) -> list[dict]:
    """Rows ordered by parameter, then by numeric q; cells may run on threads."""
    params = sorted(set(params))
    qs = sorted(dict.fromkeys(qs), key=parse_rational)
    jobs = [(family, p, q, cfg) for p in params for q in qs]
    if cfg.jobs > 1:
        with ThreadPoolExecutor(cfg.jobs) as pool:
            results = list(pool.map(_cell, jobs))
    else:
        results = [_cell(j) for j in jobs]
    return [result_row(family, p, q, r, cfg.shown_digits) for (_, p, q, _), r in zip(jobs, results)]


def cmd_table(ns, cfg: RunConfig) -> int:
    params = ns.rho if ns.family == "s1" else ns.kappa
    other = ns.kappa if ns.family == "s1" else ns.rho
    if params is None or other is not None:
        raise UsageError(f"--family {ns.family} takes --{'rho' if ns.family == 's1' else 'kappa'}")
    low = 3 if ns.family == "s1" else 1
    if min(params) < low:
        raise UsageError(f"{'rho' if ns.family == 's1' else 'kappa'} must be >= {low}")
    for q in ns.q:
        r = parse_rational(q)
        if r <= 0 or r == 1:
            raise UsageError(f"q must be positive and different from 1, got {q}")
    rows = compute_table(ns.family, params, ns.q, cfg)
    if cfg.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif cfg.format == "csv":
        text = _csv(rows, ROW_KEYS)
    else:
        text = _meta(cfg) + _text_table(rows, ROW_KEYS)
    _emit(text, cfg)
    return EXIT_ERROR if any(r["status"] == "error" for r in rows) else EXIT_OK


def cmd_verify(ns, cfg: RunConfig) -> int:
    checks = verify.run_suite(ns.suite, cfg.precision, cfg.tol)
    rows = [
        {
            "check": c.name,
            "passed": c.passed,
            "max_dev": None if c.max_dev is None else f"{float(c.max_dev):.3e}",
        }
        for c in checks
    ]
    if cfg.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif cfg.format == "csv":
        text = _csv(rows, ("check", "passed", "max_dev"))
    else:
        lines = [
            f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}" + (f"  max_dev={r['max_dev']}" if r["max_dev"] else "")
            for r in rows
        ]
        lines.append(f"{sum(r['passed'] for r in rows)}/{len(rows)} checks passed")
        text = _meta(cfg) + "\n".join(lines) + "\n"
    _emit(text, cfg)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_ERROR


def parse_series(text: str, order: int) -> list[Fraction]:
    """Series coefficients from ``kind:key=value,...`` (see ``--series``)."""
    kind, _, rest = text.partition(":")
    if kind == "list":
        c = [parse_rational(v) for v in rest.split(",") if v.strip()]
        if len(c) < order + 1:
            raise UsageError(f"need {order + 1} coefficients, got {len(c)}")
        return c[: order + 1]
    opts = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, _, value = item.partition("=")
        opts[key.strip()] = value.strip()
    if "q" not in opts:
        raise UsageError(f"series {text!r} needs q=")
    q = parse_rational(opts["q"])
    if kind == "qpoch":
        return cfrac.qpoch_series(q, int(opts.get("kappa", 1)), order)
    if kind == "triangular":
        return cfrac.triangular_series(q, order)
    raise UsageError(f"unknown series kind {kind!r}")


def _fmt_rat(v: Fraction) -> str:
    return str(Fraction(v))


def cmd_coeffs(ns, cfg: RunConfig) -> int:
    if ns.n < 1:
        raise UsageError("--n must be >= 1")
    notice = None
    try:
        q = None if ns.q is None else parse_rational(ns.q)
        if ns.source == "muir":
            if ns.series is None:
                raise UsageError("--source muir needs --series")
            if ns.n > cfrac.MAX_MUIR_ORDER:
                raise UsageError(f"--n must be <= {cfrac.MAX_MUIR_ORDER} for muir")
            try:
                coeffs = cfrac.muir_rogers(parse_series(ns.series, ns.n), ns.n)
            except DegenerateHankelError as exc:
                coeffs = exc.partial
                notice = f"truncated: degenerate Hankel minor at index {exc.index}"
        else:
            if q is None:
                raise UsageError(f"--source {ns.source} needs --q")
            if ns.source == "entry7-1":
                coeffs = cfrac.gauss_entry7_coeffs(1, q, ns.n)
            elif ns.source == "entry7-2":
                coeffs = cfrac.gauss_entry7_coeffs(2, q, ns.n)
            elif ns.source == "gauss4":
                coeffs = cfrac.gauss4_coeffs(ns.kappa, q, ns.n)
            else:
                a, lam, b = (parse_rational(v) for v in (ns.a, ns.lam, ns.b))
                coeffs = cfrac.ramanujan_cf_coeffs(a, lam, b, q, ns.n)
    except DomainError as exc:
        raise UsageError(str(exc)) from exc
    values = [_fmt_rat(c) for c in coeffs]
    if cfg.format == "json":
        text = json.dumps({"source": ns.source, "coefficients": values, "notice": notice}) + "\n"
    elif cfg.format == "csv":
        text = _csv([{"index": i, "value": v} for i, v in enumerate(values)], ("index", "value"))
        if notice:
            text += f"# {notice}\n"
    else:
        text = " ".join(values) + "\n" + (f"# {notice}\n" if notice else "")
    _emit(text, cfg)
    return EXIT_OK


COMMANDS = {"sum": cmd_sum, "table": cmd_table, "verify": cmd_verify, "coeffs": cmd_coeffs}


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        ns = parser.parse_args(argv)
        cfg = build_config(ns)
        return COMMANDS[ns.command](ns, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"gaussq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GaussQError as exc:
        print(f"gaussq: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
