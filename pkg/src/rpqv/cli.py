"""Command-line front end: ``rpqv run | list | parse-r``."""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .checks import ASSERTED, AXES, CHECKS, Context, catalog
from .errors import ConfigError, DomainError, ParseError
from .rexpr import BUILTINS, builtin, custom, parse_r, to_source
from .scalar import BaseParams, format_scalar, half_integer, parse_rational

CSV_HEADER = ("check", "delta", "n", "m", "k", "degree", "residual", "status", "reason")
BASE_KEYS = ("s", "t", "p", "q", "mu", "nu", "g")
SWEEP_KEYS = {"check", "checks", "deformation", "expr", "convention", "normalization", "c2_hat",
              *BASE_KEYS, *AXES}
CONVENTIONS = ("output", "input")


@dataclass
class Sweep:
    name: str
    check: str
    deformations: tuple
    expr: Optional[str]
    base: dict
    grid: dict
    convention: str = "output"
    normalization: Fraction = Fraction(1)
    c2_hat: Fraction = Fraction(1)


@dataclass
class RunConfig:
    sweeps: list
    output_path: Optional[str] = None
    output_format: str = "json"
    findings_path: Optional[str] = None
    echo: dict = field(default_factory=dict)


# --- config parsing ------------------------------------------------------------------

def _line_index(text: str) -> dict:
    """``(section, key) -> line number`` for error positions."""
    out, section = {}, None
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            section = s[1:-1].strip()
        elif "=" in s and not s.startswith((";", "#")):
            out[(section, s.split("=", 1)[0].strip().lower())] = i
    return out


class _Reader:
    def __init__(self, text: str):
        self.parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=(";", "#"))
        try:
            self.parser.read_string(text)
        except configparser.Error as exc:
            raise ConfigError(f"malformed config: {exc.message if hasattr(exc, 'message') else exc}",
                              field=None, position=getattr(exc, "lineno", None)) from None
        self.lines = _line_index(text)

    def fail(self, section, key, message):
        return ConfigError(message, field=f"{section}.{key}", position=self.lines.get((section, key)))

    def get(self, section, key, default=None):
        if self.parser.has_section(section) and self.parser.has_option(section, key):
            return section, self.parser.get(section, key).strip()
        if self.parser.has_section("defaults") and self.parser.has_option("defaults", key):
            return "defaults", self.parser.get("defaults", key).strip()
        return None, default

    def rational(self, section, key, default=None):
        where, raw = self.get(section, key)
        if not raw:
            return default
        try:
            return parse_rational(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise self.fail(where, key, f"malformed rational {raw!r}: {exc}") from None

    def int_range(self, section, key):
        where, raw = self.get(section, key)
        if raw is None:
            return None
        try:
            if ".." in raw:
                lo, hi = (int(x.strip().replace("−", "-")) for x in raw.split("..", 1))
                return list(range(lo, hi + 1))
            return [int(x.strip().replace("−", "-")) for x in raw.split(",") if x.strip()]
        except ValueError:
            raise self.fail(where, key, f"malformed integer range {raw!r} (use 'a..b' or 'a, b, c')") from None

    def deltas(self, section, key="delta"):
        where, raw = self.get(section, key)
        if raw is None:
            return None
        out = []
        for part in raw.split(","):
            try:
                out.append(half_integer(parse_rational(part.strip())))
            except (ValueError, ZeroDivisionError, DomainError) as exc:
                raise self.fail(where, key, f"malformed half-integer {part.strip()!r}: {exc}") from None
        return out


def _parse_sweep(rd: _Reader, section: str, name: str, check: str) -> Sweep:
    if check not in CHECKS:
        raise rd.fail(section, "check", f"unknown check id {check!r}")
    spec = CHECKS[check]
    for key in rd.parser.options(section):
        if key not in SWEEP_KEYS:
            raise rd.fail(section, key, f"unknown key {key!r}")
    where, raw = rd.get(section, "deformation", "JS")
    defs = tuple(x.strip() for x in raw.split(",") if x.strip())
    _, expr = rd.get(section, "expr")
    for d in defs:
        if d not in BUILTINS and d != "custom":
            raise rd.fail(where, "deformation", f"unknown deformation {d!r}; expected one of {BUILTINS + ('custom',)}")
        if d == "custom" and not expr:
            raise rd.fail(where, "deformation", "deformation 'custom' needs an 'expr' key")
    if expr:
        try:
            parse_r(expr)
        except ParseError as exc:
            raise rd.fail(rd.get(section, "expr")[0], "expr", str(exc)) from None
    if not spec.needs_r:
        defs = ("-",)
    base = {}
    for key in BASE_KEYS:
        v = rd.rational(section, key)
        if v is not None:
            base[key] = v
    own = set(rd.parser.options(section)) if section != "defaults" else set()
    if own & {"p", "q"} and not own & {"s", "t"}:
        base.pop("s", None)
        base.pop("t", None)
    elif own & {"s", "t"} and not own & {"p", "q"}:
        base.pop("p", None)
        base.pop("q", None)
    if not (("s" in base and "t" in base) or ("p" in base and "q" in base)):
        raise ConfigError("base parameters need s and t (or p and q)", field=f"{section}.s")
    try:
        _make_base(base)
    except DomainError as exc:
        raise ConfigError(str(exc), field=f"{section}.base") from None
    grid = {}
    for axis in spec.axes:
        values = rd.deltas(section) if axis == "delta" else rd.int_range(section, axis)
        grid[axis] = list(values if values is not None else spec.defaults[axis])
    where, conv = rd.get(section, "convention", "output")
    if conv not in CONVENTIONS:
        raise rd.fail(where, "convention", f"convention must be one of {CONVENTIONS}")
    return Sweep(name, check, defs, expr, base, grid, conv,
                 rd.rational(section, "normalization", Fraction(1)), rd.rational(section, "c2_hat", Fraction(1)))


def parse_config(text: str) -> RunConfig:
    rd = _Reader(text)
    sweeps = []
    p = rd.parser
    if p.has_option("defaults", "checks"):
        for cid in (c.strip() for c in p.get("defaults", "checks").split(",") if c.strip()):
            sweeps.append(_parse_sweep(rd, "defaults", cid, cid))
    for section in p.sections():
        if section.startswith("sweep"):
            name = section[len("sweep"):].strip() or section
            where, ids = rd.get(section, "check")
            if ids is None:
                where, ids = rd.get(section, "checks")
            if not ids:
                raise rd.fail(section, "check", "sweep section needs a 'check' key")
            for cid in (c.strip() for c in ids.split(",") if c.strip()):
                sweeps.append(_parse_sweep(rd, section, name, cid))
        elif section not in ("defaults", "output"):
            raise ConfigError(f"unknown section [{section}]", field=section)
    fmt = p.get("output", "format", fallback="json").strip()
    if fmt not in ("json", "csv"):
        raise rd.fail("output", "format", "format must be json or csv")
    echo = {s: dict(p.items(s, raw=True)) for s in p.sections()}
    return RunConfig(sweeps, p.get("output", "path", fallback=None), fmt,
                     p.get("output", "findings", fallback=None), echo)


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", field="config") from None
    return parse_config(text)


# --- evaluation ------------------------------------------------------------------

def _make_base(b: dict) -> BaseParams:
    extra = {k: b[k] for k in ("mu", "nu", "g") if k in b}
    if "s" in b and "t" in b:
        return BaseParams.from_roots(b["s"], b["t"], **extra)
    return BaseParams(b["p"], b["q"], **extra)


def _context(sweep: Sweep, deformation: str) -> Context:
    base = _make_base(sweep.base)
    r = None
    if deformation == "custom":
        r = custom(sweep.expr, base, name="custom")
    elif deformation != "-":
        r = builtin(deformation, base)
    return Context(r, base, sweep.convention, sweep.normalization, sweep.c2_hat)


def _points(sweep: Sweep):
    axes = CHECKS[sweep.check].axes
    for values in itertools.product(*(sweep.grid[a] for a in axes)):
        yield dict(zip(axes, values))


def _evaluate(sweep: Sweep, deformation: str, points: list) -> list[dict]:
    spec = CHECKS[sweep.check]
    ctx = _context(sweep, deformation)
    out = []
    for pt in points:
        rec = {"check": sweep.check, "sweep": sweep.name, "deformation": deformation,
               **{a: pt.get(a) for a in AXES}, "residual": None, "status": None, "reason": ""}
        if spec.distinct_nm and pt.get("n") == pt.get("m"):
            rec.update(status="skipped", reason="n = m")
            out.append(rec)
            continue
        try:
            value = spec.fn(ctx, pt)
        except DomainError as exc:
            rec.update(status="skipped", reason=str(exc))
            out.append(rec)
            continue
        except (ArithmeticError, ValueError) as exc:
            rec.update(status="error", reason=f"{type(exc).__name__}: {exc}")
            out.append(rec)
            continue
        rec["residual"] = value
        if spec.kind == ASSERTED:
            ok = spec.expect(ctx, pt, value) if spec.expect else value == 0
            rec["status"] = "pass" if ok else "fail"
        else:
            rec["status"] = "recorded"
        out.append(rec)
    return out


def _task(args):
    return _evaluate(*args)


def _sort_key(rec):
    def num(x):
        return (0, Fraction(0)) if x is None else (1, Fraction(x))
    return (rec["check"], rec["sweep"], rec["deformation"], *(num(rec[a]) for a in AXES))


def run(config: RunConfig, jobs: int = 1) -> dict:
    tasks = []
    for sweep in config.sweeps:
        pts = list(_points(sweep))
        for d in sweep.deformations:
            tasks.append((sweep, d, pts))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_task, tasks))
    else:
        chunks = [_task(t) for t in tasks]
    records = sorted((r for chunk in chunks for r in chunk), key=_sort_key)
    counts = {s: 0 for s in ("pass", "fail", "recorded", "skipped", "error")}
    per_check: dict = {}
    for r in records:
        counts[r["status"]] += 1
        c = per_check.setdefault(r["check"], {s: 0 for s in counts})
        c[r["status"]] += 1
    return {
        "library_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "config": config.echo,
        "summary": {"total": len(records), **counts, "per_check": per_check},
        "records": records,
    }


def _plain(rec: dict) -> dict:
    out = dict(rec)
    for a in AXES:
        if isinstance(out[a], Fraction):
            out[a] = format_scalar(out[a])
    if out["residual"] is not None:
        out["residual"] = format_scalar(out["residual"])
    return out


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        body = dict(report, records=[_plain(r) for r in report["records"]])
        return json.dumps(body, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in map(_plain, report["records"]):
        label = r["check"] if r["deformation"] == "-" else f"{r['check']}@{r['deformation']}"
        w.writerow([label, *("" if r[a] is None else r[a] for a in AXES),
                    "" if r["residual"] is None else r["residual"], r["status"], r["reason"]])
    return buf.getvalue()


def exit_code(report: dict) -> int:
    s = report["summary"]
    return 1 if s["fail"] or s["error"] else 0


def findings_lines(report: dict) -> str:
    lines = [json.dumps(_plain(r), sort_keys=True, ensure_ascii=False)
             for r in report["records"] if r["status"] == "recorded"]
    return "".join(line + "\n" for line in lines)


# --- entry point -----------------------------------------------------------------

def _cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.check:
        if args.check not in CHECKS:
            raise ConfigError(f"unknown check id {args.check!r}", field="--check")
        cfg.sweeps = [s for s in cfg.sweeps if s.check == args.check]
        if not cfg.sweeps:
            rd = _Reader("[defaults]\n" + "\n".join(f"{k} = {v}" for k, v in cfg.echo.get("defaults", {}).items()
                                                    if k in SWEEP_KEYS and k not in ("check", "checks")))
            cfg.sweeps = [_parse_sweep(rd, "defaults", args.check, args.check)]
    fmt = args.format or cfg.output_format
    out_path = args.out or cfg.output_path
    report = run(cfg, jobs=max(1, args.jobs))
    text = render(report, fmt)
    if out_path and out_path != "-":
        try:
            Path(out_path).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"output path unwritable: {exc.strerror}", field="output.path") from None
    else:
        sys.stdout.write(text)
    if cfg.findings_path:
        try:
            Path(cfg.findings_path).write_text(findings_lines(report), encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"findings path unwritable: {exc.strerror}", field="output.findings") from None
    s = report["summary"]
    print(f"{s['total']} records: {s['pass']} pass, {s['fail']} fail, {s['recorded']} recorded, "
          f"{s['skipped']} skipped, {s['error']} error", file=sys.stderr)
    return exit_code(report)


def _cmd_list(args) -> int:
    print(json.dumps(catalog(), indent=2, sort_keys=True, ensure_ascii=False))
    return 0


def _cmd_parse(args) -> int:
    try:
        tree = parse_r(args.expr)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(args.expr, file=sys.stderr)
        print(" " * exc.position + "^", file=sys.stderr)
        return 2
    print(repr(tree))
    print(to_source(tree))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rpqv", description="Exact checks for R(p,q)-deformed conformal algebras.")
    ap.add_argument("--version", action="version", version=f"rpqv {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run the checks of a config file")
    r.add_argument("--config", required=True)
    r.add_argument("--check", help="run only this check id")
    r.add_argument("--out", help="report path ('-' for stdout)")
    r.add_argument("--format", choices=("json", "csv"))
    r.add_argument("--jobs", type=int, default=1)
    r.set_defaults(func=_cmd_run)
    sub.add_parser("list", help="print the check catalog").set_defaults(func=_cmd_list)
    p = sub.add_parser("parse-r", help="parse a deformation expression")
    p.add_argument("expr")
    p.set_defaults(func=_cmd_parse)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
