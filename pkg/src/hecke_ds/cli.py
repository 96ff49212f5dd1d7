"""Command-line front end: ``hecke-ds <command> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import checks
from .ds import PLUS, deformation_profile, ds, peel
from .partitions import (
    ETableau,
    NonGenericError,
    central_character,
    format_partition,
    parse_partition,
    partitions,
)
from .poset import build_poset, to_dot
from .rational import ParseError, format_rational, parse_rational
from .segments import CapExceeded, CentralCharacter, DEFAULT_ENUM_CAP, CosetMismatch
from .springer import SpringerInputError, check_instance
from .tempered import enumerate_tempered

EXIT_OK, EXIT_INPUT, EXIT_SUITE, EXIT_CAP = 0, 2, 3, 4
HARD_CAP = 14
FORMATS = ("json", "csv", "dot", "ascii")
ENV_N_CAP = "HECKE_DS_N_CAP"


@dataclass
class Config:
    default_m: Fraction | None = None
    n_cap: int = DEFAULT_ENUM_CAP
    output_format: str = "ascii"
    sweep_grid: list[Fraction] = field(default_factory=list)


def load_config(path: str | None, force: bool = False) -> Config:
    cfg = Config()
    if path:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ParseError(f"{path}:{lineno}: expected key=value")
                key, value = (s.strip() for s in line.split("=", 1))
                if key == "default_m":
                    cfg.default_m = parse_rational(value)
                elif key == "n_cap":
                    cfg.n_cap = _parse_int(value, key)
                elif key == "output_format":
                    if value not in FORMATS:
                        raise ParseError(f"{path}:{lineno}: unknown format {value!r}")
                    cfg.output_format = value
                elif key == "sweep_grid":
                    cfg.sweep_grid = [parse_rational(v) for v in value.split(",") if v.strip()]
                else:
                    raise ParseError(f"{path}:{lineno}: unknown key {key!r}")
    if os.environ.get(ENV_N_CAP):
        cfg.n_cap = _parse_int(os.environ[ENV_N_CAP], ENV_N_CAP)
    if cfg.n_cap > HARD_CAP and not force:
        raise ParseError(f"n_cap={cfg.n_cap} exceeds {HARD_CAP}; pass --force to allow it")
    return cfg


def _parse_int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"{what}: not an integer: {text!r}") from None


# -- rendering --------------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _segment_rows(mp):
    return [[r["lo"], r["hi"], r["marked"]] for r in mp.to_dict()["segments"]]


def _need_format(fmt: str, allowed: tuple[str, ...], cmd: str) -> None:
    if fmt not in allowed:
        raise ParseError(f"{cmd}: format {fmt!r} not supported (choose from {', '.join(allowed)})")


# -- commands ---------------------------------------------------------------


def _m(args, cfg: Config) -> Fraction:
    if args.m is not None:
        return parse_rational(args.m)
    if cfg.default_m is not None:
        return cfg.default_m
    raise ParseError("--m is required (or set default_m in the config file)")


def _sigma(args, cfg: Config):
    # n_cap bounds the enumerations only; ds and peel are polynomial in n
    return parse_partition(args.sigma)


def cmd_ds(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "ds")
    sigma, m = _sigma(args, cfg), _m(args, cfg)
    out = ds(sigma, m)
    log = peel(ETableau(sigma, m)) if args.trace else None
    if fmt == "json":
        data = {"sigma": format_partition(sigma), "m": format_rational(m), **out.to_dict()}
        if log:
            data["peel"] = _peel_rows(log)
        return _dump(data)
    if fmt == "csv":
        return _csv(("lo", "hi", "marked"), _segment_rows(out))
    text = str(out) + "\n"
    if log:
        text = log.format_log() + "\n" + text
    return text


def _peel_rows(result):
    return [
        {"side": step.side, "evalues": [format_rational(v) for v in step.evalues]}
        for step in result.log
    ]


def cmd_peel(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "peel")
    sigma, m = _sigma(args, cfg), _m(args, cfg)
    t = ETableau(sigma, m)
    result = peel(t)
    if fmt == "json":
        return _dump(
            {
                "sigma": format_partition(sigma),
                "m": format_rational(m),
                "steps": _peel_rows(result),
                "Lplus": [str(s) for s in result.Lplus],
                "Lminus": [str(s) for s in result.Lminus],
            }
        )
    if fmt == "csv":
        rows = [
            [i, "row" if s.side == PLUS else "column", format_rational(s.segment.lo), format_rational(s.segment.hi)]
            for i, s in enumerate(result.log, start=1)
        ]
        return _csv(("step", "kind", "lo", "hi"), rows)
    return t.render() + "\n\n" + result.format_log() + "\n"


def cmd_orbits(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("dot", "json"), "orbits")
    m = _m(args, cfg)
    if args.weights is not None:
        if args.sigma is not None:
            raise ParseError("give either --sigma or --weights, not both")
        cc = CentralCharacter(m, tuple(parse_rational(w) for w in args.weights.split(",") if w.strip()))
    elif args.sigma is not None:
        cc = central_character(ETableau(parse_partition(args.sigma), m))
    else:
        raise ParseError("orbits needs --sigma or --weights")
    p = build_poset(cc, cap=cfg.n_cap)
    return to_dot(p) if fmt == "dot" else p.to_json() + "\n"


def cmd_springer(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "springer")
    sigma, m = _sigma(args, cfg), _m(args, cfg)
    row = check_instance(sigma, m)
    agree = row.slooten == row.ls
    if fmt == "json":
        return _dump(
            {
                "sigma": format_partition(sigma),
                "m": format_rational(m),
                "orbit": list(row.orbit.parts),
                "bipartition_ls": str(row.ls),
                "bipartition_slooten": str(row.slooten),
                "agree": agree,
            }
        )
    if fmt == "csv":
        return _csv(
            ("sigma", "m", "orbit", "bipartition_ls", "bipartition_slooten", "agree"),
            [[format_partition(sigma), format_rational(m), row.orbit, row.ls, row.slooten, agree]],
        )
    return (
        f"orbit      {row.orbit}\n"
        f"ls         {row.ls}\n"
        f"slooten    {row.slooten}\n"
        f"agree      {'yes' if agree else 'no'}\n"
    )


def cmd_tempered(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "tempered")
    m = _m(args, cfg)
    if args.n > cfg.n_cap:
        raise CapExceeded(f"n={args.n} exceeds n_cap={cfg.n_cap}")
    params = enumerate_tempered(args.n, m)
    if fmt == "json":
        return _dump({"n": args.n, "m": format_rational(m), "count": len(params), "parameters": [p.to_dict() for p in params]})
    rows = [[format_partition(p.gl_part), format_partition(p.sp_part), str(p.marked)] for p in params]
    if fmt == "csv":
        return _csv(("gl", "sp", "marked_partition"), rows)
    width = max([len(r[0]) for r in rows] + [2])
    lines = [f"{r[0]:<{width}}  {r[1]:<{width}}  {r[2]}" for r in rows]
    lines.append(f"count {len(params)}")
    return "\n".join(lines) + "\n"


def cmd_profile(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "profile")
    sigma = _sigma(args, cfg)
    n = sum(sigma)
    lo = parse_rational(args.lo) if args.lo is not None else Fraction(-n - 1)
    hi = parse_rational(args.hi) if args.hi is not None else Fraction(n + 1)
    prof = deformation_profile(sigma, lo, hi, samples=args.samples)
    if fmt == "json":
        return _dump(prof.to_dict())
    rows = [[format_rational(a), format_rational(b), str(mp)] for a, b, mp in prof.intervals]
    if fmt == "csv":
        return _csv(("lo", "hi", "ds"), rows)
    return "\n".join(f"({a}, {b})  {mp}" for a, b, mp in rows) + "\n"


def cmd_sweep(args, cfg: Config, fmt: str) -> str:
    _need_format(fmt, ("json", "csv", "ascii"), "sweep")
    if args.n > cfg.n_cap:
        raise CapExceeded(f"n={args.n} exceeds n_cap={cfg.n_cap}")
    if args.grid is not None:
        grid = [parse_rational(v) for v in args.grid.split(",") if v.strip()]
    else:
        grid = cfg.sweep_grid
    if not grid:
        raise ParseError("sweep needs --grid (or set sweep_grid in the config file)")
    rows = [(sigma, m, ds(sigma, m)) for m in grid for sigma in partitions(args.n)]
    if fmt == "json":
        return _dump(
            [{"sigma": format_partition(s), "m": format_rational(m), **out.to_dict()} for s, m, out in rows]
        )
    table = [[format_partition(s), format_rational(m), str(out)] for s, m, out in rows]
    if fmt == "csv":
        return _csv(("sigma", "m", "ds"), table)
    width = max(len(r[0]) for r in table)
    return "\n".join(f"{r[0]:<{width}}  {r[1]:>6}  {r[2]}" for r in table) + "\n"


def cmd_check(args, cfg: Config, fmt: str) -> tuple[str, int]:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    if args.n is not None and args.n > cfg.n_cap:
        raise CapExceeded(f"n={args.n} exceeds n_cap={cfg.n_cap}")
    results = [checks.run_suite(name, args.n) for name in names]
    code = EXIT_OK if all(r.passed for r in results) else EXIT_SUITE
    if fmt == "json":
        return _dump({"passed": code == EXIT_OK, "suites": [r.to_dict() for r in results]}), code
    if fmt == "csv":
        rows = [[r.name, r.n, r.checked, r.passed, " | ".join(r.counterexamples)] for r in results]
        return _csv(("suite", "n", "checked", "passed", "counterexamples"), rows), code
    lines = []
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<16} n={r.n:<3} checked={r.checked}")
        lines += [f"      {c}" for c in r.counterexamples]
    return "\n".join(lines) + "\n", code


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hecke-ds", description="Discrete-series combinatorics for graded Hecke algebras of type B/C.")
    parser.add_argument("--config", help="key=value file with default_m, n_cap, output_format, sweep_grid")
    parser.add_argument("--force", action="store_true", help=f"allow n_cap above {HARD_CAP}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS)
        return p

    p = add("ds", "discrete-series marked partition of sigma at m")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m")
    p.add_argument("--trace", action="store_true", help="print the peel log first")

    p = add("peel", "row/column peel log")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m")

    p = add("orbits", "orbit poset of a central character")
    p.add_argument("--sigma")
    p.add_argument("--weights", help="comma-separated e-values in the coset m+Z")
    p.add_argument("--m")

    p = add("springer", "Spin orbit and the two bipartition algorithms")
    p.add_argument("--sigma", required=True)
    p.add_argument("--m")

    p = add("tempered", "tempered parameters of rank n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m")

    p = add("profile", "ds on each interval between half-integers")
    p.add_argument("--sigma", required=True)
    p.add_argument("--lo")
    p.add_argument("--hi")
    p.add_argument("--samples", type=int, default=3)

    p = add("sweep", "ds for every partition of n over a grid of m")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", help="comma-separated m values (default: sweep_grid from the config)")

    p = add("check", "run property suites")
    p.add_argument("suite", choices=["all", *checks.SUITES])
    p.add_argument("--n", type=int)
    return parser


COMMANDS = {
    "ds": cmd_ds,
    "peel": cmd_peel,
    "orbits": cmd_orbits,
    "springer": cmd_springer,
    "tempered": cmd_tempered,
    "profile": cmd_profile,
    "sweep": cmd_sweep,
    "check": cmd_check,
}

DEFAULT_FORMATS = {"orbits": "dot", "check": "ascii"}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config, force=args.force)
        fmt = args.format
        if fmt is None:
            fmt = cfg.output_format if args.config else DEFAULT_FORMATS.get(args.command, "ascii")
        if args.command == "orbits" and fmt == "ascii":
            fmt = "dot"
        result = COMMANDS[args.command](args, cfg, fmt)
    except CapExceeded as exc:
        print(f"hecke-ds: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, NonGenericError, SpringerInputError, CosetMismatch, ValueError, OSError) as exc:
        print(f"hecke-ds: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
