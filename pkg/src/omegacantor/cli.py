"""Command-line front end.

Subcommands: decide, compile, classify, witness, eval, kn, selftest.  Shared
flags may also come from a plain ``key=value`` config file; explicit flags
win.  Exit codes: 0 success, 1 domain errors (printed as the stable error
class name plus message), 2 usage errors.

All output is deterministic for a fixed command line and config: pipelines
are canonical and sampled suites are seeded.
"""

from __future__ import annotations

import argparse
import os
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import classify
from .compile import (
    DEFAULT_MAX_STATES, VarEnv, compile_formula, decide, witness,
)
from .determinize import determinize
from .dpa import DPA
from .errors import OmegacantorError, PreconditionError
from .formulas import LogicSet, parse_formula
from .hoa import emit_hoa, parse_hoa
from .kernel import as_point, e_trunc, sign, value_approx
from .nba import NBA
from .nu import nu
from .points import FormalCombo, parse_combo, render_combo, render_point
from .profiles import SequenceProfile
from .selftest import run_selftest
from .stages import brute_vw, enumerate_kn


class _UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    """Resolved run configuration.

    ``depth`` is the working depth passed to staged operations; the
    profile's ``max_depth`` (config key ``max-depth``) is the hard cap that
    raises DepthExceeded.
    """

    profile: SequenceProfile
    max_states: int
    depth: int
    fmt: str
    seed: int


_CONFIG_KEYS = ("profile", "depth", "max-states", "max-depth", "format", "seed")
_DEFAULT_DEPTH = 8
_DEFAULT_MAX_DEPTH = 4096


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--profile", help="formal or geometric:M (M >= 4)")
    common.add_argument("--depth", type=int, help="depth budget for staged constructions")
    common.add_argument("--max-states", type=int, dest="max_states",
                        help="state cap for automaton constructions")
    common.add_argument("--format", choices=("text", "json", "hoa"), dest="fmt")
    common.add_argument("--seed", type=int, help="seed for sampled suites")
    common.add_argument("--config", help="key=value file with flag defaults")

    parser = argparse.ArgumentParser(
        prog="omegacantor",
        description="Decide sequential-calculus sentences, classify the "
        "languages they define, and evaluate points of the tame Cantor set.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="truth of a sentence")
    p.add_argument("formula")

    p = sub.add_parser("compile", parents=[common],
                       help="compile a formula to an automaton in HOA form")
    p.add_argument("formula")

    p = sub.add_parser("classify", parents=[common],
                       help="place a language in the low Borel hierarchy")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula")
    group.add_argument("--hoa", help="HOA file; - for stdin")

    p = sub.add_parser("witness", parents=[common],
                       help="satisfying assignment for the free variables")
    p.add_argument("formula")

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate a point combination")
    p.add_argument("combo")
    p.add_argument("--nu", action="store_true", help="largest set element at or below")
    p.add_argument("--sign", action="store_true", dest="sign_flag")
    p.add_argument("--interval", action="store_true", help="value enclosure")
    p.add_argument("--e", type=int, metavar="A", dest="trunc",
                   help="truncate the point at level A")

    p = sub.add_parser("kn", parents=[common],
                       help="stage endpoints, or the gap table with --vw")
    p.add_argument("n", type=int)
    p.add_argument("--vw", action="store_true")

    sub.add_parser("selftest", parents=[common], help="run all module suites")
    return parser


def _load_config_file(path: str) -> dict[str, str]:
    try:
        with open(path, encoding="utf-8") as handle:
            lines = handle.readlines()
    except OSError as exc:
        raise _UsageError(f"cannot read config file: {exc}") from None
    out: dict[str, object] = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise _UsageError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise _UsageError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value.strip()
    return out


def _int_option(flag: int | None, file_vals: dict[str, str], key: str, fallback: int) -> int:
    if flag is not None:
        return flag
    raw = file_vals.get(key)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"config key {key!r} needs an integer, got {raw!r}") from None


_FORMATS = {
    "decide": ("text", "json"),
    "compile": ("hoa",),
    "classify": ("text", "json"),
    "witness": ("text", "json"),
    "eval": ("text", "json"),
    "kn": ("text", "json"),
    "selftest": ("text",),
}


def _resolve(args: argparse.Namespace) -> Config:
    file_vals = _load_config_file(args.config) if args.config else {}
    depth = _int_option(args.depth, file_vals, "depth", _DEFAULT_DEPTH)
    max_depth = _int_option(None, file_vals, "max-depth", _DEFAULT_MAX_DEPTH)
    max_states = _int_option(args.max_states, file_vals, "max-states", DEFAULT_MAX_STATES)
    seed = _int_option(args.seed, file_vals, "seed", 0)
    fmt = args.fmt or file_vals.get("format") or _FORMATS[args.command][0]
    if fmt not in _FORMATS[args.command]:
        raise _UsageError(f"format {fmt!r} is not available for {args.command}")
    profile_text = args.profile or file_vals.get("profile") or "formal"
    profile = SequenceProfile.parse(profile_text, max_depth=max_depth)
    return Config(profile, max_states, depth, fmt, seed)


def _decimal(r: Fraction) -> str:
    """Exact decimal text when the denominator allows one, fraction text
    otherwise; never a rounded float."""
    if r < 0:
        return "-" + _decimal(-r)
    den = r.denominator
    two = five = 0
    while den % 2 == 0:
        den //= 2
        two += 1
    while den % 5 == 0:
        den //= 5
        five += 1
    if den != 1:
        return str(r)
    scale = max(two, five)
    if scale == 0:
        return str(r.numerator)
    digits = str(r.numerator * 10**scale // r.denominator).rjust(scale + 1, "0")
    frac = digits[-scale:].rstrip("0")
    whole = digits[:-scale]
    return whole if not frac else f"{whole}.{frac}"


def _approx_suffix(value: Fraction) -> str:
    return f" ≈ {_decimal(value)} ± 0"


def _cmd_decide(args: argparse.Namespace, cfg: Config) -> int:
    result = decide(parse_formula(args.formula), cfg.max_states)
    if cfg.fmt == "json":
        print(json.dumps({"result": result}))
    else:
        print("true" if result else "false")
    return 0


def _cmd_compile(args: argparse.Namespace, cfg: Config) -> int:
    f = parse_formula(args.formula)
    aut = compile_formula(f, VarEnv.for_formula(f), cfg.max_states)
    sys.stdout.write(emit_hoa(aut))
    return 0


def _classify_input(args: argparse.Namespace, cfg: Config) -> DPA:
    if args.formula is not None:
        f = parse_formula(args.formula)
        nba = compile_formula(f, VarEnv.for_formula(f), cfg.max_states)
        return determinize(nba, cfg.max_states)
    text = sys.stdin.read() if args.hoa == "-" else _read_file(args.hoa)
    aut = parse_hoa(text)
    if isinstance(aut, NBA):
        return determinize(aut, cfg.max_states)
    return aut


def _read_file(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UsageError(f"cannot read HOA file: {exc}") from None


def _cmd_classify(args: argparse.Namespace, cfg: Config) -> int:
    report = classify(_classify_input(args, cfg))
    if cfg.fmt == "json":
        print(report.to_json())
    else:
        for key in ("is_open", "is_closed", "is_gdelta", "is_fsigma"):
            print(f"{key} = {'true' if getattr(report, key) else 'false'}")
        print(f"label = {report.label}")
    return 0


def _cmd_witness(args: argparse.Namespace, cfg: Config) -> int:
    f = parse_formula(args.formula)
    assignment = witness(f, cfg.max_states)
    if cfg.fmt == "json":
        if assignment is None:
            print(json.dumps({"satisfiable": False}))
        else:
            shown = {
                name: value if isinstance(value, int) else str(value)
                for name, value in assignment.items()
            }
            print(json.dumps({"satisfiable": True, "assignment": shown}))
        return 0
    if assignment is None:
        print("unsatisfiable")
        return 0
    for name, value in assignment.items():
        print(f"{name} = {value}")
    return 0


def _cmd_eval(args: argparse.Namespace, cfg: Config) -> int:
    combo = parse_combo(args.combo)
    want_interval = args.interval or not (args.nu or args.sign_flag or args.trunc is not None)
    exact = cfg.profile.is_geometric
    out: dict[str, object] = {}
    lines: list[str] = []
    if want_interval:
        if not exact:
            raise PreconditionError("numeric value needs a geometric profile")
        lo, hi = value_approx(combo, cfg.profile, cfg.depth)
        mid, half = (lo + hi) / 2, (hi - lo) / 2
        lines.append(f"value ≈ {_decimal(mid)} ± {_decimal(half)}")
        out["value"] = [str(lo), str(hi)]
    if args.sign_flag:
        s = sign(combo, cfg.profile)
        text = {1: "+1", 0: "0", -1: "-1"}[s]
        lines.append(f"sign = {text}")
        out["sign"] = text
    if args.nu:
        y = nu(combo, cfg.profile)
        rendered = render_combo(y)
        suffix = _approx_suffix(y.value(cfg.profile)) if exact else ""
        lines.append(f"nu = {rendered}{suffix}")
        out["nu"] = rendered
    if args.trunc is not None:
        point = as_point(combo)
        if point is None:
            raise PreconditionError("truncation needs a point-valued combo")
        r = e_trunc(args.trunc, point)
        rendered = render_point(r)
        suffix = _approx_suffix(FormalCombo.of(r).value(cfg.profile)) if exact else ""
        lines.append(f"e = {rendered}{suffix}")
        out["e"] = rendered
    if cfg.fmt == "json":
        print(json.dumps(out))
    else:
        for line in lines:
            print(line)
    return 0


def _cmd_kn(args: argparse.Namespace, cfg: Config) -> int:
    if args.vw:
        rows = brute_vw(args.n, cfg.profile)
        if cfg.fmt == "json":
            print(json.dumps({
                "n": args.n,
                "rows": [{"r": str(r), "v": str(v), "w": str(w)} for r, v, w in rows],
            }))
        else:
            for r, v, w in rows:
                print(f"r={r} v={v} w={w}")
        return 0
    endpoints = enumerate_kn(args.n, cfg.profile)
    if cfg.fmt == "json":
        print(json.dumps({"n": args.n, "endpoints": [str(e) for e in endpoints]}))
    else:
        print(" ".join(str(e) for e in endpoints))
    return 0


def _cmd_selftest(_args: argparse.Namespace, cfg: Config) -> int:
    return 0 if run_selftest(cfg.seed, sys.stdout) else 1


_COMMANDS = {
    "decide": _cmd_decide,
    "compile": _cmd_compile,
    "classify": _cmd_classify,
    "witness": _cmd_witness,
    "eval": _cmd_eval,
    "kn": _cmd_kn,
    "selftest": _cmd_selftest,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        cfg = _resolve(args)
        return _COMMANDS[args.command](args, cfg)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except OmegacantorError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed the pipe (e.g. | head); die quietly, unix-style
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 1
    sys.exit(code)


if __name__ == "__main__":
    main()
