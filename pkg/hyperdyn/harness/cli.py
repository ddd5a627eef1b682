"""
Command line entry point.

    hyperdyn check --system rot5 --property transitive --level product --n 2
    hyperdyn verify --theorems all --catalog default --n 2 --out report.json
    hyperdyn enumerate --points 3 --theorems T5
    hyperdyn metric-selftest

Exit status is 0 on success, 1 when a counterexample or a failed self-check
turns up and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import logging
import re
import sys

from hyperdyn import __version__
from hyperdyn.config import BUDGET_KEYS, Budget, budget_from_values, load_config
from hyperdyn.dynsys import build_system
from hyperdyn.exceptions import HyperdynError, SpecError
from hyperdyn.harness.catalog import load_catalog
from hyperdyn.harness.enumeration import MAX_POINTS, brute_force_enumeration
from hyperdyn.harness.properties import LevelView, check_level, check_property_name
from hyperdyn.harness.report import ReportFormat, emit_report, render_report
from hyperdyn.harness.selftest import run_selftest, small_spaces
from hyperdyn.harness.suite import Report, run_theorem_suite
from hyperdyn.harness.theorems import Level
from hyperdyn.hyperspace import DEFAULT_CAP
from hyperdyn.metric_core import load_metric_file
from hyperdyn.shift import ShiftPoint, ShiftSystem

TERMINATOR = "\x1b[0m"
WARNING = "\x1b[1;33m [WARNING]: "
INFO = "\x1b[1;33m [INFO]: "
SUCCESS = "\x1b[1;32m [SUCCESS]: "

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2

_SHIFT_POINT = re.compile(r"^(\d*)\((\d+)\)$")


def say(prefix: str, message: str, file=None) -> None:
    print(prefix + message + TERMINATOR, file=file or sys.stdout)


def _add_budget_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("budget", "override the config file and the built-in defaults")
    for key in BUDGET_KEYS:
        group.add_argument(f"--{key}", dest=key.replace("-", "_"), metavar=key.upper(), default=None)


def _add_report_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--theorems", default=None, help="'all' or a list such as T1,T12 (default: all)")
    parser.add_argument("--out", default=None, help="report file; the report goes to stdout without it")
    parser.add_argument(
        "--format",
        choices=[fmt.value for fmt in ReportFormat],
        default=None,
        help="report format (default: from the --out suffix, else json)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperdyn",
        description="Induced dynamics on symmetric products and their suspensions",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None, help="flat key=value config file (or $HYPERDYN_CONFIG)")
    parser.add_argument("--verbose", "-v", action="store_true", help="log at DEBUG level")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="one property of one system at one level")
    check.add_argument("--system", default=None, help="catalog name or builtin such as finite_rotation(5,1)")
    check.add_argument("--catalog", default=None, help="catalog the system name is looked up in")
    check.add_argument("--property", dest="prop", required=True)
    check.add_argument("--level", choices=[level.value for level in Level], default=Level.BASE.value)
    check.add_argument("--n", type=int, default=None, help="symmetric product order (default: 2)")
    check.add_argument("--point", default=None, help="comma separated points, e.g. 0,2 or 0(1),(01)")
    _add_budget_flags(check)

    verify = commands.add_parser("verify", help="run the theorem suite over a catalog")
    verify.add_argument("--catalog", default=None, help="default, a YAML file, default+FILE or names")
    verify.add_argument("--n", default=None, help="comma separated orders (default: 2)")
    verify.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest symmetric product to enumerate")
    _add_report_flags(verify)
    _add_budget_flags(verify)

    enumerate_ = commands.add_parser("enumerate", help="run the suite on every self-map of a small cycle")
    enumerate_.add_argument("--points", type=int, default=3, help=f"cycle size, at most {MAX_POINTS}")
    enumerate_.add_argument("--n", type=int, default=2)
    _add_report_flags(enumerate_)
    _add_budget_flags(enumerate_)

    selftest = commands.add_parser("metric-selftest", help="check the metric and quotient invariants")
    selftest.add_argument("--metric", default=None, help="also check the Hausdorff metric over this metric file")
    return parser


def resolve_budget(args: argparse.Namespace, config: dict[str, str]) -> Budget:
    """Defaults, then the config file, then the command line."""
    budget = budget_from_values(config)
    flags = {key: getattr(args, key.replace("-", "_"), None) for key in BUDGET_KEYS}
    return budget_from_values({key: value for key, value in flags.items() if value is not None}, budget)


def parse_point(system, text: str) -> frozenset:
    """Points of a tabulated system by index or label, or shift points written ``pre(per)`` or ``stream``."""
    tokens = [token.strip() for token in text.split(",") if token.strip()]
    if not tokens:
        raise SpecError(f"empty point {text!r}")
    if isinstance(system, ShiftSystem):
        return frozenset(_shift_point(system, token) for token in tokens)
    labels = {system.label(x): x for x in system.points}
    points = set()
    for token in tokens:
        if token in labels:
            points.add(labels[token])
        elif token.isdigit() and int(token) < system.size:
            points.add(int(token))
        else:
            raise SpecError(f"{token!r} is not a point of {system.name}")
    return frozenset(points)


def _shift_point(system: ShiftSystem, token: str) -> ShiftPoint:
    if token == "stream":
        return system.enumeration_stream()
    match = _SHIFT_POINT.match(token)
    if match is None or any(int(ch) >= system.symbols for ch in match[1] + match[2]):
        raise SpecError(f"{token!r} is not a point of {system.name}; write pre(per) or stream")
    return ShiftPoint.of(match[1], match[2])


def _config_int(config: dict[str, str], key: str, default: int) -> int:
    try:
        return int(config.get(key, default))
    except ValueError as e:
        raise SpecError(f"bad {key} in config: {config[key]!r}") from e


def _system(args: argparse.Namespace, config: dict[str, str]):
    name = args.system or config.get("system")
    if not name:
        raise SpecError("check needs --system or a 'system' key in the config")
    catalog = load_catalog(args.catalog or config.get("catalog", "default"))
    if name in catalog:
        return name, catalog[name].system
    return name, build_system(name)


def cmd_check(args: argparse.Namespace, config: dict[str, str]) -> int:
    prop = check_property_name(args.prop)
    name, system = _system(args, config)
    n = args.n or _config_int(config, "n", 2)
    view = LevelView(name, system, n)
    point = parse_point(system, args.point) if args.point else None
    verdict = check_level(view, Level(args.level), prop, resolve_budget(args, config), point)
    where = f"{args.level}:{prop}" + (f" at {args.point}" if point else "")
    say(INFO, f"{name} (n={n}) {where}: {verdict}")
    return EXIT_OK


def _finish(report: Report, args: argparse.Namespace) -> int:
    # the report owns stdout unless it goes to a file
    out = sys.stdout if args.out else sys.stderr
    if args.out:
        path = emit_report(report, args.format, args.out)
        say(INFO, f"Report written to {path}", out)
    else:
        sys.stdout.write(render_report(report, args.format or ReportFormat.JSON))
    counts = ", ".join(f"{count} {status}" for status, count in sorted(report.status_counts().items()))
    say(INFO, f"{len(report.results)} checks, {len(report.rows())} arrows: {counts or 'nothing run'}", out)
    counterexamples = report.counterexamples()
    for row in counterexamples:
        say(WARNING, f"{row.theorem} on {row.system} (n={row.n}): {row.arrow}: {row.witness}", out)
    if counterexamples:
        return EXIT_FOUND
    say(SUCCESS, "No counterexamples.", out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, config: dict[str, str]) -> int:
    catalog = load_catalog(args.catalog or config.get("catalog", "default"))
    raw_n = args.n or config.get("n", "2")
    try:
        n_values = [int(item) for item in raw_n.split(",") if item.strip()]
    except ValueError as e:
        raise SpecError(f"bad --n {raw_n!r}") from e
    theorems = args.theorems or config.get("theorems", "all")
    report = run_theorem_suite(catalog, theorems, n_values, resolve_budget(args, config), args.cap)
    return _finish(report, args)


def cmd_enumerate(args: argparse.Namespace, config: dict[str, str]) -> int:
    theorems = args.theorems or config.get("theorems", "all")
    report = brute_force_enumeration(args.points, args.n, theorems, resolve_budget(args, config))
    return _finish(report, args)


def cmd_metric_selftest(args: argparse.Namespace, config: dict[str, str]) -> int:
    spaces = small_spaces()
    if args.metric:
        spaces.append(load_metric_file(args.metric))
    failed = 0
    for result in run_selftest(spaces=spaces):
        if result.ok:
            say(SUCCESS, f"{result.name}: {result.checked} checked")
            continue
        failed += 1
        say(WARNING, f"{result.name}: {len(result.violations)} of {result.checked} failed")
        for violation in result.violations[:10]:
            say(WARNING, f"  {violation}")
    return EXIT_FOUND if failed else EXIT_OK


COMMANDS = {
    "check": cmd_check,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "metric-selftest": cmd_metric_selftest,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config)
        return COMMANDS[args.command](args, config)
    except (HyperdynError, OSError) as e:
        say(WARNING, str(e), sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
