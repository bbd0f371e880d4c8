"""Command-line entry point."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from connlint import __version__
from connlint.analysis import analyze
from connlint.errors import ConnlintError
from connlint.report import HTML_REPORT_NAME, JSON_REPORT_NAME, filesystem_provider, to_html, to_json
from connlint.rules.catalog import ALL_RULES, RuleConfig, RuleId
from connlint.source.scope import DEFAULT_DEPTH

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_USAGE = 2
EXIT_FATAL = 3

log = logging.getLogger("connlint")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(message)


def _rule_list(text: str) -> frozenset[RuleId]:
    try:
        return frozenset(RuleId.parse(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _depth(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("depth must be >= 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="connlint", description="Detect connectivity issues in Android app sources.")
    p.add_argument("--root", required=True, type=Path, help="project root directory")
    p.add_argument("--module", help="app module to analyze (default: app, or the only manifest module)")
    p.add_argument("--out", type=Path, default=Path("conan-out"), help="report directory (default: ./conan-out)")
    p.add_argument("--format", choices=("json", "html", "both"), default="both")
    p.add_argument("--enable", type=_rule_list, default=None, metavar="RULES",
                   help="comma-separated rule ids to run (default: all)")
    p.add_argument("--disable", type=_rule_list, default=frozenset(), metavar="RULES",
                   help="comma-separated rule ids to skip")
    p.add_argument("--depth", type=_depth, default=DEFAULT_DEPTH, help="interprocedural call depth")
    p.add_argument("--include-tests", action="store_true", help="also analyze test source roots")
    p.add_argument("--fail-on-findings", action="store_true", help="exit 1 when any finding is reported")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def _config(args: argparse.Namespace) -> RuleConfig:
    enable = args.enable if args.enable is not None else ALL_RULES
    if args.enable is not None and args.enable & args.disable:
        both = ",".join(sorted(r.value for r in args.enable & args.disable))
        raise _UsageError(f"rules both enabled and disabled: {both}")
    return RuleConfig(
        enabled_rules=frozenset(enable - args.disable),
        interprocedural_depth=args.depth,
        include_tests=args.include_tests,
    )


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(format="%(levelname)s: %(message)s", stream=sys.stderr, level=logging.WARNING)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config(args)
        if not args.root.is_dir():
            raise _UsageError(f"--root {args.root} is not a directory")
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"connlint: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)

    try:
        report = analyze(args.root, args.module, config)
    except (ConnlintError, OSError) as exc:
        print(f"connlint: fatal: {exc}", file=sys.stderr)
        return EXIT_FATAL

    for d in report.diagnostics:
        print(f"connlint: warning: {d}", file=sys.stderr)
    for f in report.findings:
        loc = f.locations[0]
        print(f"{f.rule.value} {loc.path}:{loc.line}:{loc.column} {f.message}")

    try:
        args.out.mkdir(parents=True, exist_ok=True)
        if args.format in ("json", "both"):
            (args.out / JSON_REPORT_NAME).write_bytes(to_json(report))
        if args.format in ("html", "both"):
            provider = filesystem_provider(args.root.resolve())
            (args.out / HTML_REPORT_NAME).write_bytes(to_html(report, provider))
    except OSError as exc:
        print(f"connlint: fatal: cannot write reports: {exc}", file=sys.stderr)
        return EXIT_FATAL

    if report.findings and args.fail_on_findings:
        return EXIT_FINDINGS
    return EXIT_OK
