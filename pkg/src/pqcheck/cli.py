"""Command-line front end: ``pqcheck check [options] <scripts>``.

Diagnostics go to stdout so pipelines can consume reports; usage, IO and
registry-load failures go to stderr.  Exit status: 0 no errors (warnings
allowed), 1 at least one error diagnostic, 2 usage/IO/registry failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .checker import check_source
from .errors import RegistryError
from .units import UnitRegistry


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqcheck",
        description="Check quantity scripts for unit, dimension and "
                    "kind-of-quantity correctness.")
    sub = parser.add_subparsers(dest="command", required=True)
    check = sub.add_parser("check", help="check one or more .pq scripts")
    check.add_argument("inputs", nargs="+", metavar="script",
                       help="script files to check")
    check.add_argument("--units", metavar="path", default=None,
                       help="extra unit definitions merged over built-ins")
    check.add_argument("--format", choices=("text", "json"), default="text",
                       help="report format (default: text)")
    check.add_argument("--strict-angle", action="store_true",
                       help="give plane angle its own base dimension")
    check.add_argument("--strict-untagged", action="store_true",
                       help="treat tagged+untagged addition as an error")
    check.add_argument("--max-errors", type=int, metavar="n", default=None,
                       help="truncate the report after n errors")
    return parser


def _load_registry(args) -> UnitRegistry:
    reg = UnitRegistry.builtin(strict_angle=args.strict_angle)
    if args.units is not None:
        with open(args.units, encoding="utf-8") as fh:
            reg = reg.extended(fh.read())
    return reg


def _truncate(entries: list[dict], max_errors: int | None) -> list[dict]:
    if max_errors is None:
        return entries
    out = []
    errors = 0
    for entry in entries:
        if entry["severity"] == "error":
            if errors >= max_errors:
                break
            errors += 1
        out.append(entry)
    return out


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    """Parse arguments, check every input, emit the report."""
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if args.max_errors is not None and args.max_errors <= 0:
        print("pqcheck: --max-errors must be positive", file=stderr)
        return 2

    try:
        reg = _load_registry(args)
    except OSError as exc:
        print(f"pqcheck: cannot read units file: {exc}", file=stderr)
        return 2
    except RegistryError as exc:
        print(f"pqcheck: invalid units file: {exc}", file=stderr)
        return 2

    entries: list[dict] = []
    error_count = 0
    warning_count = 0
    for path in args.inputs:
        try:
            with open(path, encoding="utf-8") as fh:
                source = fh.read()
        except OSError as exc:
            print(f"pqcheck: cannot read {path}: {exc}", file=stderr)
            return 2
        report = check_source(source, reg,
                              strict_untagged=args.strict_untagged)
        error_count += len(report.errors)
        warning_count += len(report.warnings)
        for diag in report.diagnostics:
            entry = diag.to_dict()
            entry["file"] = path
            entries.append(entry)

    shown = _truncate(entries, args.max_errors)
    if args.format == "json":
        document = {
            "diagnostics": shown,
            "summary": {
                "errors": error_count,
                "files": list(args.inputs),
                "warnings": warning_count,
            },
        }
        print(json.dumps(document, sort_keys=True, indent=2), file=stdout)
    else:
        for entry in shown:
            print(f"{entry['file']}:{entry['line']}:{entry['column']}: "
                  f"{entry['code']} {entry['severity']}: {entry['message']}",
                  file=stdout)

    # exit code reflects the full report even when truncated
    return 1 if error_count else 0


def console_main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    console_main()
