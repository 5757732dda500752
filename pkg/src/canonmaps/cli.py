"""Command line entry point: ``canonmaps run`` and ``canonmaps selftest``."""

from __future__ import annotations

import argparse
import sys

from .commands import execute, render_json, render_text
from .dsl import ScriptError, parse_script
from .finset import DEFAULT_BUDGET
from .selftest import run_selftest

EXIT_OK, EXIT_FAILED, EXIT_PARSE = 0, 1, 2


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="canonmaps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a script file (or - for stdin)")
    run.add_argument("script", nargs="?", default="-")
    run.add_argument("--json", action="store_true", help="emit JSON records instead of text")
    run.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                     help="candidate budget for enumerations (default %(default)s)")

    st = sub.add_parser("selftest", help="run the exhaustive invariant suites")
    st.add_argument("--max-size", type=int, default=3, choices=range(1, 6), metavar="N")

    fmt = sub.add_parser("canonical", help="print a script in canonical form")
    fmt.add_argument("script", nargs="?", default="-")
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_run(args) -> int:
    try:
        script = parse_script(_read(args.script))
    except ScriptError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    records = execute(script, args.budget)
    sys.stdout.write(render_json(records) if args.json else render_text(records))
    failed = [r for r in records if not r.ok]
    for r in failed:
        for d in r.diagnostics:
            print(d, file=sys.stderr)
    return EXIT_FAILED if failed else EXIT_OK


def cmd_canonical(args) -> int:
    try:
        script = parse_script(_read(args.script))
    except ScriptError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(script.render())
    return EXIT_OK


def cmd_selftest(args) -> int:
    results = run_selftest(args.max_size)
    width = max(len(r.name) for r in results)
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        print(f"{status}  {r.name:<{width}}  {r.checked - len(r.failures)}/{r.checked}  {r.seconds:.2f}s")
        for what in r.failures[:3]:
            print(f"      counterexample: {what!r}")
    bad = sum(not r.ok for r in results)
    print(f"{len(results) - bad} of {len(results)} suites passed (max size {args.max_size})")
    return EXIT_FAILED if bad else EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"run": cmd_run, "selftest": cmd_selftest, "canonical": cmd_canonical}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
