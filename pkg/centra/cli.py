"""
Command line interface.

    centra invariants builtin:S4
    centra verify --suite cdim-bounds --format json
    centra corpus --list
    centra steinitz "4 | 2^inf"

Exit status is 0 on success, 1 when a suite reports a failing check and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from . import __version__
from .cdim import cdim, subgroup_chain_length
from .config import Caps, use_caps
from .corpus import corpus_by_name, corpus_default, load_corpus_dir, load_group
from .exceptions import CapExceededError, CentraError
from .harness import SUITES, run_suites
from .layer import components, generalized_fitting
from .permcore import GroupHandle
from .report import render_csv, render_json
from .simplerec import RecognitionTable, lambda_invariant, use_table
from .steinitz import evaluate
from .subgrp import (
    derived_length,
    fitting,
    is_soluble,
    socle,
    soluble_radical,
    upper_fitting_series,
)

UTC = timezone.utc

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURES = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="centra",
        description="Centralizer dimension and structure invariants of finite permutation groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="more logging (repeatable)"
    )
    parser.add_argument("-q", "--quiet", action="store_true", help="only log errors")
    sub = parser.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="print the invariants of one group")
    inv.add_argument("group", help="group file path or builtin:NAME")

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument(
        "--suite",
        action="append",
        choices=sorted(SUITES),
        help="suite to run (repeatable; default: all)",
    )
    verify.add_argument("--format", choices=["json", "csv"], default="json")
    verify.add_argument("--out", type=Path, help="write the report here instead of stdout")
    verify.add_argument(
        "--group", action="append", help="restrict to corpus groups with this name (repeatable)"
    )
    verify.add_argument("--table", type=Path, help="alternative recognition table")
    verify.add_argument(
        "--corpus-dir", type=Path, help="directory of .grp files added to the corpus"
    )
    verify.add_argument("--jobs", type=int, default=1, help="worker threads")

    corpus = sub.add_parser("corpus", help="show the built-in corpus")
    corpus.add_argument("--list", action="store_true", help="list entry names and orders")

    steinitz = sub.add_parser("steinitz", help="evaluate a Steinitz number expression")
    steinitz.add_argument("expr", help='e.g. "gcd(12, 18)" or "4 | 2^inf"')
    return parser


def _configure_logging(verbose: int, quiet: bool) -> None:
    if quiet:
        level = logging.ERROR
    elif verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def resolve_group(source: str) -> GroupHandle:
    """A group from ``builtin:NAME`` or a group file path.

    Raises:
        InvalidParameterError: On an unknown builtin name
        GroupFormatError: On a malformed group file
    """
    if source.startswith("builtin:"):
        return corpus_by_name(source.removeprefix("builtin:")).group
    return load_group(source)


def _attempt(compute: Callable[[], Any], render: Callable[[Any], str] = str) -> str:
    try:
        return render(compute())
    except CapExceededError as exc:
        return f"skipped ({exc})"
    except CentraError as exc:
        return f"error ({exc})"


def invariant_lines(G: GroupHandle) -> list[str]:
    """The ``invariants`` text block, one ``label value`` line per invariant."""
    lines = [
        f"name {G.name or '-'}",
        f"degree {G.degree}",
        f"order {G.order()}",
        f"soluble: {_attempt(lambda: is_soluble(G), lambda s: 'yes' if s else 'no')}",
    ]
    try:
        c = cdim(G)
        lines.append(f"cdim_terms {c.value_terms}")
        lines.append(f"cdim_steps {c.value_steps}")
    except CapExceededError as exc:
        lines.append(f"cdim skipped ({exc})")
    lines.append(f"l(G) {_attempt(lambda: subgroup_chain_length(G))}")
    lines.append(f"lambda {_attempt(lambda: lambda_invariant(G))}")
    lines.append(
        "derived length "
        + _attempt(lambda: derived_length(G), lambda n: "not soluble" if n is None else str(n))
    )
    lines.append(f"F order {_attempt(lambda: fitting(G).order())}")
    lines.append(f"F3 order {_attempt(lambda: upper_fitting_series(G, 3).order())}")
    lines.append(f"R order {_attempt(lambda: soluble_radical(G).order())}")
    if G.order() > 1:
        lines.append(f"socle order {_attempt(lambda: socle(G).order())}")
    lines.append(
        "components "
        + _attempt(
            lambda: components(G).components,
            lambda comps: f"{len(comps)} (orders {[H.order() for H in comps]})",
        )
    )
    lines.append(f"F* order {_attempt(lambda: generalized_fitting(G).order())}")
    return lines


def _cmd_invariants(args: argparse.Namespace) -> int:
    try:
        G = resolve_group(args.group)
    except (CentraError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    print("\n".join(invariant_lines(G)))
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    try:
        corpus = corpus_default()
        if args.corpus_dir:
            corpus += load_corpus_dir(args.corpus_dir)
        table = RecognitionTable.load(args.table) if args.table else None
    except (CentraError, OSError) as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    if args.group:
        known = {e.name for e in corpus}
        missing = [g for g in args.group if g not in known]
        if missing:
            logger.error("Unknown group(s): %s", ", ".join(missing))
            return EXIT_USAGE
        corpus = [e for e in corpus if e.name in args.group]
    if args.jobs < 1:
        logger.error("--jobs must be at least 1")
        return EXIT_USAGE

    def run() -> list[Any]:
        return run_suites(args.suite, corpus, args.jobs)

    if table is not None:
        with use_table(table):
            results = run()
    else:
        results = run()
    generated_at = datetime.now(UTC).isoformat(timespec="seconds")
    text = render_json(results, generated_at) if args.format == "json" else render_csv(results)
    if args.out:
        args.out.write_text(text, encoding="utf-8")
        logger.info("Wrote %s", args.out)
    else:
        sys.stdout.write(text)
    return EXIT_FAILURES if any(r.has_failures for r in results) else EXIT_OK


def _cmd_corpus(args: argparse.Namespace) -> int:
    for entry in corpus_default():
        order = entry.annotations.get("order", "?")
        if args.list:
            print(f"{entry.name:<14} {order:>6}  {entry.builder}")
        else:
            print(entry.name)
    return EXIT_OK


def _cmd_steinitz(args: argparse.Namespace) -> int:
    try:
        value = evaluate(args.expr)
    except CentraError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    if isinstance(value, bool):
        print("true" if value else "false")
    else:
        print(value)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "invariants": _cmd_invariants,
    "verify": _cmd_verify,
    "corpus": _cmd_corpus,
    "steinitz": _cmd_steinitz,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    _configure_logging(args.verbose, args.quiet)
    try:
        caps = Caps.from_env()
    except ValueError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    with use_caps(caps):
        return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
