"""Command-line interface."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from astower.cli import (
    FORMATS,
    RunConfig,
    emit_table,
    render,
    run_verify,
    write_output,
)
from astower.core.exceptions import AsTowerError
from astower.core.laurent import DEFAULT_PRECISION, expansion_table
from astower.core.sequence import IndexSequence
from astower.tower.points import point_count, split_check
from astower.tower.rami import count_ramified, genus_table, n_closed
from astower.tower.zeta import genus_crosscheck

_logger = logging.getLogger("astower")

COMMANDS = ("verify", "table", "points", "genus", "nseq", "zeta", "expand")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="astower",
        description="Ramification, genus and rational points of a binary tower.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--imax", type=int, default=10, help="largest level (default: 10)"
    )
    parser.add_argument("--k", type=int, default=3, help="extension degree of F_{2^k}")
    parser.add_argument("--level", type=int, default=1, help="level of the curve C_i")
    parser.add_argument(
        "--precision",
        type=int,
        default=DEFAULT_PRECISION,
        help=f"series truncation order (default: {DEFAULT_PRECISION})",
    )
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default="text")
    parser.add_argument("--out", default=None, help="write output to this file")
    parser.add_argument("--seq", default=None, help="index sequence such as 1,rho,1")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def _configure_logging(verbose: int) -> None:
    levels = (logging.WARNING, logging.INFO, logging.DEBUG)
    level = levels[min(verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _dump(data: object, config: RunConfig) -> None:
    write_output(json.dumps(data, indent=2) + "\n", config.out)


def dispatch(config: RunConfig) -> int:
    """Run one command and return its exit status."""
    if config.command == "verify":
        return run_verify(config)
    if config.command == "table":
        emit_table(config)
    elif config.command == "points":
        pc = point_count(config.level, config.k)
        report = split_check(config.k)
        row: dict[str, object] = {
            "level": pc.level,
            "k": pc.k,
            "affine": pc.affine,
            "boundary": pc.boundary,
            "total": pc.total,
            "exact": pc.exact,
        }
        row.update({f"split_{name}": v for name, v in report.clauses().items()})
        write_output(render([row], config.fmt), config.out)
    elif config.command == "genus":
        rows = [
            {"i": i, "genus_hurwitz": h, "genus_closed": c}
            for i, h, c in genus_table(config.i_max)
        ]
        write_output(render(rows, config.fmt), config.out)
    elif config.command == "nseq":
        rows = [
            {"i": i, "n_i": count_ramified(i), "n_closed": n_closed(i)}
            for i in range(1, config.i_max + 1)
        ]
        write_output(render(rows, config.fmt), config.out)
    elif config.command == "zeta":
        _dump(genus_crosscheck(config.level).as_dict(), config)
    else:
        assert config.command == "expand" and config.seq is not None
        seq = IndexSequence.parse(config.seq)
        _dump(expansion_table(seq, config.precision), config)
    return 0


def main(*args: str) -> int:
    """Entry point for ``astower``; returns the process exit status."""
    try:
        ns = _parser().parse_args(args)
    except SystemExit as exc:
        return int(exc.code or 0)
    _configure_logging(ns.verbose)
    try:
        config = RunConfig(
            command=ns.command,
            i_max=ns.imax,
            k=ns.k,
            level=ns.level,
            precision=ns.precision,
            fmt=ns.fmt,
            out=ns.out,
            seq=ns.seq,
            verbose=ns.verbose,
        )
    except ValueError as exc:
        print(f"astower: error: {exc}", file=sys.stderr)
        return 2
    try:
        return dispatch(config)
    except (AsTowerError, OSError) as exc:
        _logger.error("%s: %s", type(exc).__name__, exc)
        return 1


def run() -> None:
    """Console script wrapper."""
    sys.exit(main(*sys.argv[1:]))  # pragma: no cover


if __name__ == "__main__":
    run()  # pragma: no cover
