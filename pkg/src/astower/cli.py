"""Verification suites and table output behind the ``astower`` command."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from astower.core.exceptions import AsTowerError
from astower.core.gf2m import field_new, solve_artin_schreier
from astower.core.laurent import (
    DEFAULT_PRECISION,
    F4,
    BTable,
    chain_expand,
    classify_chain_symbolic,
    expected_top_exponent,
    lemma31_residual,
    principal_F,
)
from astower.core.sequence import IndexSequence, Symbol
from astower.tower.points import (
    affine_count,
    affine_count_naive,
    asymptotics_table,
    format_ratio,
    hasse_weil_upper,
    rational_count_f8,
    serre_upper,
    split_check,
    tower_stats,
)
from astower.tower.rami import (
    classify_closed,
    count_ramified,
    genus_table,
    n_closed,
    zero_sequences,
)
from astower.tower.zeta import genus_crosscheck

__all__ = [
    "CSV_HEADER",
    "FORMATS",
    "RunConfig",
    "SuiteResult",
    "alternating_sequences",
    "emit_table",
    "render",
    "run_verify",
    "table_rows",
    "write_output",
]


_logger = logging.getLogger(__name__)

CSV_HEADER = (
    "i",
    "n_i",
    "genus_hurwitz",
    "genus_closed",
    "N8",
    "ratio_num",
    "ratio_den",
    "ratio_float",
)

FORMATS = ("text", "csv", "json")

# Coefficient tables of the laurent suite: all of them up to this level,
# then RANDOM_TRIALS per sequence and level drawn with SEED.
EXHAUSTIVE_LEVEL = 4
RANDOM_TRIALS = 16
SEED = 20240229

# First level with N8/g below sqrt(8) - 1.
DV_FROM_LEVEL = 8


@dataclass(frozen=True)
class RunConfig:
    """Options of one command line run."""

    command: str = "table"
    i_max: int = 10
    k: int = 3
    level: int = 1
    precision: int = DEFAULT_PRECISION
    fmt: str = "text"
    out: Optional[str] = None
    seq: Optional[str] = None
    verbose: int = 0

    def __post_init__(self) -> None:
        """Reject values no command can use."""
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.i_max < 0:
            raise ValueError(f"i_max must be >= 0, got {self.i_max}")
        if self.command == "expand" and self.seq is None:
            raise ValueError("expand needs --seq")

    def scope(self, default: int) -> int:
        """Largest level of a suite, narrowed when ``i_max`` is below 10."""
        return min(default, self.i_max) if self.i_max < 10 else default


@dataclass(frozen=True)
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    scope: str
    passed: bool
    detail: str = ""

    def __str__(self) -> str:
        """One report line."""
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.name:<10} {status}  {self.scope}"
        return f"{line}\n    {self.detail}" if self.detail else line


def alternating_sequences(length: int) -> list[IndexSequence]:
    """All sequences of ``1`` and ``rho``/``rho^2`` alternating, of a given length."""
    sequences = []
    for first in (Symbol.ONE, Symbol.RHO, Symbol.RHO2):
        starts_rho = first is not Symbol.ONE
        rho_positions = [j for j in range(1, length) if (j % 2 == 0) == starts_rho]
        for choice in product((Symbol.RHO, Symbol.RHO2), repeat=len(rho_positions)):
            entries = [first] + [Symbol.ONE] * (length - 1)
            for position, symbol in zip(rho_positions, choice):
                entries[position] = symbol
            sequences.append(IndexSequence(tuple(entries)))
    return sequences


#
# Suites. Each one raises AssertionError or an AsTowerError on the first
# failure and returns a short scope description.
#


def _suite_gf2m(config: RunConfig) -> str:
    m_max = 12
    for m in range(1, m_max + 1):
        field = field_new(m)
        order = field.order
        assert field.gen.order() == order - 1, f"GF(2^{m}): generator is not primitive"
        trace_zero = 0
        for x in range(order):
            if x:
                assert field.mul_int(x, field.inv_int(x)) == 1, (
                    f"GF(2^{m}): {x} * 1/{x}"
                )
            assert field.trace_int(field.square_int(x)) == field.trace_int(x)
            if field.trace_int(x) == 0:
                trace_zero += 1
                roots = solve_artin_schreier(field(x))
                assert roots is not None, f"GF(2^{m}): no root for trace zero {x}"
                assert all(y.wp() == field(x) for y in roots)
            else:
                assert solve_artin_schreier(field(x)) is None
        assert trace_zero == order // 2, f"GF(2^{m}): {trace_zero} trace zero elements"
    return f"m <= {m_max}"


def _coefficient_tables(
    p: int, level: int, rng: np.random.Generator
) -> list[dict[int, int]]:
    # Every table up to EXHAUSTIVE_LEVEL, RANDOM_TRIALS random ones above.
    indices = list(range(p + 2, level + 1, 2))
    if level <= EXHAUSTIVE_LEVEL:
        choices = product(range(F4.order), repeat=len(indices))
        return [dict(zip(indices, c)) for c in choices]
    return [
        dict(zip(indices, (int(b) for b in rng.integers(0, F4.order, len(indices)))))
        for _ in range(RANDOM_TRIALS)
    ]


def _suite_laurent(config: RunConfig) -> str:
    i_max = config.scope(8)
    for seq in alternating_sequences(i_max + 1):
        ms = chain_expand(seq, config.precision)
        cls = seq.alternation_class()
        for j, m in enumerate(ms):
            F = m.inverse().principal_part()
            expected = principal_F(seq, j)
            assert F == expected, f"{seq}: principal part of 1/m_{j} is {F}"
            top = expected_top_exponent(cls, j)
            assert F.top_exponent == top, (
                f"{seq}: F_{j} has pole order {F.top_exponent}, not {top}"
            )
            assert F.is_two_linearized(), f"{seq}: F_{j} is not 2-linearized"

    rng = np.random.default_rng(SEED)
    for seq in alternating_sequences(i_max + 1):
        p = seq.a0_class().parity
        for level in range(p, i_max + 1, 2):
            for coeffs in _coefficient_tables(p, level, rng):
                residual = lemma31_residual(BTable(level, coeffs), seq)
                assert not residual, (
                    f"{seq}: decomposition of {coeffs} leaves {residual}"
                )

    for i in range(1, i_max + 1):
        for seq in zero_sequences(i):
            steps = classify_chain_symbolic(seq, i)
            for step in steps:
                closed = classify_closed(i, step.t_step, seq.a0_class())
                assert step.kind is closed, (
                    f"{seq} step {step.t_step}: {step.kind.value}"
                )
                expected = -(1 << max(i // 2 - step.t_step // 2, 0))
                assert step.valuation == expected, (
                    f"{seq} step {step.t_step}: ord {step.valuation} != {expected}"
                )
    return f"i <= {i_max}, precision {config.precision}"


def _suite_rami(config: RunConfig) -> str:
    i_max = config.scope(30)
    for i in range(1, i_max + 1):
        assert len(zero_sequences(i)) == 1 << ((i + 1) // 2)
        assert count_ramified(i) == n_closed(i), f"n_{i} = {count_ramified(i)}"
    return f"i <= {i_max}"


def _suite_genus(config: RunConfig) -> str:
    i_max = config.scope(50)
    for i, hurwitz, closed in genus_table(i_max):
        assert hurwitz == closed, f"g(C_{i}): {hurwitz} != {closed}"
    return f"i <= {i_max}"


def _suite_splitting(config: RunConfig) -> str:
    i_max = config.scope(15)
    report = split_check(3)
    assert report.passed, f"split check over F_8: {report.clauses()}"
    for i in range(1, min(i_max, 4) + 1):
        for k in range(1, 5):
            assert affine_count(i, k) == affine_count_naive(i, k), f"C_{i}(GF(2^{k}))"
    for i in range(1, i_max + 1):
        assert affine_count(i, 3) == 6 << i, f"affine C_{i}(F_8) = {affine_count(i, 3)}"
        assert rational_count_f8(i) == (6 << i) + 2
    table = asymptotics_table(max(i_max, 1))
    dv = float(table.dv_bound)
    for stats in table.rows:
        g = stats.genus_hurwitz
        assert stats.n8 <= serre_upper(8, g) <= hasse_weil_upper(8, g), (
            f"C_{stats.level}: {stats.n8} points above the Weil bounds"
        )
        if stats.level >= DV_FROM_LEVEL:
            assert stats.ratio_float < dv, f"C_{stats.level}: ratio above {dv}"
    assert table.limit_equals_zink
    return f"i <= {i_max}"


def _suite_zeta(config: RunConfig) -> str:
    levels = [level for level in (1, 2) if level <= config.scope(2)]
    for level in levels:
        genus_crosscheck(level)
    return "levels " + (", ".join(str(level) for level in levels) or "none")


_SUITES: list[tuple[str, Callable[[RunConfig], str]]] = [
    ("gf2m", _suite_gf2m),
    ("laurent", _suite_laurent),
    ("rami", _suite_rami),
    ("genus", _suite_genus),
    ("splitting", _suite_splitting),
    ("zeta", _suite_zeta),
]


def run_suites(config: RunConfig) -> list[SuiteResult]:
    """Run every suite in order and collect the outcomes."""
    results = []
    for name, suite in _SUITES:
        _logger.debug("suite %s: start", name)
        try:
            scope = suite(config)
        except (AssertionError, AsTowerError) as exc:
            detail = f"{type(exc).__name__}: {exc}"
            results.append(SuiteResult(name, "", False, detail))
            _logger.info("suite %s failed: %s", name, detail)
        else:
            results.append(SuiteResult(name, scope, True))
            _logger.info("suite %s passed (%s)", name, scope)
    return results


def run_verify(config: RunConfig) -> int:
    """Run the suites, write the report and return the exit status."""
    results = run_suites(config)
    passed = sum(r.passed for r in results)
    lines = [str(r) for r in results]
    lines.append(f"{passed}/{len(results)} suites passed")
    write_output("\n".join(lines) + "\n", config.out)
    return 0 if passed == len(results) else 1


def table_rows(i_max: int) -> list[dict[str, object]]:
    """Rows of the asymptotics table, the single row for ``P^1`` when ``i_max = 0``."""
    levels = [0] if i_max == 0 else range(1, i_max + 1)
    rows = []
    for i in levels:
        s = tower_stats(i)
        values = (
            s.level,
            s.n,
            s.genus_hurwitz,
            s.genus_closed,
            s.n8,
            s.ratio_num,
            s.ratio_den,
            format_ratio(s),
        )
        rows.append(dict(zip(CSV_HEADER, values)))
    return rows


def render(rows: list[dict[str, object]], fmt: str) -> str:
    """Format rows of plain data as ``csv``, ``json`` or aligned ``text``."""
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if not rows:
        return ""
    header = list(rows[0])
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=header, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buffer.getvalue()
    cells = [header] + [[str(row[h]) for h in header] for row in rows]
    widths = [max(len(line[n]) for line in cells) for n in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in cells]
    return "\n".join(lines) + "\n"


def emit_table(config: RunConfig) -> str:
    """The ``N8/g`` table for ``i <= i_max`` in the configured format."""
    rows = table_rows(config.i_max)
    if config.fmt == "json":
        for row in rows:
            ratio = row["ratio_float"]
            row["ratio_float"] = None if ratio == "inf" else float(str(ratio))
    text = render(rows, config.fmt)
    write_output(text, config.out)
    return text


def write_output(text: str, out: Optional[str]) -> None:
    """Print ``text`` or write it to the file ``out``."""
    if out is None:
        print(text, end="")
    else:
        Path(out).write_text(text)
        _logger.info("wrote %s", out)
