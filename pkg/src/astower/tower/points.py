"""astower.tower.points module.

Rational points of the tower over ``F_{2^k}``.

The affine part of ``C_i`` is counted by following the chains
``x_0, x_1, ..., x_i`` of the equation ``x^2 + x = v + 1 + 1/v``. Rather
than walking every chain, :func:`affine_count` keeps a
:class:`ValueDistribution`, the number of chains ending at each value, and
pushes it one level up at a time. The points outside the affine model come
from the ramification ledger of :mod:`astower.tower.rami`.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from functools import lru_cache
from math import isqrt
from typing import Optional

import numpy as np
import numpy.typing as npt
from sympy import Expr, Rational, sqrt

from astower.core.gf2m import FieldDescriptor, FieldElement, field_new
from astower.core.sequence import A0Class
from astower.tower.exceptions import EnumerationRangeError
from astower.tower.rami import GenusMethod, count_ramified, genus, ledger

__all__ = [
    "MAX_ENUMERATION_DEGREE",
    "MAX_ENUMERATION_LEVEL",
    "AsymptoticsReport",
    "PointCount",
    "SplitReport",
    "TowerStats",
    "ValueDistribution",
    "affine_count",
    "affine_count_naive",
    "asymptotics_table",
    "boundary_count",
    "drinfeld_vladut",
    "format_ratio",
    "hasse_weil_holds",
    "hasse_weil_upper",
    "kummer_tower",
    "point_count",
    "rational_count_f8",
    "serre_upper",
    "split_check",
    "tower_stats",
    "value_distribution",
    "zink",
]


_logger = logging.getLogger(__name__)

MAX_ENUMERATION_DEGREE = 24

# Above this level rational_count_f8 returns 6*2^i + 2 without enumerating.
MAX_ENUMERATION_LEVEL = 20

Array = npt.NDArray[np.int64]


def _check_range(i: int, k: int) -> None:
    if not 1 <= k <= MAX_ENUMERATION_DEGREE:
        raise EnumerationRangeError(
            f"extension degree must be in 1..{MAX_ENUMERATION_DEGREE}, got {k}"
        )
    if i < 0:
        raise EnumerationRangeError(f"level must be >= 0, got {i}")
    if i + k > 62:
        raise EnumerationRangeError(
            f"counts for level {i} over GF(2^{k}) overflow int64"
        )


#
# Whole-field tables. The antilog table is built by doubling, each step scaling
# the known powers by a constant in O(m) numpy passes. Everything else is a
# lookup into it.
#


def _vscale(field: FieldDescriptor, a: Array, b: int) -> Array:
    m, modulus = field.m, field.modulus
    acc = np.zeros_like(a)
    x = a.copy()
    for bit in range(m):
        if b >> bit & 1:
            acc ^= x
        x <<= 1
        x ^= np.where((x >> m) & 1, modulus, 0)
    return acc


def _log_tables(field: FieldDescriptor) -> tuple[Array, Array]:
    """Antilog ``exp[n] = g^n`` for ``n < 2^m - 1`` and its inverse ``log``."""
    size = field.order - 1
    exp = np.ones(1, dtype=np.int64)
    while len(exp) < size:
        step = field.pow_int(field.generator, len(exp))
        exp = np.concatenate([exp, _vscale(field, exp, step)])
    exp = exp[:size]
    log = np.zeros(field.order, dtype=np.int64)
    log[exp] = np.arange(size, dtype=np.int64)
    return exp, log


@lru_cache(maxsize=None)
def _successors(field: FieldDescriptor) -> tuple[Array, Array]:
    """Sources ``v`` with successors and the even root for each."""
    size = field.order - 1
    exp, log = _log_tables(field)
    values = np.arange(1, field.order, dtype=np.int64)
    c = values ^ 1 ^ exp[(-log[values]) % size]

    # y and y + 1 have the same image under y^2 + y, the even one is kept.
    ys = np.arange(0, field.order, 2, dtype=np.int64)
    images = np.where(ys == 0, 0, exp[(2 * log[ys]) % size]) ^ ys
    root = np.full(field.order, -1, dtype=np.int64)
    root[images] = ys

    roots = root[c]
    ok = roots >= 0
    _logger.debug("%r: %d of %d values have successors", field, ok.sum(), field.order)
    return values[ok], roots[ok]


@dataclass(frozen=True)
class ValueDistribution:
    """Number of admissible chains ``x_0, ..., x_stage`` ending at each value.

    :ivar field: The field ``F_{2^k}``.
    :ivar counts: Array indexed by bit pattern.
    :ivar stage: Length of the chains minus one.
    """

    field: FieldDescriptor
    counts: Array
    stage: int = 0

    @classmethod
    def initial(cls, field: FieldDescriptor) -> ValueDistribution:
        """Every ``x_0`` once."""
        return cls(field, np.ones(field.order, dtype=np.int64), 0)

    def propagate(self) -> ValueDistribution:
        """Extend every chain by both roots of its last equation.

        Chains ending in ``0`` stop since ``1/x`` is undefined there.
        """
        sources, roots = _successors(self.field)
        weights = self.counts[sources]
        counts = np.zeros_like(self.counts)
        np.add.at(counts, roots, weights)
        np.add.at(counts, roots ^ 1, weights)
        return ValueDistribution(self.field, counts, self.stage + 1)

    @property
    def total(self) -> int:
        """Number of chains."""
        return int(self.counts.sum())

    def as_dict(self) -> dict[FieldElement, int]:
        """The nonzero counts keyed by field element."""
        return {
            self.field(int(v)): int(n)
            for v, n in enumerate(self.counts)
            if n
        }


def value_distribution(i: int, k: int) -> ValueDistribution:
    """The distribution of ``x_i`` over the affine chains of ``C_i``."""
    _check_range(i, k)
    dist = ValueDistribution.initial(field_new(k))
    for _ in range(i):
        dist = dist.propagate()
        _logger.debug("GF(2^%d) stage %d: %d chains", k, dist.stage, dist.total)
    return dist


def affine_count(i: int, k: int) -> int:
    """Number of affine points of ``C_i`` over ``F_{2^k}``.

    These are the tuples ``(x_0, ..., x_i)`` with ``x_j != 0`` for ``j < i``
    that satisfy every equation of the tower.

    >>> from astower.tower.points import affine_count
    >>> affine_count(1, 1), affine_count(1, 2), affine_count(1, 3)
    (0, 6, 12)
    """
    return value_distribution(i, k).total


def affine_count_naive(i: int, k: int) -> int:
    """Depth first enumeration of the same chains as :func:`affine_count`."""
    _check_range(i, k)
    field = field_new(k)

    def chains(v: int, depth: int) -> int:
        if depth == i:
            return 1
        if not v:
            return 0
        y = field.solve_int(v ^ 1 ^ field.inv_int(v))
        if y is None:
            return 0
        return chains(y, depth + 1) + chains(y ^ 1, depth + 1)

    return sum(chains(v, 0) for v in range(field.order))


@dataclass(frozen=True)
class SplitReport:
    """Complete splitting checks over ``F_{2^k}``.

    Each clause is ``None`` when it does not apply.

    :ivar forward_image: ``{x + 1/x + 1 : x in F_8 - F_2}`` is
        ``{alpha, alpha^2, alpha^4}``.
    :ivar wp_image: ``{y^2 + y : y in F_8 - F_2}`` is the same set.
    :ivar two_successors: Each ``x_0`` outside ``F_2`` has two successors,
        both outside ``F_2``.
    :ivar sweeps: The successors run through all of ``F_{2^k} - F_2``.
    """

    k: int
    forward_image: Optional[bool]
    wp_image: Optional[bool]
    two_successors: Optional[bool]
    sweeps: Optional[bool]

    def clauses(self) -> dict[str, Optional[bool]]:
        """Clause name to outcome."""
        return {
            "forward_image": self.forward_image,
            "wp_image": self.wp_image,
            "two_successors": self.two_successors,
            "sweeps": self.sweeps,
        }

    @property
    def applicable(self) -> bool:
        """Whether any clause applies."""
        return any(v is not None for v in self.clauses().values())

    @property
    def passed(self) -> bool:
        """Every applicable clause holds."""
        return self.applicable and all(
            v for v in self.clauses().values() if v is not None
        )


def split_check(k: int) -> SplitReport:
    """Check that every point of ``C_0(F_{2^k}) - F_2`` splits completely.

    >>> from astower.tower.points import split_check
    >>> split_check(3).passed
    True
    >>> split_check(2).two_successors
    False
    >>> split_check(1).applicable
    False
    """
    _check_range(0, k)
    field = field_new(k)
    domain = range(2, field.order)
    if not domain:
        return SplitReport(k, None, None, None, None)

    successors = {}
    for v in domain:
        y = field.solve_int(v ^ 1 ^ field.inv_int(v))
        successors[v] = () if y is None else (y, y ^ 1)
    two = all(len(s) == 2 and min(s) >= 2 for s in successors.values())
    reached = {y for s in successors.values() for y in s}
    sweeps = reached == set(domain)

    forward = wp_image = None
    if k == 3:
        alpha = field.generator
        target = {alpha, field.pow_int(alpha, 2), field.pow_int(alpha, 4)}
        forward = {v ^ 1 ^ field.inv_int(v) for v in domain} == target
        wp_image = {field.square_int(y) ^ y for y in domain} == target
    return SplitReport(k, forward, wp_image, two, sweeps)


def boundary_count(level: int, k: int) -> tuple[int, bool]:
    """Rational points of ``C_level`` outside the affine model.

    These are the ledger classes with an ``inf`` entry together with
    ``(0, inf, ...)``. A class counts when its coordinates lie in
    ``F_{2^k}`` and it consists of a single point. Classes of several points
    over ``F_{2^k}`` are left out, and the second value reports whether the
    count is exact.

    >>> from astower.tower.points import boundary_count
    >>> boundary_count(2, 2), boundary_count(2, 3)
    ((4, True), (2, True))
    """
    _check_range(level, k)
    if level == 0:
        return 1, True
    field = field_new(k)
    count = 0
    exact = True
    for entry in ledger(level):
        if entry.a0_class is not A0Class.SPECIAL and entry.tail_j == 0:
            continue
        if not entry.sequence.is_defined_over(field):
            continue
        if entry.mult == 1:
            count += 1
        else:
            exact = False
    return count, exact


@dataclass(frozen=True)
class PointCount:
    """Number of ``F_{2^k}``-rational points of ``C_level``.

    ``exact`` is false when the boundary contribution is only a lower bound.
    """

    level: int
    k: int
    affine: int
    boundary: int
    exact: bool

    @property
    def total(self) -> int:
        """Affine plus boundary points."""
        return self.affine + self.boundary


def point_count(level: int, k: int) -> PointCount:
    """Count ``C_level(F_{2^k})``.

    >>> from astower.tower.points import point_count
    >>> [point_count(1, k).total for k in (1, 2, 3)]
    [2, 8, 14]
    """
    affine = affine_count(level, k)
    boundary, exact = boundary_count(level, k)
    if not exact:
        _logger.info("C_%d(GF(2^%d)): boundary count is a lower bound", level, k)
    return PointCount(level, k, affine, boundary, exact)


def rational_count_f8(i: int) -> int:
    """``#C_i(F_8)``, which is ``6 * 2^i + 2``.

    Levels above :data:`MAX_ENUMERATION_LEVEL` return the formula value.
    """
    if i < 1:
        raise EnumerationRangeError(f"level must be >= 1, got {i}")
    if i > MAX_ENUMERATION_LEVEL:
        _logger.info("C_%d(F_8): enumeration skipped, using 6*2^i + 2", i)
        return 6 * (1 << i) + 2
    return point_count(i, 3).total


def drinfeld_vladut(q: int) -> Expr:
    """Upper bound ``sqrt(q) - 1`` for ``lim N/g`` over ``F_q``."""
    return sqrt(q) - 1


def zink(p: int) -> Rational:
    """Lower bound ``2(p^2 - 1)/(p + 2)`` over ``F_{p^3}`` from the Zink tower."""
    return Rational(2 * (p * p - 1), p + 2)


def kummer_tower(q: int) -> Rational:
    """Limit ``2/(q - 2)`` of the Kummer tower over ``F_q``."""
    return Rational(2, q - 2)


def hasse_weil_upper(q: int, g: int) -> int:
    """``q + 1 + floor(2 g sqrt(q))``."""
    return q + 1 + isqrt(4 * g * g * q)


def serre_upper(q: int, g: int) -> int:
    """``q + 1 + g floor(2 sqrt(q))``."""
    return q + 1 + g * isqrt(4 * q)


def hasse_weil_holds(q: int, g: int, k: int, count: int) -> bool:
    """Whether ``|count - (q^k + 1)| <= 2 g q^(k/2)``."""
    deviation = count - q**k - 1
    return deviation * deviation <= 4 * g * g * q**k


@dataclass(frozen=True)
class TowerStats:
    """One row of the asymptotics table.

    :ivar ratio: ``N8/g`` as an exact rational, ``None`` for ``g = 0``.
    """

    level: int
    n: int
    genus_hurwitz: int
    genus_closed: int
    n8: int
    ratio: Optional[Rational]

    @property
    def ratio_num(self) -> int:
        """Numerator of the reduced ratio (``N8`` when ``g = 0``)."""
        return self.n8 if self.ratio is None else int(self.ratio.p)

    @property
    def ratio_den(self) -> int:
        """Denominator of the reduced ratio (0 when ``g = 0``)."""
        return 0 if self.ratio is None else int(self.ratio.q)

    @property
    def ratio_float(self) -> float:
        """The ratio as a float, ``inf`` when ``g = 0``."""
        return float("inf") if self.ratio is None else float(self.ratio)


def format_ratio(stats: TowerStats, places: int = 6) -> str:
    """Ratio with ``places`` decimals rounded half to even, or ``inf``."""
    if stats.ratio is None:
        return "inf"
    quotient = Decimal(stats.ratio_num) / Decimal(stats.ratio_den)
    return str(quotient.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def tower_stats(i: int) -> TowerStats:
    """Ramification, genus and ``F_8`` point count of ``C_i``.

    >>> from astower.tower.points import tower_stats
    >>> s = tower_stats(2)
    >>> (s.n, s.genus_hurwitz, s.n8, s.ratio_num, s.ratio_den)
    (6, 5, 26, 26, 5)
    """
    g = genus(i, GenusMethod.HURWITZ)
    n8 = 9 if i == 0 else rational_count_f8(i)
    ratio = Rational(n8, g) if g else None
    return TowerStats(i, count_ramified(i), g, genus(i, GenusMethod.CLOSED), n8, ratio)


@dataclass(frozen=True)
class AsymptoticsReport:
    """Per level statistics with the bounds they are compared against.

    :ivar limit: The limit ``3/2`` of ``N8/g``.
    """

    rows: list[TowerStats]
    dv_bound: Expr
    zink_bound: Rational
    kummer_bound: Rational
    limit: Rational

    @property
    def limit_equals_zink(self) -> bool:
        """Whether the limit of the tower meets the Zink bound at ``p = 2``."""
        return bool(self.limit == self.zink_bound)


def asymptotics_table(i_max: int) -> AsymptoticsReport:
    """Rows ``1..i_max`` with the Drinfeld-Vladut, Zink and Kummer bounds."""
    if i_max < 1:
        raise EnumerationRangeError(f"i_max must be >= 1, got {i_max}")
    rows = [tower_stats(i) for i in range(1, i_max + 1)]
    return AsymptoticsReport(
        rows, drinfeld_vladut(8), zink(2), kummer_tower(8), Rational(3, 2)
    )
