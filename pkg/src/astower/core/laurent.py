"""astower.core.laurent module.

Truncated Laurent series over ``F_4`` and the local expansions of the tower
coordinates at a boundary point.

Near a point with index sequence ``(a_0, a_1, ...)`` in ``1, rho, rho^2``
the coordinates are written ``x_j = a_j + m_j(t)`` with ``t = x_0 + a_0``.
Each ``m_j`` has a zero of order ``2^ceil(j/2)`` (or ``2^floor(j/2)`` when
``a_0`` is ``rho`` or ``rho^2``) and the principal part ``F_j`` of
``1/m_j`` is a polynomial in ``1/t`` whose exponents are powers of 2. The
functions here compute these expansions, the reduction of combinations of
the ``F_j`` used by the ramification analysis and the step by step
classification of the chains above a zero of ``x_i``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from enum import Enum
from typing import Mapping, Sequence, Union

from astower.core.exceptions import (
    FieldMismatchError,
    NoPositiveRootError,
    PrecisionError,
    SequenceError,
)
from astower.core.gf2m import FieldDescriptor, FieldElement, field_new
from astower.core.sequence import A0Class, IndexSequence, f4_name

__all__ = [
    "DEFAULT_PRECISION",
    "BTable",
    "LaurentSeries",
    "PrincipalPart",
    "Ramification",
    "StepClassification",
    "chain_expand",
    "classify_chain_symbolic",
    "classify_step_symbolic",
    "expansion_table",
    "expected_top_exponent",
    "lemma31_decompose",
    "lemma31_residual",
    "principal_F",
    "series_arith",
    "solve_wp",
]


_logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 128

F4 = field_new(2)

Coefficient = Union[FieldElement, int]


def _bits(field: FieldDescriptor, c: Coefficient) -> int:
    if isinstance(c, FieldElement):
        if c.field is not field:
            raise FieldMismatchError(f"{c.field!r} and {field!r}")
        return c.coeffs
    if not 0 <= c < field.order:
        raise ValueError(f"coefficient {c!r} does not fit in {field!r}")
    return c


class LaurentSeries:
    """A Laurent series ``sum c_n t^n`` known for all ``n < precision``.

    :ivar field: The coefficient field.
    :ivar min_order: Order of the first nonzero term, or ``precision`` when
        the series is zero as far as it is known.
    :ivar precision: Exclusive upper bound of the known orders.

    Arithmetic propagates precision: a sum is known up to the smaller of the
    two precisions, a product of ``f`` and ``g`` up to
    ``min(prec_f + ord_g, prec_g + ord_f)`` and ``1/f`` up to
    ``prec_f - 2*ord_f``.

    >>> from astower.core.laurent import LaurentSeries
    >>> t = LaurentSeries.parameter(precision=6)
    >>> print(t)
    t + O(t^6)
    >>> print((t + LaurentSeries.constant(1, 6)).inverse())
    1 + t + t^2 + t^3 + t^4 + t^5 + O(t^6)
    >>> print(t.inverse())
    t^-1 + O(t^4)
    """

    __slots__ = (
        "field",
        "min_order",
        "precision",
        "_coeffs",
    )

    field: FieldDescriptor
    min_order: int
    precision: int
    _coeffs: tuple[int, ...]

    def __init__(
        self,
        min_order: int,
        coeffs: Sequence[Coefficient],
        precision: int,
        field: FieldDescriptor = F4,
    ):
        """Series with ``coeffs[k]`` at order ``min_order + k``.

        Terms at orders ``>= precision`` are dropped and leading zeros are
        stripped so that ``min_order`` is the true order.
        """
        bits = [_bits(field, c) for c in coeffs[: max(precision - min_order, 0)]]
        lead = 0
        while lead < len(bits) and not bits[lead]:
            lead += 1
        while bits and not bits[-1]:
            bits.pop()
        self.field = field
        self.precision = precision
        if not bits:
            self.min_order = precision
            self._coeffs = ()
        else:
            self.min_order = min_order + lead
            self._coeffs = tuple(bits[lead:])

    @classmethod
    def parameter(cls, precision: int = DEFAULT_PRECISION) -> LaurentSeries:
        """The local parameter ``t``."""
        return cls.monomial(1, 1, precision)

    @classmethod
    def constant(
        cls, c: Coefficient, precision: int = DEFAULT_PRECISION
    ) -> LaurentSeries:
        """A constant series."""
        return cls.monomial(0, c, precision)

    @classmethod
    def monomial(
        cls, order: int, c: Coefficient = 1, precision: int = DEFAULT_PRECISION
    ) -> LaurentSeries:
        """The series ``c t^order``."""
        return cls(order, [c], precision)

    def __repr__(self) -> str:
        """Constructor form with the raw bit patterns."""
        return (
            f"LaurentSeries({self.min_order}, {list(self._coeffs)},"
            f" {self.precision})"
        )

    def __str__(self) -> str:
        """Human readable sum of terms with the ``O(t^p)`` tail."""
        terms = []
        for k, c in enumerate(self._coeffs):
            if not c:
                continue
            n = self.min_order + k
            mono = "" if n == 0 else "t" if n == 1 else f"t^{n}"
            name = f4_name(c) if self.field is F4 else str(self.field(c))
            if not mono:
                terms.append(name)
            elif name == "1":
                terms.append(mono)
            else:
                terms.append(f"{name}*{mono}")
        terms.append(f"O(t^{self.precision})")
        return " + ".join(terms)

    def __eq__(self, other: object) -> bool:
        """Equal when all data including the precision agree."""
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field is other.field
            and self.precision == other.precision
            and self.min_order == other.min_order
            and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        """Hash of the defining data."""
        return hash((self.min_order, self._coeffs, self.precision))

    def is_zero(self) -> bool:
        """Whether every known coefficient vanishes."""
        return not self._coeffs

    def coefficient(self, n: int) -> FieldElement:
        """The coefficient of ``t^n``."""
        if n >= self.precision:
            raise PrecisionError(f"order {n} is beyond precision {self.precision}")
        k = n - self.min_order
        if 0 <= k < len(self._coeffs):
            return self.field(self._coeffs[k])
        return self.field.zero

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        """Coefficients from ``min_order`` up to the last nonzero one."""
        return tuple(self.field(c) for c in self._coeffs)

    def _check(self, other: LaurentSeries) -> None:
        if self.field is not other.field:
            raise FieldMismatchError(f"{self.field!r} and {other.field!r}")

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        """Sum, known up to the smaller precision."""
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check(other)
        precision = min(self.precision, other.precision)
        lo = min(self.min_order, other.min_order)
        out = [0] * max(precision - lo, 0)
        for series in (self, other):
            offset = series.min_order - lo
            for k, c in enumerate(series._coeffs[: len(out) - offset]):
                out[offset + k] ^= c
        return LaurentSeries(lo, out, precision, self.field)

    __sub__ = __add__

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        """Product with precision ``min(p_f + v_g, p_g + v_f)``."""
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        self._check(other)
        precision = min(
            self.precision + other.min_order, other.precision + self.min_order
        )
        lo = self.min_order + other.min_order
        size = max(precision - lo, 0)
        out = [0] * size
        mul = self.field.mul_int
        b = other._coeffs
        for i, ai in enumerate(self._coeffs[:size]):
            if not ai:
                continue
            for j in range(min(len(b), size - i)):
                if b[j]:
                    out[i + j] ^= mul(ai, b[j])
        return LaurentSeries(lo, out, precision, self.field)

    def scale(self, c: Coefficient) -> LaurentSeries:
        """Multiply every coefficient by a field element."""
        bits = _bits(self.field, c)
        mul = self.field.mul_int
        return LaurentSeries(
            self.min_order,
            [mul(bits, x) for x in self._coeffs],
            self.precision,
            self.field,
        )

    def inverse(self) -> LaurentSeries:
        """Reciprocal with precision ``precision - 2*min_order``."""
        if self.is_zero():
            raise PrecisionError(
                f"cannot invert a series that vanishes to order {self.precision}"
            )
        v = self.min_order
        size = self.precision - v
        u = self._coeffs
        mul = self.field.mul_int
        inv0 = self.field.inv_int(u[0])
        w = [inv0] + [0] * (size - 1)
        for n in range(1, size):
            acc = 0
            for k in range(1, min(n, len(u) - 1) + 1):
                if u[k] and w[n - k]:
                    acc ^= mul(u[k], w[n - k])
            w[n] = mul(inv0, acc)
        return LaurentSeries(-v, w, self.precision - 2 * v, self.field)

    def frobenius(self) -> LaurentSeries:
        """The square, ``sum c_n^2 t^(2n)`` with doubled precision."""
        square = self.field.square_int
        out = [0] * (2 * len(self._coeffs))
        for k, c in enumerate(self._coeffs):
            out[2 * k] = square(c)
        return LaurentSeries(2 * self.min_order, out, 2 * self.precision, self.field)

    def wp(self) -> LaurentSeries:
        """The Artin-Schreier operator ``f^2 + f``."""
        return self.frobenius() + self

    def principal_part(self) -> PrincipalPart:
        """The terms of negative order as a polynomial in ``1/t``."""
        if self.precision < 0:
            raise PrecisionError(
                f"principal part needs precision >= 0, have {self.precision}"
            )
        terms = {}
        for k, c in enumerate(self._coeffs):
            n = self.min_order + k
            if n >= 0:
                break
            if c:
                terms[-n] = c
        return PrincipalPart(terms, self.field)


def series_arith(op: str, *operands: LaurentSeries) -> LaurentSeries:
    """Apply ``add``, ``mul``, ``inv``, ``frobenius`` or ``wp`` to series.

    ``frobenius_square`` is accepted as another name for ``frobenius``.

    >>> from astower.core.laurent import LaurentSeries, series_arith
    >>> t = LaurentSeries.parameter(precision=8)
    >>> print(series_arith("mul", t, t, t))
    t^3 + O(t^10)
    >>> series_arith("inv", t).min_order
    -1
    """
    if not operands or not all(isinstance(f, LaurentSeries) for f in operands):
        raise TypeError(f"{op} expects LaurentSeries operands")
    if op in ("add", "mul"):
        result = operands[0]
        for f in operands[1:]:
            result = result + f if op == "add" else result * f
        return result
    if len(operands) != 1:
        raise TypeError(f"{op} takes a single operand")
    (f,) = operands
    if op == "inv":
        return f.inverse()
    elif op in ("frobenius", "frobenius_square"):
        return f.frobenius()
    elif op == "wp":
        return f.wp()
    raise ValueError(f"unknown series operation {op!r}")


def solve_wp(c: LaurentSeries) -> LaurentSeries:
    """The root of ``m^2 + m = c`` with positive order.

    For ``ord c >= 1`` the root is ``c + c^2 + c^4 + ...`` and is known to
    the same precision as ``c``.

    >>> from astower.core.laurent import LaurentSeries, solve_wp
    >>> t = LaurentSeries.parameter(precision=10)
    >>> print(solve_wp(t))
    t + t^2 + t^4 + t^8 + O(t^10)
    """
    if not c.is_zero() and c.min_order < 1:
        raise NoPositiveRootError(
            f"right hand side has a term of order {c.min_order} < 1"
        )
    m = c
    s = c
    while True:
        s = s.frobenius()
        if s.is_zero() or s.min_order >= c.precision:
            break
        m = m + s
    return m


class PrincipalPart:
    """A polynomial in ``1/t`` with no constant term.

    :ivar field: The coefficient field.

    The terms are stored as a mapping from the pole order ``e >= 1`` to the
    coefficient of ``t^-e``. Squaring sends ``c t^-e`` to ``c^2 t^-2e``
    exactly, so :meth:`wp` needs no truncation.

    >>> from astower.core.laurent import PrincipalPart
    >>> F0 = PrincipalPart({1: 1})
    >>> print(F0.wp())
    t^-2 + t^-1
    >>> F0.wp().is_two_linearized()
    True
    """

    __slots__ = ("field", "_terms")

    field: FieldDescriptor
    _terms: dict[int, int]

    def __init__(
        self, terms: Mapping[int, Coefficient], field: FieldDescriptor = F4
    ):
        """Create from ``{pole order: coefficient}``."""
        bits = {}
        for e, c in terms.items():
            if e < 1:
                raise ValueError(f"principal parts have pole orders >= 1, got {e}")
            b = _bits(field, c)
            if b:
                bits[e] = b
        self.field = field
        self._terms = bits

    @property
    def coeffs(self) -> dict[int, FieldElement]:
        """``{pole order: coefficient}`` for the nonzero terms."""
        return {e: self.field(c) for e, c in sorted(self._terms.items())}

    def __repr__(self) -> str:
        """Constructor form with raw bit patterns."""
        return f"PrincipalPart({dict(sorted(self._terms.items()))!r})"

    def __str__(self) -> str:
        """Terms in decreasing pole order."""
        if not self._terms:
            return "0"
        terms = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            name = f4_name(c) if self.field is F4 else str(self.field(c))
            mono = f"t^-{e}"
            terms.append(mono if name == "1" else f"{name}*{mono}")
        return " + ".join(terms)

    def __eq__(self, other: object) -> bool:
        """Equal when the same terms are present."""
        if not isinstance(other, PrincipalPart):
            return NotImplemented
        return self.field is other.field and self._terms == other._terms

    def __hash__(self) -> int:
        """Hash of the sorted terms."""
        return hash(tuple(sorted(self._terms.items())))

    def __bool__(self) -> bool:
        """Nonzero parts are truthy."""
        return bool(self._terms)

    def __add__(self, other: PrincipalPart) -> PrincipalPart:
        """Termwise sum."""
        if not isinstance(other, PrincipalPart):
            return NotImplemented
        if other.field is not self.field:
            raise FieldMismatchError(f"{self.field!r} and {other.field!r}")
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) ^ c
        return PrincipalPart(terms, self.field)

    __sub__ = __add__

    def scale(self, c: Coefficient) -> PrincipalPart:
        """Multiply by a constant."""
        b = _bits(self.field, c)
        mul = self.field.mul_int
        return PrincipalPart({e: mul(b, x) for e, x in self._terms.items()}, self.field)

    def square(self) -> PrincipalPart:
        """The Frobenius image."""
        square = self.field.square_int
        return PrincipalPart(
            {2 * e: square(c) for e, c in self._terms.items()}, self.field
        )

    def wp(self) -> PrincipalPart:
        """``P^2 + P``."""
        return self.square() + self

    @property
    def top_exponent(self) -> int:
        """The pole order, 0 for the zero polynomial."""
        return max(self._terms, default=0)

    def is_two_linearized(self) -> bool:
        """Whether every pole order is a power of 2."""
        return all(e & (e - 1) == 0 for e in self._terms)

    def to_series(self, precision: int = DEFAULT_PRECISION) -> LaurentSeries:
        """The principal part as a :class:`LaurentSeries`."""
        if not self._terms:
            return LaurentSeries(0, [], precision, self.field)
        top = self.top_exponent
        out = [0] * top
        for e, c in self._terms.items():
            out[top - e] = c
        return LaurentSeries(-top, out, precision, self.field)


def _class_and_values(seq: IndexSequence, length: int) -> tuple[A0Class, list[int]]:
    cls = seq.alternation_class(length)
    return cls, [s.f4_bits() for s in seq.entries[:length]]


def chain_expand(
    seq: IndexSequence, precision: int = DEFAULT_PRECISION
) -> list[LaurentSeries]:
    """Expansions ``m_0 = t, m_1, ..., m_i`` of the chain through ``seq``.

    ``seq`` must alternate between ``1`` and ``rho``/``rho^2``. The step
    from ``j-1`` to ``j`` solves ``m_j^2 + m_j = c`` where ``c`` collects
    ``x_{j-1} + 1 + 1/x_{j-1} + a_j^2 + a_j`` with its constant term removed.

    >>> from astower.core.laurent import chain_expand
    >>> from astower.core.sequence import IndexSequence
    >>> ms = chain_expand(IndexSequence.parse("1,rho,1"), precision=16)
    >>> [m.min_order for m in ms]
    [1, 2, 2]
    """
    cls, values = _class_and_values(seq, len(seq))
    ms = [LaurentSeries.parameter(precision)]
    for j in range(1, len(values)):
        prev, cur = values[j - 1], values[j]
        x_prev = ms[-1] + LaurentSeries.constant(prev, precision)
        square_plus = F4.square_int(cur) ^ cur
        rhs = (
            x_prev
            + LaurentSeries.constant(1, precision)
            + x_prev.inverse()
            + LaurentSeries.constant(square_plus, precision)
        )
        ms.append(solve_wp(rhs))
        _logger.debug("%s: m_%d has order %d", seq, j, ms[-1].min_order)
    return ms


def principal_F(seq: IndexSequence, j: int) -> PrincipalPart:
    """The principal part ``F_j`` of ``1/m_j`` in closed form.

    ``F_0 = 1/t``; at the multiplier steps ``F_j = a_{j-1} F_{j-1}`` and at
    the others ``F_j = F_{j-1}^2 + F_{j-1}``. The multiplier steps are the
    even ``j`` when ``a_0 = 1`` and the odd ``j`` otherwise. Only
    ``a_0, ..., a_{j-1}`` are used so ``seq`` may end in ``0`` at ``j``.

    >>> from astower.core.laurent import principal_F
    >>> from astower.core.sequence import IndexSequence
    >>> print(principal_F(IndexSequence.parse("1,rho,1"), 2))
    rho*t^-2 + rho*t^-1
    """
    if not 0 <= j < len(seq):
        raise SequenceError(f"index {j} outside of {seq}")
    cls, values = _class_and_values(seq, max(j, 1))
    parity = cls.parity
    F = PrincipalPart({1: 1})
    for n in range(1, j + 1):
        F = F.scale(values[n - 1]) if n % 2 == parity else F.wp()
    return F


def expected_top_exponent(cls: A0Class, j: int) -> int:
    """Pole order of ``F_j``: ``2^[(j+1)/2]`` or ``2^[j/2]`` for the rho class."""
    return 1 << ((j + 1) // 2 if cls is A0Class.ONE else j // 2)


@dataclass(frozen=True)
class BTable:
    """Coefficients ``B_j`` of a combination ``sum B_j F_j``.

    :ivar level: The largest index ``i`` that may carry a coefficient.
    :ivar coeffs: ``{j: B_j}`` with ``B_j`` in ``F_4`` as bit patterns.
    :ivar reduced: The ``F_2`` coefficient split off when this table was
        produced by :func:`lemma31_decompose`, otherwise ``None``.
    """

    level: int
    coeffs: Mapping[int, int] = dataclass_field(default_factory=dict)
    reduced: int | None = None

    def combination(self, seq: IndexSequence) -> PrincipalPart:
        """Evaluate ``sum B_j F_j`` near ``seq``."""
        total = PrincipalPart({})
        for j, b in self.coeffs.items():
            if b:
                total = total + principal_F(seq, j).scale(b)
        return total


def lemma31_decompose(
    table: BTable, seq: IndexSequence
) -> tuple[BTable, int, PrincipalPart]:
    """Rewrite ``sum B_j F_j`` as an Artin-Schreier image plus a residual.

    The input carries coefficients on indices ``j`` of the multiplier parity
    ``p`` with ``p + 2 <= j <= level``. The result is the table ``B'`` on
    ``p, ..., level - 2``, the ``F_2`` coefficient ``B*`` and the residual
    ``B* F_p`` with::

        sum B_j F_j = wp(sum B'_m F_m) + B* F_p

    where ``B* = wp(sum B_j a_{j-1})`` and
    ``B'_m = a_{m+1}^2 (B_{m+2}^2 + B* + wp(sum_{k <= m+2} B_k a_{k-1}))``.

    >>> from astower.core.laurent import BTable, lemma31_decompose
    >>> from astower.core.sequence import IndexSequence
    >>> lower, b_star, residual = lemma31_decompose(
    ...     BTable(2, {2: 1}), IndexSequence.parse("1,rho,1"))
    >>> lower.coeffs, b_star
    ({0: 3}, 1)
    >>> print(residual)
    t^-1
    """
    level = table.level
    cls, values = _class_and_values(seq, level)
    p = cls.parity
    if level < p or (level - p) % 2:
        raise SequenceError(f"level {level} does not have the parity of {seq}")
    for j in table.coeffs:
        if (j - p) % 2 or not p + 2 <= j <= level:
            raise SequenceError(
                f"coefficient index {j} is not allowed at level {level}"
            )

    mul, square = F4.mul_int, F4.square_int
    B = {j: _bits(F4, table.coeffs.get(j, 0)) for j in range(p + 2, level + 1, 2)}

    total = 0
    for j, b in B.items():
        total ^= mul(b, values[j - 1])
    b_star = square(total) ^ total
    assert b_star in (0, 1)

    lower = {}
    partial = 0
    for m in range(p, level - 1, 2):
        b = B[m + 2]
        partial ^= mul(b, values[m + 1])
        inner = square(b) ^ b_star ^ square(partial) ^ partial
        coeff = mul(square(values[m + 1]), inner)
        if coeff:
            lower[m] = coeff

    residual = principal_F(seq, p).scale(b_star)
    return BTable(level - 2, lower, reduced=b_star), b_star, residual


def lemma31_residual(table: BTable, seq: IndexSequence) -> PrincipalPart:
    """Difference of the two sides of the decomposition, zero when it holds."""
    lower, _, residual = lemma31_decompose(table, seq)
    lhs = table.combination(seq)
    return lhs + lower.combination(seq).wp() + residual


class Ramification(Enum):
    """Behaviour of one step ``C_{j+1} -> C_j`` above a point."""

    TOTALLY_RAMIFIED = "totally_ramified"
    UNRAMIFIED = "unramified"

    @property
    def contribution(self) -> int:
        """Degree of the ramification divisor contributed at the point.

        Two for a totally ramified point, zero for an unramified one.
        """
        return 2 if self is Ramification.TOTALLY_RAMIFIED else 0


@dataclass(frozen=True)
class StepClassification:
    """Outcome of the step from ``C_{i+t}`` to ``C_{i+t+1}``.

    :ivar t_step: Number of ``inf`` entries already appended.
    :ivar kind: Whether the step ramifies.
    :ivar valuation: Order of ``1/x_i`` at the point when ``t_step`` is 0, and
        order of ``x_{i+t}`` for ``t_step >= 1`` (negative: a pole).
    """

    t_step: int
    kind: Ramification
    valuation: int

    @property
    def contribution(self) -> int:
        """Ramification divisor degree at the point, see :class:`Ramification`."""
        return self.kind.contribution


@dataclass
class _SymbolicState:
    # F-part coefficients {j: B_j}, symbol coefficients {r: D_r}, and the
    # leading coefficients lambda_r of wp(Z_r) = lambda_r Z_{r-1} + regular.
    fcoeffs: dict[int, int]
    zcoeffs: dict[int, int]
    lambdas: list[int] = dataclass_field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.lambdas)


def classify_chain_symbolic(seq: IndexSequence, t_max: int) -> list[StepClassification]:
    """Classify the steps ``t = 0, ..., t_max`` above the zero ``seq``.

    Write ``x_{i+t}`` as a combination of the ``F_j``, of ``F_p`` and of the
    solutions ``Z_1, Z_2, ...`` introduced at each ramified step, up to
    functions regular at the point. Each step reduces the ``F_j`` part with
    :func:`lemma31_decompose` and then peels the ``Z`` part from the oldest
    symbol upwards. The step ramifies exactly when a nonzero multiple of the
    newest symbol is left over.
    """
    if not seq.is_zero_sequence():
        raise SequenceError(f"{seq} is not the index sequence of a zero of x_i")
    if t_max < 0:
        raise ValueError(f"step index must be >= 0, got {t_max}")
    i = seq.level
    cls = seq.alternation_class(i)
    p = cls.parity
    mul, square, inv = F4.mul_int, F4.square_int, F4.inv_int
    tops = {j: principal_F(seq, j).top_exponent for j in range(p, i + 1, 2)}

    state = _SymbolicState({i: 1}, {})
    results = []
    for t in range(t_max + 1):
        depth = state.depth
        poles = [tops[j] << depth for j, b in state.fcoeffs.items() if b]
        poles += [1 << (depth - r) for r, d in state.zcoeffs.items() if d]
        valuation = -max(poles)

        high = {j: b for j, b in state.fcoeffs.items() if j >= p + 2 and b}
        level = max(high, default=p)
        lower, b_star, _ = lemma31_decompose(BTable(level, high), seq)

        linear = [state.fcoeffs.get(p, 0) ^ b_star]
        linear += [state.zcoeffs.get(r, 0) for r in range(1, depth + 1)]
        preimage: dict[int, int] = {}
        for r in range(depth):
            c = linear[r]
            if not c:
                continue
            kappa = mul(c, inv(state.lambdas[r]))
            preimage[r + 1] = preimage.get(r + 1, 0) ^ square(kappa)
            linear[r + 1] ^= kappa ^ square(kappa)

        newest = linear[depth]
        if newest:
            kind = Ramification.TOTALLY_RAMIFIED
            state.lambdas.append(newest)
            preimage[depth + 1] = 1
        else:
            kind = Ramification.UNRAMIFIED
        state.fcoeffs = dict(lower.coeffs)
        state.zcoeffs = {r: d for r, d in preimage.items() if d}

        _logger.debug("%s step %d: %s, ord x = %d", seq, t, kind.value, valuation)
        results.append(StepClassification(t, kind, valuation))
    return results


def classify_step_symbolic(seq: IndexSequence, t_step: int) -> StepClassification:
    """Classify the step ``C_{i+t+1} -> C_{i+t}`` above the zero ``seq``.

    ``seq = (a_0, ..., a_{i-1}, 0)`` must name a zero of ``x_i`` and
    ``0 <= t_step <= i``.

    >>> from astower.core.laurent import classify_step_symbolic
    >>> from astower.core.sequence import IndexSequence
    >>> seq = IndexSequence.parse("1,rho,0")
    >>> [classify_step_symbolic(seq, t).kind.value for t in range(3)]
    ['totally_ramified', 'unramified', 'totally_ramified']
    >>> classify_step_symbolic(seq, 0).valuation
    -2
    """
    i = seq.level
    if not 0 <= t_step <= i:
        raise ValueError(f"step index must be in 0..{i}, got {t_step}")
    return classify_chain_symbolic(seq, t_step)[t_step]


def expansion_table(
    seq: IndexSequence, precision: int = DEFAULT_PRECISION
) -> dict[str, object]:
    """Expansions ``m_j`` and principal parts ``F_j`` as plain data.

    The principal parts are computed from the series and compared with the
    closed form, a mismatch raises :class:`AssertionError`.
    """
    ms = chain_expand(seq, precision)
    rows = []
    for j, m in enumerate(ms):
        F = m.inverse().principal_part()
        if F != principal_F(seq, j):
            raise AssertionError(  # pragma: no cover
                f"principal part of 1/m_{j} disagrees for {seq}"
            )
        rows.append(
            {
                "j": j,
                "order": m.min_order,
                "precision": m.precision,
                "m": str(m),
                "F": {str(e): f4_name(c) for e, c in F.coeffs.items()},
            }
        )
    return {"sequence": str(seq), "precision": precision, "rows": rows}
