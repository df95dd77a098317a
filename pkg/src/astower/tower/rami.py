"""astower.tower.rami module.

The ramification ledger of the tower. Above every zero of ``x_i`` on
``C_i`` the chain ``(a_0, ..., a_{i-1}, 0, inf, inf, ...)`` alternates
between totally ramified and unramified steps in a pattern that only depends
on ``i`` and on whether ``a_0 = 1``. Together with the two chains
``(0, inf, ...)`` and ``(inf, ...)`` that ramify at every step, this gives
the number ``n_i`` of ramified points of ``C_{i+1} -> C_i`` and, through
the Hurwitz formula, the genus of every ``C_i``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from itertools import product

from astower.core.laurent import Ramification
from astower.core.sequence import A0Class, IndexSequence, Symbol
from astower.tower.exceptions import EnumerationRangeError

__all__ = [
    "A0Class",
    "GenusMethod",
    "LedgerEntry",
    "Ramification",
    "class_multiplicity",
    "classify_closed",
    "count_ramified",
    "genus",
    "genus_table",
    "ledger",
    "n_closed",
    "special_sequences",
    "zero_class",
    "zero_sequences",
]


_logger = logging.getLogger(__name__)


def _check_level(level: int, minimum: int) -> None:
    if not isinstance(level, int) or level < minimum:
        raise EnumerationRangeError(
            f"level must be an integer >= {minimum}, got {level!r}"
        )


def zero_class(i: int) -> A0Class:
    """Class of the zeros of ``x_i``: ``a_0 = 1`` exactly when ``i`` is even."""
    return A0Class.ONE if i % 2 == 0 else A0Class.RHO


def zero_sequences(i: int) -> list[IndexSequence]:
    """Index sequences of the zeros of ``x_i`` on ``C_i``.

    The entry ``a_i`` is ``0``, the entries ``a_{i-j}`` for odd ``j`` are
    ``rho`` or ``rho^2`` and those for even ``j`` are ``1``.

    >>> from astower.tower.rami import zero_sequences
    >>> [str(s) for s in zero_sequences(2)]
    ['(1,rho,0)', '(1,rho2,0)']
    >>> len(zero_sequences(7))
    16
    """
    _check_level(i, 1)
    rho_positions = [i - j for j in range(1, i + 1, 2)]
    sequences = []
    for choice in product((Symbol.RHO, Symbol.RHO2), repeat=len(rho_positions)):
        entries = [Symbol.ONE] * i + [Symbol.ZERO]
        for position, symbol in zip(sorted(rho_positions), choice):
            entries[position] = symbol
        sequences.append(IndexSequence(tuple(entries)))
    return sequences


def special_sequences(level: int) -> list[IndexSequence]:
    """The chains ``(0, inf^level)`` and ``(inf^(level+1))``."""
    _check_level(level, 0)
    return [
        IndexSequence((Symbol.ZERO,)).with_tail(level),
        IndexSequence((Symbol.INF,)).with_tail(level),
    ]


def classify_closed(origin_i: int, tail_j: int, a0_class: A0Class) -> Ramification:
    """Closed form classification of the step above ``(a_0, ..., 0, inf^j)``.

    With ``a_0 = 1`` the step ramifies for ``j = 0, 2, ..., i-2`` and for
    ``j >= i``; with ``a_0`` in ``{rho, rho^2}`` for ``j = 0, 2, ..., i-3``
    and for ``j >= i-1``. Empty ranges are taken literally. The special
    chains ramify at every step.

    >>> from astower.tower.rami import A0Class, classify_closed
    >>> classify_closed(2, 1, A0Class.ONE).value
    'unramified'
    >>> classify_closed(1, 5, A0Class.RHO).value
    'totally_ramified'
    """
    if tail_j < 0:
        raise EnumerationRangeError(f"tail length must be >= 0, got {tail_j}")
    if a0_class is A0Class.SPECIAL:
        return Ramification.TOTALLY_RAMIFIED
    _check_level(origin_i, 1)
    shift = 0 if a0_class is A0Class.ONE else 1
    even_range = tail_j % 2 == 0 and tail_j <= origin_i - 2 - shift
    if even_range or tail_j >= origin_i - shift:
        return Ramification.TOTALLY_RAMIFIED
    return Ramification.UNRAMIFIED


def class_multiplicity(origin_i: int, tail_j: int, a0_class: A0Class) -> int:
    """Number of geometric points above one index sequence class.

    The count doubles at every unramified step and is unchanged at every
    totally ramified one.
    """
    if a0_class is A0Class.SPECIAL:
        return 1
    unramified = sum(
        1
        for t in range(tail_j)
        if classify_closed(origin_i, t, a0_class) is Ramification.UNRAMIFIED
    )
    return 1 << unramified


@dataclass(frozen=True)
class LedgerEntry:
    """One index sequence class on ``C_{origin_i + tail_j}``.

    :ivar sequence: The full index sequence including the ``inf`` tail.
    :ivar origin_i: Level of the zero the chain starts from, 0 for the
        special chains.
    :ivar a0_class: :class:`A0Class` of the sequence.
    :ivar tail_j: Number of trailing ``inf`` entries after the zero.
    :ivar mult: Number of geometric points with this index sequence.
    """

    sequence: IndexSequence
    origin_i: int
    a0_class: A0Class
    tail_j: int
    mult: int

    @property
    def level(self) -> int:
        """The curve ``C_level`` the points lie on."""
        return self.sequence.level

    def next_step(self) -> Ramification:
        """Behaviour of ``C_{level+1} -> C_level`` at these points."""
        return classify_closed(self.origin_i, self.tail_j, self.a0_class)


def ledger(level: int) -> list[LedgerEntry]:
    """All boundary classes on ``C_level`` that come from a zero or a special chain.

    >>> from astower.tower.rami import ledger
    >>> [(str(e.sequence), e.mult) for e in ledger(1)]
    [('(rho,0)', 1), ('(rho2,0)', 1), ('(0,inf)', 1), ('(inf,inf)', 1)]
    """
    _check_level(level, 0)
    entries = []
    for i in range(1, level + 1):
        tail = level - i
        cls = zero_class(i)
        mult = class_multiplicity(i, tail, cls)
        for seq in zero_sequences(i):
            entries.append(LedgerEntry(seq.with_tail(tail), i, cls, tail, mult))
    for seq in special_sequences(level):
        entries.append(LedgerEntry(seq, 0, A0Class.SPECIAL, level, 1))
    _logger.debug("ledger for C_%d has %d classes", level, len(entries))
    return entries


def count_ramified(level: int) -> int:
    """Number ``n_level`` of points of ``C_level`` ramified in ``C_{level+1}``.

    Sums the multiplicities of the ledger classes whose next step ramifies.
    The classes of one origin share their classification so they are counted
    together instead of being listed.

    >>> from astower.tower.rami import count_ramified
    >>> [count_ramified(i) for i in range(6)]
    [2, 4, 6, 8, 12, 24]
    """
    _check_level(level, 0)
    total = 2
    for i in range(1, level + 1):
        tail = level - i
        cls = zero_class(i)
        if classify_closed(i, tail, cls) is Ramification.TOTALLY_RAMIFIED:
            number = 1 << ((i + 1) // 2)
            total += number * class_multiplicity(i, tail, cls)
    return total


def n_closed(i: int) -> int:
    """Closed form for ``n_i``.

    ``([(i+2)/4] + 2) * 2^(i/2)`` for even ``i`` and
    ``([i/4] + 2) * 2^((i+1)/2)`` for odd ``i``; ``n_0 = 2``.
    """
    _check_level(i, 0)
    if i == 0:
        return 2
    if i % 2 == 0:
        return ((i + 2) // 4 + 2) << (i // 2)
    return (i // 4 + 2) << ((i + 1) // 2)


class GenusMethod(Enum):
    """The two ways of computing ``g(C_i)``."""

    HURWITZ = "hurwitz"
    CLOSED = "closed"


def genus(level: int, method: GenusMethod = GenusMethod.HURWITZ) -> int:
    """Genus of ``C_level`` as an exact integer.

    ``HURWITZ`` sums the ramification from the ledger:
    ``g_i = 1 + sum_{j=1}^{i-1} 2^(i-j-1) n_j`` with ``g_0 = 0``.
    ``CLOSED`` evaluates the closed form by parity of ``i``.

    >>> from astower.tower.rami import GenusMethod, genus
    >>> genus(10), genus(10, GenusMethod.CLOSED)
    (3777, 3777)
    """
    _check_level(level, 0)
    i = level
    if method is GenusMethod.HURWITZ:
        if i == 0:
            return 0
        return 1 + sum(count_ramified(j) << (i - j - 1) for j in range(1, i))
    if method is GenusMethod.CLOSED:
        if i % 2 == 0:
            return (1 << (i + 2)) + 1 - ((i + 10) << (i // 2)) // 2
        return (1 << (i + 2)) + 1 - ((i + 2 * (i // 4) + 15) << ((i - 1) // 2)) // 2
    raise ValueError(f"unknown genus method {method!r}")


def genus_table(i_max: int) -> list[tuple[int, int, int]]:
    """Rows ``(i, g_hurwitz, g_closed)`` for ``0 <= i <= i_max``."""
    _check_level(i_max, 0)
    rows = []
    g = 0
    for i in range(i_max + 1):
        if i > 0:
            g = 2 * g - 1 + count_ramified(i - 1)
        rows.append((i, g, genus(i, GenusMethod.CLOSED)))
    return rows
