"""Index sequences of boundary points.

A point of ``C_i`` whose image in the fibre-product model ``D_i`` has all
coordinates in ``P^1(F_4)`` is named by its index sequence
``(a_0, ..., a_i)`` over the alphabet ``{0, 1, rho, rho^2, inf}``.
Consecutive entries obey the successor table::

    inf  -> inf
    0    -> inf
    1    -> rho, rho^2
    rho  -> 0, 1
    rho^2 -> 0, 1
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator

from astower.core.exceptions import SequenceError
from astower.core.gf2m import FieldDescriptor, FieldElement, embed_f4, field_new

__all__ = [
    "A0Class",
    "IndexSequence",
    "Symbol",
    "f4_name",
]


class Symbol(Enum):
    """The entries of an index sequence."""

    ZERO = "0"
    ONE = "1"
    RHO = "rho"
    RHO2 = "rho2"
    INF = "inf"

    def __str__(self) -> str:
        """Short name as used on the command line."""
        return self.value

    @property
    def is_finite(self) -> bool:
        """Everything except ``inf``."""
        return self is not Symbol.INF

    @property
    def is_rho(self) -> bool:
        """``rho`` or ``rho^2``, the elements of ``F_4 - F_2``."""
        return self in (Symbol.RHO, Symbol.RHO2)

    def successors(self) -> tuple[Symbol, ...]:
        """Allowed next entries."""
        return _SUCCESSORS[self]

    def f4_bits(self) -> int:
        """Bit pattern in ``F_4 = F_2[t]/(t^2+t+1)`` with ``rho = t``."""
        if self is Symbol.INF:
            raise SequenceError("inf has no F_4 value")
        return _F4_BITS[self]

    def f4_value(self) -> FieldElement:
        """The entry as an element of ``F_4``."""
        return field_new(2)(self.f4_bits())


_SUCCESSORS = {
    Symbol.INF: (Symbol.INF,),
    Symbol.ZERO: (Symbol.INF,),
    Symbol.ONE: (Symbol.RHO, Symbol.RHO2),
    Symbol.RHO: (Symbol.ZERO, Symbol.ONE),
    Symbol.RHO2: (Symbol.ZERO, Symbol.ONE),
}

_F4_BITS = {
    Symbol.ZERO: 0b00,
    Symbol.ONE: 0b01,
    Symbol.RHO: 0b10,
    Symbol.RHO2: 0b11,
}

_F4_NAMES = {bits: symbol.value for symbol, bits in _F4_BITS.items()}


def f4_name(x: FieldElement | int) -> str:
    """Name of an ``F_4`` element: ``0``, ``1``, ``rho`` or ``rho2``."""
    return _F4_NAMES[int(x)]


class A0Class(Enum):
    """How an index sequence starts.

    ``ONE`` and ``RHO`` are the two alternation classes (``a_0 = 1`` or
    ``a_0`` in ``{rho, rho^2}``). ``SPECIAL`` marks the chains
    ``(0, inf, ...)`` and ``(inf, ...)`` that are ramified at every step.
    """

    ONE = "one"
    RHO = "rho"
    SPECIAL = "special"

    @property
    def parity(self) -> int:
        """Parity of the indices carrying ``F_4`` multipliers (0 or 1)."""
        if self is A0Class.SPECIAL:
            raise SequenceError("special chains have no alternation parity")
        return 0 if self is A0Class.ONE else 1


@dataclass(frozen=True)
class IndexSequence:
    """An index sequence ``(a_0, ..., a_i)``.

    >>> from astower.core.sequence import IndexSequence
    >>> seq = IndexSequence.parse("1,rho,0")
    >>> print(seq)
    (1,rho,0)
    >>> seq.level
    2
    >>> print(seq.with_tail(2))
    (1,rho,0,inf,inf)
    >>> seq.is_zero_sequence()
    True
    >>> IndexSequence.parse("1,0")
    Traceback (most recent call last):
    ...
    astower.core.exceptions.SequenceError: 1 cannot be followed by 0
    """

    entries: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        """Check the successor table."""
        if not self.entries:
            raise SequenceError("an index sequence has at least one entry")
        for prev, cur in zip(self.entries, self.entries[1:]):
            if cur not in prev.successors():
                raise SequenceError(f"{prev} cannot be followed by {cur}")

    @classmethod
    def of(cls, symbols: Iterable[Symbol | str]) -> IndexSequence:
        """Build from symbols or their short names."""
        return cls(tuple(Symbol(s) if isinstance(s, str) else s for s in symbols))

    @classmethod
    def parse(cls, text: str) -> IndexSequence:
        """Parse a comma separated list such as ``"1,rho,0,inf"``."""
        names = [name.strip() for name in text.strip("() ").split(",")]
        try:
            return cls.of(Symbol(name) for name in names)
        except ValueError as exc:
            if isinstance(exc, SequenceError):
                raise
            raise SequenceError(f"cannot parse index sequence {text!r}") from exc

    def __str__(self) -> str:
        """Compact form ``(a_0,...,a_i)``."""
        return "(" + ",".join(str(s) for s in self.entries) + ")"

    def __len__(self) -> int:
        """Number of entries ``i + 1``."""
        return len(self.entries)

    def __iter__(self) -> Iterator[Symbol]:
        """Iterate over the entries."""
        return iter(self.entries)

    def __getitem__(self, j: int) -> Symbol:
        """The entry ``a_j``."""
        return self.entries[j]

    @property
    def level(self) -> int:
        """The level ``i`` of the curve ``C_i`` the point lies on."""
        return len(self.entries) - 1

    def successors(self) -> list[IndexSequence]:
        """All one-step extensions allowed by the successor table."""
        last = self.entries[-1]
        return [IndexSequence(self.entries + (s,)) for s in last.successors()]

    def with_tail(self, j: int) -> IndexSequence:
        """The sequence ``(a_0, ..., a_i, inf^j)``."""
        return IndexSequence(self.entries + (Symbol.INF,) * j)

    def prefix(self, length: int) -> IndexSequence:
        """The first ``length`` entries."""
        return IndexSequence(self.entries[:length])

    def f4_values(self) -> list[int]:
        """Bit patterns in ``F_4`` of the finite entries (``inf`` raises)."""
        return [s.f4_bits() for s in self.entries]

    def a0_class(self) -> A0Class:
        """Classify by the first entry."""
        first = self.entries[0]
        if first is Symbol.ONE:
            return A0Class.ONE
        if first.is_rho:
            return A0Class.RHO
        return A0Class.SPECIAL

    def alternation_class(self, length: int | None = None) -> A0Class:
        """Check that ``1`` and ``rho``/``rho^2`` alternate and return the class.

        Only the first ``length`` entries are inspected when given.
        """
        entries = self.entries if length is None else self.entries[:length]
        cls = self.a0_class()
        if cls is A0Class.SPECIAL:
            raise SequenceError(f"{self} does not start with 1, rho or rho2")
        for j, s in enumerate(entries):
            wants_rho = j % 2 != cls.parity
            if wants_rho and not s.is_rho or not wants_rho and s is not Symbol.ONE:
                raise SequenceError(f"{self} does not alternate at position {j}")
        return cls

    def is_zero_sequence(self) -> bool:
        """Whether this names a zero of ``x_i`` on ``C_i`` (``i >= 1``)."""
        # The successor table forces the entries before a 0 to alternate.
        if self.level < 1 or self.entries[-1] is not Symbol.ZERO:
            return False
        return self.a0_class() is not A0Class.SPECIAL

    def split_tail(self) -> tuple[IndexSequence, int]:
        """Split ``(a_0, ..., a_i, inf^j)`` into the head and ``j``."""
        n = len(self.entries)
        while n > 1 and self.entries[n - 1] is Symbol.INF:
            n -= 1
        return self.prefix(n), len(self.entries) - n

    def is_defined_over(self, field: FieldDescriptor) -> bool:
        """Whether all finite coordinates lie in ``field``."""
        if not any(s.is_rho for s in self.entries):
            return True
        try:
            embed_f4(Symbol.RHO.f4_value(), field)
        except ValueError:
            return False
        return True
