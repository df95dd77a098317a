"""astower.core.gf2m module.

This module defines :class:`FieldDescriptor` and :class:`FieldElement` for
exact arithmetic in the binary fields ``GF(2^m)`` in a fixed polynomial
basis, together with the trace, Artin-Schreier solving and the embedding of
``F_4`` into even degree fields.
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING as _TYPE_CHECKING
from typing import Iterator

from sympy import factorint

from astower.core.exceptions import (
    EmbeddingError,
    FieldError,
    FieldMismatchError,
    NotInvertibleError,
    ReducibleModulusError,
)

if _TYPE_CHECKING:
    from typing import Union

    Operand = Union["FieldElement", int]


__all__ = [
    "FieldDescriptor",
    "FieldElement",
    "MAX_DEGREE",
    "arith",
    "embed_f4",
    "field_new",
    "is_irreducible",
    "solve_artin_schreier",
    "trace",
]


_logger = logging.getLogger(__name__)

MAX_DEGREE = 32

# Log/antilog tables are built for fields up to this degree.
_TABLE_LIMIT = 16

_DEFAULT_MODULI = {
    2: 0b111,
    3: 0b1011,
}


def xmul(a: int, b: int) -> int:
    """Carry-less multiplication of two polynomials over ``F_2``."""
    x = 0
    while a:
        if a & 1:
            x ^= b
        a >>= 1
        b <<= 1
    return x


def xmod(a: int, b: int) -> int:
    """Carry-less remainder of ``a`` modulo ``b``."""
    nb = b.bit_length()
    while a.bit_length() >= nb:
        a ^= b << (a.bit_length() - nb)
    return a


def is_irreducible(poly: int) -> bool:
    """Test irreducibility over ``F_2`` by scanning for a factor.

    >>> from astower.core.gf2m import is_irreducible
    >>> is_irreducible(0b1011)
    True
    >>> is_irreducible(0b10001)
    False
    """
    degree = poly.bit_length() - 1
    if degree < 1:
        return False
    if degree == 1:
        return True
    if not poly & 1:
        return False
    # Any factor of degree d <= degree // 2 has a nonzero constant term.
    for divisor in range(3, 1 << (degree // 2 + 1), 2):
        if xmod(poly, divisor) == 0:
            return False
    return True


def _least_irreducible(m: int) -> int:
    for poly in range(1 << m, 1 << (m + 1)):
        if is_irreducible(poly):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m}")  # pragma: no cover


#
# Descriptors are interned: there is only ever one FieldDescriptor for a given
# degree and modulus so that identity comparison is enough to detect mixed
# field arithmetic.
#
_all_fields: dict[tuple[int, int], FieldDescriptor] = {}


class FieldDescriptor:
    """The field ``GF(2^m) = F_2[t]/(modulus)``.

    :ivar m: Extension degree over ``F_2``.
    :ivar modulus: Bit pattern of the defining polynomial including ``t^m``.
    :ivar generator: Bit pattern of the least primitive element.

    Descriptors are usually obtained from :func:`field_new` which picks the
    default modulus; direct construction checks the modulus as well.

    >>> from astower.core.gf2m import field_new
    >>> F8 = field_new(3)
    >>> F8
    GF(2^3)
    >>> bin(F8.modulus)
    '0b1011'
    >>> F8.gen
    FieldElement(GF(2^3), 0b10)
    >>> F8.order
    8
    """

    __slots__ = (
        "m",
        "modulus",
        "generator",
        "_exp",
        "_log",
        "_pivots",
    )

    m: int
    modulus: int
    generator: int
    _exp: list[int] | None
    _log: list[int] | None
    _pivots: dict[int, tuple[int, int]] | None

    def __new__(cls, m: int, modulus: int) -> FieldDescriptor:
        """Return the interned descriptor for ``(m, modulus)``.

        Raises :class:`ReducibleModulusError` unless ``modulus`` is an
        irreducible polynomial of degree ``m``.
        """
        key = (m, modulus)
        previous = _all_fields.get(key)
        if previous is not None:
            return previous
        if modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise ReducibleModulusError(
                f"{bin(modulus)} is not an irreducible polynomial of degree {m}"
            )

        obj = object.__new__(cls)
        obj.m = m
        obj.modulus = modulus
        obj._exp = None
        obj._log = None
        obj._pivots = None
        obj.generator = obj._find_generator()

        return _all_fields.setdefault(key, obj)

    def __repr__(self) -> str:
        """Show the field as ``GF(2^m)``."""
        return f"GF(2^{self.m})"

    def __reduce__(self) -> tuple[object, tuple[int, int]]:
        """Pickle support, restoring the interned instance."""
        return (FieldDescriptor, (self.m, self.modulus))

    @property
    def order(self) -> int:
        """Number of elements ``2^m``."""
        return 1 << self.m

    @property
    def zero(self) -> FieldElement:
        """The additive identity."""
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        """The multiplicative identity."""
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The fixed primitive element."""
        return FieldElement(self, self.generator)

    def __call__(self, coeffs: int) -> FieldElement:
        """Create an element from its polynomial-basis bit pattern."""
        return FieldElement(self, coeffs)

    def elements(self) -> Iterator[FieldElement]:
        """Iterate over all elements in bit-pattern order."""
        for coeffs in range(self.order):
            yield FieldElement(self, coeffs)

    def _find_generator(self) -> int:
        group_order = self.order - 1
        if group_order == 1:
            return 1
        cofactors = [group_order // p for p in factorint(group_order)]
        for candidate in range(2, self.order):
            if all(self.pow_int(candidate, c) != 1 for c in cofactors):
                return candidate
        raise FieldError("no primitive element found")  # pragma: no cover

    def _build_tables(self) -> None:
        size = self.order - 1
        exp = [0] * size
        log = [0] * self.order
        x = 1
        for n in range(size):
            exp[n] = x
            log[x] = n
            x = xmod(xmul(x, self.generator), self.modulus)
        self._exp = exp
        self._log = log

    #
    # Integer level arithmetic. These work directly on bit patterns and are
    # used by the enumeration code where creating FieldElement objects would
    # dominate the running time.
    #

    def mul_int(self, a: int, b: int) -> int:
        """Multiply two bit patterns."""
        if not a or not b:
            return 0
        if self.m <= _TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            exp, log = self._exp, self._log
            assert exp is not None and log is not None
            return exp[(log[a] + log[b]) % (self.order - 1)]
        return xmod(xmul(a, b), self.modulus)

    def square_int(self, a: int) -> int:
        """Square a bit pattern (the Frobenius map)."""
        return self.mul_int(a, a)

    def pow_int(self, a: int, n: int) -> int:
        """Raise a bit pattern to a nonnegative integer power."""
        result = 1
        base = a
        while n:
            if n & 1:
                result = xmod(xmul(result, base), self.modulus)
            base = xmod(xmul(base, base), self.modulus)
            n >>= 1
        return result

    def inv_int(self, a: int) -> int:
        """Multiplicative inverse of a nonzero bit pattern."""
        if not a:
            raise NotInvertibleError("inversion of zero")
        if self.m <= _TABLE_LIMIT:
            if self._exp is None:
                self._build_tables()
            exp, log = self._exp, self._log
            assert exp is not None and log is not None
            return exp[-log[a] % (self.order - 1)]
        return self.pow_int(a, self.order - 2)

    def trace_int(self, a: int) -> int:
        """Absolute trace ``a + a^2 + ... + a^(2^(m-1))`` as 0 or 1."""
        acc = a
        s = a
        for _ in range(self.m - 1):
            s = self.square_int(s)
            acc ^= s
        assert acc in (0, 1)
        return acc

    def half_trace_int(self, a: int) -> int:
        """Half-trace ``sum a^(4^i)`` for ``0 <= i <= (m-1)/2`` (odd ``m``)."""
        if not self.m % 2:
            raise FieldError("half-trace is only defined for odd degree")
        acc = a
        s = a
        for _ in range((self.m - 1) // 2):
            s = self.square_int(self.square_int(s))
            acc ^= s
        return acc

    def solve_int(self, c: int) -> int | None:
        """Return one root of ``y^2 + y = c`` or ``None`` if there is none."""
        if self.trace_int(c):
            return None
        if self.m % 2:
            return self.half_trace_int(c)
        pivots = self.solver_pivots()
        y = 0
        for bit in range(self.m - 1, -1, -1):
            if c >> bit & 1:
                if bit not in pivots:
                    return None  # pragma: no cover
                image, preimage = pivots[bit]
                c ^= image
                y ^= preimage
        return y

    def solver_pivots(self) -> dict[int, tuple[int, int]]:
        """Echelon rows ``bit -> (image, preimage)`` of ``y -> y^2 + y``."""
        # Rows are reduced against the polynomial basis, highest bit first.
        if self._pivots is not None:
            return self._pivots
        pivots: dict[int, tuple[int, int]] = {}
        for j in range(self.m):
            preimage = 1 << j
            image = self.square_int(preimage) ^ preimage
            for bit in range(self.m - 1, -1, -1):
                if not image >> bit & 1:
                    continue
                if bit in pivots:
                    image ^= pivots[bit][0]
                    preimage ^= pivots[bit][1]
                else:
                    pivots[bit] = (image, preimage)
                    break
        self._pivots = pivots
        return pivots


def field_new(m: int, modulus: int | None = None) -> FieldDescriptor:
    """Create the field ``GF(2^m)``.

    With no modulus the defaults are ``t^2+t+1`` for ``m=2``, ``t^3+t+1`` for
    ``m=3`` and otherwise the least irreducible polynomial of degree ``m``.

    >>> from astower.core.gf2m import field_new
    >>> bin(field_new(4).modulus)
    '0b10011'
    >>> field_new(3) is field_new(3, 0b1011)
    True
    """
    if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
        raise FieldError(f"extension degree must be in 1..{MAX_DEGREE}, got {m!r}")
    if modulus is None:
        modulus = _DEFAULT_MODULI.get(m)
        if modulus is None:
            modulus = _least_irreducible(m)
    _logger.debug("field GF(2^%d) with modulus %s", m, bin(modulus))
    return FieldDescriptor(m, modulus)


class FieldElement:
    """An element of ``GF(2^m)`` in the polynomial basis.

    :ivar field: The :class:`FieldDescriptor` of the element.
    :ivar coeffs: Bit pattern of the coordinates, bit ``n`` for ``t^n``.

    Elements are immutable values. Arithmetic between elements of different
    fields raises :class:`FieldMismatchError` rather than coercing.

    >>> from astower.core.gf2m import field_new
    >>> F8 = field_new(3)
    >>> a = F8.gen
    >>> a * a**2
    FieldElement(GF(2^3), 0b11)
    >>> print(a * a**2)
    a + 1
    >>> print(1 / a)
    a^2 + 1
    >>> a + a == F8.zero
    True
    """

    __slots__ = (
        "field",
        "coeffs",
    )

    field: FieldDescriptor
    coeffs: int

    def __init__(self, field: FieldDescriptor, coeffs: int):
        """Create an element; ``coeffs`` must fit in ``m`` bits."""
        if not 0 <= coeffs < field.order:
            raise FieldError(f"bit pattern {coeffs!r} does not fit in {field!r}")
        self.field = field
        self.coeffs = coeffs

    def __repr__(self) -> str:
        """Explicit representation with the field and bit pattern."""
        return f"FieldElement({self.field!r}, {bin(self.coeffs)})"

    def __str__(self) -> str:
        """Polynomial in the basis variable ``a``."""
        terms = []
        for n in range(self.field.m - 1, -1, -1):
            if self.coeffs >> n & 1:
                terms.append("1" if n == 0 else "a" if n == 1 else f"a^{n}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other: object) -> bool:
        """Equal when both field and coordinates agree."""
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        """Hash of the field key and coordinates."""
        return hash((self.field.m, self.field.modulus, self.coeffs))

    def __bool__(self) -> bool:
        """Nonzero elements are truthy."""
        return bool(self.coeffs)

    def __int__(self) -> int:
        """The bit pattern of the coordinates."""
        return self.coeffs

    def _check(self, other: FieldElement) -> FieldElement:
        if other.field is not self.field:
            raise FieldMismatchError(f"{self.field!r} and {other.field!r}")
        return other

    def __add__(self, other: FieldElement) -> FieldElement:
        """Addition is xor of coordinates."""
        if not isinstance(other, FieldElement):
            return NotImplemented
        other = self._check(other)
        return FieldElement(self.field, self.coeffs ^ other.coeffs)

    __sub__ = __add__

    def __neg__(self) -> FieldElement:
        """Negation is the identity in characteristic 2."""
        return self

    def __mul__(self, other: FieldElement) -> FieldElement:
        """Multiplication modulo the field modulus."""
        if not isinstance(other, FieldElement):
            return NotImplemented
        other = self._check(other)
        return FieldElement(self.field, self.field.mul_int(self.coeffs, other.coeffs))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        """Division by a nonzero element."""
        if not isinstance(other, FieldElement):
            return NotImplemented
        other = self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other: int) -> FieldElement:
        """Support ``1 / x``."""
        if other != 1:
            return NotImplemented
        return self.inverse()

    def __pow__(self, n: int) -> FieldElement:
        """Integer powers, negative powers of nonzero elements allowed."""
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.field, self.field.pow_int(self.coeffs, n))

    def inverse(self) -> FieldElement:
        """Multiplicative inverse; raises for zero."""
        return FieldElement(self.field, self.field.inv_int(self.coeffs))

    def frobenius(self) -> FieldElement:
        """The square ``x^2``."""
        return FieldElement(self.field, self.field.square_int(self.coeffs))

    def wp(self) -> FieldElement:
        """The Artin-Schreier operator ``x^2 + x``."""
        square = self.field.square_int(self.coeffs)
        return FieldElement(self.field, square ^ self.coeffs)

    def order(self) -> int:
        """Multiplicative order of a nonzero element."""
        if not self.coeffs:
            raise NotInvertibleError("zero has no multiplicative order")
        group_order = self.field.order - 1
        n = group_order
        for p in factorint(group_order):
            while n % p == 0 and self.field.pow_int(self.coeffs, n // p) == 1:
                n //= p
        return n


def _same_field(operands: tuple[FieldElement, ...]) -> FieldDescriptor:
    field = operands[0].field
    for x in operands[1:]:
        if x.field is not field:
            raise FieldMismatchError(f"{field!r} and {x.field!r}")
    return field


def arith(op: str, *operands: Operand) -> FieldElement:
    """Apply one of the field operations ``add``, ``mul``, ``inv``, ``pow``.

    >>> from astower.core.gf2m import arith, field_new
    >>> F4 = field_new(2)
    >>> rho = F4.gen
    >>> arith("mul", rho, rho**2) == F4.one
    True
    >>> arith("pow", rho, 3) == F4.one
    True
    """
    if op == "pow":
        base, n = operands
        if not isinstance(base, FieldElement) or not isinstance(n, int):
            raise TypeError("pow expects (FieldElement, int)")
        return base**n
    elements = tuple(x for x in operands if isinstance(x, FieldElement))
    if len(elements) != len(operands) or not elements:
        raise TypeError(f"{op} expects FieldElement operands")
    _same_field(elements)
    if op == "add":
        result = elements[0]
        for x in elements[1:]:
            result = result + x
        return result
    elif op == "mul":
        result = elements[0]
        for x in elements[1:]:
            result = result * x
        return result
    elif op == "inv":
        (x,) = elements
        return x.inverse()
    raise ValueError(f"unknown field operation {op!r}")


def trace(x: FieldElement) -> int:
    """Absolute trace of ``x`` down to ``F_2``.

    >>> from astower.core.gf2m import field_new, trace
    >>> F8 = field_new(3)
    >>> trace(F8.one), trace(F8.gen)
    (1, 0)
    """
    return x.field.trace_int(x.coeffs)


def solve_artin_schreier(c: FieldElement) -> tuple[FieldElement, FieldElement] | None:
    """Both roots ``(y, y + 1)`` of ``y^2 + y = c``, or ``None``.

    Odd degree fields use the half-trace, even degree fields solve the
    ``F_2``-linear system of ``y -> y^2 + y``. The roots are returned with the
    smaller bit pattern first.

    >>> from astower.core.gf2m import field_new, solve_artin_schreier
    >>> F4 = field_new(2)
    >>> solve_artin_schreier(F4.one) == (F4.gen, F4.gen + F4.one)
    True
    >>> solve_artin_schreier(field_new(1).one) is None
    True
    """
    field = c.field
    y = field.solve_int(c.coeffs)
    if y is None:
        return None
    y0, y1 = sorted((y, y ^ 1))
    return FieldElement(field, y0), FieldElement(field, y1)


def embed_f4(x: FieldElement, target: FieldDescriptor) -> FieldElement:
    """Embed an element of ``F_4`` into an even degree field.

    The image of the generator ``rho`` of ``F_4`` is the root of ``y^2+y+1``
    in ``target`` with the smaller bit pattern.

    >>> from astower.core.gf2m import embed_f4, field_new
    >>> F4, F16 = field_new(2), field_new(4)
    >>> embed_f4(F4.gen, F4) == F4.gen
    True
    >>> embed_f4(F4.gen, F16).order()
    3
    """
    if x.field.m != 2:
        raise EmbeddingError(f"{x!r} is not an element of F_4")
    if target.m % 2:
        raise EmbeddingError(f"F_4 is not a subfield of {target!r}")
    root = target.solve_int(1)
    assert root is not None
    rho = min(root, root ^ 1)
    image = 0
    if x.coeffs & 1:
        image ^= 1
    if x.coeffs & 2:
        image ^= rho
    return FieldElement(target, image)
