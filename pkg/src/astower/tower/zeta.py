"""astower.tower.zeta module.

L-polynomials of the low levels of the tower recovered from point counts.

For a curve of genus ``g`` over ``F_q`` the numerator of the zeta function
is ``L(T) = b_0 + b_1 T + ... + b_{2g} T^(2g)`` with ``b_0 = 1`` and
``b_{2g-i} = q^(g-i) b_i``. The counts ``N_1, ..., N_g`` fix ``b_1, ..., b_g``
through Newton's identities and the functional equation gives the rest, so
the counts ``N_{g+1}, ..., N_{2g}`` are predictions that can be compared with
a direct enumeration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import numpy.typing as npt
from sympy import Poly, factorint, symbols

from astower.tower.exceptions import (
    EnumerationRangeError,
    NonIntegralCoefficientError,
    ZetaConsistencyError,
    ZetaError,
)
from astower.tower.points import hasse_weil_holds, point_count
from astower.tower.rami import genus

__all__ = [
    "ROOT_TOLERANCE",
    "LPolynomial",
    "ZetaReport",
    "genus_crosscheck",
    "l_polynomial_from_counts",
]


_logger = logging.getLogger(__name__)

ROOT_TOLERANCE = 1e-9

T = symbols("T")


@dataclass(frozen=True)
class LPolynomial:
    """The numerator ``L(T)`` of the zeta function of a curve over ``F_q``.

    :ivar q: Size of the base field.
    :ivar g: Genus of the curve.
    :ivar coeffs: ``(b_0, ..., b_{2g})``.

    >>> from astower.tower.zeta import LPolynomial
    >>> L = LPolynomial(2, 1, (1, -1, 2))
    >>> L.predicted_counts(3)
    [2, 8, 14]
    >>> L.satisfies_functional_equation()
    True
    """

    q: int
    g: int
    coeffs: tuple[int, ...]

    def __str__(self) -> str:
        """The polynomial in ``T``."""
        return str(self.as_expr())

    def as_expr(self) -> object:
        """A sympy expression in the symbol ``T``."""
        return Poly(list(reversed(self.coeffs)), T).as_expr()

    def satisfies_functional_equation(self) -> bool:
        """Whether ``b_0 = 1`` and ``b_{2g-i} = q^(g-i) b_i`` for ``i <= g``."""
        b, g, q = self.coeffs, self.g, self.q
        if len(b) != 2 * g + 1 or b[0] != 1:
            return False
        return all(b[2 * g - i] == q ** (g - i) * b[i] for i in range(g + 1))

    def power_sums(self, n: int) -> list[int]:
        """``s_k = sum omega^k`` over the inverse roots for ``k = 1..n``."""
        b = self.coeffs
        s: list[int] = []
        for k in range(1, n + 1):
            bk = b[k] if k < len(b) else 0
            total = -k * bk
            for r in range(1, k):
                if k - r < len(b):
                    total -= s[r - 1] * b[k - r]
            s.append(total)
        return s

    def predicted_counts(self, n: int) -> list[int]:
        """``N_k = q^k + 1 - s_k`` for ``k = 1..n``."""
        return [self.q**k + 1 - s for k, s in enumerate(self.power_sums(n), 1)]

    def inverse_roots(self) -> npt.NDArray[np.complex128]:
        """Inverse roots with multiplicity.

        The polynomial is split into irreducible factors over the integers
        first so that repeated roots do not spoil the numerical accuracy.
        """
        if self.g == 0:
            return np.zeros(0, dtype=np.complex128)
        _, factors = Poly(list(reversed(self.coeffs)), T).factor_list()
        roots = []
        for factor, multiplicity in factors:
            coeffs = [float(c) for c in factor.all_coeffs()]
            # Reversing the coefficients inverts the roots.
            inverse = np.roots(coeffs[::-1])
            roots.extend(list(inverse) * multiplicity)
        return np.array(roots, dtype=np.complex128)

    def roots_abs(self) -> list[float]:
        """Sorted absolute values of the inverse roots."""
        return sorted(float(abs(w)) for w in self.inverse_roots())

    def roots_on_circle(self, tolerance: float = ROOT_TOLERANCE) -> bool:
        """Whether every inverse root has absolute value ``sqrt(q)``."""
        radius = float(np.sqrt(self.q))
        return all(abs(r - radius) <= tolerance for r in self.roots_abs())


def _is_prime_power(q: int) -> bool:
    return q > 1 and len(factorint(q)) == 1


def l_polynomial_from_counts(q: int, g: int, counts: Sequence[int]) -> LPolynomial:
    """Build ``L(T)`` from ``N_1, ..., N_n`` with ``n >= g``.

    Counts beyond ``N_g`` are checked against the prediction.

    >>> from astower.tower.zeta import l_polynomial_from_counts
    >>> l_polynomial_from_counts(2, 1, [2]).coeffs
    (1, -1, 2)
    >>> l_polynomial_from_counts(2, 0, []).coeffs
    (1,)
    """
    if not _is_prime_power(q):
        raise ZetaError(f"field size must be a prime power, got {q}")
    if g < 0:
        raise ZetaError(f"genus must be >= 0, got {g}")
    if len(counts) < g:
        raise ZetaError(f"genus {g} needs {g} counts, got {len(counts)}")

    s = [q**k + 1 - n for k, n in enumerate(counts[:g], 1)]
    b = [1]
    for n in range(1, g + 1):
        total = -sum(s[r - 1] * b[n - r] for r in range(1, n + 1))
        if total % n:
            raise NonIntegralCoefficientError(
                f"b_{n} = {total}/{n} is not an integer for q={q}, g={g}"
            )
        b.append(total // n)
    for i in range(g - 1, -1, -1):
        b.append(q ** (g - i) * b[i])

    lpoly = LPolynomial(q, g, tuple(b))
    predicted = lpoly.predicted_counts(len(counts))
    if predicted != list(counts):
        raise ZetaConsistencyError(
            f"counts {list(counts)} differ from the prediction {predicted}"
        )
    return lpoly


@dataclass(frozen=True)
class ZetaReport:
    """Outcome of :func:`genus_crosscheck`.

    :ivar counts: ``N_1, ..., N_g`` used to build the polynomial.
    :ivar predicted: ``N_{g+1}, ..., N_{2g}`` from the polynomial.
    :ivar enumerated: The same counts from enumeration.
    """

    level: int
    lpoly: LPolynomial
    counts: list[int]
    predicted: list[int]
    enumerated: list[int]
    roots_abs: list[float]

    def as_dict(self) -> dict[str, object]:
        """Plain data for JSON output."""
        return {
            "level": self.level,
            "q": self.lpoly.q,
            "g": self.lpoly.g,
            "coeffs": list(self.lpoly.coeffs),
            "roots_abs": self.roots_abs,
            "counts": self.counts,
            "predicted_counts": self.predicted,
            "enumerated_counts": self.enumerated,
        }


def genus_crosscheck(level: int, g: Optional[int] = None) -> ZetaReport:
    """Check the genus of ``C_level`` against its point counts over ``F_2``.

    The counts ``N_k = #C_level(F_{2^k})`` for ``k <= g`` determine an
    L-polynomial. It must have integer coefficients and inverse roots of
    absolute value ``sqrt(2)``, every count must satisfy the Hasse-Weil
    bound and the predicted ``N_{g+1}, ..., N_{2g}`` must match enumeration.
    Any failure raises :class:`ZetaError`.

    ``g`` defaults to the genus from the ramification ledger. For ``g = 0``
    the single count ``N_1`` is still compared with ``q + 1``.
    """
    if level not in (1, 2):
        raise EnumerationRangeError(
            f"zeta cross-check supports levels 1 and 2, got {level}"
        )
    if g is None:
        g = genus(level)
    q = 2

    def count(k: int) -> int:
        pc = point_count(level, k)
        if not pc.exact:  # pragma: no cover
            raise ZetaError(f"no exact count of C_{level}(GF(2^{k}))")
        return pc.total

    counts = [count(k) for k in range(1, g + 1)]
    lpoly = l_polynomial_from_counts(q, g, counts)
    if not lpoly.satisfies_functional_equation():  # pragma: no cover
        raise ZetaConsistencyError(f"{lpoly} fails the functional equation")
    if not lpoly.roots_on_circle():
        raise ZetaConsistencyError(
            f"inverse roots of {lpoly} have absolute values {lpoly.roots_abs()}"
        )

    # At least N_1 is compared, even for g = 0.
    n_checked = max(2 * g, 1)
    predicted = lpoly.predicted_counts(n_checked)[g:]
    enumerated = [count(k) for k in range(g + 1, n_checked + 1)]
    for k, n in enumerate(counts + enumerated, 1):
        if not hasse_weil_holds(q, g, k, n):
            raise ZetaConsistencyError(
                f"N_{k} = {n} breaks the Hasse-Weil bound for g={g}"
            )
    if predicted != enumerated:
        raise ZetaConsistencyError(
            f"predicted counts {predicted} differ from enumeration {enumerated}"
        )
    _logger.info("C_%d: genus %d confirmed by L(T) = %s", level, g, lpoly)
    return ZetaReport(level, lpoly, counts, predicted, enumerated, lpoly.roots_abs())
