from astower.tower.exceptions import (
    EnumerationRangeError,
    NonIntegralCoefficientError,
    ZetaConsistencyError,
    ZetaError,
)
from astower.tower.zeta import (
    LPolynomial,
    genus_crosscheck,
    l_polynomial_from_counts,
)
from pytest import raises


def test_LPolynomial() -> None:
    """Test power sums, predictions and roots of a genus one L-polynomial."""
    L = LPolynomial(2, 1, (1, -1, 2))
    assert str(L) == "2*T**2 - T + 1"
    assert L.power_sums(3) == [1, -3, -5]
    assert L.predicted_counts(4) == [2, 8, 14, 16]
    assert L.satisfies_functional_equation()
    assert not LPolynomial(2, 1, (1, -1, 3)).satisfies_functional_equation()
    assert not LPolynomial(2, 1, (1, -1)).satisfies_functional_equation()
    assert len(L.inverse_roots()) == 2
    assert all(abs(r - 2**0.5) < 1e-12 for r in L.roots_abs())
    assert L.roots_on_circle()
    assert not LPolynomial(2, 1, (1, -3, 2)).roots_on_circle()

    trivial = LPolynomial(2, 0, (1,))
    assert trivial.roots_abs() == []
    assert trivial.predicted_counts(2) == [3, 5]


def test_LPolynomial_repeated_roots() -> None:
    """Test that a squared factor keeps its roots on the circle."""
    L = LPolynomial(2, 2, (1, -2, 5, -4, 4))
    assert L.satisfies_functional_equation()
    assert len(L.inverse_roots()) == 4
    assert L.roots_on_circle()


def test_l_polynomial_from_counts() -> None:
    """Test Newton's identities and the checks on the counts."""
    assert l_polynomial_from_counts(2, 1, [2]).coeffs == (1, -1, 2)
    assert l_polynomial_from_counts(2, 1, [2, 8, 14]).coeffs == (1, -1, 2)
    assert l_polynomial_from_counts(2, 0, [3]).coeffs == (1,)
    assert l_polynomial_from_counts(4, 1, [5]).coeffs == (1, 0, 4)

    raises(ZetaConsistencyError, lambda: l_polynomial_from_counts(2, 1, [2, 8, 15]))
    raises(ZetaConsistencyError, lambda: l_polynomial_from_counts(2, 0, [2]))
    raises(NonIntegralCoefficientError, lambda: l_polynomial_from_counts(2, 2, [3, 4]))
    raises(ArithmeticError, lambda: l_polynomial_from_counts(2, 2, [3, 4]))
    raises(ZetaError, lambda: l_polynomial_from_counts(6, 1, [7]))
    raises(ZetaError, lambda: l_polynomial_from_counts(1, 1, [2]))
    raises(ZetaError, lambda: l_polynomial_from_counts(2, -1, []))
    raises(ZetaError, lambda: l_polynomial_from_counts(2, 2, [2]))


def test_genus_crosscheck_level1() -> None:
    """Test that C_1 is an elliptic curve with 2, 8, 14 points."""
    report = genus_crosscheck(1)
    assert report.lpoly == LPolynomial(2, 1, (1, -1, 2))
    assert report.counts == [2]
    assert report.predicted == report.enumerated == [8]
    assert report.as_dict() == {
        "level": 1,
        "q": 2,
        "g": 1,
        "coeffs": [1, -1, 2],
        "roots_abs": report.roots_abs,
        "counts": [2],
        "predicted_counts": [8],
        "enumerated_counts": [8],
    }


def test_genus_crosscheck_level2() -> None:
    """Test that the counts of C_2 fit a curve of genus 5."""
    report = genus_crosscheck(2)
    L = report.lpoly
    assert L.g == 5
    assert len(L.coeffs) == 11
    assert L.coeffs[:2] == (1, -1)
    assert L.coeffs[-1] == 32
    assert report.counts[:3] == [2, 12, 26]
    assert report.predicted == report.enumerated
    assert len(report.enumerated) == 5
    assert L.roots_on_circle()


def test_genus_crosscheck_wrong_genus() -> None:
    """Test that a wrong genus is rejected."""
    raises(ZetaConsistencyError, lambda: genus_crosscheck(1, g=2))
    raises(ZetaConsistencyError, lambda: genus_crosscheck(1, g=0))
    raises(ZetaError, lambda: genus_crosscheck(2, g=4))
    # Counts 2, 12, 26 read as genus 3 give inverse roots off the circle.
    raises(ZetaConsistencyError, lambda: genus_crosscheck(2, g=3))
    raises(EnumerationRangeError, lambda: genus_crosscheck(3))
    raises(EnumerationRangeError, lambda: genus_crosscheck(0))
