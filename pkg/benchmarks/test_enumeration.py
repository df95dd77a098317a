"""Benchmarks for point counting and series expansion.

The value distribution of :mod:`astower.tower.points` is compared with the
depth first enumeration of the same chains.

"""

from typing import Callable, TypeVar

import pytest
from astower.core.laurent import (
    LaurentSeries,
    StepClassification,
    chain_expand,
    classify_chain_symbolic,
)
from astower.core.sequence import IndexSequence
from astower.tower import points

ResultType = TypeVar("ResultType")
Fixture = Callable[..., ResultType]


@pytest.mark.benchmark(group="affine points of C_3 over GF(2^8)")
class TestAffineCount:
    """Count the affine points of ``C_3`` over ``GF(2^8)``."""

    @staticmethod
    def test_distribution(benchmark: Fixture[int]) -> None:
        """Count by propagating the value distribution."""
        result = benchmark(points.affine_count, 3, 8)
        assert result == points.affine_count_naive(3, 8)

    @staticmethod
    def test_naive(benchmark: Fixture[int]) -> None:
        """Count by walking every chain."""
        result = benchmark(points.affine_count_naive, 3, 8)
        assert result == points.affine_count(3, 8)


@pytest.mark.benchmark(group="affine points of C_10 over GF(2^16)")
class TestAffineCountLarge:
    """Count the affine points of ``C_10`` over ``GF(2^16)``."""

    @staticmethod
    def test_distribution(benchmark: Fixture[int]) -> None:
        """Count by propagating the value distribution."""
        result = benchmark(points.affine_count, 10, 16)
        assert result > 0


@pytest.mark.benchmark(group="expansion along a sequence of length 17")
class TestExpansion:
    """Expand ``m_0, ..., m_16`` and classify above a zero of ``x_16``."""

    @staticmethod
    def test_chain_expand(benchmark: Fixture[list[LaurentSeries]]) -> None:
        """Expand to precision 320."""
        seq = IndexSequence.parse(",".join(["1", "rho"] * 8 + ["1"]))
        result = benchmark(chain_expand, seq, 320)
        assert result[-1].min_order == 256

    @staticmethod
    def test_classify_symbolic(benchmark: Fixture[list[StepClassification]]) -> None:
        """Classify every step above the zero."""
        seq = IndexSequence.parse(",".join(["1", "rho"] * 8 + ["0"]))
        result = benchmark(classify_chain_symbolic, seq, 16)
        assert result[-1].valuation == -1
