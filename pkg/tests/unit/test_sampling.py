"""
Tests for seeded generic points.
"""

import pytest

from core.errors import DegenerateSampleError
from lie.polyalg import Polynomial, RationalFunction
from lie.sampling import PointSampler, is_generic

x = Polynomial.variable(2, 0)
y = Polynomial.variable(2, 1)


@pytest.mark.unit
class TestPointSampler:

    def test_same_seed_same_points(self):
        first = PointSampler(seed=11).generic_points(4, 3)
        second = PointSampler(seed=11).generic_points(4, 3)

        assert first == second

    def test_coordinates_within_bound(self):
        point = PointSampler(seed=2, bound=5).point(50)

        assert len(point) == 50
        assert all(-5 <= c <= 5 for c in point)
        assert all(c.denominator == 1 for c in point)

    def test_generic_point_avoids_zeros(self):
        point = PointSampler(seed=0, bound=3).generic_point(2, avoid=[x, y, x - y])

        assert x.evaluate(point) != 0
        assert y.evaluate(point) != 0
        assert point[0] != point[1]

    def test_degenerate_after_retries(self):
        with pytest.raises(DegenerateSampleError, match="3 draws"):
            PointSampler(seed=0).generic_point(2, avoid=[Polynomial.zero(2)], max_retries=3)


@pytest.mark.unit
class TestIsGeneric:

    def test_zero_value(self):
        assert not is_generic([0, 1], [x])
        assert is_generic([1, 1], [x, y])

    def test_pole_is_not_generic(self):
        assert not is_generic([1, 0], [RationalFunction.quotient(x, y)])
        assert is_generic([1, 2], [RationalFunction.quotient(x, y)])
