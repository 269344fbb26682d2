"""
Tests for the Borel subalgebra checks.
"""

import pytest

from lie.borel import (
    COMPUTED,
    OUT_OF_SCOPE,
    TRIVIAL,
    borel_context,
    borel_field_invariants,
    borel_index_check,
    generic_borel_point,
    lift_to_borel,
    no_polynomial_invariants_check,
    orbit_level_set_check,
)
from lie.polyalg import RationalFunction, make_context
from lie.rootsys import build_root_system
from lie.sampling import PointSampler


@pytest.fixture(scope="module")
def a2_bctx(a2):
    return borel_context(a2)


@pytest.mark.unit
class TestBorelContext:

    def test_a_set_and_index(self, a2_bctx):
        assert a2_bctx.a_set == (0,)
        assert a2_bctx.index == 1

    @pytest.mark.parametrize("type_label, rank", [("A", 2), ("A", 3), ("B", 2), ("G", 2)])
    def test_consistent_with_nilpotent_brackets(self, type_label, rank):
        assert borel_context(build_root_system(type_label, rank)).consistency_defects() == []

    def test_trivial_index(self, g2):
        assert borel_context(g2).index == 0


@pytest.mark.unit
class TestLiftToBorel:

    def test_polynomial(self, a2_nilpotent, a2_borel):
        assert lift_to_borel(a2_nilpotent.e((1, 1)), a2_borel) == a2_borel.e((1, 1))

    def test_rational_function(self, a2_nilpotent, a2_borel):
        f = RationalFunction.quotient(a2_nilpotent.e((0, 1)), a2_nilpotent.e((1, 1)))

        lifted = lift_to_borel(f, a2_borel)

        assert lifted.nvars == a2_borel.nvars
        assert lifted == RationalFunction.quotient(a2_borel.e((0, 1)), a2_borel.e((1, 1)))

    def test_cannot_shrink(self, a2_nilpotent, a2_borel):
        with pytest.raises(ValueError, match="cannot lift"):
            lift_to_borel(a2_borel.h(0), a2_nilpotent)


@pytest.mark.unit
class TestPolynomialInvariants:

    @pytest.mark.slow
    @pytest.mark.parametrize("type_label, rank", [("A", 2), ("B", 2)])
    def test_borel_has_constants_only(self, type_label, rank):
        report = no_polynomial_invariants_check(make_context(build_root_system(type_label, rank), "borel"), 4)

        assert report.flavor == "borel"
        assert report.degree_bound == 4
        assert report.constants_only

    def test_nilpotent_context_finds_cascade_invariants(self, a2_nilpotent):
        report = no_polynomial_invariants_check(a2_nilpotent, 2)

        assert not report.constants_only
        assert len(report.basis) == 2


@pytest.mark.unit
class TestFieldInvariants:
    """Test the invariant field of b^*."""

    @pytest.mark.parametrize("type_label, rank", [("G", 2), ("B", 2), ("D", 4), ("E", 7)])
    def test_trivial_when_w0_is_minus_identity(self, type_label, rank):
        report = borel_field_invariants(build_root_system(type_label, rank))

        assert report.status == TRIVIAL
        assert report.a_set == ()
        assert report.invariants == ()
        assert report.independent is None

    def test_a2(self, a2_borel):
        report = borel_field_invariants(build_root_system("A", 2))

        assert report.status == COMPUTED
        assert report.a_set == (0,)
        assert len(report.invariants) == 1
        assert a2_borel.weight_of(report.invariants[0]) == (0, 0)
        assert report.jacobian_rank == 1
        assert report.independent

    def test_a4_has_two_invariants(self):
        report = borel_field_invariants(build_root_system("A", 4))

        assert report.a_set == (0, 1)
        assert report.jacobian_rank == 2
        assert report.independent

    def test_other_types_are_out_of_scope(self):
        report = borel_field_invariants(build_root_system("E", 6))

        assert report.status == OUT_OF_SCOPE
        assert report.a_set == (0, 2)
        assert set(report.L) == {0, 2}
        assert report.jacobian_rank is None


@pytest.mark.unit
class TestRankChecks:
    """Test generic ranks and level sets at seeded points."""

    def test_index_check(self, a2_bctx):
        point = generic_borel_point(a2_bctx, PointSampler(seed=0))

        report = borel_index_check(a2_bctx, point)

        assert report.dimension == 5
        assert report.expected_rank == 4
        assert report.passed

    @pytest.mark.parametrize("label, expected", [("A2", 4), ("A3", 8), ("B2", 6), ("G2", 8)])
    @pytest.mark.parametrize("seed", range(5))
    def test_generic_rank(self, invariant_sets, label, expected, seed):
        """dim b - |A| at points where every Z_i is defined and nonzero."""
        invariants = invariant_sets[label]
        bctx = borel_context(invariants.cascade.system)
        point = generic_borel_point(bctx, PointSampler(seed=seed), avoid=invariants.zs)

        report = borel_index_check(bctx, point)

        assert report.expected_rank == expected
        assert report.rank == expected

    def test_generic_point_avoids_lifted_elements(self, a2_bctx, a2_nilpotent):
        e11 = a2_nilpotent.e((1, 1))

        point = generic_borel_point(a2_bctx, PointSampler(seed=4, bound=2), avoid=[e11])

        assert len(point) == 5
        assert point[2] != 0

    def test_level_set_of_J(self, a2_bctx):
        js = borel_field_invariants(a2_bctx.system).invariants
        point = generic_borel_point(a2_bctx, PointSampler(seed=2), avoid=[j.denominator for j in js])

        report = orbit_level_set_check(a2_bctx.ctx, point, js)

        assert report.poisson_rank == 4
        assert report.tangent
        assert report.passed

    def test_level_set_of_nilpotent_invariants(self, invariant_sets):
        invariants = invariant_sets["A3"]
        ctx = make_context(invariants.cascade.system, "nilpotent")
        point = PointSampler(seed=3).generic_point(ctx.nvars, avoid=invariants.zs)

        report = orbit_level_set_check(ctx, point, invariants.zs)

        assert report.expected_rank == 4
        assert report.passed

    def test_non_invariants_are_not_tangent(self, a2_nilpotent):
        point = PointSampler(seed=5).generic_point(3, avoid=[a2_nilpotent.e((1, 1))])

        report = orbit_level_set_check(a2_nilpotent, point, [a2_nilpotent.e((0, 1))])

        assert not report.tangent
        assert not report.passed
