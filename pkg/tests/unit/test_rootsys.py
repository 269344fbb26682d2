"""
Tests for root systems, Weyl group data and the epsilon presentation.
"""

from fractions import Fraction

import pytest

from core.errors import InadmissibleTypeError, VerificationError
from lie.rootsys import (
    Weight,
    build_root_system,
    cartan_matrix,
    diagram_automorphism_phi,
    format_alpha,
    format_epsilon,
    from_epsilon,
    highest_root,
    is_w0_minus_identity,
    parse_epsilon,
    to_epsilon,
    w0_image,
)


@pytest.mark.unit
class TestCartanMatrix:
    """Test Cartan matrices in Bourbaki numbering."""

    def test_a3(self):
        assert cartan_matrix("A", 3) == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))

    def test_b2_last_root_short(self):
        """a_21 = <alpha_1, alpha_2^vee> = -2 makes alpha_2 the short root."""
        assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))

    def test_c3_last_root_long(self):
        assert cartan_matrix("C", 3) == ((2, -1, 0), (-1, 2, -2), (0, -1, 2))

    def test_g2(self):
        assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))

    def test_e6_branch_node(self):
        a = cartan_matrix("E", 6)

        assert a[1][3] == -1 and a[3][1] == -1
        assert a[0][2] == -1
        assert sum(1 for j in range(6) if a[3][j] == -1) == 3

    def test_d4_branch_node(self):
        a = cartan_matrix("D", 4)

        assert [a[1][j] for j in range(4)] == [-1, 2, -1, -1]

    def test_lowercase_type(self):
        assert cartan_matrix("f", 4) == cartan_matrix("F", 4)

    @pytest.mark.parametrize("type_label, rank", [
        ("A", 0), ("B", 1), ("C", 2), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3), ("H", 2),
    ])
    def test_inadmissible(self, type_label, rank):
        with pytest.raises(InadmissibleTypeError, match="admissible ranges"):
            cartan_matrix(type_label, rank)


@pytest.mark.unit
class TestRootSystem:
    """Test positive roots, weights and inner products."""

    @pytest.mark.parametrize("type_label, rank, count", [
        ("A", 1, 1), ("A", 4, 10), ("B", 3, 9), ("C", 4, 16), ("D", 5, 20),
        ("E", 6, 36), ("E", 7, 63), ("E", 8, 120), ("F", 4, 24), ("G", 2, 6),
    ])
    def test_number_of_positive_roots(self, type_label, rank, count):
        system = build_root_system(type_label, rank)

        assert system.dim_n == count
        assert system.dim_b == count + rank

    def test_roots_sorted_by_height_then_lex(self, a2):
        assert a2.positive_roots == ((0, 1), (1, 0), (1, 1))

    def test_g2_roots(self, g2):
        assert set(g2.positive_roots) == {(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)}

    def test_label_and_simple_roots(self, b2):
        assert b2.label == "B2"
        assert b2.simple_roots == ((1, 0), (0, 1))

    def test_is_root(self, b2):
        assert b2.is_positive_root((1, 2))
        assert b2.is_root((-1, -2))
        assert not b2.is_positive_root((2, 1))

    def test_short_roots_have_length_two(self, b2, g2):
        assert b2.root_length_squared((1, 0)) == 4
        assert b2.root_length_squared((0, 1)) == 2
        assert g2.root_length_squared((1, 0)) == 2
        assert g2.root_length_squared((0, 1)) == 6

    def test_fundamental_weights_a2(self, a2):
        assert a2.fundamental_weights[0] == Weight.of([Fraction(2, 3), Fraction(1, 3)])
        assert a2.fundamental_weights[1] == Weight.of([Fraction(1, 3), Fraction(2, 3)])

    @pytest.mark.parametrize("type_label, rank", [("B", 3), ("F", 4), ("E", 6), ("G", 2)])
    def test_fundamental_weights_dual_to_coroots(self, type_label, rank):
        system = build_root_system(type_label, rank)

        for i, weight in enumerate(system.fundamental_weights):
            assert [system.pairing(weight, j) for j in range(rank)] == [int(i == j) for j in range(rank)]

    def test_weight_from_fundamental_round_trip(self, a3):
        weight = a3.weight_from_fundamental([1, 0, 2])

        assert a3.fundamental_coordinates(weight) == (1, 0, 2)

    def test_reflection_negates_simple_root(self, g2):
        assert g2.reflect(Weight.of([0, 1]), 1) == Weight.of([0, -1])

    def test_weight_as_root(self):
        assert Weight.of([1, 2]).as_root() == (1, 2)
        with pytest.raises(ValueError, match="not integral"):
            Weight.of([Fraction(1, 2), 0]).as_root()

    def test_weight_strings(self):
        assert Weight.of([Fraction(1, 2), 2]).to_strings() == ["1/2", "2/1"]


@pytest.mark.unit
class TestHighestRoot:
    """Test the highest root of irreducible systems."""

    @pytest.mark.parametrize("type_label, rank, theta", [
        ("A", 3, (1, 1, 1)),
        ("B", 3, (1, 2, 2)),
        ("C", 3, (2, 2, 1)),
        ("D", 4, (1, 2, 1, 1)),
        ("E", 6, (1, 2, 2, 3, 2, 1)),
        ("E", 8, (2, 3, 4, 6, 5, 4, 3, 2)),
        ("F", 4, (2, 3, 4, 2)),
        ("G", 2, (3, 2)),
    ])
    def test_highest_root(self, type_label, rank, theta):
        assert highest_root(build_root_system(type_label, rank)) == theta

    def test_empty(self):
        with pytest.raises(ValueError, match="empty"):
            highest_root([])

    def test_reducible_set(self):
        with pytest.raises(VerificationError, match="does not dominate"):
            highest_root([(1, 0, 0), (0, 0, 1)])


@pytest.mark.unit
class TestLongestElement:
    """Test w0 and the diagram automorphism phi."""

    @pytest.mark.parametrize("type_label, rank, phi", [
        ("A", 1, (0,)),
        ("A", 4, (3, 2, 1, 0)),
        ("B", 3, (0, 1, 2)),
        ("D", 4, (0, 1, 2, 3)),
        ("D", 5, (0, 1, 2, 4, 3)),
        ("E", 6, (5, 1, 4, 3, 2, 0)),
        ("E", 7, (0, 1, 2, 3, 4, 5, 6)),
        ("G", 2, (0, 1)),
    ])
    def test_phi(self, type_label, rank, phi):
        assert diagram_automorphism_phi(build_root_system(type_label, rank)) == phi

    @pytest.mark.parametrize("type_label, rank, expected", [
        ("A", 1, True), ("A", 2, False), ("B", 4, True), ("C", 3, True), ("D", 4, True),
        ("D", 5, False), ("E", 6, False), ("E", 7, True), ("E", 8, True), ("F", 4, True), ("G", 2, True),
    ])
    def test_w0_minus_identity(self, type_label, rank, expected):
        assert is_w0_minus_identity(build_root_system(type_label, rank)) is expected

    def test_w0_is_an_involution(self, a3):
        weight = Weight.of([Fraction(1, 2), 3, -1])

        assert w0_image(a3, w0_image(a3, weight)) == weight

    def test_w0_maps_dominant_to_antidominant(self):
        system = build_root_system("E", 6)
        image = w0_image(system, system.fundamental_weights[0])

        assert system.is_antidominant(image)
        assert image == -system.fundamental_weights[5]

    def test_w0_negates_highest_root(self, g2):
        assert w0_image(g2, Weight.of([3, 2])) == Weight.of([-3, -2])


@pytest.mark.unit
class TestEpsilon:
    """Test the epsilon-coordinate presentation of the classical types."""

    def test_from_epsilon(self, a2, b2):
        assert from_epsilon(a2, [1, 0, -1]) == Weight.of([1, 1])
        assert from_epsilon(b2, [1, 0]) == Weight.of([1, 1])

    def test_c_and_d(self):
        c3 = build_root_system("C", 3)
        d4 = build_root_system("D", 4)

        assert from_epsilon(c3, [2, 0, 0]) == Weight.of([2, 2, 1])
        assert from_epsilon(d4, [1, 1, 0, 0]) == Weight.of([1, 2, 1, 1])

    @pytest.mark.parametrize("type_label, rank", [("A", 3), ("B", 3), ("C", 4), ("D", 5)])
    def test_to_epsilon_inverts_from_epsilon(self, type_label, rank):
        system = build_root_system(type_label, rank)

        for root in system.positive_roots:
            assert from_epsilon(system, to_epsilon(system, root)).as_root() == root

    def test_parse_and_format(self, a3):
        weight = parse_epsilon(a3, "e2-e4")

        assert weight.as_root() == (0, 1, 1)
        assert format_epsilon(a3, weight) == "e2-e4"

    def test_parse_with_coefficients(self):
        c3 = build_root_system("C", 3)

        assert parse_epsilon(c3, "2e3").as_root() == (0, 0, 1)

    @pytest.mark.parametrize("text", ["", "e", "e1+", "x1", "e9"])
    def test_parse_rejects_malformed(self, a3, text):
        with pytest.raises(ValueError):
            parse_epsilon(a3, text)

    def test_wrong_length(self, a3):
        with pytest.raises(ValueError, match="epsilon-coordinates"):
            from_epsilon(a3, [1, 0, 0])

    def test_exceptional_types_have_no_epsilon_form(self, g2):
        with pytest.raises(InadmissibleTypeError):
            to_epsilon(g2, (1, 0))


@pytest.mark.unit
class TestFormatAlpha:
    """Test rendering of simple-root coordinates."""

    @pytest.mark.parametrize("root, text", [
        ((1, 2), "a1+2a2"),
        ((3, 2), "3a1+2a2"),
        ((0, 1, 0), "a2"),
        ((0, 0), "0"),
        ((-1, 1), "-a1+a2"),
        ((Fraction(1, 2), 0), "1/2a1"),
    ])
    def test_format(self, root, text):
        assert format_alpha(root) == text
