"""Rational helpers and the small exact linear algebra kit."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from powerpoly.exact_math import (
    RatMatrix,
    decimal_str,
    determinant,
    parse_rational,
    rank,
    rat,
    rational_from_json,
    rational_to_json,
    solve_square_system,
)

rationals = st.fractions(
    min_value=-100, max_value=100, max_denominator=50
)


class TestRat:
    def test_reduces_to_lowest_terms(self):
        assert rat(2, 4) == Fraction(1, 2)

    def test_normalizes_sign_into_numerator(self):
        value = rat(3, -6)
        assert value == Fraction(-1, 2)
        assert value.denominator == 2

    def test_keeps_irreducible_input(self):
        assert rat(97, 150) == Fraction(97, 150)

    def test_integer_shorthand(self):
        assert rat(5) == Fraction(5)

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            rat(1, 0)


class TestParseRational:
    def test_plain_integer(self):
        assert parse_rational("4") == Fraction(4)

    def test_fraction_form(self):
        assert parse_rational("97/150") == Fraction(97, 150)

    def test_negative_reduces(self):
        assert parse_rational("-3/6") == Fraction(-1, 2)

    @pytest.mark.parametrize("bad", ["", "1.5", "a/b", "1/0", "1/ 2", "/3"])
    def test_rejects_non_rationals(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)


class TestDecimalStr:
    def test_six_places_default(self):
        assert decimal_str(Fraction(7, 36)) == "0.194444"

    def test_rounds_half_to_even(self):
        assert decimal_str(Fraction(5, 1000), 2) == "0.00"
        assert decimal_str(Fraction(15, 1000), 2) == "0.02"

    def test_negative_value(self):
        assert decimal_str(Fraction(-7, 36), 3) == "-0.194"

    def test_integer_value(self):
        assert decimal_str(Fraction(3), 2) == "3.00"

    def test_exact_terminating_decimal(self):
        assert decimal_str(Fraction(1, 8), 6) == "0.125000"


class TestJson:
    def test_digit_string_form(self):
        assert rational_to_json(Fraction(-7, 36)) == {"num": "-7", "den": "36"}

    def test_inverse(self):
        doc = {"num": "11", "den": "18"}
        assert rational_to_json(rational_from_json(doc)) == doc

    @given(rationals)
    def test_round_trip(self, value):
        assert rational_from_json(rational_to_json(value)) == value


class TestSolveSquareSystem:
    def test_identity(self):
        a = RatMatrix.from_rows([[1, 0], [0, 1]])
        assert solve_square_system(a, (Fraction(1, 3), Fraction(1, 3))) == (
            Fraction(1, 3),
            Fraction(1, 3),
        )

    def test_two_boundary_lines(self):
        # rows are w1+w2=1 and 2w1+w2=1, the lines w2=1-w1 and w2=1-2w1
        a = RatMatrix.from_rows([[1, 1], [2, 1]])
        assert solve_square_system(a, (1, 1)) == (Fraction(0), Fraction(1))

    def test_singular_returns_none(self):
        a = RatMatrix.from_rows([[1, 1], [1, 1]])
        assert solve_square_system(a, (1, 2)) is None

    @given(
        st.lists(
            st.lists(rationals, min_size=3, max_size=3),
            min_size=3,
            max_size=3,
        ),
        st.lists(rationals, min_size=3, max_size=3),
    )
    def test_solution_substitutes_back_exactly(self, rows, rhs):
        a = RatMatrix.from_rows(rows)
        solution = solve_square_system(a, rhs)
        if solution is None:
            assert determinant(a) == 0
        else:
            assert a.mul_vector(solution) == tuple(Fraction(v) for v in rhs)


class TestDeterminant:
    def test_identity_3x3(self):
        a = RatMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert determinant(a) == 1

    def test_diagonal(self):
        a = RatMatrix.from_rows([[1, 0], [0, Fraction(1, 2)]])
        assert determinant(a) == Fraction(1, 2)

    def test_simplex_edge_matrix_against_shoelace(self):
        # triangle (1/3,1/3), (1/2,1/2), (1/2,0); edge vectors as columns
        p = (Fraction(1, 3), Fraction(1, 3))
        q = (Fraction(1, 2), Fraction(1, 2))
        r = (Fraction(1, 2), Fraction(0))
        a = RatMatrix.from_rows(
            [
                [q[0] - p[0], r[0] - p[0]],
                [q[1] - p[1], r[1] - p[1]],
            ]
        )
        det = determinant(a)
        assert det == Fraction(-1, 12)
        shoelace = (
            p[0] * (q[1] - r[1])
            + q[0] * (r[1] - p[1])
            + r[0] * (p[1] - q[1])
        ) / 2
        assert abs(det) / 2 == abs(shoelace) == Fraction(1, 24)

    def test_row_swap_flips_sign(self):
        a = RatMatrix.from_rows([[2, 3], [5, 7]])
        b = RatMatrix.from_rows([[5, 7], [2, 3]])
        assert determinant(a) == -determinant(b)

    def test_singular_is_exactly_zero(self):
        a = RatMatrix.from_rows([[1, 2], [2, 4]])
        assert determinant(a) == 0

    @given(
        st.lists(
            st.lists(rationals, min_size=2, max_size=2),
            min_size=2,
            max_size=2,
        )
    )
    def test_transpose_invariance(self, rows):
        a = RatMatrix.from_rows(rows)
        t = RatMatrix.from_rows(
            [[rows[0][0], rows[1][0]], [rows[0][1], rows[1][1]]]
        )
        assert determinant(a) == determinant(t)


class TestRatMatrix:
    def test_rejects_ragged_rows(self):
        with pytest.raises(ValueError):
            RatMatrix.from_rows([[1, 2], [3]])

    def test_rank(self):
        assert rank(RatMatrix.from_rows([[1, 1], [2, 2]])) == 1
        assert rank(RatMatrix.from_rows([[1, 0], [0, 1]])) == 2
        assert rank(RatMatrix.from_rows([[0, 0], [0, 0]])) == 0


@given(rationals, rationals)
def test_addition_round_trips(a, b):
    assert (a + b) - b == a
