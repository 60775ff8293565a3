"""
Тесты обрезанных рядов и производящих функций симметрических степеней
"""

from math import comb

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from hodge.exceptions import DegreeOutOfRange, TruncationExceeded, UnknownShape, ZeroInput
from hodge.polyring import ONE, Q, U, V, ZERO, FactoredRational
from hodge.powerseries import GeneratingFunctions, SeriesShape, TruncatedSeries

genera = st.integers(min_value=2, max_value=5)


class TruncatedSeriesTest(SimpleTestCase):

    def test_binomial(self):
        series = TruncatedSeries.binomial(U, 2, 4)
        self.assertEqual(series.coefficients, (ONE, U * -2, U * U, ZERO, ZERO))

    def test_geometric_inverse(self):
        geometric = TruncatedSeries.geometric(Q, 5)
        self.assertEqual(geometric.inverse(), TruncatedSeries.binomial(Q, 1, 5))
        self.assertEqual(geometric * TruncatedSeries.binomial(Q, 1, 5), TruncatedSeries.one(5))

    def test_inverse_requires_constant(self):
        with self.assertRaises(ZeroInput):
            TruncatedSeries([U, ONE]).inverse()

    def test_mixed_orders_truncate(self):
        total = TruncatedSeries.geometric(ONE, 3) + TruncatedSeries.geometric(ONE, 6)
        self.assertEqual(total.order, 3)

    def test_shift(self):
        self.assertEqual(TruncatedSeries.one(2).shift(1).coefficients, (ZERO, ONE, ZERO))

    def test_coefficient_bounds(self):
        series = TruncatedSeries.geometric(ONE, 2)
        with self.assertRaises(TruncationExceeded):
            series.coefficient(3)
        with self.assertRaises(DegreeOutOfRange):
            series.coefficient(-1)


class GeneratingFunctionsTest(SimpleTestCase):

    def test_sym_prod_first_coefficient(self):
        self.assertEqual(GeneratingFunctions.sym_prod_e(1, 3), ONE - U * 3 - V * 3 + Q)
        self.assertEqual(GeneratingFunctions.sym_prod_e(1, 2), ONE - U * 2 - V * 2 + Q)
        self.assertEqual(GeneratingFunctions.sym_prod_e(0, 4), ONE)

    def test_sym_prod_genus_two_square(self):
        expected = (
            ONE - V * 2 + V * V - U * 2 + Q * 5 - U * V * V * 2
            + U * U - U * U * V * 2 + Q * Q
        )
        self.assertEqual(GeneratingFunctions.sym_prod_e(2, 2), expected)

    def test_bare_shape(self):
        bare = GeneratingFunctions.series_from_product(2, 'bare', 2)
        self.assertEqual(bare.coefficient(2), Q)

    def test_reduced_shape(self):
        reduced = GeneratingFunctions.series_from_product(2, 'reduced', 2)
        self.assertEqual(reduced.coefficients, (
            ONE,
            ONE + Q - U - V,
            ONE + Q * 2 + Q * Q - U - V - U * Q - V * Q,
        ))
        # при роде g - 1 это симметричная форма
        self.assertEqual(
            GeneratingFunctions.series_from_product(4, SeriesShape.REDUCED, 5),
            GeneratingFunctions.series_from_product(3, SeriesShape.SYMMETRIC, 5),
        )

    def test_tilde_sym_prod(self):
        expected = (
            ONE - V * 3 + V * V * 66 - U * 3 + Q * 262 - U * V * V * 3
            + U * U * 66 - U * U * V * 3 + Q * Q
        )
        self.assertEqual(GeneratingFunctions.tilde_sym_prod_e(2, 3), expected)

    def test_unknown_shape(self):
        with self.assertRaises(UnknownShape):
            GeneratingFunctions.series_from_product(3, 'twisted', 2)
        self.assertIs(GeneratingFunctions.resolve_shape('shifted'), SeriesShape.SHIFTED)

    def test_negative_degree(self):
        with self.assertRaises(DegreeOutOfRange):
            GeneratingFunctions.sym_prod_e(-1, 3)

    @settings(deadline=None, max_examples=10)
    @given(genera, st.integers(min_value=0, max_value=6))
    def test_symmetric_products_are_symmetric(self, g, n):
        self.assertTrue(GeneratingFunctions.sym_prod_e(n, g).is_symmetric())
        self.assertTrue(GeneratingFunctions.tilde_sym_prod_e(n, g).is_symmetric())

    @settings(deadline=None, max_examples=10)
    @given(genera, st.integers(min_value=0, max_value=6))
    def test_cover_euler_characteristic(self, g, n):
        base = GeneratingFunctions.sym_prod_e(n, g).evaluate(1, 1)
        cover = GeneratingFunctions.tilde_sym_prod_e(n, g).evaluate(1, 1)
        self.assertEqual(cover - base, (2 ** (2 * g) - 1) * (-1) ** n * comb(2 * g - 2, n))

    def test_even_coeff_sum_genus_three(self):
        series_value, closed_value = GeneratingFunctions.even_coeff_sum(3)
        self.assertEqual(series_value, ONE + V * V + Q * 4 + U * U)
        self.assertEqual(closed_value, series_value)

    @settings(deadline=None, max_examples=8)
    @given(st.integers(min_value=2, max_value=7))
    def test_even_coeff_sum_closed_form(self, g):
        series_value, closed_value = GeneratingFunctions.even_coeff_sum(g)
        self.assertEqual(series_value, closed_value)

    def test_residue_sum_series(self):
        self.assertEqual(GeneratingFunctions.residue_sum_series(3), ONE - U * 2 - V * 2 + Q)
        self.assertEqual(GeneratingFunctions.residue_sum_series(2), ZERO)

    @settings(deadline=None, max_examples=6)
    @given(st.integers(min_value=2, max_value=6))
    def test_residue_identity(self, g):
        closed = GeneratingFunctions.residue_sum_closed(g)
        self.assertTrue(closed.rat_eq(FactoredRational(GeneratingFunctions.residue_sum_series(g))))

    def test_residues_require_genus_two(self):
        with self.assertRaises(DegreeOutOfRange):
            GeneratingFunctions.residues(1)
