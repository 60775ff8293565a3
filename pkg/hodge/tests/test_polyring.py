"""
Тесты точной арифметики многочленов и рациональных функций
"""

from fractions import Fraction

from django.test import SimpleTestCase
from hypothesis import given, settings, strategies as st

from hodge.exceptions import MixedMonomial, NotSeriesExpandable, OddDiagonalDegree, PoleAtOne, ZeroInput
from hodge.polyring import ONE, Q, U, V, ZERO, BivariatePolynomial, FactoredRational, q_power

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monomials = st.tuples(st.integers(0, 3), st.integers(0, 3))

polynomials = st.dictionaries(monomials, coefficients, max_size=5).map(BivariatePolynomial)
# многочлены со свободным членом 1 - допустимые множители знаменателя
unit_polynomials = st.dictionaries(
    monomials.filter(lambda key: key != (0, 0)), coefficients, max_size=3,
).map(lambda terms: BivariatePolynomial(terms) + 1)


class BivariatePolynomialTest(SimpleTestCase):

    @settings(deadline=None, max_examples=50)
    @given(polynomials, polynomials, polynomials)
    def test_ring_axioms(self, a, b, c):
        self.assertEqual(a + b, b + a)
        self.assertEqual(a * b, b * a)
        self.assertEqual((a + b) + c, a + (b + c))
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)
        self.assertEqual(a - a, ZERO)
        self.assertEqual(a * ONE, a)

    @settings(deadline=None, max_examples=50)
    @given(polynomials)
    def test_swap_is_involution(self, a):
        self.assertEqual(a.swap_uv().swap_uv(), a)
        self.assertTrue((a + a.swap_uv()).is_symmetric())

    @settings(deadline=None, max_examples=50)
    @given(polynomials, polynomials)
    def test_exact_quotient_of_product(self, a, b):
        if b.is_zero:
            return
        self.assertEqual((a * b).exact_quotient(b), a)

    def test_exact_quotient_not_divisible(self):
        self.assertIsNone((ONE + U).exact_quotient(ONE - V))
        self.assertIsNone((ONE + q_power(3)).exact_quotient(ONE - Q))

    def test_exact_quotient_by_zero(self):
        with self.assertRaises(ZeroInput):
            Q.exact_quotient(ZERO)

    def test_zero_coefficients_are_dropped(self):
        poly = BivariatePolynomial({(1, 0): 1, (0, 1): 0})
        self.assertEqual(len(poly), 1)
        self.assertEqual(U + V - V, U)

    def test_power(self):
        self.assertEqual((ONE - U) ** 2, ONE - U * 2 + U * U)
        self.assertEqual(Q ** 0, ONE)
        with self.assertRaises(ValueError):
            Q ** -1

    def test_diagonal_coefficients(self):
        poly = ONE - U * 3 - V * 3 + Q
        self.assertEqual(poly.diagonal_coefficients(), {0: 1, 1: -6, 2: 1})

    def test_uv_coefficients(self):
        self.assertEqual((ONE + q_power(2, 5)).uv_coefficients(), {0: 1, 2: 5})
        with self.assertRaises(MixedMonomial):
            (U + Q).uv_coefficients()

    def test_str(self):
        self.assertEqual(str(ONE - U * 3 - V * 3 + Q), '1 - 3u - 3v + uv')
        self.assertEqual(str(ZERO), '0')
        self.assertEqual(str(BivariatePolynomial({(2, 1): Fraction(-1, 2)})), '-(1/2)u^2v')

    def test_hodge_numbers(self):
        numbers = (ONE - U * 3 + q_power(2)).hodge_numbers()
        self.assertEqual(list(numbers.items()), [((0, 0), 1), ((1, 0), -3), ((2, 2), 1)])

    def test_triples(self):
        poly = ONE - U * Fraction(1, 3) + q_power(2)
        self.assertEqual(poly.to_triples(), [[0, 0, '1'], [1, 0, '-1/3'], [2, 2, '1']])
        self.assertEqual(BivariatePolynomial.from_triples(poly.to_triples()), poly)
        with self.assertRaises(ValueError):
            BivariatePolynomial.from_triples([[1, 1, '1'], [1, 1, '2']])


class FactoredRationalTest(SimpleTestCase):

    @settings(deadline=None, max_examples=40)
    @given(polynomials, unit_polynomials, unit_polynomials)
    def test_rat_eq_is_equivalence(self, numerator, first, second):
        x = FactoredRational(numerator, [first])
        y = FactoredRational(numerator * second, [first, second])
        z = FactoredRational(numerator * second * second, [(first, 1), (second, 2)])
        self.assertTrue(x.rat_eq(x))
        self.assertTrue(x.rat_eq(y) and y.rat_eq(x))
        self.assertTrue(y.rat_eq(z) and x.rat_eq(z))

    @settings(deadline=None, max_examples=40)
    @given(polynomials, unit_polynomials)
    def test_as_polynomial_recovers_quotient(self, a, b):
        value = FactoredRational(a * b, [b])
        self.assertEqual(value.as_polynomial(), a)

    @settings(deadline=None, max_examples=40)
    @given(polynomials, unit_polynomials, polynomials, unit_polynomials)
    def test_field_operations(self, a, b, c, d):
        x = FactoredRational(a, [b])
        y = FactoredRational(c, [d])
        self.assertTrue((x + y).rat_eq(y + x))
        self.assertTrue((x * y).rat_eq(FactoredRational(a * c, [b, d])))
        self.assertTrue((x + y - y).rat_eq(x))
        self.assertTrue((x * y).diagonal() == x.diagonal() * y.diagonal())

    def test_normalization_moves_constant_into_numerator(self):
        value = FactoredRational(ONE, [Q - ONE])
        self.assertEqual(value.factors[0].factor, ONE - Q)
        self.assertEqual(value.numerator, -ONE)
        self.assertTrue(value.rat_eq(FactoredRational(-ONE, [ONE - Q])))

    def test_zero_constant_term_is_rejected(self):
        with self.assertRaises(NotSeriesExpandable):
            FactoredRational(ONE, [Q])
        with self.assertRaises(NotSeriesExpandable):
            FactoredRational(ONE) / Q

    def test_division_by_zero(self):
        with self.assertRaises(ZeroInput):
            FactoredRational(ONE) / FactoredRational(ZERO)

    def test_geometric_quotient_is_polynomial(self):
        value = FactoredRational.fraction(ONE - q_power(3), ONE - Q)
        self.assertEqual(value.as_polynomial(), ONE + Q + q_power(2))
        self.assertEqual(value.limit_at_one(), 3)
        self.assertEqual(value.uv_degree(), 2)

    def test_non_polynomial(self):
        value = FactoredRational.fraction(ONE, ONE - Q)
        self.assertIsNone(value.as_polynomial())
        with self.assertRaises(PoleAtOne):
            value.limit_at_one()

    def test_limit_after_cancellation(self):
        value = FactoredRational(
            (ONE - q_power(2)) * (ONE - q_power(3)),
            [(ONE - Q, 2)],
        )
        self.assertEqual(value.limit_at_one(), 6)

    def test_degrees(self):
        self.assertEqual(FactoredRational(q_power(4) - U).diagonal_degree(), 8)
        with self.assertRaises(OddDiagonalDegree):
            FactoredRational(U * Q).uv_degree()
        with self.assertRaises(ZeroInput):
            FactoredRational(ZERO).uv_degree()

    def test_symmetry(self):
        self.assertTrue(FactoredRational(U + V, [ONE - Q]).is_symmetric())
        self.assertFalse(FactoredRational(U, [ONE - V]).is_symmetric())
        self.assertTrue(FactoredRational(U, [ONE - V]).swap_uv().rat_eq(FactoredRational(V, [ONE - U])))

    def test_point_count(self):
        value = FactoredRational.fraction(ONE - q_power(4), ONE - Q)
        self.assertEqual(value.point_count(2), 15)
        self.assertEqual(value.point_count(3), 40)

    def test_str(self):
        self.assertEqual(str(FactoredRational.fraction(U, ONE - Q)), '(u) / (1 - uv)')
        self.assertEqual(str(FactoredRational(ONE, [(ONE - Q, 2)])), '(1) / (1 - uv)^2')
