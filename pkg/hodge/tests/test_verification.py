"""
Тесты набора проверок verify
"""

from django.test import SimpleTestCase

from hodge.polyring import ONE, Q, FactoredRational
from hodge.verification import Status, VerificationSuite, documented


class DocumentedDiscrepancyTest(SimpleTestCase):

    def test_statuses(self):
        known = FactoredRational.fraction(Q, ONE - Q)
        self.assertIs(documented(FactoredRational(0), known, '').status, Status.PASS)
        self.assertIs(documented(known * 1, known, 'известно').status, Status.WARN)
        self.assertIs(documented(known * 2, known, 'известно').status, Status.FAIL)


class GenusTwoSuiteTest(SimpleTestCase):

    def test_no_failures(self):
        outcomes = VerificationSuite.run([2])
        self.assertEqual([o.check_name for o in outcomes if o.failed], [])
        warned = {o.check_name for o in outcomes if o.status is Status.WARN}
        self.assertEqual(warned, {'strata.theorem_delta', 'strata.theorem_type4_degree'})

    def test_stringy_checks_skipped(self):
        with self.assertLogs('hodge.verification', level='WARNING') as logs:
            outcomes = VerificationSuite.run([2])
        skipped = [o for o in outcomes if o.status is Status.SKIP]
        self.assertEqual([o.check_name for o in skipped], ['stringy.*'])
        self.assertTrue(any('skipped' in line for line in logs.output))
        self.assertIn('stringy.grass_point_count', {o.check_name for o in outcomes if o.passed})

    def test_strict_turns_warnings_into_failures(self):
        outcomes = VerificationSuite.run([2], strict=True)
        failed = {o.check_name for o in outcomes if o.failed}
        self.assertEqual(failed, {'strata.theorem_delta', 'strata.theorem_type4_degree'})

    def test_sorted_output(self):
        outcomes = VerificationSuite.run([2])
        names = [o.check_name for o in outcomes]
        self.assertEqual(names, sorted(names))

    def test_theorem_delta_reported(self):
        result = VerificationSuite.check_theorem_delta(2)
        self.assertIs(result.status, Status.WARN)
        self.assertIsNotNone(result.delta.as_polynomial())


class StringyChecksTest(SimpleTestCase):
    """Отдельные проверки при g = 3"""

    def test_passing_checks(self):
        for check in (
            VerificationSuite.check_assembly,
            VerificationSuite.check_inclusion_exclusion,
            VerificationSuite.check_divisor_polynomials,
            VerificationSuite.check_divisor_symmetry,
            VerificationSuite.check_euler_correction,
            VerificationSuite.check_stringy_shape,
        ):
            self.assertIs(check(3).status, Status.PASS, check.__name__)

    def test_documented_checks(self):
        for check in (
            VerificationSuite.check_d2_closed_degree,
            VerificationSuite.check_d2_isotypic,
            VerificationSuite.check_euler_total,
            VerificationSuite.check_non_polynomiality,
        ):
            self.assertIs(check(3).status, Status.WARN, check.__name__)

    def test_euler_total_delta_is_stable_euler(self):
        result = VerificationSuite.check_euler_total(3)
        self.assertEqual(result.delta.limit_at_one(), 432)


class FullRangeSuiteTest(SimpleTestCase):
    """Весь набор проверок для g = 2..8: только задокументированные расхождения"""

    ALWAYS_WARN = {'strata.theorem_delta', 'strata.theorem_type4_degree'}
    STRINGY_WARN = {'stringy.d2_closed_degree', 'stringy.d2_isotypic', 'stringy.euler_total'}

    def expected_warnings(self, g):
        warned = set(self.ALWAYS_WARN)
        if g >= 3:
            warned |= self.STRINGY_WARN
        if g == 3:
            warned.add('stringy.non_polynomiality')
        return warned

    def test_genera_two_to_eight(self):
        outcomes = VerificationSuite.run(range(2, 9))
        self.assertEqual({o.genus for o in outcomes}, set(range(2, 9)))
        for g in range(2, 9):
            with self.subTest(g=g):
                current = [o for o in outcomes if o.genus == g]
                self.assertEqual([o.check_name for o in current if o.failed], [])
                warned = {o.check_name for o in current if o.status is Status.WARN}
                self.assertEqual(warned, self.expected_warnings(g))
                skipped = [o.check_name for o in current if o.status is Status.SKIP]
                self.assertEqual(skipped, ['stringy.*'] if g == 2 else [])
                self.assertTrue(all(o.anchor for o in current))
                if g >= 3:
                    self.assertEqual(len(current), len(VerificationSuite.checks()))
