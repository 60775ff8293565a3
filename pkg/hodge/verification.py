"""
Набор проверок тождеств для команды verify

Каждая проверка - чистая функция рода, возвращающая статус:
PASS, FAIL, WARN (задокументированное расхождение формул, не считается
ошибкой без --strict) или SKIP.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, List, NamedTuple, Optional

from .exceptions import HodgeError, OddDiagonalDegree
from .polyring import ONE, Q, U, V, FactoredRational, q_power
from .powerseries import GeneratingFunctions, SeriesShape, TruncatedSeries
from .strata import StrataCalculator, jacobian_pair, two_torsion
from .stringy import CLOSED_STRATA, OPEN_STRATA, DiscrepancyData, StringyCalculator

logger = logging.getLogger(__name__)

# Источник проверяемого тождества
RING_ANCHOR = 'exact arithmetic of the value types'
STRATA_ANCHOR = 'stratification of the stable locus'
THEOREM_ANCHOR = 'closed formula for E(M^s)'
DIVISOR_ANCHOR = 'E-polynomials of the exceptional divisors D_J'
STRINGY_ANCHOR = 'stringy E-function over the divisor strata'
EULER_ANCHOR = 'stringy Euler number corollary'


class Status(str, Enum):
    PASS = 'PASS'
    WARN = 'WARN'
    FAIL = 'FAIL'
    SKIP = 'SKIP'


class CheckResult(NamedTuple):
    status: Status
    delta: Optional[FactoredRational] = None
    detail: str = ''


@dataclass(frozen=True)
class VerificationOutcome:
    check_name: str
    genus: int
    status: Status
    subject: str
    anchor: str = ''
    delta: Optional[FactoredRational] = None
    detail: str = ''

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL


@dataclass(frozen=True)
class Check:
    name: str
    subject: str
    anchor: str
    run: Callable[[int], CheckResult]
    min_genus: int = 2


def verdict(condition: bool, detail: str = '') -> CheckResult:
    return CheckResult(Status.PASS if condition else Status.FAIL, detail=detail)


def documented(
    actual: FactoredRational,
    expected_delta: FactoredRational,
    detail: str,
) -> CheckResult:
    """PASS при нулевом расхождении, WARN если оно совпадает с задокументированным"""
    if actual.is_zero:
        return CheckResult(Status.PASS)
    if actual.rat_eq(expected_delta):
        return CheckResult(Status.WARN, delta=actual, detail=detail)
    return CheckResult(Status.FAIL, delta=actual, detail='расхождение отличается от задокументированного')


class VerificationSuite:
    """Все проверки модулей polyring, powerseries, strata и stringy"""

    STRINGY_PREFIX = 'stringy.'

    # --- polyring ---

    @classmethod
    def check_ring_axioms(cls, g: int) -> CheckResult:
        a, b = jacobian_pair(g)
        c = (ONE - U * U * V) ** (g - 1) - q_power(g)
        holds = (
            a + b == b + a
            and a * b == b * a
            and (a + b) + c == a + (b + c)
            and (a * b) * c == a * (b * c)
            and a * (b + c) == a * b + a * c
            and a + 0 == a
        )
        return verdict(holds)

    @classmethod
    def check_rat_eq_equivalence(cls, g: int) -> CheckResult:
        x = StrataCalculator.e_type4(g)
        first = ONE + q_power(g)
        second = ONE - U - V * 2
        y = FactoredRational(x.numerator * first, list(x.factors) + [(first, 1)])
        z = FactoredRational(y.numerator * second, list(y.factors) + [(second, 1)])
        holds = x.rat_eq(x) and x.rat_eq(y) and y.rat_eq(x) and y.rat_eq(z) and x.rat_eq(z)
        return verdict(holds)

    @classmethod
    def check_as_polynomial(cls, g: int) -> CheckResult:
        for value in (StrataCalculator.e_type3(g), StrataCalculator.e_type4(g), StrataCalculator.e_stable_moduli(g)):
            poly = value.as_polynomial()
            if poly is None or not value.rat_eq(FactoredRational(poly)):
                return verdict(False, f"as_polynomial не согласовано для {value!r}")
            if value.limit_at_one() != poly.evaluate(1, 1):
                return verdict(False, "предел многочлена не равен его значению в (1, 1)")
        return verdict(True)

    @classmethod
    def check_diagonal_homomorphism(cls, g: int) -> CheckResult:
        a = StrataCalculator.e_type3(g)
        b = StrataCalculator.e_stable_moduli(g)
        return verdict((a * b).diagonal() == a.diagonal() * b.diagonal())

    # --- powerseries ---

    @classmethod
    def check_even_coeff_sum(cls, g: int) -> CheckResult:
        series_value, closed_value = GeneratingFunctions.even_coeff_sum(g)
        delta = closed_value - series_value
        return CheckResult(
            Status.PASS if delta.is_zero else Status.FAIL,
            delta=None if delta.is_zero else FactoredRational(delta),
        )

    @classmethod
    def check_residue_identity(cls, g: int) -> CheckResult:
        closed = GeneratingFunctions.residue_sum_closed(g)
        series = FactoredRational(GeneratingFunctions.residue_sum_series(g))
        if closed.rat_eq(series):
            return CheckResult(Status.PASS)
        return CheckResult(Status.FAIL, delta=closed - series)

    @classmethod
    def check_symmetric_products(cls, g: int) -> CheckResult:
        for n in range(2 * g - 1):
            if not GeneratingFunctions.sym_prod_e(n, g).is_symmetric():
                return verdict(False, f"E(S^{n} X) несимметричен")
            tilde = GeneratingFunctions.tilde_sym_prod_e(n, g)
            if not tilde.is_symmetric():
                return verdict(False, f"E накрытия S^{n} X несимметричен")
            expected = (
                GeneratingFunctions.sym_prod_e(n, g).evaluate(1, 1)
                + (two_torsion(g) - 1) * (-1) ** n * comb(2 * g - 2, n)
            )
            if tilde.evaluate(1, 1) != expected:
                return verdict(False, f"значение накрытия в (1, 1) при n={n}")
        return verdict(True)

    @classmethod
    def check_series_convolution(cls, g: int) -> CheckResult:
        order = 2 * g - 2
        low = GeneratingFunctions.series_from_product(g, SeriesShape.SYMMETRIC, order)
        high = GeneratingFunctions.series_from_product(g, SeriesShape.SYMMETRIC, order + 2)
        direct = TruncatedSeries.binomial(U, g, order) * TruncatedSeries.binomial(V, g, order)
        roundtrip = low * TruncatedSeries.binomial(ONE, 1, order) * TruncatedSeries.binomial(Q, 1, order)
        return verdict(high.truncate(order) == low and roundtrip == direct)

    # --- strata ---

    @classmethod
    def check_dimensions(cls, g: int) -> CheckResult:
        bad = [
            report.stratum
            for report in (StrataCalculator.report(s, g) for s in StrataCalculator.strata_ids(g))
            if not report.dim_check
        ]
        return verdict(not bad, f"не совпала размерность: {', '.join(bad)}" if bad else '')

    @classmethod
    def check_strata_symmetry(cls, g: int) -> CheckResult:
        bad = [
            s.label for s in StrataCalculator.strata_ids(g)
            if not StrataCalculator.stratum_e(s, g).is_symmetric()
        ]
        return verdict(not bad, ', '.join(bad))

    @classmethod
    def check_finite_limits(cls, g: int) -> CheckResult:
        try:
            for s in StrataCalculator.strata_ids(g):
                StrataCalculator.stratum_e(s, g).limit_at_one()
        except HodgeError as e:
            return verdict(False, str(e))
        return verdict(True)

    @classmethod
    def check_e_ms_polynomial(cls, g: int) -> CheckResult:
        e_ms = StrataCalculator.e_ms(g)
        poly = e_ms.as_polynomial()
        if poly is None:
            return verdict(False, "E(M^s) не многочлен")
        return verdict(
            poly.has_integer_coefficients() and e_ms.uv_degree() == 6 * g - 6,
            "коэффициенты или степень E(M^s)",
        )

    @classmethod
    def check_stable_euler(cls, g: int) -> CheckResult:
        stable = StrataCalculator.e_stable_moduli(g).limit_at_one()
        total = StrataCalculator.e_ms(g).limit_at_one()
        return verdict(
            stable == -2 ** (2 * g - 2) and total == StringyCalculator.stable_euler(g),
            f"e(N^s) = {stable}, e(M^s) = {total}",
        )

    @classmethod
    def check_kirwan_identity(cls, g: int) -> CheckResult:
        steps = StrataCalculator.kirwan_type3_pipeline(g)
        first = (steps.start - steps.unstable + steps.correction).rat_eq(steps.partial)
        second = (steps.partial - steps.exceptional).rat_eq(StrataCalculator.type3_projective_quotient(g))
        return verdict(first and second)

    @classmethod
    def check_unstable_total(cls, g: int) -> CheckResult:
        closed, summed = StrataCalculator.e_unstable_total(g)
        if closed.rat_eq(summed):
            return CheckResult(Status.PASS)
        return CheckResult(Status.FAIL, delta=closed - summed)

    @classmethod
    def check_theorem_delta(cls, g: int) -> CheckResult:
        delta = StrataCalculator.e_ms_theorem_transcription(g) - StrataCalculator.e_ms(g)
        residual = delta - StrataCalculator.theorem_two_term_delta(g)
        cancels = residual.rat_eq(-StrataCalculator.e_type3(g))
        return documented(
            delta,
            StrataCalculator.theorem_type4_delta(g),
            "итоговая формула: строка типа IV с лишним множителем (q^{g-1}-1); "
            "пропуски -2^{2g} в строке типа I и строки типа III взаимно сокращаются; "
            f"остаток двучленной записи = -E(тип III): {'да' if cancels else 'нет'}",
        )

    @classmethod
    def check_theorem_type4_degree(cls, g: int) -> CheckResult:
        line = dict(StrataCalculator.theorem_lines(g))['type4']
        degree = line.uv_degree()
        if degree == 4 * g - 4:
            return CheckResult(Status.PASS)
        if degree == 5 * g - 5:
            return CheckResult(Status.WARN, detail=f"uv-степень строки типа IV {degree} вместо {4 * g - 4}")
        return verdict(False, f"uv-степень строки типа IV {degree}")

    @classmethod
    def check_theorem_insensitivity(cls, g: int) -> CheckResult:
        delta = StrataCalculator.e_ms_theorem_transcription(g) - StrataCalculator.e_ms(g)
        return verdict(delta.as_polynomial() is not None and delta.limit_at_one() == 0)

    # --- stringy ---

    @classmethod
    def check_grass_point_count(cls, g: int) -> CheckResult:
        grass = StringyCalculator.e_grass_isotropic(1, g)
        for q in (2, 3):
            if grass.point_count(q) != Fraction(q ** (2 * g) - 1, q - 1):
                return verdict(False, f"число точек при q={q}")
        return verdict(True)

    @classmethod
    def check_assembly(cls, g: int) -> CheckResult:
        assembled = StringyCalculator.batyrev_assemble(
            StringyCalculator.open_strata(g),
            DiscrepancyData.for_genus(g),
            FactoredRational(0),
        )
        correction = StringyCalculator.stringy_correction(g)
        if assembled.rat_eq(correction):
            return CheckResult(Status.PASS)
        return CheckResult(Status.FAIL, delta=assembled - correction)

    @classmethod
    def check_inclusion_exclusion(cls, g: int) -> CheckResult:
        bad = []
        for subset in CLOSED_STRATA:
            total = FactoredRational(0)
            for other in OPEN_STRATA:
                if subset.members <= other.members:
                    total = total + StringyCalculator.e_divisor_open(other, g)
            if not StringyCalculator.e_divisor_closed(subset, g).rat_eq(total):
                bad.append(subset.label)
        return verdict(not bad, ', '.join(bad))

    @classmethod
    def check_divisor_polynomials(cls, g: int) -> CheckResult:
        for subset in CLOSED_STRATA:
            poly = StringyCalculator.e_divisor_closed(subset, g).as_polynomial()
            if poly is None or not (poly.has_integer_coefficients() and poly.has_nonnegative_coefficients()):
                return verdict(False, f"замкнутый {subset.label}")
        for subset in CLOSED_STRATA:
            poly = StringyCalculator.e_divisor_open(subset, g).as_polynomial()
            if poly is None or not poly.has_integer_coefficients():
                return verdict(False, f"открытый {subset.label}")
        return verdict(True)

    @classmethod
    def check_divisor_symmetry(cls, g: int) -> CheckResult:
        values = [StringyCalculator.e_divisor_open(s, g) for s in OPEN_STRATA]
        values.append(StringyCalculator.e_d2_closed_reconstructed(g))
        return verdict(all(value.is_symmetric() for value in values))

    @classmethod
    def check_d2_closed_degree(cls, g: int) -> CheckResult:
        degree = StringyCalculator.e_d2_closed_reconstructed(g).diagonal_degree()
        if degree == 2 * (6 * g - 7):
            return CheckResult(Status.PASS)
        if degree == 12 * g - 15:
            return CheckResult(Status.WARN, detail=f"степень на диагонали {degree}, uv-степень полуцелая")
        return verdict(False, f"степень на диагонали {degree}")

    @classmethod
    def check_d2_isotypic(cls, g: int) -> CheckResult:
        iso_plus, iso_minus = StringyCalculator.isotropic_pieces(g)
        if not iso_minus.rat_eq(iso_plus * Q):
            return verdict(False, "E(I)^- != uv E(I)^+")
        delta = StringyCalculator.e_d2_open(g) - StringyCalculator.e_d2_open_isotypic(g)
        return documented(
            delta,
            iso_plus * ((ONE - q_power(g)) * two_torsion(g)),
            "напечатанная D_2^0 вычитает 2^{2g} q^g вместо 2^{2g}",
        )

    @classmethod
    def check_euler_correction(cls, g: int) -> CheckResult:
        value = StringyCalculator.stringy_correction(g).limit_at_one()
        formula = StringyCalculator.stringy_euler_formula(g)
        return verdict(value == formula, f"предел поправки {value}, формула {formula}")

    @classmethod
    def check_euler_total(cls, g: int) -> CheckResult:
        report = StringyCalculator.stringy_e(g)
        if report.euler == report.euler_formula:
            return CheckResult(Status.PASS)
        delta = report.euler - report.euler_formula
        if delta == StringyCalculator.stable_euler(g):
            return CheckResult(
                Status.WARN,
                delta=FactoredRational(delta),
                detail=f"предел E_st = {report.euler}: формула равна пределу поправки, без e(M^s) = {delta}",
            )
        return CheckResult(Status.FAIL, delta=FactoredRational(delta))

    @classmethod
    def check_non_polynomiality(cls, g: int) -> CheckResult:
        report = StringyCalculator.stringy_e(g)
        if not report.is_polynomial:
            return CheckResult(Status.PASS)
        if g == 3:
            return CheckResult(Status.WARN, detail="при g = 3 поправка и E_st - многочлены")
        return verdict(False, "E_st оказалась многочленом")

    @classmethod
    def check_stringy_shape(cls, g: int) -> CheckResult:
        e_st = StringyCalculator.stringy_e(g).e_st
        if not e_st.is_symmetric():
            return verdict(False, "E_st несимметрична")
        try:
            degree = e_st.uv_degree()
        except OddDiagonalDegree as e:
            return CheckResult(Status.WARN, detail=f"uv-степень E_st не целая: {e}")
        return verdict(degree == 6 * g - 6, f"uv-степень E_st {degree}")

    @classmethod
    def checks(cls) -> List[Check]:
        return [
            Check('polyring.ring_axioms', 'ring axioms of sparse polynomials', RING_ANCHOR,
                  cls.check_ring_axioms),
            Check('polyring.rat_eq_equivalence', 'rat_eq is an equivalence', RING_ANCHOR,
                  cls.check_rat_eq_equivalence),
            Check('polyring.as_polynomial', 'quotient and limit of polynomial values', RING_ANCHOR,
                  cls.check_as_polynomial),
            Check('polyring.diagonal_homomorphism', 'diagonal is multiplicative', RING_ANCHOR,
                  cls.check_diagonal_homomorphism),
            Check('powerseries.even_coeff_sum', 'even coefficient sum closed form',
                  'even part of the cotangent generating function', cls.check_even_coeff_sum),
            Check('powerseries.residue_identity', 'residue closed form vs finite sum',
                  'residue at x = 1 of the symmetric product series', cls.check_residue_identity),
            Check('powerseries.symmetric_products', 'symmetric products and their covers',
                  'Macdonald formula for S^n X and its 2^{2g} cover', cls.check_symmetric_products),
            Check('powerseries.series_convolution', 'truncated series arithmetic', RING_ANCHOR,
                  cls.check_series_convolution),
            Check('strata.dimension', 'uv-degree equals stratum dimension', STRATA_ANCHOR,
                  cls.check_dimensions),
            Check('strata.symmetry', 'Hodge symmetry of strata', STRATA_ANCHOR, cls.check_strata_symmetry),
            Check('strata.finite_limits', 'finite limits at u = v = 1', STRATA_ANCHOR, cls.check_finite_limits),
            Check('strata.e_ms_polynomial', 'E(M^s) is an integral polynomial', STRATA_ANCHOR,
                  cls.check_e_ms_polynomial),
            Check('strata.stable_euler', 'Euler numbers of N^s and M^s', STRATA_ANCHOR, cls.check_stable_euler),
            Check('strata.kirwan_identity', 'Kirwan pipeline for Type III',
                  'Kirwan partial desingularization of the Type III locus', cls.check_kirwan_identity),
            Check('strata.unstable_total', 'unstable locus closed form vs sum over d',
                  'unstable strata of the equivariant Type III count', cls.check_unstable_total),
            Check('strata.theorem_delta', 'printed E(M^s) vs stratum sum', THEOREM_ANCHOR,
                  cls.check_theorem_delta),
            Check('strata.theorem_type4_degree', 'degree of printed Type IV line', THEOREM_ANCHOR,
                  cls.check_theorem_type4_degree),
            Check('strata.theorem_insensitivity', 'printed delta is polynomial, zero at u = v = 1', THEOREM_ANCHOR,
                  cls.check_theorem_insensitivity),
            Check('stringy.grass_point_count', 'isotropic Grassmannian point count',
                  'isotropic Grassmannian of a symplectic space', cls.check_grass_point_count),
            Check('stringy.assembly', 'stratum-wise assembly vs closed correction', STRINGY_ANCHOR,
                  cls.check_assembly, 3),
            Check('stringy.inclusion_exclusion', 'closed divisor = sum of open strata', DIVISOR_ANCHOR,
                  cls.check_inclusion_exclusion, 3),
            Check('stringy.divisor_polynomials', 'divisor E-polynomials are integral', DIVISOR_ANCHOR,
                  cls.check_divisor_polynomials, 3),
            Check('stringy.divisor_symmetry', 'Hodge symmetry of divisor strata', DIVISOR_ANCHOR,
                  cls.check_divisor_symmetry, 3),
            Check('stringy.d2_closed_degree', 'degree of reconstructed closed D_2', DIVISOR_ANCHOR,
                  cls.check_d2_closed_degree, 3),
            Check('stringy.d2_isotypic', 'printed D_2^0 vs isotypic assembly', DIVISOR_ANCHOR,
                  cls.check_d2_isotypic, 3),
            Check('stringy.euler_correction', 'Euler formula equals limit of the correction', EULER_ANCHOR,
                  cls.check_euler_correction, 3),
            Check('stringy.euler_total', 'Euler formula vs limit of E_st', EULER_ANCHOR, cls.check_euler_total, 3),
            Check('stringy.non_polynomiality', 'E_st is not a polynomial', STRINGY_ANCHOR,
                  cls.check_non_polynomiality, 3),
            Check('stringy.shape', 'E_st is symmetric of degree 6g-6', STRINGY_ANCHOR, cls.check_stringy_shape, 3),
        ]

    @classmethod
    def run(cls, genera: Iterable[int], strict: bool = False) -> List[VerificationOutcome]:
        """
        Прогоняет все проверки для каждого рода

        Args:
            genera: роды для проверки
            strict: WARN превращается в FAIL

        Returns:
            Список результатов, отсортированный по роду и имени проверки
        """
        outcomes = []
        for g in genera:
            skipped_stringy = False
            for check in cls.checks():
                if g < check.min_genus:
                    if not skipped_stringy:
                        logger.warning(f"g={g}: stringy checks skipped, assembly requires g >= {check.min_genus}")
                        outcomes.append(VerificationOutcome(
                            check_name=cls.STRINGY_PREFIX + '*',
                            genus=g,
                            status=Status.SKIP,
                            subject='stringy assembly',
                            anchor=STRINGY_ANCHOR,
                            detail=f"требуется g >= {check.min_genus}",
                        ))
                        skipped_stringy = True
                    continue
                try:
                    result = check.run(g)
                except HodgeError as e:
                    logger.error(f"Check {check.name} raised for g={g}: {e}")
                    result = CheckResult(Status.FAIL, detail=str(e))
                status = result.status
                if status is Status.WARN:
                    if strict:
                        status = Status.FAIL
                    logger.warning(f"{check.name} g={g}: documented discrepancy: {result.detail}")
                elif status is Status.FAIL:
                    logger.error(f"{check.name} g={g} failed: {result.detail}")
                outcomes.append(VerificationOutcome(
                    check_name=check.name,
                    genus=g,
                    status=status,
                    subject=check.subject,
                    anchor=check.anchor,
                    delta=result.delta,
                    detail=result.detail,
                ))
        return sorted(outcomes, key=lambda o: (o.genus, o.check_name))
