"""
E-многочлены страт стабильного локуса M^s пространства пар Хиггса
ранга 2 с тривиальным детерминантом

Все формулы - точные рациональные функции от u, v (q = uv).
Каноническое E(M^s) - сумма по стратам; запись итоговой теоремы
хранится отдельно как сравнительная форма.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import List, NamedTuple, Optional, Tuple

from config.hodge_config import HODGE_CONFIG

from .exceptions import DegreeOutOfRange, GenusOutOfRange, HodgeError
from .polyring import ONE, Q, U, V, BivariatePolynomial, FactoredRational, q_power
from .powerseries import GeneratingFunctions

logger = logging.getLogger(__name__)

CACHE_SIZE = HODGE_CONFIG['cache_size']


def check_genus(g: int, minimum: int = 2):
    if not isinstance(g, int) or g < minimum:
        raise GenusOutOfRange(f"Требуется род g >= {minimum}, получено {g!r}")


def q_geometric(first: int, last: int) -> BivariatePolynomial:
    """q^first + ... + q^last (пусто, если last < first)"""
    total = BivariatePolynomial()
    for k in range(first, last + 1):
        total = total + q_power(k)
    return total


def one_minus_q(k: int) -> BivariatePolynomial:
    return ONE - q_power(k)


def jacobian_pair(e: int) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
    """((1-u)^e (1-v)^e, (1+u)^e (1+v)^e)"""
    return (ONE - U) ** e * (ONE - V) ** e, (ONE + U) ** e * (ONE + V) ** e


def two_torsion(g: int) -> int:
    return 2 ** (2 * g)


class StratumTag(str, Enum):
    STABLE = 'stable'
    TYPE1 = 'type1'
    TYPE2 = 'type2'
    TYPE3 = 'type3'
    TYPE4 = 'type4'
    UNSTABLE = 'unstable'
    UNSTABLE_TOTAL = 'unstable_total'


@dataclass(frozen=True)
class StratumId:
    tag: StratumTag
    d: Optional[int] = None

    def __post_init__(self):
        if (self.tag is StratumTag.UNSTABLE) != (self.d is not None):
            raise DegreeOutOfRange("Степень d задаётся только для нестабильной страты")

    @property
    def label(self) -> str:
        if self.tag is StratumTag.UNSTABLE:
            return f"unstable(d={self.d})"
        return self.tag.value

    def expected_dim(self, g: int) -> int:
        dims = {
            StratumTag.STABLE: 6 * g - 6,
            StratumTag.TYPE1: 4 * g - 3,
            StratumTag.TYPE2: 5 * g - 5,
            StratumTag.TYPE3: 3 * g - 3,
            StratumTag.TYPE4: 4 * g - 4,
            StratumTag.UNSTABLE_TOTAL: 5 * g - 7,
        }
        if self.tag is StratumTag.UNSTABLE:
            return 5 * g - 5 - 2 * self.d
        return dims[self.tag]


@dataclass(frozen=True)
class StratumReport:
    genus: int
    id: StratumId
    e_poly: FactoredRational
    expected_dim: int
    dim_check: bool
    symmetric: bool

    @property
    def stratum(self) -> str:
        return self.id.label


class IsotypicPieces(NamedTuple):
    jacobian_plus: BivariatePolynomial
    jacobian_minus: BivariatePolynomial
    punctured_plus: BivariatePolynomial
    punctured_minus: BivariatePolynomial
    projective_plus: FactoredRational
    projective_minus: FactoredRational


class KirwanPipeline(NamedTuple):
    start: FactoredRational
    unstable: FactoredRational
    correction: FactoredRational
    partial: FactoredRational
    exceptional: FactoredRational


class StrataCalculator:
    """
    E-многочлены страт M^s и суммарные формулы

    Все методы - чистые функции рода; результаты кешируются.
    """

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_stable_moduli(cls, g: int) -> FactoredRational:
        """E(N^s) - стабильные расслоения"""
        check_genus(g)
        minus, plus = jacobian_pair(g)
        numerator = (
            (ONE - U ** 2 * V) ** g * (ONE - U * V ** 2) ** g
            - q_power(g + 1) * minus
        )
        main = FactoredRational.fraction(numerator, one_minus_q(1), one_minus_q(2))
        correction = (
            FactoredRational.fraction(minus, one_minus_q(1))
            + FactoredRational.fraction(plus, ONE + Q)
        ) * Fraction(1, 2)
        return main - correction

    @classmethod
    def e_stable_locus(cls, g: int) -> FactoredRational:
        """Кокасательное расслоение над N^s"""
        return cls.e_stable_moduli(g) * q_power(3 * g - 3)

    @classmethod
    def isotypic_pieces(cls, g: int) -> IsotypicPieces:
        """
        Инвариантные и антиинвариантные части E(J), E(J^0) и E(P^{g-2} x P^{g-2})

        При g = 3 проективные части равны 1 + q + q^2 и q.
        """
        check_genus(g)
        minus, plus = jacobian_pair(g)
        jacobian_plus = (minus + plus) * Fraction(1, 2)
        jacobian_minus = (minus - plus) * Fraction(1, 2)
        q_minus_one = Q - ONE
        projective_plus = FactoredRational(
            (q_power(g) - ONE) * (q_power(g - 1) - ONE),
            [q_minus_one, q_power(2) - ONE],
        )
        projective_minus = FactoredRational(
            Q * (q_power(g - 1) - ONE) * (q_power(g - 2) - ONE),
            [q_minus_one, q_power(2) - ONE],
        )
        return IsotypicPieces(
            jacobian_plus=jacobian_plus,
            jacobian_minus=jacobian_minus,
            punctured_plus=jacobian_plus - two_torsion(g),
            punctured_minus=jacobian_minus,
            projective_plus=projective_plus,
            projective_minus=projective_minus,
        )

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_type1(cls, g: int) -> FactoredRational:
        pieces = cls.isotypic_pieces(g)
        invariant = (
            pieces.projective_plus * pieces.punctured_plus
            + pieces.projective_minus * pieces.punctured_minus
        )
        return invariant * (q_power(g) * (Q - ONE))

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_type2(cls, g: int) -> FactoredRational:
        check_genus(g)
        minus, _ = jacobian_pair(g)
        prefactor = q_power(3 * g - 3) - q_power(2 * g - 1)
        return FactoredRational(
            prefactor * (q_power(g - 1) - ONE) * (minus - two_torsion(g)),
            [Q - ONE],
        )

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def kirwan_type3_pipeline(cls, g: int) -> KirwanPipeline:
        """
        Шаги частичной десингуляризации Кирвана для страты типа III

        Должно выполняться start - unstable + correction = partial.
        """
        check_genus(g)
        start = FactoredRational.fraction(one_minus_q(3 * g), one_minus_q(2), one_minus_q(1))
        unstable = FactoredRational.fraction(q_power(2 * g - 1) * q_geometric(0, g - 1), one_minus_q(1))
        correction = (
            FactoredRational.fraction(q_geometric(0, g - 1) * q_geometric(1, 2 * g - 3), one_minus_q(2))
            - FactoredRational.fraction(
                q_power(g - 1) * q_geometric(0, g - 2) * q_geometric(0, g - 1), one_minus_q(1)
            )
        )
        partial = FactoredRational(
            one_minus_q(g - 1) * one_minus_q(g) * one_minus_q(g + 1),
            [(one_minus_q(1), 2), one_minus_q(2)],
        )
        geometric = FactoredRational.fraction(one_minus_q(g - 1), one_minus_q(1))
        exceptional = FactoredRational.fraction(one_minus_q(g), one_minus_q(1)) * (
            geometric ** 2 + FactoredRational.fraction(one_minus_q(2 * g - 2), one_minus_q(2))
        ) * Fraction(1, 2)
        return KirwanPipeline(start, unstable, correction, partial, exceptional)

    @classmethod
    def type3_projective_quotient(cls, g: int) -> FactoredRational:
        """E стабильной части P(C^g x sl(2)) по SL(2)"""
        check_genus(g)
        return FactoredRational.fraction(
            q_power(g) * one_minus_q(g - 1) * one_minus_q(g),
            one_minus_q(1),
            one_minus_q(2),
        )

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_type3(cls, g: int) -> FactoredRational:
        check_genus(g)
        return FactoredRational(
            q_power(g, two_torsion(g)) * (q_power(g - 1) - ONE) * (q_power(g) - ONE),
            [q_power(2) - ONE],
        )

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_type4(cls, g: int) -> FactoredRational:
        check_genus(g)
        return FactoredRational(
            q_power(2 * g - 2, two_torsion(g)) * (q_power(g - 1) - ONE) * (q_power(g) - ONE),
            [Q - ONE],
        )

    @classmethod
    def e_unstable_stratum(cls, g: int, d: int) -> FactoredRational:
        check_genus(g)
        if not 1 <= d <= g - 1:
            raise DegreeOutOfRange(f"Степень d должна лежать в [1, {g - 1}], получено {d}")
        n = 2 * g - 2 - 2 * d
        return FactoredRational(GeneratingFunctions.tilde_sym_prod_e(n, g) * q_power(3 * g - 3))

    @classmethod
    def e_unstable_closed(cls, g: int) -> FactoredRational:
        """Замкнутая форма суммы нестабильных страт через вычеты"""
        check_genus(g)
        minus, plus = jacobian_pair(g - 1)
        minus_low, _ = jacobian_pair(g - 2)
        top = q_power(3 * g - 3)
        even_part = FactoredRational(
            top * (minus + plus - q_power(g - 1, 2)) * 2 ** (2 * g - 1)
        )
        bracket = (
            FactoredRational.fraction(-plus, (ONE + Q) * 4)
            + FactoredRational(q_power(g - 1) * minus, [(Q - ONE, 2), Q + ONE])
            + FactoredRational.fraction((U + V - Q * 2) * minus_low * Fraction(g - 1, 2), one_minus_q(1))
            + FactoredRational.fraction(minus * Fraction(4 * g - 7, 4), one_minus_q(1))
            - FactoredRational(Q * minus * Fraction(1, 2), [(Q - ONE, 2)])
        )
        return even_part + bracket * (top * (ONE - U) * (ONE - V))

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_unstable_total(cls, g: int) -> Tuple[FactoredRational, FactoredRational]:
        """
        Returns:
            (замкнутая форма, сумма по d = 1..g-1); обе должны совпадать
        """
        summed = FactoredRational(BivariatePolynomial())
        for d in range(1, g):
            summed = summed + cls.e_unstable_stratum(g, d)
        return cls.e_unstable_closed(g), summed

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_ms(cls, g: int) -> FactoredRational:
        """Каноническое E(M^s): сумма всех страт"""
        check_genus(g)
        logger.info(f"Assembling E(M^s) for g={g}")
        _, unstable = cls.e_unstable_total(g)
        return (
            cls.e_stable_locus(g)
            + cls.e_type1(g)
            + cls.e_type2(g)
            + cls.e_type3(g)
            + cls.e_type4(g)
            + unstable
        )

    @classmethod
    def theorem_lines(cls, g: int) -> List[Tuple[str, FactoredRational]]:
        """Строки итоговой формулы E(M^s) в том виде, как она напечатана"""
        check_genus(g)
        minus, plus = jacobian_pair(g)
        pw = two_torsion(g)
        return [
            ('stable', cls.e_stable_moduli(g) * q_power(3 * g - 3)),
            ('type1_invariant', FactoredRational(
                q_power(g) * (minus + plus) * Fraction(1, 2) * (q_power(g) - ONE) * (q_power(g - 1) - ONE),
                [q_power(2) - ONE],
            )),
            ('type1_anti_invariant', FactoredRational(
                q_power(g + 1) * (minus - plus) * Fraction(1, 2) * (q_power(g - 1) - ONE) * (q_power(g - 2) - ONE),
                [q_power(2) - ONE],
            )),
            ('type2', FactoredRational(
                q_power(2 * g - 1) * (q_power(g - 2) - ONE) * (q_power(g - 1) - ONE) * (minus - pw),
                [Q - ONE],
            )),
            ('type4', FactoredRational(
                q_power(2 * g - 2, pw) * (q_power(g - 1) - ONE) ** 2 * (q_power(g) - ONE),
                [Q - ONE],
            )),
            ('unstable', cls.e_unstable_closed(g)),
        ]

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_ms_theorem_transcription(cls, g: int) -> FactoredRational:
        total = FactoredRational(BivariatePolynomial())
        for _, line in cls.theorem_lines(g):
            total = total + line
        return total

    @classmethod
    def theorem_type4_delta(cls, g: int) -> FactoredRational:
        """Расхождение строки типа IV: 2^{2g} q^{2g-2} (q^g-1)(q^{g-1}-1)(q^{g-1}-2)/(q-1)"""
        check_genus(g)
        return FactoredRational(
            q_power(2 * g - 2, two_torsion(g))
            * (q_power(g) - ONE) * (q_power(g - 1) - ONE) * (q_power(g - 1) - ONE * 2),
            [Q - ONE],
        )

    @classmethod
    def theorem_two_term_delta(cls, g: int) -> FactoredRational:
        """
        Двучленная запись расхождения: пропуск -2^{2g} в строке типа I плюс строка типа IV

        Первое слагаемое совпадает с E(тип III), поэтому фактическое расхождение
        отличается от этой записи ровно на -E(тип III).
        """
        check_genus(g)
        type1_omission = FactoredRational(
            q_power(g, two_torsion(g)) * (q_power(g) - ONE) * (q_power(g - 1) - ONE),
            [q_power(2) - ONE],
        )
        return type1_omission + cls.theorem_type4_delta(g)

    @classmethod
    def stratum_e(cls, stratum: StratumId, g: int) -> FactoredRational:
        builders = {
            StratumTag.STABLE: cls.e_stable_locus,
            StratumTag.TYPE1: cls.e_type1,
            StratumTag.TYPE2: cls.e_type2,
            StratumTag.TYPE3: cls.e_type3,
            StratumTag.TYPE4: cls.e_type4,
        }
        if stratum.tag is StratumTag.UNSTABLE:
            return cls.e_unstable_stratum(g, stratum.d)
        if stratum.tag is StratumTag.UNSTABLE_TOTAL:
            return cls.e_unstable_total(g)[1]
        return builders[stratum.tag](g)

    @classmethod
    def strata_ids(cls, g: int, selection: str = 'all') -> List[StratumId]:
        """Список страт для выбора CLI: stable|type1|...|unstable|all"""
        check_genus(g)
        unstable = [StratumId(StratumTag.UNSTABLE, d) for d in range(1, g)]
        unstable.append(StratumId(StratumTag.UNSTABLE_TOTAL))
        if selection == 'all':
            fixed = [StratumId(tag) for tag in (
                StratumTag.STABLE, StratumTag.TYPE1, StratumTag.TYPE2, StratumTag.TYPE3, StratumTag.TYPE4,
            )]
            return fixed + unstable
        if selection == StratumTag.UNSTABLE.value:
            return unstable
        return [StratumId(StratumTag(selection))]

    @classmethod
    def report(cls, stratum: StratumId, g: int) -> StratumReport:
        e_poly = cls.stratum_e(stratum, g)
        expected = stratum.expected_dim(g)
        if e_poly.is_zero:
            # пустая страта: проверять нечего
            dim_check = True
        else:
            try:
                dim_check = e_poly.uv_degree() == expected
            except HodgeError as e:
                logger.warning(f"Degree check failed for {stratum.label}, g={g}: {e}")
                dim_check = False
        return StratumReport(
            genus=g,
            id=stratum,
            e_poly=e_poly,
            expected_dim=expected,
            dim_check=dim_check,
            symmetric=e_poly.is_symmetric(),
        )
