"""
Стрингова E-функция пространства модулей M

Дивизоры D_1, D_2, D_3 десингуляризации Кирвана, открытые страты D_J^0,
общая сборка по формуле Батырева и итоговый отчёт для рода g >= 3.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from config.hodge_config import HODGE_CONFIG

from .exceptions import DegreeOutOfRange, GenusOutOfRange, LogTerminalityViolated, UnsupportedSubset
from .polyring import ONE, Q, BivariatePolynomial, FactoredRational, q_power
from .strata import StrataCalculator, check_genus, jacobian_pair, one_minus_q, two_torsion

logger = logging.getLogger(__name__)

CACHE_SIZE = HODGE_CONFIG['cache_size']
STRINGY_GENUS_MIN = HODGE_CONFIG['stringy_genus_min']


@dataclass(frozen=True)
class DivisorSubset:
    """Подмножество J в {1, 2, 3}; D_J - пересечение дивизоров D_j, j из J"""
    members: FrozenSet[int]

    def __post_init__(self):
        if not self.members <= {1, 2, 3}:
            raise UnsupportedSubset(f"Допустимы только номера 1, 2, 3, получено {sorted(self.members)}")

    @classmethod
    def of(cls, *members: int) -> 'DivisorSubset':
        return cls(frozenset(members))

    @classmethod
    def parse(cls, text: str) -> 'DivisorSubset':
        """'12', '1,2' или 'D_12' -> {1, 2}"""
        digits = text.upper().replace('D', '').replace('_', '').replace(',', '').strip()
        if not digits or not digits.isdigit():
            raise UnsupportedSubset(f"Не удалось разобрать подмножество дивизоров: {text!r}")
        return cls(frozenset(int(ch) for ch in digits))

    @property
    def sorted_members(self) -> List[int]:
        return sorted(self.members)

    @property
    def label(self) -> str:
        return 'D_' + ''.join(str(j) for j in self.sorted_members)

    def __str__(self) -> str:
        return self.label


# Порядок вывода: одиночные дивизоры, пары, тройное пересечение
OPEN_STRATA: Tuple[DivisorSubset, ...] = tuple(DivisorSubset.of(*j) for j in (
    (1,), (2,), (3,), (1, 2), (2, 3), (1, 3), (1, 2, 3),
))
CLOSED_STRATA: Tuple[DivisorSubset, ...] = tuple(j for j in OPEN_STRATA if j.members != {2})


@dataclass(frozen=True)
class DiscrepancyData:
    a1: int
    a2: int
    a3: int

    @classmethod
    def for_genus(cls, g: int) -> 'DiscrepancyData':
        check_genus(g, STRINGY_GENUS_MIN)
        return cls(a1=6 * g - 7, a2=2 * g - 4, a3=4 * g - 6)

    def exponent(self, j: int) -> int:
        return (self.a1, self.a2, self.a3)[j - 1]

    def exponents(self, subset: DivisorSubset) -> Tuple[int, ...]:
        return tuple(self.exponent(j) for j in subset.sorted_members)

    @property
    def is_crepant(self) -> bool:
        return self.a1 == self.a2 == self.a3 == 0


@dataclass(frozen=True)
class BreakdownEntry:
    subset: DivisorSubset
    e_open: FactoredRational
    weight_exponents: Tuple[int, ...]
    contribution: FactoredRational

    @property
    def J(self) -> List[int]:
        return self.subset.sorted_members


@dataclass(frozen=True)
class StringyReport:
    genus: int
    e_st: FactoredRational
    euler: Fraction
    euler_formula: Fraction
    euler_correction: Fraction
    is_polynomial: bool
    is_crepant: bool = False
    breakdown: Tuple[BreakdownEntry, ...] = ()
    e_ms_theorem_delta: Optional[FactoredRational] = None

    @property
    def euler_is_integer(self) -> bool:
        return self.euler.denominator == 1

    @property
    def euler_matches_formula(self) -> bool:
        return self.euler == self.euler_formula


def discrepancy_weight(a: int) -> FactoredRational:
    """(uv - 1) / ((uv)^{a+1} - 1)"""
    if a <= -1:
        raise LogTerminalityViolated(f"Дискрепанс {a} <= -1, особенность не лог-терминальна")
    return FactoredRational(Q - ONE, [q_power(a + 1) - ONE])


def q_ratio(k: int) -> FactoredRational:
    """(1 - q^k) / (1 - q) = 1 + q + ... + q^{k-1}"""
    return FactoredRational.fraction(one_minus_q(k), one_minus_q(1))


class StringyCalculator:
    """Дивизоры десингуляризации и сборка стринговой E-функции"""

    @classmethod
    def e_grass_isotropic(cls, k: int, g: int) -> FactoredRational:
        """E изотропного грассманиана Gr^w(k, 2g)"""
        if not 1 <= k <= g:
            raise DegreeOutOfRange(f"Требуется 1 <= k <= g, получено k={k}, g={g}")
        result = FactoredRational(ONE)
        for i in range(1, k + 1):
            result = result * FactoredRational.fraction(one_minus_q(2 * g - 2 * k + 2 * i), one_minus_q(i))
        return result

    @classmethod
    def _subset(cls, subset) -> DivisorSubset:
        if isinstance(subset, DivisorSubset):
            return subset
        return DivisorSubset(frozenset(subset))

    @classmethod
    def e_divisor_closed(cls, subset, g: int) -> FactoredRational:
        check_genus(g, STRINGY_GENUS_MIN)
        subset = cls._subset(subset)
        pw = two_torsion(g)
        grass3 = cls.e_grass_isotropic(3, g)
        grass2 = cls.e_grass_isotropic(2, g)
        members = subset.members
        if members == {1}:
            return (q_ratio(6) - q_ratio(3) + q_ratio(3) ** 2) * grass3 * pw
        if members == {3}:
            return q_ratio(2 * g - 3) * q_ratio(3) * grass2 * pw
        if members == {1, 2}:
            return q_ratio(3) ** 2 * grass3 * pw
        if members == {2, 3}:
            return q_ratio(2 * g - 3) * q_ratio(2) * grass2 * pw
        if members == {1, 3}:
            return q_ratio(3) * q_ratio(2 * g - 4) * grass2 * pw
        if members == {1, 2, 3}:
            return q_ratio(2) * q_ratio(2 * g - 4) * grass2 * pw
        raise UnsupportedSubset(f"Замкнутая формула для {subset.label} не задана")

    @classmethod
    def e_divisor_open(cls, subset, g: int) -> FactoredRational:
        check_genus(g, STRINGY_GENUS_MIN)
        subset = cls._subset(subset)
        pw = two_torsion(g)
        grass3 = cls.e_grass_isotropic(3, g)
        grass2 = cls.e_grass_isotropic(2, g)
        members = subset.members
        if members == {1}:
            return grass3 * (q_power(5) - q_power(2)) * pw
        if members == {3}:
            return grass2 * q_power(2 * g - 2, pw)
        if members in ({1, 2}, {1, 3}):
            return grass3 * (q_power(2, pw) * (ONE + Q + q_power(2)))
        if members == {2, 3}:
            return grass2 * (q_power(2 * g - 4, pw) * (ONE + Q))
        if members == {1, 2, 3}:
            return grass3 * ((ONE + Q) * (ONE + Q + q_power(2)) * pw)
        if members == {2}:
            return cls.e_d2_open(g)
        raise UnsupportedSubset(f"Открытая формула для {subset.label} не задана")

    @classmethod
    def isotropic_pieces(cls, g: int) -> Tuple[FactoredRational, FactoredRational]:
        """Инвариантная и антиинвариантная части E(I_{2g-3}); вторая равна uv * первая"""
        check_genus(g, STRINGY_GENUS_MIN)
        base = (one_minus_q(2 * g - 2) * one_minus_q(2 * g - 3), [one_minus_q(1), one_minus_q(2)])
        plus = FactoredRational(*base)
        minus = FactoredRational(Q * base[0], base[1])
        return plus, minus

    @classmethod
    def cotangent_pieces(cls, g: int) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
        """Инвариантная и антиинвариантная части E(T*J)"""
        check_genus(g, STRINGY_GENUS_MIN)
        minus, plus = jacobian_pair(g)
        return (
            q_power(g) * (minus + plus) * Fraction(1, 2),
            q_power(g) * (minus - plus) * Fraction(1, 2),
        )

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def e_d2_open(cls, g: int) -> FactoredRational:
        """Открытая часть D_2 в напечатанной форме"""
        check_genus(g, STRINGY_GENUS_MIN)
        minus, plus = jacobian_pair(g)
        iso_plus, _ = cls.isotropic_pieces(g)
        bracket = (
            (ONE + Q) * minus * Fraction(1, 2)
            + (ONE - Q) * plus * Fraction(1, 2)
            - two_torsion(g)
        )
        return iso_plus * (q_power(g) * bracket)

    @classmethod
    def e_d2_open_isotypic(cls, g: int) -> FactoredRational:
        """D_2^0, собранная из изотипических частей I_{2g-3} и T*J (с вычитанием 2^{2g} неподвижных точек)"""
        iso_plus, iso_minus = cls.isotropic_pieces(g)
        cot_plus, cot_minus = cls.cotangent_pieces(g)
        return iso_plus * (cot_plus - two_torsion(g)) + iso_minus * cot_minus

    @classmethod
    def e_d2_closed_reconstructed(cls, g: int) -> FactoredRational:
        """Замкнутый D_2 как сумма открытых страт, содержащих 2"""
        return (
            cls.e_d2_open(g)
            + cls.e_divisor_open({1, 2}, g)
            + cls.e_divisor_open({2, 3}, g)
            + cls.e_divisor_open({1, 2, 3}, g)
        )

    @classmethod
    def batyrev_assemble(
        cls,
        e_open_strata: Sequence[Tuple[DivisorSubset, FactoredRational]],
        disc: DiscrepancyData,
        e_smooth_part: FactoredRational,
    ) -> FactoredRational:
        """
        E_st = E(гладкая часть) + сумма E(D_J^0) * prod_{j in J} (uv-1)/((uv)^{a_j+1}-1)
        """
        for a in (disc.a1, disc.a2, disc.a3):
            if a <= -1:
                raise LogTerminalityViolated(f"Дискрепанс {a} <= -1, особенность не лог-терминальна")
        total = FactoredRational.coerce(e_smooth_part)
        for subset, e_open in e_open_strata:
            total = total + cls.weighted(subset, e_open, disc)
        return total

    @classmethod
    def weighted(cls, subset: DivisorSubset, e_open: FactoredRational, disc: DiscrepancyData) -> FactoredRational:
        contribution = e_open
        for a in disc.exponents(subset):
            contribution = contribution * discrepancy_weight(a)
        return contribution

    @classmethod
    def open_strata(cls, g: int) -> List[Tuple[DivisorSubset, FactoredRational]]:
        return [(subset, cls.e_divisor_open(subset, g)) for subset in OPEN_STRATA]

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def stringy_correction(cls, g: int) -> FactoredRational:
        """E_st(M) - E(M^s) в замкнутой форме"""
        check_genus(g, STRINGY_GENUS_MIN)
        minus, plus = jacobian_pair(g)
        pw = two_torsion(g)
        first = FactoredRational.fraction(
            q_power(g) * one_minus_q(2 * g - 2)
            * ((ONE + Q) * minus * Fraction(1, 2) + (ONE - Q) * plus * Fraction(1, 2) - pw),
            one_minus_q(2),
        )
        bracket = (
            FactoredRational.fraction(one_minus_q(8 * g - 10), one_minus_q(2 * g - 3), one_minus_q(6 * g - 6))
            + FactoredRational.fraction(
                q_power(2) * one_minus_q(2 * g - 4) * one_minus_q(6 * g - 8),
                one_minus_q(2), one_minus_q(2 * g - 3), one_minus_q(6 * g - 6),
            )
            + FactoredRational.fraction(q_power(2 * g - 2), one_minus_q(2))
        )
        second = FactoredRational.fraction(
            one_minus_q(2 * g - 2) * one_minus_q(2 * g) * pw, one_minus_q(4 * g - 5)
        ) * bracket
        return first + second

    @classmethod
    def stringy_euler_formula(cls, g: int) -> Fraction:
        """2^{2g} (3g - 3) / (2g - 3)"""
        check_genus(g, STRINGY_GENUS_MIN)
        return Fraction(two_torsion(g) * (3 * g - 3), 2 * g - 3)

    @classmethod
    def stable_euler(cls, g: int) -> Fraction:
        """e(M^s) = 2^{2g}(2^{2g-3} - 1) - 2^{2g-2}"""
        check_genus(g)
        return Fraction(two_torsion(g) * (2 ** (2 * g - 3) - 1) - 2 ** (2 * g - 2))

    @classmethod
    @lru_cache(maxsize=CACHE_SIZE)
    def stringy_e(cls, g: int) -> StringyReport:
        if not isinstance(g, int) or g < STRINGY_GENUS_MIN:
            raise GenusOutOfRange(
                f"Стрингова E-функция собирается только для g >= {STRINGY_GENUS_MIN}, получено {g!r}"
            )
        logger.info(f"Assembling stringy E-function for g={g}")
        disc = DiscrepancyData.for_genus(g)
        breakdown = []
        for subset, e_open in cls.open_strata(g):
            breakdown.append(BreakdownEntry(
                subset=subset,
                e_open=e_open,
                weight_exponents=disc.exponents(subset),
                contribution=cls.weighted(subset, e_open, disc),
            ))
        correction = cls.stringy_correction(g)
        e_ms = StrataCalculator.e_ms(g)
        e_st = e_ms + correction

        euler = e_st.limit_at_one()
        formula = cls.stringy_euler_formula(g)
        is_polynomial = e_st.as_polynomial() is not None
        if euler != formula:
            logger.warning(f"g={g}: limit of E_st is {euler}, closed Euler formula gives {formula}")
        logger.info(f"g={g}: euler={euler}, is_polynomial={is_polynomial}")
        return StringyReport(
            genus=g,
            e_st=e_st,
            euler=euler,
            euler_formula=formula,
            euler_correction=correction.limit_at_one(),
            is_polynomial=is_polynomial,
            is_crepant=disc.is_crepant,
            breakdown=tuple(breakdown),
            e_ms_theorem_delta=StrataCalculator.e_ms_theorem_transcription(g) - e_ms,
        )

    @classmethod
    def divisor_table(cls, g: int) -> List[Tuple[DivisorSubset, str, FactoredRational]]:
        """Все замкнутые и открытые E(D_J) для вывода командой divisors"""
        rows = []
        for subset in OPEN_STRATA:
            if subset in CLOSED_STRATA:
                rows.append((subset, 'closed', cls.e_divisor_closed(subset, g)))
            else:
                rows.append((subset, 'closed_reconstructed', cls.e_d2_closed_reconstructed(g)))
            rows.append((subset, 'open', cls.e_divisor_open(subset, g)))
        rows.append((DivisorSubset.of(2), 'open_isotypic', cls.e_d2_open_isotypic(g)))
        return rows

    @classmethod
    def euler_rows(cls, genera: Iterable[int]) -> List[dict]:
        rows = []
        for g in genera:
            report = cls.stringy_e(g)
            rows.append({
                'genus': g,
                'euler_exact': report.euler,
                'euler_formula': report.euler_formula,
                'match': report.euler_matches_formula,
            })
        return rows
