"""
Обрезанные степенные ряды по вспомогательной переменной x
с коэффициентами - многочленами от u, v

Здесь живут производящие функции симметрических степеней кривой,
извлечение коэффициентов и обе стороны вычетных тождеств для
нестабильных страт.
"""

import logging
from enum import Enum
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple, Union

from .exceptions import DegreeOutOfRange, TruncationExceeded, UnknownShape, ZeroInput
from .polyring import ONE, Q, U, V, ZERO, BivariatePolynomial, FactoredRational, q_power

logger = logging.getLogger(__name__)


class SeriesShape(str, Enum):
    """Формы производящих функций"""
    SYMMETRIC = 'symmetric'   # (1-ux)^g (1-vx)^g / ((1-x)(1-uvx))
    REDUCED = 'reduced'       # то же с показателем g-1
    BARE = 'bare'             # (1-ux)^(g-1) (1-vx)^(g-1)
    SHIFTED = 'shifted'       # x (1-ux)^(g-1) (1-vx)^(g-1) / ((1-x)(1-uvx))


class TruncatedSeries:
    """Ряд c_0 + c_1 x + ... + c_N x^N, обрезанный на порядке N"""

    __slots__ = ('coefficients',)

    def __init__(self, coefficients: Sequence[BivariatePolynomial]):
        if not coefficients:
            raise ValueError("Ряд должен содержать хотя бы свободный член")
        self.coefficients: Tuple[BivariatePolynomial, ...] = tuple(
            BivariatePolynomial.coerce(c) for c in coefficients
        )

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def one(cls, order: int) -> 'TruncatedSeries':
        return cls([ONE] + [ZERO] * order)

    @classmethod
    def binomial(cls, root: BivariatePolynomial, power: int, order: int) -> 'TruncatedSeries':
        """(1 - root*x)^power для power >= 0"""
        if power < 0:
            raise ValueError(f"Отрицательный показатель {power}")
        return cls([
            (-root) ** k * comb(power, k) if k <= power else ZERO
            for k in range(order + 1)
        ])

    @classmethod
    def geometric(cls, ratio: BivariatePolynomial, order: int) -> 'TruncatedSeries':
        """1 / (1 - ratio*x)"""
        return cls([ratio ** k for k in range(order + 1)])

    def coefficient(self, n: int) -> BivariatePolynomial:
        if n < 0:
            raise DegreeOutOfRange(f"Отрицательный индекс коэффициента {n}")
        if n > self.order:
            raise TruncationExceeded(f"Коэффициент x^{n} выше порядка обрезки {self.order}")
        return self.coefficients[n]

    def truncate(self, order: int) -> 'TruncatedSeries':
        return TruncatedSeries(self.coefficients[:order + 1])

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = min(self.order, other.order)
        return TruncatedSeries([self.coefficients[k] + other.coefficients[k] for k in range(order + 1)])

    def __sub__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = min(self.order, other.order)
        return TruncatedSeries([self.coefficients[k] - other.coefficients[k] for k in range(order + 1)])

    def __mul__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        order = min(self.order, other.order)
        out: List[BivariatePolynomial] = []
        for n in range(order + 1):
            total = ZERO
            for k in range(n + 1):
                left, right = self.coefficients[k], other.coefficients[n - k]
                if left and right:
                    total = total + left * right
            out.append(total)
        return TruncatedSeries(out)

    def shift(self, k: int = 1) -> 'TruncatedSeries':
        """Умножение на x^k с сохранением порядка"""
        return TruncatedSeries(([ZERO] * k + list(self.coefficients))[:self.order + 1])

    def inverse(self) -> 'TruncatedSeries':
        lead = self.coefficients[0]
        if lead.is_zero or not lead.is_constant:
            raise ZeroInput(f"Обращение требует ненулевой константы в свободном члене, получено {lead}")
        inv_lead = 1 / lead.constant_term
        out = [ONE * inv_lead]
        for n in range(1, self.order + 1):
            total = ZERO
            for k in range(1, n + 1):
                total = total + self.coefficients[k] * out[n - k]
            out.append(-total * inv_lead)
        return TruncatedSeries(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    __hash__ = None

    def __repr__(self) -> str:
        return f"TruncatedSeries(order={self.order}, {[str(c) for c in self.coefficients]})"


def _power_pair(g: int) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
    # (1-u)^e (1-v)^e и (1+u)^e (1+v)^e
    return (ONE - U) ** g * (ONE - V) ** g, (ONE + U) ** g * (ONE + V) ** g


class GeneratingFunctions:
    """
    Производящие функции E-многочленов симметрических степеней кривой рода g
    """

    SHAPES = {shape.value: shape for shape in SeriesShape}

    @classmethod
    def resolve_shape(cls, shape: Union[str, SeriesShape]) -> SeriesShape:
        if isinstance(shape, SeriesShape):
            return shape
        try:
            return cls.SHAPES[shape]
        except (KeyError, TypeError):
            raise UnknownShape(f"Неизвестная форма ряда: {shape!r}. Допустимо: {', '.join(cls.SHAPES)}")

    @classmethod
    def series_from_product(cls, g: int, shape: Union[str, SeriesShape], order: int) -> TruncatedSeries:
        """
        Раскладывает выбранную производящую функцию до x^order

        Args:
            g: род кривой
            shape: одна из форм SeriesShape (или её строковое имя)
            order: порядок обрезки N >= 0
        """
        shape = cls.resolve_shape(shape)
        if order < 0:
            raise TruncationExceeded(f"Порядок обрезки должен быть неотрицательным, получено {order}")
        if g < 1:
            raise DegreeOutOfRange(f"Род должен быть положительным, получено {g}")

        exponent = g if shape is SeriesShape.SYMMETRIC else g - 1
        product = (
            TruncatedSeries.binomial(U, exponent, order)
            * TruncatedSeries.binomial(V, exponent, order)
        )
        if shape is SeriesShape.BARE:
            return product
        series = product * TruncatedSeries.geometric(ONE, order) * TruncatedSeries.geometric(Q, order)
        if shape is SeriesShape.SHIFTED:
            series = series.shift(1)
        return series

    @classmethod
    def sym_prod_e(cls, n: int, g: int) -> BivariatePolynomial:
        """E(S^n X) - коэффициент при x^n симметричной формы"""
        if n < 0:
            raise DegreeOutOfRange(f"Степень симметрического произведения отрицательна: {n}")
        return cls.series_from_product(g, SeriesShape.SYMMETRIC, n).coefficient(n)

    @classmethod
    def tilde_sym_prod_e(cls, n: int, g: int) -> BivariatePolynomial:
        """E 2^{2g}-листного накрытия S^n X"""
        if n < 0:
            raise DegreeOutOfRange(f"Степень симметрического произведения отрицательна: {n}")
        bare = cls.series_from_product(g, SeriesShape.BARE, n).coefficient(n)
        return cls.sym_prod_e(n, g) + bare * (2 ** (2 * g) - 1)

    @classmethod
    def even_coeff_sum(cls, g: int) -> Tuple[BivariatePolynomial, BivariatePolynomial]:
        """
        Сумма чётных коэффициентов (1-ux)^(g-1)(1-vx)^(g-1) по d = 1..g-1

        Returns:
            (значение по ряду, значение по замкнутой формуле)
        """
        if g < 2:
            raise DegreeOutOfRange(f"Требуется g >= 2, получено {g}")
        bare = cls.series_from_product(g, SeriesShape.BARE, 2 * g - 2)
        series_value = ZERO
        for d in range(1, g):
            series_value = series_value + bare.coefficient(2 * g - 2 - 2 * d)
        minus, plus = _power_pair(g - 1)
        closed_value = (minus + plus - q_power(g - 1, 2)) * Fraction(1, 2)
        logger.debug(f"Even coefficient sum for g={g}: {series_value}")
        return series_value, closed_value

    @classmethod
    def residue_sum_series(cls, g: int) -> BivariatePolynomial:
        """Конечная сумма коэффициентов сдвинутой формы, посчитанная напрямую"""
        if g < 2:
            raise DegreeOutOfRange(f"Требуется g >= 2, получено {g}")
        shifted = cls.series_from_product(g, SeriesShape.SHIFTED, 2 * g - 2)
        total = ZERO
        for d in range(1, g):
            total = total + shifted.coefficient(2 * g - 2 - 2 * d)
        return total

    @classmethod
    def residues(cls, g: int) -> Tuple[FactoredRational, FactoredRational, FactoredRational]:
        """Вычеты в x = 1 (двойной полюс), x = -1 и x = 1/uv"""
        if g < 2:
            raise DegreeOutOfRange(f"Требуется g >= 2, получено {g}")
        minus, plus = _power_pair(g - 1)
        minus_low, _ = _power_pair(g - 2)
        one_minus_q = ONE - Q

        at_one = (
            FactoredRational.fraction((U + V - Q * 2) * minus_low * Fraction(-(g - 1), 2), one_minus_q)
            + FactoredRational.fraction(minus * Fraction(-(4 * g - 7), 4), one_minus_q)
            + FactoredRational(Q * minus * Fraction(1, 2), [(Q - ONE, 2)])
        )
        at_minus_one = FactoredRational.fraction(plus * Fraction(1, 4), ONE + Q)
        at_inverse_q = FactoredRational(-q_power(g - 1) * minus, [(Q - ONE, 2), (Q + ONE, 1)])
        return at_one, at_minus_one, at_inverse_q

    @classmethod
    def residue_sum_closed(cls, g: int) -> FactoredRational:
        """Минус сумма трёх вычетов"""
        at_one, at_minus_one, at_inverse_q = cls.residues(g)
        return -(at_one + at_minus_one + at_inverse_q)
