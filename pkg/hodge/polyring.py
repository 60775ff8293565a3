"""
Точная арифметика разреженных многочленов и рациональных функций от u, v

Коэффициенты - рациональные числа (fractions.Fraction).
Знаменатели рациональных функций хранятся в разложенном виде и никогда
не сокращаются автоматически: равенство проверяется перекрёстным умножением,
предел на диагонали и степень считаются через одномерную редукцию (sympy).
"""

import heapq
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple, Union

import sympy
from sympy import QQ, Poly

from .exceptions import (
    MixedMonomial,
    NotSeriesExpandable,
    OddDiagonalDegree,
    PoleAtOne,
    ZeroInput,
)

logger = logging.getLogger(__name__)

Monomial = Tuple[int, int]
Scalar = Union[int, Fraction]

T = sympy.Symbol('t')


class BivariatePolynomial:
    """
    Разреженный многочлен от u, v: словарь (deg_u, deg_v) -> коэффициент

    Нулевые коэффициенты не хранятся, поэтому равенство многочленов
    совпадает с равенством словарей. Значения неизменяемы и хешируемы.
    """

    __slots__ = ('_terms', '_hash')

    def __init__(self, terms: Optional[Mapping[Monomial, Scalar]] = None):
        clean: Dict[Monomial, Fraction] = {}
        for (i, j), coeff in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"Отрицательная степень в мономе {(i, j)}")
            coeff = Fraction(coeff)
            if coeff:
                clean[(int(i), int(j))] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _make(cls, terms: Dict[Monomial, Fraction]) -> 'BivariatePolynomial':
        # terms уже без нулей
        poly = object.__new__(cls)
        poly._terms = terms
        poly._hash = None
        return poly

    @classmethod
    def constant(cls, value: Scalar) -> 'BivariatePolynomial':
        return cls({(0, 0): value})

    @classmethod
    def monomial(cls, deg_u: int, deg_v: int, coeff: Scalar = 1) -> 'BivariatePolynomial':
        return cls({(deg_u, deg_v): coeff})

    @classmethod
    def coerce(cls, value) -> 'BivariatePolynomial':
        if isinstance(value, BivariatePolynomial):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"Нельзя привести {type(value).__name__} к многочлену")

    # --- свойства ---

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0), Fraction(0))

    def coefficient(self, deg_u: int, deg_v: int) -> Fraction:
        return self._terms.get((deg_u, deg_v), Fraction(0))

    def items(self) -> List[Tuple[Monomial, Fraction]]:
        """Термы в лексикографическом порядке по (deg_u, deg_v)"""
        return sorted(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroInput("Степень нулевого многочлена не определена")
        return max(i + j for i, j in self._terms)

    def sort_key(self) -> tuple:
        return tuple(self.items())

    # --- арифметика ---

    def _other(self, other) -> Optional['BivariatePolynomial']:
        if isinstance(other, BivariatePolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return BivariatePolynomial.constant(other)
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            value = out.get(key, 0) + coeff
            if value:
                out[key] = value
            else:
                out.pop(key, None)
        return BivariatePolynomial._make(out)

    __radd__ = __add__

    def __neg__(self) -> 'BivariatePolynomial':
        return BivariatePolynomial._make({key: -coeff for key, coeff in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return BivariatePolynomial._make({key: coeff * other for key, coeff in self._terms.items()})
        if not isinstance(other, BivariatePolynomial):
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        out: Dict[Monomial, Fraction] = {}
        right = list(other._terms.items())
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in right:
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + c1 * c2
        return BivariatePolynomial._make({key: coeff for key, coeff in out.items() if coeff})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'BivariatePolynomial':
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Показатель степени должен быть неотрицательным целым, получено {n!r}")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # --- преобразования ---

    def swap_uv(self) -> 'BivariatePolynomial':
        return BivariatePolynomial._make({(j, i): coeff for (i, j), coeff in self._terms.items()})

    def is_symmetric(self) -> bool:
        return self == self.swap_uv()

    def evaluate(self, u: Scalar, v: Scalar) -> Fraction:
        u, v = Fraction(u), Fraction(v)
        return sum((coeff * u ** i * v ** j for (i, j), coeff in self._terms.items()), Fraction(0))

    def diagonal_coefficients(self) -> Dict[int, Fraction]:
        """Коэффициенты многочлена от t после подстановки u = v = t"""
        out: Dict[int, Fraction] = {}
        for (i, j), coeff in self._terms.items():
            out[i + j] = out.get(i + j, 0) + coeff
        return {k: c for k, c in out.items() if c}

    def uv_coefficients(self) -> Dict[int, Fraction]:
        """Коэффициенты как многочлена от q = uv"""
        out: Dict[int, Fraction] = {}
        for (i, j), coeff in self._terms.items():
            if i != j:
                raise MixedMonomial(f"Моном u^{i} v^{j} не является степенью uv")
            out[i] = coeff
        return out

    def has_integer_coefficients(self) -> bool:
        return all(coeff.denominator == 1 for coeff in self._terms.values())

    def has_nonnegative_coefficients(self) -> bool:
        return all(coeff >= 0 for coeff in self._terms.values())

    def hodge_numbers(self) -> Dict[Monomial, Fraction]:
        """Знаковые числа Ходжа-Делиня: (p, q) -> коэффициент при u^p v^q"""
        return dict(self.items())

    def exact_quotient(self, divisor: 'BivariatePolynomial') -> Optional['BivariatePolynomial']:
        """
        Точное деление на один многочлен в лексикографическом порядке (u > v)

        Returns:
            Частное, если divisor делит self, иначе None.
        """
        if divisor.is_zero:
            raise ZeroInput("Деление на нулевой многочлен")
        if not self._terms:
            return ZERO
        lead = max(divisor._terms)
        lead_coeff = divisor._terms[lead]
        tail = [(key, coeff) for key, coeff in divisor._terms.items() if key != lead]

        work = dict(self._terms)
        heap = [(-i, -j) for i, j in work]
        heapq.heapify(heap)
        quotient: Dict[Monomial, Fraction] = {}
        while heap:
            neg_i, neg_j = heapq.heappop(heap)
            top = (-neg_i, -neg_j)
            coeff = work.pop(top, None)
            if coeff is None:
                continue
            # старший член остатка должен делиться на старший член делителя
            if top[0] < lead[0] or top[1] < lead[1]:
                return None
            factor = coeff / lead_coeff
            shift_i, shift_j = top[0] - lead[0], top[1] - lead[1]
            quotient[(shift_i, shift_j)] = factor
            for (a, b), dc in tail:
                key = (a + shift_i, b + shift_j)
                if key not in work:
                    heapq.heappush(heap, (-key[0], -key[1]))
                value = work.get(key, 0) - factor * dc
                if value:
                    work[key] = value
                else:
                    work.pop(key, None)
        return BivariatePolynomial._make(quotient)

    # --- представление ---

    def to_triples(self) -> List[list]:
        return [[i, j, str(coeff)] for (i, j), coeff in self.items()]

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable]) -> 'BivariatePolynomial':
        terms: Dict[Monomial, Fraction] = {}
        for i, j, coeff in triples:
            key = (int(i), int(j))
            if key in terms:
                raise ValueError(f"Повторный моном {key}")
            terms[key] = Fraction(coeff)
        return cls(terms)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), coeff in sorted(self._terms.items(), key=lambda item: (item[0][0] + item[0][1], -item[0][0])):
            monomial = ''.join(
                f"{name}^{power}" if power > 1 else name
                for name, power in (('u', i), ('v', j)) if power
            )
            sign = '-' if coeff < 0 else '+'
            size = abs(coeff)
            if monomial:
                body = monomial if size == 1 else f"{size}{monomial}" if size.denominator == 1 else f"({size}){monomial}"
            else:
                body = str(size)
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ('-' if first_sign == '-' else '') + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"BivariatePolynomial({self})"


ZERO = BivariatePolynomial._make({})
ONE = BivariatePolynomial._make({(0, 0): Fraction(1)})
U = BivariatePolynomial.monomial(1, 0)
V = BivariatePolynomial.monomial(0, 1)
Q = BivariatePolynomial.monomial(1, 1)


def q_power(k: int, coeff: Scalar = 1) -> BivariatePolynomial:
    """coeff * (uv)^k"""
    return BivariatePolynomial.monomial(k, k, coeff)


def _to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def _to_poly(coefficients: Mapping[int, Fraction]) -> Poly:
    if not coefficients:
        return Poly(0, T, domain=QQ)
    rep = {(k,): sympy.Rational(c.numerator, c.denominator) for k, c in coefficients.items()}
    return Poly.from_dict(rep, T, domain=QQ)


class UnivariateRational:
    """Отношение двух многочленов от t над Q (результат подстановки u = v = t)"""

    __slots__ = ('numerator', 'denominator')

    def __init__(self, numerator: Poly, denominator: Poly):
        if denominator.is_zero:
            raise ZeroInput("Нулевой знаменатель")
        self.numerator = numerator
        self.denominator = denominator

    @classmethod
    def from_coefficients(
        cls,
        numerator: Mapping[int, Fraction],
        denominator: Mapping[int, Fraction],
    ) -> 'UnivariateRational':
        return cls(_to_poly(numerator), _to_poly(denominator))

    def reduce(self) -> 'UnivariateRational':
        """Сокращает на НОД, знаменатель делается приведённым"""
        if self.numerator.is_zero:
            return UnivariateRational(self.numerator, Poly(1, T, domain=QQ))
        common = self.numerator.gcd(self.denominator)
        numerator = self.numerator.exquo(common)
        denominator = self.denominator.exquo(common)
        lead = denominator.LC()
        return UnivariateRational(numerator.quo_ground(lead), denominator.monic())

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def degree(self) -> int:
        """deg числителя - deg знаменателя"""
        if self.numerator.is_zero:
            raise ZeroInput("Степень нулевой функции не определена")
        return int(self.numerator.degree()) - int(self.denominator.degree())

    def evaluate(self, point: Scalar) -> Fraction:
        reduced = self.reduce()
        point = sympy.Rational(Fraction(point).numerator, Fraction(point).denominator)
        den = _to_fraction(reduced.denominator.eval(point))
        if not den:
            raise PoleAtOne(f"Знаменатель обращается в ноль в точке t = {point}")
        return _to_fraction(reduced.numerator.eval(point)) / den

    def __mul__(self, other: 'UnivariateRational') -> 'UnivariateRational':
        return UnivariateRational(self.numerator * other.numerator, self.denominator * other.denominator)

    def __eq__(self, other) -> bool:
        if not isinstance(other, UnivariateRational):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    __hash__ = None

    def __repr__(self) -> str:
        return f"UnivariateRational(({self.numerator.as_expr()}) / ({self.denominator.as_expr()}))"


class DenominatorFactor(NamedTuple):
    factor: BivariatePolynomial
    mult: int


FactorInput = Union[BivariatePolynomial, Tuple[BivariatePolynomial, int]]


def _factor_product(mults: Mapping[BivariatePolynomial, int]) -> BivariatePolynomial:
    result = ONE
    for factor, mult in mults.items():
        if mult:
            result = result * factor ** mult
    return result


class FactoredRational:
    """
    numerator / prod(factor^mult)

    Каждый множитель знаменателя нормирован так, что его свободный член
    равен 1; константа и знак переносятся в числитель (uv - 1 -> -(1 - uv)).
    Поэтому знаменатель всегда раскладывается в степенной ряд в нуле.
    """

    __slots__ = ('numerator', 'factors')

    def __init__(self, numerator, factors: Iterable[FactorInput] = ()):
        numerator = BivariatePolynomial.coerce(numerator)
        collected: Dict[BivariatePolynomial, int] = {}
        scale = Fraction(1)
        for item in factors:
            if isinstance(item, BivariatePolynomial):
                factor, mult = item, 1
            else:
                factor, mult = item
            if mult < 0:
                raise ValueError(f"Отрицательная кратность {mult}")
            if mult == 0:
                continue
            lead = factor.constant_term
            if not lead:
                raise NotSeriesExpandable(f"Множитель {factor} имеет нулевой свободный член")
            if lead != 1:
                factor = factor * (1 / lead)
                scale /= lead ** mult
            if factor.is_constant:
                continue
            collected[factor] = collected.get(factor, 0) + mult
        if scale != 1:
            numerator = numerator * scale
        self._assign(numerator, collected)

    def _assign(self, numerator: BivariatePolynomial, collected: Mapping[BivariatePolynomial, int]):
        if numerator.is_zero:
            collected = {}
        self.numerator = numerator
        self.factors = tuple(sorted(
            (DenominatorFactor(factor, mult) for factor, mult in collected.items() if mult),
            key=lambda item: item.factor.sort_key(),
        ))

    @classmethod
    def _raw(cls, numerator: BivariatePolynomial, collected: Mapping[BivariatePolynomial, int]) -> 'FactoredRational':
        value = object.__new__(cls)
        value._assign(numerator, collected)
        return value

    @classmethod
    def coerce(cls, value) -> 'FactoredRational':
        if isinstance(value, FactoredRational):
            return value
        return cls(BivariatePolynomial.coerce(value))

    @classmethod
    def fraction(cls, numerator, *denominators: BivariatePolynomial) -> 'FactoredRational':
        """numerator / (d1 * d2 * ...), каждый d с кратностью 1"""
        return cls(numerator, denominators)

    def factor_map(self) -> Dict[BivariatePolynomial, int]:
        return {item.factor: item.mult for item in self.factors}

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def denominator(self) -> BivariatePolynomial:
        return _factor_product(self.factor_map())

    # --- rat_arith ---

    def _other(self, other) -> Optional['FactoredRational']:
        if isinstance(other, FactoredRational):
            return other
        if isinstance(other, (BivariatePolynomial, int, Fraction)):
            return FactoredRational(BivariatePolynomial.coerce(other))
        return None

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            return self
        if self.is_zero:
            return other
        mine, theirs = self.factor_map(), other.factor_map()
        common = {f: max(mine.get(f, 0), theirs.get(f, 0)) for f in set(mine) | set(theirs)}
        left = self.numerator * _factor_product({f: m - mine.get(f, 0) for f, m in common.items()})
        right = other.numerator * _factor_product({f: m - theirs.get(f, 0) for f, m in common.items()})
        return FactoredRational._raw(left + right, common)

    __radd__ = __add__

    def __neg__(self) -> 'FactoredRational':
        return FactoredRational._raw(-self.numerator, self.factor_map())

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return FactoredRational(ZERO)
        merged = self.factor_map()
        for factor, mult in other.factor_map().items():
            merged[factor] = merged.get(factor, 0) + mult
        return FactoredRational._raw(self.numerator * other.numerator, merged)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroInput("Деление на нулевую рациональную функцию")
        if not other.numerator.constant_term:
            raise NotSeriesExpandable(
                f"Числитель делителя {other.numerator} имеет нулевой свободный член"
            )
        numerator = self.numerator * other.denominator()
        return FactoredRational(numerator, list(self.factors) + [(other.numerator, 1)])

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int) -> 'FactoredRational':
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"Показатель степени должен быть неотрицательным целым, получено {n!r}")
        return FactoredRational._raw(self.numerator ** n, {f: m * n for f, m in self.factor_map().items()})

    # --- rat_eq ---

    def rat_eq(self, other) -> bool:
        """Равенство как рациональных функций (перекрёстное умножение)"""
        other = self._other(other)
        if other is None:
            return False
        mine, theirs = self.factor_map(), other.factor_map()
        shared = {f: min(mine[f], theirs[f]) for f in mine.keys() & theirs.keys()}
        left = self.numerator * _factor_product({f: m - shared.get(f, 0) for f, m in theirs.items()})
        right = other.numerator * _factor_product({f: m - shared.get(f, 0) for f, m in mine.items()})
        return left == right

    def __eq__(self, other) -> bool:
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.rat_eq(other)

    __hash__ = None

    # --- симметрия ---

    def swap_uv(self) -> 'FactoredRational':
        return FactoredRational._raw(
            self.numerator.swap_uv(),
            {f.swap_uv(): m for f, m in self.factor_map().items()},
        )

    def is_symmetric(self) -> bool:
        return self.rat_eq(self.swap_uv())

    # --- диагональ, предел, степень ---

    def diagonal(self) -> UnivariateRational:
        """Подстановка u = v = t"""
        denominator = Poly(1, T, domain=QQ)
        for factor, mult in self.factors:
            denominator = denominator * _to_poly(factor.diagonal_coefficients()) ** mult
        return UnivariateRational(_to_poly(self.numerator.diagonal_coefficients()), denominator)

    def limit_at_one(self) -> Fraction:
        """Предел при u, v -> 1 вдоль диагонали"""
        return self.diagonal().evaluate(1)

    def diagonal_degree(self) -> int:
        reduced = self.diagonal().reduce()
        if reduced.is_zero:
            raise ZeroInput("Функция обращается в ноль на диагонали")
        return reduced.degree()

    def uv_degree(self) -> int:
        """Половина степени на диагонали; для E-многочлена это размерность"""
        if self.is_zero:
            raise ZeroInput("uv-степень нуля не определена")
        degree = self.diagonal_degree()
        if degree % 2:
            raise OddDiagonalDegree(f"Степень на диагонали {degree} нечётна")
        return degree // 2

    # --- as_polynomial ---

    def as_polynomial(self) -> Optional[BivariatePolynomial]:
        """Точное частное, если знаменатель делит числитель, иначе None"""
        quotient = self.numerator
        for factor, mult in self.factors:
            for _ in range(mult):
                quotient = quotient.exact_quotient(factor)
                if quotient is None:
                    logger.debug(f"Factor {factor} does not divide the numerator")
                    return None
        return quotient

    # --- вычисление ---

    def point_count(self, q: Scalar) -> Fraction:
        """Значение функции от uv при uv = q (сравнение с числом точек над F_q)"""
        q = Fraction(q)

        def at(poly: BivariatePolynomial) -> Fraction:
            return sum((c * q ** k for k, c in poly.uv_coefficients().items()), Fraction(0))

        denominator = Fraction(1)
        for factor, mult in self.factors:
            denominator *= at(factor) ** mult
        if not denominator:
            raise ZeroDivisionError(f"Знаменатель обращается в ноль при uv={q}")
        return at(self.numerator) / denominator

    def __str__(self) -> str:
        if not self.factors:
            return str(self.numerator)
        den = ' * '.join(f"({f})" if m == 1 else f"({f})^{m}" for f, m in self.factors)
        return f"({self.numerator}) / {den}"

    def __repr__(self) -> str:
        return f"FactoredRational({self})"
