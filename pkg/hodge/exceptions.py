"""
Исключения вычислительного ядра hodge
"""


class HodgeError(Exception):
    """Базовое исключение для всех ошибок вычислений"""


class ZeroInput(HodgeError):
    """Операция не определена для нулевого значения"""


class PoleAtOne(HodgeError):
    """Предел при u, v -> 1 расходится"""


class NotSeriesExpandable(HodgeError):
    """Знаменатель с нулевым свободным членом не раскладывается в ряд в нуле"""


class OddDiagonalDegree(HodgeError):
    """Степень на диагонали нечётна, uv-степень не целая"""


class MixedMonomial(HodgeError):
    """Выражение не является функцией от одного произведения uv"""


class UnknownShape(HodgeError):
    """Неизвестная форма производящей функции"""


class TruncationExceeded(HodgeError):
    """Запрошен коэффициент выше порядка обрезки ряда"""


class DegreeOutOfRange(HodgeError):
    """Параметр степени вне допустимого диапазона"""


class UnsupportedSubset(HodgeError):
    """Для этого подмножества дивизоров формула не задана"""


class LogTerminalityViolated(HodgeError):
    """Дискрепанс не больше -1"""


class GenusOutOfRange(HodgeError):
    """Род вне допустимого диапазона"""


class EmitError(HodgeError):
    """Не удалось записать отчёт"""
