"""
Конфигурация вычислений E-многочленов
"""
from decouple import config

HODGE_CONFIG = {
    # Верхняя граница рода для CLI: размер выражений растёт полиномиально
    'genus_max': config('HODGE_GENUS_MAX', default=12, cast=int),
    # Стрингова сборка определена начиная с g = 3
    'stringy_genus_min': config('HODGE_STRINGY_GENUS_MIN', default=3, cast=int),
    'default_genus': config('HODGE_DEFAULT_GENUS', default='3..5'),
    'default_format': config('HODGE_DEFAULT_FORMAT', default='pretty'),  # 'json', 'csv', 'pretty'
    # Сколько результатов по родам держать в lru_cache
    'cache_size': config('HODGE_CACHE_SIZE', default=64, cast=int),
}

HODGE_LOG_LEVEL = config('HODGE_LOG_LEVEL', default='WARNING')
