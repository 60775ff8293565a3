"""
Management команда для вычисления E-многочленов и стринговой E-функции
Запустить: python manage.py hodge compute --genus 3..5 --format json
"""

import logging
import re
from typing import List, Tuple

from django.core.management.base import BaseCommand, CommandError

from config.hodge_config import HODGE_CONFIG
from hodge.emitters import FORMATS, ReportEmitter
from hodge.exceptions import EmitError, HodgeError, UnsupportedSubset
from hodge.strata import StrataCalculator
from hodge.stringy import DivisorSubset, StringyCalculator
from hodge.verification import Status, VerificationSuite

logger = logging.getLogger('hodge.cli')

GENUS_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$')


class Command(BaseCommand):
    help = 'E-многочлены страт и стрингова E-функция пространства пар Хиггса ранга 2'

    SUBCOMMANDS = {
        'compute': 'Отчёт о стринговой E-функции для каждого рода',
        'stratum': 'E-многочлены страт стабильного локуса',
        'verify': 'Полный набор проверок тождеств',
        'euler-table': 'Таблица стринговых чисел Эйлера',
        'divisors': 'E-многочлены дивизоров D_J и открытых страт D_J^0',
    }
    STRINGY_SUBCOMMANDS = {'compute', 'euler-table', 'divisors'}
    STRATUM_CHOICES = ['stable', 'type1', 'type2', 'type3', 'type4', 'unstable', 'all']

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest='subcommand', required=True)
        for name, help_text in self.SUBCOMMANDS.items():
            sub = subparsers.add_parser(name, help=help_text)
            sub.add_argument(
                '--genus',
                default=HODGE_CONFIG['default_genus'],
                help='Род или диапазон родов A..B',
            )
            sub.add_argument(
                '--format',
                choices=FORMATS,
                default=HODGE_CONFIG['default_format'],
                help='Формат вывода',
            )
            sub.add_argument('--out', default=None, help='Записать отчёт в файл')
            sub.add_argument(
                '--strict',
                action='store_true',
                help='Задокументированные расхождения считаются ошибками',
            )
            if name == 'stratum':
                sub.add_argument(
                    '--stratum', '--type',
                    dest='stratum',
                    choices=self.STRATUM_CHOICES,
                    default='all',
                    help='Какие страты выводить',
                )
            if name == 'divisors':
                sub.add_argument(
                    '--subset', '--J',
                    dest='subset',
                    default=None,
                    help='Только дивизор D_J, например 12 или D_13',
                )

    def parse_genus(self, text: str) -> Tuple[int, int]:
        match = GENUS_PATTERN.match(str(text))
        if not match:
            raise CommandError(f"Некорректный диапазон родов: {text!r}, ожидается A или A..B", returncode=2)
        low = int(match.group(1))
        high = int(match.group(2) or low)
        genus_max = HODGE_CONFIG['genus_max']
        if not 2 <= low <= high:
            raise CommandError(f"Требуется 2 <= A <= B, получено {low}..{high}", returncode=2)
        if high > genus_max:
            raise CommandError(
                f"Род {high} превышает ограничение HODGE_GENUS_MAX={genus_max}", returncode=2
            )
        return low, high

    def handle(self, *args, **options):
        subcommand = options['subcommand']
        low, high = self.parse_genus(options['genus'])

        if subcommand in self.STRINGY_SUBCOMMANDS:
            minimum = HODGE_CONFIG['stringy_genus_min']
            if low < minimum:
                self.stderr.write(self.style.WARNING(
                    f"⚠ Стрингова сборка определена для g >= {minimum}; диапазон сдвинут до {max(low, minimum)}..{high}"
                ))
                logger.warning(f"Clamped genus_min from {low} to {minimum} for {subcommand}")
                low = minimum
            if low > high:
                raise CommandError(f"Пустой диапазон родов для {subcommand}", returncode=2)

        genera = list(range(low, high + 1))
        logger.info(f"Running {subcommand} for genera {genera}")

        handler = getattr(self, 'handle_' + subcommand.replace('-', '_'))
        try:
            kind, items, failures = handler(genera, options)
        except HodgeError as e:
            logger.error(f"{subcommand} failed: {e}")
            raise CommandError(str(e), returncode=1)

        path = options.get('out')
        try:
            written = ReportEmitter.emit(kind, items, options['format'], path=path, stream=self.stdout)
        except EmitError as e:
            raise CommandError(str(e), returncode=3)
        if path:
            self.stderr.write(self.style.SUCCESS(f"✅ Записано {written} байт в {path}"))

        if failures:
            raise CommandError(f"Не прошло проверок: {failures}", returncode=1)

    def handle_compute(self, genera: List[int], options) -> tuple:
        reports = [StringyCalculator.stringy_e(g) for g in genera]
        failures = 0
        if options['strict']:
            failures = sum(1 for report in reports if not report.euler_matches_formula)
        return 'stringy', reports, failures

    def handle_stratum(self, genera: List[int], options) -> tuple:
        reports = [
            StrataCalculator.report(stratum, g)
            for g in genera
            for stratum in StrataCalculator.strata_ids(g, options['stratum'])
        ]
        failures = sum(1 for report in reports if not (report.dim_check and report.symmetric))
        return 'stratum', reports, failures

    def handle_verify(self, genera: List[int], options) -> tuple:
        outcomes = VerificationSuite.run(genera, strict=options['strict'])
        for outcome in outcomes:
            if outcome.status is Status.WARN:
                self.stderr.write(self.style.WARNING(
                    f"⚠ g={outcome.genus} {outcome.check_name}: {outcome.detail}"
                ))
            elif outcome.status is Status.SKIP:
                self.stderr.write(self.style.WARNING(
                    f"⚠ g={outcome.genus} {outcome.check_name} пропущено: {outcome.detail}"
                ))
        failures = sum(1 for outcome in outcomes if outcome.failed)
        return 'verify', outcomes, failures

    def handle_euler_table(self, genera: List[int], options) -> tuple:
        rows = StringyCalculator.euler_rows(genera)
        mismatched = [row['genus'] for row in rows if not row['match']]
        if mismatched:
            self.stderr.write(self.style.WARNING(
                f"⚠ Предел E_st отличается от замкнутой формулы при g={mismatched} "
                f"(формула равна пределу поправки E_st - E(M^s))"
            ))
        failures = len(mismatched) if options['strict'] else 0
        return 'euler', rows, failures

    def handle_divisors(self, genera: List[int], options) -> tuple:
        wanted = None
        if options.get('subset'):
            try:
                wanted = DivisorSubset.parse(options['subset'])
            except UnsupportedSubset as e:
                raise CommandError(str(e), returncode=2)
        rows = []
        for g in genera:
            for subset, kind, value in StringyCalculator.divisor_table(g):
                if wanted is not None and subset != wanted:
                    continue
                rows.append({
                    'genus': g,
                    'J': subset.sorted_members,
                    'kind': kind,
                    'e': value,
                    'is_polynomial': value.as_polynomial() is not None,
                    'value_at_one': value.limit_at_one(),
                })
        return 'divisors', rows, 0
