"""
Вывод отчётов в форматах json, csv и pretty

Вывод детерминирован: порядок термов фиксирован сериализаторами,
порядок записей задаёт вызывающий код.
"""

import csv
import io
import logging
from typing import Dict, Iterable, List, Optional, TextIO

from rest_framework.renderers import JSONRenderer

from .exceptions import EmitError
from .polyring import FactoredRational
from .serializers import (
    DivisorRowSerializer,
    EulerRowSerializer,
    StratumReportSerializer,
    StringyReportSerializer,
    VerificationOutcomeSerializer,
)

logger = logging.getLogger(__name__)

FORMATS = ('json', 'csv', 'pretty')


def _csv_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, list):
        return ''.join(str(item) for item in value)
    return str(value)


def _pretty_rational(value: Optional[FactoredRational]) -> str:
    return '-' if value is None else str(value)


def _pretty_stringy(report) -> List[str]:
    lines = [
        f"g={report.genus}",
        f"  E_st = {report.e_st}",
        f"  euler = {report.euler}  (formula {report.euler_formula}, correction {report.euler_correction})",
        f"  euler_is_integer = {_csv_value(report.euler_is_integer)}",
        f"  is_polynomial = {_csv_value(report.is_polynomial)}  is_crepant = {_csv_value(report.is_crepant)}",
        f"  printed E(M^s) - E(M^s) = {_pretty_rational(report.e_ms_theorem_delta)}",
        "  breakdown:",
    ]
    for entry in report.breakdown:
        lines.append(f"    {entry.subset.label} a={list(entry.weight_exponents)}: E(D^0) = {entry.e_open}")
    return lines


def _pretty_stratum(report) -> List[str]:
    lines = [
        f"g={report.genus} {report.stratum}: dim={report.expected_dim} "
        f"dim_check={_csv_value(report.dim_check)} symmetric={_csv_value(report.symmetric)}",
        f"  E = {report.e_poly}",
    ]
    poly = report.e_poly.as_polynomial()
    if poly is not None and not poly.is_zero:
        numbers = ' '.join(f"({p},{q})={c}" for (p, q), c in poly.hodge_numbers().items())
        lines.append(f"  h^pq: {numbers}")
    return lines


def _pretty_outcome(outcome) -> List[str]:
    line = f"g={outcome.genus} {outcome.status.value:<4} {outcome.check_name}  {outcome.subject} [{outcome.anchor}]"
    lines = [line]
    if outcome.detail:
        lines.append(f"  {outcome.detail}")
    if outcome.delta is not None:
        lines.append(f"  delta = {outcome.delta}")
    return lines


def _pretty_euler(row) -> List[str]:
    return [
        f"g={row['genus']}  euler={row['euler_exact']}  formula={row['euler_formula']}  "
        f"match={_csv_value(row['match'])}"
    ]


def _pretty_divisor(row) -> List[str]:
    label = 'D_' + ''.join(str(j) for j in row['J'])
    return [f"g={row['genus']} {label} {row['kind']}: {row['e']}"]


class ReportEmitter:
    """Рендерит списки отчётов одного вида"""

    # вид -> (сериализатор, колонки csv, pretty-рендер)
    KINDS: Dict[str, tuple] = {
        'stringy': (
            StringyReportSerializer,
            ['genus', 'euler', 'euler_formula', 'euler_correction', 'euler_is_integer', 'is_polynomial'],
            _pretty_stringy,
        ),
        'stratum': (
            StratumReportSerializer,
            ['genus', 'stratum', 'dim', 'dim_check', 'symmetric'],
            _pretty_stratum,
        ),
        'verify': (
            VerificationOutcomeSerializer,
            ['genus', 'check_name', 'anchor', 'status', 'passed'],
            _pretty_outcome,
        ),
        'euler': (
            EulerRowSerializer,
            ['genus', 'euler_exact', 'euler_formula', 'match'],
            _pretty_euler,
        ),
        'divisors': (
            DivisorRowSerializer,
            ['genus', 'J', 'kind', 'is_polynomial', 'value_at_one'],
            _pretty_divisor,
        ),
    }

    @classmethod
    def render(cls, kind: str, items: Iterable, fmt: str) -> bytes:
        if kind not in cls.KINDS:
            raise ValueError(f"Неизвестный вид отчёта: {kind}")
        if fmt not in FORMATS:
            raise ValueError(f"Неизвестный формат: {fmt}")
        serializer_class, columns, pretty = cls.KINDS[kind]
        items = list(items)

        if fmt == 'pretty':
            lines: List[str] = []
            for item in items:
                lines.extend(pretty(item))
            return ('\n'.join(lines) + '\n').encode('utf-8') if lines else b''

        data = serializer_class(items, many=True).data
        if fmt == 'json':
            return JSONRenderer().render(data, renderer_context={'indent': 2}) + b'\n'

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(columns)
        for row in data:
            writer.writerow([_csv_value(row[column]) for column in columns])
        return buffer.getvalue().encode('utf-8')

    @classmethod
    def emit(
        cls,
        kind: str,
        items: Iterable,
        fmt: str,
        path: Optional[str] = None,
        stream: Optional[TextIO] = None,
    ) -> int:
        """
        Пишет отчёт в файл или поток

        Returns:
            Количество записанных байт
        """
        content = cls.render(kind, items, fmt)
        if path:
            try:
                with open(path, 'wb') as handle:
                    handle.write(content)
            except OSError as e:
                logger.error(f"Failed to write report to {path}: {e}")
                raise EmitError(f"Не удалось записать {path}: {e}") from e
            logger.info(f"Wrote {len(content)} bytes to {path}")
        elif stream is not None:
            stream.write(content.decode('utf-8'))
        return len(content)
