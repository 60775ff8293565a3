"""
Тесты сериализаторов и вывода отчётов
"""

import io
import json
import os
import tempfile

from django.test import SimpleTestCase

from hodge.emitters import ReportEmitter
from hodge.exceptions import EmitError
from hodge.polyring import ONE, Q, U, FactoredRational
from hodge.serializers import FactoredRationalSerializer, PolynomialField
from hodge.strata import StrataCalculator, StratumId, StratumTag


class FactoredRationalSerializerTest(SimpleTestCase):

    def test_representation(self):
        value = FactoredRational.fraction(U * 2, ONE - Q)
        data = FactoredRationalSerializer(value).data
        self.assertEqual(data['num'], [[1, 0, '2']])
        self.assertEqual(data['den'], [{'factor': [[0, 0, '1'], [1, 1, '-1']], 'mult': 1}])

    def test_create(self):
        serializer = FactoredRationalSerializer(data={
            'num': [[0, 0, '1'], [2, 2, '-1']],
            'den': [{'factor': [[0, 0, '1'], [1, 1, '-1']], 'mult': 1}],
        })
        self.assertTrue(serializer.is_valid(), serializer.errors)
        value = serializer.save()
        self.assertEqual(value.as_polynomial(), ONE + Q)

    def test_rejects_denominator_without_constant(self):
        serializer = FactoredRationalSerializer(data={
            'num': [[0, 0, '1']],
            'den': [{'factor': [[1, 1, '1']], 'mult': 1}],
        })
        self.assertFalse(serializer.is_valid())
        self.assertIn('den', serializer.errors)

    def test_rejects_duplicate_monomial(self):
        serializer = FactoredRationalSerializer(data={
            'num': [[1, 0, '1'], [1, 0, '2']],
            'den': [],
        })
        self.assertFalse(serializer.is_valid())
        self.assertIn('num', serializer.errors)

    def test_polynomial_field_rejects_negative_degree(self):
        serializer = FactoredRationalSerializer(data={'num': [[-1, 0, '1']], 'den': []})
        self.assertFalse(serializer.is_valid())
        self.assertEqual(PolynomialField().to_representation(Q), [[1, 1, '1']])


class ReportEmitterTest(SimpleTestCase):

    def setUp(self):
        self.reports = [StrataCalculator.report(StratumId(StratumTag.TYPE3), 2)]

    def test_json(self):
        data = json.loads(ReportEmitter.render('stratum', self.reports, 'json'))
        self.assertEqual(data[0]['stratum'], 'type3')
        self.assertEqual(data[0]['dim'], 3)
        self.assertTrue(data[0]['dim_check'])

    def test_json_is_deterministic(self):
        first = ReportEmitter.render('stratum', self.reports, 'json')
        second = ReportEmitter.render('stratum', self.reports, 'json')
        self.assertEqual(first, second)

    def test_csv(self):
        content = ReportEmitter.render('stratum', self.reports, 'csv').decode('utf-8')
        self.assertEqual(content, 'genus,stratum,dim,dim_check,symmetric\n2,type3,3,true,true\n')

    def test_pretty(self):
        content = ReportEmitter.render('stratum', self.reports, 'pretty').decode('utf-8')
        self.assertTrue(content.startswith('g=2 type3: dim=3'))
        self.assertIn('h^pq: (2,2)=-16 (3,3)=16', content)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            ReportEmitter.render('stratum', self.reports, 'xml')

    def test_emit_to_stream(self):
        stream = io.StringIO()
        written = ReportEmitter.emit('stratum', self.reports, 'csv', stream=stream)
        self.assertEqual(written, len(stream.getvalue().encode('utf-8')))

    def test_emit_to_missing_directory(self):
        with tempfile.TemporaryDirectory() as tmp:
            with self.assertRaises(EmitError):
                ReportEmitter.emit('stratum', self.reports, 'json', path=os.path.join(tmp, 'missing', 'out.json'))
