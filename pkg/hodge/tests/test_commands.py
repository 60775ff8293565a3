"""
Тесты management команды hodge
"""

import json
import os
import tempfile
from io import StringIO

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase


def run_hodge(*args):
    out, err = StringIO(), StringIO()
    call_command('hodge', *args, stdout=out, stderr=err)
    return out.getvalue(), err.getvalue()


class GenusArgumentTest(SimpleTestCase):

    def assertExitCode(self, code, *args):
        with self.assertRaises(CommandError) as ctx:
            run_hodge(*args)
        self.assertEqual(ctx.exception.returncode, code)

    def test_invalid_ranges(self):
        self.assertExitCode(2, 'stratum', '--genus', '1..3')
        self.assertExitCode(2, 'stratum', '--genus', '4..3')
        self.assertExitCode(2, 'stratum', '--genus', 'three')
        self.assertExitCode(2, 'stratum', '--genus', '99')

    def test_stringy_range_is_clamped(self):
        out, err = run_hodge('euler-table', '--genus', '2..3', '--format', 'csv')
        self.assertEqual(out, 'genus,euler_exact,euler_formula,match\n3,560,128,false\n')
        self.assertIn('3..3', err)

    def test_empty_stringy_range(self):
        self.assertExitCode(2, 'compute', '--genus', '2')


class StratumCommandTest(SimpleTestCase):

    def test_json_all_strata(self):
        out, _ = run_hodge('stratum', '--genus', '2', '--format', 'json')
        data = json.loads(out)
        self.assertEqual(
            [row['stratum'] for row in data],
            ['stable', 'type1', 'type2', 'type3', 'type4', 'unstable(d=1)', 'unstable_total'],
        )
        self.assertTrue(all(row['dim_check'] and row['symmetric'] for row in data))

    def test_type_alias(self):
        out, _ = run_hodge('stratum', '--genus', '2', '--type', 'type4', '--format', 'csv')
        self.assertEqual(out, 'genus,stratum,dim,dim_check,symmetric\n2,type4,4,true,true\n')


class VerifyCommandTest(SimpleTestCase):

    def test_documented_warnings(self):
        out, err = run_hodge('verify', '--genus', '2', '--format', 'json')
        statuses = {row['check_name']: row['status'] for row in json.loads(out)}
        self.assertEqual(statuses['strata.theorem_delta'], 'WARN')
        self.assertEqual(statuses['stringy.*'], 'SKIP')
        self.assertNotIn('FAIL', statuses.values())
        self.assertIn('strata.theorem_delta', err)

    def test_every_check_has_anchor(self):
        out, _ = run_hodge('verify', '--genus', '2', '--format', 'json')
        rows = json.loads(out)
        self.assertTrue(all(row['anchor'] for row in rows))
        anchors = {row['check_name']: row['anchor'] for row in rows}
        self.assertEqual(anchors['strata.theorem_delta'], 'closed formula for E(M^s)')

    def test_csv_columns(self):
        out, _ = run_hodge('verify', '--genus', '2', '--format', 'csv')
        self.assertTrue(out.startswith('genus,check_name,anchor,status,passed\n'))

    def test_strict_fails(self):
        with self.assertRaises(CommandError) as ctx:
            run_hodge('verify', '--genus', '2', '--strict', '--format', 'csv')
        self.assertEqual(ctx.exception.returncode, 1)


class EulerTableCommandTest(SimpleTestCase):

    def test_strict_mismatch(self):
        with self.assertRaises(CommandError) as ctx:
            run_hodge('euler-table', '--genus', '3', '--strict')
        self.assertEqual(ctx.exception.returncode, 1)


class DivisorsCommandTest(SimpleTestCase):

    def test_subset_filter(self):
        out, _ = run_hodge('divisors', '--genus', '3', '--J', 'D_2', '--format', 'json')
        rows = json.loads(out)
        self.assertEqual([row['kind'] for row in rows], ['closed_reconstructed', 'open', 'open_isotypic'])
        self.assertTrue(all(row['J'] == [2] for row in rows))

    def test_unknown_subset(self):
        with self.assertRaises(CommandError) as ctx:
            run_hodge('divisors', '--genus', '3', '--subset', '4')
        self.assertEqual(ctx.exception.returncode, 2)


class OutputFileTest(SimpleTestCase):

    def test_writes_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'compute.json')
            out, err = run_hodge('compute', '--genus', '3', '--format', 'json', '--out', path)
            self.assertEqual(out, '')
            self.assertIn(path, err)
            with open(path, encoding='utf-8') as handle:
                data = json.load(handle)
        self.assertEqual(data[0]['genus'], 3)
        self.assertEqual(data[0]['euler'], '560')
        self.assertEqual(data[0]['euler_formula'], '128')
        self.assertEqual(len(data[0]['breakdown']), 7)

    def test_unwritable_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'missing', 'out.csv')
            with self.assertRaises(CommandError) as ctx:
                run_hodge('divisors', '--genus', '3', '--format', 'csv', '--out', path)
        self.assertEqual(ctx.exception.returncode, 3)
