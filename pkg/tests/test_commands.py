"""Unit tests for the command-line surface."""
import json
import unittest
from argparse import Namespace
from io import StringIO
from unittest.mock import patch
import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from main import main, parse_arguments
from src.commands import dispatch
from src.report import format_table, render


def run(*argv):
    return dispatch(parse_arguments(list(argv)))


class TestDispatch(unittest.TestCase):
    """Test cases for subcommand dispatch and exit codes."""

    def test_eval(self):
        """Test that two nested circles at d = 3 evaluate to 9."""
        result = run('eval', '--quadruple', 'tl', '--d', '3', '--form', '(())')
        self.assertEqual(result['exit_code'], 0)
        self.assertEqual(result['data']['alpha'], '9')

    def test_canon(self):
        """Test canonical and spherical canonical encodings."""
        result = run('canon', '--form', '(()(()))')
        self.assertEqual(result['data']['canonical'], '((())())')
        self.assertEqual(result['data']['circles'], 4)

    def test_enumerate(self):
        """Test counts for forms and matchings."""
        self.assertEqual(run('enumerate', '--n', '4')['data']['count'], 9)
        self.assertEqual(run('enumerate', '--what', 'matchings', '--n', '3')['data']['count'], 5)
        self.assertEqual(run('enumerate', '--what', 'outer', '--n', '3')['data']['count'], 20)

    def test_pair_refused(self):
        """Test that the spherical pairing on nilpotent_c2 exits with 2."""
        x = '{"k": 1, "arcs": [[1, 2]], "regions": {"1": [{"basis": 1}], "2": [{"basis": 1}]}}'
        result = run('pair', '--quadruple', 'nilpotent_c2', '--diagram', x, '--diagram', x)
        self.assertEqual(result['exit_code'], 2)
        self.assertEqual(result['status'], 'failed')

    def test_pair_general(self):
        """Test a disk against an outer diagram."""
        x = '{"k": 1, "arcs": [[1, 2]]}'
        y = '{"k": 1, "arcs": [[1, 2]], "infinity_face": 2}'
        result = run('pair', '--quadruple', 'tl_numeric', '--diagram', x, '--diagram', y)
        self.assertEqual(result['data']['mode'], 'general')
        self.assertEqual(result['data']['value'], '3')

    def test_gram_bound(self):
        """Test that k = 6 exceeds the Gram bound with exit code 3."""
        self.assertEqual(run('gram', '--quadruple', 'tl_numeric', '--n', '6')['exit_code'], 3)

    def test_gram_blocks(self):
        """Test the block summary of semisimple2 at k = 2."""
        result = run('gram', '--quadruple', 'semisimple2', '--n', '2', '--blocks')
        self.assertEqual(result['summary']['total_items'], 16)
        self.assertTrue(result['summary']['cross_block_verified'])

    def test_statespace(self):
        """Test Catalan dimensions for TL at d = 3."""
        result = run('statespace', '--quadruple', 'tl_numeric', '--n', '3')
        self.assertEqual([row['dim'] for row in result['data']['dims']], [1, 1, 2, 5])

    def test_tl(self):
        """Test End(2) at d = 3."""
        result = run('tl', '--quadruple', 'tl', '--d', '3', '--n', '2')
        self.assertEqual(result['exit_code'], 0)
        self.assertEqual(result['data']['dim'], 2)

    def test_tables(self):
        """Test that n = 2 passes with the erratum row."""
        result = run('tables', '--n', '2', '--seed', '0')
        self.assertEqual(result['exit_code'], 0)
        self.assertIn('erratum', [row['status'] for row in result['data']['blocks']])
        self.assertTrue(result['data']['blocks'][0]['match_paper'])

    def test_meander(self):
        """Test meander orders 1..3."""
        self.assertEqual(run('meander', '--n', '3')['exit_code'], 0)

    def test_recognize(self):
        """Test Z' of the derivative fixture."""
        result = run('recognize', '--quadruple', 'trunc_poly3_ddx')
        self.assertEqual(result['data']['dim_Z_prime'], 1)
        self.assertEqual(result['data']['dim_A0'], 0)

    def test_validate_all(self):
        """Test that every shipped fixture validates."""
        for name in ('tl', 'tl_numeric', 'semisimple2', 'semisimple2_numeric', 'trunc_poly3_ddx',
                     'trunc_poly4_ddx', 'nilpotent_c2', 'frobenius_f3_x4'):
            self.assertEqual(run('validate', '--quadruple', name)['exit_code'], 0, name)

    def test_series(self):
        """Test series coefficients up to two circles."""
        result = run('series', '--quadruple', 'tl_numeric', '--n', '2')
        self.assertEqual([t['alpha'] for t in result['data']['terms']], ['1', '3', '9', '9'])

    def test_missing_quadruple(self):
        """Test that commands needing a quadruple fail with exit code 1."""
        self.assertEqual(run('eval', '--form', '()')['exit_code'], 1)

    def test_syntax_error(self):
        """Test that a bad form literal fails with exit code 1."""
        result = run('canon', '--form', '((')
        self.assertEqual(result['exit_code'], 1)
        self.assertIn('offset 2', result['error'])

    def test_unknown_command(self):
        """Test that an unknown subcommand exits with 2."""
        self.assertEqual(dispatch(Namespace(command='frobnicate'))['exit_code'], 2)


class TestRender(unittest.TestCase):
    """Test cases for output rendering."""

    def test_json(self):
        """Test that JSON output carries command, status and data."""
        result = run('enumerate', '--n', '2')
        payload = json.loads(render(result, 'json'))
        self.assertEqual(payload['command'], 'enumerate')
        self.assertEqual(set(payload['data']['items']), {'()()', '(())'})

    def test_table(self):
        """Test that table output has a header rule and one line per row."""
        text = format_table(['n', 'ok'], [{'n': 1, 'ok': True}, {'n': 2, 'ok': False}])
        lines = text.splitlines()
        self.assertEqual(lines[0].split(), ['n', 'ok'])
        self.assertTrue(set(lines[1]) <= {'-', ' '})
        self.assertEqual(lines[2].split(), ['1', 'yes'])
        self.assertEqual(lines[3].split(), ['2', 'no'])

    def test_table_with_summary(self):
        """Test that table format prints the summary before the rows."""
        text = render(run('meander', '--n', '2'), 'table')
        self.assertIn('chebyshev_match', text)

    def test_error(self):
        """Test that errors are rendered in both formats."""
        result = run('gram', '--quadruple', 'tl_numeric', '--n', '6')
        self.assertIn('error:', render(result, 'table'))
        self.assertIn('exceeds', json.loads(render(result, 'json'))['error'])


class TestMain(unittest.TestCase):
    """Test cases for the entry point."""

    @patch('main.setup_logging')
    def test_exit_code(self, mock_logging):
        """Test that main exits with the command's exit code."""
        with patch('sys.stdout', new_callable=StringIO) as out:
            with self.assertRaises(SystemExit) as cm:
                main(['eval', '--quadruple', 'tl_numeric', '--form', '()'])
        self.assertEqual(cm.exception.code, 0)
        self.assertEqual(json.loads(out.getvalue())['data']['alpha'], '3')
        mock_logging.assert_called_once_with(tag_filter=None)

    @patch('main.setup_logging')
    def test_tagged_log(self, mock_logging):
        """Test that tagged subcommands select their log file."""
        with patch('sys.stdout', new_callable=StringIO):
            with self.assertRaises(SystemExit) as cm:
                main(['meander', '--n', '1'])
        self.assertEqual(cm.exception.code, 0)
        mock_logging.assert_called_once_with(tag_filter='meander')

    @patch('main.setup_logging')
    def test_bound_exit(self, mock_logging):
        """Test exit code 3 for a bound violation."""
        with patch('sys.stdout', new_callable=StringIO):
            with self.assertRaises(SystemExit) as cm:
                main(['enumerate', '--what', 'matchings', '--n', '9'])
        self.assertEqual(cm.exception.code, 3)


if __name__ == '__main__':
    unittest.main()
