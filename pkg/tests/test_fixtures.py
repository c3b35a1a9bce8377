"""Unit tests for quadruple fixtures and the fixture catalogue."""
import json
import tempfile
import unittest
from unittest.mock import patch
import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from config.settings import get_enabled_fixtures
from src.errors import AlgebraShapeError, DiagramSyntaxError
from src.fixtures import (
    list_fixtures,
    load_quadruple,
    quadruple_from_dict,
    quadruple_to_dict,
    semisimple_quadruple,
    tl_quadruple,
)
from src.scalars import parse_scalar


class TestCatalogue(unittest.TestCase):
    """Test cases for the YAML catalogue."""

    def test_enabled_fixtures(self):
        """Test that all eight shipped fixtures are catalogued."""
        names = {entry['name'] for entry in get_enabled_fixtures()}
        self.assertEqual(names, {'tl', 'tl_numeric', 'semisimple2', 'semisimple2_numeric', 'trunc_poly3_ddx',
                                 'trunc_poly4_ddx', 'nilpotent_c2', 'frobenius_f3_x4'})

    def test_paths_exist(self):
        """Test that every catalogued file exists."""
        for entry in list_fixtures():
            self.assertTrue(Path(entry['path']).is_file(), entry['name'])

    @patch('config.settings.load_fixtures_config')
    def test_disabled_skipped(self, mock_config):
        """Test that disabled entries are filtered out."""
        mock_config.return_value = [{'name': 'a', 'enabled': False}, {'name': 'b'}]
        self.assertEqual([e['name'] for e in get_enabled_fixtures()], ['b'])


class TestLoading(unittest.TestCase):
    """Test cases for load_quadruple and quadruple_from_dict."""

    def test_symbolic_tl(self):
        """Test that tl carries the parameter d."""
        q = load_quadruple('tl')
        self.assertFalse(q.is_numeric)
        self.assertEqual(q.omega[0][0], parse_scalar(q.domain, 'd'))

    def test_parameter_substitution(self):
        """Test that d=3 turns tl numeric and renames it."""
        q = load_quadruple('tl', {'d': '3'})
        self.assertTrue(q.is_numeric)
        self.assertEqual(q.name, 'tl[d=3]')
        self.assertEqual(q.omega[0][0], q.domain(3))

    def test_partial_substitution(self):
        """Test that fixing some parameters keeps the rest symbolic."""
        q = load_quadruple('semisimple2', {'b1': '1', 'b2': '1'})
        self.assertFalse(q.is_numeric)
        self.assertEqual(q.trace, (q.domain.one, q.domain.one))

    def test_unknown_parameter(self):
        """Test that parameters outside the coefficient ring are rejected."""
        with self.assertRaises(AlgebraShapeError):
            load_quadruple('tl', {'x': '2'})

    def test_unknown_fixture(self):
        """Test that an unknown name is rejected."""
        with self.assertRaises(AlgebraShapeError):
            load_quadruple('no_such_fixture')

    def test_bad_json(self):
        """Test that a malformed file raises a syntax error."""
        with tempfile.NamedTemporaryFile('w', suffix='.json', delete=False) as f:
            f.write('{"basis": [')
            path = f.name
        try:
            with self.assertRaises(DiagramSyntaxError):
                load_quadruple(path)
        finally:
            Path(path).unlink()

    def test_missing_keys(self):
        """Test that basis, omega and trace are required."""
        with self.assertRaises(AlgebraShapeError):
            quadruple_from_dict({'basis': ['1'], 'omega': [['1']]})

    def test_wrong_shape(self):
        """Test that omega must be square in the basis size."""
        with self.assertRaises(AlgebraShapeError):
            quadruple_from_dict({'basis': ['e1', 'e2'], 'idempotent_basis': True,
                                 'omega': [['1', '0']], 'trace': ['1', '1']})

    def test_finite_field(self):
        """Test that the Frobenius fixture lives over GF(3)."""
        q = load_quadruple('frobenius_f3_x4')
        self.assertTrue(q.domain.is_FiniteField)
        self.assertEqual(q.dim, 4)


class TestBuilders(unittest.TestCase):
    """Test cases for the programmatic builders."""

    def test_tl_builder(self):
        """Test tl_quadruple(d)."""
        q = tl_quadruple(5)
        self.assertEqual(q.name, 'tl[d=5]')
        self.assertEqual(q.apply_omega(q.algebra.one), (q.domain(5),))

    def test_semisimple_builder(self):
        """Test the constraint count of the k-dimensional semisimple quadruple."""
        q = semisimple_quadruple(3)
        self.assertEqual(q.dim, 3)
        self.assertEqual(len(q.variety.constraints), 3)
        self.assertTrue(q.r_spherical)

    def test_round_trip(self):
        """Test that quadruple_to_dict reloads to the same structure."""
        for name in ('nilpotent_c2', 'semisimple2', 'frobenius_f3_x4'):
            q = load_quadruple(name)
            again = quadruple_from_dict(json.loads(json.dumps(quadruple_to_dict(q))))
            self.assertEqual(again.algebra.mult, q.algebra.mult, name)
            self.assertEqual(again.omega, q.omega, name)
            self.assertEqual(again.trace, q.trace, name)


if __name__ == '__main__':
    unittest.main()
