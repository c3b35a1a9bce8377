"""Unit tests for evaluation of closed pictures and pairings."""
import unittest
import sys
from itertools import product
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.algebra import identity_check_on_variety
from src.circular_forms import EMPTY, parse_form
from src.diagrams import DecoratedDiagram, closed_diagram, labelled, rotate
from src.errors import DiagramValidationError, RefusalError
from src.evaluation import (
    EvalContext,
    alpha,
    eval_decorated_closed,
    eval_form,
    pair_general,
    pair_spherical,
    pair_spherical_closure,
    series_coefficients,
)
from src.fixtures import load_quadruple
from src.gram import gram_matrix
from src.matchings import Matching, OuterMatching, enumerate_matchings, enumerate_outer_matchings
from src.scalars import parse_scalar


class TestFormEvaluation(unittest.TestCase):
    """Test cases for eval_form and alpha."""

    def setUp(self):
        """Set up test fixtures."""
        self.tl = EvalContext(load_quadruple('tl_numeric'))
        self.nil = EvalContext(load_quadruple('nilpotent_c2'))

    def test_tl_values(self):
        """Test that every circle counts 3 in tl_numeric."""
        K = self.tl.quadruple.domain
        self.assertEqual(alpha(EMPTY, self.tl), K.one)
        self.assertEqual(alpha(parse_form("()"), self.tl), K(3))
        self.assertEqual(alpha(parse_form("(())"), self.tl), K(9))
        self.assertEqual(alpha(parse_form("()()"), self.tl), K(9))

    def test_tl_symbolic(self):
        """Test alpha("((()))") = d^3 over Q[d]."""
        ctx = EvalContext(load_quadruple('tl'))
        K = ctx.quadruple.domain
        self.assertEqual(alpha(parse_form("((()))"), ctx), parse_scalar(K, 'd^3'))

    def test_nesting_sensitive(self):
        """Test that nilpotent_c2 tells "(())" from "()()"."""
        K = self.nil.quadruple.domain
        self.assertEqual(eval_form(parse_form("((()))"), self.nil), (K.zero, K.one))
        self.assertEqual(alpha(parse_form("(())"), self.nil), K.one)
        self.assertEqual(alpha(parse_form("()()"), self.nil), K.zero)

    def test_memo(self):
        """Test that evaluated forms are memoized by encoding."""
        eval_form(parse_form("(()())"), self.tl)
        self.assertIn('F(()())', self.tl.memo)
        self.assertIn('F()()', self.tl.memo)
        self.assertIn('F', self.tl.memo)

    def test_closed_diagram(self):
        """Test that a closed decorated diagram evaluates like its form."""
        u = parse_form("(()())")
        self.assertEqual(eval_decorated_closed(closed_diagram(u), self.nil), eval_form(u, self.nil))

    def test_open_diagram_rejected(self):
        """Test that a diagram with boundary points is not closed."""
        with self.assertRaises(DiagramValidationError):
            eval_decorated_closed(DecoratedDiagram.bare(enumerate_matchings(1)[0]), self.tl)


class TestOmega(unittest.TestCase):
    """Test cases for the wrapping map of the derivative fixture."""

    def test_derivative(self):
        """Test omega(x) = 1 and omega(omega(x^2)) = 2 on Q[x]/(x^3)."""
        q = load_quadruple('trunc_poly3_ddx')
        K = q.domain
        x, x2 = q.algebra.basis_vector(1), q.algebra.basis_vector(2)
        self.assertEqual(q.apply_omega(x), (K.one, K.zero, K.zero))
        self.assertEqual(q.apply_omega(q.apply_omega(x2)), (K(2), K.zero, K.zero))

    def test_circles_vanish(self):
        """Test that every nonempty form evaluates to 0 since omega(1) = 0."""
        ctx = EvalContext(load_quadruple('trunc_poly3_ddx'))
        self.assertFalse(any(eval_form(parse_form("(()())"), ctx)))


class TestPairings(unittest.TestCase):
    """Test cases for pair_general and pair_spherical."""

    def setUp(self):
        """Set up test fixtures."""
        self.q = load_quadruple('semisimple2_numeric')
        self.ctx = EvalContext(self.q)
        self.items = [labelled(m, labels) for m in enumerate_matchings(2)
                      for labels in product(range(2), repeat=3)]

    def test_general_side_by_side(self):
        """Test two unnested loops with infinity in the middle face."""
        ctx = EvalContext(load_quadruple('tl_numeric'))
        x = Matching(2, ((1, 2), (3, 4)), (0, 4))
        y = OuterMatching(2, ((1, 2), (3, 4)), 2)
        self.assertEqual(pair_general(DecoratedDiagram.bare(x), DecoratedDiagram.bare(y), ctx), ctx.quadruple.domain(9))

    def test_general_needs_outer(self):
        """Test that the second argument must be outer."""
        with self.assertRaises(DiagramValidationError):
            pair_general(self.items[0], self.items[1], self.ctx)

    def test_spherical_symmetric(self):
        """Test that pair_spherical is symmetric on an R-spherical quadruple."""
        for a, b in product(self.items, repeat=2):
            self.assertEqual(pair_spherical(a, b, self.ctx), pair_spherical(b, a, self.ctx))

    def test_closure_agrees(self):
        """Test that the closure route gives the same pairing as composition."""
        for a, b in product(self.items, repeat=2):
            self.assertEqual(pair_spherical(a, b, self.ctx), pair_spherical_closure(a, b, self.ctx))

    def test_refusal(self):
        """Test that pair_spherical refuses a non-R-spherical quadruple."""
        ctx = EvalContext(load_quadruple('nilpotent_c2'))
        x = labelled(enumerate_matchings(1)[0], [0, 0])
        with self.assertRaises(RefusalError):
            pair_spherical(x, x, ctx)

    def test_arity_mismatch(self):
        """Test that two and four boundary points cannot be paired."""
        x = labelled(enumerate_matchings(1)[0], [0, 0])
        with self.assertRaises(DiagramValidationError):
            pair_spherical(x, self.items[0], self.ctx)

    def test_rotation_invariance(self):
        """Test that rotating both sides of a general pairing changes nothing."""
        outers = [DecoratedDiagram.bare(y) for y in enumerate_outer_matchings(2)]
        for x in self.items[:4]:
            for y in outers:
                self.assertEqual(pair_general(rotate(x, 1), rotate(y, 1), self.ctx), pair_general(x, y, self.ctx))


class TestGramSmall(unittest.TestCase):
    """Test cases for the smallest Gram matrices."""

    def test_meander_two_points(self):
        """Test that TL at k=2 gives [[d^2, d], [d, d^2]] with det d^4 - d^2."""
        q = load_quadruple('tl')
        K = q.domain
        report = gram_matrix(2, q)
        d = parse_scalar(K, 'd')
        self.assertEqual(report.matrix, [[d ** 2, d], [d, d ** 2]])
        self.assertEqual(report.determinant, parse_scalar(K, 'd^4 - d^2'))

    def test_semisimple_k1_diagonal(self):
        """Test that k=1 on semisimple2 is diagonal with entries b_out a_out,in."""
        q = load_quadruple('semisimple2')
        K = q.domain
        report = gram_matrix(1, q)
        expected = ['b1*a11', 'b2*a21', 'b1*a12', 'b2*a22']
        for i in range(4):
            for j in range(4):
                if i != j:
                    self.assertEqual(report.matrix[i][j], K.zero)
            self.assertTrue(identity_check_on_variety(K, report.matrix[i][i], expected[i], q.variety).result)
        self.assertEqual(report.determinant, parse_scalar(K, 'b1^2*b2^2*a11*a12*a21*a22'))


class TestSeries(unittest.TestCase):
    """Test cases for series coefficients."""

    def test_tl_series(self):
        """Test that coefficients of tl_numeric are 3^c."""
        q = load_quadruple('tl_numeric')
        terms = series_coefficients(q, 3)
        self.assertEqual(len(terms), 8)
        for term in terms:
            self.assertEqual(term.value, q.domain(3 ** term.circles))

    def test_forest_sizes(self):
        """Test that forest sizes add up to the circle count."""
        for term in series_coefficients(load_quadruple('nilpotent_c2'), 4):
            self.assertEqual(sum(term.forest_sizes), term.circles)


if __name__ == '__main__':
    unittest.main()
