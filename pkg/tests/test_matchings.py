"""Unit tests for crossingless and outer matchings."""
import unittest
import sys
from math import comb
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.errors import BoundExceededError, DiagramValidationError
from src.matchings import (
    Matching,
    OuterMatching,
    cap_matching,
    catalan,
    cup_matching,
    enumerate_matchings,
    enumerate_outer_matchings,
    identity_matching,
    reflect_matching,
    rotate_matching,
    rotate_outer,
)


class TestMatchingCounts(unittest.TestCase):
    """Test cases for enumeration counts."""

    def test_catalan_counts(self):
        """Test that there are Catalan(k) matchings for k <= 6."""
        for k in range(7):
            self.assertEqual(len(enumerate_matchings(k)), catalan(k))

    def test_outer_counts(self):
        """Test that there are C(2k, k) outer matchings for k <= 6."""
        for k in range(7):
            self.assertEqual(len(enumerate_outer_matchings(k)), comb(2 * k, k))

    def test_small_cases(self):
        """Test the explicit matchings for k = 1, 2."""
        self.assertEqual([m.arcs for m in enumerate_matchings(1)], [((1, 2),)])
        self.assertEqual([m.arcs for m in enumerate_matchings(2)], [((1, 2), (3, 4)), ((1, 4), (2, 3))])
        self.assertEqual(len(enumerate_matchings(5)), 42)

    def test_bound(self):
        """Test that the matching bound is enforced."""
        with self.assertRaises(BoundExceededError):
            enumerate_matchings(4, bound=3)


class TestValidation(unittest.TestCase):
    """Test cases for matching validation."""

    def test_crossing(self):
        """Test that arcs (1,3) and (2,4) are rejected."""
        with self.assertRaises(DiagramValidationError):
            Matching(2, ((1, 3), (2, 4)), (0, 4))

    def test_repeated_point(self):
        """Test that a point used twice is rejected."""
        with self.assertRaises(DiagramValidationError):
            Matching(2, ((1, 2), (2, 3)), (0, 4))

    def test_bad_split(self):
        """Test that the split must add up to 2k."""
        with self.assertRaises(DiagramValidationError):
            Matching(1, ((1, 2),), (1, 2))

    def test_bad_infinity_face(self):
        """Test that the infinity face must be a region."""
        with self.assertRaises(DiagramValidationError):
            OuterMatching(2, ((1, 2), (3, 4)), 4)


class TestRegions(unittest.TestCase):
    """Test cases for region indexing."""

    def test_two_arcs(self):
        """Test regions of {(1,2),(3,4)}: inside each arc plus the middle."""
        m = Matching(2, ((1, 2), (3, 4)), (0, 4))
        self.assertEqual(m.regions, (1, 2, 3))
        self.assertEqual(m.region_segments(2), (2, 4))
        self.assertEqual(m.marker_region, 2)

    def test_nested(self):
        """Test regions of {(1,4),(2,3)}."""
        m = Matching(2, ((1, 4), (2, 3)), (0, 4))
        self.assertEqual(m.regions, (1, 2, 4))
        self.assertEqual(m.region_segments(1), (1, 3))

    def test_region_count(self):
        """Test that every matching of 2k points has k+1 regions."""
        for k in range(1, 6):
            for m in enumerate_matchings(k):
                self.assertEqual(len(m.regions), k + 1)

    def test_empty(self):
        """Test that the empty matching has region 0."""
        self.assertEqual(Matching(0, (), (0, 0)).regions, (0,))

    def test_no_region_zero(self):
        """Test that region 0 exists only without boundary points."""
        for k in range(1, 5):
            for m in enumerate_matchings(k):
                self.assertNotIn(0, m.regions)
                self.assertEqual(set(m.regions), {m.region_of_segment(s) for s in range(1, 2 * k + 1)})
        with self.assertRaises(DiagramValidationError):
            OuterMatching(2, ((1, 2), (3, 4)), 0)


class TestSymmetries(unittest.TestCase):
    """Test cases for reflection and rotation."""

    def test_reflect_cup(self):
        """Test that the cup reflects to the cap."""
        self.assertEqual(reflect_matching(cup_matching()), cap_matching())

    def test_reflect_involution(self):
        """Test that reflecting twice is the identity."""
        for m in enumerate_matchings(3, split=(2, 4)):
            self.assertEqual(reflect_matching(reflect_matching(m)), m)

    def test_rotate_by_one(self):
        """Test that {(1,2),(3,4)} rotates to {(2,3),(4,1)}."""
        m = Matching(2, ((1, 2), (3, 4)), (0, 4))
        self.assertEqual(rotate_matching(m, 1).arcs, ((1, 4), (2, 3)))

    def test_rotate_full_turn(self):
        """Test that rotation by 0 and by 2k is the identity."""
        for k in range(1, 5):
            for m in enumerate_matchings(k):
                self.assertEqual(rotate_matching(m, 0), m)
                self.assertEqual(rotate_matching(m, 2 * k), m)

    def test_rotate_outer_keeps_count(self):
        """Test that rotation permutes outer matchings."""
        outer = enumerate_outer_matchings(3)
        self.assertEqual({rotate_outer(y, 1) for y in outer}, set(outer))

    def test_identity(self):
        """Test the identity matching on two strands."""
        self.assertEqual(identity_matching(2).arcs, ((1, 4), (2, 3)))
        self.assertEqual(identity_matching(2).split, (2, 2))


if __name__ == '__main__':
    unittest.main()
