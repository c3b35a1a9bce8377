"""Unit tests for decorated diagrams: composition, tensor, closure and symmetries."""
import random
import unittest
import sys
from itertools import product
from pathlib import Path

import networkx as nx

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from src.circular_forms import enumerate_circular_forms, parse_form
from src.diagrams import (
    DecoratedDiagram,
    ElemContent,
    FormContent,
    LoopContent,
    arc_decompose,
    boundary_sequence,
    closed_diagram,
    compose,
    compose_chain,
    composition_plan,
    glue_disk_outer,
    labelled,
    normalize_contents,
    parity_nesting,
    reflect,
    rotate,
    tensor,
)
from src.errors import DiagramValidationError
from src.matchings import (
    Matching,
    OuterMatching,
    cap_matching,
    cup_matching,
    empty_matching,
    enumerate_matchings,
    enumerate_outer_matchings,
    identity_matching,
)


def elem(i: int) -> ElemContent:
    return ElemContent(basis=i)


def random_strip(rng: random.Random, n: int, m: int, labels: bool = True) -> DecoratedDiagram:
    matching = rng.choice(enumerate_matchings((n + m) // 2, split=(n, m)))
    if not labels:
        return DecoratedDiagram.bare(matching)
    return labelled(matching, [rng.randrange(3) for _ in matching.regions])


def same_parity(rng: random.Random, count: int) -> list:
    """count point numbers in 0..3 sharing one parity."""
    parity = rng.randrange(2)
    return [rng.choice((parity, parity + 2)) for _ in range(count)]


class TestContents(unittest.TestCase):
    """Test cases for content normalization."""

    def test_forms_merge(self):
        """Test that floating forms merge into one."""
        contents = normalize_contents([FormContent(parse_form("()")), FormContent(parse_form("(())"))])
        self.assertEqual(contents, (FormContent(parse_form("(())()")),))

    def test_empty_loop_folds(self):
        """Test that a circle around nothing becomes the form "()"."""
        self.assertEqual(normalize_contents([LoopContent(())]), (FormContent(parse_form("()")),))

    def test_loop_with_element_kept(self):
        """Test that a circle around an element stays a loop."""
        contents = normalize_contents([LoopContent((elem(1),))])
        self.assertEqual(contents, (LoopContent((elem(1),)),))
        self.assertEqual(contents[0].circle_count, 1)


class TestComposition(unittest.TestCase):
    """Test cases for compose."""

    def test_cap_on_cup(self):
        """Test that a cap on a cup closes into one circle."""
        result = compose(cap_matching(), cup_matching())
        self.assertEqual(result.k, 0)
        self.assertEqual(result.contents(0), (FormContent(parse_form("()")),))

    def test_snake(self):
        """Test the snake identity (id x cap)(cup x id) = id."""
        top = tensor(identity_matching(1), cap_matching())
        bottom = tensor(cup_matching(), identity_matching(1))
        self.assertEqual(top.matching.split, (3, 1))
        self.assertEqual(bottom.matching.split, (1, 3))
        result = compose(top, bottom)
        self.assertEqual(result.matching, identity_matching(1))
        self.assertEqual(result.regions, ())

    def test_other_snake(self):
        """Test the mirrored snake identity (cap x id)(id x cup) = id."""
        top = tensor(cap_matching(), identity_matching(1))
        bottom = tensor(identity_matching(1), cup_matching())
        result = compose(top, bottom)
        self.assertEqual(result.matching, identity_matching(1))
        self.assertEqual(result.circle_count, 0)

    def test_identity_is_neutral(self):
        """Test that composing with the identity changes nothing."""
        for m in enumerate_matchings(2, split=(2, 2)):
            x = labelled(m, [0, 1, 2])
            self.assertEqual(compose(x, DecoratedDiagram.bare(identity_matching(2))), x)
            self.assertEqual(compose(DecoratedDiagram.bare(identity_matching(2)), x), x)

    def test_idempotent_loop(self):
        """Test that e e = (one circle) e for the cup-cap diagram e."""
        e = Matching(2, ((1, 2), (3, 4)), (2, 2))
        ee = compose(e, e)
        self.assertEqual(ee.matching, e)
        self.assertEqual(ee.circle_count, 1)

    def test_associative(self):
        """Test (ab)c = a(bc) on labelled endomorphisms of two points."""
        diagrams = [labelled(m, [i, i + 1, i + 2]) for i, m in enumerate(enumerate_matchings(2, split=(2, 2)))]
        for a, b, c in product(diagrams, repeat=3):
            self.assertEqual(compose(compose(a, b), c), compose(a, compose(b, c)))

    def test_chain(self):
        """Test that compose_chain reads bottom to top."""
        result = compose_chain([cup_matching(), cap_matching()])
        self.assertEqual(result.circle_count, 1)

    def test_arity_mismatch(self):
        """Test that incompatible point counts are rejected."""
        with self.assertRaises(DiagramValidationError):
            compose(cap_matching(), identity_matching(1))

    def test_parity_nesting_agrees(self):
        """Test that loop nesting from the middle line agrees with the face forest."""
        for top in enumerate_matchings(3, split=(6, 0)):
            for bottom in enumerate_matchings(3, split=(0, 6)):
                skeleton = composition_plan(top, bottom).skeleton
                self.assertEqual(parity_nesting(top, bottom), skeleton.loop_parents())


class TestTensor(unittest.TestCase):
    """Test cases for the tensor product."""

    def test_split_adds(self):
        """Test that splits add up."""
        left = Matching(2, ((1, 4), (2, 3)), (1, 3))
        right = identity_matching(3)
        self.assertEqual(tensor(left, right).matching.split, (4, 6))

    def test_middle_regions_merge(self):
        """Test that the touching regions pool their contents."""
        left = labelled(identity_matching(1), [0, 1])
        right = labelled(identity_matching(1), [2, 3])
        result = tensor(left, right)
        counts = sorted(len(contents) for _, contents in result.regions)
        self.assertEqual(counts, [1, 1, 2])

    def test_empty_is_unit(self):
        """Test that the empty diagram is a two-sided unit on random labelled strips."""
        rng = random.Random(11)
        unit = DecoratedDiagram.bare(empty_matching())
        for _ in range(200):
            x = random_strip(rng, *same_parity(rng, 2))
            self.assertEqual(tensor(unit, x), x)
            self.assertEqual(tensor(x, unit), x)

    def test_associative_tensor(self):
        """Test (a b) c = a (b c) for the tensor product on random labelled strips."""
        rng = random.Random(12)
        for _ in range(200):
            a, b, c = (random_strip(rng, *same_parity(rng, 2)) for _ in range(3))
            self.assertEqual(tensor(tensor(a, b), c), tensor(a, tensor(b, c)))

    def test_interchange(self):
        """Test (a x b)(c x d) = (a c) x (b d) on random strips."""
        rng = random.Random(13)
        for _ in range(200):
            n1, m1, p1 = same_parity(rng, 3)
            n2, m2, p2 = same_parity(rng, 3)
            c, a = random_strip(rng, n1, m1, False), random_strip(rng, m1, p1, False)
            d, b = random_strip(rng, n2, m2, False), random_strip(rng, m2, p2, False)
            self.assertEqual(compose(tensor(a, b), tensor(c, d)), tensor(compose(a, c), compose(b, d)))

    def test_no_region_zero(self):
        """Test that region 0 is only valid without boundary points."""
        with self.assertRaises(DiagramValidationError):
            DecoratedDiagram(identity_matching(1), ((0, (elem(0),)),))
        self.assertEqual(len(tensor(labelled(cup_matching(), [0, 1]), labelled(cap_matching(), [2, 0])).regions), 3)


class TestClosure(unittest.TestCase):
    """Test cases for closing a disk diagram by an outer diagram."""

    def setUp(self):
        """Set up test fixtures."""
        self.x = Matching(2, ((1, 2), (3, 4)), (0, 4))

    def test_side_by_side_loops(self):
        """Test that infinity in the middle face gives two unnested loops."""
        closure = glue_disk_outer(self.x, OuterMatching(2, ((1, 2), (3, 4)), 2))
        self.assertEqual(len(closure.loops), 2)
        self.assertEqual(closure.loop_count, 2)

    def test_nested_loops(self):
        """Test that infinity inside arc (1,2) nests one loop in the other."""
        closure = glue_disk_outer(self.x, OuterMatching(2, ((1, 2), (3, 4)), 1))
        self.assertEqual(len(closure.loops), 1)
        self.assertEqual(len(closure.loops[0].children), 1)

    def test_labelled_closure(self):
        """Test the closure value structure omega(z1) z2 omega(z3)."""
        x = labelled(self.x, [0, 1, 2])
        closure = glue_disk_outer(x, OuterMatching(2, ((1, 2), (3, 4)), 2))
        expected = normalize_contents([elem(1), LoopContent((elem(0),)), LoopContent((elem(2),))])
        self.assertEqual(closure.canonical_contents(), expected)

    def test_outer_required(self):
        """Test that the second argument must be outer."""
        with self.assertRaises(DiagramValidationError):
            glue_disk_outer(self.x, self.x)

    def test_loop_count_is_cycle_count(self):
        """Test that every closure has one loop per cycle of the two involutions, k <= 4."""
        for k in range(5):
            for x in enumerate_matchings(k):
                for y in enumerate_outer_matchings(k):
                    graph = nx.Graph()
                    graph.add_nodes_from(range(1, 2 * k + 1))
                    graph.add_edges_from(x.arcs + y.arcs)
                    expected = nx.number_connected_components(graph)
                    self.assertEqual(glue_disk_outer(x, y).loop_count, expected, (x, y))

    def test_rotation_invariant(self):
        """Test that rotating both sides by s gives an isomorphic closure, k <= 4."""
        for k in range(5):
            for m in enumerate_matchings(k):
                x = labelled(m, list(range(k + 1)))
                for outer in enumerate_outer_matchings(k):
                    y = labelled(outer, list(range(k + 1, 2 * k + 2)))
                    expected = glue_disk_outer(x, y).canonical_contents()
                    for s in range(1, 2 * k):
                        rotated = glue_disk_outer(rotate(x, s), rotate(y, s))
                        self.assertEqual(rotated.canonical_contents(), expected, (m, outer, s))


class TestSymmetries(unittest.TestCase):
    """Test cases for reflection, rotation and decomposition."""

    def test_reflect_closed(self):
        """Test that reflection fixes closed diagrams up to 7 circles."""
        for c in range(8):
            for u in enumerate_circular_forms(c):
                self.assertEqual(reflect(closed_diagram(u)), closed_diagram(u))

    def test_reflect_anti_homomorphism(self):
        """Test r(ab) = r(b) r(a) on labelled endomorphisms."""
        diagrams = [labelled(m, [0, 1, 2]) for m in enumerate_matchings(2, split=(2, 2))]
        for a, b in product(diagrams, repeat=2):
            self.assertEqual(reflect(compose(a, b)), compose(reflect(b), reflect(a)))

    def test_rotate_identity(self):
        """Test that rotation by 0 and 2k fixes labelled diagrams."""
        for m in enumerate_matchings(3):
            x = labelled(m, [0, 1, 2, 3])
            self.assertEqual(rotate(x, 0), x)
            self.assertEqual(rotate(x, 6), x)

    def test_arc_decompose_form(self):
        """Test that "(())" decomposes to the empty matching and two circles."""
        result = arc_decompose(closed_diagram(parse_form("(())")))
        self.assertEqual(result.matching.k, 0)
        self.assertEqual(result.circle_count, 2)

    def test_arc_decompose_identity(self):
        """Test that a circle beside a strand is counted."""
        x = DecoratedDiagram(identity_matching(1), ((1, (FormContent(parse_form("()")),)),))
        result = arc_decompose(x)
        self.assertEqual(result.matching, identity_matching(1))
        self.assertEqual(result.circle_count, 1)

    def test_boundary_sequence(self):
        """Test boundary sequences of labelled matchings."""
        x = labelled(enumerate_matchings(1)[0], [0, 1])
        self.assertEqual(boundary_sequence(x), (0, 1))
        y = labelled(enumerate_matchings(2)[0], [0, 0, 0])
        self.assertEqual(boundary_sequence(y), (0, 0, 0, 0))

    def test_boundary_sequence_needs_labels(self):
        """Test that unlabelled regions are rejected."""
        with self.assertRaises(DiagramValidationError):
            boundary_sequence(DecoratedDiagram.bare(enumerate_matchings(1)[0]))


if __name__ == '__main__':
    unittest.main()
