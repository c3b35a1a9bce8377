"""
Circular forms: finite collections of disjoint, possibly nested circles in the
plane, up to isotopy.

A circular form is the same thing as a rooted unordered forest: one node per
circle, the parent of a node being the circle immediately enclosing it. A form
is stored as the tuple of interiors of its exterior circles, each interior
being a form again, kept in canonical order so that equal forms are equal
Python values.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Tuple, Union

import networkx as nx

from config.settings import FORM_BOUND
from src.errors import DiagramSyntaxError, check_bound

logger = logging.getLogger(__name__)

EMPTY_SYMBOLS = ('', '∅')

# '(' ranks above ')': keeps "(())" ahead of "()" in descending order
_RANK = str.maketrans('()', '10')


def order_key(encoding: str) -> str:
    """Sort key realizing the canonical total order on encodings."""
    return encoding.translate(_RANK)


@dataclass(frozen=True)
class CircularForm:
    """
    Isotopy class of nested circles in the plane.

    Attributes:
        children: interiors of the exterior circles, in canonical order
    """

    children: Tuple['CircularForm', ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted(self.children, key=lambda c: order_key(c.wrapped_encoding), reverse=True))
        object.__setattr__(self, 'children', ordered)

    @cached_property
    def encoding(self) -> str:
        return ''.join(child.wrapped_encoding for child in self.children)

    @cached_property
    def wrapped_encoding(self) -> str:
        return f"({self.encoding})"

    @cached_property
    def circle_count(self) -> int:
        return sum(1 + child.circle_count for child in self.children)

    @property
    def is_empty(self) -> bool:
        return not self.children

    def union(self, other: 'CircularForm') -> 'CircularForm':
        """Disjoint union (placing the two forms side by side)."""
        return CircularForm(self.children + other.children)

    __mul__ = union

    def wrap(self) -> 'CircularForm':
        return CircularForm((self,))

    def exterior_circles(self) -> Tuple['CircularForm', ...]:
        """The single-exterior-circle components of this form."""
        return tuple(child.wrap() for child in self.children)

    def __str__(self) -> str:
        return self.encoding or '∅'


EMPTY = CircularForm()


@dataclass(frozen=True)
class RootedTree:
    """A rooted tree node with an ordered tuple of child subtrees."""

    children: Tuple['RootedTree', ...] = ()

    @property
    def size(self) -> int:
        return 1 + sum(child.size for child in self.children)


Forest = Tuple[RootedTree, ...]


def parse_form(text: str) -> CircularForm:
    """
    Parse a balanced-parenthesis literal into a circular form.

    Args:
        text: e.g. "(()())", "" or "∅"; whitespace is ignored

    Returns:
        The canonical circular form

    Raises:
        DiagramSyntaxError: on unbalanced nesting or foreign characters
    """
    return circles_of(forest_of(text))


def forest_of(u: Union[str, CircularForm]) -> Forest:
    """
    Build the rooted forest of a nesting expression: one node per circle,
    parent = immediately enclosing circle.

    Args:
        u: a raw nesting string (children kept in written order) or a form
           (children in canonical order)

    Returns:
        Tuple of rooted trees

    Raises:
        DiagramSyntaxError: on unbalanced nesting
    """
    if isinstance(u, CircularForm):
        return tuple(_tree_of(child) for child in u.children)

    text = u.strip()
    if text in EMPTY_SYMBOLS:
        return ()

    stack = [[]]
    for offset, char in enumerate(text):
        if char.isspace():
            continue
        if char == '(':
            stack.append([])
        elif char == ')':
            if len(stack) == 1:
                raise DiagramSyntaxError("unbalanced nesting: unmatched ')'", offset)
            children = stack.pop()
            stack[-1].append(RootedTree(tuple(children)))
        else:
            raise DiagramSyntaxError(f"unexpected character {char!r}", offset)

    if len(stack) != 1:
        raise DiagramSyntaxError("unbalanced nesting: unclosed '('", len(text))
    return tuple(stack[0])


def _tree_of(interior: CircularForm) -> RootedTree:
    return RootedTree(tuple(_tree_of(child) for child in interior.children))


def circles_of(forest: Iterable[RootedTree]) -> CircularForm:
    """Assign to each tree a circle enclosing the circles of its subtrees."""
    return CircularForm(tuple(circles_of(tree.children) for tree in forest))


def canonical_encode(u: CircularForm) -> str:
    """Deterministic encoding; equal forms give equal strings."""
    return u.encoding


def wrap(u: CircularForm) -> CircularForm:
    """Wrap one new circle around the whole of u."""
    return u.wrap()


@lru_cache(maxsize=None)
def _forms_with(c: int) -> frozenset:
    if c == 0:
        return frozenset([EMPTY])
    forms = set()
    # split off one exterior circle with s circles in total
    for s in range(1, c + 1):
        for inner in _forms_with(s - 1):
            head = inner.wrap()
            for rest in _forms_with(c - s):
                forms.add(head.union(rest))
    return frozenset(forms)


def enumerate_circular_forms(c: int, bound: int = FORM_BOUND) -> Tuple[CircularForm, ...]:
    """
    All distinct circular forms with exactly c circles, in canonical order.

    Raises:
        BoundExceededError: when c exceeds the configured bound
    """
    check_bound('circles', c, bound)
    forms = sorted(_forms_with(c), key=lambda f: order_key(f.encoding), reverse=True)
    logger.debug(f"Enumerated {len(forms)} circular forms with {c} circles")
    return tuple(forms)


def enumerate_forms_up_to(max_circles: int, bound: int = FORM_BOUND) -> Tuple[CircularForm, ...]:
    """All circular forms with at most max_circles circles, by circle count."""
    forms = []
    for c in range(max_circles + 1):
        forms.extend(enumerate_circular_forms(c, bound))
    return tuple(forms)


def _nesting_graph(u: CircularForm) -> nx.Graph:
    """Tree on the circles of u plus a virtual node 0 for the infinite face."""
    graph = nx.Graph()
    graph.add_node(0)
    counter = [0]

    def attach(parent: int, interior: CircularForm):
        for child in interior.children:
            counter[0] += 1
            node = counter[0]
            graph.add_edge(parent, node)
            attach(node, child)

    attach(0, u)
    return graph


def _rooted_form(graph: nx.Graph, root: int) -> CircularForm:
    tree = nx.bfs_tree(graph, root)

    def interior(node: int) -> CircularForm:
        return CircularForm(tuple(interior(child) for child in tree.successors(node)))

    return interior(root)


def spherical_canonical(u: CircularForm) -> CircularForm:
    """
    Canonical representative of the class of u under isotopy in the 2-sphere.

    Moving a circle through the point at infinity re-roots the nesting tree,
    so the class is the free tree obtained by adding a node for the infinite
    face. The representative is the re-rooting with minimal encoding.
    """
    if u.is_empty:
        return u
    graph = _nesting_graph(u)
    candidates = (_rooted_form(graph, node) for node in graph.nodes)
    return min(candidates, key=lambda f: order_key(f.encoding))
