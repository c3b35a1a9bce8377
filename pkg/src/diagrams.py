"""
Decorated circle diagrams and their planar assembly.

A decorated diagram is a crossingless matching whose regions carry contents:
circular forms, algebra element references, and circles drawn around further
contents. Composition, tensor product and closure by an outer diagram are all
computed combinatorially:

- faces of the glued picture come from a union-find over the regions of the
  two pieces that share a boundary segment or middle interval;
- closed loops are the cycles of the alternating involutions;
- each loop is an edge between the two faces it separates, and the
  face/loop graph is a forest rooted at the faces touching the outer boundary
  (or at the infinite face), which gives the nesting.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from src.circular_forms import EMPTY, CircularForm, order_key
from src.errors import DiagramValidationError
from src.matchings import (
    Matching,
    OuterMatching,
    reflect_matching,
    reflect_segment,
    rotate_matching,
    rotate_outer,
    rotate_point,
)

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Region contents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormContent:
    """A circular form floating in a region."""

    form: CircularForm

    @property
    def sort_key(self) -> str:
        return 'F' + order_key(self.form.encoding)

    @property
    def circle_count(self) -> int:
        return self.form.circle_count


@dataclass(frozen=True)
class ElemContent:
    """
    An algebra element floating in a region: either a basis vector (0-based
    index) or an explicit coordinate vector of scalar literals.
    """

    basis: Optional[int] = None
    coords: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if (self.basis is None) == (self.coords is None):
            raise DiagramValidationError("element content needs exactly one of basis or coords")
        if self.coords is not None:
            object.__setattr__(self, 'coords', tuple(str(c) for c in self.coords))

    @property
    def sort_key(self) -> str:
        if self.basis is not None:
            return f"Eb{self.basis:04d}"
        return 'Ec' + ','.join(self.coords)

    @property
    def circle_count(self) -> int:
        return 0


@dataclass(frozen=True)
class LoopContent:
    """A circle drawn around further contents."""

    inner: Tuple['Content', ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'inner', normalize_contents(self.inner))

    @property
    def sort_key(self) -> str:
        return 'L[' + '|'.join(c.sort_key for c in self.inner) + ']'

    @property
    def circle_count(self) -> int:
        return 1 + sum(c.circle_count for c in self.inner)


Content = Union[FormContent, ElemContent, LoopContent]


def normalize_contents(contents: Iterable[Content]) -> Tuple[Content, ...]:
    """
    Canonical tuple of contents: all forms merged into one, circles around
    nothing but forms folded into that form, the rest sorted.
    """
    form = EMPTY
    others = []
    for content in contents:
        if isinstance(content, FormContent):
            form = form.union(content.form)
        elif isinstance(content, LoopContent):
            inner = normalize_contents(content.inner)
            if all(isinstance(c, FormContent) for c in inner):
                inside = inner[0].form if inner else EMPTY
                form = form.union(inside.wrap())
            else:
                others.append(LoopContent(inner))
        elif isinstance(content, ElemContent):
            others.append(content)
        else:
            raise DiagramValidationError(f"unknown content {content!r}")
    head = (FormContent(form),) if not form.is_empty else ()
    return head + tuple(sorted(others, key=lambda c: c.sort_key))


def contents_circle_count(contents: Iterable[Content]) -> int:
    return sum(c.circle_count for c in contents)


def released_elements(contents: Iterable[Content]) -> Tuple[ElemContent, ...]:
    """Element contents left behind once every circle is erased."""
    found = []
    for content in contents:
        if isinstance(content, ElemContent):
            found.append(content)
        elif isinstance(content, LoopContent):
            found.extend(released_elements(content.inner))
    return tuple(sorted(found, key=lambda c: c.sort_key))


# ---------------------------------------------------------------------------
# Decorated diagrams
# ---------------------------------------------------------------------------

Arcs = Union[Matching, OuterMatching]


@dataclass(frozen=True)
class DecoratedDiagram:
    """
    A matching (disk or outer) with contents per region.

    Attributes:
        matching: underlying Matching or OuterMatching
        regions: sorted (region index, contents) pairs, empty regions omitted
    """

    matching: Arcs
    regions: Tuple[Tuple[int, Tuple[Content, ...]], ...] = ()

    def __post_init__(self):
        raw = self.regions.items() if isinstance(self.regions, Mapping) else self.regions
        merged: Dict[int, List[Content]] = {}
        for region, contents in raw:
            region = int(region)
            if region not in self.matching.regions:
                raise DiagramValidationError(
                    f"region {region} is not a region of {self.matching} (regions {self.matching.regions})"
                )
            merged.setdefault(region, []).extend(contents)
        normalized = tuple(
            (region, normalize_contents(contents))
            for region, contents in sorted(merged.items())
        )
        object.__setattr__(self, 'regions', tuple((r, c) for r, c in normalized if c))

    @classmethod
    def bare(cls, matching: Arcs) -> 'DecoratedDiagram':
        return cls(matching, ())

    @cached_property
    def region_map(self) -> Dict[int, Tuple[Content, ...]]:
        return dict(self.regions)

    def contents(self, region: int) -> Tuple[Content, ...]:
        return self.region_map.get(region, ())

    @property
    def k(self) -> int:
        return self.matching.k

    @property
    def is_outer(self) -> bool:
        return isinstance(self.matching, OuterMatching)

    @property
    def circle_count(self) -> int:
        return sum(contents_circle_count(c) for _, c in self.regions)

    def __str__(self) -> str:
        parts = []
        for region, contents in self.regions:
            parts.append(f"{region}:[{' '.join(c.sort_key for c in contents)}]")
        return f"{self.matching} {' '.join(parts)}".strip()


def closed_diagram(form: CircularForm) -> DecoratedDiagram:
    """The closed diagram 0 -> 0 holding a circular form."""
    return DecoratedDiagram(Matching(0, (), (0, 0)), ((0, (FormContent(form),)),))


def decorated(matching: Arcs, labels: Mapping[int, Sequence[Content]] = None) -> DecoratedDiagram:
    return DecoratedDiagram(matching, tuple((labels or {}).items()))


# ---------------------------------------------------------------------------
# Closure skeletons
# ---------------------------------------------------------------------------

Node = Tuple[str, int]


@dataclass(frozen=True)
class LoopRecord:
    """A closed loop of a glued picture: its points, outside face and inside face."""

    points: Tuple[int, ...]
    outer: int
    inner: int


@dataclass(frozen=True)
class ClosureSkeleton:
    """
    Face and nesting structure of a glued picture, independent of contents.

    Attributes:
        faces: for each face, the source regions (side, region) merged into it
        loops: closed loops with their outside and inside faces
        roots: faces touching the outer boundary, in a fixed order
    """

    faces: Tuple[Tuple[Node, ...], ...]
    loops: Tuple[LoopRecord, ...]
    roots: Tuple[int, ...]

    @cached_property
    def children(self) -> Tuple[Tuple[int, ...], ...]:
        """children[f] lists the loops whose outside face is f."""
        table: List[List[int]] = [[] for _ in self.faces]
        for index, loop in enumerate(self.loops):
            table[loop.outer].append(index)
        return tuple(tuple(t) for t in table)

    @cached_property
    def face_of_node(self) -> Dict[Node, int]:
        return {node: face for face, nodes in enumerate(self.faces) for node in nodes}

    @property
    def loop_count(self) -> int:
        return len(self.loops)

    def loop_parents(self) -> Dict[Tuple[int, ...], Optional[Tuple[int, ...]]]:
        """Immediately enclosing loop of each loop (None at top level)."""
        inside = {loop.inner: loop.points for loop in self.loops}
        return {loop.points: inside.get(loop.outer) for loop in self.loops}

    def package(self, face: int, lookup: Mapping[Node, Tuple[Content, ...]]) -> Tuple[Content, ...]:
        """Contents of a face with every loop inside it wrapped recursively."""
        own = [c for node in self.faces[face] for c in lookup.get(node, ())]
        for index in self.children[face]:
            own.append(LoopContent(self.package(self.loops[index].inner, lookup)))
        return normalize_contents(own)

    def nested(self, face: int, lookup: Mapping[Node, Tuple[Content, ...]]) -> 'NestedClosure':
        own = tuple(c for node in self.faces[face] for c in lookup.get(node, ()))
        return NestedClosure(own, tuple(self._loop(i, lookup) for i in self.children[face]))

    def _loop(self, index: int, lookup: Mapping[Node, Tuple[Content, ...]]) -> 'Loop':
        face = self.loops[index].inner
        own = tuple(c for node in self.faces[face] for c in lookup.get(node, ()))
        return Loop(own, tuple(self._loop(i, lookup) for i in self.children[face]))


def build_skeleton(
    nodes: Iterable[Node],
    glued: Iterable[Tuple[Node, Node]],
    loop_edges: Iterable[Tuple[Tuple[int, ...], Node, Node]],
    root_nodes: Sequence[Node],
) -> ClosureSkeleton:
    """
    Assemble faces and nesting from glued regions and loop adjacencies.

    Args:
        nodes: every source region
        glued: pairs of source regions sharing a segment
        loop_edges: (loop points, region on one side, region on the other side)
        root_nodes: source regions of the faces touching the outer boundary

    Returns:
        ClosureSkeleton

    Raises:
        DiagramValidationError: if the face/loop graph is not a forest rooted at the boundary
    """
    uf = UnionFind()
    nodes = list(nodes)
    for node in nodes:
        uf[node]
    for a, b in glued:
        uf.union(a, b)

    groups = sorted((tuple(sorted(group)) for group in uf.to_sets()), key=lambda g: g[0])
    face_of = {node: face for face, group in enumerate(groups) for node in group}

    graph = nx.Graph()
    graph.add_nodes_from(range(len(groups)))
    loop_points = []
    for points, a, b in loop_edges:
        fa, fb = face_of[a], face_of[b]
        if fa == fb or graph.has_edge(fa, fb):
            raise DiagramValidationError(f"loop {points} does not separate two faces")
        graph.add_edge(fa, fb, loop=len(loop_points))
        loop_points.append(tuple(points))

    roots = []
    for node in root_nodes:
        if face_of[node] not in roots:
            roots.append(face_of[node])

    loops: List[Optional[LoopRecord]] = [None] * len(loop_points)
    reached = set(roots)
    for root in roots:
        for outer, inner in nx.bfs_edges(graph, root):
            if inner in reached:
                raise DiagramValidationError("two boundary faces are joined by loops")
            reached.add(inner)
            index = graph.edges[outer, inner]['loop']
            loops[index] = LoopRecord(loop_points[index], outer, inner)
    if len(reached) != len(groups):
        raise DiagramValidationError("face not reachable from the boundary")

    return ClosureSkeleton(tuple(groups), tuple(loops), tuple(roots))


# ---------------------------------------------------------------------------
# Closure of a disk diagram by an outer diagram
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Loop:
    """A loop of a closure: the contents of its inside face and the loops nested in it."""

    contents: Tuple[Content, ...]
    children: Tuple['Loop', ...] = ()

    def as_content(self) -> LoopContent:
        return LoopContent(self.contents + tuple(child.as_content() for child in self.children))

    @property
    def loop_count(self) -> int:
        return 1 + sum(child.loop_count for child in self.children)


@dataclass(frozen=True)
class NestedClosure:
    """
    Rooted nesting structure of a closed picture.

    Attributes:
        root_contents: contents of the infinite face
        loops: top-level loops, each with its nested loops
    """

    root_contents: Tuple[Content, ...]
    loops: Tuple[Loop, ...] = ()

    @property
    def loop_count(self) -> int:
        return sum(loop.loop_count for loop in self.loops)

    def canonical_contents(self) -> Tuple[Content, ...]:
        """Isomorphism-invariant description of the whole closure."""
        return normalize_contents(self.root_contents + tuple(loop.as_content() for loop in self.loops))


def as_decorated(x: Union[DecoratedDiagram, Arcs]) -> DecoratedDiagram:
    return x if isinstance(x, DecoratedDiagram) else DecoratedDiagram.bare(x)


@lru_cache(maxsize=None)
def closure_skeleton(inner: Matching, outer: OuterMatching) -> ClosureSkeleton:
    """
    Skeleton of the closure of a disk matching by an outer matching.

    Sides are 'X' (disk) and 'Y' (outer); the root is the infinite face.
    """
    if inner.k != outer.k:
        raise DiagramValidationError(f"cannot glue {2 * inner.k} disk points to {2 * outer.k} outer points")
    k = inner.k
    nodes = [('X', r) for r in inner.regions] + [('Y', r) for r in outer.regions]
    if k == 0:
        return build_skeleton(nodes, [(('X', 0), ('Y', 0))], [], [('Y', 0)])

    glued = [(('X', inner.region_of_segment(s)), ('Y', outer.region_of_segment(s))) for s in range(1, 2 * k + 1)]

    loop_edges = []
    seen = set()
    for start in range(1, 2 * k + 1):
        if start in seen:
            continue
        points, p = [], start
        while p not in seen:
            seen.add(p)
            points.append(p)
            q = inner.partner[p]
            seen.add(q)
            points.append(q)
            p = outer.partner[q]
        # point j separates segment j-1 from segment j
        j = points[0]
        loop_edges.append((tuple(sorted(points)), ('X', inner.region_of_segment(j - 1)), ('X', inner.region_of_segment(j))))

    return build_skeleton(nodes, glued, loop_edges, [('Y', outer.infinity_face)])


def glue_disk_outer(x: Union[DecoratedDiagram, Matching], y: Union[DecoratedDiagram, OuterMatching]) -> NestedClosure:
    """
    Close a disk diagram x by an outer diagram y.

    Args:
        x: decorated disk diagram on 2k points
        y: decorated outer diagram on 2k points

    Returns:
        NestedClosure rooted at the infinite face of y

    Raises:
        DiagramValidationError: on arity mismatch or an outer diagram that is not outer
    """
    x, y = as_decorated(x), as_decorated(y)
    if not y.is_outer:
        raise DiagramValidationError("second argument must be an outer diagram")
    if x.is_outer:
        raise DiagramValidationError("first argument must be a disk diagram")
    skeleton = closure_skeleton(x.matching.with_split((0, 2 * x.k)), y.matching)
    lookup = closure_lookup(x, y)
    return skeleton.nested(skeleton.roots[0], lookup)


def closure_lookup(x: DecoratedDiagram, y: DecoratedDiagram) -> Dict[Node, Tuple[Content, ...]]:
    lookup = {('X', r): c for r, c in x.regions}
    lookup.update({('Y', r): c for r, c in y.regions})
    return lookup


def outer_of_reflection(b: Union[DecoratedDiagram, Matching]) -> DecoratedDiagram:
    """
    The outer diagram through which a disk diagram b closes another disk
    diagram a into the reflection of b composed with a.
    """
    b = as_decorated(b)
    m = b.matching
    outer = OuterMatching(m.k, m.arcs, m.marker_region)
    return DecoratedDiagram(outer, b.regions)


# ---------------------------------------------------------------------------
# Composition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompositionPlan:
    """Result matching of a composition plus the skeleton placing its contents."""

    matching: Matching
    skeleton: ClosureSkeleton
    region_faces: Tuple[Tuple[int, int], ...]


@lru_cache(maxsize=None)
def composition_plan(top: Matching, bottom: Matching) -> CompositionPlan:
    """
    Stack top (m -> p) on bottom (n -> m).

    Middle position j (1..m, left to right) is bottom point n+m+1-j and top
    point j. Middle interval i (0..m) is bottom segment n+m-i and top segment i.
    """
    n, m = bottom.split
    if top.split[0] != m:
        raise DiagramValidationError(f"cannot compose {top.split[0]}-point source with {m}-point target")
    p = top.split[1]

    def b_point(j: int) -> int:
        return n + m + 1 - j

    # through arcs
    visited = set()
    result_partner: Dict[int, int] = {}
    for r in range(1, n + p + 1):
        if r in result_partner:
            continue
        side, v = ('B', r) if r <= n else ('T', m + r - n)
        while True:
            if side == 'B':
                w = bottom.partner[v]
                if w <= n:
                    end = w
                    break
                j = n + m + 1 - w
                visited.add(j)
                side, v = 'T', j
            else:
                w = top.partner[v]
                if w > m:
                    end = n + w - m
                    break
                visited.add(w)
                side, v = 'B', b_point(w)
        result_partner[r] = end
        result_partner[end] = r

    result = Matching((n + p) // 2, tuple((a, b) for a, b in result_partner.items() if a < b), (n, p))

    def b_node(i: int) -> Node:
        return ('B', bottom.region_of_segment(n + m - i))

    nodes = [('B', r) for r in bottom.regions] + [('T', r) for r in top.regions]
    glued = [(b_node(i), ('T', top.region_of_segment(i))) for i in range(m + 1)]

    loop_edges = []
    for start in range(1, m + 1):
        if start in visited:
            continue
        points, j = [], start
        while j not in visited:
            visited.add(j)
            points.append(j)
            j2 = top.partner[j]
            visited.add(j2)
            points.append(j2)
            j = n + m + 1 - bottom.partner[b_point(j2)]
        loop_edges.append((tuple(sorted(points)), b_node(start - 1), b_node(start)))

    def result_node(s: int) -> Node:
        if s <= n:
            return ('B', bottom.region_of_segment(s))
        return ('T', top.region_of_segment(m + s - n))

    if n + p == 0:
        roots = [b_node(0)]
        region_nodes = [(0, b_node(0))]
    else:
        region_nodes = []
        for region in result.regions:
            region_nodes.append((region, result_node(region)))
        roots = [node for _, node in region_nodes]

    skeleton = build_skeleton(nodes, glued, loop_edges, roots)
    region_faces = tuple((region, skeleton.face_of_node[node]) for region, node in region_nodes)
    return CompositionPlan(result, skeleton, region_faces)


def compose(top: Union[DecoratedDiagram, Matching], bottom: Union[DecoratedDiagram, Matching]) -> DecoratedDiagram:
    """
    Stack top (m -> p) on bottom (n -> m), giving a diagram n -> p.

    Loops closed at the middle line become circles placed in the right
    result region, carrying the contents of their inside faces.

    Raises:
        DiagramValidationError: on arity mismatch
    """
    top, bottom = as_decorated(top), as_decorated(bottom)
    plan = composition_plan(top.matching, bottom.matching)
    lookup = {('B', r): c for r, c in bottom.regions}
    lookup.update({('T', r): c for r, c in top.regions})
    regions = tuple((region, plan.skeleton.package(face, lookup)) for region, face in plan.region_faces)
    return DecoratedDiagram(plan.matching, regions)


def compose_chain(diagrams: Sequence[Union[DecoratedDiagram, Matching]]) -> DecoratedDiagram:
    """Compose a chain listed from bottom to top."""
    result = as_decorated(diagrams[0])
    for diagram in diagrams[1:]:
        result = compose(diagram, result)
    return result


def parity_nesting(top: Matching, bottom: Matching) -> Dict[Tuple[int, ...], Optional[Tuple[int, ...]]]:
    """
    Nesting of the loops of a composition read off the middle line alone:
    position q lies inside loop L iff an odd number of L's middle positions
    are left of q.
    """
    plan = composition_plan(top, bottom)
    loops = [loop.points for loop in plan.skeleton.loops]

    def inside(q: int, loop: Tuple[int, ...]) -> bool:
        return sum(1 for j in loop if j < q) % 2 == 1

    containers = {
        loop: [other for other in loops if other != loop and inside(loop[0], other)]
        for loop in loops
    }
    parents = {}
    for loop, outer in containers.items():
        parents[loop] = max(outer, key=lambda o: len(containers[o])) if outer else None
    return parents


# ---------------------------------------------------------------------------
# Tensor product, reflection, rotation
# ---------------------------------------------------------------------------

def tensor(left: Union[DecoratedDiagram, Matching], right: Union[DecoratedDiagram, Matching]) -> DecoratedDiagram:
    """
    Place two strip diagrams side by side.

    The rightmost region of left and the leftmost region of right merge and
    pool their contents.
    """
    left, right = as_decorated(left), as_decorated(right)
    a, b = left.matching, right.matching
    n1, m1 = a.split
    n2, m2 = b.split
    n = n1 + n2
    size = n + m1 + m2

    def place(side: str, i: int) -> int:
        if side == 'L':
            return i if i <= n1 else n + m2 + (i - n1)
        return n1 + i if i <= n2 else n + (i - n2)

    arcs = [(place('L', x), place('L', y)) for x, y in a.arcs]
    arcs += [(place('R', x), place('R', y)) for x, y in b.arcs]
    result = Matching(size // 2, tuple(arcs), (n, m1 + m2))

    origin: Dict[int, Tuple[str, int]] = {}
    for i in range(1, a.size + 1):
        origin[place('L', i)] = ('L', i)
    for i in range(1, b.size + 1):
        origin[place('R', i)] = ('R', i)

    uf = UnionFind()
    for r in a.regions:
        uf[('L', r)]
    for r in b.regions:
        uf[('R', r)]
    uf.union(('L', a.region_of_segment(n1)), ('R', b.region_of_segment(b.size)))

    pooled: Dict[Node, List[Content]] = {}
    for r, contents in left.regions:
        pooled.setdefault(uf[('L', r)], []).extend(contents)
    for r, contents in right.regions:
        pooled.setdefault(uf[('R', r)], []).extend(contents)

    if size == 0:
        all_contents = [c for contents in pooled.values() for c in contents]
        return DecoratedDiagram(result, ((0, tuple(all_contents)),))

    regions = []
    for region in result.regions:
        side, i = origin[region]
        source = a if side == 'L' else b
        key = uf[(side, source.region_of_segment(i))]
        regions.append((region, tuple(pooled.get(key, ()))))
    return DecoratedDiagram(result, tuple(regions))


def reflect(x: Union[DecoratedDiagram, Matching]) -> Union[DecoratedDiagram, Matching]:
    """Horizontal reflection; contents follow their regions."""
    if isinstance(x, Matching):
        return reflect_matching(x)
    m = x.matching
    image = reflect_matching(m)
    regions = tuple(
        (image.region_of_segment(reflect_segment(m.k, region)) if m.k else 0, contents)
        for region, contents in x.regions
    )
    return DecoratedDiagram(image, regions)


def rotate(x: Union[DecoratedDiagram, Matching, OuterMatching], s: int):
    """
    Cyclic relabelling of boundary points i -> i+s (mod 2k); the marker stays
    on segment 2k, so region contents move with their segments.
    """
    if isinstance(x, Matching):
        return rotate_matching(x, s)
    if isinstance(x, OuterMatching):
        return rotate_outer(x, s)
    m = x.matching
    if m.k == 0:
        return x
    image = rotate_outer(m, s) if x.is_outer else rotate_matching(m, s)
    regions = tuple(
        (image.region_of_segment(rotate_point(m.k, region, s)), contents)
        for region, contents in x.regions
    )
    return DecoratedDiagram(image, regions)


# ---------------------------------------------------------------------------
# Forgetting and reading labels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcDecomposition:
    """Underlying matching, total number of circles, and the elements left behind."""

    matching: Matching
    circle_count: int
    contents: Tuple[Tuple[int, Tuple[ElemContent, ...]], ...] = field(default=())


def arc_decompose(u: DecoratedDiagram) -> ArcDecomposition:
    """Remove every circle from u, counting them."""
    stripped = tuple(
        (region, released_elements(contents))
        for region, contents in u.regions
        if released_elements(contents)
    )
    return ArcDecomposition(u.matching, u.circle_count, stripped)


def boundary_sequence(x: DecoratedDiagram) -> Tuple[int, ...]:
    """
    Basis index (0-based) seen by each boundary segment 1..2k.

    Raises:
        DiagramValidationError: if a region does not carry exactly one basis label
    """
    labels = {}
    for region in x.matching.regions:
        contents = x.contents(region)
        if len(contents) != 1 or not isinstance(contents[0], ElemContent) or contents[0].basis is None:
            raise DiagramValidationError(f"region {region} does not carry a single basis label")
        labels[region] = contents[0].basis
    m = x.matching
    return tuple(labels[m.region_of_segment(s)] for s in range(1, m.size + 1))


def labelled(matching: Arcs, labels: Sequence[int]) -> DecoratedDiagram:
    """Diagram carrying basis label labels[i] in the i-th region (regions in increasing order)."""
    regions = matching.regions
    if len(labels) != len(regions):
        raise DiagramValidationError(f"{len(labels)} labels for {len(regions)} regions")
    return DecoratedDiagram(matching, tuple((r, (ElemContent(basis=b),)) for r, b in zip(regions, labels)))
