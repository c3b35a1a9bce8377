"""
Evaluation of circle diagrams in a circular quadruple.

eval_form is the unital algebra map from circular forms to Z sending disjoint
union to product and wrapping to omega; alpha composes it with the trace.
Pairings close a disk diagram by an outer diagram (or by the reflection of
another disk diagram) and evaluate the result.
"""
import logging
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra import CircularQuadruple
from src.circular_forms import CircularForm, enumerate_circular_forms, forest_of
from src.diagrams import (
    ClosureSkeleton,
    Content,
    DecoratedDiagram,
    ElemContent,
    FormContent,
    LoopContent,
    NestedClosure,
    Node,
    as_decorated,
    closure_lookup,
    closure_skeleton,
    compose,
    outer_of_reflection,
    reflect,
)
from src.errors import AlgebraShapeError, DiagramValidationError, RefusalError

logger = logging.getLogger(__name__)

Vector = Tuple


@dataclass
class EvalContext:
    """
    Evaluation state for one quadruple.

    The memo maps canonical encodings of forms and content lists to their
    values in Z. Inserts are idempotent and guarded by a lock, so a context
    may be shared between threads.
    """

    quadruple: CircularQuadruple
    memo: Dict[str, Vector] = field(default_factory=dict)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def algebra(self):
        return self.quadruple.algebra

    def lookup(self, key: str) -> Optional[Vector]:
        with self.lock:
            return self.memo.get(key)

    def store(self, key: str, value: Vector) -> Vector:
        with self.lock:
            return self.memo.setdefault(key, value)


def eval_form(u: CircularForm, ctx: EvalContext) -> Vector:
    """
    Value of a circular form in Z, innermost circles first.

    Returns:
        coordinate vector in the basis of Z
    """
    key = 'F' + u.encoding
    cached = ctx.lookup(key)
    if cached is not None:
        return cached
    q = ctx.quadruple
    value = q.algebra.product_of([q.apply_omega(eval_form(child, ctx)) for child in u.children])
    return ctx.store(key, value)


def eval_content(content: Content, ctx: EvalContext) -> Vector:
    q = ctx.quadruple
    if isinstance(content, FormContent):
        return eval_form(content.form, ctx)
    if isinstance(content, ElemContent):
        if content.basis is not None:
            return q.algebra.basis_vector(content.basis)
        return q.element(content.coords)
    if isinstance(content, LoopContent):
        return q.apply_omega(eval_contents(content.inner, ctx))
    raise AlgebraShapeError(f"cannot evaluate {content!r}")


def eval_contents(contents: Sequence[Content], ctx: EvalContext) -> Vector:
    """Product of the values of a list of contents."""
    if len(contents) == 1 and isinstance(contents[0], FormContent):
        return eval_form(contents[0].form, ctx)
    key = 'C' + '|'.join(c.sort_key for c in contents)
    cached = ctx.lookup(key)
    if cached is not None:
        return cached
    value = ctx.algebra.product_of([eval_content(c, ctx) for c in contents])
    return ctx.store(key, value)


def eval_skeleton(skeleton: ClosureSkeleton, lookup: Mapping[Node, Sequence[Content]], ctx: EvalContext,
                  face: int = None) -> Vector:
    """Value of a face of a glued picture: its contents times omega of every loop inside it."""
    face = skeleton.roots[0] if face is None else face
    q = ctx.quadruple
    factors = [eval_contents(lookup[node], ctx) for node in skeleton.faces[face] if lookup.get(node)]
    for index in skeleton.children[face]:
        factors.append(q.apply_omega(eval_skeleton(skeleton, lookup, ctx, skeleton.loops[index].inner)))
    return q.algebra.product_of(factors)


ClosedInput = Union[CircularForm, DecoratedDiagram, NestedClosure]


def eval_decorated_closed(u: ClosedInput, ctx: EvalContext) -> Vector:
    """
    Value of a closed picture: each face contributes the product of its
    contents and omega of the value inside each loop it contains.

    Raises:
        DiagramValidationError: if u has boundary points
    """
    if isinstance(u, CircularForm):
        return eval_form(u, ctx)
    if isinstance(u, NestedClosure):
        return eval_contents(u.canonical_contents(), ctx)
    if u.k != 0:
        raise DiagramValidationError(f"diagram with {2 * u.k} boundary points is not closed")
    return eval_contents(u.contents(0), ctx)


def alpha(u: ClosedInput, ctx: EvalContext):
    """Trace of the value of a closed picture."""
    return ctx.quadruple.eps(eval_decorated_closed(u, ctx))


def as_disk(x: Union[DecoratedDiagram, Any]) -> DecoratedDiagram:
    """The same diagram read as a disk diagram (split (0, 2k))."""
    x = as_decorated(x)
    if x.is_outer:
        raise DiagramValidationError("expected a disk diagram, got an outer diagram")
    if x.matching.split == (0, 2 * x.k):
        return x
    return DecoratedDiagram(x.matching.with_split((0, 2 * x.k)), x.regions)


def pair_general(x: DecoratedDiagram, y: DecoratedDiagram, ctx: EvalContext):
    """
    Pairing of a disk diagram with an outer diagram: alpha of the closure.

    Raises:
        DiagramValidationError: on arity mismatch
    """
    x, y = as_disk(x), as_decorated(y)
    if not y.is_outer:
        raise DiagramValidationError("second argument of a general pairing must be an outer diagram")
    skeleton = closure_skeleton(x.matching, y.matching)
    return ctx.quadruple.eps(eval_skeleton(skeleton, closure_lookup(x, y), ctx))


def require_spherical(q: CircularQuadruple) -> None:
    if not q.r_spherical:
        raise RefusalError(f"quadruple {q.name} is not R-spherical; the disk pairing is not symmetric")


def pair_spherical(a: DecoratedDiagram, b: DecoratedDiagram, ctx: EvalContext):
    """
    Symmetric pairing alpha(reflect(b) composed with a) of two disk diagrams.

    Raises:
        RefusalError: if the quadruple is not R-spherical
        DiagramValidationError: on arity mismatch
    """
    require_spherical(ctx.quadruple)
    a, b = as_disk(a), as_disk(b)
    if a.k != b.k:
        raise DiagramValidationError(f"cannot pair {2 * a.k} points with {2 * b.k} points")
    return alpha(compose(reflect(b), a), ctx)


def pair_spherical_closure(a: DecoratedDiagram, b: DecoratedDiagram, ctx: EvalContext):
    """pair_spherical computed by closing a with the outer diagram of b (no refusal check)."""
    a, b = as_disk(a), as_disk(b)
    y = outer_of_reflection(b)
    skeleton = closure_skeleton(a.matching, y.matching)
    return ctx.quadruple.eps(eval_skeleton(skeleton, closure_lookup(a, y), ctx))


@dataclass(frozen=True)
class SeriesTerm:
    """One coefficient of the circular series of a quadruple."""

    encoding: str
    circles: int
    forest_sizes: Tuple[int, ...]
    value: Any


def series_coefficients(q: CircularQuadruple, max_circles: int, ctx: EvalContext = None) -> List[SeriesTerm]:
    """
    alpha(u) for every circular form u with at most max_circles circles.

    Returns:
        SeriesTerm list ordered by circle count, then canonical order
    """
    ctx = ctx or EvalContext(q)
    terms = []
    for c in range(max_circles + 1):
        for u in enumerate_circular_forms(c):
            sizes = tuple(tree.size for tree in forest_of(u))
            terms.append(SeriesTerm(u.encoding, c, sizes, alpha(u, ctx)))
    logger.info(f"Computed {len(terms)} series coefficients of {q.name} up to {max_circles} circles")
    return terms
