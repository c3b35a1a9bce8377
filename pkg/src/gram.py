"""
Spanning sets, Gram matrices and state spaces.

The state space A(k) is spanned by crossingless matchings of 2k points with
one label per region; its dimension is the rank of the pairing matrix of that
spanning set against outer diagrams (general mode) or against itself through
reflection (spherical mode, R-spherical quadruples only).
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains.domain import Domain

from config.settings import CROSS_BLOCK_CHECK_MAX, GRAM_BOUND, SYMBOLIC_DET_MAX_SIZE
from src.algebra import CircularQuadruple, omega_generated_subalgebra, pairing_radical
from src.circular_forms import enumerate_forms_up_to
from src.diagrams import DecoratedDiagram, ElemContent, labelled
from src.errors import RefusalError, check_bound
from src.evaluation import (
    EvalContext,
    eval_form,
    pair_general,
    pair_spherical_closure,
    require_spherical,
)
from src.linalg import bareiss_det, rank, rank_kernel
from src.matchings import catalan, enumerate_matchings, enumerate_outer_matchings
from src.scalars import format_scalar, is_polynomial_domain

logger = logging.getLogger(__name__)

MODES = ('spherical', 'general')


@dataclass(frozen=True)
class SpanningSet:
    """
    Labelled matchings spanning a state space (disk) or its closures (outer).

    Attributes:
        k: half the number of boundary points
        mode: 'disk' or 'outer'
        items: matchings in enumeration order, labelings in lexicographic order
        labels: the label alphabet placed in regions
    """

    k: int
    mode: str
    items: Tuple[DecoratedDiagram, ...]
    labels: Tuple[ElemContent, ...]

    def __len__(self) -> int:
        return len(self.items)


def describe_label(label: ElemContent) -> str:
    if label.basis is not None:
        return str(label.basis + 1)
    return '(' + ','.join(label.coords) + ')'


def describe_item(item: DecoratedDiagram) -> str:
    arcs = ''.join(f"({a},{b})" for a, b in item.matching.arcs) or '()'
    labels = ','.join(describe_label(c) for _, contents in item.regions for c in contents)
    inf = f"@{item.matching.infinity_face}" if item.is_outer else ''
    return f"{arcs}{inf}[{labels}]"


def basis_labels(q: CircularQuadruple) -> Tuple[ElemContent, ...]:
    return tuple(ElemContent(basis=i) for i in range(q.dim))


def subalgebra_labels(q: CircularQuadruple) -> Tuple[ElemContent, ...]:
    """Labels spanning the omega-generated subalgebra Z'."""
    sub = omega_generated_subalgebra(q)
    if sub.surjective:
        return basis_labels(q)
    return tuple(ElemContent(coords=tuple(q.format_element(v))) for v in sub.basis)


def spanning_set(
    k: int,
    q: CircularQuadruple,
    mode: str = 'disk',
    labels: Sequence[ElemContent] = None,
    split: Tuple[int, int] = None,
    bound: int = GRAM_BOUND,
) -> SpanningSet:
    """
    All matchings of 2k points with every assignment of labels to regions.

    Args:
        k: half the number of boundary points
        q: quadruple whose basis supplies the default labels
        mode: 'disk' or 'outer'
        labels: label alphabet, defaults to the basis of Z
        split: strip presentation of the disk matchings
        bound: largest accepted k

    Raises:
        BoundExceededError: when k exceeds the bound
    """
    check_bound('k', k, bound)
    labels = tuple(labels) if labels is not None else basis_labels(q)
    if mode == 'disk':
        matchings = enumerate_matchings(k, split)
    elif mode == 'outer':
        matchings = enumerate_outer_matchings(k)
    else:
        raise RefusalError(f"unknown spanning set mode {mode!r}")

    items = []
    for m in matchings:
        for assignment in product(labels, repeat=len(m.regions)):
            regions = tuple((r, (label,)) for r, label in zip(m.regions, assignment))
            items.append(DecoratedDiagram(m, regions))
    logger.debug(f"Spanning set k={k} mode={mode}: {len(items)} items")
    return SpanningSet(k, mode, tuple(items), labels)


@dataclass
class GramReport:
    """
    Pairing matrix with its exact invariants.

    Attributes:
        domain: scalar domain of the entries
        matrix: entries, rows by columns
        row_index / col_index: descriptors of the spanning items
        rank: rank over a field (None over a polynomial ring)
        kernel_basis: left kernel basis over a field
        determinant: for square matrices (None when too large to expand symbolically)
    """

    domain: Domain
    matrix: List[List[Any]]
    row_index: List[str]
    col_index: List[str]
    rank: Optional[int] = None
    kernel_basis: List[Tuple] = field(default_factory=list)
    determinant: Any = None
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    @property
    def is_square(self) -> bool:
        return self.shape[0] == self.shape[1]

    def is_symmetric(self) -> bool:
        n = self.shape[0]
        return self.is_square and all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(i))

    def to_dict(self, include_matrix: bool = True) -> Dict[str, Any]:
        K = self.domain
        out: Dict[str, Any] = {'rows': self.shape[0], 'cols': self.shape[1]}
        if self.rank is not None:
            out['rank'] = self.rank
            out['kernel_dim'] = len(self.kernel_basis)
        if self.is_square:
            out['det'] = None if self.determinant is None else format_scalar(K, self.determinant)
        if include_matrix:
            out['row_index'] = list(self.row_index)
            out['col_index'] = list(self.col_index)
            out['matrix'] = [[format_scalar(K, x) for x in row] for row in self.matrix]
        if self.notes:
            out['notes'] = dict(self.notes)
        return out


def analyze(report: GramReport, with_kernel: bool = True) -> GramReport:
    """Fill in rank, kernel and determinant as far as the domain allows."""
    K = report.domain
    nrows, ncols = report.shape
    if K.is_Field:
        if with_kernel:
            report.rank, report.kernel_basis = rank_kernel(report.matrix, K, ncols)
        else:
            report.rank = rank(report.matrix, K)
    if report.is_square:
        if is_polynomial_domain(K) and nrows > SYMBOLIC_DET_MAX_SIZE:
            report.notes['det'] = f"not expanded: size {nrows} exceeds {SYMBOLIC_DET_MAX_SIZE}"
        else:
            report.determinant = bareiss_det(report.matrix, K)
    return report


EntryFn = Callable[[DecoratedDiagram, DecoratedDiagram, EvalContext], Any]


def compute_entries(
    rows: Sequence[DecoratedDiagram],
    cols: Sequence[DecoratedDiagram],
    entry: EntryFn,
    q: CircularQuadruple,
    jobs: int = 1,
) -> List[List[Any]]:
    """
    Evaluate entry(row, col) for every pair.

    With jobs > 1 the rows are split into chunks mapped over a thread pool,
    each chunk with its own EvalContext; assembly stays in this thread.
    """
    def run(chunk: Sequence[DecoratedDiagram]) -> List[List[Any]]:
        ctx = EvalContext(q)
        return [[entry(x, y, ctx) for y in cols] for x in chunk]

    if jobs <= 1 or len(rows) < 2:
        return run(rows)
    size = -(-len(rows) // jobs)
    chunks = [rows[i:i + size] for i in range(0, len(rows), size)]
    with ThreadPoolExecutor(max_workers=jobs) as executor:
        parts = list(executor.map(run, chunks))
    return [row for part in parts for row in part]


def gram_matrix(
    k: int,
    q: CircularQuadruple,
    mode: str = 'spherical',
    jobs: int = 1,
    labels: Sequence[ElemContent] = None,
    split: Tuple[int, int] = None,
    with_kernel: bool = True,
) -> GramReport:
    """
    Gram matrix of the disk spanning set.

    spherical: square symmetric matrix of pair_spherical on disk diagrams.
    general: disk diagrams against outer diagrams by pair_general.

    Raises:
        RefusalError: spherical mode on a quadruple that is not R-spherical
    """
    if mode not in MODES:
        raise RefusalError(f"unknown Gram mode {mode!r}")
    disk = spanning_set(k, q, 'disk', labels, split)
    if mode == 'spherical':
        require_spherical(q)
        cols, entry = disk.items, pair_spherical_closure
    else:
        cols, entry = spanning_set(k, q, 'outer', labels).items, pair_general

    logger.info(f"[GRAM] Gram matrix k={k} mode={mode} for {q.name}: {len(disk)} x {len(cols)}")
    matrix = compute_entries(disk.items, cols, entry, q, jobs)
    report = GramReport(q.domain, matrix, [describe_item(x) for x in disk.items], [describe_item(y) for y in cols])
    analyze(report, with_kernel)
    logger.info(f"[GRAM] k={k} mode={mode}: rank={report.rank}")
    return report


# ---------------------------------------------------------------------------
# Block decomposition
# ---------------------------------------------------------------------------

def sequence_label(seq: Sequence[int]) -> str:
    """1-based digit string of a boundary sequence."""
    return ''.join(str(i + 1) for i in seq)


def parse_sequence(text: str) -> Tuple[int, ...]:
    return tuple(int(ch) - 1 for ch in text)


def block_items(k: int, seq: Sequence[int]) -> List[DecoratedDiagram]:
    """Labelled matchings whose boundary segments read seq (0-based labels)."""
    if k < 1 or len(seq) != 2 * k:
        raise RefusalError(f"sequence of length {len(seq)} for {2 * k} segments")
    items = []
    for m in enumerate_matchings(k):
        labels = []
        for region in m.regions:
            seen = {seq[s - 1] for s in m.region_segments(region)}
            if len(seen) != 1:
                break
            labels.append(seen.pop())
        else:
            items.append(labelled(m, labels))
    return items


def block_entries(items: Sequence[DecoratedDiagram], q: CircularQuadruple, jobs: int = 1) -> List[List[Any]]:
    return compute_entries(items, items, pair_spherical_closure, q, jobs)


@dataclass
class BlockDecomposition:
    """Gram blocks keyed by boundary sequence."""

    k: int
    blocks: Dict[str, GramReport]
    total_items: int
    cross_block_verified: Optional[bool]

    def to_dict(self, include_matrix: bool = False) -> Dict[str, Any]:
        return {
            'k': self.k,
            'total_items': self.total_items,
            'cross_block_verified': self.cross_block_verified,
            'blocks': [dict(seq=seq, size=r.shape[0], **r.to_dict(include_matrix)) for seq, r in self.blocks.items()],
        }


def require_block_structure(q: CircularQuadruple) -> None:
    if not q.algebra.idempotent_basis:
        raise RefusalError(f"quadruple {q.name} has no idempotent basis; blocks are not defined")
    require_spherical(q)


def gram_block(k: int, q: CircularQuadruple, seq: Sequence[int], jobs: int = 1) -> GramReport:
    """Block of the spherical Gram matrix for one boundary sequence."""
    require_block_structure(q)
    items = block_items(k, seq)
    matrix = block_entries(items, q, jobs)
    names = [describe_item(x) for x in items]
    return analyze(GramReport(q.domain, matrix, names, list(names)))


def gram_blocks(k: int, q: CircularQuadruple, jobs: int = 1, sequences: Sequence[Sequence[int]] = None) -> BlockDecomposition:
    """
    Spherical Gram matrix split into blocks by boundary sequence.

    Empty blocks are kept with determinant 1. Cross-block entries are
    evaluated and checked to vanish when the whole spanning set has at most
    CROSS_BLOCK_CHECK_MAX items.

    Raises:
        RefusalError: non-idempotent basis or non-R-spherical quadruple
    """
    require_block_structure(q)
    check_bound('k', k, GRAM_BOUND)
    if sequences is None:
        sequences = list(product(range(q.dim), repeat=2 * k))

    blocks: Dict[str, GramReport] = {}
    members: Dict[str, List[DecoratedDiagram]] = {}
    for seq in sequences:
        label = sequence_label(seq)
        items = block_items(k, seq)
        members[label] = items
        matrix = block_entries(items, q, jobs)
        names = [describe_item(x) for x in items]
        blocks[label] = analyze(GramReport(q.domain, matrix, names, list(names)))
        logger.debug(f"[GRAM] block {label}: size {len(items)}")

    total = sum(len(items) for items in members.values())
    verified = None
    if total <= CROSS_BLOCK_CHECK_MAX and len(sequences) == q.dim ** (2 * k):
        ctx = EvalContext(q)
        K = q.domain
        verified = all(
            pair_spherical_closure(x, y, ctx) == K.zero
            for a, xs in members.items() for b, ys in members.items() if a != b
            for x in xs for y in ys
        )
    logger.info(f"[GRAM] {len(blocks)} blocks for k={k}, {total} items, cross-block zero: {verified}")
    return BlockDecomposition(k, blocks, total, verified)


# ---------------------------------------------------------------------------
# Dimensions
# ---------------------------------------------------------------------------

def _require_numeric(q: CircularQuadruple) -> None:
    if not q.is_numeric:
        raise RefusalError(f"state space dimensions need numeric parameters; {q.name} is symbolic")


def default_mode(q: CircularQuadruple) -> str:
    return 'spherical' if q.r_spherical else 'general'


def state_dim(k: int, q: CircularQuadruple, mode: str = None, jobs: int = 1) -> int:
    """
    Dimension of the state space A(k).

    A(0) comes from the pairing radical; for k >= 1 it is the rank of the
    Gram matrix of matchings labelled by a basis of the omega-generated
    subalgebra.

    Raises:
        RefusalError: for symbolic quadruples, or spherical mode when not R-spherical
    """
    _require_numeric(q)
    if k == 0:
        return pairing_radical(q).a0_dim
    mode = mode or default_mode(q)
    report = gram_matrix(k, q, mode, jobs, labels=subalgebra_labels(q), with_kernel=False)
    return report.rank


def hom_dim(n: int, m: int, q: CircularQuadruple, jobs: int = 1) -> int:
    """Dimension of Hom(n, m) in the negligible quotient, by bending to a disk."""
    if (n + m) % 2:
        return 0
    return state_dim((n + m) // 2, q, jobs=jobs)


def skein_hom_dim(n: int, m: int, q: CircularQuadruple) -> int:
    """Dimension of Hom(n, m) in the skein category over A(0): Catalan(k) * dim A(0)^(k+1)."""
    if (n + m) % 2:
        return 0
    _require_numeric(q)
    k = (n + m) // 2
    return catalan(k) * pairing_radical(q).a0_dim ** (k + 1)


def closed_gram_rank(q: CircularQuadruple, max_circles: int) -> int:
    """
    Rank of the pairing between closed circular forms and annular closures,
    both with at most max_circles circles.

    An annular closure is a chain of forms v0, v1, ..., vr separated by r
    circles around the hole; it pairs with x as
    eps(v0 omega(v1 omega(... omega(vr x)))).
    """
    _require_numeric(q)
    ctx = EvalContext(q)
    A, K = q.algebra, q.domain
    forms = enumerate_forms_up_to(max_circles)
    values = {u.encoding: (u.circle_count, eval_form(u, ctx)) for u in forms}

    # a functional is its covector on Z; wrapping one more circle precomposes with omega and m_v
    covectors: Dict[Tuple, int] = {}
    frontier = []
    for circles, v in values.values():
        c = tuple(q.eps(A.multiply(v, A.basis_vector(j))) for j in range(q.dim))
        if c not in covectors or covectors[c] > circles:
            covectors[c] = circles
            frontier.append((c, circles))
    while frontier:
        grown = []
        for c, used in frontier:
            for circles, v in values.values():
                total = used + 1 + circles
                if total > max_circles:
                    continue
                new = tuple(
                    sum((c[i] * x for i, x in enumerate(q.apply_omega(A.multiply(v, A.basis_vector(j))))), K.zero)
                    for j in range(q.dim)
                )
                if new not in covectors or covectors[new] > total:
                    covectors[new] = total
                    grown.append((new, total))
        frontier = grown

    rows = [[sum((c[i] * x[i] for i in range(q.dim)), K.zero) for c in covectors] for _, x in values.values()]
    result = rank(rows, K)
    logger.info(f"Closed Gram rank of {q.name} up to {max_circles} circles: {result} "
                f"({len(rows)} forms x {len(covectors)} functionals)")
    return result
