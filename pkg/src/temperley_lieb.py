"""
Endomorphism algebras End(n) of the negligible quotient.

Diagrams from n to n points are reduced modulo the kernel of the pairing;
the surviving pivot diagrams form a basis and products are expanded in it by
solving against the pairing functionals.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from config.settings import TL_BOUND
from src.algebra import CircularQuadruple
from src.diagrams import DecoratedDiagram, compose
from src.errors import RefusalError, check_bound
from src.evaluation import EvalContext, pair_general, pair_spherical_closure
from src.gram import compute_entries, default_mode, describe_item, spanning_set, subalgebra_labels
from src.linalg import independent_rows, solve_in_span
from src.matchings import identity_matching
from src.scalars import format_scalar

logger = logging.getLogger(__name__)


@dataclass
class TLAlgebra:
    """
    Structure constants of End(n).

    Attributes:
        n: number of strands
        basis: pivot diagrams, in spanning set order
        structure: structure[i][j] holds the coordinates of basis[i] * basis[j]
        unit: coordinates of the identity diagram
        associative, unital: outcome of the internal checks
    """

    n: int
    quadruple: str
    domain: Any
    basis: Tuple[DecoratedDiagram, ...]
    structure: List[List[Tuple]]
    unit: Tuple
    associative: bool = False
    unital: bool = False
    mode: str = 'general'
    spanning_size: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def basis_names(self) -> List[str]:
        return [describe_item(b) for b in self.basis]

    def multiply(self, x: Sequence, y: Sequence) -> Tuple:
        """Product of two elements given in basis coordinates."""
        K = self.domain
        out = [K.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for s, v in enumerate(self.structure[i][j]):
                    out[s] += c * v
        return tuple(out)

    def basis_vector(self, i: int) -> Tuple:
        K = self.domain
        return tuple(K.one if j == i else K.zero for j in range(self.dim))

    def to_dict(self) -> Dict[str, Any]:
        fmt = lambda v: [format_scalar(self.domain, c) for c in v]
        return {
            'n': self.n,
            'quadruple': self.quadruple,
            'mode': self.mode,
            'dim': self.dim,
            'spanning_size': self.spanning_size,
            'basis': self.basis_names,
            'unit': fmt(self.unit),
            'structure': [[fmt(v) for v in row] for row in self.structure],
            'associative': self.associative,
            'unital': self.unital,
        }


def _check_associative(tl: TLAlgebra) -> bool:
    d = tl.dim
    for i in range(d):
        for j in range(d):
            left_ij = tl.structure[i][j]
            for l in range(d):
                left = tl.multiply(left_ij, tl.basis_vector(l))
                right = tl.multiply(tl.basis_vector(i), tl.structure[j][l])
                if left != right:
                    logger.error(f"Associativity fails for basis triple ({i}, {j}, {l})")
                    return False
    return True


def _check_unital(tl: TLAlgebra) -> bool:
    for i in range(tl.dim):
        e = tl.basis_vector(i)
        if tl.multiply(tl.unit, e) != e or tl.multiply(e, tl.unit) != e:
            logger.error(f"Unit fails on basis element {i}")
            return False
    return True


def tl_algebra(n: int, q: CircularQuadruple, mode: str = None, jobs: int = 1, bound: int = TL_BOUND) -> TLAlgebra:
    """
    Build End(n) for a numeric quadruple.

    Args:
        n: number of strands
        q: numeric circular quadruple
        mode: 'general' (pair against outer diagrams) or 'spherical'
        jobs: worker threads for the pairing matrix
        bound: largest accepted n

    Returns:
        TLAlgebra with verified structure constants

    Raises:
        BoundExceededError: when n exceeds the bound
        RefusalError: for symbolic quadruples
    """
    check_bound('n', n, bound)
    if not q.is_numeric:
        raise RefusalError(f"tl needs numeric parameters; {q.name} is symbolic")
    mode = mode or default_mode(q)
    K = q.domain
    labels = subalgebra_labels(q)
    items = spanning_set(n, q, 'disk', labels, split=(n, n)).items
    if mode == 'spherical':
        tests, entry = spanning_set(n, q, 'disk', labels).items, pair_spherical_closure
    else:
        tests, entry = spanning_set(n, q, 'outer', labels).items, pair_general

    logger.info(f"TL algebra n={n} for {q.name}: {len(items)} diagrams against {len(tests)} tests ({mode})")
    rows = compute_entries(items, tests, entry, q, jobs)
    pivots = independent_rows(rows, K)
    basis = tuple(items[i] for i in pivots)
    frame = [rows[i] for i in pivots]

    ctx = EvalContext(q)

    def coordinates(x: DecoratedDiagram) -> Tuple:
        return solve_in_span(frame, [entry(x, t, ctx) for t in tests], K)

    structure = [[coordinates(compose(a, b)) for b in basis] for a in basis]
    unit = coordinates(DecoratedDiagram.bare(identity_matching(n)))
    tl = TLAlgebra(n, q.name, K, basis, structure, unit, mode=mode, spanning_size=len(items))
    tl.associative = _check_associative(tl)
    tl.unital = _check_unital(tl)
    logger.info(f"TL algebra n={n}: dim={tl.dim}, associative={tl.associative}, unital={tl.unital}")
    return tl
