"""
Exact linear algebra over sympy domains.

Row reduction is done by DomainMatrix; the determinant is the fraction-free
Bareiss elimination, which only needs exact division and so works over
polynomial rings as well as fields.
"""
import logging
from typing import List, Sequence, Tuple

from sympy.polys.domains.domain import Domain
from sympy.polys.matrices import DomainMatrix

from src.errors import AlgebraShapeError, NotAFieldError

logger = logging.getLogger(__name__)

Vector = Tuple
Rows = Sequence[Sequence]


def _require_field(K: Domain, operation: str) -> None:
    if not K.is_Field:
        raise NotAFieldError(f"{operation} needs a field, got {K}; specialize the parameters first")


def domain_matrix(rows: Rows, K: Domain, ncols: int = None) -> DomainMatrix:
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix([list(row) for row in rows], (len(rows), ncols), K)


def _rref(rows: Rows, K: Domain, ncols: int) -> Tuple[List[List], Tuple[int, ...]]:
    if not rows or ncols == 0:
        return [list(row) for row in rows], ()
    reduced, pivots = domain_matrix(rows, K, ncols).rref()
    return reduced.to_list(), tuple(pivots)


def transpose(rows: Rows, ncols: int = None) -> List[List]:
    ncols = len(rows[0]) if rows else (ncols or 0)
    return [[row[j] for row in rows] for j in range(ncols)]


def rank_kernel(rows: Rows, K: Domain, ncols: int = None) -> Tuple[int, List[Vector]]:
    """
    Rank and left kernel of a matrix over a field.

    Args:
        rows: matrix as a list of rows of elements of K
        K: a field
        ncols: column count, needed only when rows is empty

    Returns:
        (rank, basis of {v : v M = 0}); rank + len(basis) == len(rows)

    Raises:
        NotAFieldError: if K is not a field
    """
    _require_field(K, 'rank')
    nrows = len(rows)
    ncols = len(rows[0]) if rows else (ncols or 0)
    if nrows == 0:
        return 0, []
    if ncols == 0:
        return 0, [tuple(K.one if i == j else K.zero for j in range(nrows)) for i in range(nrows)]

    reduced, pivots = _rref(transpose(rows), K, nrows)
    kernel = []
    for free in range(nrows):
        if free in pivots:
            continue
        v = [K.zero] * nrows
        v[free] = K.one
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][free]
        kernel.append(tuple(v))
    return len(pivots), kernel


def rank(rows: Rows, K: Domain) -> int:
    _require_field(K, 'rank')
    if not rows or not rows[0]:
        return 0
    return domain_matrix(rows, K).rank()


def independent_rows(rows: Rows, K: Domain) -> Tuple[int, ...]:
    """Indices of the earliest rows forming a basis of the row space."""
    _require_field(K, 'row selection')
    if not rows or not rows[0]:
        return ()
    _, pivots = _rref(transpose(rows), K, len(rows))
    return pivots


def solve_in_span(basis: Rows, v: Sequence, K: Domain) -> Vector:
    """
    Coefficients c with sum_l c[l] * basis[l] == v.

    Raises:
        AlgebraShapeError: if v is not in the span of basis
    """
    _require_field(K, 'solve')
    if not basis:
        if any(v):
            raise AlgebraShapeError("vector is not in the span of the empty family")
        return ()
    columns = transpose(basis)
    augmented = [list(col) + [v[i]] for i, col in enumerate(columns)]
    width = len(basis) + 1
    reduced, pivots = _rref(augmented, K, width)
    if len(basis) in pivots:
        raise AlgebraShapeError("vector is not in the span of the given family")
    coeffs = [K.zero] * len(basis)
    for i, p in enumerate(pivots):
        coeffs[p] = reduced[i][len(basis)]
    return tuple(coeffs)


def bareiss_det(rows: Rows, K: Domain):
    """
    Fraction-free determinant over an integral domain.

    Raises:
        AlgebraShapeError: if the matrix is not square
    """
    n = len(rows)
    if any(len(row) != n for row in rows):
        raise AlgebraShapeError(f"determinant of a non-square {n}x{len(rows[0])} matrix")
    if n == 0:
        return K.one

    M = [list(row) for row in rows]
    sign = K.one
    for k in range(n - 1):
        # find a pivot in the current column, det is zero if none exists
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[i], M[k] = M[k], M[i]
                    sign = -sign
                    break
            else:
                return K.zero

        for i in range(k + 1, n):
            for j in range(k + 1, n):
                elt = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                if k:
                    elt = K.exquo(elt, M[k - 1][k - 1])
                M[i][j] = elt

    return sign * M[n - 1][n - 1]
