"""
Meander matrices and their Chebyshev factorisation.

The meander matrix of order n pairs the crossingless matchings of 2n points
with each other; its (a, b) entry is d raised to the number of loops formed
by closing a with the reflection of b.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Dict, List, Sequence, Tuple

from sympy import Symbol, cos, minimal_polynomial, pi
from sympy.polys.domains import QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.polyerrors import NotAlgebraic

from config.settings import MEANDER_BOUND, SYMBOLIC_DET_MAX_SIZE
from src.diagrams import closure_skeleton, outer_of_reflection
from src.errors import check_bound
from src.linalg import bareiss_det, rank
from src.matchings import catalan, enumerate_matchings
from src.scalars import build_domain, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

# rational points compared when the determinant is too large to expand
SAMPLE_POINTS = (3, 5, 7, -4, 11)
GENERIC_D = 3


@lru_cache(maxsize=None)
def loop_counts(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Loop count of the closure of a by the reflection of b, for all matchings a, b."""
    matchings = enumerate_matchings(n)
    outers = [outer_of_reflection(b).matching for b in matchings]
    return tuple(tuple(closure_skeleton(a, y).loop_count for y in outers) for a in matchings)


def meander_matrix(n: int, d) -> List[List]:
    return [[d ** c for c in row] for row in loop_counts(n)]


def binom(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def chebyshev_exponent(n: int, m: int) -> int:
    """Multiplicity of U_m in the meander determinant of order n."""
    return binom(2 * n, n - m) - 2 * binom(2 * n, n - m - 1) + binom(2 * n, n - m - 2)


def chebyshev_u(m: int, K: Domain, d):
    """U_m(d) by U_0 = 1, U_1 = d, U_{m+1} = d U_m - U_{m-1}."""
    prev, cur = K.one, d
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, d * cur - prev
    return cur


def chebyshev_product(n: int, K: Domain, d):
    result = K.one
    for m in range(1, n + 1):
        result *= chebyshev_u(m, K, d) ** chebyshev_exponent(n, m)
    return result


@dataclass(frozen=True)
class ChebyshevRoot:
    """d = 2cos(k pi/(m+1)) together with an exact field containing it."""

    m: int
    k: int
    expr: Any
    degree: int
    domain: Domain = None
    value: Any = None

    @property
    def label(self) -> str:
        return str(self.expr)


def chebyshev_roots(n: int) -> List[ChebyshevRoot]:
    """
    Distinct roots of U_1, ..., U_n.

    Roots of degree at most 2 over QQ get a domain (QQ or a quadratic field);
    higher degree roots are returned without one.
    """
    x = Symbol('x')
    roots, seen = [], set()
    for m in range(1, n + 1):
        for k in range(1, m + 1):
            expr = 2 * cos(k * pi / (m + 1))
            try:
                degree = minimal_polynomial(expr, x, polys=True).degree()
            except NotAlgebraic:
                continue
            if degree == 1:
                K = QQ
                value = QQ.from_sympy(expr)
                key = ('Q', value)
            elif degree == 2:
                K = QQ.algebraic_field(expr)
                value = K.from_sympy(expr)
                key = ('A', str(minimal_polynomial(expr, x)), str(expr.evalf(30)))
            else:
                roots.append(ChebyshevRoot(m, k, expr, degree))
                continue
            if key in seen:
                continue
            seen.add(key)
            roots.append(ChebyshevRoot(m, k, expr, degree, K, value))
    return roots


@dataclass
class MeanderReport:
    """Determinant and rank checks for one order n."""

    n: int
    size: int
    determinant: str = None
    symbolic: bool = False
    chebyshev_match: bool = False
    generic_rank: int = 0
    root_ranks: List[Dict[str, Any]] = field(default_factory=list)
    boundary_ranks: Dict[str, int] = field(default_factory=dict)
    skipped_roots: List[str] = field(default_factory=list)

    @property
    def generic_full_rank(self) -> bool:
        return self.generic_rank == self.size

    @property
    def roots_deficient(self) -> bool:
        return all(r['deficient'] for r in self.root_ranks)

    @property
    def ok(self) -> bool:
        return self.chebyshev_match and self.generic_full_rank and self.roots_deficient

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n': self.n,
            'size': self.size,
            'det': self.determinant,
            'symbolic': self.symbolic,
            'chebyshev_match': self.chebyshev_match,
            'rank_at_3': self.generic_rank,
            'full_rank_at_3': self.generic_full_rank,
            'roots': self.root_ranks,
            'rank_at_2': self.boundary_ranks.get('2'),
            'rank_at_-2': self.boundary_ranks.get('-2'),
            'skipped_roots': self.skipped_roots,
            'ok': self.ok,
        }


def _check_determinant(n: int, report: MeanderReport) -> None:
    size = report.size
    if size <= SYMBOLIC_DET_MAX_SIZE:
        K = build_domain({'poly': ['d']})
        d = parse_scalar(K, 'd')
        det = bareiss_det(meander_matrix(n, d), K)
        report.determinant = format_scalar(K, det)
        report.symbolic = True
        report.chebyshev_match = det == chebyshev_product(n, K, d)
        return
    matches = []
    for point in SAMPLE_POINTS:
        d = QQ(point)
        det = bareiss_det(meander_matrix(n, d), QQ)
        matches.append(det == chebyshev_product(n, QQ, d))
    report.determinant = f"compared at d in {list(SAMPLE_POINTS)}"
    report.chebyshev_match = all(matches)


def meander_check(n_max: int, bound: int = MEANDER_BOUND) -> List[MeanderReport]:
    """
    Check the meander determinants for n = 1..n_max.

    For each n: the determinant agrees with the Chebyshev product, the matrix
    has full rank at d = 3, and it loses rank at every root of U_m (m <= n)
    lying in QQ or a quadratic field. Ranks at d = 2 and d = -2 are reported.

    Raises:
        BoundExceededError: when n_max exceeds the bound
    """
    check_bound('n', n_max, bound)
    reports = []
    for n in range(1, n_max + 1):
        size = catalan(n)
        report = MeanderReport(n, size)
        logger.info(f"[MEANDER] n={n}: {size} x {size}")
        _check_determinant(n, report)
        report.generic_rank = rank(meander_matrix(n, QQ(GENERIC_D)), QQ)

        for root in chebyshev_roots(n):
            if root.domain is None:
                report.skipped_roots.append(f"{root.label} (degree {root.degree})")
                logger.info(f"[MEANDER] n={n}: skipping root {root.label} of degree {root.degree}")
                continue
            r = rank(meander_matrix(n, root.value), root.domain)
            report.root_ranks.append({'d': root.label, 'm': root.m, 'k': root.k, 'rank': r, 'deficient': r < size})
        for d in (2, -2):
            report.boundary_ranks[str(d)] = rank(meander_matrix(n, QQ(d)), QQ)

        level = logging.INFO if report.ok else logging.ERROR
        logger.log(level, f"[MEANDER] n={n}: chebyshev={report.chebyshev_match}, rank@3={report.generic_rank}, "
                          f"roots deficient={report.roots_deficient}")
        reports.append(report)
    return reports
