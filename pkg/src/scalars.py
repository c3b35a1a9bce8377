"""
Exact scalar domains.

Scalars live in sympy domains: QQ for rational numbers, GF(p) for prime
fields, QQ<sqrt(r)> for quadratic fields, and sparse polynomial rings
QQ[x1,...,xn] with graded-lex order for symbolic parameters.
"""
import logging
from typing import Any, Mapping, Optional, Sequence, Union

from sympy import Rational, Symbol, sqrt, symbols, sympify
from sympy.core.sympify import SympifyError
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed

from src.errors import AlgebraShapeError, DiagramSyntaxError

logger = logging.getLogger(__name__)

Literal = Union[int, str, Rational]


def build_domain(coeff_ring: Optional[Mapping[str, Any]] = None) -> Domain:
    """
    Build the scalar domain described by a fixture's "coeff_ring" entry.

    Args:
        coeff_ring: None or {} for QQ, {"poly": [names]} for QQ[names],
            {"prime": p} for GF(p), {"sqrt": r} for QQ<sqrt(r)>

    Returns:
        sympy domain
    """
    if not coeff_ring:
        return QQ
    if 'poly' in coeff_ring:
        names = list(coeff_ring['poly'])
        if not names:
            return QQ
        return QQ.poly_ring(*symbols(names), order=grlex)
    if 'prime' in coeff_ring:
        return GF(int(coeff_ring['prime']))
    if 'sqrt' in coeff_ring:
        return QQ.algebraic_field(sqrt(int(coeff_ring['sqrt'])))
    raise AlgebraShapeError(f"unknown coefficient ring {dict(coeff_ring)}")


def is_polynomial_domain(K: Domain) -> bool:
    return bool(K.is_PolynomialRing)


def domain_variables(K: Domain) -> tuple:
    """Variable names of a polynomial domain, in generator order."""
    if not is_polynomial_domain(K):
        return ()
    return tuple(str(g) for g in K.symbols)


def parse_scalar(K: Domain, literal: Literal, subs: Optional[Mapping[str, Literal]] = None):
    """
    Convert a literal ("3", "-2/5", "b1*a11^2", 7) into an element of K.

    Args:
        K: target domain
        literal: integer or expression string
        subs: constants substituted for named variables before conversion

    Raises:
        DiagramSyntaxError: if the literal is not a valid expression
        AlgebraShapeError: if it does not belong to K
    """
    if isinstance(literal, int) and not isinstance(literal, bool):
        return K.convert(literal)
    text = str(literal).strip().replace('^', '**')
    try:
        expr = sympify(text)
    except (SympifyError, SyntaxError, TypeError) as e:
        raise DiagramSyntaxError(f"cannot parse scalar {literal!r}: {e}")
    if subs:
        expr = expr.subs({Symbol(name): sympify(str(v).replace('^', '**')) for name, v in subs.items()})
    try:
        if expr.is_Rational and K.is_FiniteField:
            return K.quo(K.convert(int(expr.p)), K.convert(int(expr.q)))
        return K.from_sympy(expr)
    except (CoercionFailed, ZeroDivisionError) as e:
        raise AlgebraShapeError(f"scalar {literal!r} is not an element of {K}: {e}")


def format_scalar(K: Domain, x) -> str:
    """Printable form with '^' for powers."""
    if is_polynomial_domain(K):
        return str(x).replace('**', '^')
    return str(K.to_sympy(x)).replace('**', '^')


def total_degree(K: Domain, x) -> int:
    if not is_polynomial_domain(K) or not x:
        return 0
    return max(sum(monom) for monom in x.itermonoms())


def partial_degree(K: Domain, x, names: Sequence[str]) -> int:
    """Largest total degree of x in the given variables."""
    if not is_polynomial_domain(K) or not x:
        return 0
    index = [domain_variables(K).index(name) for name in names if name in domain_variables(K)]
    return max(sum(monom[i] for i in index) for monom in x.itermonoms())


def specialize(K: Domain, x, values: Sequence[Any]):
    """
    Evaluate a polynomial at a point given in generator order.

    Returns:
        element of the coefficient field of K (x itself when K has no variables)
    """
    if not is_polynomial_domain(K):
        return x
    return x(*values)


def specialization_domain(K: Domain) -> Domain:
    return K.dom if is_polynomial_domain(K) else K


def substitute_domain(K: Domain, assignments: Mapping[str, Literal]) -> Domain:
    """Polynomial domain left after fixing some variables of K to constants."""
    if not is_polynomial_domain(K):
        return K
    remaining = [name for name in domain_variables(K) if name not in assignments]
    if not remaining:
        return K.dom
    return K.dom.poly_ring(*symbols(remaining), order=grlex)

