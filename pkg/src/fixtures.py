"""Quadruple fixtures: JSON loading, parameter substitution and programmatic builders."""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

from config.settings import FIXTURES_DIR, get_enabled_fixtures
from src.algebra import CircularQuadruple, CommAlgebra, SphericalVariety
from src.errors import AlgebraShapeError, DiagramSyntaxError
from src.scalars import (
    Literal,
    build_domain,
    domain_variables,
    is_polynomial_domain,
    parse_scalar,
    substitute_domain,
)

logger = logging.getLogger(__name__)

REQUIRED_KEYS = ('basis', 'omega', 'trace')


def fixture_path(name_or_path: Union[str, Path]) -> Path:
    """
    Resolve a fixture name ("tl") or a file path to a JSON file.

    Raises:
        AlgebraShapeError: if nothing matches
    """
    path = Path(name_or_path)
    if path.is_file():
        return path
    for entry in get_enabled_fixtures():
        if entry.get('name') == str(name_or_path):
            return FIXTURES_DIR / entry['file']
    candidate = FIXTURES_DIR / f"{name_or_path}.json"
    if candidate.is_file():
        return candidate
    raise AlgebraShapeError(f"no quadruple fixture named {name_or_path!r}")


def _multiplication(spec: Any, n: int, K, subs) -> List[List[tuple]]:
    """Structure constants from "idempotent", {"truncated_monomials": N} or an explicit table."""
    zero, one = K.zero, K.one

    def unit_vector(i: int) -> tuple:
        return tuple(one if l == i else zero for l in range(n))

    if spec == 'idempotent':
        return [[unit_vector(i) if i == j else (zero,) * n for j in range(n)] for i in range(n)]
    if isinstance(spec, Mapping) and 'truncated_monomials' in spec:
        top = int(spec['truncated_monomials'])
        if top != n:
            raise AlgebraShapeError(f"truncated_monomials {top} does not match basis size {n}")
        return [[unit_vector(i + j) if i + j < n else (zero,) * n for j in range(n)] for i in range(n)]
    if isinstance(spec, list):
        return [[tuple(parse_scalar(K, c, subs) for c in v) for v in row] for row in spec]
    raise AlgebraShapeError(f"unsupported multiplication table {spec!r}")


def quadruple_from_dict(data: Mapping[str, Any], params: Optional[Mapping[str, Literal]] = None,
                        name: str = None) -> CircularQuadruple:
    """
    Build a quadruple from its JSON form.

    Args:
        data: parsed JSON object
        params: values substituted for coefficient ring variables (e.g. {"d": "3"})
        name: name used in reports, defaults to data["name"]

    Raises:
        AlgebraShapeError: missing keys, unknown parameters or malformed tables
    """
    missing = [key for key in REQUIRED_KEYS if key not in data]
    if missing:
        raise AlgebraShapeError(f"quadruple is missing {', '.join(missing)}")
    params = {str(k): v for k, v in (params or {}).items()}
    base = build_domain(data.get('coeff_ring'))
    unknown = sorted(set(params) - set(domain_variables(base)))
    if unknown:
        raise AlgebraShapeError(f"unknown parameters {unknown}; quadruple has {list(domain_variables(base))}")
    K = substitute_domain(base, params)

    basis = [str(b) for b in data['basis']]
    n = len(basis)
    if 'unit' in data:
        unit = tuple(parse_scalar(K, c, params) for c in data['unit'])
    elif data.get('idempotent_basis'):
        unit = (K.one,) * n
    else:
        unit = tuple(K.one if i == 0 else K.zero for i in range(n))
    mult = data.get('mult', 'idempotent' if data.get('idempotent_basis') else None)
    if mult is None:
        raise AlgebraShapeError("quadruple needs a multiplication table")
    algebra = CommAlgebra(
        K, tuple(basis), unit,
        tuple(tuple(row) for row in _multiplication(mult, n, K, params)),
        bool(data.get('idempotent_basis', False)),
    )
    omega = tuple(tuple(parse_scalar(K, c, params) for c in row) for row in data['omega'])
    trace = tuple(parse_scalar(K, c, params) for c in data['trace'])

    variety = None
    if is_polynomial_domain(K):
        remaining = set(domain_variables(K))
        constraints = tuple(
            tuple(str(v) for v in c) for c in data.get('spherical_constraints', [])
            if all(str(v) in remaining for v in c)
        )
        variety = SphericalVariety(K, constraints)

    label = name or data.get('name', 'quadruple')
    if params:
        label += '[' + ','.join(f"{k}={v}" for k, v in sorted(params.items())) + ']'
    return CircularQuadruple(algebra, omega, trace, label, variety)


def load_quadruple(name_or_path: Union[str, Path], params: Optional[Mapping[str, Literal]] = None) -> CircularQuadruple:
    """
    Load a quadruple fixture by name or path.

    Raises:
        DiagramSyntaxError: if the file is not valid JSON
        AlgebraShapeError: if the content is not a valid quadruple
    """
    path = fixture_path(name_or_path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise DiagramSyntaxError(f"{path.name}: {e.msg}", e.pos)
    q = quadruple_from_dict(data, params, name=data.get('name', path.stem))
    logger.info(f"Loaded quadruple {q.name} (dim {q.dim}, domain {q.domain})")
    return q


def semisimple_dict(k_dim: int) -> Dict[str, Any]:
    """JSON form of the symbolic k-dimensional semisimple spherical quadruple."""
    idx = range(1, k_dim + 1)
    a = [[f"a{i}{j}" for j in idx] for i in idx]
    b = [f"b{i}" for i in idx]
    return {
        'name': f"semisimple{k_dim}",
        'coeff_ring': {'poly': [x for row in a for x in row] + b},
        'basis': [f"e{i}" for i in idx],
        'idempotent_basis': True,
        'mult': 'idempotent',
        'omega': a,
        'trace': b,
        'spherical_constraints': [[b[i], a[i][j], b[j], a[j][i]] for i in range(k_dim) for j in range(i + 1, k_dim)],
    }


def semisimple_quadruple(k_dim: int, params: Optional[Mapping[str, Literal]] = None) -> CircularQuadruple:
    return quadruple_from_dict(semisimple_dict(k_dim), params)


def tl_quadruple(d: Literal) -> CircularQuadruple:
    """One-dimensional quadruple with omega(1) = d and eps(1) = 1."""
    data = {'name': 'tl', 'basis': ['1'], 'idempotent_basis': True, 'omega': [[str(d)]], 'trace': ['1']}
    return quadruple_from_dict(data, name=f"tl[d={d}]")


def quadruple_to_dict(q: CircularQuadruple) -> Dict[str, Any]:
    """JSON form of a quadruple with an explicit multiplication table."""
    A, K = q.algebra, q.domain
    data: Dict[str, Any] = {
        'name': q.name,
        'basis': list(A.basis_names),
        'idempotent_basis': A.idempotent_basis,
        'unit': q.format_element(A.unit),
        'mult': [[q.format_element(v) for v in row] for row in A.mult],
        'omega': [q.format_element(row) for row in q.omega],
        'trace': q.format_element(q.trace),
    }
    if is_polynomial_domain(K):
        data['coeff_ring'] = {'poly': list(domain_variables(K))}
    elif K.is_FiniteField:
        data['coeff_ring'] = {'prime': int(K.mod)}
    if q.variety is not None and q.variety.constraints:
        data['spherical_constraints'] = [list(c) for c in q.variety.constraints]
    return data


def list_fixtures() -> List[Dict[str, Any]]:
    return [dict(entry, path=str(FIXTURES_DIR / entry['file'])) for entry in get_enabled_fixtures()]
