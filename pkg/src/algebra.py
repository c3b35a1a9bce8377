"""
Finite-dimensional commutative algebras with a wrapping map and a trace.

A CircularQuadruple bundles a commutative algebra Z (structure constants in a
fixed basis), a linear map omega with omega(e_j) = sum_i a[i][j] e_i, and a
trace covector b with eps(e_i) = b[i].
"""
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains.domain import Domain

from config.settings import DEFAULT_SEED, IDENTITY_COORD_BITS, IDENTITY_TRIALS
from src.errors import AlgebraShapeError, RefusalError
from src.linalg import independent_rows, rank, rank_kernel, solve_in_span, transpose
from src.scalars import (
    domain_variables,
    format_scalar,
    is_polynomial_domain,
    parse_scalar,
    specialization_domain,
    specialize,
    total_degree,
)

logger = logging.getLogger(__name__)

Vector = Tuple


@dataclass(frozen=True)
class CommAlgebra:
    """
    Commutative algebra given by structure constants.

    Attributes:
        domain: scalar domain
        basis_names: names of the basis vectors
        unit: coordinates of 1
        mult: mult[i][j] is the coordinate vector of e_i e_j
        idempotent_basis: True when e_i e_j = delta_ij e_i is claimed
    """

    domain: Domain
    basis_names: Tuple[str, ...]
    unit: Vector
    mult: Tuple[Tuple[Vector, ...], ...]
    idempotent_basis: bool = False

    def __post_init__(self):
        n = len(self.basis_names)
        if n == 0:
            raise AlgebraShapeError("algebra must have at least one basis vector")
        if len(self.unit) != n:
            raise AlgebraShapeError(f"unit has {len(self.unit)} coordinates, expected {n}")
        if len(self.mult) != n or any(len(row) != n for row in self.mult):
            raise AlgebraShapeError(f"multiplication table must be {n}x{n}")
        if any(len(v) != n for row in self.mult for v in row):
            raise AlgebraShapeError(f"products must have {n} coordinates")

    @property
    def dim(self) -> int:
        return len(self.basis_names)

    @property
    def zero(self) -> Vector:
        return tuple(self.domain.zero for _ in range(self.dim))

    @property
    def one(self) -> Vector:
        return self.unit

    def basis_vector(self, i: int) -> Vector:
        if not 0 <= i < self.dim:
            raise AlgebraShapeError(f"basis index {i + 1} outside 1..{self.dim}")
        return tuple(self.domain.one if j == i else self.domain.zero for j in range(self.dim))

    def add(self, x: Vector, y: Vector) -> Vector:
        return tuple(a + b for a, b in zip(x, y))

    def scale(self, c, x: Vector) -> Vector:
        return tuple(c * a for a in x)

    def multiply(self, x: Vector, y: Vector) -> Vector:
        K = self.domain
        out = [K.zero] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                for l, m in enumerate(self.mult[i][j]):
                    if m:
                        out[l] += c * m
        return tuple(out)

    def product_of(self, factors: Sequence[Vector]) -> Vector:
        result = self.one
        for f in factors:
            result = self.multiply(result, f)
        return result

    def multiplication_matrix(self, w: Vector) -> List[List]:
        """Matrix of x -> w x acting on column coordinate vectors."""
        columns = [self.multiply(w, self.basis_vector(j)) for j in range(self.dim)]
        return transpose(columns, self.dim)


@dataclass(frozen=True)
class ValidationReport:
    """Pass/fail per axiom of a circular quadruple."""

    name: str
    checks: Dict[str, bool]
    notes: Dict[str, str] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        core = ('commutative', 'associative', 'unital', 'idempotent_basis', 'trace_nonzero')
        return all(self.checks.get(axiom, True) for axiom in core)

    def to_dict(self) -> Dict[str, Any]:
        return {'quadruple': self.name, 'valid': self.valid, 'checks': dict(self.checks), 'notes': dict(self.notes)}


@dataclass(frozen=True)
class SphericalVariety:
    """
    Parameter points satisfying b_i a_ij = b_j a_ji.

    Attributes:
        domain: polynomial domain holding the parameters
        constraints: (b_i, a_ij, b_j, a_ji) variable names, solved for a_ji
    """

    domain: Domain
    constraints: Tuple[Tuple[str, str, str, str], ...]

    @property
    def nonzero(self) -> Tuple[str, ...]:
        return tuple(sorted({c[0] for c in self.constraints} | {c[2] for c in self.constraints}))

    def sample(self, rng: random.Random, bits: int = IDENTITY_COORD_BITS) -> Dict[str, Any]:
        """
        Random rational point on the variety, keyed by variable name.

        Free coordinates are integers drawn from a set of size 2^bits; the
        b variables are nonzero.
        """
        Q = specialization_domain(self.domain)
        half = 2 ** (bits - 1)
        point = {}
        for name in domain_variables(self.domain):
            value = 0
            while value == 0:
                value = rng.randrange(-half, half)
                if name not in self.nonzero:
                    break
            point[name] = Q.convert(value)
        for b_i, a_ij, b_j, a_ji in self.constraints:
            point[a_ji] = Q.quo(point[b_i] * point[a_ij], point[b_j])
        return point

    def point_values(self, point: Mapping[str, Any]) -> Tuple:
        return tuple(point[name] for name in domain_variables(self.domain))

    def holds(self, point: Mapping[str, Any]) -> bool:
        return all(point[b_i] * point[a_ij] == point[b_j] * point[a_ji]
                   for b_i, a_ij, b_j, a_ji in self.constraints)


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of a probabilistic polynomial identity test."""

    result: bool
    trials: int
    seed: int
    degree: int
    failures: Tuple[Dict[str, str], ...] = ()


def identity_check_on_variety(
    K: Domain,
    lhs,
    rhs,
    variety: Optional[SphericalVariety],
    trials: int = IDENTITY_TRIALS,
    seed: int = DEFAULT_SEED,
) -> IdentityCheck:
    """
    Test lhs == rhs at random points of the variety (or of the whole
    parameter space when variety is None).

    Args:
        K: polynomial domain of both sides
        lhs, rhs: elements of K, or literals parsed into K
        variety: constraint variety sampled for points
        trials: number of sample points
        seed: seed of the point generator

    Returns:
        IdentityCheck, result True when both sides agree at every point
    """
    lhs = lhs if not isinstance(lhs, str) else parse_scalar(K, lhs)
    rhs = rhs if not isinstance(rhs, str) else parse_scalar(K, rhs)
    degree = max(total_degree(K, lhs), total_degree(K, rhs))
    if not is_polynomial_domain(K):
        return IdentityCheck(lhs == rhs, 0, seed, 0)

    rng = random.Random(seed)
    variety = variety or SphericalVariety(K, ())
    failures = []
    done = 0
    while done < trials:
        point = variety.sample(rng)
        values = variety.point_values(point)
        try:
            left, right = specialize(K, lhs, values), specialize(K, rhs, values)
        except ZeroDivisionError:
            logger.debug("Division by zero at sample point, resampling")
            continue
        done += 1
        if left != right:
            failures.append({name: str(v) for name, v in point.items()})
            break
    logger.debug(f"Identity check: degree {degree}, {done} trials, seed {seed}, ok={not failures}")
    return IdentityCheck(not failures, done, seed, degree, tuple(failures))


@dataclass(frozen=True)
class Subalgebra:
    """The omega-generated subalgebra Z' of Z."""

    dim: int
    basis: Tuple[Vector, ...]
    surjective: bool


@dataclass(frozen=True)
class RadicalReport:
    """
    Radical of the closed-diagram pairing on Z'.

    Attributes:
        kernel_dim: dimension of K
        kernel_basis: basis of K in Z coordinates
        a0_dim: dimension of A(0) = Z'/K
        rounds: closure rounds that enlarged the functional span
        minimal: A(0) as a circular quadruple
    """

    kernel_dim: int
    kernel_basis: Tuple[Vector, ...]
    a0_dim: int
    rounds: int
    subalgebra: Subalgebra
    minimal: Optional['CircularQuadruple']


@dataclass(frozen=True, eq=False)
class CircularQuadruple:
    """
    Commutative algebra with wrapping map omega and trace eps.

    Attributes:
        algebra: the algebra Z
        omega: omega[i][j] with omega(e_j) = sum_i omega[i][j] e_i
        trace: eps(e_i) = trace[i]
        name: fixture name
        variety: parameter constraints for symbolic quadruples
    """

    algebra: CommAlgebra
    omega: Tuple[Tuple[Any, ...], ...]
    trace: Vector
    name: str = 'quadruple'
    variety: Optional[SphericalVariety] = None

    def __post_init__(self):
        n = self.algebra.dim
        if len(self.omega) != n or any(len(row) != n for row in self.omega):
            raise AlgebraShapeError(f"omega must be {n}x{n}")
        if len(self.trace) != n:
            raise AlgebraShapeError(f"trace must have {n} coordinates")

    @property
    def domain(self) -> Domain:
        return self.algebra.domain

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def is_numeric(self) -> bool:
        return bool(self.domain.is_Field)

    def apply_omega(self, x: Vector) -> Vector:
        K = self.domain
        return tuple(sum((self.omega[i][j] * x[j] for j in range(self.dim) if x[j]), K.zero)
                     for i in range(self.dim))

    def eps(self, x: Vector):
        return sum((b * v for b, v in zip(self.trace, x)), self.domain.zero)

    def symmetry_matrix(self) -> List[List]:
        """S[i][j] = eps(e_i omega(e_j))."""
        A = self.algebra
        return [[self.eps(A.multiply(A.basis_vector(i), self.apply_omega(A.basis_vector(j))))
                 for j in range(self.dim)] for i in range(self.dim)]

    def _equal(self, x, y) -> bool:
        if x == y:
            return True
        if self.variety is None or not is_polynomial_domain(self.domain):
            return False
        return identity_check_on_variety(self.domain, x, y, self.variety).result

    @cached_property
    def z_spherical(self) -> bool:
        """omega(z) = z omega(1) for every basis vector z."""
        A = self.algebra
        w1 = self.apply_omega(A.one)
        for i in range(self.dim):
            e = A.basis_vector(i)
            lhs, rhs = self.apply_omega(e), A.multiply(e, w1)
            if not all(self._equal(a, b) for a, b in zip(lhs, rhs)):
                return False
        return True

    @cached_property
    def r_spherical(self) -> bool:
        """eps(x omega(y)) = eps(omega(x) y), i.e. the symmetry matrix is symmetric."""
        S = self.symmetry_matrix()
        return all(self._equal(S[i][j], S[j][i]) for i in range(self.dim) for j in range(i + 1, self.dim))

    def element(self, coords: Sequence[Any]) -> Vector:
        if len(coords) != self.dim:
            raise AlgebraShapeError(f"element has {len(coords)} coordinates, expected {self.dim}")
        return tuple(parse_scalar(self.domain, c) for c in coords)

    def format_element(self, x: Vector) -> List[str]:
        return [format_scalar(self.domain, c) for c in x]

    def specialize(self, point: Mapping[str, Any], name: str = None) -> 'CircularQuadruple':
        """Numeric quadruple obtained by evaluating every parameter at point."""
        K = self.domain
        if not is_polynomial_domain(K):
            return self
        Q = specialization_domain(K)
        values = tuple(point[v] for v in domain_variables(K))

        def sp(x):
            return specialize(K, x, values)

        A = self.algebra
        algebra = CommAlgebra(
            Q, A.basis_names, tuple(sp(c) for c in A.unit),
            tuple(tuple(tuple(sp(c) for c in v) for v in row) for row in A.mult),
            A.idempotent_basis,
        )
        return CircularQuadruple(
            algebra,
            tuple(tuple(sp(c) for c in row) for row in self.omega),
            tuple(sp(c) for c in self.trace),
            name or f"{self.name}@point",
        )


def validate_quadruple(q: CircularQuadruple) -> ValidationReport:
    """
    Check the axioms of a circular quadruple without modifying it.

    Returns:
        ValidationReport with commutative, associative, unital,
        idempotent_basis, trace_nonzero, z_spherical and r_spherical
    """
    A = q.algebra
    K = A.domain
    n = A.dim
    eq = q._equal
    checks: Dict[str, bool] = {}
    notes: Dict[str, str] = {}

    def vec_eq(x, y):
        return all(eq(a, b) for a, b in zip(x, y))

    checks['commutative'] = all(vec_eq(A.mult[i][j], A.mult[j][i]) for i in range(n) for j in range(n))

    associative = True
    for i, j, l in product(range(n), repeat=3):
        left = A.multiply(A.mult[i][j], A.basis_vector(l))
        right = A.multiply(A.basis_vector(i), A.mult[j][l])
        if not vec_eq(left, right):
            associative = False
            notes['associative'] = f"(e{i + 1}e{j + 1})e{l + 1} != e{i + 1}(e{j + 1}e{l + 1})"
            break
    checks['associative'] = associative

    unital = all(vec_eq(A.multiply(A.unit, A.basis_vector(i)), A.basis_vector(i)) for i in range(n))
    checks['unital'] = unital

    if A.idempotent_basis:
        checks['idempotent_basis'] = all(
            vec_eq(A.mult[i][j], A.basis_vector(i) if i == j else A.zero)
            for i in range(n) for j in range(n)
        )

    checks['trace_nonzero'] = any(bool(b) for b in q.trace)
    checks['z_spherical'] = q.z_spherical
    checks['r_spherical'] = q.r_spherical
    if q.variety is not None:
        notes['variety'] = ', '.join(f"{bi}*{aij} = {bj}*{aji}" for bi, aij, bj, aji in q.variety.constraints)
    logger.info(f"Validated {q.name}: {checks}")
    return ValidationReport(q.name, checks, notes)


def _require_numeric(q: CircularQuadruple, operation: str) -> None:
    if not q.is_numeric:
        raise RefusalError(f"{operation} needs numeric parameters; {q.name} is symbolic (specialize first)")


def omega_generated_subalgebra(q: CircularQuadruple) -> Subalgebra:
    """
    Smallest subalgebra containing 1 and closed under omega.

    Returns:
        Subalgebra with a basis in Z coordinates

    Raises:
        RefusalError: for symbolic quadruples
    """
    _require_numeric(q, 'omega-generated subalgebra')
    A, K = q.algebra, q.domain
    basis: List[Vector] = []
    queue: List[Vector] = [A.one]
    while queue:
        v = queue.pop(0)
        if not any(v) or rank(basis + [v], K) == len(basis):
            continue
        basis.append(v)
        queue.append(q.apply_omega(v))
        queue.extend(A.multiply(v, w) for w in basis)
    logger.debug(f"Omega-generated subalgebra of {q.name}: dim {len(basis)} of {A.dim}")
    return Subalgebra(len(basis), tuple(basis), len(basis) == A.dim)


def restrict_to_subalgebra(q: CircularQuadruple, sub: Subalgebra) -> CircularQuadruple:
    """Quadruple on Z' written in the basis of sub."""
    A, K = q.algebra, q.domain
    basis = list(sub.basis)

    def coords(v):
        return solve_in_span(basis, v, K)

    unit = coords(A.one)
    mult = tuple(tuple(coords(A.multiply(x, y)) for y in basis) for x in basis)
    omega_cols = [coords(q.apply_omega(x)) for x in basis]
    omega = tuple(tuple(omega_cols[j][i] for j in range(sub.dim)) for i in range(sub.dim))
    trace = tuple(q.eps(x) for x in basis)
    names = tuple(f"z{i + 1}" for i in range(sub.dim))
    algebra = CommAlgebra(K, names, unit, mult, False)
    return CircularQuadruple(algebra, omega, trace, f"{q.name}'")


def pairing_radical(q: CircularQuadruple) -> RadicalReport:
    """
    Kernel of the pairing between closed diagrams and their closures.

    Functionals x -> eps(w0 omega(w1 omega(... wr x))) are generated from
    x -> eps(z x) by precomposing with omega and with multiplications; their
    common kernel on Z' is K and A(0) = Z'/K.

    Raises:
        RefusalError: for symbolic quadruples
    """
    _require_numeric(q, 'pairing radical')
    K = q.domain
    sub = omega_generated_subalgebra(q)
    local = restrict_to_subalgebra(q, sub)
    A = local.algebra
    d = sub.dim

    omega_matrix = [list(row) for row in local.omega]
    mult_matrices = [A.multiplication_matrix(A.basis_vector(i)) for i in range(d)]

    def compose_row(row, matrix):
        return tuple(sum((row[i] * matrix[i][j] for i in range(d)), K.zero) for j in range(d))

    functionals: List[Vector] = []
    frontier = [compose_row(tuple(local.trace), m) for m in mult_matrices]
    rounds = 0
    while True:
        grown = False
        for f in frontier:
            if any(f) and rank(functionals + [f], K) > len(functionals):
                functionals.append(f)
                grown = True
        if not grown:
            break
        rounds += 1
        frontier = [compose_row(f, omega_matrix) for f in functionals]
        frontier += [compose_row(f, m) for f in functionals for m in mult_matrices]
    logger.debug(f"Functional closure of {q.name} stabilized after {rounds} rounds")

    a0_dim = len(functionals)
    if functionals:
        _, kernel_local = rank_kernel(transpose(functionals, d), K)
    else:
        kernel_local = [A.basis_vector(i) for i in range(d)]
    kernel = tuple(
        tuple(sum((c * b[t] for c, b in zip(v, sub.basis)), K.zero) for t in range(q.dim))
        for v in kernel_local
    )

    minimal = _quotient_quadruple(q, local, functionals) if a0_dim else None
    logger.info(f"Pairing radical of {q.name}: dim Z'={d}, dim K={len(kernel)}, dim A(0)={a0_dim}")
    return RadicalReport(len(kernel), kernel, a0_dim, rounds, sub, minimal)


def _quotient_quadruple(q: CircularQuadruple, local: CircularQuadruple, functionals: List[Vector]) -> 'CircularQuadruple':
    """Z'/K with induced product, omega and eps, coordinates read through the functionals."""
    K = q.domain
    A = local.algebra
    d, r = A.dim, len(functionals)

    def phi(x):
        return tuple(sum((f[i] * x[i] for i in range(d)), K.zero) for f in functionals)

    images = [phi(A.basis_vector(i)) for i in range(d)]
    chosen = independent_rows(images, K)
    reps = [A.basis_vector(i) for i in chosen]
    frame = [images[i] for i in chosen]

    def coords(x):
        return solve_in_span(frame, phi(x), K)

    unit = coords(A.one)
    mult = tuple(tuple(coords(A.multiply(x, y)) for y in reps) for x in reps)
    omega_cols = [coords(local.apply_omega(x)) for x in reps]
    omega = tuple(tuple(omega_cols[j][i] for j in range(r)) for i in range(r))
    trace = tuple(local.eps(x) for x in reps)
    names = tuple(f"[z{i + 1}]" for i in chosen)
    algebra = CommAlgebra(K, names, unit, mult, False)
    return CircularQuadruple(algebra, omega, trace, f"A0({q.name})")


def minimal_quadruple(q: CircularQuadruple) -> Optional[CircularQuadruple]:
    """A(0) as a circular quadruple in its own right (None when A(0) = 0)."""
    return pairing_radical(q).minimal
